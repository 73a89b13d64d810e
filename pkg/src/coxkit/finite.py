"""Dense index model for a finite Coxeter group.

Elements are integers 0..N-1 with 0 the identity.  The whole group is laid
out by a breadth-first sweep that tries generators in index order, so the
word attached to each element is its ShortLex canonical form.  All the
group structure a caller needs (multiplication against generators,
inverses, conjugation, conjugacy classes) is precomputed into flat lists.
"""

from .words import Element, IDENTITY, multiply


class FiniteGroup:
    def __init__(self, n, right, words):
        self.n = n
        self.size = len(words)
        self.right = right
        self.words = words
        self._index = {w: i for i, w in enumerate(words)}
        self._inv = None
        self._conj = None

    @classmethod
    def from_matrix(cls, M, cap=10 ** 5):
        """Build via the word engine; None if the group outgrows cap."""
        n = M.n
        gens = [Element((s,)) for s in range(n)]
        words = [()]
        index = {IDENTITY: 0}
        right = [[] for _ in range(n)]
        frontier = [IDENTITY]
        elems = [IDENTITY]
        while frontier:
            new = []
            for e in frontier:
                for s in range(n):
                    z = multiply(M, e, gens[s])
                    if z not in index:
                        if len(elems) >= cap:
                            return None
                        index[z] = len(elems)
                        elems.append(z)
                        words.append(z.letters)
                        new.append(z)
            frontier = new
        for s in range(n):
            right[s] = [index[multiply(M, e, gens[s])] for e in elems]
        return cls(n, right, words)

    @classmethod
    def from_action(cls, n, act, cap=10 ** 6):
        """Build from a faithful right action.

        act(point, s) moves a point by generator s; the group is the orbit
        of the base point under composing generators, found breadth first
        in index order so words come out ShortLex.
        """
        base = act.start()
        index = {base: 0}
        points = [base]
        words = [()]
        right = [[] for _ in range(n)]
        queue = [base]
        qi = 0
        while qi < len(queue):
            p = queue[qi]
            qi += 1
            i = index[p]
            for s in range(n):
                q = act.step(p, s)
                j = index.get(q)
                if j is None:
                    if len(points) >= cap:
                        return None
                    j = len(points)
                    index[q] = j
                    points.append(q)
                    words.append(words[i] + (s,))
                    queue.append(q)
        for s in range(n):
            right[s] = [index[act.step(p, s)] for p in points]
        return cls(n, right, words)

    def index_of(self, word):
        """Index of the element spelled by a letter tuple, reducing as it goes."""
        i = 0
        for s in word:
            i = self.right[s][i]
        return i

    def word(self, i):
        return self.words[i]

    def mult(self, i, j):
        for s in self.words[j]:
            i = self.right[s][i]
        return i

    def inverse(self, i):
        if self._inv is None:
            inv = [0] * self.size
            for a in range(self.size):
                b = 0
                for s in reversed(self.words[a]):
                    b = self.right[s][b]
                inv[a] = b
            self._inv = inv
        return self._inv[i]

    def conj(self, g, x):
        """g x g^-1 by index."""
        return self.mult(self.mult(g, x), self.inverse(g))

    def conj_by_gen(self, s, x):
        if self._conj is None:
            self._conj = [None] * self.n
        if self._conj[s] is None:
            r = self.right[s]
            self._conj[s] = [r[self.index_of((s,) + self.words[z])]
                             for z in range(self.size)]
        return self._conj[s][x]

    def conjugacy_class(self, x):
        seen = {x}
        queue = [x]
        qi = 0
        while qi < len(queue):
            z = queue[qi]
            qi += 1
            for s in range(self.n):
                z2 = self.conj_by_gen(s, z)
                if z2 not in seen:
                    seen.add(z2)
                    queue.append(z2)
        return frozenset(seen)

    def conjugacy_classes(self):
        left = set(range(self.size))
        out = []
        while left:
            x = min(left)
            c = self.conjugacy_class(x)
            out.append(c)
            left -= c
        return out

    def are_conjugate(self, x, y):
        return y in self.conjugacy_class(x)

    def subgroup(self, seeds):
        """Closure of some element indices under multiplication."""
        seeds = sorted(set(seeds) | {0})
        seen = set(seeds)
        queue = list(seeds)
        qi = 0
        while qi < len(queue):
            a = queue[qi]
            qi += 1
            for b in seeds:
                c = self.mult(a, b)
                if c not in seen:
                    seen.add(c)
                    queue.append(c)
        return frozenset(seen)

    def order_of(self, x):
        k = 1
        a = x
        while a != 0:
            a = self.mult(a, x)
            k += 1
        return k

    def involutions(self):
        return [i for i in range(1, self.size) if self.mult(i, i) == 0]

    def reflections(self):
        """Conjugates of the generators."""
        out = set()
        for s in range(self.n):
            out |= self.conjugacy_class(self.right[s][0])
        return frozenset(out)
