"""Exact word arithmetic in a Coxeter group.

Two reduced words spell the same element iff they are connected by braid
moves, so equality, reduction and canonical forms all come down to
searching the braid class of a word.  The canonical form of an element is
the ShortLex-least member of its braid class, with generators ordered by
index.  Every search takes an explicit step budget and raises rather than
silently truncating.
"""

from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from .diagram import INF, component_ids

DEFAULT_STEPS = 10 ** 6


class BudgetExceeded(RuntimeError):
    """A braid-class search ran past its step budget."""


@dataclass(frozen=True)
class Element:
    """Group element held as its canonical reduced word."""

    letters: tuple = ()

    def __len__(self):
        return len(self.letters)

    def __repr__(self):
        return "Element(%s)" % (",".join(str(a + 1) for a in self.letters) or "e")


IDENTITY = Element()


def generator(s):
    return Element((s,))


def support(w):
    """The set of letters appearing in a word or element."""
    if isinstance(w, Element):
        w = w.letters
    return frozenset(w)


def parse_word(text, n):
    """Read 1-based indices separated by whitespace; 'e' is the empty word."""
    text = text.strip()
    if text == "e" or text == "":
        return ()
    letters = []
    for tok in text.split():
        try:
            a = int(tok)
        except ValueError:
            raise ValueError("bad word letter %r" % tok)
        if not 1 <= a <= n:
            raise ValueError("letter %d out of range 1..%d" % (a, n))
        letters.append(a - 1)
    return tuple(letters)


def format_word(w):
    if isinstance(w, Element):
        w = w.letters
    return " ".join(str(a + 1) for a in w) if w else "e"


@lru_cache(maxsize=None)
def _alt(s, t, m):
    return tuple(s if i % 2 == 0 else t for i in range(m))


def _neighbors(rows, w):
    """Words one braid move away."""
    out = []
    L = len(w)
    for i in range(L - 1):
        s, t = w[i], w[i + 1]
        if s == t:
            continue
        m = rows[s][t]
        if m == INF or m > L - i:
            continue
        if w[i:i + m] == _alt(s, t, m):
            out.append(w[:i] + _alt(t, s, m) + w[i + m:])
    return out


def _scan_pair(w):
    for i in range(len(w) - 1):
        if w[i] == w[i + 1]:
            return i
    return None


def _orbit_scan(M, w, budget):
    """BFS the braid orbit of w.

    Returns (word-with-adjacent-double, None) as soon as one shows up, or
    (None, full orbit) if none exists, in which case w was reduced and the
    orbit is its braid class.
    """
    rows = M.rows
    seen = {w}
    queue = deque((w,))
    while queue:
        cur = queue.popleft()
        for nb in _neighbors(rows, cur):
            if nb in seen:
                continue
            budget[0] -= 1
            if budget[0] < 0:
                raise BudgetExceeded("braid search exceeded %d steps" % budget[2])
            if _scan_pair(nb) is not None:
                return nb, None
            seen.add(nb)
            queue.append(nb)
    return None, seen


def _reduce_single(M, w, budget):
    while True:
        i = _scan_pair(w)
        if i is not None:
            w = w[:i] + w[i + 2:]
            continue
        if len(w) < 2:
            return w
        hit, orbit = _orbit_scan(M, w, budget)
        if hit is None:
            return min(orbit)
        w = hit


def _merge(parts):
    """Smallest-head merge of canonical words over commuting supports."""
    parts = [list(p) for p in parts if p]
    out = []
    while parts:
        k = min(range(len(parts)), key=lambda i: parts[i][0])
        out.append(parts[k].pop(0))
        if not parts[k]:
            parts.pop(k)
    return tuple(out)


def _reduce_letters(M, w, budget):
    cache = M._cache.setdefault("reduce", {})
    hit = cache.get(w)
    if hit is not None:
        return hit
    ids = component_ids(M)
    present = sorted({ids[a] for a in w})
    if len(present) > 1:
        parts = [_reduce_letters(M, tuple(a for a in w if ids[a] == c), budget)
                 for c in present]
        res = _merge(parts)
    else:
        res = _reduce_single(M, w, budget)
    cache[w] = res
    cache[res] = res
    return res


def _check_letters(M, w):
    for a in w:
        if not isinstance(a, int) or not 0 <= a < M.n:
            raise ValueError("letter %r out of range for rank %d" % (a, M.n))


def reduce(M, w, steps=DEFAULT_STEPS):
    """Canonical form of a word as an Element."""
    if isinstance(w, Element):
        w = w.letters
    w = tuple(w)
    _check_letters(M, w)
    budget = [steps, 0, steps]
    return Element(_reduce_letters(M, w, budget))


def multiply(M, a, b, steps=DEFAULT_STEPS):
    budget = [steps, 0, steps]
    return Element(_reduce_letters(M, a.letters + b.letters, budget))


def invert(M, a, steps=DEFAULT_STEPS):
    budget = [steps, 0, steps]
    return Element(_reduce_letters(M, a.letters[::-1], budget))


def conjugate(M, g, x, steps=DEFAULT_STEPS):
    """g x g^-1."""
    budget = [steps, 0, steps]
    w = g.letters + x.letters + g.letters[::-1]
    return Element(_reduce_letters(M, w, budget))


def length(M, w, steps=DEFAULT_STEPS):
    return len(reduce(M, w, steps))


def braid_class(M, w, steps=DEFAULT_STEPS):
    """All reduced words of the element spelled by the reduced word w."""
    if isinstance(w, Element):
        w = w.letters
    w = tuple(w)
    _check_letters(M, w)
    budget = [steps, 0, steps]
    if len(_reduce_letters(M, w, budget)) != len(w):
        raise ValueError("word is not reduced")
    rows = M.rows
    seen = {w}
    queue = deque((w,))
    while queue:
        cur = queue.popleft()
        for nb in _neighbors(rows, cur):
            if nb not in seen:
                budget[0] -= 1
                if budget[0] < 0:
                    raise BudgetExceeded("braid search exceeded %d steps" % steps)
                seen.add(nb)
                queue.append(nb)
    return frozenset(seen)


def reflections_of(M, w, steps=DEFAULT_STEPS):
    """The reflections s_1, s_1 s_2 s_1, ... read off a reduced word."""
    w = reduce(M, w, steps)
    out = []
    prefix = IDENTITY
    for s in w.letters:
        out.append(conjugate(M, prefix, Element((s,)), steps))
        prefix = multiply(M, prefix, Element((s,)), steps)
    return out


@dataclass(frozen=True)
class Infinite:
    """Marker: enumeration blew through its cap."""

    cap: int


def enumerate_group(M, cap=10 ** 4, steps=DEFAULT_STEPS):
    """All elements by BFS on right multiplication, or Infinite(cap)."""
    gens = [Element((s,)) for s in range(M.n)]
    seen = {IDENTITY}
    frontier = [IDENTITY]
    while frontier:
        new = []
        for w in frontier:
            for g in gens:
                z = multiply(M, w, g, steps)
                if z not in seen:
                    if len(seen) >= cap:
                        return Infinite(cap)
                    seen.add(z)
                    new.append(z)
        frontier = new
    return frozenset(seen)


def ball(M, radius, steps=DEFAULT_STEPS):
    """Elements of length <= radius, in ShortLex order."""
    gens = [Element((s,)) for s in range(M.n)]
    seen = {IDENTITY}
    frontier = [IDENTITY]
    for _ in range(radius):
        new = []
        for w in frontier:
            for g in gens:
                z = multiply(M, w, g, steps)
                if z not in seen:
                    seen.add(z)
                    new.append(z)
        if not new:
            break
        frontier = new
    return sorted(seen, key=lambda e: (len(e.letters), e.letters))


@dataclass(frozen=True)
class Conjugator:
    """Witness g with g x g^-1 = y."""

    g: Element


@dataclass(frozen=True)
class NotFoundWithin:
    """No conjugator found; closed means the whole class was enumerated."""

    radius: int
    closed: bool = False
    class_size: int = 0


def _conj_bfs(M, x, target=None, radius=None, size_cap=None, steps=DEFAULT_STEPS):
    """BFS the conjugation orbit of x by single generators.

    Returns (status, parents) where parents maps each conjugate z to g with
    g x g^-1 = z and status is 'found', 'closed' or 'exhausted'.
    """
    gens = [Element((s,)) for s in range(M.n)]
    parents = {x: IDENTITY}
    if target is not None and x == target:
        return "found", parents
    frontier = [x]
    depth = 0
    while frontier:
        if radius is not None and depth >= radius:
            return "exhausted", parents
        depth += 1
        new = []
        for z in frontier:
            for s, g in enumerate(gens):
                z2 = conjugate(M, g, z, steps)
                if z2 in parents:
                    continue
                parents[z2] = multiply(M, g, parents[z], steps)
                if target is not None and z2 == target:
                    return "found", parents
                if size_cap is not None and len(parents) > size_cap:
                    return "exhausted", parents
                new.append(z2)
        frontier = new
    return "closed", parents


def conjugate_search(M, x, y, radius=8, steps=DEFAULT_STEPS):
    """Look for g with g x g^-1 = y among conjugators of length <= radius."""
    x = reduce(M, x.letters if isinstance(x, Element) else x, steps)
    y = reduce(M, y.letters if isinstance(y, Element) else y, steps)
    status, parents = _conj_bfs(M, x, target=y, radius=radius, steps=steps)
    if status == "found":
        g = parents[y]
        assert conjugate(M, g, x, steps) == y
        return Conjugator(g)
    return NotFoundWithin(radius, closed=(status == "closed"), class_size=len(parents))


def conjugacy_class(M, x, cap, steps=DEFAULT_STEPS):
    """Full conjugation orbit with conjugators, or None past the cap."""
    status, parents = _conj_bfs(M, x, size_cap=cap, steps=steps)
    return parents if status == "closed" else None


def element_order(M, x, cap=128, steps=DEFAULT_STEPS):
    """Order of x if found within cap powers, else None.

    Powers of an infinite-order element grow in length, so we also bail out
    once the reduced word for x^k gets much longer than x itself.
    """
    if x == IDENTITY:
        return 1
    maxlen = max(64, 16 * len(x.letters))
    acc = x
    k = 1
    while k <= cap:
        if acc == IDENTITY:
            return k
        if len(acc.letters) > maxlen:
            return None
        try:
            acc = multiply(M, acc, x, steps)
        except BudgetExceeded:
            return None
        k += 1
    return None
