"""A tour of the word engine: canonical forms, growth, and conjugacy.

Run with: python3 demos/tour_words.py
"""

from coxkit.diagram import classify, coxeter_matrix
from coxkit.words import (Element, ball, conjugacy_class, conjugate,
                          element_order, enumerate_group, format_word,
                          parse_word, reduce)

B2T = coxeter_matrix([[1, 4, 2], [4, 1, 4], [2, 4, 1]])
B3 = coxeter_matrix([[1, 3, 2], [3, 1, 4], [2, 4, 1]])


def el(text):
    return Element(parse_word(text, 3))


def show(label, value):
    print("%-36s %s" % (label, value))


print("== canonical forms ==")
w = el("1 2 1 2 1 2 3 2 1")
show("input word", format_word(w.letters))
show("reduced in the affine group", format_word(reduce(B2T, w)))
show("reduced in the finite group", format_word(reduce(B3, w)))

x = el("1 2")
show("order of s1 s2 in B3", element_order(B3, x))
show("order of s1 s2 in the affine group", element_order(B2T, x))

print()
print("== growth ==")
for r in range(7):
    finite = len(ball(B3, r))
    affine = len(ball(B2T, r))
    show("ball of radius %d" % r, "finite %3d   affine %3d" % (finite, affine))
show("whole finite group", len(enumerate_group(B3)))

print()
print("== conjugacy orbits ==")
orbit = conjugacy_class(B3, el("1"), cap=64)
show("class of s1 in B3", sorted(format_word(z) for z in orbit))
show("same class in the affine group", conjugacy_class(B2T, el("1"), cap=64))
y = conjugate(B2T, el("2 3 2"), el("1"))
show("one affine conjugate of s1", format_word(y))

print()
print("== classification ==")
for name, M in (("B3", B3), ("affine B2", B2T)):
    c = classify(M)
    show(name, "spherical=%s affine=%s even=%s 442=%s"
         % (c.is_spherical, c.is_affine, c.is_even, c.has_442_triangle))
