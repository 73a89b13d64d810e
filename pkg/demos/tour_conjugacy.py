"""Deciding conjugacy in even groups, with certificates all the way down.

Run with: python3 demos/tour_conjugacy.py
"""

from coxkit.diagram import INF, coxeter_matrix
from coxkit.evenconj import decide_conjugacy_even, verify_decision
from coxkit.quotients import SeparationNotFound, separate, separation_plan
from coxkit.words import Element, format_word, parse_word

B2T = coxeter_matrix([[1, 4, 2], [4, 1, 4], [2, 4, 1]])
RA = coxeter_matrix([[1, 2, INF], [2, 1, INF], [INF, INF, 1]])


def el(text):
    return Element(parse_word(text, 3))


def describe(M, a, b):
    d = decide_conjugacy_even(M, el(a), el(b))
    ok = verify_decision(M, el(a), el(b), d)
    print("  %-10s vs %-10s -> %-18s verified=%s"
          % (a, b, type(d).__name__, ok))
    return d


print("== even conjugacy in the affine (4,4,2) group ==")
d = describe(B2T, "1", "2 1 2")
print("    conjugator:", format_word(d.g))
describe(B2T, "1", "3")
describe(B2T, "1 2 1 2", "2 3 2 3")
describe(B2T, "1 2", "2 1")

print()
print("== separation in the right-angled (2, inf, inf) group ==")
plan = separation_plan(RA)
print("  the default plan tries %d quotients; the first few:" % len(plan))
for hom in plan[:5]:
    print("    -", hom.label)
x, y = el("1"), el("3")
w = separate(RA, x, y)
print("  separate(s1, s3) found a quotient where the images differ:")
print("    %s:  x -> %s   y -> %s" % (w.hom.label, w.x_img, w.y_img))

res = separate(RA, el("1"), el("3 1 3"))
print("  separate(s1, s3 s1 s3) on a conjugate pair:",
      type(res).__name__, "after", res.tried, "quotients")
