"""Automorphisms: verification, compatibility reports, and inner witnesses.

Run with: python3 demos/tour_automorphisms.py
"""

from coxkit.autcompat import (compat_report, format_spec, inner_by_graph,
                              inner_spec, pair_from_spec, parse_spec,
                              smallwords_inner, verify_automorphism)
from coxkit.diagram import INF, coxeter_matrix
from coxkit.words import Element

I24 = coxeter_matrix([[1, 4], [4, 1]])
FREE3 = coxeter_matrix([[1, INF, INF], [INF, 1, INF], [INF, INF, 1]])

SWAP = """1 -> 2
2 -> 1

1 -> 2
2 -> 1
"""

PARTIAL = """1 -> 1
2 -> 2
3 -> 1 3 1

1 -> 1
2 -> 2
3 -> 1 3 1
"""


def report(M, text, name):
    spec = parse_spec(text, M.n)
    print("== %s ==" % name)
    print(format_spec(spec).split("\n\n")[0])
    print("  verify:", type(verify_automorphism(M, spec)).__name__)
    rep = compat_report(M, pair_from_spec(M, spec))
    print("  reflection-compatible:", type(rep.reflection).__name__)
    print("  angle-compatible:     ", type(rep.angle).__name__)
    print("  inner-by-graph:       ", inner_by_graph(M, spec))
    print("  small-words route:    ", smallwords_inner(M, spec))
    print()


report(I24, SWAP, "generator swap in the even dihedral group")
report(FREE3, PARTIAL, "partial conjugation in the rank-3 free Coxeter group")

print("== every inner automorphism certifies itself ==")
for letters in ((0,), (1,), (0, 1), (1, 0, 1)):
    g = Element(letters)
    spec = inner_spec(I24, g)
    res = smallwords_inner(I24, spec)
    print("  conjugation by %-6s -> %s" % (g, res))
