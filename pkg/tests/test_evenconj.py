"""Retractions of even groups and the conjugacy decision procedure."""

import random

import pytest

from coxkit.diagram import INF, coxeter_matrix
from coxkit.evenconj import (ClosedClassCertificate, Conjugate,
                             CriterionCertificate, NotConjugate,
                             OrderCertificate, QuotientCertificate, Unknown,
                             decide_conjugacy_even, retr_criterion, retract,
                             retraction_valid, retractions_commute_check,
                             verify_decision)
from coxkit.words import Element, IDENTITY, conjugate, enumerate_group, reduce

from oracles import (closure, compose, dihedral_gens, eval_word,
                     perm_inverse, product_gens)

B2 = coxeter_matrix([[1, 4], [4, 1]])
I26 = coxeter_matrix([[1, 6], [6, 1]])
A3 = coxeter_matrix([[1, 3, 2], [3, 1, 3], [2, 3, 1]])
B2A1 = coxeter_matrix([[1, 4, 2], [4, 1, 2], [2, 2, 1]])
B2T = coxeter_matrix([[1, 4, 2], [4, 1, 4], [2, 4, 1]])
RA = coxeter_matrix([[1, 2, INF], [2, 1, INF], [INF, INF, 1]])


def rand_elt(rng, M, L):
    return reduce(M, tuple(rng.randrange(M.n) for _ in range(L)))


def test_retraction_valid():
    assert retraction_valid(B2T, frozenset([0, 1]))
    assert retraction_valid(RA, frozenset([2]))
    assert retraction_valid(B2A1, frozenset([0, 2]))
    assert not retraction_valid(A3, frozenset([0, 1]))
    assert not retraction_valid(A3, frozenset([0, 2]))
    assert retraction_valid(A3, frozenset())
    assert retraction_valid(A3, frozenset([0, 1, 2]))


def test_retract_pins():
    assert retract(B2T, frozenset([0, 1]), (0, 2, 1, 2)) == Element((0, 1))
    assert retract(B2T, frozenset([1]), (0, 1, 0, 1)) == IDENTITY
    assert retract(RA, frozenset([0, 2]), Element((0, 1, 2))) == Element((0, 2))
    with pytest.raises(ValueError):
        retract(A3, frozenset([0, 1]), (0, 1, 2))


def test_retractions_commute():
    subsets = [frozenset(c) for c in
               ([], [0], [1], [2], [0, 1], [0, 2], [1, 2], [0, 1, 2])]
    for I in subsets:
        for J in subsets:
            assert retractions_commute_check(B2T, I, J)
            assert retractions_commute_check(RA, I, J)


def _perm_conj_oracle(pgens, sub):
    """Brute-force conjugacy inside the subgroup generated by sub."""
    elems = closure([pgens[i] for i in sorted(sub)]) if sub else None

    def decide(a, b):
        pa = eval_word(pgens, a.letters)
        pb = eval_word(pgens, b.letters)
        if elems is None:
            return pa == pb
        return any(compose(compose(h, pa), perm_inverse(h)) == pb
                   for h in elems)

    return decide


def test_retr_criterion_matches_brute_force():
    """All three-subset combinations on a 16-element even group."""
    pgens = product_gens(dihedral_gens(4), dihedral_gens(2)[:1])
    full = frozenset(range(3))
    ground = _perm_conj_oracle(pgens, full)
    subsets = [frozenset(c) for c in
               ([], [0], [1], [2], [0, 1], [0, 2], [1, 2], [0, 1, 2])]
    rng = random.Random(31)
    for I in subsets:
        for J in subsets:
            oI = _perm_conj_oracle(pgens, I)
            oJ = _perm_conj_oracle(pgens, J)
            oIJ = _perm_conj_oracle(pgens, I & J)
            for _ in range(4):
                x = reduce(B2A1, tuple(rng.choice(sorted(I))
                                       for _ in range(rng.randint(0, 5)))) \
                    if I else IDENTITY
                y = reduce(B2A1, tuple(rng.choice(sorted(J))
                                       for _ in range(rng.randint(0, 5)))) \
                    if J else IDENTITY
                got = retr_criterion(B2A1, I, J, x, y, oI, oJ, oIJ)
                assert got == ground(x, y)


def test_retr_criterion_rejects_stray_support():
    oracle = lambda a, b: True
    with pytest.raises(ValueError):
        retr_criterion(B2A1, frozenset([0]), frozenset([1]),
                       Element((1,)), Element((1,)), oracle, oracle, oracle)


def test_decide_even_requires_even():
    with pytest.raises(ValueError):
        decide_conjugacy_even(A3, Element((0,)), Element((1,)))


def test_decide_even_finite_exhaustive():
    """Agree with the permutation model on every pair, never Unknown."""
    cases = [(B2A1, product_gens(dihedral_gens(4), dihedral_gens(2)[:1])),
             (I26, dihedral_gens(6))]
    for M, pgens in cases:
        ground = _perm_conj_oracle(pgens, frozenset(range(M.n)))
        elems = enumerate_group(M, cap=100)
        for x in elems:
            for y in elems:
                d = decide_conjugacy_even(M, x, y)
                assert not isinstance(d, Unknown)
                assert isinstance(d, Conjugate) == ground(x, y)
                assert verify_decision(M, x, y, d)


def test_order_certificate():
    x = Element((0, 1))
    y = Element((0, 1, 0, 1, 0, 1))
    d = decide_conjugacy_even(I26, x, y)
    assert isinstance(d, NotConjugate)
    assert d.certificate == OrderCertificate(6, 2)
    assert verify_decision(I26, x, y, d)


def test_decide_even_infinite_pins():
    d = decide_conjugacy_even(B2T, Element((0,)), Element((2,)))
    assert isinstance(d, NotConjugate)
    assert isinstance(d.certificate, QuotientCertificate)
    assert verify_decision(B2T, Element((0,)), Element((2,)), d)

    d2 = decide_conjugacy_even(B2T, Element((0,)), Element((1, 0, 1)))
    assert d2 == Conjugate(Element((1,)))
    assert verify_decision(B2T, Element((0,)), Element((1, 0, 1)), d2)

    x3, y3 = Element((0, 1, 0, 1)), Element((1, 2, 1, 2))
    d3 = decide_conjugacy_even(B2T, x3, y3)
    assert isinstance(d3, NotConjugate)
    cert = d3.certificate
    assert isinstance(cert, CriterionCertificate)
    assert isinstance(cert.sub, OrderCertificate)
    assert verify_decision(B2T, x3, y3, d3)


def test_decide_even_on_random_conjugates():
    """Known-conjugate pairs must come back Conjugate with a verified g."""
    rng = random.Random(57)
    for M in (B2T, RA):
        for _ in range(15):
            x = rand_elt(rng, M, rng.randint(1, 4))
            g = rand_elt(rng, M, rng.randint(0, 3))
            y = conjugate(M, g, x)
            d = decide_conjugacy_even(M, x, y)
            assert isinstance(d, Conjugate)
            assert conjugate(M, d.g, x) == y
            assert verify_decision(M, x, y, d)


def test_verify_rejects_wrong_certificates():
    x, y = Element((0,)), Element((2,))
    good = decide_conjugacy_even(B2T, x, y)
    assert not verify_decision(B2T, x, y, Conjugate(Element((1,))))
    assert not verify_decision(B2T, x, y,
                               NotConjugate(OrderCertificate(2, 4)))
    assert verify_decision(B2T, x, y, good)
    assert verify_decision(B2T, x, y, Unknown("gave up"))


def test_closed_class_certificate():
    d = decide_conjugacy_even(B2, Element((0,)), Element((1,)))
    assert isinstance(d, NotConjugate)
    assert isinstance(d.certificate,
                      (ClosedClassCertificate, QuotientCertificate))
    assert verify_decision(B2, Element((0,)), Element((1,)), d)
