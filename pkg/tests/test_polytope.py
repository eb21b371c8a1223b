from fractions import Fraction

import pytest

from mzlab.errors import RingMismatch, ZeroPolynomial
from mzlab.parser import parse_poly
from mzlab.rings import IntegerRing, PrimeField, RationalField
from mzlab.services import polytope

Q = RationalField()
XY = ("x", "y")


def _laurent(text, variables=XY, ring=Q):
    return parse_poly(text, ring, variables, laurent=True)


def test_support_is_sorted():
    f = _laurent("x*y + x^-1 - 3")
    assert polytope.support(f).points == ((-1, 0), (0, 0), (1, 1))
    with pytest.raises(ZeroPolynomial):
        polytope.support(_laurent("0"))


def test_separating_functional_means_radical():
    f = _laurent("x + x*y")
    assert polytope.dk_radical_test(f)
    assert polytope.constant_term_probe(f, 8) is None
    verdict = polytope.polytope_verdict(f, 8)
    assert verdict.in_radical and verdict.status == "verified"


def test_origin_in_polytope():
    f = _laurent("x + x^-1", ("x",))
    assert not polytope.dk_radical_test(f)
    assert polytope.constant_term_probe(f, 4) == 2
    assert polytope.origin_weights(polytope.support(f)) == [Fraction(1, 2), Fraction(1, 2)]
    g = _laurent("x + y + x^-1*y^-1")
    assert polytope.origin_weights(polytope.support(g)) == [Fraction(1, 3)] * 3
    verdict = polytope.polytope_verdict(g, 8)
    assert verdict.contains_origin and verdict.constant_term_power == 3


def test_origin_on_an_edge_gives_zero_weight():
    f = _laurent("x + x^-1 + y")
    assert polytope.origin_weights(polytope.support(f)) == [Fraction(1, 2), Fraction(0), Fraction(1, 2)]
    assert polytope.contains_origin(polytope.support(f))
    assert not polytope.dk_radical_test(f)
    assert polytope.constant_term_probe(f, 4) == 2


def test_origin_as_support_point():
    S = polytope.support(_laurent("2 + x"))
    assert polytope.origin_weights(S) == [Fraction(1), Fraction(0)]


def test_positive_characteristic_is_rejected():
    with pytest.raises(RingMismatch):
        polytope.dk_radical_test(_laurent("x", ring=PrimeField(3)))


def test_random_consistency(rng):
    for _ in range(25):
        f = polytope.random_laurent(rng, XY, terms=4, spread=2)
        hit = polytope.constant_term_probe(f, 6)
        if polytope.dk_radical_test(f):
            assert hit is None
        if hit is not None:
            assert polytope.contains_origin(polytope.support(f))
        assert isinstance(f.ring, IntegerRing)
