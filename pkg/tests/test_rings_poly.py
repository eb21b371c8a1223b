import math
from fractions import Fraction

import pytest

from mzlab.errors import (
    NegativeExponentWithoutLaurent,
    NonInvertibleImage,
    ParseError,
    RingMismatch,
    UnknownVariable,
    UsageError,
)
from mzlab.parser import parse_images, parse_poly
from mzlab.poly import arith, coeff_of, power, substitute
from mzlab.rings import IntegerRing, LaurentTRing, PrimeField, RationalField, build_ring

Q = RationalField()
XY = ("x", "y")
RING_TAGS = ["q", "z", "fp:2", "fp:5", "qlaurent"]


def test_build_ring_specs():
    assert isinstance(build_ring("q"), RationalField)
    assert isinstance(build_ring("Z"), IntegerRing)
    assert isinstance(build_ring("qlaurent"), LaurentTRing)
    assert build_ring("fp:7").tag == "fp:7"
    for bad in ("fp:4", "fp:x", "w"):
        with pytest.raises(UsageError):
            build_ring(bad)


def test_coefficient_arithmetic():
    assert PrimeField(5).from_fraction(1, 2) == 3
    assert Q.from_fraction(2, 4) == Fraction(1, 2)
    with pytest.raises(RingMismatch):
        IntegerRing().from_fraction(3, 2)
    with pytest.raises(RingMismatch):
        PrimeField(3).from_fraction(1, 3)


def test_laurent_t_units_and_divisibility():
    R = LaurentTRing()
    t = R.monomial(1)
    assert R.is_unit(R.monomial(3, Fraction(2)))
    assert not R.is_unit(R.add(R.one(), t))
    one_minus_t = R.sub(R.one(), t)
    one_minus_t2 = R.sub(R.one(), R.mul(t, t))
    assert R.divides(one_minus_t, one_minus_t2)
    assert not R.divides(one_minus_t, R.one())
    assert R.fmt(R.sub(R.one(), R.monomial(1, Fraction(2)))) == "-2*t + 1"


def test_laurent_t_arithmetic():
    R = LaurentTRing()
    t, t_inv = R.monomial(1), R.monomial(-1)
    assert R.mul(t, t_inv) == R.one()
    assert R.inv(R.monomial(2, Fraction(3))) == R.monomial(-2, Fraction(1, 3))
    s = R.add(t, t_inv)
    assert R.fmt(s) == "t + t^-1"
    assert R.is_compound(s) and not R.is_unit(s)
    assert R.is_zero(R.sub(s, s))
    one_minus_t = R.sub(R.one(), t)
    fifth = R.one()
    for _ in range(5):
        fifth = R.mul(fifth, one_minus_t)
    assert R.pow(one_minus_t, 5) == fifth
    assert R.pow(one_minus_t, 0) == R.one()
    assert R.divides(R.mul(t_inv, one_minus_t), fifth)
    assert R.is_negative(R.monomial(3, Fraction(-1, 2)))
    assert R.fmt(R.monomial(-2, Fraction(-1, 2))) == "-1/2*t^-2"


def test_parse_and_print():
    f = parse_poly("(x + 1)*(x - 1)", Q, ("x",))
    assert f == parse_poly("x^2 - 1", Q, ("x",))
    assert str(f) == "x^2 - 1"
    assert str(parse_poly("3 - x", Q, ("x",))) == "-1*x + 3"


@pytest.mark.parametrize(
    "text, expected",
    [
        ("-x", "-1*x"),
        ("-y^2", "-1*y^2"),
        ("-x^3 + x - 1", "-1*x^3 + x - 1"),
        ("-(x + y)", "-1*x - y"),
        ("x*-y", "-1*x*y"),
        ("x - -x", "2*x"),
        ("--x", "x"),
    ],
)
def test_unary_minus(text, expected):
    assert parse_poly(text, Q, XY) == parse_poly(expected, Q, XY)


def test_unary_minus_needs_an_operand():
    for text in ("-", "x + -", "-*x"):
        with pytest.raises(ParseError):
            parse_poly(text, Q, XY)


@pytest.mark.parametrize("tag", RING_TAGS)
@pytest.mark.parametrize("laurent", [False, True])
def test_print_reparses_to_same_poly(tag, laurent, random_poly):
    ring = build_ring(tag)
    for _ in range(200):
        f = random_poly(ring, XY, terms=5, laurent=laurent)
        assert parse_poly(str(f), ring, XY, laurent) == f


def test_parse_errors():
    with pytest.raises(NegativeExponentWithoutLaurent):
        parse_poly("x^-1", Q, ("x",))
    with pytest.raises(UnknownVariable):
        parse_poly("x + z", Q, ("x", "y"))
    # no implicit multiplication
    for text in ("2x", "x y", "x +", "(x", "x % 2"):
        with pytest.raises(ParseError):
            parse_poly(text, Q, ("x", "y"))


def test_parse_respects_coefficient_ring():
    F3 = PrimeField(3)
    assert parse_poly("3*x", F3, ("x",)).is_zero()
    with pytest.raises(ParseError):
        parse_poly("1/2*x", IntegerRing(), ("x",))
    R = LaurentTRing()
    f = parse_poly("t*x", R, ("x",))
    assert f.coeff((1,)) == R.monomial(1)


def test_parse_images_counts_variables():
    images = parse_images("y; x^2", Q, ("x", "y"), False)
    assert [str(g) for g in images] == ["y", "x^2"]
    with pytest.raises(ParseError):
        parse_images("y", Q, ("x", "y"), False)


def test_mixed_rings_do_not_combine():
    f = parse_poly("x", Q, ("x",))
    g = parse_poly("x", IntegerRing(), ("x",))
    with pytest.raises(RingMismatch):
        f + g
    with pytest.raises(RingMismatch):
        coeff_of(f, (1, 0))


def test_substitute_laurent_inverse():
    f = parse_poly("x + x^2", Q, ("x",), laurent=True)
    inv = parse_poly("x^-1", Q, ("x",), laurent=True)
    assert substitute(f, [inv]) == parse_poly("x^-1 + x^-2", Q, ("x",), laurent=True)
    g = parse_poly("x^-1", Q, ("x",), laurent=True)
    with pytest.raises(NonInvertibleImage):
        substitute(g, [parse_poly("x + 1", Q, ("x",), laurent=True)])


def test_power_and_derivative():
    f = parse_poly("x + 1", Q, ("x",))
    assert f**3 == parse_poly("x^3 + 3*x^2 + 3*x + 1", Q, ("x",))
    assert (f**3).derivative(0) == parse_poly("3*x^2 + 6*x + 3", Q, ("x",))
    with pytest.raises(ValueError):
        f**-1


@pytest.mark.parametrize("tag", RING_TAGS)
def test_ring_laws_on_random_polys(tag, random_poly):
    ring = build_ring(tag)
    for _ in range(200):
        f, g, h = (random_poly(ring, XY, terms=3, degree=2) for _ in range(3))
        assert arith(arith(f, g, "add"), h, "add") == arith(f, arith(g, h, "add"), "add")
        assert arith(f, g, "add") == arith(g, f, "add")
        assert arith(arith(f, g, "mul"), h, "mul") == arith(f, arith(g, h, "mul"), "mul")
        assert arith(f, g, "mul") == arith(g, f, "mul")
        assert f * (g + h) == f * g + f * h
        assert arith(f, f, "sub").is_zero()
        assert f * f.one() == f
    with pytest.raises(ValueError):
        arith(f, g, "div")


@pytest.mark.parametrize("tag", RING_TAGS)
def test_power_laws(tag, random_poly):
    ring = build_ring(tag)
    for _ in range(30):
        f = random_poly(ring, ("x",), terms=3, degree=2)
        assert power(f, 0) == f.one()
        assert power(f, 1) == f
        for a in range(0, 7, 2):
            for b in range(0, 7, 3):
                assert power(f, a + b) == power(f, a) * power(f, b)


@pytest.mark.parametrize("tag", RING_TAGS)
def test_binomial_expansion(tag, random_poly):
    ring = build_ring(tag)
    for _ in range(30):
        a, b = random_poly(ring, XY, terms=2, degree=2), random_poly(ring, XY, terms=2, degree=2)
        n = 5
        expected = a.zero()
        for k in range(n + 1):
            expected = expected + (a**k * b ** (n - k)).scale(ring.from_int(math.comb(n, k)))
        assert (a + b) ** n == expected


@pytest.mark.parametrize("tag", RING_TAGS)
def test_substitute_is_multiplicative(tag, random_poly):
    ring = build_ring(tag)
    for _ in range(50):
        images = [random_poly(ring, XY, terms=2, degree=2) for _ in XY]
        f, g = random_poly(ring, XY, terms=3, degree=2), random_poly(ring, XY, terms=3, degree=2)
        assert substitute(f * g, images) == substitute(f, images) * substitute(g, images)
        assert substitute(f + g, images) == substitute(f, images) + substitute(g, images)
