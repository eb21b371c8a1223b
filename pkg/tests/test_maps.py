import pytest

from mzlab.errors import NotLocallyNilpotentAt, PreconditionFailed, RingMismatch, UsageError
from mzlab.parser import parse_poly
from mzlab.rings import PrimeField, RationalField, build_ring
from mzlab.services.maps import (
    EDeriv,
    MapSpec,
    NilpotentWithin,
    NotWithin,
    SpanStabilized,
    apply,
    e_derivation_law_holds,
    endo_period_detect,
    exp_ln_derivation,
    homomorphism_holds,
    iterated_product_rule_holds,
    leibniz_holds,
    lf_probe,
    ln_probe,
    orbit_collision,
    square_zero_rule_holds,
    window_exact,
)
from mzlab.services.subspace import Window

Q = RationalField()
XY = ("x", "y")
RING_TAGS = ["q", "z", "fp:2", "fp:5", "qlaurent"]


def _p(text, variables=("x",), ring=Q, laurent=False):
    return parse_poly(text, ring, variables, laurent)


def test_apply_derivation_and_endomorphism():
    D = MapSpec.derivation([_p("y", XY), _p("x", XY)])
    assert apply(D, _p("x*y", XY)) == _p("y^2 + x^2", XY)
    phi = MapSpec.endomorphism([_p("x + y", XY), _p("y^2", XY)])
    assert apply(phi, _p("x*y", XY)) == _p("x*y^2 + y^3", XY)
    delta = EDeriv(phi)
    assert apply(delta, _p("y", XY)) == _p("y - y^2", XY)


def test_map_construction_errors():
    with pytest.raises(UsageError):
        MapSpec.derivation([_p("1", XY)])
    with pytest.raises(UsageError):
        EDeriv(MapSpec.derivation([_p("1")]))


@pytest.mark.parametrize("tag", RING_TAGS)
def test_product_rules_hold_on_random_inputs(tag, random_poly):
    ring = build_ring(tag)
    D = MapSpec.derivation([_p("x*y + 1", XY, ring), _p("x^2", XY, ring)])
    phi = MapSpec.endomorphism([_p("x + y", XY, ring), _p("2*y - x", XY, ring)])
    delta = EDeriv(phi)
    for _ in range(200):
        f, g = random_poly(ring, XY), random_poly(ring, XY)
        assert leibniz_holds(D, f, g)
        assert homomorphism_holds(phi, f, g)
        assert e_derivation_law_holds(delta, f, g)


@pytest.mark.parametrize("tag", RING_TAGS)
def test_iterated_product_rule(tag, random_poly):
    ring = build_ring(tag)
    delta = EDeriv(MapSpec.endomorphism([_p("x + y", XY, ring), _p("2*y - x", XY, ring)]))
    for trial in range(200):
        f, g = random_poly(ring, XY, terms=3, degree=2), random_poly(ring, XY, terms=3, degree=2)
        assert iterated_product_rule_holds(delta, f, g, trial % 5 + 1)


def test_square_zero_rule(random_poly):
    delta = EDeriv(MapSpec.endomorphism([_p("x + 1")]))
    v = _p("3*x + 2")
    for m in range(1, 7):
        assert square_zero_rule_holds(delta, random_poly(Q, ("x",)), v, m)
    with pytest.raises(PreconditionFailed):
        square_zero_rule_holds(delta, _p("x"), _p("x^2"), 2)


def test_ln_and_lf_probes():
    d = MapSpec.derivation([_p("1")])
    assert ln_probe(d, [_p("x^3"), _p("0")], 10) == [NilpotentWithin(4), NilpotentWithin(0)]
    euler = MapSpec.derivation([_p("x")])
    assert ln_probe(euler, [_p("x^2")], 5) == [NotWithin(5)]
    assert lf_probe(euler, _p("x^2"), 5) == SpanStabilized(1)
    assert lf_probe(d, _p("x^3"), 10) == SpanStabilized(4)
    squaring = MapSpec.derivation([_p("x^2")])
    assert lf_probe(squaring, _p("x"), 5) == NotWithin(5)


def test_exp_of_locally_nilpotent_derivation():
    d = MapSpec.derivation([_p("1")])
    assert exp_ln_derivation(d, _p("x^2")) == _p("x^2 + 2*x + 1")
    with pytest.raises(NotLocallyNilpotentAt):
        exp_ln_derivation(MapSpec.derivation([_p("x^2")]), _p("x"), cap=5)
    F3 = PrimeField(3)
    with pytest.raises(RingMismatch):
        exp_ln_derivation(MapSpec.derivation([_p("1", ring=F3)]), _p("x", ring=F3))


def test_orbits_and_periods():
    negate = MapSpec.endomorphism([_p("-x")])
    assert orbit_collision(negate, _p("x"), 10) == (0, 2)
    assert endo_period_detect(negate, 10) == (1, 3)
    swap = MapSpec.endomorphism([_p("y", XY), _p("x", XY)])
    assert endo_period_detect(swap, 10) == (1, 5)
    doubling = MapSpec.endomorphism([_p("2*x")])
    assert endo_period_detect(doubling, 20) is None
    constant = MapSpec.endomorphism([_p("1")])
    assert orbit_collision(constant, _p("x"), 5) == (1, 2)


def test_window_exactness():
    d = MapSpec.derivation([_p("1")])
    target = Window.box(1, 12)
    assert window_exact(d, Window(((0, 13),)), target)
    assert not window_exact(d, Window(((0, 12),)), target)
    assert window_exact(EDeriv(MapSpec.endomorphism([_p("2*x")])), target, target)
    F2 = PrimeField(2)
    frobenius = EDeriv(MapSpec.endomorphism([_p("x^2", ring=F2)]))
    assert window_exact(frobenius, Window(((0, 12),)), Window(((0, 24),)))
    inversion = EDeriv(MapSpec.endomorphism([_p("x^-1", ring=F2, laurent=True)]))
    box = Window.box(1, 24, laurent=True)
    assert window_exact(inversion, box, box)
    assert not window_exact(inversion, Window(((-24, 23),), laurent=True), box)
