import pytest

from mzlab import linalg
from mzlab.errors import NotInRadical, OutOfWindow, PreconditionFailed, TargetOverflow
from mzlab.parser import parse_poly
from mzlab.rings import IntegerRing, PrimeField, RationalField
from mzlab.services.maps import EDeriv, MapSpec
from mzlab.services.subspace import (
    Lattice,
    Window,
    contains,
    ideal_radical_diagnostic,
    lattice_span,
    map_image,
    map_kernel,
    map_kernel_chain,
    ms_falsify,
    radical_probe,
    span,
    subspaces_equal,
    verify_split,
)

Q = RationalField()
Z = IntegerRing()
BOX = Window.box(1, 12)


def _p(text, ring=Q, laurent=False):
    return parse_poly(text, ring, ("x",), laurent)


def _scaling_image(a):
    delta = EDeriv(MapSpec.endomorphism([_p(f"{a}*x", Z)]))
    return map_image(delta, BOX, BOX)


SCALING_IMAGES = {
    # 2x Z[x^2]
    -1: ["2*x", "2*x^3", "2*x^5", "2*x^7", "2*x^9", "2*x^11"],
    # x Z[x]
    0: ["x", "x^2", "x^3", "x^4", "x^5", "x^6", "x^7", "x^8", "x^9", "x^10", "x^11", "x^12"],
    2: [
        "x", "3*x^2", "7*x^3", "15*x^4", "31*x^5", "63*x^6",
        "127*x^7", "255*x^8", "511*x^9", "1023*x^10", "2047*x^11", "4095*x^12",
    ],
}


@pytest.mark.parametrize("a", sorted(SCALING_IMAGES))
def test_scaling_image_matches_literal_lattice(a):
    S = _scaling_image(a)
    assert isinstance(S, Lattice)
    assert S.exact
    T = lattice_span([_p(text, Z) for text in SCALING_IMAGES[a]], BOX)
    assert S.dim == T.dim == len(SCALING_IMAGES[a])
    assert all(S.contains_vector(v) for v in T.basis)
    assert all(T.contains_vector(v) for v in S.basis)


def test_scaling_image_radicals():
    doubling = _scaling_image(2)
    assert radical_probe(doubling, _p("x", Z), 6).failures == (2, 3, 4, 5, 6)
    # a = 0 gives x Z[x], a = 1 gives zero
    assert radical_probe(_scaling_image(0), _p("x", Z), 12).status == "AllIn"
    assert radical_probe(_scaling_image(0), _p("1 + x", Z), 12).status == "FailsAt"
    assert _scaling_image(1).dim == 0
    # a = -1 gives 2x Z[x^2]
    odd = _scaling_image(-1)
    assert contains(odd, _p("2*x^3", Z))
    assert not contains(odd, _p("x", Z))
    assert not contains(odd, _p("2*x^2", Z))


def test_zero_subspace_radical():
    S = span([], BOX, field=Q)
    assert S.dim == 0
    assert radical_probe(S, _p("0"), 5).status == "AllIn"
    assert radical_probe(S, _p("x"), 5).describe() == "FailsAt {1, 2, 3, 4, 5}"


def test_inversion_over_f2_laurent():
    F2 = PrimeField(2)
    box = Window.box(1, 24, laurent=True)
    delta = EDeriv(MapSpec.endomorphism([_p("x^-1", F2, laurent=True)]))
    S = map_image(delta, box, box)
    assert S.exact
    a = _p("x + x^-1", F2, laurent=True)
    assert radical_probe(S, a, 12).status == "AllIn"
    cert = ms_falsify(S, a, _p("x", F2, laurent=True), _p("1", F2, laurent=True), 12)
    assert cert.holds
    assert cert.escaped == tuple(range(1, 13))


@pytest.mark.parametrize("p", [3, 5])
def test_derivative_in_positive_characteristic(p):
    F = PrimeField(p)
    d = MapSpec.derivation([_p("1", F)])
    S = map_image(d, Window(((0, 13),)), BOX)
    assert S.exact
    assert contains(S, _p("1", F))
    assert not contains(S, _p(f"x^{p - 1}", F))
    cert = ms_falsify(S, _p("1", F), _p(f"x^{p - 1}", F), _p("1", F), 12)
    assert cert.holds and len(cert.escaped) == 12
    with pytest.raises(NotInRadical) as exc:
        ms_falsify(S, _p("x", F), _p("1", F), _p("1", F), 12)
    assert exc.value.m == p - 1


def test_window_overflow_errors():
    F3 = PrimeField(3)
    S = map_image(MapSpec.derivation([_p("1", F3)]), Window(((0, 13),)), BOX)
    with pytest.raises(OutOfWindow) as exc:
        radical_probe(S, _p("x^3", F3), 5)
    assert exc.value.power == 5
    frobenius = EDeriv(MapSpec.endomorphism([_p("x^2")]))
    with pytest.raises(TargetOverflow):
        map_image(frobenius, BOX, BOX)


def test_kernels():
    d = MapSpec.derivation([_p("1")])
    assert map_kernel(d, Window.box(1, 6)).dim == 1
    assert map_kernel(d, Window.box(1, 6), power=3).dim == 3
    assert map_kernel_chain(d, Window.box(1, 4)).dim == 5
    F3 = PrimeField(3)
    assert map_kernel(MapSpec.derivation([_p("1", F3)]), Window.box(1, 6)).dim == 3


def test_span_equality_and_membership():
    window = Window.box(1, 3)
    S = span([_p("x"), _p("x + 1")], window)
    T = span([_p("1"), _p("2*x")], window)
    assert subspaces_equal(S, T)
    assert contains(S, _p("3 - x"))
    assert not contains(S, _p("x^2"))


def test_verify_split_for_a_projection():
    P = [[Q.one(), Q.zero()], [Q.zero(), Q.zero()]]
    ident = linalg.identity(2, Q)
    A = [[Q.sub(a, b) for a, b in zip(r1, r2)] for r1, r2 in zip(ident, P)]
    assert verify_split(A, P, ident, ident, Q)
    with pytest.raises(PreconditionFailed):
        verify_split(P, P, ident, ident, Q)


def test_ideal_radical_diagnostic():
    x2 = _p("x^2")
    S = map_image(MapSpec.derivation([x2]), Window(((0, 11),)), BOX)
    ideal = span([x2 * _p(f"x^{j}") for j in range(11)], BOX)
    assert ideal_radical_diagnostic(ideal, S, [x2, _p("x"), _p("x + 1")], 6)
    # x^2 is not a derivative over F3
    F3 = PrimeField(3)
    image = map_image(MapSpec.derivation([_p("1", F3)]), Window(((0, 13),)), BOX)
    squares = span([_p(f"x^{j + 2}", F3) for j in range(11)], BOX)
    assert not ideal_radical_diagnostic(squares, image, [_p("x", F3)], 6)
