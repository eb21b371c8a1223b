from __future__ import annotations

import itertools
from fractions import Fraction

from mzlab.config import settings
from mzlab.parser import parse_poly
from mzlab.poly import Poly
from mzlab.providers.base import Claim, ExampleCheck, checked
from mzlab.rings import IntegerRing, LaurentTRing, PrimeField, RationalField
from mzlab.services.maps import EDeriv, MapSpec, NotWithin, SpanStabilized, apply, iterate, lf_probe, ln_probe
from mzlab.services.subspace import (
    Window,
    contains,
    ideal_radical_diagnostic,
    lattice_span,
    map_image,
    map_image_of_ideal,
    ms_falsify,
    radical_probe,
    span,
    subspaces_equal,
)

QQ_RING = RationalField()


def _p(text: str, ring=QQ_RING, variables=("x",), laurent: bool = False) -> Poly:
    return parse_poly(text, ring, variables, laurent)


def _certificate_claim(statement: str, cert, degree: int) -> Claim:
    witness = f"a = {cert.candidate}, translate by {cert.left}, escapes at m = {list(cert.escaped)}"
    return checked(statement, cert.holds, cert.exact, degree, cert.max_power, witness)


class NonLocallyFiniteDerivation(ExampleCheck):
    id = "ex2.1"
    anchor = "Example 2.1"

    def run(self) -> list[Claim]:
        N, M = settings.max_degree, settings.max_power
        xy = ("x", "y")
        D = MapSpec.derivation([_p("1", variables=xy), _p("-y^2", variables=xy)])
        y = _p("y", variables=xy)
        probe = lf_probe(D, y, 12)
        claims = [
            checked(
                "D = d/dx - y^2 d/dy is not locally finite at y",
                isinstance(probe, NotWithin),
                False,
                N,
                12,
                "no iterate of y up to 12 falls into the span of the earlier ones",
            ),
            checked("1 = D(x) lies in Im D", apply(D, _p("x", variables=xy)) == _p("1", variables=xy), True, N, 1),
        ]
        S = map_image(D, Window(((0, N), (0, N - 1))), Window.box(2, N))
        cert = ms_falsify(S, _p("1", variables=xy), y, _p("1", variables=xy), M)
        claims.append(_certificate_claim("Im D is not a Mathieu subspace: y * 1^m never lies in Im D", cert, N))
        return claims


class TranslationSquaringEDerivation(ExampleCheck):
    id = "ex2.2"
    anchor = "Example 2.2"

    def run(self) -> list[Claim]:
        M = settings.max_power
        xy = ("x", "y")
        delta = EDeriv(MapSpec.endomorphism([_p("x + 1", variables=xy), _p("y^2", variables=xy)]))
        one = _p("1", variables=xy)
        probe = lf_probe(delta, _p("y", variables=xy), 6)
        claims = [
            checked("delta = I - phi is not locally finite at y", isinstance(probe, NotWithin), False, 12, 6),
            checked("1 = delta(-x) lies in Im delta", apply(delta, _p("-x", variables=xy)) == one, True, 1, 1),
        ]
        S = map_image(delta, Window(((0, 12), (0, 6))), Window.box(2, 12))
        cert = ms_falsify(S, one, _p("y", variables=xy), one, M, note="delta(f) = y forces every y^(2^k) into f")
        claims.append(_certificate_claim("Im delta is not a Mathieu subspace: y never lies in Im delta", cert, 12))
        return claims


class _ImageOfIdealCheck(ExampleCheck):
    """Image of the ideal (x^2 - 1) under a locally finite operator on Q[x]."""

    operator_label = ""

    def operator(self):
        raise NotImplementedError

    def run(self) -> list[Claim]:
        N = settings.max_degree
        M = (N - 1) // 2
        op = self.operator()
        g = _p("x^2 - 1")
        S = map_image_of_ideal(op, g, Window(((0, N - 2),)), Window.box(1, N))
        cert = ms_falsify(S, _p("x^2"), _p("x"), _p("1"), M, note="odd powers of x are never images")
        probe = lf_probe(op, g, settings.probe_cap)
        return [
            checked(
                f"{self.operator_label} is locally finite at x^2 - 1",
                isinstance(probe, SpanStabilized),
                True,
                N,
                0,
                f"span stabilises at dimension {getattr(probe, 'dim', '-')}",
            ),
            _certificate_claim(
                f"the image of (x^2 - 1) under {self.operator_label} is not a Mathieu subspace", cert, N
            ),
        ]


class EulerDerivationIdealImage(_ImageOfIdealCheck):
    id = "ex2.3"
    anchor = "Example 2.3"
    operator_label = "D = x d/dx"

    def operator(self):
        return MapSpec.derivation([_p("x")])


class ScalingEDerivationIdealImage(_ImageOfIdealCheck):
    id = "ex2.4"
    anchor = "Example 2.4"
    operator_label = "delta = I - phi, phi(x) = 2x (q = 2)"

    def operator(self):
        return EDeriv(MapSpec.endomorphism([_p("2*x")]))


class PositiveCharacteristicDerivative(ExampleCheck):
    id = "ex2.5"
    anchor = "Example 2.5"
    primes = (3, 5)

    def run(self) -> list[Claim]:
        N, M = settings.max_degree, settings.max_power
        claims: list[Claim] = []
        for p in self.primes:
            field = PrimeField(p)
            D = MapSpec.derivation([_p("1", field)])
            S = map_image(D, Window(((0, N + 1),)), Window.box(1, N))
            one = _p("1", field)
            claims.append(checked(f"over F_{p}: 1 lies in Im d/dx", contains(S, one), S.exact, N, 1))
            cert = ms_falsify(S, one, _p(f"x^{p - 1}", field), one, M)
            claims.append(_certificate_claim(f"over F_{p}: x^{p - 1} * 1^m never lies in Im d/dx", cert, N))
            monomials = [Poly.monomial(field, ("x",), (k,)) for k in range(N + 1)]
            verdicts = ln_probe(D, monomials, N + 2)
            claims.append(
                checked(
                    f"over F_{p}: d/dx is locally nilpotent on x^0..x^{N}",
                    not any(isinstance(v, NotWithin) for v in verdicts),
                    True,
                    N,
                    N + 2,
                )
            )
            claims.append(
                checked(
                    f"over F_{p}: (d/dx)^{p} kills x^0..x^{N}",
                    all(iterate(D, f, p).is_zero() for f in monomials),
                    True,
                    N,
                    p,
                )
            )
        return claims


class InversionOverF2Laurent(ExampleCheck):
    id = "ex2.6"
    anchor = "Example 2.6"

    def run(self) -> list[Claim]:
        M = min(12, settings.max_power)
        field = PrimeField(2)
        delta = EDeriv(MapSpec.endomorphism([_p("x^-1", field, laurent=True)]))
        window = Window.box(1, 24, laurent=True)
        S = map_image(delta, window, window)
        a = _p("x + x^-1", field, laurent=True)
        one = _p("1", field, laurent=True)
        verdict = radical_probe(S, a, M)
        cert = ms_falsify(S, a, _p("x", field, laurent=True), one, M)
        probe = lf_probe(delta, _p("x", field, laurent=True), 4)
        return [
            checked(
                "(x + x^-1)^m lies in Im delta", verdict.status == "AllIn", verdict.exact, 24, M, verdict.describe()
            ),
            _certificate_claim("Im delta is not a Mathieu subspace of F_2[x, x^-1]", cert, 24),
            checked(
                "delta^2(x) = 0 in characteristic 2",
                isinstance(probe, SpanStabilized) and iterate(delta, _p("x", field, laurent=True), 2).is_zero(),
                True,
                24,
                2,
            ),
        ]


class FrobeniusEDerivation(ExampleCheck):
    id = "ex2.7"
    anchor = "Example 2.7"
    primes = (2, 3)
    max_candidate_degree = 4
    power = 6

    def run(self) -> list[Claim]:
        claims: list[Claim] = []
        for p in self.primes:
            field = PrimeField(p)
            delta = EDeriv(MapSpec.endomorphism([_p(f"x^{p}", field)]))
            S = map_image(delta, Window(((0, 24),)), Window(((0, 24 * p),)))
            outside = not contains(S, _p("1", field))
            claims.append(checked(f"over F_{p}: 1 is not in Im(I - Frobenius)", outside, S.exact, 24 * p, 1))
            survivors = []
            count = 0
            for coeffs in itertools.product(range(p), repeat=self.max_candidate_degree + 1):
                f = Poly(field, ("x",), {(k,): c for k, c in enumerate(coeffs)})
                if f.is_zero():
                    continue
                count += 1
                if radical_probe(S, f, self.power).status == "AllIn":
                    survivors.append(str(f))
            claims.append(
                checked(
                    f"over F_{p}: none of the {count} nonzero f of degree <= {self.max_candidate_degree} "
                    f"keeps f^m in Im(I - Frobenius)",
                    not survivors,
                    S.exact,
                    24 * p,
                    self.power,
                    ", ".join(survivors) or None,
                )
            )
        return claims


class LaurentScalarEDerivation(ExampleCheck):
    id = "ex2.8"
    anchor = "Example 2.8"

    def run(self) -> list[Claim]:
        N = settings.max_degree
        M = min(12, N)
        ring = LaurentTRing()
        xy = ("x", "y")
        delta = EDeriv(MapSpec.endomorphism([_p("2*x", ring, xy), _p("t*y", ring, xy)]))
        S = map_image(delta, Window.box(2, N), Window.box(2, N))
        units = all(ring.is_unit(ring.sub(ring.one(), ring.from_int(2**m))) for m in range(1, M + 1))
        non_units = not any(
            ring.is_unit(ring.sub(ring.one(), ring.monomial(1, Fraction(2**m)))) for m in range(1, M + 1)
        )
        cert = ms_falsify(S, _p("x", ring, xy), _p("y", ring, xy), _p("1", ring, xy), M)
        return [
            checked("1 - 2^m is a unit of Q[t, t^-1] for every m >= 1", units, True, N, M),
            checked("1 - 2^m t is not a unit of Q[t, t^-1]", non_units, True, N, M),
            _certificate_claim("Im(I - phi) is not a Mathieu subspace: x^m y escapes", cert, N),
        ]


class IntegerScalingFamily(ExampleCheck):
    id = "ex2.9"
    anchor = "Example 2.9"
    scalars = (-1, 0, 1, 2, 3)

    @staticmethod
    def closed_form(a: int, N: int) -> list[Poly]:
        ring = IntegerRing()
        if a == -1:
            # 2x Z[x^2]
            return [Poly.monomial(ring, ("x",), (n,), 2) for n in range(1, N + 1, 2)]
        if a == 0:
            # x Z[x]
            return [Poly.monomial(ring, ("x",), (n,)) for n in range(1, N + 1)]
        if a == 1:
            return []
        return [Poly.monomial(ring, ("x",), (n,), a**n - 1) for n in range(1, N + 1)]

    @staticmethod
    def closed_form_label(a: int) -> str:
        return {-1: "2xZ[x^2]", 0: "xZ[x]", 1: "{0}"}.get(a, f"spanned by ({a}^n - 1) x^n")

    def run(self) -> list[Claim]:
        N = settings.max_degree
        M = min(12, N)
        ring = IntegerRing()
        window = Window.box(1, N)
        claims: list[Claim] = []
        for a in self.scalars:
            delta = EDeriv(MapSpec.endomorphism([_p(f"{a}*x", ring)]))
            S = map_image(delta, window, window)
            L = lattice_span(self.closed_form(a, N), window)
            same = all(L.contains_vector(v) for v in S.basis) and all(S.contains_vector(v) for v in L.basis)
            claims.append(checked(f"a = {a}: Im(I - phi_a) is {self.closed_form_label(a)}", same, S.exact, N, 0))
            mismatches = []
            for text in ("x", "-x", "2*x", "1", "1 + x"):
                f = _p(text, ring)
                inside = radical_probe(S, f, M).status == "AllIn"
                if inside != (a == 0 and f.coeff((0,)) == 0):
                    mismatches.append(text)
            claims.append(
                checked(
                    f"a = {a}: the radical of Im(I - phi_a) is "
                    + ("xZ[x]" if a == 0 else "{0}")
                    + " on the candidates x, -x, 2x, 1, 1 + x",
                    not mismatches,
                    S.exact,
                    N,
                    M,
                    ", ".join(mismatches) or None,
                )
            )
        return claims


class PrincipalIdealImages(ExampleCheck):
    id = "ex3.1"
    anchor = "Example 3.1"
    multipliers = ("x^2", "x + 1", "x^2 - 1")

    def run(self) -> list[Claim]:
        N = settings.max_degree
        claims: list[Claim] = []
        for text in self.multipliers:
            a = _p(text)
            d = a.total_degree()
            D = MapSpec.derivation([a])
            target = Window.box(1, N)
            S = map_image(D, Window(((0, N - d + 1),)), target)
            ideal = span([a * Poly.monomial(QQ_RING, ("x",), (j,)) for j in range(N - d + 1)], target)
            claims.append(
                checked(
                    f"Im(({text}) d/dx) is the ideal ({text}) up to degree {N}", subspaces_equal(S, ideal), S.exact, N, 0
                )
            )
            M = N // 2
            candidates = [a, _p("x"), _p("x + 1")]
            claims.append(
                checked(
                    f"the ideal ({text}) lies in Im(({text}) d/dx) and both agree on which of x, x + 1, {text} look radical",
                    ideal_radical_diagnostic(ideal, S, candidates, M),
                    False,
                    N,
                    M,
                )
            )
        return claims
