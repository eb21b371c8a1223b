from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Optional

from mzlab import linalg
from mzlab.config import settings
from mzlab.parser import parse_poly
from mzlab.providers.base import Claim, ExampleCheck, checked
from mzlab.rings import CoeffRing, IntegerRing, PrimeField, RationalField
from mzlab.schemas import ClaimStatus
from mzlab.services import finalg, polytope
from mzlab.services.maps import EDeriv, MapSpec, endo_period_detect
from mzlab.services.subspace import (
    Window,
    contains,
    map_image,
    map_kernel_chain,
    radical_probe,
    span_vectors,
    verify_split,
)

QQ_RING = RationalField()
F5 = PrimeField(5)


def _random_invertible(rng: random.Random, n: int, field: CoeffRing) -> list[list]:
    while True:
        rows = [[field.from_int(rng.randint(-3, 3)) for _ in range(n)] for _ in range(n)]
        if linalg.rank(rows, field, n) == n:
            return rows


def _conjugated_diagonal(rng: random.Random, n: int, field: CoeffRing, entries: tuple[int, int]) -> list[list]:
    """S diag(d) S^-1 with d drawn from ``entries``."""
    S = _random_invertible(rng, n, field)
    diag = [[field.from_int(rng.choice(entries)) if i == j else field.zero() for j in range(n)] for i in range(n)]
    return linalg.matmul(linalg.matmul(S, diag, field), linalg.inverse(S, field), field)


def _combine(a: list[list], b: list[list], field: CoeffRing, sign: int) -> list[list]:
    op = field.add if sign > 0 else field.sub
    return [[op(x, y) for x, y in zip(r1, r2)] for r1, r2 in zip(a, b)]


def _scaled(a: list[list], c, field: CoeffRing) -> list[list]:
    return [[field.mul(c, x) for x in row] for row in a]


def _image_is_kernel(A: list[list], B: list[list], field: CoeffRing) -> bool:
    """Direct comparison of the column space of A with the null space of B."""
    n = len(A)
    image_rows, _ = linalg.column_space(A, field, n)
    kernel = span_vectors(linalg.nullspace(B, field, n), field, n)
    return [tuple(r) for r in image_rows] == list(kernel.rows)


def _involution_instances() -> list[tuple[finalg.StructAlgebra, finalg.LinOp]]:
    """Commutative F_5-algebras with an involutive endomorphism."""
    instances = []
    for k in range(2, 5):
        A = finalg.truncated_polynomial(F5, k)
        images = [[(-1) ** j if i == j else 0 for i in range(k)] for j in range(k)]
        instances.append((A, finalg.LinOp.from_images(A, images, finalg.OpKind.ENDOMORPHISM)))
    split = finalg.split_product(F5, 2)
    instances.append((split, finalg.LinOp.from_images(split, [[0, 1], [1, 0]], finalg.OpKind.ENDOMORPHISM)))
    dual = finalg.truncated_polynomial(F5, 2)
    both = finalg.direct_product(dual, dual)
    swap = [[int(i == (j + 2) % 4) for i in range(4)] for j in range(4)]
    instances.append((both, finalg.LinOp.from_images(both, swap, finalg.OpKind.ENDOMORPHISM)))
    return instances


class ProjectionInvolutionSuite(ExampleCheck):
    id = "prop5.2"
    anchor = "Proposition 5.2"

    def run(self) -> list[Claim]:
        rng = random.Random(settings.random_seed)
        trials = settings.random_trials
        bad_projections, bad_involutions = [], []
        for t in range(trials):
            field = rng.choice((QQ_RING, F5))
            n = rng.randint(1, 6)
            I = linalg.identity(n, field)
            P = _conjugated_diagonal(rng, n, field, (0, 1))
            I_minus_P = _combine(I, P, field, -1)
            if not (verify_split(I_minus_P, P, I, I, field) and _image_is_kernel(I_minus_P, P, field)):
                bad_projections.append(f"trial {t} over {field.tag}, n = {n}")
            J = _conjugated_diagonal(rng, n, field, (1, -1))
            half = _scaled(I, field.from_fraction(1, 2), field)
            A, B = _combine(I, J, field, -1), _combine(I, J, field, 1)
            if not (verify_split(A, B, half, half, field) and _image_is_kernel(A, B, field)):
                bad_involutions.append(f"trial {t} over {field.tag}, n = {n}")
        claims = [
            checked(
                f"Im(I - P) = Ker P for {trials} random projections over Q and F_5",
                not bad_projections,
                True,
                6,
                0,
                "; ".join(bad_projections) or None,
            ),
            checked(
                f"Im(I - J) = Ker(I + J) for {trials} random involutions over Q and F_5",
                not bad_involutions,
                True,
                6,
                0,
                "; ".join(bad_involutions) or None,
            ),
        ]
        for A, J in _involution_instances():
            radical = set(finalg.radical_finite(A, J.identity_minus().image()))
            nil = finalg.nilradical_commutative(A)
            expected = {a for a in A.elements() if nil.contains_vector(a)}
            claims.append(
                checked(
                    f"r(Im(I - phi)) = nil(A) for an involution of {A.describe()}",
                    radical == expected,
                    True,
                    A.dim,
                    0,
                    f"{len(radical)} radical elements, nil(A) has dimension {nil.dim}",
                )
            )
        return claims


def _partial_map_op(A: finalg.StructAlgebra, sigma: tuple[Optional[int], ...]) -> finalg.LinOp:
    """Endomorphism a -> (a_sigma(i))_i of K^n, zero where sigma is undefined."""
    n = A.dim
    images = [[int(sigma[i] == j) for i in range(n)] for j in range(n)]
    return finalg.LinOp.from_images(A, images, finalg.OpKind.ENDOMORPHISM)


class PeriodicEndomorphismSuite(ExampleCheck):
    id = "prop5.4"
    anchor = "Proposition 5.4"
    sizes = (2, 3)
    grid = (0, 1, -1, 2)

    def run(self) -> list[Claim]:
        instances, disagreements, aperiodic = 0, [], []
        for n in self.sizes:
            A = finalg.split_product(QQ_RING, n)
            candidates = [A.coerce(v) for v in itertools.product(self.grid, repeat=n)]
            for sigma in itertools.product([None, *range(n)], repeat=n):
                phi = _partial_map_op(A, sigma)
                instances += 1
                period = finalg.linop_period(phi, settings.probe_cap)
                if period is None:
                    aperiodic.append(str(sigma))
                    continue
                i, _ = period
                spaces = (phi.identity_minus().image(), phi.power(i).kernel(), finalg.kernel_chain(phi))
                for a in candidates:
                    verdicts = {finalg.radical_member_split(A, V, a) for V in spaces}
                    if len(verdicts) > 1:
                        disagreements.append(f"sigma = {sigma}, a = {a}")
        rng = random.Random(settings.random_seed)
        mismatched = []
        for t in range(settings.random_trials):
            values = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(rng.randint(1, 6))]
            sums = finalg.power_sums(values, len(values))
            if finalg.newton_to_elementary(sums) != finalg.elementary_symmetric(values):
                mismatched.append(f"trial {t}")
        zeros = all(not any(finalg.newton_to_elementary([0] * n)) for n in range(1, 7))
        return [
            checked(
                f"phi^i = phi^j for all {instances} partial-map endomorphisms of Q^2 and Q^3",
                not aperiodic,
                True,
                3,
                settings.probe_cap,
                ", ".join(aperiodic) or None,
            ),
            checked(
                "r(Im delta), r(Ker phi^i) and r(Ker_{>=1} phi) agree on the candidate grid {0, 1, -1, 2}^n",
                not disagreements,
                True,
                3,
                0,
                "; ".join(disagreements[:5]) or None,
            ),
            checked(
                f"Newton's identities recover e_1..e_n from p_1..p_n for {settings.random_trials} random multisets",
                not mismatched,
                True,
                6,
                6,
                ", ".join(mismatched) or None,
            ),
            checked("vanishing power sums force prod(t - b_i) = t^n", zeros, True, 6, 6),
        ]


def _p(text: str, variables=("x",)):
    return parse_poly(text, QQ_RING, variables)


class FiniteOrderAutomorphisms(ExampleCheck):
    id = "cor5.5"
    anchor = "Corollary 5.5"
    cases = (
        (("x",), ("-x",), ("x", "1 + x", "x + x^2", "x^2", "1")),
        (("x", "y"), ("y", "x"), ("x", "x - y", "x + y", "1 + x", "x*y")),
    )

    def run(self) -> list[Claim]:
        N = settings.max_degree
        M = N // 2
        claims: list[Claim] = []
        for variables, images, candidates in self.cases:
            phi = MapSpec.endomorphism([_p(img, variables) for img in images])
            window = Window.box(len(variables), N)
            S = map_image(EDeriv(phi), window, window)
            period = endo_period_detect(phi, settings.probe_cap)
            claims.append(
                checked(f"{phi.describe()} has finite order", period is not None, True, N, 0, f"(i, j) = {period}")
            )
            survivors = []
            for text in candidates:
                verdict = radical_probe(S, _p(text, variables), M)
                if not set(range(2, M + 1, 2)) <= set(verdict.failures):
                    survivors.append(f"{text}: {verdict.describe()}")
            claims.append(
                checked(
                    f"r(Im(I - phi)) = nil = {{0}} for {phi.describe()}: every nonzero candidate fails at even m",
                    not survivors,
                    S.exact,
                    N,
                    M,
                    "; ".join(survivors) or None,
                )
            )
        return claims


class AlgebraicEndomorphismsOfKx(ExampleCheck):
    id = "prop6.8"
    anchor = "Proposition 6.8"
    images = ("0", "1", "2", "1 - x")
    window_degree = 48
    candidate_degree = 6
    power = 8

    def run(self) -> list[Claim]:
        window = Window.box(1, self.window_degree)
        claims: list[Claim] = []
        for text in self.images:
            phi = MapSpec.endomorphism([_p(text)])
            image = map_image(EDeriv(phi), window, window)
            chain = map_kernel_chain(phi, window)
            period = endo_period_detect(phi, settings.probe_cap)
            exact = image.exact and chain.exact
            nested = all(contains(image, f) for f in chain.basis_polys())
            mismatches = []
            for k in range(self.candidate_degree + 1):
                a = _p(f"x^{k}")
                left, right = radical_probe(image, a, self.power), radical_probe(chain, a, self.power)
                if left.failures != right.failures:
                    mismatches.append(f"x^{k}: {left.describe()} vs {right.describe()}")
            label = f"phi(x) = {text}"
            claims.extend(
                [
                    checked(f"{label}: phi^i = phi^j", period is not None, True, 1, 0, f"(i, j) = {period}"),
                    checked(f"{label}: Ker_{{>=1}} phi lies in Im(I - phi)", nested, exact, self.window_degree, 0),
                    checked(
                        f"{label}: r(Im(I - phi)) and r(Ker_{{>=1}} phi) agree on x^0..x^{self.candidate_degree}",
                        not mismatches,
                        exact,
                        self.window_degree,
                        self.power,
                        "; ".join(mismatches) or None,
                    ),
                ]
            )
        return claims


def _is_convex_certificate(S: polytope.SupportSet, weights: list[Fraction]) -> bool:
    if any(w < 0 for w in weights) or sum(weights) != 1:
        return False
    return all(sum(w * p[i] for w, p in zip(weights, S.points)) == 0 for i in range(S.dim))


class PolytopeConsistency(ExampleCheck):
    id = "thm4.5"
    anchor = "Theorem 4.5"
    names = ("x", "y", "z")
    power = 8

    def run(self) -> list[Claim]:
        rng = random.Random(settings.random_seed)
        trials = settings.random_trials
        unsound, uncertified, unconfirmed = [], [], 0
        for _ in range(trials):
            variables = self.names[: rng.randint(1, 3)]
            f = polytope.random_laurent(rng, variables)
            S = polytope.support(f)
            weights = polytope.origin_weights(S)
            hit = polytope.constant_term_probe(f, self.power)
            if polytope.dk_radical_test(f) and hit is not None:
                unsound.append(str(f))
            if weights is not None and not _is_convex_certificate(S, weights):
                uncertified.append(str(f))
            if weights is not None and hit is None:
                unconfirmed += 1
        claims = [
            checked(
                f"0 outside the polytope means no f^m has a constant term ({trials} random f)",
                not unsound,
                True,
                3,
                self.power,
                "; ".join(unsound) or None,
            ),
            checked(
                f"every 0 found inside a polytope comes with exact convex weights ({trials} random f)",
                not uncertified,
                True,
                3,
                0,
                "; ".join(uncertified) or None,
            ),
        ]
        if unconfirmed:
            claims.append(
                Claim(
                    f"{unconfirmed} sampled f contain 0 in their polytope but show no constant term up to "
                    f"m = {self.power}; some higher power has one",
                    ClaimStatus.THEOREM_ASSERTED,
                    False,
                    3,
                    self.power,
                )
            )
        ring = IntegerRing()
        for text in ("x + x^-1", "x + x*y"):
            variables = ("x", "y") if "y" in text else ("x",)
            verdict = polytope.polytope_verdict(parse_poly(text, ring, variables, laurent=True), self.power)
            claims.append(
                checked(
                    f"{text}: 0 {'lies' if verdict.contains_origin else 'does not lie'} in the polytope",
                    verdict.status == "verified",
                    True,
                    3,
                    self.power,
                    f"first constant term at m = {verdict.constant_term_power}",
                )
            )
        return claims
