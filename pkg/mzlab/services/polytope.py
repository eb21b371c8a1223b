from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from sympy import Rational
from sympy.solvers.simplex import InfeasibleLPError, linprog

from mzlab.config import settings
from mzlab.errors import RingMismatch, ZeroPolynomial
from mzlab.poly import ExpVec, Poly
from mzlab.rings import CoeffRing, IntegerRing

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SupportSet:
    points: tuple[ExpVec, ...]

    @property
    def dim(self) -> int:
        return len(self.points[0]) if self.points else 0


@dataclass(frozen=True)
class PolytopeVerdict:
    polynomial: str
    contains_origin: bool
    in_radical: bool
    constant_term_power: Optional[int]
    max_power: int

    @property
    def status(self) -> str:
        if self.constant_term_power is not None or self.in_radical:
            return "verified"
        # origin in the hull but no constant term seen up to max_power
        return "theorem-asserted"


def support(f: Poly) -> SupportSet:
    if f.is_zero():
        raise ZeroPolynomial("the zero polynomial has no Newton polytope")
    return SupportSet(tuple(sorted(f.terms)))


def contains_origin(S: SupportSet) -> bool:
    return origin_weights(S) is not None


def _check_char_zero(ring: CoeffRing) -> None:
    if ring.characteristic:
        raise RingMismatch(f"the polytope criterion needs characteristic 0, not {ring.tag}")


def dk_radical_test(f: Poly) -> bool:
    """f lies in the radical of the constant-term-free Laurent polynomials iff 0 is outside its polytope."""
    _check_char_zero(f.ring)
    return not contains_origin(support(f))


def constant_term_probe(f: Poly, M: int) -> Optional[int]:
    origin = (0,) * len(f.variables)
    power = f.one()
    for m in range(1, M + 1):
        power = power * f
        if not f.ring.is_zero(power.coeff(origin)):
            return m
    return None


def polytope_verdict(f: Poly, M: Optional[int] = None) -> PolytopeVerdict:
    M = settings.max_power if M is None else M
    _check_char_zero(f.ring)
    inside = contains_origin(support(f))
    hit = constant_term_probe(f, M)
    verdict = PolytopeVerdict(str(f), inside, not inside, hit, M)
    if verdict.status == "theorem-asserted":
        logger.warning("0 lies in the polytope of %s but no power up to %s has a constant term", f, M)
    return verdict


def random_laurent(
    rng: random.Random, variables: tuple[str, ...], terms: int = 5, spread: int = 3, ring: Optional[CoeffRing] = None
) -> Poly:
    """Random nonzero Laurent polynomial with small integer coefficients."""
    ring = ring or IntegerRing()
    while True:
        coeffs = {}
        for _ in range(rng.randint(1, terms)):
            exp = tuple(rng.randint(-spread, spread) for _ in variables)
            coeffs[exp] = ring.from_int(rng.choice([-3, -2, -1, 1, 2, 3]))
        f = Poly(ring, variables, coeffs, laurent=True)
        if not f.is_zero():
            return f


def origin_weights(S: SupportSet) -> Optional[list[Fraction]]:
    """Convex weights l with sum l_i v_i = 0 and sum l_i = 1, found by exact LP; None if infeasible."""
    k = len(S.points)
    if not k:
        raise ZeroPolynomial("empty support")
    for i, p in enumerate(S.points):
        if not any(p):
            return [Fraction(int(i == j)) for j in range(k)]
    rows = [[p[i] for p in S.points] for i in range(S.dim)]
    A_eq = [row for row in rows if any(row)] + [[1] * k]
    b_eq = [0] * (len(A_eq) - 1) + [1]
    try:
        _, weights = linprog([0] * k, [[1] * k], [1], A_eq, b_eq)
    except InfeasibleLPError:
        return None
    # zero weights come back as plain ints
    exact = [Rational(w) for w in weights]
    return [Fraction(int(w.p), int(w.q)) for w in exact]
