from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING, Optional, Sequence, Union

from mzlab.config import settings
from mzlab.errors import NonInvertibleImage, NotLocallyNilpotentAt, PreconditionFailed, RingMismatch, UsageError
from mzlab.linalg import field_of, rank
from mzlab.poly import ExpVec, Poly, substitute
from mzlab.rings import IntegerRing, RationalField

if TYPE_CHECKING:
    from mzlab.services.subspace import Window

logger = logging.getLogger(__name__)


class MapKind(str, Enum):
    DERIVATION = "derivation"
    ENDOMORPHISM = "endomorphism"


@dataclass(frozen=True)
class MapSpec:
    kind: MapKind
    images: tuple[Poly, ...]

    def __post_init__(self) -> None:
        if not self.images:
            raise UsageError("a map needs one image per variable")
        first = self.images[0]
        for img in self.images[1:]:
            first._check(img)
        if len(self.images) != len(first.variables):
            raise UsageError(f"expected {len(first.variables)} images, got {len(self.images)}")
        if self.kind is MapKind.ENDOMORPHISM and first.laurent:
            for name, img in zip(first.variables, self.images):
                if img.unit_monomial_inverse() is None:
                    raise NonInvertibleImage(f"{name} maps to {img}, which is not a unit monomial")

    @classmethod
    def derivation(cls, images: Sequence[Poly]) -> MapSpec:
        return cls(MapKind.DERIVATION, tuple(images))

    @classmethod
    def endomorphism(cls, images: Sequence[Poly]) -> MapSpec:
        return cls(MapKind.ENDOMORPHISM, tuple(images))

    @property
    def variables(self) -> tuple[str, ...]:
        return self.images[0].variables

    @property
    def ring(self):
        return self.images[0].ring

    @property
    def laurent(self) -> bool:
        return self.images[0].laurent

    def describe(self) -> str:
        arrow = "D" if self.kind is MapKind.DERIVATION else "phi"
        return ", ".join(f"{arrow}({v}) = {img}" for v, img in zip(self.variables, self.images))


@dataclass(frozen=True)
class EDeriv:
    """E-derivation I - phi."""

    phi: MapSpec

    def __post_init__(self) -> None:
        if self.phi.kind is not MapKind.ENDOMORPHISM:
            raise UsageError("an E-derivation is built from an endomorphism")

    @property
    def variables(self) -> tuple[str, ...]:
        return self.phi.variables

    @property
    def ring(self):
        return self.phi.ring

    @property
    def laurent(self) -> bool:
        return self.phi.laurent

    def describe(self) -> str:
        return f"I - phi with {self.phi.describe()}"


Operator = Union[MapSpec, EDeriv]


@dataclass(frozen=True)
class NilpotentWithin:
    k: int


@dataclass(frozen=True)
class NotWithin:
    cap: int


@dataclass(frozen=True)
class SpanStabilized:
    dim: int


def apply(m: Operator, f: Poly) -> Poly:
    if isinstance(m, EDeriv):
        return f - substitute(f, m.phi.images)
    f._check(m.images[0])
    if m.kind is MapKind.ENDOMORPHISM:
        return substitute(f, m.images)
    result = f.zero()
    for i, img in enumerate(m.images):
        if img.is_zero():
            continue
        result = result + f.derivative(i) * img
    return result


def iterate(m: Operator, f: Poly, k: int) -> Poly:
    if k < 0:
        raise UsageError("iteration count must be non-negative")
    for _ in range(k):
        f = apply(m, f)
    return f


def exp_ln_derivation(D: MapSpec, f: Poly, cap: Optional[int] = None) -> Poly:
    """e^D(f) as the terminating sum of D^i(f)/i!."""
    if D.kind is not MapKind.DERIVATION:
        raise UsageError("exp is taken of a derivation")
    if f.ring.characteristic or isinstance(f.ring, IntegerRing):
        raise RingMismatch(f"e^D needs a Q-algebra, not {f.ring.tag}")
    cap = settings.probe_cap if cap is None else cap
    total = f.zero()
    term = f
    for i in range(cap + 1):
        if term.is_zero():
            return total
        total = total + term.scale(f.ring.from_fraction(1, math.factorial(i)))
        term = apply(D, term)
    raise NotLocallyNilpotentAt(str(f), cap)


def orbit_collision(phi: MapSpec, a: Poly, bound: int) -> Optional[tuple[int, int]]:
    """Least (i, j), i < j <= bound, with phi^i(a) = phi^j(a)."""
    if phi.kind is not MapKind.ENDOMORPHISM:
        raise UsageError("orbit collisions are defined for endomorphisms")
    seen = {a: 0}
    current = a
    for j in range(1, bound + 1):
        current = apply(phi, current)
        if current in seen:
            return seen[current], j
        seen[current] = j
    return None


def endo_period_detect(phi: MapSpec, bound: int) -> Optional[tuple[int, int]]:
    """(i, j) with 1 <= i < j and phi^i = phi^j, from per-generator collisions."""
    collisions = []
    for index in range(len(phi.variables)):
        x = Poly.variable(phi.ring, phi.variables, index, phi.laurent)
        hit = orbit_collision(phi, x, bound)
        if hit is None:
            return None
        collisions.append(hit)
    i = max(1, max(lo for lo, _ in collisions))
    j = i + math.prod(hi - lo for lo, hi in collisions)
    for index in range(len(phi.variables)):
        x = Poly.variable(phi.ring, phi.variables, index, phi.laurent)
        if iterate(phi, x, i) != iterate(phi, x, j):
            raise PreconditionFailed(f"phi^{i} = phi^{j} on {phi.variables[index]}")
    logger.debug("endomorphism period certificate (%s, %s)", i, j)
    return i, j


def ln_probe(m: Operator, probes: Sequence[Poly], cap: int) -> list[Union[NilpotentWithin, NotWithin]]:
    verdicts: list[Union[NilpotentWithin, NotWithin]] = []
    for probe in probes:
        current = probe
        verdict: Union[NilpotentWithin, NotWithin] = NotWithin(cap)
        for k in range(cap + 1):
            if current.is_zero():
                verdict = NilpotentWithin(k)
                break
            current = apply(m, current)
        verdicts.append(verdict)
    return verdicts


def lf_probe(m: Operator, f: Poly, cap: int) -> Union[SpanStabilized, NotWithin]:
    """Stop at the first iterate lying in the span of the earlier ones."""
    if f.is_zero():
        return SpanStabilized(0)
    field = field_of(f.ring)
    iterates = [f]
    for _ in range(cap):
        following = apply(m, iterates[-1])
        support = sorted({e for g in iterates + [following] for e in g.terms})
        rows = [[g.coeff(e) for e in support] for g in iterates]
        if rank(rows + [[following.coeff(e) for e in support]], field, len(support)) == len(iterates):
            return SpanStabilized(len(iterates))
        iterates.append(following)
    return NotWithin(cap)


# identities checked by the test-suite and the example registry


def leibniz_holds(D: MapSpec, f: Poly, g: Poly) -> bool:
    return apply(D, f * g) == apply(D, f) * g + f * apply(D, g)


def homomorphism_holds(phi: MapSpec, f: Poly, g: Poly) -> bool:
    return apply(phi, f * g) == apply(phi, f) * apply(phi, g)


def e_derivation_law_holds(delta: EDeriv, f: Poly, g: Poly) -> bool:
    df, dg = apply(delta, f), apply(delta, g)
    return apply(delta, f * g) == df * g + f * dg - df * dg


def iterated_product_rule_holds(delta: EDeriv, f: Poly, g: Poly, n: int) -> bool:
    """delta^n(fg) against sum_i C(n,i) delta^i(f) phi^i(delta^(n-i)(g))."""
    expected = f.zero()
    for i in range(n + 1):
        left = iterate(delta, f, i)
        right = iterate(delta.phi, iterate(delta, g, n - i), i)
        expected = expected + (left * right).scale(f.ring.from_int(math.comb(n, i)))
    return iterate(delta, f * g, n) == expected


def square_zero_rule_holds(delta: EDeriv, u: Poly, v: Poly, m: int) -> bool:
    """delta^m(uv) = delta^m(u) v + m (delta^(m-1) u - delta^m u) delta(v) when delta^2 v = 0."""
    if not iterate(delta, v, 2).is_zero():
        raise PreconditionFailed("delta^2(v) = 0")
    dm_u = iterate(delta, u, m)
    dm1_u = iterate(delta, u, m - 1)
    expected = dm_u * v + (dm1_u - dm_u).scale(u.ring.from_int(m)) * apply(delta, v)
    return iterate(delta, u * v, m) == expected


# windowed exactness


def _shift_of(D: MapSpec) -> Optional[ExpVec]:
    """The common exponent shift when D sends every monomial to one monomial."""
    n = len(D.variables)
    shift: Optional[ExpVec] = None
    for i, img in enumerate(D.images):
        if img.is_zero():
            continue
        if len(img.terms) != 1:
            return None
        (exp,) = img.terms
        s = tuple(e - (1 if k == i else 0) for k, e in enumerate(exp))
        if shift is not None and s != shift:
            return None
        shift = s
    return shift if shift is not None else (0,) * n


def _monomial_permutation(phi: MapSpec) -> Optional[list[tuple[int, int]]]:
    """For images c*x_j^(+-1): the (target variable, sign) of every variable."""
    targets: list[tuple[int, int]] = []
    for i, img in enumerate(phi.images):
        if img.is_zero():
            targets.append((i, 1))
            continue
        if len(img.terms) != 1:
            return None
        (exp,) = img.terms
        nonzero = [(k, e) for k, e in enumerate(exp) if e]
        if len(nonzero) != 1 or abs(nonzero[0][1]) != 1:
            return None
        targets.append(nonzero[0])
    if sorted(k for k, _ in targets) != list(range(len(targets))):
        return None
    return targets


def _window_closed(targets: list[tuple[int, int]], window: Window) -> bool:
    for i, (k, sign) in enumerate(targets):
        lo, hi = window.bounds[i]
        image = sorted((sign * lo, sign * hi))
        if image[0] < window.bounds[k][0] or image[1] > window.bounds[k][1]:
            return False
    return True


def _univariate_degree(img: Poly) -> int:
    return max((e[0] for e in img.terms), default=0)


def _is_root_of_unity(img: Poly) -> bool:
    ring = img.ring
    a = img.coeff((1,))
    if isinstance(ring, (RationalField, IntegerRing)):
        return a in (1, -1)
    return True


def window_exact(m: Operator, source: Window, target: Window) -> bool:
    """Whether the image of ``source`` is exactly Im(m) intersected with ``target``."""
    laurent = source.laurent
    univariate = len(source.bounds) == 1 and not laurent
    if isinstance(m, MapSpec) and m.kind is MapKind.DERIVATION:
        shift = _shift_of(m)
        if shift is not None:
            for gamma in target.monomials():
                pre = tuple(g - s for g, s in zip(gamma, shift))
                if (laurent or min(pre) >= 0) and not source.contains_exp(pre):
                    return False
            return True
        if univariate and not m.ring.characteristic and not m.images[0].is_zero():
            lift = 1 - _univariate_degree(m.images[0])
            return source.bounds[0][0] == 0 and source.bounds[0][1] >= target.bounds[0][1] + lift
        return False
    phi = m.phi if isinstance(m, EDeriv) else m
    targets = _monomial_permutation(phi)
    if targets is not None:
        return source.bounds == target.bounds and _window_closed(targets, source)
    if isinstance(m, EDeriv) and univariate:
        img = phi.images[0]
        d = _univariate_degree(img)
        hi = source.bounds[0][1]
        if d >= 2:
            return hi >= target.bounds[0][1] // d
        if d == 0 or not _is_root_of_unity(img):
            return hi >= target.bounds[0][1]
    return False
