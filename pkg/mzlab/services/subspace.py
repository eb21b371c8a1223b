from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Any, Optional, Sequence, Union

from mzlab import linalg
from mzlab.errors import NotInRadical, OutOfWindow, PreconditionFailed, RingMismatch, TargetOverflow, UsageError
from mzlab.poly import ExpVec, Poly
from mzlab.rings import CoeffRing, IntegerRing, LaurentTRing
from mzlab.services.maps import Operator, apply, iterate, window_exact

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Window:
    bounds: tuple[tuple[int, int], ...]
    laurent: bool = False

    def __post_init__(self) -> None:
        for lo, hi in self.bounds:
            if lo > hi:
                raise UsageError(f"empty exponent range [{lo}, {hi}]")
            if lo < 0 and not self.laurent:
                raise UsageError("negative exponents need a Laurent window")

    @classmethod
    def box(cls, nvars: int, n: int, laurent: bool = False) -> Window:
        lo = -n if laurent else 0
        return cls(tuple((lo, n) for _ in range(nvars)), laurent)

    @property
    def nvars(self) -> int:
        return len(self.bounds)

    @cached_property
    def basis(self) -> tuple[ExpVec, ...]:
        return tuple(itertools.product(*(range(lo, hi + 1) for lo, hi in self.bounds)))

    @cached_property
    def _index(self) -> dict[ExpVec, int]:
        return {exp: i for i, exp in enumerate(self.basis)}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def monomials(self) -> tuple[ExpVec, ...]:
        return self.basis

    def contains_exp(self, exp: ExpVec) -> bool:
        return all(lo <= e <= hi for e, (lo, hi) in zip(exp, self.bounds))

    def fits(self, f: Poly) -> bool:
        return all(self.contains_exp(e) for e in f.terms)

    def coordinates(self, f: Poly, ring: Optional[CoeffRing] = None) -> list[Any]:
        outside = [exp for exp in f.terms if not self.contains_exp(exp)]
        if outside:
            shown = ", ".join(f.monomial_str(e) or "1" for e in outside[:5])
            raise OutOfWindow(f"terms outside the window: {shown}")
        ring = ring or f.ring
        vec = [ring.zero()] * self.dim
        for exp, c in f.terms.items():
            vec[self._index[exp]] = c
        return vec

    def poly(self, vector: Sequence[Any], ring: CoeffRing, variables: Sequence[str]) -> Poly:
        return Poly(ring, variables, dict(zip(self.basis, vector)), self.laurent)

    def describe(self) -> str:
        return " x ".join(f"[{lo},{hi}]" for lo, hi in self.bounds)


@dataclass(frozen=True)
class Subspace:
    """RREF basis over a field, in window coordinates or plain coordinates."""

    field: CoeffRing
    ambient_dim: int
    rows: tuple[tuple[Any, ...], ...] = ()
    pivots: tuple[int, ...] = ()
    window: Optional[Window] = None
    variables: tuple[str, ...] = ()
    exact: bool = True

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Sequence[Any]) -> list[Any]:
        field = self.field
        vec = list(vec)
        for row, col in zip(self.rows, self.pivots):
            c = vec[col]
            if not field.is_zero(c):
                vec = [field.sub(a, field.mul(c, b)) for a, b in zip(vec, row)]
        return vec

    def contains_vector(self, vec: Sequence[Any]) -> bool:
        return all(self.field.is_zero(a) for a in self.reduce(vec))

    def basis_polys(self) -> list[Poly]:
        if self.window is None:
            raise UsageError("subspace is not attached to a monomial window")
        return [self.window.poly(row, self.field, self.variables) for row in self.rows]


@dataclass(frozen=True)
class Lattice:
    """Z-span in Hermite normal form."""

    ambient_dim: int
    basis: tuple[tuple[int, ...], ...] = ()
    window: Optional[Window] = None
    variables: tuple[str, ...] = ()
    exact: bool = True

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains_vector(self, vec: Sequence[int]) -> bool:
        return not any(linalg.lattice_residual(self.basis, vec))


@dataclass(frozen=True)
class DiagonalModule:
    """Image of a monomial-diagonal operator over Q[t,t^-1]: x^a -> s_a x^a."""

    ring: LaurentTRing
    scalars: tuple[tuple[ExpVec, Any], ...]
    window: Window
    variables: tuple[str, ...] = ()
    exact: bool = True

    @cached_property
    def _scalars(self) -> dict[ExpVec, Any]:
        return dict(self.scalars)

    def contains_poly(self, f: Poly) -> bool:
        self.window.coordinates(f)
        return all(self.ring.divides(self._scalars.get(exp, self.ring.zero()), c) for exp, c in f.terms.items())


Span = Union[Subspace, Lattice, DiagonalModule]


@dataclass(frozen=True)
class RadicalVerdict:
    candidate: str
    max_power: int
    failures: tuple[int, ...]
    exact: bool

    @property
    def status(self) -> str:
        return "AllIn" if not self.failures else "FailsAt"

    def describe(self) -> str:
        if not self.failures:
            return f"AllIn for m = 1..{self.max_power}"
        return f"FailsAt {{{', '.join(str(m) for m in self.failures)}}}"


@dataclass(frozen=True)
class FalsificationCertificate:
    candidate: str
    left: str
    right: str
    max_power: int
    escaped: tuple[int, ...]
    exact: bool
    note: str = ""
    retained: tuple[int, ...] = dc_field(default=())

    @property
    def holds(self) -> bool:
        return not self.retained


def span_vectors(vectors: Sequence[Sequence[Any]], field: CoeffRing, dim: int) -> Subspace:
    rows, pivots = linalg.rref([list(v) for v in vectors], field, dim)
    return Subspace(field, dim, tuple(tuple(r) for r in rows), pivots)


def span(
    vectors: Sequence[Poly], window: Window, field: Optional[CoeffRing] = None, exact: bool = True
) -> Subspace:
    if field is None:
        field = linalg.field_of(vectors[0].ring) if vectors else None
        if field is None:
            raise UsageError("an empty span needs an explicit field")
    if isinstance(field, LaurentTRing):
        raise RingMismatch("spans over Q[t,t^-1] are only supported for diagonal images")
    coords = [window.coordinates(v) for v in vectors]
    base = span_vectors(coords, field, window.dim)
    variables = vectors[0].variables if vectors else ()
    return Subspace(field, window.dim, base.rows, base.pivots, window, variables, exact)


def lattice_span(vectors: Sequence[Poly], window: Window, exact: bool = True) -> Lattice:
    for v in vectors:
        if not isinstance(v.ring, IntegerRing):
            raise RingMismatch(f"lattices need integer coefficients, not {v.ring.tag}")
    coords = [window.coordinates(v) for v in vectors]
    basis = linalg.hnf_basis(coords, window.dim)
    variables = vectors[0].variables if vectors else ()
    return Lattice(window.dim, tuple(basis), window, variables, exact)


def contains(S: Span, f: Union[Poly, Sequence[Any]]) -> bool:
    if isinstance(S, DiagonalModule):
        return S.contains_poly(f)
    if isinstance(f, Poly):
        if S.window is None:
            raise UsageError("subspace is not attached to a monomial window")
        vec = S.window.coordinates(f)
    else:
        vec = list(f)
    return S.contains_vector(vec)


def subspaces_equal(S: Subspace, T: Subspace) -> bool:
    return S.ambient_dim == T.ambient_dim and S.rows == T.rows


def _source_images(m: Operator, source: Window, target: Window) -> list[Poly]:
    images = []
    for exp in source.monomials():
        mono = Poly.monomial(m.ring, m.variables, exp, laurent=m.laurent)
        img = apply(m, mono)
        if not target.fits(img):
            raise TargetOverflow(f"image of {mono} escapes the target window {target.describe()}: {img}")
        images.append(img)
    return images


def _diagonal_scalars(m: Operator, source: Window, images: list[Poly]) -> tuple[tuple[ExpVec, Any], ...]:
    scalars = []
    for exp, img in zip(source.monomials(), images):
        if img.is_zero():
            continue
        if list(img.terms) != [exp]:
            raise RingMismatch("over Q[t,t^-1] only monomial-diagonal operators are supported")
        scalars.append((exp, img.terms[exp]))
    return tuple(scalars)


def map_image(m: Operator, source: Window, target: Window, field: Optional[CoeffRing] = None) -> Span:
    images = _source_images(m, source, target)
    exact = window_exact(m, source, target)
    if isinstance(m.ring, LaurentTRing):
        return DiagonalModule(m.ring, _diagonal_scalars(m, source, images), target, m.variables, exact)
    if isinstance(m.ring, IntegerRing) and field is None:
        result: Span = lattice_span(images, target, exact)
    else:
        result = span(images, target, field or linalg.field_of(m.ring), exact)
    logger.debug("image of %s over %s: rank %s, exact=%s", m.describe(), source.describe(), result.dim, exact)
    if not exact:
        logger.info("windowed image of %s is bounded evidence only", m.describe())
    return result


def map_image_of_ideal(
    m: Operator, generator: Poly, multipliers: Window, target: Window, field: Optional[CoeffRing] = None
) -> Subspace:
    """Windowed image m(g * K[x]) of the principal ideal generated by g."""
    images = []
    for exp in multipliers.monomials():
        img = apply(m, generator * Poly.monomial(m.ring, m.variables, exp, laurent=m.laurent))
        if not target.fits(img):
            raise TargetOverflow(f"image of ({generator})*x^{exp} escapes the target window {target.describe()}")
        images.append(img)
    return span(images, target, field or linalg.field_of(m.ring), exact=False)


def map_kernel(m: Operator, window: Window, power: int = 1, field: Optional[CoeffRing] = None) -> Subspace:
    """Exact Ker(m^power) intersected with the window."""
    field = field or linalg.field_of(m.ring)
    images = [
        iterate(m, Poly.monomial(m.ring, m.variables, exp, laurent=m.laurent), power) for exp in window.monomials()
    ]
    support = sorted({e for img in images for e in img.terms})
    if not support:
        whole = linalg.identity(window.dim, field)
        base = span_vectors(whole, field, window.dim)
    else:
        matrix = [[img.coeff(e) for img in images] for e in support]
        base = span_vectors(linalg.nullspace(matrix, field, window.dim), field, window.dim)
    return Subspace(field, window.dim, base.rows, base.pivots, window, m.variables, True)


def map_kernel_chain(m: Operator, window: Window, cap: Optional[int] = None) -> Subspace:
    """Union of Ker(m^k) on the window, stopped once the dimension stops growing."""
    cap = cap or window.dim + 1
    current = map_kernel(m, window, 1)
    for k in range(2, cap + 1):
        following = map_kernel(m, window, k)
        if following.dim == current.dim:
            break
        current = following
    return current


def radical_probe(S: Span, a: Poly, M: int) -> RadicalVerdict:
    failures = []
    power = a.one()
    for m in range(1, M + 1):
        power = power * a
        if not S.window.fits(power):
            raise OutOfWindow(f"{a}^{m} leaves the window {S.window.describe()}", power=m)
        if not contains(S, power):
            failures.append(m)
    verdict = RadicalVerdict(str(a), M, tuple(failures), S.exact)
    logger.debug("radical probe of %s: %s", a, verdict.describe())
    return verdict


def ms_falsify(S: Span, a: Poly, left: Poly, right: Poly, M: int, note: str = "") -> FalsificationCertificate:
    """Bounded certificate that S is not a Mathieu subspace, witnessed by a and (left, right)."""
    escaped, retained = [], []
    power = a.one()
    for m in range(1, M + 1):
        power = power * a
        translate = left * power * right
        for candidate in (power, translate):
            if not S.window.fits(candidate):
                raise OutOfWindow(f"{candidate} leaves the window {S.window.describe()}", power=m)
        if not contains(S, power):
            raise NotInRadical(m)
        (retained if contains(S, translate) else escaped).append(m)
    if retained:
        logger.warning("translates of %s stay inside the subspace at m = %s", a, retained)
    return FalsificationCertificate(str(a), str(left), str(right), M, tuple(escaped), S.exact, note, tuple(retained))


def verify_split(
    A: Sequence[Sequence[Any]],
    B: Sequence[Sequence[Any]],
    C: Sequence[Sequence[Any]],
    D: Sequence[Sequence[Any]],
    field: CoeffRing,
) -> bool:
    """Column space of A against null space of B, given AB = 0 and AD + BC = I."""
    n = len(A)
    mats = {"A": A, "B": B, "C": C, "D": D}
    for name, mat in mats.items():
        if len(mat) != n or any(len(row) != n for row in mat):
            raise PreconditionFailed(f"{name} is {n}x{n}")
    for (p, P), (q, Q) in itertools.combinations(mats.items(), 2):
        if linalg.matmul(P, Q, field) != linalg.matmul(Q, P, field):
            raise PreconditionFailed(f"{p}{q} = {q}{p}")
    zero = [[field.zero()] * n for _ in range(n)]
    if linalg.matmul(A, B, field) != zero:
        raise PreconditionFailed("AB = 0")
    AD, BC = linalg.matmul(A, D, field), linalg.matmul(B, C, field)
    total = [[field.add(x, y) for x, y in zip(r1, r2)] for r1, r2 in zip(AD, BC)]
    if total != linalg.identity(n, field):
        raise PreconditionFailed("AD + BC = I")
    image_rows, _ = linalg.column_space(A, field, n)
    kernel = span_vectors(linalg.nullspace(B, field, n), field, n)
    return [tuple(r) for r in image_rows] == list(kernel.rows)


def ideal_radical_diagnostic(ideal: Span, S: Span, candidates: Sequence[Poly], M: int) -> bool:
    """Spot check: the ideal sits inside S and both agree on which candidates look radical."""
    if isinstance(ideal, Subspace):
        for poly in ideal.basis_polys():
            if not contains(S, poly):
                return False
    for a in candidates:
        inside_ideal = radical_probe(ideal, a, M).status == "AllIn"
        inside_s = radical_probe(S, a, M).status == "AllIn"
        if inside_ideal and not inside_s:
            return False
    return True
