"""Finite-dimensional algebras given by structure constants.

Elements are tuples of field values in basis coordinates. Operator matrices
are stored row-major with column ``j`` holding the image of ``e_j``.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Iterator, Optional, Sequence

from mzlab import linalg
from mzlab.config import settings
from mzlab.errors import (
    BudgetExceeded,
    CharacteristicTooSmall,
    DecompositionMismatch,
    NonSplit,
    NotCommutative,
    ParseError,
    PreconditionFailed,
    RingMismatch,
    UnsupportedOverQ,
    UsageError,
)
from mzlab.poly import Poly
from mzlab.rings import CoeffRing, IntegerRing, PrimeField, RationalField, build_ring
from mzlab.services.subspace import Subspace, span_vectors, subspaces_equal

logger = logging.getLogger(__name__)

Element = tuple[Any, ...]
SIDES = ("left", "right", "two-sided")


@dataclass(frozen=True)
class StructAlgebra:
    field: CoeffRing
    dim: int
    table: tuple[tuple[Element, ...], ...]
    unit: Optional[Element] = None
    name: str = ""

    def __post_init__(self) -> None:
        if not self.field.is_field:
            raise RingMismatch(f"structure constants need a field, not {self.field.tag}")
        d = self.dim
        if len(self.table) != d or any(len(row) != d or any(len(v) != d for v in row) for row in self.table):
            raise UsageError(f"structure constants must form a {d}x{d}x{d} table")
        basis = [self.basis(i) for i in range(d)]
        for i, j, k in itertools.product(range(d), repeat=3):
            if self.mul(self.table[i][j], basis[k]) != self.mul(basis[i], self.table[j][k]):
                raise PreconditionFailed(f"(e{i} e{j}) e{k} = e{i} (e{j} e{k})")
        if self.unit is not None:
            if len(self.unit) != d:
                raise UsageError(f"unit vector needs {d} coordinates")
            for i, b in enumerate(basis):
                if self.mul(self.unit, b) != b or self.mul(b, self.unit) != b:
                    raise PreconditionFailed(f"1 * e{i} = e{i} * 1 = e{i}")

    # element arithmetic

    def zero(self) -> Element:
        return (self.field.zero(),) * self.dim

    def basis(self, i: int) -> Element:
        F = self.field
        return tuple(F.one() if k == i else F.zero() for k in range(self.dim))

    def coerce(self, values: Sequence[Any]) -> Element:
        if len(values) != self.dim:
            raise UsageError(f"expected {self.dim} coordinates, got {len(values)}")
        return tuple(_as_field(values, self.field))

    def add(self, u: Element, v: Element) -> Element:
        return tuple(self.field.add(a, b) for a, b in zip(u, v))

    def sub(self, u: Element, v: Element) -> Element:
        return tuple(self.field.sub(a, b) for a, b in zip(u, v))

    def scale(self, c: Any, u: Element) -> Element:
        return tuple(self.field.mul(c, a) for a in u)

    def mul(self, u: Element, v: Element) -> Element:
        F = self.field
        acc = [F.zero()] * self.dim
        for i, a in enumerate(u):
            if F.is_zero(a):
                continue
            for j, b in enumerate(v):
                if F.is_zero(b):
                    continue
                c = F.mul(a, b)
                for k, s in enumerate(self.table[i][j]):
                    if not F.is_zero(s):
                        acc[k] = F.add(acc[k], F.mul(c, s))
        return tuple(acc)

    def power(self, u: Element, m: int) -> Element:
        if m < 1:
            raise UsageError("algebra powers start at 1")
        result = u
        for _ in range(m - 1):
            result = self.mul(result, u)
        return result

    def is_zero(self, u: Element) -> bool:
        return all(self.field.is_zero(a) for a in u)

    def left_mult_matrix(self, u: Element) -> list[list[Any]]:
        columns = [self.mul(u, self.basis(j)) for j in range(self.dim)]
        return linalg.transpose(columns, self.dim)

    def is_commutative(self) -> bool:
        return all(self.table[i][j] == self.table[j][i] for i, j in itertools.combinations(range(self.dim), 2))

    @property
    def is_split(self) -> bool:
        """Componentwise multiplication on the basis, i.e. K^n."""
        for i, j in itertools.product(range(self.dim), repeat=2):
            expected = self.basis(i) if i == j else self.zero()
            if self.table[i][j] != expected:
                return False
        return True

    @property
    def order(self) -> Optional[int]:
        if isinstance(self.field, PrimeField):
            return self.field.p**self.dim
        return None

    def elements(self) -> Iterator[Element]:
        order = self.order
        if order is None:
            raise UnsupportedOverQ("only algebras over a finite field can be enumerated")
        if order > settings.enumeration_budget:
            raise BudgetExceeded(f"{order} elements exceed the enumeration budget {settings.enumeration_budget}")
        return itertools.product(range(self.field.p), repeat=self.dim)

    def describe(self) -> str:
        return self.name or f"{self.dim}-dimensional algebra over {self.field.tag}"


def _from_products(field: CoeffRing, dim: int, product, unit: Optional[Element], name: str) -> StructAlgebra:
    table = tuple(tuple(tuple(product(i, j)) for j in range(dim)) for i in range(dim))
    return StructAlgebra(field, dim, table, unit, name)


def polynomial_quotient(field: CoeffRing, modulus: Sequence[Any]) -> StructAlgebra:
    """K[x]/(g) on the basis 1, x, ..., x^(n-1); ``modulus`` lists g from the constant term up."""
    g = _as_field(modulus, field)
    n = len(g) - 1
    if n < 1 or not field.is_one(g[-1]):
        raise UsageError("the modulus must be monic of degree at least 1")
    # reduced coordinates of x^k for k < 2n - 1
    powers = [tuple(field.one() if i == k else field.zero() for i in range(n)) for k in range(n)]
    for _ in range(n, 2 * n - 1):
        prev = powers[-1]
        top = prev[-1]
        shifted = (field.zero(),) + prev[:-1]
        powers.append(tuple(field.sub(a, field.mul(top, c)) for a, c in zip(shifted, g[:-1])))
    unit = powers[0]
    label = Poly(field, ("x",), {(k,): c for k, c in enumerate(g)})
    return _from_products(field, n, lambda i, j: powers[i + j], unit, f"{field.tag}[x]/({label})")


def truncated_polynomial(field: CoeffRing, n: int) -> StructAlgebra:
    """K[x]/(x^n)."""
    return polynomial_quotient(field, [0] * n + [1])


def split_product(field: CoeffRing, n: int) -> StructAlgebra:
    def product(i: int, j: int) -> Element:
        return tuple(field.one() if i == j == k else field.zero() for k in range(n))

    return _from_products(field, n, product, (field.one(),) * n, f"{field.tag}^{n}")


def direct_product(A: StructAlgebra, B: StructAlgebra) -> StructAlgebra:
    if A.field != B.field:
        raise RingMismatch(f"cannot multiply algebras over {A.field.tag} and {B.field.tag}")
    F, d = A.field, A.dim + B.dim

    def product(i: int, j: int) -> Element:
        if i < A.dim and j < A.dim:
            return A.table[i][j] + (F.zero(),) * B.dim
        if i >= A.dim and j >= A.dim:
            return (F.zero(),) * A.dim + B.table[i - A.dim][j - A.dim]
        return (F.zero(),) * d

    unit = A.unit + B.unit if A.unit is not None and B.unit is not None else None
    return _from_products(F, d, product, unit, f"{A.describe()} x {B.describe()}")


def _parse_scalar(text: str, field: CoeffRing, line_no: int) -> Any:
    num, _, den = text.partition("/")
    try:
        return field.from_fraction(int(num), int(den) if den else 1)
    except (ValueError, RingMismatch) as exc:
        raise ParseError(f"bad coefficient {text!r} on line {line_no}: {exc}") from None


def from_text(text: str) -> StructAlgebra:
    """Read ``dim d field F`` then ``i j k coeff`` lines (0-based) and an optional ``unit`` line."""
    lines = [(n, raw.split("#", 1)[0].split()) for n, raw in enumerate(text.splitlines(), start=1)]
    lines = [(n, words) for n, words in lines if words]
    if not lines or len(lines[0][1]) != 4 or lines[0][1][0] != "dim" or lines[0][1][2] != "field":
        raise ParseError("structure constants start with 'dim <d> field <q|z|fp:p>'", 0)
    header_no, header = lines[0]
    try:
        dim = int(header[1])
    except ValueError:
        raise ParseError(f"bad dimension {header[1]!r} on line {header_no}") from None
    ring = build_ring(header[3])
    if isinstance(ring, IntegerRing):
        ring = RationalField()
    elif not ring.is_field:
        raise ParseError(f"structure constants over {ring.tag} are not supported")
    entries = [[[ring.zero()] * dim for _ in range(dim)] for _ in range(dim)]
    unit: Optional[Element] = None
    for line_no, words in lines[1:]:
        if words[0] == "unit":
            if len(words) != dim + 1:
                raise ParseError(f"unit needs {dim} coordinates on line {line_no}")
            unit = tuple(_parse_scalar(w, ring, line_no) for w in words[1:])
            continue
        if len(words) != 4:
            raise ParseError(f"expected 'i j k coeff' on line {line_no}")
        try:
            i, j, k = (int(w) for w in words[:3])
        except ValueError:
            raise ParseError(f"bad index on line {line_no}") from None
        if not all(0 <= x < dim for x in (i, j, k)):
            raise ParseError(f"index out of range on line {line_no}")
        entries[i][j][k] = _parse_scalar(words[3], ring, line_no)
    table = tuple(tuple(tuple(v) for v in row) for row in entries)
    return StructAlgebra(ring, dim, table, unit)


class OpKind(str, Enum):
    LINEAR = "linear"
    ENDOMORPHISM = "endomorphism"
    DERIVATION = "derivation"


@dataclass(frozen=True)
class LinOp:
    algebra: StructAlgebra
    matrix: tuple[tuple[Any, ...], ...]
    kind: OpKind = OpKind.LINEAR

    def __post_init__(self) -> None:
        A = self.algebra
        if len(self.matrix) != A.dim or any(len(row) != A.dim for row in self.matrix):
            raise UsageError(f"operator matrix must be {A.dim}x{A.dim}")
        if self.kind is OpKind.LINEAR:
            return
        images = self.images()
        for i, j in itertools.product(range(A.dim), repeat=2):
            product = A.table[i][j]
            if self.kind is OpKind.ENDOMORPHISM:
                if self.apply(product) != A.mul(images[i], images[j]):
                    raise PreconditionFailed(f"phi(e{i} e{j}) = phi(e{i}) phi(e{j})")
            else:
                expected = A.add(A.mul(images[i], A.basis(j)), A.mul(A.basis(i), images[j]))
                if self.apply(product) != expected:
                    raise PreconditionFailed(f"D(e{i} e{j}) = D(e{i}) e{j} + e{i} D(e{j})")

    @classmethod
    def from_images(cls, A: StructAlgebra, images: Sequence[Sequence[Any]], kind: OpKind = OpKind.LINEAR) -> LinOp:
        columns = [A.coerce(v) for v in images]
        return cls(A, tuple(tuple(row) for row in linalg.transpose(columns, A.dim)), kind)

    @classmethod
    def identity(cls, A: StructAlgebra) -> LinOp:
        return cls(A, tuple(tuple(row) for row in linalg.identity(A.dim, A.field)), OpKind.ENDOMORPHISM)

    @property
    def field(self) -> CoeffRing:
        return self.algebra.field

    def rows(self) -> list[list[Any]]:
        return [list(row) for row in self.matrix]

    def apply(self, v: Element) -> Element:
        F = self.field
        out = []
        for row in self.matrix:
            acc = F.zero()
            for a, b in zip(row, v):
                acc = F.add(acc, F.mul(a, b))
            out.append(acc)
        return tuple(out)

    def images(self) -> list[Element]:
        return [tuple(self.matrix[i][j] for i in range(self.algebra.dim)) for j in range(self.algebra.dim)]

    def power(self, k: int) -> LinOp:
        return LinOp(self.algebra, tuple(tuple(r) for r in linalg.matpow(self.rows(), k, self.field)))

    def identity_minus(self) -> LinOp:
        """I - self, the E-derivation of an endomorphism."""
        F = self.field
        rows = [
            tuple(F.sub(F.one() if i == j else F.zero(), a) for j, a in enumerate(row))
            for i, row in enumerate(self.matrix)
        ]
        return LinOp(self.algebra, tuple(rows))

    def image(self) -> Subspace:
        rows, pivots = linalg.column_space(self.rows(), self.field, self.algebra.dim)
        return Subspace(self.field, self.algebra.dim, tuple(tuple(r) for r in rows), pivots)

    def kernel(self) -> Subspace:
        return span_vectors(linalg.nullspace(self.rows(), self.field, self.algebra.dim), self.field, self.algebra.dim)


@dataclass(frozen=True)
class Decomposition:
    eigenvalues: tuple[Any, ...]
    blocks: tuple[Subspace, ...]
    kind: str = "multiplicative"

    def block_for(self, value: Any) -> Optional[Subspace]:
        for lam, block in zip(self.eigenvalues, self.blocks):
            if lam == value:
                return block
        return None


def _sum_of(field: CoeffRing, dim: int, spaces: Sequence[Subspace]) -> Subspace:
    return span_vectors([row for S in spaces for row in S.rows], field, dim)


# idempotents and the Mathieu-subspace decision


def idempotents(A: StructAlgebra) -> list[Element]:
    F = A.field
    if A.is_split:
        return [tuple(F.one() if b else F.zero() for b in bits) for bits in itertools.product((0, 1), repeat=A.dim)]
    if not isinstance(F, PrimeField):
        raise UnsupportedOverQ("idempotents over Q are only enumerated for split products")
    found = [a for a in A.elements() if A.mul(a, a) == a]
    logger.debug("%s has %s idempotents", A.describe(), len(found))
    return found


def _check_side(side: str) -> None:
    if side not in SIDES:
        raise UsageError(f"side must be one of {', '.join(SIDES)}, not {side!r}")


def principal_ideal(A: StructAlgebra, e: Element, side: str = "two-sided") -> Subspace:
    _check_side(side)
    basis = [A.basis(i) for i in range(A.dim)]
    current = span_vectors([e], A.field, A.dim)
    while True:
        vectors = list(current.rows)
        for u in current.rows:
            if side in ("left", "two-sided"):
                vectors.extend(A.mul(b, u) for b in basis)
            if side in ("right", "two-sided"):
                vectors.extend(A.mul(u, c) for c in basis)
        grown = span_vectors(vectors, A.field, A.dim)
        if grown.dim == current.dim:
            return current
        current = grown


def ms_test_idempotent(A: StructAlgebra, V: Subspace, side: str = "two-sided") -> bool:
    for e in idempotents(A):
        if not V.contains_vector(e):
            continue
        ideal = principal_ideal(A, e, side)
        if not all(V.contains_vector(row) for row in ideal.rows):
            logger.debug("idempotent %s lies in V but its %s ideal does not", e, side)
            return False
    return True


def power_cycle(A: StructAlgebra, a: Element) -> tuple[int, int]:
    """(tail length, period) of the sequence a, a^2, a^3, ..."""
    seen: dict[Element, int] = {}
    current = a
    index = 0
    while current not in seen:
        if index >= settings.enumeration_budget:
            raise BudgetExceeded(f"powers of {a} did not repeat within {settings.enumeration_budget} steps")
        seen[current] = index
        current = A.mul(current, a)
        index += 1
    return seen[current], index - seen[current]


def _orbit(A: StructAlgebra, a: Element) -> tuple[list[Element], list[Element]]:
    """All distinct powers of a, and the ones on the eventual cycle."""
    tail, period = power_cycle(A, a)
    powers = [a]
    for _ in range(tail + period - 1):
        powers.append(A.mul(powers[-1], a))
    return powers, powers[tail:]


def ms_decide_finite(A: StructAlgebra, V: Subspace, side: str = "two-sided") -> bool:
    _check_side(side)
    if not isinstance(A.field, PrimeField):
        raise UnsupportedOverQ("the exhaustive decision runs over a finite field")
    basis = [A.basis(i) for i in range(A.dim)]
    for a in A.elements():
        powers, cycle = _orbit(A, a)
        if not all(V.contains_vector(p) for p in powers):
            continue
        for t in cycle:
            if side == "left":
                translates = (A.mul(b, t) for b in basis)
            elif side == "right":
                translates = (A.mul(t, c) for c in basis)
            else:
                translates = (A.mul(A.mul(b, t), c) for b in basis for c in basis)
            if not all(V.contains_vector(w) for w in translates):
                logger.debug("powers of %s stay in V but a %s translate leaves it", a, side)
                return False
    return True


def subspaces(A: StructAlgebra) -> list[Subspace]:
    """Every subspace of a finite algebra, in discovery order."""
    elements = list(A.elements())
    zero = span_vectors([], A.field, A.dim)
    seen = {zero.rows: zero}
    frontier = [zero]
    while frontier:
        following = []
        for S in frontier:
            for v in elements:
                if S.contains_vector(v):
                    continue
                T = span_vectors(list(S.rows) + [v], A.field, A.dim)
                if T.rows not in seen:
                    seen[T.rows] = T
                    following.append(T)
        frontier = following
    return list(seen.values())


def is_local(A: StructAlgebra) -> bool:
    """Commutative with a unit and no idempotents besides 0 and 1."""
    if A.unit is None or not A.is_commutative():
        return False
    return sorted(idempotents(A)) == sorted([A.zero(), A.unit])


def ms_local_criterion(A: StructAlgebra, V: Subspace) -> bool:
    """Over a local algebra a proper subspace is a Mathieu subspace exactly when it misses 1."""
    if not is_local(A):
        raise PreconditionFailed(f"{A.describe()} is commutative and local")
    if V.dim == A.dim:
        return True
    return not V.contains_vector(A.unit)


def radical_finite(A: StructAlgebra, V: Subspace) -> list[Element]:
    """Elements whose eventual power cycle lies in V."""
    return [a for a in A.elements() if all(V.contains_vector(t) for t in _orbit(A, a)[1])]


def radical_member_split(A: StructAlgebra, V: Subspace, a: Element) -> bool:
    """Radical membership in K^n: every nonzero value class of ``a`` must have its indicator in V."""
    if not A.is_split:
        raise PreconditionFailed(f"{A.describe()} is a split product K^n")
    F = A.field
    for value in sorted({v for v in a if not F.is_zero(v)}):
        indicator = tuple(F.one() if v == value else F.zero() for v in a)
        if not V.contains_vector(indicator):
            return False
    return True


# operators and decompositions


def gen_eigendecomp(psi: LinOp, eigenvalues: Optional[Sequence[Any]] = None, kind: str = "multiplicative") -> Decomposition:
    F, d = psi.field, psi.algebra.dim
    if eigenvalues is None:
        roots, degrees = linalg.factor_charpoly(linalg.charpoly(psi.rows(), F), F)
        if any(deg != 1 for deg in degrees):
            raise NonSplit(degrees)
        eigenvalues = roots
    blocks = []
    for lam in eigenvalues:
        shifted = [
            [F.sub(lam if i == j else F.zero(), a) for j, a in enumerate(row)] for i, row in enumerate(psi.rows())
        ]
        block = span_vectors(linalg.nullspace(shifted, F, d), F, d)
        for k in range(2, d + 1):
            following = span_vectors(linalg.nullspace(linalg.matpow(shifted, k, F), F, d), F, d)
            if following.dim == block.dim:
                break
            block = following
        blocks.append(block)
    total = _sum_of(F, d, blocks)
    if sum(b.dim for b in blocks) != d or total.dim != d:
        raise DecompositionMismatch(f"blocks for eigenvalues {list(eigenvalues)} do not sum to the whole space")
    return Decomposition(tuple(eigenvalues), tuple(blocks), kind)


def grading_check(A: StructAlgebra, dec: Decomposition) -> bool:
    F = A.field
    for (lam, X), (mu, Y) in itertools.product(zip(dec.eigenvalues, dec.blocks), repeat=2):
        index = F.add(lam, mu) if dec.kind == "additive" else F.mul(lam, mu)
        target = dec.block_for(index)
        for u, v in itertools.product(X.rows, Y.rows):
            w = A.mul(u, v)
            if target is None:
                if not A.is_zero(w):
                    return False
            elif not target.contains_vector(w):
                return False
    return True


def grading_complement(dec: Decomposition, distinguished: Any) -> Subspace:
    others = [b for lam, b in zip(dec.eigenvalues, dec.blocks) if lam != distinguished]
    field = dec.blocks[0].field
    return _sum_of(field, dec.blocks[0].ambient_dim, others)


def image_decomp(op: LinOp, dec: Decomposition, distinguished: Any) -> Subspace:
    """op(A_distinguished) plus every other block, checked against the direct image."""
    F, d = op.field, op.algebra.dim
    block = dec.block_for(distinguished)
    moved = [op.apply(row) for row in block.rows] if block is not None else []
    assembled = span_vectors(moved + list(grading_complement(dec, distinguished).rows), F, d)
    if not subspaces_equal(assembled, op.image()):
        raise DecompositionMismatch(f"assembled image has dimension {assembled.dim}, direct image {op.image().dim}")
    return assembled


def kernel_chain(phi: LinOp) -> Subspace:
    current = phi.kernel()
    for k in range(2, phi.algebra.dim + 2):
        following = phi.power(k).kernel()
        if following.dim == current.dim:
            break
        current = following
    return current


def linop_period(phi: LinOp, bound: int) -> Optional[tuple[int, int]]:
    """Least (i, j), 1 <= i < j <= bound, with phi^i = phi^j."""
    seen: dict[tuple[tuple[Any, ...], ...], int] = {}
    current = phi.matrix
    for k in range(1, bound + 1):
        if current in seen:
            return seen[current], k
        seen[current] = k
        current = tuple(tuple(r) for r in linalg.matmul(phi.rows(), [list(r) for r in current], phi.field))
    return None


def kernel_chain_in_image(phi: LinOp, bound: Optional[int] = None) -> bool:
    period = linop_period(phi, bound or settings.probe_cap)
    if period is None:
        raise PreconditionFailed("phi^i = phi^j for some i < j")
    image = phi.identity_minus().image()
    return all(image.contains_vector(row) for row in kernel_chain(phi).rows)


def frobenius_op(A: StructAlgebra) -> LinOp:
    """a -> a^p, linear on a commutative algebra over F_p."""
    if not isinstance(A.field, PrimeField):
        raise RingMismatch("the Frobenius map needs a prime field")
    if not A.is_commutative():
        raise NotCommutative(f"{A.describe()} is not commutative")
    p = A.field.p
    return LinOp.from_images(A, [A.power(A.basis(j), p) for j in range(A.dim)], OpKind.ENDOMORPHISM)


def trace_form_radical(A: StructAlgebra) -> Subspace:
    """Radical of (a, b) -> Tr(L_ab), the nilradical in characteristic 0."""
    F, d = A.field, A.dim
    traces = []
    for k in range(d):
        L = A.left_mult_matrix(A.basis(k))
        acc = F.zero()
        for i in range(d):
            acc = F.add(acc, L[i][i])
        traces.append(acc)
    gram = []
    for i in range(d):
        row = []
        for j in range(d):
            acc = F.zero()
            for c, t in zip(A.table[i][j], traces):
                acc = F.add(acc, F.mul(c, t))
            row.append(acc)
        gram.append(row)
    return span_vectors(linalg.nullspace(gram, F, d), F, d)


def nilradical_commutative(A: StructAlgebra) -> Subspace:
    if not A.is_commutative():
        raise NotCommutative(f"{A.describe()} is not commutative")
    if isinstance(A.field, PrimeField):
        return kernel_chain(frobenius_op(A))
    return trace_form_radical(A)


def idempotent_anomalies(A: StructAlgebra, delta: LinOp) -> list[Element]:
    """Nonzero idempotents in Ker(delta) and Im(delta); none are expected."""
    kernel, image = delta.kernel(), delta.image()
    found = [
        e for e in idempotents(A) if not A.is_zero(e) and kernel.contains_vector(e) and image.contains_vector(e)
    ]
    if found:
        logger.warning("nonzero idempotents in Ker and Im of the operator on %s: %s", A.describe(), found)
    return found


# power sums


def _as_field(values: Sequence[Any], field: CoeffRing) -> list[Any]:
    out = []
    for v in values:
        if isinstance(v, Fraction):
            out.append(field.from_fraction(v.numerator, v.denominator))
        else:
            out.append(field.from_int(v))
    return out


def power_sums(values: Sequence[Any], n: int, field: Optional[CoeffRing] = None) -> list[Any]:
    field = field or RationalField()
    vals = _as_field(values, field)
    sums = []
    for m in range(1, n + 1):
        acc = field.zero()
        for b in vals:
            acc = field.add(acc, field.pow(b, m))
        sums.append(acc)
    return sums


def elementary_symmetric(values: Sequence[Any], field: Optional[CoeffRing] = None) -> list[Any]:
    """e_1..e_n read off prod (1 + b t)."""
    field = field or RationalField()
    coeffs = [field.one()]
    for b in _as_field(values, field):
        shifted = coeffs + [field.zero()]
        for k in range(len(coeffs), 0, -1):
            shifted[k] = field.add(shifted[k], field.mul(b, coeffs[k - 1]))
        coeffs = shifted
    return coeffs[1:]


def newton_to_elementary(sums: Sequence[Any], field: Optional[CoeffRing] = None) -> list[Any]:
    field = field or RationalField()
    n = len(sums)
    if field.characteristic and field.characteristic <= n:
        raise CharacteristicTooSmall(f"Newton's identities divide by 1..{n} in characteristic {field.characteristic}")
    p = _as_field(sums, field)
    e = [field.one()]
    for k in range(1, n + 1):
        acc = field.zero()
        for i in range(1, k + 1):
            term = field.mul(e[k - i], p[i - 1])
            acc = field.add(acc, term) if i % 2 else field.sub(acc, term)
        e.append(field.mul(acc, field.inv(field.from_int(k))))
    return e[1:]


def power_sum_system_check(
    values: Sequence[Any], coeffs: Sequence[Any], M: int, field: Optional[CoeffRing] = None
) -> bool:
    """Whether sum_k c_k b_k^m vanishes for m = 1..M."""
    field = field or RationalField()
    if len(values) != len(coeffs):
        raise UsageError("values and coefficients must align")
    vals, cs = _as_field(values, field), _as_field(coeffs, field)
    for m in range(1, M + 1):
        acc = field.zero()
        for b, c in zip(vals, cs):
            acc = field.add(acc, field.mul(c, field.pow(b, m)))
        if not field.is_zero(acc):
            return False
    return True


@dataclass(frozen=True)
class VandermondeReport:
    grouped: tuple[tuple[Any, Any], ...]
    nullity: int
    holds: bool

    @property
    def coefficients_vanish(self) -> bool:
        return all(c == 0 for _, c in self.grouped)


def grouped_vandermonde_check(
    values: Sequence[Any], coeffs: Sequence[Any], M: int, field: Optional[CoeffRing] = None
) -> VandermondeReport:
    """Sum coefficients over equal values and measure the nullity of [u^m] for m = 1..M."""
    field = field or RationalField()
    holds = power_sum_system_check(values, coeffs, M, field)
    grouped: dict[Any, Any] = {}
    for b, c in zip(_as_field(values, field), _as_field(coeffs, field)):
        grouped[b] = field.add(grouped.get(b, field.zero()), c)
    distinct = sorted(grouped)
    rows = [[field.pow(u, m) for u in distinct] for m in range(1, M + 1)]
    nullity = len(distinct) - linalg.rank(rows, field, len(distinct))
    return VandermondeReport(tuple((u, grouped[u]) for u in distinct), nullity, holds)
