from __future__ import annotations

from typing import Any, Mapping, Optional, Sequence

from mzlab.errors import NegativeExponentWithoutLaurent, NonInvertibleImage, RingMismatch
from mzlab.rings import Coeff, CoeffRing

ExpVec = tuple[int, ...]


class Poly:
    """Sparse multivariate (Laurent) polynomial with canonical terms.

    Terms never store a zero coefficient, so two polynomials are equal exactly
    when their ring, variables, Laurent flag and term maps agree.
    """

    __slots__ = ("ring", "variables", "laurent", "terms")

    def __init__(
        self,
        ring: CoeffRing,
        variables: Sequence[str],
        terms: Optional[Mapping[ExpVec, Any]] = None,
        laurent: bool = False,
    ) -> None:
        self.ring = ring
        self.variables = tuple(variables)
        self.laurent = laurent
        n = len(self.variables)
        canonical: dict[ExpVec, Any] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != n:
                raise RingMismatch(f"exponent {exp} does not match variables {self.variables}")
            if not laurent and any(e < 0 for e in exp):
                raise NegativeExponentWithoutLaurent(f"negative exponent {exp} outside a Laurent ambient")
            if not ring.is_zero(c):
                canonical[exp] = c
        self.terms = dict(sorted(canonical.items(), reverse=True))

    # constructors

    def like(self, terms: Mapping[ExpVec, Any]) -> Poly:
        return Poly(self.ring, self.variables, terms, self.laurent)

    @classmethod
    def constant(cls, ring: CoeffRing, variables: Sequence[str], value: Any, laurent: bool = False) -> Poly:
        return cls(ring, variables, {(0,) * len(variables): value}, laurent)

    @classmethod
    def monomial(
        cls, ring: CoeffRing, variables: Sequence[str], exp: ExpVec, value: Any = None, laurent: bool = False
    ) -> Poly:
        return cls(ring, variables, {tuple(exp): ring.one() if value is None else value}, laurent)

    @classmethod
    def variable(cls, ring: CoeffRing, variables: Sequence[str], index: int, laurent: bool = False) -> Poly:
        exp = tuple(1 if i == index else 0 for i in range(len(variables)))
        return cls.monomial(ring, variables, exp, laurent=laurent)

    def zero(self) -> Poly:
        return self.like({})

    def one(self) -> Poly:
        return Poly.constant(self.ring, self.variables, self.ring.one(), self.laurent)

    # structure

    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> list[ExpVec]:
        return list(self.terms)

    def coeff(self, exp: ExpVec) -> Any:
        return self.terms.get(tuple(exp), self.ring.zero())

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def max_abs_degree(self) -> int:
        return max((abs(x) for e in self.terms for x in e), default=0)

    def _check(self, other: Poly) -> None:
        if (self.ring, self.variables, self.laurent) != (other.ring, other.variables, other.laurent):
            raise RingMismatch(
                f"cannot combine {self.ring.tag}{list(self.variables)} with {other.ring.tag}{list(other.variables)}"
            )

    # arithmetic

    def __add__(self, other: Poly) -> Poly:
        self._check(other)
        acc = dict(self.terms)
        for exp, c in other.terms.items():
            acc[exp] = self.ring.add(acc[exp], c) if exp in acc else c
        return self.like(acc)

    def __neg__(self) -> Poly:
        return self.like({e: self.ring.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other: Poly) -> Poly:
        self._check(other)
        ring = self.ring
        acc: dict[ExpVec, Any] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                prod = ring.mul(c1, c2)
                acc[exp] = ring.add(acc[exp], prod) if exp in acc else prod
        return self.like(acc)

    def __pow__(self, m: int) -> Poly:
        if m < 0:
            raise ValueError("negative powers are not supported; use a Laurent monomial inverse")
        result = self.one()
        base = self
        while m:
            if m & 1:
                result = result * base
            m >>= 1
            if m:
                base = base * base
        return result

    def scale(self, c: Any) -> Poly:
        return self.like({e: self.ring.mul(c, v) for e, v in self.terms.items()})

    def shift(self, exp: ExpVec) -> Poly:
        return self.like({tuple(a + b for a, b in zip(e, exp)): c for e, c in self.terms.items()})

    def derivative(self, index: int) -> Poly:
        ring = self.ring
        acc: dict[ExpVec, Any] = {}
        for exp, c in self.terms.items():
            k = exp[index]
            if k == 0:
                continue
            lowered = exp[:index] + (k - 1,) + exp[index + 1 :]
            acc[lowered] = ring.mul(ring.from_int(k), c)
        return self.like(acc)

    def unit_monomial_inverse(self) -> Optional[Poly]:
        if len(self.terms) != 1:
            return None
        ((exp, c),) = self.terms.items()
        if not self.ring.is_unit(c):
            return None
        if any(e != 0 for e in exp) and not self.laurent:
            return None
        return self.like({tuple(-e for e in exp): self.ring.inv(c)})

    # comparison and printing

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return (self.ring, self.variables, self.laurent, self.terms) == (
            other.ring,
            other.variables,
            other.laurent,
            other.terms,
        )

    def __hash__(self) -> int:
        return hash((self.ring, self.variables, self.laurent, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"Poly({self}, ring={self.ring.tag}, vars={','.join(self.variables)})"

    def monomial_str(self, exp: ExpVec) -> str:
        factors = []
        for name, k in zip(self.variables, exp):
            if k == 0:
                continue
            factors.append(name if k == 1 else f"{name}^{k}")
        return "*".join(factors)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        ring = self.ring
        parts: list[str] = []
        for exp, c in self.terms.items():
            negative = ring.is_negative(c)
            mag = ring.neg(c) if negative else c
            mono = self.monomial_str(exp)
            coef = ring.fmt(mag)
            if ring.is_compound(mag):
                coef = f"({coef})"
            if not mono:
                body = coef
            elif ring.is_one(mag):
                body = mono
            else:
                body = f"{coef}*{mono}"
            if not parts:
                if negative:
                    body = f"-{body}" if body[0].isdigit() else f"-1*{body}"
                parts.append(body)
            else:
                parts.append(f"- {body}" if negative else f"+ {body}")
        return " ".join(parts)


def arith(f: Poly, g: Poly, op: str) -> Poly:
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown operation {op!r}")


def power(f: Poly, m: int) -> Poly:
    return f**m


def coeff_of(f: Poly, exp: ExpVec) -> Coeff:
    if len(exp) != len(f.variables):
        raise RingMismatch(f"exponent {exp} does not match variables {f.variables}")
    return Coeff(f.ring, f.coeff(exp))


def substitute(f: Poly, images: Sequence[Poly]) -> Poly:
    """Evaluate the ring homomorphism sending variable i to images[i] at f."""
    if len(images) != len(f.variables):
        raise RingMismatch(f"need {len(f.variables)} images, got {len(images)}")
    target = images[0] if images else f
    for img in images[1:]:
        target._check(img)
    if f.ring != target.ring:
        raise RingMismatch(f"image ring {target.ring.tag} differs from {f.ring.tag}")
    powers: list[dict[int, Poly]] = [{} for _ in images]

    def image_power(i: int, k: int) -> Poly:
        cache = powers[i]
        if k not in cache:
            if k >= 0:
                cache[k] = images[i] ** k
            else:
                inverse = images[i].unit_monomial_inverse()
                if inverse is None:
                    raise NonInvertibleImage(
                        f"{f.variables[i]} maps to {images[i]}, which is not a unit monomial"
                    )
                cache[k] = inverse ** (-k)
        return cache[k]

    result = target.zero()
    for exp, c in f.terms.items():
        term = Poly.constant(target.ring, target.variables, c, target.laurent)
        for i, k in enumerate(exp):
            if k:
                term = term * image_power(i, k)
        result = result + term
    return result
