from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import sympy
from sympy import GF, QQ, ZZ
from sympy.polys.rings import ring as poly_ring

from mzlab.errors import RingMismatch, UsageError

T_SYMBOL = sympy.Symbol("t")
MAX_PRIME = 2**31


class CoeffRing:
    """Exact coefficient ring. Values are plain immutable Python objects."""

    tag = "?"
    characteristic = 0
    is_field = False

    def zero(self) -> Any:
        raise NotImplementedError

    def one(self) -> Any:
        raise NotImplementedError

    def from_int(self, n: int) -> Any:
        raise NotImplementedError

    def from_fraction(self, num: int, den: int) -> Any:
        raise NotImplementedError

    def add(self, a: Any, b: Any) -> Any:
        raise NotImplementedError

    def neg(self, a: Any) -> Any:
        raise NotImplementedError

    def mul(self, a: Any, b: Any) -> Any:
        raise NotImplementedError

    def sub(self, a: Any, b: Any) -> Any:
        return self.add(a, self.neg(b))

    def pow(self, a: Any, n: int) -> Any:
        result, base = self.one(), a
        while n:
            if n & 1:
                result = self.mul(result, base)
            n >>= 1
            if n:
                base = self.mul(base, base)
        return result

    def is_zero(self, a: Any) -> bool:
        return a == self.zero()

    def is_one(self, a: Any) -> bool:
        return a == self.one()

    def is_unit(self, a: Any) -> bool:
        raise NotImplementedError

    def inv(self, a: Any) -> Any:
        raise NotImplementedError

    def divides(self, a: Any, b: Any) -> bool:
        raise NotImplementedError

    def fmt(self, a: Any) -> str:
        raise NotImplementedError

    def is_negative(self, a: Any) -> bool:
        return False

    def is_compound(self, a: Any) -> bool:
        return False

    # sympy bridge used by the linear algebra layer
    def domain(self):
        raise NotImplementedError

    def to_domain(self, a: Any):
        raise NotImplementedError

    def from_domain(self, e) -> Any:
        raise NotImplementedError


@dataclass(frozen=True)
class RationalField(CoeffRing):
    tag = "q"
    is_field = True

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def from_fraction(self, num: int, den: int) -> Fraction:
        if den == 0:
            raise RingMismatch("division by zero")
        return Fraction(num, den)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def pow(self, a, n):
        return a**n

    def is_unit(self, a) -> bool:
        return a != 0

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in Q")
        return 1 / a

    def divides(self, a, b) -> bool:
        return a != 0 or b == 0

    def fmt(self, a) -> str:
        return str(a)

    def is_negative(self, a) -> bool:
        return a < 0

    def domain(self):
        return QQ

    def to_domain(self, a):
        return QQ(a.numerator, a.denominator)

    def from_domain(self, e) -> Fraction:
        return Fraction(int(e.numerator), int(e.denominator))


@dataclass(frozen=True)
class IntegerRing(CoeffRing):
    tag = "z"

    def zero(self) -> int:
        return 0

    def one(self) -> int:
        return 1

    def from_int(self, n: int) -> int:
        return n

    def from_fraction(self, num: int, den: int) -> int:
        if den == 0:
            raise RingMismatch("division by zero")
        if num % den:
            raise RingMismatch(f"{num}/{den} is not an integer")
        return num // den

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def pow(self, a, n):
        return a**n

    def is_unit(self, a) -> bool:
        return a in (1, -1)

    def inv(self, a):
        if a not in (1, -1):
            raise ZeroDivisionError(f"{a} is not a unit of Z")
        return a

    def divides(self, a, b) -> bool:
        if a == 0:
            return b == 0
        return b % a == 0

    def fmt(self, a) -> str:
        return str(a)

    def is_negative(self, a) -> bool:
        return a < 0

    def domain(self):
        # spans over Z are taken in the fraction field unless a lattice is asked for
        return QQ

    def to_domain(self, a):
        return QQ(a)

    def from_domain(self, e) -> int:
        if int(e.denominator) != 1:
            raise RingMismatch(f"{e} is not an integer")
        return int(e.numerator)

    def to_lattice(self, a):
        return ZZ(a)


@dataclass(frozen=True)
class PrimeField(CoeffRing):
    p: int = 2
    is_field = True

    def __post_init__(self) -> None:
        if not (1 < self.p < MAX_PRIME and sympy.isprime(self.p)):
            raise UsageError(f"fp:{self.p} is not a supported prime")

    @property
    def tag(self) -> str:
        return f"fp:{self.p}"

    @property
    def characteristic(self) -> int:
        return self.p

    def zero(self) -> int:
        return 0

    def one(self) -> int:
        return 1

    def from_int(self, n: int) -> int:
        return n % self.p

    def from_fraction(self, num: int, den: int) -> int:
        if den % self.p == 0:
            raise RingMismatch(f"{den} is not invertible mod {self.p}")
        return num * pow(den, -1, self.p) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def pow(self, a, n):
        return pow(a, n, self.p)

    def is_unit(self, a) -> bool:
        return a != 0

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse mod {self.p}")
        return pow(a, -1, self.p)

    def divides(self, a, b) -> bool:
        return a != 0 or b == 0

    def fmt(self, a) -> str:
        return str(a)

    def domain(self):
        return GF(self.p)

    def to_domain(self, a):
        return GF(self.p)(a)

    def from_domain(self, e) -> int:
        return int(e) % self.p


# Laurent polynomials in t: (k, p) meaning t^k * p with p in Q[t] and t not dividing p.
QQ_T, T_GEN = poly_ring("t", QQ)
LaurentValue = tuple


@dataclass(frozen=True)
class LaurentTRing(CoeffRing):
    tag = "qlaurent"
    symbol = "t"

    @staticmethod
    def _canon(k: int, p) -> LaurentValue:
        if not p:
            return (0, QQ_T.zero)
        low = min(e for (e,) in p.monoms())
        if low:
            p = QQ_T.from_dict({(e - low,): c for (e,), c in p.terms()})
        return (k + low, p)

    @staticmethod
    def _ground(c: Fraction):
        return QQ_T.ground_new(QQ(c.numerator, c.denominator))

    def zero(self) -> LaurentValue:
        return (0, QQ_T.zero)

    def one(self) -> LaurentValue:
        return (0, QQ_T.one)

    def from_int(self, n: int) -> LaurentValue:
        return self._canon(0, QQ_T.ground_new(QQ(n)))

    def from_fraction(self, num: int, den: int) -> LaurentValue:
        if den == 0:
            raise RingMismatch("division by zero")
        return self._canon(0, self._ground(Fraction(num, den)))

    def monomial(self, exponent: int, c: Fraction = Fraction(1)) -> LaurentValue:
        return self._canon(exponent, self._ground(Fraction(c)))

    def add(self, a, b):
        (k1, p1), (k2, p2) = a, b
        if not p1:
            return b
        if not p2:
            return a
        k = min(k1, k2)
        return self._canon(k, p1 * T_GEN ** (k1 - k) + p2 * T_GEN ** (k2 - k))

    def neg(self, a):
        k, p = a
        return (k, -p)

    def mul(self, a, b):
        (k1, p1), (k2, p2) = a, b
        return self._canon(k1 + k2, p1 * p2)

    def is_zero(self, a) -> bool:
        return not a[1]

    def is_unit(self, a) -> bool:
        return len(a[1]) == 1

    def inv(self, a):
        k, p = a
        if len(p) != 1:
            raise ZeroDivisionError("only nonzero monomials c*t^k are units")
        return (-k, QQ_T.ground_new(QQ.one / p.LC))

    def divides(self, a, b) -> bool:
        # units are monomials, so divisibility is decided in Q[t]
        if not a[1]:
            return not b[1]
        return not b[1] % a[1]

    def to_sympy(self, a) -> sympy.Expr:
        k, p = a
        return p.as_expr() * T_SYMBOL**k

    def fmt(self, a) -> str:
        k0, p = a
        if not p:
            return "0"
        parts: list[str] = []
        for (e,), c in sorted(p.terms(), reverse=True):
            k = k0 + e
            negative = c < 0
            mag = -c if negative else c
            if k == 0:
                body = str(mag)
            else:
                power = "t" if k == 1 else f"t^{k}"
                body = power if mag == 1 else f"{mag}*{power}"
            if not parts:
                if negative:
                    body = f"-{body}" if body[0].isdigit() else f"-1*{body}"
                parts.append(body)
            else:
                parts.append(f"- {body}" if negative else f"+ {body}")
        return " ".join(parts)

    def is_negative(self, a) -> bool:
        p = a[1]
        return len(p) == 1 and p.LC < 0

    def is_compound(self, a) -> bool:
        return len(a[1]) > 1

    def domain(self):
        return QQ.frac_field(T_SYMBOL)

    def to_domain(self, a):
        return self.domain().from_sympy(self.to_sympy(a))

    def from_domain(self, e):
        raise RingMismatch("values of Q(t) are not read back into Q[t,t^-1]")


@dataclass(frozen=True)
class Coeff:
    ring: CoeffRing
    value: Any

    def __str__(self) -> str:
        return self.ring.fmt(self.value)


def is_unit(c: Coeff) -> bool:
    return c.ring.is_unit(c.value)


def build_ring(spec: str) -> CoeffRing:
    spec = spec.strip().lower()
    if spec == "q":
        return RationalField()
    if spec == "z":
        return IntegerRing()
    if spec == "qlaurent":
        return LaurentTRing()
    if spec.startswith("fp:"):
        try:
            p = int(spec[3:])
        except ValueError:
            raise UsageError(f"bad prime in ring spec {spec!r}") from None
        return PrimeField(p)
    raise UsageError(f"unknown ring {spec!r}; expected q, z, fp:<p> or qlaurent")
