"""Exact arithmetic in a quadratic extension E = F(sqrt d) of F = (Q, v_p).

The base field is the rationals carrying the p-adic valuation for a fixed odd
prime p.  Everything here is exact; there are no tolerances.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rational = Union[int, Fraction]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def valuation(x: Rational, p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("valuation of zero is undefined")
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def split_unit(x: Rational, p: int) -> tuple[int, Fraction]:
    """Write x = p**v * u with u a p-adic unit; return (v, u)."""
    x = Fraction(x)
    v = valuation(x, p)
    return v, x / Fraction(p) ** v


def legendre_unit(u: Rational, p: int) -> int:
    """Legendre symbol of a p-adic unit rational u = num/den."""
    u = Fraction(u)
    r = (u.numerator * u.denominator) % p
    if r == 0:
        raise ValueError(f"{u} is not a {p}-adic unit")
    return 1 if pow(r, (p - 1) // 2, p) == 1 else -1


def is_padic_square(x: Rational, p: int) -> bool:
    """True iff the nonzero rational x is a square in Q_p (p odd)."""
    v, u = split_unit(x, p)
    return v % 2 == 0 and legendre_unit(u, p) == 1


def hilbert_symbol(a: Rational, b: Rational, p: int) -> int:
    """The p-adic Hilbert symbol (a, b)_p for odd p.

    Returns +1 iff z^2 = a x^2 + b y^2 has a nonzero solution over Q_p.
    Uses the decomposition a = p^alpha u, b = p^beta v with units u, v:

        (a, b)_p = (-1)^(alpha beta (p-1)/2) (u/p)^beta (v/p)^alpha
    """
    if p == 2:
        raise ValueError("p = 2 is not supported")
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol needs nonzero arguments")
    alpha, u = split_unit(a, p)
    beta, v = split_unit(b, p)
    sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    if beta % 2:
        sign *= legendre_unit(u, p)
    if alpha % 2:
        sign *= legendre_unit(v, p)
    return sign


def _parse_rational(value) -> Fraction:
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


def format_rational(x: Rational) -> str:
    """Exact string form 'num/den' (or 'num' for integers)."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class FieldConfig:
    """Residual characteristic p and the radicand d of E = F(sqrt d)."""

    p: int
    d: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "d", _parse_rational(self.d))
        if not _is_prime(self.p) or self.p == 2:
            raise ValueError(f"p must be an odd prime, got {self.p}")
        if self.d == 0:
            raise ValueError("d must be nonzero")
        # a square in Q_p would make E split, leaving a single norm class
        if is_padic_square(self.d, self.p):
            raise ValueError(f"d = {self.d} is a square in Q_{self.p}")

    @property
    def ramified(self) -> bool:
        return valuation(self.d, self.p) % 2 == 1

    @property
    def kind(self) -> str:
        return "ramified" if self.ramified else "unramified"

    def to_json(self) -> dict:
        return {"p": self.p, "d": format_rational(self.d)}

    @classmethod
    def from_json(cls, data: dict) -> FieldConfig:
        return cls(int(data["p"]), _parse_rational(data["d"]))

    def element(self, a: Rational = 0, b: Rational = 0) -> QuadExtElement:
        return QuadExtElement(Fraction(a), Fraction(b), self.d)

    def sqrt_d(self) -> QuadExtElement:
        return self.element(0, 1)


def unramified_preset(p: int = 5) -> FieldConfig:
    """E/F unramified: d is the least positive quadratic nonresidue mod p."""
    d = next(r for r in range(2, p) if pow(r, (p - 1) // 2, p) == p - 1)
    return FieldConfig(p, Fraction(d))


def ramified_preset(p: int = 5) -> FieldConfig:
    """E/F ramified: d = p."""
    return FieldConfig(p, Fraction(p))


def presets(p: int = 5) -> dict[str, FieldConfig]:
    return {"unramified": unramified_preset(p), "ramified": ramified_preset(p)}


@dataclass(frozen=True, slots=True)
class QuadExtElement:
    """a + b sqrt(d) with exact rational coordinates."""

    a: Fraction
    b: Fraction
    d: Fraction

    def _coerce(self, other) -> QuadExtElement | None:
        if isinstance(other, QuadExtElement):
            if other.d != self.d:
                raise ValueError("elements of different extensions")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadExtElement(Fraction(other), Fraction(0), self.d)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExtElement(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self) -> QuadExtElement:
        return QuadExtElement(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExtElement(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExtElement(
            self.a * o.a + self.d * self.b * o.b, self.a * o.b + self.b * o.a, self.d
        )

    __rmul__ = __mul__

    def inverse(self) -> QuadExtElement:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return QuadExtElement(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __eq__(self, other) -> bool:
        if isinstance(other, QuadExtElement):
            return self.a == other.a and self.b == other.b and self.d == other.d
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.d))

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def conj(self) -> QuadExtElement:
        """Galois conjugate a - b sqrt(d)."""
        return QuadExtElement(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def trace(self) -> Fraction:
        return 2 * self.a

    def in_base_field(self) -> bool:
        return self.b == 0

    def valuation(self, p: int) -> Fraction:
        """Valuation extending v_p to E, normalized so that v(p) = 1."""
        return Fraction(valuation(self.norm(), p), 2)

    def __repr__(self) -> str:
        return f"QuadExtElement({format_rational(self.a)}, {format_rational(self.b)}; d={format_rational(self.d)})"

    def __str__(self) -> str:
        if self.b == 0:
            return format_rational(self.a)
        return f"{format_rational(self.a)}{'+' if self.b >= 0 else '-'}{format_rational(abs(self.b))}*sqrt({format_rational(self.d)})"


def conj(x: QuadExtElement) -> QuadExtElement:
    return x.conj()


def norm(x: QuadExtElement) -> Fraction:
    return x.norm()


@dataclass(frozen=True)
class NormClass:
    """A class in F^x / N(E^x); there are exactly two."""

    representative: Fraction
    class_id: str  # "trivial" | "nontrivial"

    def __post_init__(self) -> None:
        if self.class_id not in ("trivial", "nontrivial"):
            raise ValueError(f"bad class id {self.class_id!r}")

    def to_json(self) -> dict:
        return {"representative": format_rational(self.representative), "class_id": self.class_id}


def is_norm(a: Rational, cfg: FieldConfig) -> bool:
    """Local norm criterion: a in N(E^x) iff (a, d)_p = 1."""
    return hilbert_symbol(a, cfg.d, cfg.p) == 1


def norm_class(a: Rational, cfg: FieldConfig) -> NormClass:
    a = Fraction(a)
    if a == 0:
        raise ValueError("zero has no norm class")
    return NormClass(a, "trivial" if is_norm(a, cfg) else "nontrivial")
