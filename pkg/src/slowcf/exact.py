"""Exact rationals, real quadratic surds and integer Moebius maps.

Rationals are plain :class:`fractions.Fraction` values.  A
:class:`QuadraticSurd` is ``(a + b*sqrt(d))/c`` with a squarefree radicand,
and a :class:`Mobius` is an element of PGL2(Z) stored with a canonical sign so
that group equality is dataclass equality.  Nothing here ever touches floating
point except the explicit ``__float__`` conversions.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from functools import lru_cache, total_ordering
from math import gcd, isqrt
from typing import Union

from .errors import DegenerateError, NumberSyntaxError, PoleError, RadicandTooLarge

__all__ = [
    "QuadraticSurd",
    "Mobius",
    "IDENTITY",
    "Number",
    "as_surd",
    "compare",
    "format_number",
    "parse_number",
    "random_surd",
    "sign_sqrt",
    "squarefree_split",
]

# Radicands are factored by trial division up to this prime bound.
TRIAL_LIMIT = 10**6


@lru_cache(maxsize=4096)
def squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(s, m)`` with ``n == s*s*m`` and ``m`` squarefree.

    Trial division stops once ``p**3`` exceeds the cofactor; what remains then
    has at most two prime factors and is squarefree unless it is a perfect
    square.  A cofactor that would need primes beyond ``TRIAL_LIMIT`` raises
    :class:`RadicandTooLarge` instead of being guessed at.
    """
    if n < 0:
        raise ValueError("radicand must be nonnegative")
    if n < 2:
        return 1, n
    s, m, r = 1, 1, n
    p = 2
    while p * p * p <= r:
        if p > TRIAL_LIMIT:
            raise RadicandTooLarge(f"cannot certify squarefree part of {n}")
        if r % p == 0:
            e = 0
            while r % p == 0:
                r //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                m *= p
        p += 1 if p == 2 else 2
    t = isqrt(r)
    if t * t == r:
        s *= t
    else:
        m *= r
    return s, m


def sign_sqrt(a: int, b: int, m: int) -> int:
    """Sign of ``a + b*sqrt(m)`` for integers, ``m >= 0``."""
    sb = (b > 0) - (b < 0) if m else 0
    sa = (a > 0) - (a < 0)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    lhs, rhs = a * a, b * b * m
    if lhs == rhs:
        return 0
    return sa if lhs > rhs else sb


def _sign_two_sqrt(a: int, b: int, p: int, c: int, q: int) -> int:
    # sign of a + b*sqrt(p) + c*sqrt(q)
    sx = _sign_pair(b, p, c, q)
    sa = (a > 0) - (a < 0)
    if sx == 0:
        return sa
    if sa == 0 or sa == sx:
        return sx
    # |a| against |b sqrt p + c sqrt q|: compare a^2 - b^2 p - c^2 q with 2bc sqrt(pq)
    return sa * sign_sqrt(a * a - b * b * p - c * c * q, -2 * b * c, p * q)


def _sign_pair(b: int, p: int, c: int, q: int) -> int:
    sb = ((b > 0) - (b < 0)) if p else 0
    sc = ((c > 0) - (c < 0)) if q else 0
    if sb == 0:
        return sc
    if sc == 0 or sb == sc:
        return sb
    lhs, rhs = b * b * p, c * c * q
    if lhs == rhs:
        return 0
    return sb if lhs > rhs else sc


@total_ordering
class QuadraticSurd:
    """The real number ``(a + b*sqrt(d))/c``.

    Canonical form: ``c >= 1``, ``gcd(a, b, c) == 1``, ``d`` squarefree and
    ``d == 1`` whenever ``b == 0``.  Two surds are equal iff their fields are.
    """

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a: int, b: int = 0, c: int = 1, d: int = 1):
        if c == 0:
            raise ZeroDivisionError("surd denominator is zero")
        if d < 0:
            raise ValueError("negative radicand")
        if b == 0 or d == 0:
            b, d = 0, 1
        else:
            s, d = squarefree_split(d)
            b *= s
            if d == 1:
                a, b = a + b, 0
        self._set(a, b, c, d)

    @classmethod
    def _raw(cls, a: int, b: int, c: int, d: int) -> QuadraticSurd:
        # d is already squarefree (or the surd is rational)
        obj = cls.__new__(cls)
        if b == 0:
            d = 1
        obj._set(a, b, c, d)
        return obj

    def _set(self, a: int, b: int, c: int, d: int) -> None:
        if c < 0:
            a, b, c = -a, -b, -c
        g = gcd(gcd(a, b), c)
        if g > 1:
            a, b, c = a // g, b // g, c // g
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("QuadraticSurd is immutable")

    @classmethod
    def from_fraction(cls, q: Fraction | int) -> QuadraticSurd:
        q = Fraction(q)
        return cls._raw(q.numerator, 0, q.denominator, 1)

    @classmethod
    def root(cls, A: int, B: int, C: int, sign: int = 1) -> QuadraticSurd:
        """Root ``(-B + sign*sqrt(B^2 - 4AC)) / 2A`` of ``A x^2 + B x + C``."""
        disc = B * B - 4 * A * C
        if disc < 0:
            raise ValueError("no real root")
        return cls(-B, sign, 2 * A, disc)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def to_fraction(self) -> Fraction:
        if self.b:
            raise ValueError(f"{self} is irrational")
        return Fraction(self.a, self.c)

    def conjugate(self) -> QuadraticSurd:
        return QuadraticSurd._raw(self.a, -self.b, self.c, self.d)

    def sign(self) -> int:
        return sign_sqrt(self.a, self.b, self.d)

    def __floor__(self) -> int:
        if self.b == 0:
            return self.a // self.c
        r = isqrt(self.b * self.b * self.d)
        fl = r if self.b > 0 else -r - 1
        return (self.a + fl) // self.c

    def __float__(self) -> float:
        with localcontext() as ctx:
            ctx.prec = 50
            v = (Decimal(self.a) + Decimal(self.b) * Decimal(self.d).sqrt()) / Decimal(self.c)
        return float(v)

    # arithmetic ------------------------------------------------------------

    def _common(self, other) -> tuple[QuadraticSurd, QuadraticSurd] | None:
        other = _coerce(other)
        if other is None:
            return None
        if self.b and other.b and self.d != other.d:
            raise ValueError(f"radicands differ: {self.d} vs {other.d}")
        return self, other

    def __neg__(self) -> QuadraticSurd:
        return QuadraticSurd._raw(-self.a, -self.b, self.c, self.d)

    def __add__(self, other):
        pair = self._common(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        d = x.d if x.b else y.d
        return QuadraticSurd._raw(x.a * y.c + y.a * x.c, x.b * y.c + y.b * x.c, x.c * y.c, d)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        pair = self._common(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        d = x.d if x.b else y.d
        a = x.a * y.a + x.b * y.b * d
        b = x.a * y.b + x.b * y.a
        c = x.c * y.c
        return QuadraticSurd._raw(a, b, c, d)

    __rmul__ = __mul__

    def reciprocal(self) -> QuadraticSurd:
        # c / (a + b sqrt d) = c (a - b sqrt d) / (a^2 - b^2 d)
        den = self.a * self.a - self.b * self.b * self.d
        if den == 0:
            raise ZeroDivisionError("reciprocal of zero")
        return QuadraticSurd._raw(self.c * self.a, -self.c * self.b, den, self.d)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other * self.reciprocal()

    # comparison ------------------------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return (self.a, self.b, self.c, self.d) == (other.a, other.b, other.c, other.d)

    def __lt__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return compare(self, other) < 0

    def __hash__(self):
        if self.b == 0:
            return hash(Fraction(self.a, self.c))
        return hash((self.a, self.b, self.c, self.d))

    def __repr__(self):
        return f"QuadraticSurd({self.a}, {self.b}, {self.c}, {self.d})"

    def __str__(self):
        if self.b == 0:
            return f"{self.a}/{self.c}"
        op = "+" if self.b > 0 else "-"
        return f"({self.a}{op}{abs(self.b)}*sqrt({self.d}))/{self.c}"


Number = Union[Fraction, int, QuadraticSurd]


def _coerce(x) -> QuadraticSurd | None:
    if isinstance(x, QuadraticSurd):
        return x
    if isinstance(x, (int, Fraction)):
        return QuadraticSurd.from_fraction(x)
    return None


def as_surd(x: Number) -> QuadraticSurd:
    s = _coerce(x)
    if s is None:
        raise TypeError(f"not an exact number: {x!r}")
    return s


def compare(x: Number, y: Number) -> int:
    """Exact three-way comparison: -1, 0 or 1 as x <, ==, > y."""
    x, y = as_surd(x), as_surd(y)
    # sign of (x.a y.c - y.a x.c) + x.b y.c sqrt(x.d) - y.b x.c sqrt(y.d), both c > 0
    a = x.a * y.c - y.a * x.c
    if x.d == y.d or x.b == 0 or y.b == 0:
        d = x.d if x.b else y.d
        return sign_sqrt(a, x.b * y.c - y.b * x.c, d)
    return _sign_two_sqrt(a, x.b * y.c, x.d, -y.b * x.c, y.d)


def format_number(x: Number) -> str:
    return str(as_surd(x))


_RATIONAL = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")
_SURD = re.compile(
    r"^\(?([+-]?\d+)?([+-])(?:(\d+)\*)?sqrt\((\d+)\)\)?(?:/(\d+))?$"
)
_BARE_SQRT = re.compile(r"^\(?([+-])?(?:(\d+)\*)?sqrt\((\d+)\)\)?(?:/(\d+))?$")


def parse_number(text: str) -> Number:
    """Parse ``p/q``, ``p`` or ``(a+b*sqrt(d))/c``; whitespace is ignored.

    Returns a :class:`Fraction` for rationals and a :class:`QuadraticSurd`
    otherwise.
    """
    s = re.sub(r"\s+", "", text)
    m = _RATIONAL.match(s)
    if m:
        den = int(m.group(2) or 1)
        if den == 0:
            raise NumberSyntaxError(f"zero denominator in {text!r}")
        return Fraction(int(m.group(1)), den)
    if s.count("(") != s.count(")"):
        raise NumberSyntaxError(f"unbalanced parentheses in {text!r}")
    m = _SURD.match(s)
    if m:
        a = int(m.group(1) or 0)
        b = int(m.group(3) or 1) * (1 if m.group(2) == "+" else -1)
        d, c = int(m.group(4)), int(m.group(5) or 1)
    else:
        m = _BARE_SQRT.match(s)
        if not m:
            raise NumberSyntaxError(
                f"cannot parse {text!r}; expected p/q or (a+b*sqrt(d))/c"
            )
        a = 0
        b = int(m.group(2) or 1) * (-1 if m.group(1) == "-" else 1)
        d, c = int(m.group(3)), int(m.group(4) or 1)
    if c == 0:
        raise NumberSyntaxError(f"zero denominator in {text!r}")
    x = QuadraticSurd(a, b, c, d)
    return x.to_fraction() if x.is_rational else x


@dataclass(frozen=True)
class Mobius:
    """An element of PGL2(Z) acting by ``x -> (a x + b)/(c x + d)``.

    The sign is normalised at construction (first nonzero entry positive), so
    ``M`` and ``-M`` compare equal as they should.
    """

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        det = self.a * self.d - self.b * self.c
        if det not in (1, -1):
            raise ValueError(f"determinant {det} is not +-1")
        first = next(v for v in (self.a, self.b, self.c, self.d) if v)
        if first < 0:
            for name in "abcd":
                object.__setattr__(self, name, -getattr(self, name))

    @classmethod
    def of(cls, rows) -> Mobius:
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.a, self.b), (self.c, self.d))

    def is_identity(self) -> bool:
        return self == IDENTITY

    def __matmul__(self, other: Mobius) -> Mobius:
        return Mobius(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def compose(self, other: Mobius) -> Mobius:
        """``self o other`` (apply ``other`` first)."""
        return self @ other

    def inverse(self) -> Mobius:
        return Mobius(self.d, -self.b, -self.c, self.a)

    def __pow__(self, n: int) -> Mobius:
        base = self if n >= 0 else self.inverse()
        out = IDENTITY
        for _ in range(abs(n)):
            out = out @ base
        return out

    def apply(self, x: Number) -> Number:
        """Evaluate at ``x``; rationals map to :class:`Fraction`, surds to surds."""
        if isinstance(x, QuadraticSurd) and x.b:
            p, q, r, d = x.a, x.b, x.c, x.d
            A, B = self.a * p + self.b * r, self.a * q
            C, D = self.c * p + self.d * r, self.c * q
            den = C * C - D * D * d
            if den == 0:
                raise PoleError(f"{self} has a pole at {x}")
            return QuadraticSurd._raw(A * C - B * D * d, B * C - A * D, den, d)
        q = x.to_fraction() if isinstance(x, QuadraticSurd) else Fraction(x)
        num = self.a * q.numerator + self.b * q.denominator
        den = self.c * q.numerator + self.d * q.denominator
        if den == 0:
            raise PoleError(f"{self} has a pole at {q}")
        return Fraction(num, den)

    __call__ = apply

    def fixed_points(self) -> set[Number]:
        """Real solutions of ``c x^2 + (d - a) x - b = 0``."""
        if self.is_identity():
            raise DegenerateError("every point is fixed by the identity")
        A, B, C = self.c, self.d - self.a, -self.b
        g = gcd(gcd(A, B), C)
        A, B, C = A // g, B // g, C // g
        if A == 0:
            return set() if B == 0 else {Fraction(-C, B)}
        disc = B * B - 4 * A * C
        if disc < 0:
            return set()
        roots = {QuadraticSurd.root(A, B, C, 1), QuadraticSurd.root(A, B, C, -1)}
        return {r.to_fraction() if r.is_rational else r for r in roots}

    def __str__(self):
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


IDENTITY = Mobius(1, 0, 0, 1)


def random_surd(rng: random.Random, bound: int = 100) -> QuadraticSurd:
    """Random irrational ``(a + b*sqrt(d))/c`` in (0, 1), coefficients up to ``bound``."""
    while True:
        b = rng.randint(-bound, bound)
        if b == 0:
            continue
        x = QuadraticSurd(rng.randint(-bound, bound), b, rng.randint(1, bound), rng.randint(2, bound))
        if x.b and compare(x, 0) > 0 and compare(x, 1) < 0:
            return x
