"""Reference computations that share no code path with the package.

Everything here works from first principles: decimal evaluation at high
precision, the classical continued fraction floor recursion, and direct
iteration of the forward maps on Fractions.
"""

from __future__ import annotations

import itertools
from decimal import Decimal, localcontext
from fractions import Fraction

PRECISION = 400


def surd_decimal(a: int, b: int, c: int, d: int, prec: int = PRECISION) -> Decimal:
    with localcontext() as ctx:
        ctx.prec = prec
        return (Decimal(a) + Decimal(b) * Decimal(d).sqrt()) / Decimal(c)


def rcf_floor_recursion(x: Decimal, count: int, prec: int = PRECISION) -> list[int]:
    """Quotients a1, a2, ... of x in (0, 1) by x -> 1/x - floor(1/x)."""
    out = []
    with localcontext() as ctx:
        ctx.prec = prec
        for _ in range(count):
            y = 1 / x
            a = int(y)
            out.append(a)
            x = y - a
    return out


def e_minus_2_quotients():
    """1, 2, 1, 1, 4, 1, 1, 6, 1, ..."""
    for k in itertools.count(1):
        yield from (1, 2 * k, 1)


def convergents(quotients):
    """p/q of [0; a1, a2, ...] for successive truncations."""
    p0, q0, p1, q1 = 1, 0, 0, 1
    for a in quotients:
        p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
        yield Fraction(p1, q1)


# The forward maps written out by hand, independent of the partition code.

def fn_forward(n: int, x: Fraction) -> list[tuple[int, Fraction]]:
    """All (digit, image) pairs of F_N at x: cell 1 is [0, 1/N], cell i >= 2 is [1/(N-i+2), 1/(N-i+1)]."""
    out = []
    if x <= Fraction(1, n):
        out.append((1, x / (1 - (n - 1) * x)))
    for i in range(2, n + 1):
        k = n - i + 1  # cell [1/(k+1), 1/k]
        if Fraction(1, k + 1) <= x <= Fraction(1, k):
            # orientation reversing branch: 1/(k+1) -> 1, 1/k -> 0
            out.append((i, (1 - k * x) / x))
    return out


def farey_forward(x: Fraction) -> list[tuple[int, Fraction]]:
    return fn_forward(2, x)


def _unique_digit(step, x: Fraction):
    hits = step(x)
    return hits[0] if len(hits) == 1 else None


def common_digits(step, lo: Fraction, hi: Fraction, limit: int) -> list[int]:
    """Digits shared by the forward orbits of two bracketing rationals.

    Between two points the itinerary of every number in between agrees with
    theirs for as long as they stay in the same cell's interior, so the
    shared prefix is the itinerary prefix of anything they bracket.
    """
    out = []
    for _ in range(limit):
        a, b = _unique_digit(step, lo), _unique_digit(step, hi)
        if a is None or b is None or a[0] != b[0]:
            break
        out.append(a[0])
        lo, hi = a[1], b[1]
    return out


def e_minus_2_digits(n: int, count: int) -> list[int]:
    """First ``count`` F_N digits of e - 2 from pairs of consecutive convergents."""
    best: list[int] = []
    conv = list(itertools.islice(convergents(e_minus_2_quotients()), 200))
    for lo, hi in zip(conv, conv[1:]):
        digits = common_digits(lambda x: fn_forward(n, x), lo, hi, count)
        if len(digits) > len(best):
            best = digits
        if len(best) >= count:
            return best[:count]
    raise AssertionError("convergents did not separate enough digits")


def fn_itinerary_decimal(n: int, x: Decimal, count: int, prec: int = PRECISION) -> list[int]:
    """F_N digits of an irrational by iterating the map on decimals."""
    out = []
    with localcontext() as ctx:
        ctx.prec = prec
        for _ in range(count):
            if x <= Decimal(1) / n:
                out.append(1)
                x = x / (1 - (n - 1) * x)
                continue
            k = int(1 / x)  # x in (1/(k+1), 1/k)
            out.append(n - k + 1)
            x = (1 - k * x) / x
    return out
