"""Itineraries: encoding numbers into digit sequences and decoding them back.

The itinerary of ``x`` under an SCFA records the cell visited by each forward
iterate.  Quadratic surds and rationals have eventually periodic itineraries,
stored as :class:`EventuallyPeriodic`; other reals are accessed through a
regular continued fraction stream (:class:`RcfStream`) and yield a growing
:class:`StreamPrefix`.

Cylinders compose in itinerary order: the word ``w1 w2 ... wn`` names the
interval ``h_w1 o h_w2 o ... o h_wn([0, 1])``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, Iterable, Iterator, Sequence, Union

from .errors import (
    InvalidSymbol,
    NoFixedPointInCylinder,
    OutOfRange,
    StallError,
)
from .exact import IDENTITY, Mobius, Number, QuadraticSurd, compare, sign_sqrt
from .scfa import Scfa

__all__ = [
    "OMEGA",
    "Word",
    "EventuallyPeriodic",
    "StreamPrefix",
    "RcfStream",
    "Itinerary",
    "least_rotation",
    "primitive_period",
    "encode",
    "encode_surd",
    "encode_rational",
    "encode_stream",
    "decode",
    "decode_prefix",
    "compose_word",
    "tail_equivalent",
    "eventual_equivalent",
    "atom_count",
]

Word = tuple[int, ...]


class _Omega:
    """Countably infinite atom count."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "OMEGA"

    def __str__(self):
        return "omega"


OMEGA = _Omega()


def primitive_period(word: Sequence[int]) -> Word:
    """Shortest ``u`` with ``word == u * k``."""
    w = tuple(word)
    n = len(w)
    for p in range(1, n + 1):
        if n % p == 0 and w[:p] * (n // p) == w:
            return w[:p]
    return w


def least_rotation_index(word: Sequence[int]) -> int:
    """Booth's algorithm: start index of the lexicographically least rotation."""
    s = list(word) * 2
    n = len(word)
    f = [-1] * len(s)
    k = 0
    for j in range(1, len(s)):
        sj = s[j]
        i = f[j - k - 1]
        while i != -1 and sj != s[k + i + 1]:
            if sj < s[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if sj != s[k + i + 1]:
            if sj < s[k]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return k % n if n else 0


def least_rotation(word: Sequence[int]) -> Word:
    w = tuple(word)
    k = least_rotation_index(w)
    return w[k:] + w[:k]


def _rotate(word: Word, shift: int) -> Word:
    if not word:
        return word
    s = shift % len(word)
    return word[s:] + word[:s]


@dataclass(frozen=True)
class EventuallyPeriodic:
    """The sequence ``pre, per, per, per, ...`` in minimal form.

    On construction the period is reduced to its primitive root and the
    preperiod is shortened as far as possible, so two instances describing
    the same infinite sequence are equal.
    """

    pre: Word
    per: Word

    def __post_init__(self):
        pre = tuple(int(v) for v in self.pre)
        per = primitive_period(tuple(int(v) for v in self.per))
        if not per:
            raise ValueError("period must be nonempty")
        while pre and pre[-1] == per[-1]:
            pre = pre[:-1]
            per = per[-1:] + per[:-1]
        object.__setattr__(self, "pre", pre)
        object.__setattr__(self, "per", per)

    @classmethod
    def periodic(cls, per: Sequence[int]) -> EventuallyPeriodic:
        return cls((), tuple(per))

    @classmethod
    def parse(cls, text: str) -> EventuallyPeriodic:
        """Read ``pre:1,2 per:1`` (the ``pre:`` part is optional)."""
        pre: Word = ()
        per: Word | None = None
        for part in text.split():
            key, _, val = part.partition(":")
            digits = tuple(int(v) for v in val.split(",") if v.strip())
            if key == "pre":
                pre = digits
            elif key == "per":
                per = digits
            else:
                raise ValueError(f"bad itinerary field {part!r}")
        if not per:
            raise ValueError(f"itinerary {text!r} has no period")
        return cls(pre, per)

    @property
    def symbols(self) -> frozenset[int]:
        return frozenset(self.pre) | frozenset(self.per)

    def digit(self, n: int) -> int:
        """The ``n``-th digit, counting from 1."""
        if n <= len(self.pre):
            return self.pre[n - 1]
        return self.per[(n - len(self.pre) - 1) % len(self.per)]

    def take(self, count: int) -> Word:
        return tuple(itertools.islice(self, count))

    def __iter__(self) -> Iterator[int]:
        yield from self.pre
        yield from itertools.cycle(self.per)

    def shift(self) -> EventuallyPeriodic:
        """Drop the first digit."""
        if self.pre:
            return EventuallyPeriodic(self.pre[1:], self.per)
        return EventuallyPeriodic((), _rotate(self.per, 1))

    def __str__(self):
        per = "per:" + ",".join(map(str, self.per))
        if self.pre:
            return "pre:" + ",".join(map(str, self.pre)) + " " + per
        return per

    def to_json(self) -> dict:
        return {"pre": list(self.pre), "per": list(self.per)}


class StreamPrefix:
    """Digits produced so far by a lazy encoder, plus the means to get more.

    Holds a live generator, so it is meant to be consumed by one owner.
    """

    def __init__(self, source: Iterator[int], name: str = ""):
        self._source = source
        self._digits: list[int] = []
        self.name = name
        self.exhausted = False

    @property
    def prefix(self) -> Word:
        return tuple(self._digits)

    def extend(self, count: int) -> Word:
        """Make sure at least ``count`` digits are known; return them."""
        while len(self._digits) < count and not self.exhausted:
            try:
                self._digits.append(next(self._source))
            except StopIteration:
                self.exhausted = True
        return tuple(self._digits[:count])

    def __iter__(self) -> Iterator[int]:
        for n in itertools.count():
            if n >= len(self._digits):
                self.extend(n + 1)
                if n >= len(self._digits):
                    return
            yield self._digits[n]

    def __len__(self):
        return len(self._digits)

    def __str__(self):
        return ",".join(map(str, self._digits)) + ",…[+more]"

    def to_json(self) -> dict:
        return {"prefix": list(self._digits), "more": not self.exhausted}


Itinerary = Union[EventuallyPeriodic, StreamPrefix]


@dataclass(frozen=True)
class RcfStream:
    """A real in [0, 1] given by its regular continued fraction quotients.

    ``factory`` returns a fresh iterator of partial quotients ``a1, a2, ...``
    with ``x = 1/(a1 + 1/(a2 + ...))``; a finite iterator means a rational.
    """

    name: str
    factory: Callable[[], Iterable[int]]

    def __iter__(self) -> Iterator[int]:
        return iter(self.factory())

    def quotients(self, count: int) -> list[int]:
        return list(itertools.islice(self, count))

    @classmethod
    def e_minus_2(cls) -> RcfStream:
        def gen():
            for k in itertools.count(1):
                yield 1
                yield 2 * k
                yield 1

        return cls("e-2", gen)

    @classmethod
    def from_number(cls, x: Number) -> RcfStream:
        """Quotients of an exact number by the floor recursion."""

        def gen():
            y = x if isinstance(x, QuadraticSurd) else Fraction(x)
            while y != 0:
                y = 1 / y
                a = int(y.__floor__())
                yield a
                y = y - a

        return cls(str(x), gen)


BUILTIN_STREAMS: dict[str, Callable[[], RcfStream]] = {"e-2": RcfStream.e_minus_2}


# -- encoding --------------------------------------------------------------


def encode(s: Scfa, x: Number) -> list[EventuallyPeriodic]:
    """All itineraries of an exact number (one for irrationals, up to two for rationals)."""
    if isinstance(x, QuadraticSurd) and x.b:
        return [encode_surd(s, x)]
    q = x.to_fraction() if isinstance(x, QuadraticSurd) else Fraction(x)
    return sorted(encode_rational(s, q), key=lambda it: (it.pre, it.per))


def encode_surd(s: Scfa, x: QuadraticSurd) -> EventuallyPeriodic:
    """Itinerary of an irrational quadratic surd in (0, 1).

    The orbit is run on raw integer triples with the radicand held fixed and
    stops at the first repeated point, which must occur for quadratic
    irrationals.
    """
    if not (isinstance(x, QuadraticSurd) and x.b):
        raise ValueError(f"{x} is not an irrational surd")
    if compare(x, 0) < 0 or compare(x, 1) > 0:
        raise OutOfRange(f"{x} is not in [0, 1]")
    d = x.d
    cuts = [(c.numerator, c.denominator) for c in s.cut_points]
    inv = [(m.a, m.b, m.c, m.d) for m in s.inverse_branches]
    n = s.n
    point = (x.a, x.b, x.c)
    seen: dict[tuple[int, int, int], int] = {}
    digits: list[int] = []
    while point not in seen:
        seen[point] = len(digits)
        a, b, c = point
        i = n
        for k, (p, q) in enumerate(cuts):
            # x < p/q  <=>  q a - p c + q b sqrt(d) < 0
            if sign_sqrt(q * a - p * c, q * b, d) < 0:
                i = k + 1
                break
        digits.append(i)
        point = _apply_raw(inv[i - 1], a, b, c, d)
    start = seen[point]
    return EventuallyPeriodic(tuple(digits[:start]), tuple(digits[start:]))


def _apply_raw(m: tuple[int, int, int, int], p: int, q: int, r: int, d: int):
    al, be, ga, de = m
    A, B = al * p + be * r, al * q
    C, D = ga * p + de * r, ga * q
    a, b, c = A * C - B * D * d, B * C - A * D, C * C - D * D * d
    if c < 0:
        a, b, c = -a, -b, -c
    g = gcd(gcd(a, b), c)
    return a // g, b // g, c // g


def encode_rational(s: Scfa, x: Fraction) -> set[EventuallyPeriodic]:
    """Every itinerary of a rational in [0, 1].

    Ambiguous digits at shared cell endpoints are followed both ways.  Each
    branch of the orbit must settle into a cycle within
    ``(N + 1) * denominator**2`` steps; running past that is a bug, not a
    slow input, and raises ``RuntimeError``.
    """
    x = Fraction(x)
    if not 0 <= x <= 1:
        raise OutOfRange(f"{x} is not in [0, 1]")
    bound = (s.n + 1) * x.denominator ** 2 + 4
    out: set[EventuallyPeriodic] = set()
    stack = [(x, (), {})]
    while stack:
        y, digits, seen = stack.pop()
        while y not in seen:
            if len(digits) > bound:
                raise RuntimeError(f"orbit of {x} did not close within {bound} steps")
            seen[y] = len(digits)
            cells = sorted(s.locate(y))
            for extra in cells[1:]:
                branch_seen = dict(seen)
                stack.append((s.inverse_branches[extra - 1].apply(y), digits + (extra,), branch_seen))
            i = cells[0]
            digits = digits + (i,)
            y = s.inverse_branches[i - 1].apply(y)
        start = seen[y]
        out.add(EventuallyPeriodic(digits[:start], digits[start:]))
    return out


def encode_stream(s: Scfa, src: RcfStream, count: int = 0, max_lookahead: int = 10_000) -> StreamPrefix:
    """Lazily encode a continued-fraction stream, computing ``count`` digits now.

    The value is enclosed by ``W([0, 1])`` for a Moebius map ``W`` built from
    the consumed quotients and emitted digits.  A digit is emitted once the
    open enclosure lies inside one cell, so it can never straddle an
    interior cut point; otherwise another quotient is consumed.
    """
    prefix = StreamPrefix(_stream_digits(s, src, max_lookahead), name=src.name)
    if count:
        prefix.extend(count)
    return prefix


def _stream_digits(s: Scfa, src: RcfStream, max_lookahead: int) -> Iterator[int]:
    # w maps the unread tail t in [0, 1] to the value.  One quotient is read
    # ahead so that a finished stream is noticed before w([0, 1]) is trusted:
    # for an infinite stream the value lies strictly inside w([0, 1]), so a
    # closed cell containing it is the right digit even if it touches a cut.
    cells = [(iv.lo, iv.hi) for iv in s.partition]
    inv = s.inverse_branches
    quotients = iter(src)
    pending = next(quotients, None)
    w = IDENTITY
    emitted = 0
    idle = 0
    while True:
        if pending is None:
            yield from _exact_tail(s, w.apply(0), emitted)
            return
        e0, e1 = w.apply(0), w.apply(1)
        lo, hi = min(e0, e1), max(e0, e1)
        for i, (a, b) in enumerate(cells):
            if a <= lo and hi <= b:
                yield i + 1
                emitted += 1
                idle = 0
                w = inv[i] @ w
                break
        else:
            idle += 1
            if idle > max_lookahead:
                raise StallError(emitted + 1, f"no digit after {max_lookahead} more quotients")
            w = w @ Mobius(0, 1, 1, pending)
            pending = next(quotients, None)


def _exact_tail(s: Scfa, y: Fraction, emitted: int) -> Iterator[int]:
    # stream ended: the value is exactly y; its orbit is deterministic until
    # it lands on an interior cut point, where the digit is ambiguous
    while True:
        cells = s.locate(y)
        if len(cells) > 1:
            raise StallError(emitted + 1, f"digit {emitted + 1} is ambiguous: value at cut point {y}")
        (i,) = cells
        yield i
        emitted += 1
        y = s.inverse_branches[i - 1].apply(y)


# -- decoding --------------------------------------------------------------


def _check_word(s: Scfa, word: Iterable[int]) -> None:
    bad = set(word) - set(range(1, s.n + 1))
    if bad:
        raise InvalidSymbol(f"digits {sorted(bad)} outside 1..{s.n}")


def compose_word(s: Scfa, word: Sequence[int]) -> Mobius:
    """``h_w1 o h_w2 o ... o h_wn`` as a matrix."""
    _check_word(s, word)
    rows = [(m.a, m.b, m.c, m.d) for m in s.branches]
    return Mobius(*_product([rows[v - 1] for v in word]))


def _mul(x, y):
    a, b, c, d = x
    e, f, g, h = y
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def _product(ms: list) -> tuple[int, int, int, int]:
    # balanced product tree keeps the big-integer multiplications cheap
    if not ms:
        return (1, 0, 0, 1)
    while len(ms) > 1:
        pairs = [_mul(ms[i], ms[i + 1]) for i in range(0, len(ms) - 1, 2)]
        if len(ms) % 2:
            pairs.append(ms[-1])
        ms = pairs
    return ms[0]


def _cylinder(m: Mobius) -> tuple[Fraction, Fraction]:
    a, b = m.apply(0), m.apply(1)
    return (a, b) if a <= b else (b, a)


def decode_prefix(s: Scfa, word: Sequence[int]) -> tuple[Fraction, Fraction]:
    """Endpoints of the cylinder interval named by ``word``."""
    return _cylinder(compose_word(s, word))


def decode(s: Scfa, it: EventuallyPeriodic) -> Number:
    """The unique point with itinerary ``it``.

    The periodic tail decodes to the fixed point of the period's matrix that
    lies in the period's cylinder (two repetitions are used if both fixed
    points fit in one); the preperiod's matrix then carries it back.
    """
    _check_word(s, it.pre)
    _check_word(s, it.per)
    m = compose_word(s, it.per)
    candidates = list(m.fixed_points()) if not m.is_identity() else []
    if not candidates:
        raise NoFixedPointInCylinder(f"{it}: period matrix {m} has no real fixed point")
    power = m
    for _ in range(64):
        lo, hi = _cylinder(power)
        inside = [x for x in candidates if compare(lo, x) <= 0 <= compare(hi, x)]
        if len(inside) <= 1:
            break
        power = power @ m
    if len(inside) != 1:
        raise NoFixedPointInCylinder(f"{it}: {len(inside)} fixed points in the cylinder")
    x0 = inside[0]
    x = compose_word(s, it.pre).apply(x0)
    if isinstance(x, QuadraticSurd) and x.is_rational:
        return x.to_fraction()
    return x


# -- equivalences ------------------------------------------------------------


def tail_equivalent(it1: EventuallyPeriodic, it2: EventuallyPeriodic) -> bool:
    """Equal after dropping finite prefixes, allowing an index shift."""
    return least_rotation(it1.per) == least_rotation(it2.per)


def eventual_equivalent(it1: EventuallyPeriodic, it2: EventuallyPeriodic) -> bool:
    """Equal from some index on, with no shift.

    Digit ``n`` of the tail of ``it2`` is ``per2[(n - 1 - k2) mod p]``; lining
    that up with ``it1`` requires ``per2 == rot(per1, k2 - k1)``.
    """
    if len(it1.per) != len(it2.per):
        return False
    return _rotate(it1.per, len(it2.pre) - len(it1.pre)) == it2.per


def atom_count(it: Itinerary):
    """Number of eventual-equivalence classes inside the tail class.

    Finite (the primitive period length) for eventually periodic
    itineraries, :data:`OMEGA` for stream prefixes.
    """
    if isinstance(it, EventuallyPeriodic):
        return len(it.per)
    return OMEGA
