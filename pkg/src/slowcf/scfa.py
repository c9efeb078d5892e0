"""Unimodular partitions and slow continued fraction algorithms.

An :class:`Scfa` is fixed by a unimodular partition of [0, 1] together with
one sign per cell.  Branch ``i`` (1-based throughout) is the Moebius map
``h_i`` sending [0, 1] onto cell ``i``, increasing when the sign is +1; the
forward map undoes it, ``F = h_i^-1`` on cell ``i``.
"""

from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

from .errors import (
    BadEndpoints,
    GapOrOverlap,
    NotUnimodular,
    OutOfRange,
    UnknownName,
    WrongBranch,
)
from .exact import Mobius, Number, compare

__all__ = [
    "UnimodularInterval",
    "Scfa",
    "validate_partition",
    "builtin",
    "load_scfa",
    "random_scfa",
    "FLIP",
    "BUILTIN_NAMES",
]

# x -> 1 - x
FLIP = Mobius(-1, 1, 0, 1)

BUILTIN_NAMES = ("farey", "backwards", "even", "odd", "fN:<k>")


@dataclass(frozen=True)
class UnimodularInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        p, q = self.lo.numerator, self.lo.denominator
        pp, qq = self.hi.numerator, self.hi.denominator
        if p * qq - pp * q != -1:
            raise ValueError(f"[{self.lo}, {self.hi}] is not unimodular")

    def contains(self, x: Number) -> bool:
        return compare(self.lo, x) <= 0 <= compare(self.hi, x)

    def mediant(self) -> Fraction:
        return Fraction(
            self.lo.numerator + self.hi.numerator,
            self.lo.denominator + self.hi.denominator,
        )

    def split(self) -> tuple[UnimodularInterval, UnimodularInterval]:
        m = self.mediant()
        return UnimodularInterval(self.lo, m), UnimodularInterval(m, self.hi)

    def __str__(self):
        return f"[{self.lo}, {self.hi}]"


_FRAC = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def _raw_fraction(v) -> tuple[int, int]:
    """Numerator/denominator exactly as written, without reducing."""
    if isinstance(v, tuple):
        return int(v[0]), int(v[1])
    if isinstance(v, int):
        return v, 1
    if isinstance(v, Fraction):
        return v.numerator, v.denominator
    m = _FRAC.match(str(v))
    if not m:
        raise ValueError(f"bad fraction {v!r}")
    return int(m.group(1)), int(m.group(2) or 1)


def validate_partition(raw: Iterable[tuple]) -> tuple[UnimodularInterval, ...]:
    """Check a list of ``(lo, hi)`` pairs and return it as a partition.

    Endpoints may be ints, Fractions, ``(p, q)`` tuples or ``"p/q"`` strings.
    Unreduced endpoints fail the unimodularity test, since ``p q' - p' q``
    is computed from the numbers as written.  Indices in errors are 1-based.
    """
    pairs = [(_raw_fraction(lo), _raw_fraction(hi)) for lo, hi in raw]
    if not pairs:
        raise BadEndpoints(message="empty partition")
    out = []
    for i, ((p, q), (pp, qq)) in enumerate(pairs, start=1):
        if q <= 0 or qq <= 0 or p * qq - pp * q != -1:
            raise NotUnimodular(i)
        out.append(UnimodularInterval(Fraction(p, q), Fraction(pp, qq)))
    if out[0].lo != 0 or out[-1].hi != 1:
        raise BadEndpoints(message="partition must start at 0/1 and end at 1/1")
    for i in range(1, len(out)):
        if out[i - 1].hi != out[i].lo:
            raise GapOrOverlap(i + 1)
    return tuple(out)


def _branch_matrix(iv: UnimodularInterval, sign: int) -> Mobius:
    p, q = iv.lo.numerator, iv.lo.denominator
    pp, qq = iv.hi.numerator, iv.hi.denominator
    m = Mobius(pp - p, p, qq - q, q)
    return m @ FLIP if sign == -1 else m


@dataclass(frozen=True)
class Scfa:
    partition: tuple[UnimodularInterval, ...]
    signs: tuple[int, ...]
    name: str = field(default="custom", compare=False)

    def __post_init__(self):
        if len(self.partition) < 2:
            raise ValueError("an SCFA needs at least two branches")
        if len(self.signs) != len(self.partition):
            raise ValueError("one sign per interval is required")
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be +1 or -1")

    @classmethod
    def from_raw(cls, raw, signs: Sequence[int], name: str = "custom") -> Scfa:
        return cls(validate_partition(raw), tuple(int(s) for s in signs), name)

    @property
    def n(self) -> int:
        return len(self.partition)

    @cached_property
    def branches(self) -> tuple[Mobius, ...]:
        return tuple(_branch_matrix(iv, s) for iv, s in zip(self.partition, self.signs))

    @cached_property
    def inverse_branches(self) -> tuple[Mobius, ...]:
        return tuple(h.inverse() for h in self.branches)

    @cached_property
    def cut_points(self) -> tuple[Fraction, ...]:
        """The N - 1 interior partition points."""
        return tuple(iv.hi for iv in self.partition[:-1])

    def branch(self, i: int) -> Mobius:
        self._check_index(i)
        return self.branches[i - 1]

    def interval(self, i: int) -> UnimodularInterval:
        self._check_index(i)
        return self.partition[i - 1]

    def _check_index(self, i: int) -> None:
        if not 1 <= i <= self.n:
            raise IndexError(f"branch {i} out of range 1..{self.n}")

    def locate(self, x: Number) -> frozenset[int]:
        """Indices of the closed cells containing ``x``."""
        if compare(x, 0) < 0 or compare(x, 1) > 0:
            raise OutOfRange(f"{x} is not in [0, 1]")
        found = []
        for i, cut in enumerate(self.cut_points, start=1):
            c = compare(x, cut)
            if c < 0:
                found.append(i)
                break
            if c == 0:
                found.extend((i, i + 1))
                break
        else:
            found.append(self.n)
        return frozenset(found)

    def forward_step(self, x: Number, i: int) -> Number:
        if i not in self.locate(x):
            raise WrongBranch(f"{x} is not in cell {i}")
        return self.inverse_branches[i - 1].apply(x)

    def __str__(self):
        cells = ", ".join(str(iv) for iv in self.partition)
        signs = ",".join(f"{s:+d}" for s in self.signs)
        return f"{self.name}: {cells}; signs {signs}"

    def to_json(self) -> dict:
        return {
            "partition": [[f"{iv.lo.numerator}/{iv.lo.denominator}",
                           f"{iv.hi.numerator}/{iv.hi.denominator}"] for iv in self.partition],
            "signs": list(self.signs),
        }


_HALVES = [("0/1", "1/2"), ("1/2", "1/1")]
_THIRDS = [("0/1", "1/3"), ("1/3", "1/2"), ("1/2", "1/1")]


def fn_partition(k: int) -> list[tuple[Fraction, Fraction]]:
    return [(Fraction(0), Fraction(1, k))] + [
        (Fraction(1, j + 1), Fraction(1, j)) for j in range(k - 1, 0, -1)
    ]


def builtin(name: str) -> Scfa:
    """Look up ``farey``, ``backwards``, ``even``, ``odd`` or ``fN:<k>``."""
    key = name.strip()
    if key == "farey":
        return Scfa.from_raw(_HALVES, (1, -1), key)
    if key == "backwards":
        return Scfa.from_raw(_HALVES, (1, 1), key)
    if key == "even":
        return Scfa.from_raw(_THIRDS, (1, -1, 1), key)
    if key == "odd":
        return Scfa.from_raw(_THIRDS, (1, 1, -1), key)
    m = re.fullmatch(r"fN[:(]?(\d+)\)?", key)
    if m:
        k = int(m.group(1))
        if k < 2:
            raise UnknownName(f"fN needs k >= 2, got {k}")
        return Scfa.from_raw(fn_partition(k), (1,) + (-1,) * (k - 1), f"fN:{k}")
    raise UnknownName(f"unknown SCFA {name!r}; expected one of {'|'.join(BUILTIN_NAMES)}")


def load_scfa(selector: str) -> Scfa:
    """Builtin name, or path to a JSON file ``{"partition": ..., "signs": ...}``."""
    path = Path(selector)
    if selector.endswith(".json") or path.is_file():
        data = json.loads(path.read_text())
        return Scfa.from_raw(data["partition"], data["signs"], name=path.stem)
    return builtin(selector)


def is_fn_instance(s: Scfa) -> bool:
    return s.n >= 2 and s == builtin(f"fN:{s.n}")


def random_scfa(rng: random.Random, max_n: int = 8, max_den: int = 50) -> Scfa:
    """Random SCFA by repeated mediant splitting of a uniformly chosen cell."""
    n = rng.randint(2, max_n)
    cells = [UnimodularInterval(Fraction(0), Fraction(1))]
    while len(cells) < n:
        candidates = [i for i, iv in enumerate(cells)
                      if iv.lo.denominator + iv.hi.denominator <= max_den]
        if not candidates:
            break
        i = rng.choice(candidates)
        cells[i:i + 1] = list(cells[i].split())
    signs = tuple(rng.choice((1, -1)) for _ in cells)
    return Scfa(tuple(cells), signs, name="random")
