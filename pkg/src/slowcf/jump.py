"""Jump transformations: inducing an SCFA on a block of consecutive cells.

The jump map ``G(F, E)`` applies ``F`` until the orbit has passed through
``E`` once more.  Symbolically each jump consumes one block
``(non-E digits)* (E digit)`` of the itinerary, and these blocks are the
words ``mu_j`` attached to the generators of the induced system.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .errors import NotInDomain
from .scfa import Scfa
from .symbolic import EventuallyPeriodic, Itinerary, Word

__all__ = ["JumpSpec", "jump_words", "jump_tail_mass", "jump_blocks", "partial_quotients"]


@dataclass(frozen=True)
class JumpSpec:
    """Cells ``first..last`` (1-based, inclusive) of ``scfa`` form the set E."""

    scfa: Scfa
    first: int
    last: int

    def __post_init__(self):
        if not 1 <= self.first <= self.last <= self.scfa.n:
            raise ValueError(f"bad cell range {self.first}..{self.last} for N={self.scfa.n}")

    @classmethod
    def parse(cls, scfa: Scfa, text: str) -> JumpSpec:
        """``"2"`` or ``"2-3"`` / ``"2..3"``."""
        parts = text.replace("..", "-").split("-")
        if len(parts) == 1:
            return cls(scfa, int(parts[0]), int(parts[0]))
        if len(parts) == 2:
            return cls(scfa, int(parts[0]), int(parts[1]))
        raise ValueError(f"bad range {text!r}")

    @property
    def inside(self) -> tuple[int, ...]:
        return tuple(range(self.first, self.last + 1))

    @property
    def outside(self) -> tuple[int, ...]:
        return tuple(i for i in range(1, self.scfa.n + 1) if not self.first <= i <= self.last)

    @property
    def proper(self) -> bool:
        return bool(self.outside)

    def __str__(self):
        if self.first == self.last:
            return f"{self.scfa.name}/D{self.first}"
        return f"{self.scfa.name}/D{self.first}..D{self.last}"


def jump_words(spec: JumpSpec, max_len: int) -> list[Word]:
    """All words ``(outside)* (inside)`` of length at most ``max_len``, length-lex ordered."""
    if not spec.proper:
        raise ValueError("E must be a proper subset of the cells")
    out = []
    for length in range(1, max_len + 1):
        for head in itertools.product(spec.outside, repeat=length - 1):
            for last in spec.inside:
                out.append(head + (last,))
    return out


def jump_tail_mass(spec: JumpSpec, max_len: int) -> Fraction:
    """Kraft mass not yet covered by :func:`jump_words` at this length.

    It is the mass of the ``|outside|**max_len`` words that have not met E
    yet, so it tends to zero and the infinite family is complete.
    """
    n, c = spec.scfa.n, len(spec.outside)
    return Fraction(c, n) ** max_len


def jump_blocks(spec: JumpSpec, it: Itinerary) -> Iterator[Word]:
    """Cut an itinerary into blocks that each end at the first E digit.

    Eventually periodic input whose period avoids E never reenters E, so it
    is rejected up front with :class:`NotInDomain`.
    """
    if isinstance(it, EventuallyPeriodic) and not set(it.per) & set(spec.inside):
        raise NotInDomain(f"period {','.join(map(str, it.per))} never enters E")
    return _blocks(spec, it)


def _blocks(spec: JumpSpec, it: Itinerary) -> Iterator[Word]:
    block: list[int] = []
    for d in it:
        block.append(d)
        if spec.first <= d <= spec.last:
            yield tuple(block)
            block = []


def partial_quotients(spec: JumpSpec, it: Itinerary, count: int) -> list:
    """Block lengths (``r + 1``) of the first ``count`` jumps.

    When E has several cells the terminal digit matters too, and each entry
    is a ``(length, last digit)`` pair.
    """
    blocks = itertools.islice(jump_blocks(spec, it), count)
    if spec.first == spec.last:
        return [len(b) for b in blocks]
    return [(len(b), b[-1]) for b in blocks]
