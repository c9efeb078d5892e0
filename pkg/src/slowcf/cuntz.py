"""Word combinatorics for Cuntz relations and representation labels.

Representations are never built as operators.  A monomial
``S_left S_right^* U^flip`` is manipulated in normal form, and its action on
a basis vector ``e_w`` of the shift representation is computed directly on
the index word ``w``: ``S_i`` prepends ``i``, ``S_i^*`` strips a leading
``i`` (or kills the vector), and the flip ``U`` swaps the letters 1 and 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import AlphabetMismatch, NotFNFamily
from .exact import Number, format_number
from .scfa import Scfa, is_fn_instance
from .sternbrocot import find_prefix_pair, kraft_sum
from .symbolic import (
    OMEGA,
    EventuallyPeriodic,
    Itinerary,
    RcfStream,
    Word,
    atom_count,
    encode,
    encode_stream,
    least_rotation,
    tail_equivalent,
)

__all__ = [
    "CuntzMonomial",
    "IsometryReport",
    "RepresentationLabel",
    "Unknown",
    "verify_isometry_family",
    "classify",
    "equivalent_reps",
]


def _flip_word(w: Word) -> Word:
    return tuple(3 - v for v in w)


@dataclass(frozen=True)
class CuntzMonomial:
    """``S_left S_right^* U^flip`` over the alphabet ``1..n``, or zero."""

    n: int
    left: Word = ()
    right: Word = ()
    flip: int = 0
    zero: bool = False

    def __post_init__(self):
        if self.flip and self.n != 2:
            raise AlphabetMismatch("the flip only exists for two generators")
        for v in self.left + self.right:
            if not 1 <= v <= self.n:
                raise AlphabetMismatch(f"letter {v} outside 1..{self.n}")
        if self.zero:
            object.__setattr__(self, "left", ())
            object.__setattr__(self, "right", ())
            object.__setattr__(self, "flip", 0)

    @classmethod
    def one(cls, n: int) -> CuntzMonomial:
        return cls(n)

    @classmethod
    def zero_of(cls, n: int) -> CuntzMonomial:
        return cls(n, zero=True)

    @classmethod
    def s(cls, n: int, *word: int) -> CuntzMonomial:
        return cls(n, left=tuple(word))

    @classmethod
    def s_star(cls, n: int, *word: int) -> CuntzMonomial:
        return cls(n, right=tuple(word))

    @classmethod
    def u(cls) -> CuntzMonomial:
        return cls(2, flip=1)

    def adjoint(self) -> CuntzMonomial:
        if self.zero:
            return self
        # (S_l S_r^* U^e)^* = U^e S_r S_l^* = S_th(r) S_th(l)^* U^e
        l, r = (self.right, self.left)
        if self.flip:
            l, r = _flip_word(l), _flip_word(r)
        return CuntzMonomial(self.n, l, r, self.flip)

    def __mul__(self, other: CuntzMonomial) -> CuntzMonomial:
        if not isinstance(other, CuntzMonomial):
            return NotImplemented
        if self.n != other.n:
            raise AlphabetMismatch(f"alphabets {self.n} and {other.n}")
        if self.zero or other.zero:
            return CuntzMonomial.zero_of(self.n)
        l2, r2 = other.left, other.right
        if self.flip:
            l2, r2 = _flip_word(l2), _flip_word(r2)
        flip = self.flip ^ other.flip
        r1 = self.right
        if l2[: len(r1)] == r1:
            return CuntzMonomial(self.n, self.left + l2[len(r1):], r2, flip)
        if r1[: len(l2)] == l2:
            return CuntzMonomial(self.n, self.left, r2 + r1[len(l2):], flip)
        return CuntzMonomial.zero_of(self.n)

    def act(self, word: Sequence[int]) -> Word | None:
        """Image of the basis vector indexed by ``word``, or None for zero.

        ``word`` stands for an infinite sequence; it must be at least as long
        as ``right`` for the answer to be determined.
        """
        if self.zero:
            return None
        w = tuple(word)
        if self.flip:
            w = _flip_word(w)
        if len(w) < len(self.right):
            raise ValueError("basis word shorter than the annihilator part")
        if w[: len(self.right)] != self.right:
            return None
        return self.left + w[len(self.right):]

    def __str__(self):
        if self.zero:
            return "0"
        parts = []
        if self.left:
            parts.append("S_" + "".join(map(str, self.left)))
        if self.right:
            parts.append("S_" + "".join(map(str, self.right)) + "*")
        if self.flip:
            parts.append("U")
        return " ".join(parts) or "1"


@dataclass(frozen=True)
class IsometryReport:
    """Checks that ``S_w`` for ``w`` in a word family satisfy the Cuntz relations.

    ``complete`` is True when the Kraft sum is exactly one, ``"limit"`` when a
    truncated infinite family is short by exactly its declared tail mass, and
    False otherwise.
    """

    prefix_free: bool
    complete: Union[bool, str]
    kraft_sum: Fraction
    tail_mass: Fraction | None = None
    violation: tuple[int, int] | None = None

    @property
    def ok(self) -> bool:
        return self.prefix_free and bool(self.complete)


def verify_isometry_family(
    words: Sequence[Sequence], alphabet_size: int, tail_mass: Fraction | None = None
) -> IsometryReport:
    """Prefix-freeness gives ``S_w^* S_v = delta``; Kraft sum one gives ``sum S_w S_w^* = 1``.

    For a truncation of an infinite family pass ``tail_mass``, the Kraft mass
    of the words still missing at the truncation length.
    """
    if not words:
        raise ValueError("empty word family")
    total = kraft_sum(words, alphabet_size)
    pair = find_prefix_pair(words)
    if total == 1:
        complete: Union[bool, str] = True
    elif tail_mass is not None and total + tail_mass == 1:
        complete = "limit"
    else:
        complete = False
    return IsometryReport(pair is None, complete, total, tail_mass, pair)


class Unknown:
    """Answer not determined within ``horizon`` digits; falsy."""

    def __init__(self, horizon: int):
        self.horizon = horizon

    def __bool__(self):
        return False

    def __eq__(self, other):
        return isinstance(other, Unknown) and other.horizon == self.horizon

    def __hash__(self):
        return hash(("unknown", self.horizon))

    def __repr__(self):
        return f"Unknown({self.horizon})"

    def __str__(self):
        return f"unknown({self.horizon})"


NumberSource = Union[Number, RcfStream]


@dataclass
class RepresentationLabel:
    """What the cycle labelled by a number looks like.

    The eigenword ``w`` (present only for eventually periodic itineraries)
    means ``S_w`` fixes the basis vector of the periodic tail.  It is given
    as the least rotation of the period; every rotation works, for a
    different vector of the same cycle.
    """

    scfa: str
    number: str
    itinerary: Itinerary
    atoms: object
    eigenword: Word | None

    def to_json(self) -> dict:
        return {
            "scfa": self.scfa,
            "number": self.number,
            "itinerary": self.itinerary.to_json(),
            "atoms": self.atoms if self.atoms is not OMEGA else str(OMEGA),
            "eigenword": list(self.eigenword) if self.eigenword is not None else None,
        }


def _itineraries(s: Scfa, x: NumberSource, horizon: int) -> list[Itinerary]:
    if isinstance(x, RcfStream):
        return [encode_stream(s, x, horizon)]
    return encode(s, x)


def classify(s: Scfa, x: NumberSource, horizon: int = 32) -> RepresentationLabel:
    """Label the cycle of the representation attached to ``x``.

    Rationals have two itineraries with the same tail under the F_N maps;
    the lexicographically first one is reported.
    """
    it = _itineraries(s, x, horizon)[0]
    atoms = atom_count(it)
    eigen = least_rotation(it.per) if isinstance(it, EventuallyPeriodic) else None
    number = x.name if isinstance(x, RcfStream) else format_number(x)
    return RepresentationLabel(s.name, number, it, atoms, eigen)


def equivalent_reps(s: Scfa, x: NumberSource, y: NumberSource, horizon: int = 64):
    """Whether ``x`` and ``y`` label the same cycle, i.e. are PGL2(Z)-equivalent.

    Only defined for the F_N family.  Exact inputs give a definite answer;
    any stream input returns :class:`Unknown`, since no finite prefix can
    settle tail equivalence of an aperiodic sequence.
    """
    if not is_fn_instance(s):
        raise NotFNFamily(f"{s.name} is not one of the F_N maps")
    if isinstance(x, RcfStream) or isinstance(y, RcfStream):
        for v in (x, y):
            if isinstance(v, RcfStream):
                encode_stream(s, v, horizon)
        return Unknown(horizon)
    return any(tail_equivalent(a, b) for a in encode(s, x) for b in encode(s, y))
