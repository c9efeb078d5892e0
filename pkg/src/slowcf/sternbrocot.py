"""Stern-Brocot factorisation of SCFA branches and the F_N Serret transducer.

Every branch ``h_i`` is ``b_nu T^e`` where ``b_nu`` is a word in the two
backwards-map branches ``b1 = x/(x+1)`` (letter ``L``) and
``b2 = 1/(2-x)`` (letter ``R``) and ``T(x) = 1 - x``.  The words are the
leaves of the mediant-splitting tree that produced the partition.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import SearchExhausted
from .exact import IDENTITY, Mobius
from .scfa import FLIP, Scfa, builtin
from .symbolic import EventuallyPeriodic

__all__ = [
    "B1",
    "B2",
    "BWord",
    "CodeCheck",
    "factor_branch",
    "prefix_code_check",
    "psi_embedding",
    "flip_normalize",
    "Edge",
    "Transducer",
    "build_transducer_fn",
    "fn_case_oracle",
    "matches_case_oracle",
    "state_label",
    "state_matrix",
]

B1 = Mobius(1, 0, 1, 1)
B2 = Mobius(0, 1, -1, 2)
_LETTER = {"L": B1, "R": B2}
_SWAP = {"L": "R", "R": "L"}


@dataclass(frozen=True)
class BWord:
    """``b_letters`` followed by ``T**flip``."""

    letters: str
    flip: int = 0

    def __post_init__(self):
        if set(self.letters) - {"L", "R"}:
            raise ValueError(f"letters must be L/R, got {self.letters!r}")
        if self.flip not in (0, 1):
            raise ValueError("flip is 0 or 1")

    @property
    def matrix(self) -> Mobius:
        m = IDENTITY
        for ch in self.letters:
            m = m @ _LETTER[ch]
        return m @ FLIP if self.flip else m

    def __str__(self):
        return (self.letters or "1") + ("T" if self.flip else "")


def factor_branch(s: Scfa, i: int) -> BWord:
    """Walk the Stern-Brocot tree from [0, 1] down to cell ``i``."""
    target = s.interval(i)
    lo, hi = Fraction(0), Fraction(1)
    path = []
    while (lo, hi) != (target.lo, target.hi):
        med = Fraction(lo.numerator + hi.numerator, lo.denominator + hi.denominator)
        if target.hi <= med:
            path.append("L")
            hi = med
        else:
            path.append("R")
            lo = med
    word = BWord("".join(path), (1 - s.signs[i - 1]) // 2)
    assert word.matrix == s.branch(i), (word, s.branch(i))
    return word


@dataclass(frozen=True)
class CodeCheck:
    """Outcome of a prefix-code test.

    ``status`` is ``"complete"``, ``"incomplete"`` or ``"prefix_violation"``;
    for a violation ``pair`` holds the 0-based indices ``(i, j)`` with word
    ``i`` a prefix of word ``j``.
    """

    status: str
    kraft_sum: Fraction
    pair: tuple[int, int] | None = None

    @property
    def prefix_free(self) -> bool:
        return self.status != "prefix_violation"

    @property
    def complete(self) -> bool:
        return self.status == "complete"


def find_prefix_pair(words: Sequence[Sequence]) -> tuple[int, int] | None:
    """Indices ``(i, j)`` of some word ``i`` that prefixes word ``j``, or None.

    In lexicographic order a word that prefixes anything prefixes its
    immediate successor, so adjacent pairs suffice.
    """
    order = sorted(range(len(words)), key=lambda k: tuple(words[k]))
    for a, b in zip(order, order[1:]):
        u, v = tuple(words[a]), tuple(words[b])
        if v[: len(u)] == u:
            return a, b
    return None


def kraft_sum(words: Iterable[Sequence], alphabet_size: int) -> Fraction:
    return sum((Fraction(1, alphabet_size ** len(w)) for w in words), Fraction(0))


def prefix_code_check(words: Sequence[Sequence], alphabet_size: int = 2) -> CodeCheck:
    total = kraft_sum(words, alphabet_size)
    pair = find_prefix_pair(words)
    if pair is not None:
        return CodeCheck("prefix_violation", total, pair)
    return CodeCheck("complete" if total == 1 else "incomplete", total)


def psi_embedding(s: Scfa) -> dict[int, BWord]:
    """Branch ``i`` -> its factorisation; the letter words form a complete prefix code."""
    words = {i: factor_branch(s, i) for i in range(1, s.n + 1)}
    check = prefix_code_check([w.letters for w in words.values()])
    assert check.complete, check
    return words


def flip_normalize(word: str) -> BWord:
    """Push every ``T`` in a word over ``L, R, T`` to the right end.

    Uses ``T b1 = b2 T`` and ``T b2 = b1 T``: a letter read under an odd
    number of pending flips is swapped.
    """
    out = []
    parity = 0
    for ch in word.replace(" ", ""):
        if ch == "T":
            parity ^= 1
        elif ch in _SWAP:
            out.append(_SWAP[ch] if parity else ch)
        else:
            raise ValueError(f"unexpected letter {ch!r}")
    return BWord("".join(out), parity)


# -- transducer --------------------------------------------------------------

State = tuple[int, int]  # (k, e) stands for b1^k T^e


def state_matrix(state: State) -> Mobius:
    k, e = state
    m = B1 ** k
    return m @ FLIP if e else m


def state_label(state: State) -> str:
    k, e = state
    return f"b1^{k}" + (" T" if e else "")


@dataclass(frozen=True)
class Edge:
    source: State
    input: int
    output: tuple[int, ...]
    target: State


@dataclass(frozen=True)
class Transducer:
    n: int
    states: tuple[State, ...]
    edges: dict

    @property
    def start(self) -> State:
        return (0, 0)

    def edge(self, state: State, digit: int) -> Edge:
        return self.edges[(state, digit)]

    def is_deterministic(self) -> bool:
        return all(e.source == st and e.input == d for (st, d), e in self.edges.items())

    def is_total(self) -> bool:
        return all((st, d) in self.edges for st in self.states for d in range(1, self.n + 1))

    def self_loops_echo(self) -> bool:
        """True if every cycle is a self loop and every self loop copies its input.

        This is what forces an infinite run to end in one repeated self loop
        whose output equals its input.
        """
        for e in self.edges.values():
            if e.source == e.target and e.output != (e.input,):
                return False
        graph = {st: {e.target for e in self.edges.values() if e.source == st and e.target != st}
                 for st in self.states}
        state_of = {}

        def visit(st) -> bool:
            state_of[st] = "open"
            for nxt in graph[st]:
                mark = state_of.get(nxt)
                if mark == "open" or (mark is None and not visit(nxt)):
                    return False
            state_of[st] = "done"
            return True

        return all(state_of.get(st) == "done" or visit(st) for st in self.states)

    def run(self, it: EventuallyPeriodic, start: State = (0, 0)) -> EventuallyPeriodic:
        """Feed an eventually periodic input; return the eventually periodic output."""
        out: list[int] = []
        state = start
        for d in it.pre:
            e = self.edges[(state, d)]
            out.extend(e.output)
            state = e.target
        seen: dict[tuple[State, int], int] = {}
        pos = 0
        while (state, pos) not in seen:
            seen[(state, pos)] = len(out)
            e = self.edges[(state, it.per[pos])]
            out.extend(e.output)
            state = e.target
            pos = (pos + 1) % len(it.per)
        mark = seen[(state, pos)]
        return EventuallyPeriodic(tuple(out[:mark]), tuple(out[mark:]))

    def to_dot(self) -> str:
        ids = {st: f"s{st[0]}_{st[1]}" for st in self.states}
        lines = [f"digraph fN_{self.n} {{", "  rankdir=LR;"]
        for st in self.states:
            lines.append(f'  {ids[st]} [label="{state_label(st)}"];')
        for (st, d), e in sorted(self.edges.items()):
            out = " ".join(f"h_{v}" for v in e.output) or "-"
            lines.append(f'  {ids[st]} -> {ids[e.target]} [label="h_{d} / {out}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "states": [state_label(st) for st in self.states],
            "edges": [
                {"from": state_label(e.source), "input": e.input,
                 "output": list(e.output), "to": state_label(e.target)}
                for _, e in sorted(self.edges.items())
            ],
        }


def _peel(s: Scfa, x: Mobius, max_len: int) -> tuple[int, ...] | None:
    """Write ``x`` as ``h_mu`` for a word ``mu`` of length at most ``max_len``."""
    word = []
    cells = [(iv.lo, iv.hi) for iv in s.partition]
    while not x.is_identity():
        if len(word) >= max_len:
            return None
        d0, d1 = x.d, x.c + x.d
        if d0 == 0 or d1 == 0 or (d0 > 0) != (d1 > 0):
            return None  # pole on [0, 1]
        a, b = Fraction(x.b, d0), Fraction(x.a + x.b, d1)
        lo, hi = min(a, b), max(a, b)
        for i, (cl, ch) in enumerate(cells):
            if cl <= lo and hi <= ch:
                word.append(i + 1)
                x = s.inverse_branches[i] @ x
                break
        else:
            return None
    return tuple(word)


def build_transducer_fn(n: int) -> Transducer:
    """Construct the Serret transducer of ``F_n``.

    An edge from state ``v`` on input ``h_i`` is the unique pair
    ``(mu, w)`` with ``v h_i = h_mu w`` in PGL2(Z) and ``w`` a state.  For
    each candidate ``w`` the matrix ``v h_i w^-1`` is peeled into branches
    greedily; output words longer than ``2n`` are not searched.
    """
    if n < 2:
        raise ValueError("F_N needs N >= 2")
    s = builtin(f"fN:{n}")
    states = tuple((k, e) for e in (0, 1) for k in range(n - 1))
    mats = {st: state_matrix(st) for st in states}
    edges = {}
    for st in states:
        for i in range(1, n + 1):
            target = mats[st] @ s.branch(i)
            found = []
            for w in states:
                mu = _peel(s, target @ mats[w].inverse(), 2 * n)
                if mu is not None:
                    found.append(Edge(st, i, mu, w))
            if not found:
                raise SearchExhausted(f"no edge for state {state_label(st)}, input h_{i}")
            if len(found) > 1:
                raise SearchExhausted(f"ambiguous edge for state {state_label(st)}, input h_{i}: {found}")
            edges[(st, i)] = found[0]
    t = Transducer(n, states, edges)
    assert t.is_deterministic() and t.is_total()
    return t


def fn_case_oracle(n: int) -> dict[tuple[State, int], tuple[State, tuple[int, ...] | None]]:
    """Edge table written out case by case; ``None`` outputs are not pinned down.

    Inputs: ``h_1 = b1^(n-1)`` and ``h_i = b1^(n-i) b2 T`` for ``i >= 2``.
    """
    table = {}
    one = (0, 0)
    for k in range(n - 1):
        table[((k, 0), 1)] = ((k, 0), (1,))
        for i in range(2, n + 1):
            table[((k, 0), i)] = (one, (i,) if k == 0 else None)
        table[((k, 1), 1)] = ((n - 2, 0), None)
        for i in range(2, n):
            table[((k, 1), i)] = (one, None)
        table[((k, 1), n)] = (((k + 1, 0), None) if k != n - 2 else (one, None))
    return table


def matches_case_oracle(t: Transducer) -> list[str]:
    """Disagreements between a built transducer and :func:`fn_case_oracle`."""
    problems = []
    for key, (target, output) in fn_case_oracle(t.n).items():
        e = t.edges[key]
        if e.target != target:
            problems.append(f"{key}: goes to {e.target}, expected {target}")
        if output is not None and e.output != output:
            problems.append(f"{key}: outputs {e.output}, expected {output}")
    return problems


