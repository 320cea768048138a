"""Exactly-uniform random Hamiltonian cycles via completion counting.

A cycle is drawn letter by letter through the column automaton.  The
number of accepting completions from every state at every remaining
length is tabulated once, and each letter is then selected with exact
big-integer proportional draws, so the distribution over cycles is
uniform by construction and fully reproducible from the seed.
"""

from __future__ import annotations

import random
from collections import OrderedDict
from dataclasses import dataclass
from fractions import Fraction

from .automaton import automaton
from .errors import DomainError, EmptyEnsembleError
from .geometry import matrix_from_columns, matrix_to_cycle


@dataclass(frozen=True)
class CompletionTable:
    """Counts of accepting completions, reusable across samples.

    layers[k][i] is the number of valid k-letter continuations from
    state i that end in an accepting state; layer n-2 restricted to the
    starter states gives the per-starter cycle totals.
    """

    m: int
    n: int
    layers: tuple[tuple[int, ...], ...]
    starters: tuple[tuple[int, int], ...]   # (state index, cycle total)
    total: int


_table_memo: OrderedDict[tuple[int, int], CompletionTable] = OrderedDict()
_TABLE_MEMO_LIMIT = 32


def completion_table(m: int, n: int) -> CompletionTable:
    """Suffix-completion counts for words of length n-1 at height m."""
    if not (isinstance(m, int) and isinstance(n, int)) or m < 2 or n < 2:
        raise DomainError(f"grid {m} x {n} out of domain, need both >= 2")
    key = (m, n)
    hit = _table_memo.get(key)
    if hit is not None:
        _table_memo.move_to_end(key)
        return hit
    aut = automaton(m - 1)
    layer = tuple(1 if e else 0 for e in aut.ender_flags)
    layers = [layer]
    for _ in range(n - 2):
        layer = tuple(sum(layer[j] for j in dsts) for dsts in aut.succ)
        layers.append(layer)
    starters = tuple((i, layers[-1][i]) for i in aut.starter_idx)
    table = CompletionTable(m, n, tuple(layers), starters,
                            sum(c for _, c in starters))
    _table_memo[key] = table
    while len(_table_memo) > _TABLE_MEMO_LIMIT:
        _table_memo.popitem(last=False)
    return table


@dataclass(frozen=True)
class SampleConfig:
    m: int
    n: int
    seed: int
    count: int = 1


@dataclass(frozen=True)
class SampleResult:
    """One sampled cycle with its exact stepwise selection probabilities."""

    m: int
    n: int
    word: tuple
    matrix: tuple
    steps: tuple[Fraction, ...]

    @property
    def probability(self) -> Fraction:
        p = Fraction(1)
        for s in self.steps:
            p *= s
        return p

    @property
    def edges(self) -> frozenset:
        return matrix_to_cycle(self.matrix)


def draw_below(rng: random.Random, bound: int) -> int:
    """Unbiased integer in [0, bound) by bit-rejection; exact for any size."""
    if bound <= 0:
        raise ValueError("bound must be positive")
    if bound == 1:
        return 0
    bits = bound.bit_length()
    while True:
        x = rng.getrandbits(bits)
        if x < bound:
            return x


def _draw_one(aut, table: CompletionTable, rng: random.Random) -> SampleResult:
    layers = table.layers
    last = len(layers) - 1
    x = draw_below(rng, table.total)
    state = None
    for i, c in table.starters:
        if x < c:
            state = i
            break
        x -= c
    steps = [Fraction(layers[last][state], table.total)]
    path = [state]
    for k in range(last, 0, -1):
        cur = layers[k][state]
        x = draw_below(rng, cur)
        for j in aut.succ[state]:
            c = layers[k - 1][j]
            if x < c:
                steps.append(Fraction(c, cur))
                state = j
                break
            x -= c
        path.append(state)
    word = tuple(aut.states[i].column for i in path)
    return SampleResult(table.m, table.n, word,
                        matrix_from_columns(word), tuple(steps))


def sample_cycle(cfg: SampleConfig) -> SampleResult:
    """One uniformly random cycle; deterministic for a fixed seed."""
    return sample_many(cfg)[0]


def sample_many(cfg: SampleConfig) -> list[SampleResult]:
    """cfg.count independent cycles from one seeded generator stream."""
    if cfg.count < 1:
        raise DomainError(f"sample count {cfg.count} out of domain")
    table = completion_table(cfg.m, cfg.n)
    if table.total == 0:
        raise EmptyEnsembleError(
            f"no Hamiltonian cycles on P{cfg.m} x P{cfg.n}")
    rng = random.Random(cfg.seed)
    aut = automaton(cfg.m - 1)
    return [_draw_one(aut, table, rng) for _ in range(cfg.count)]
