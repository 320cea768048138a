"""Column automaton for Hamiltonian cycles of rectangular grid graphs.

A Hamiltonian cycle of the (M+1) x n grid is a closed curve on the lattice,
and each of the M x (n-1) unit cells lies either inside or outside of it.
Reading the resulting 0/1 cell matrix column by column gives a regular
language; this module builds its acceptor.

A state is a pair (column, blocks): the bits of the current cell column and
the partition of its 1-rows into classes connected to each other through
inside cells strictly to the left.  Rows are numbered 1..M top to bottom.
A column w may follow state (u, blocks) iff, writing u_0 = u_{M+1} = w_0 =
w_{M+1} = 0 for the virtual outside rows:

* vertex conditions, for every lattice vertex i = 0..M between the two
  columns, with quad (u_i, u_{i+1}, w_i, w_{i+1}) of surrounding cells:
  the quad contains at least one 1 and at least one 0 (the curve passes
  through every vertex), and never equals (1,0,0,1) or (0,1,1,0) (the
  curve may not cross itself);
* survival: every block contains a row r with w_r = 1, otherwise a piece
  of the curve would close up early, disconnecting the cycle;
* no sealed pocket: an enclosed zero region open only to the right must
  keep at least one of its gap rows open (w_r = 0 for some row r of the
  pocket class).

Pockets are derived from the state alone.  A gap is a maximal run of
0-rows strictly between 1-rows of the column.  Consecutive members x < y
of a block form an arc; an arc spans a gap when x is at or above the
gap's upper flank and y at or below the lower one.  A gap with no
spanning arc opens to the outside; gaps sharing the same innermost
(shortest) spanning arc belong to one enclosed pocket class.

Starters and enders are exactly the states compatible with the virtual
all-zero column on the left respectively right boundary.
"""

from __future__ import annotations

import json
from functools import lru_cache
from typing import Iterator, NamedTuple, Optional

Column = tuple[int, ...]
Blocks = tuple[tuple[int, ...], ...]

FORMAT_NAME = "gridham-automaton"
FORMAT_VERSION = 1


class State(NamedTuple):
    column: Column
    blocks: Blocks

    def __repr__(self) -> str:  # compact: [1,1,0,1,1]{{1,2},{4,5}}
        bits = "".join(str(b) for b in self.column)
        blocks = ",".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks)
        return f"[{bits}]{{{blocks}}}"


class Pocket(NamedTuple):
    rows: tuple[int, ...]
    outside: bool


def runs(column: Column) -> Blocks:
    """Maximal intervals of consecutive 1-rows, as sorted row tuples."""
    out = []
    cur: list[int] = []
    for i, bit in enumerate(column, start=1):
        if bit:
            cur.append(i)
        elif cur:
            out.append(tuple(cur))
            cur = []
    if cur:
        out.append(tuple(cur))
    return tuple(out)


def _canon_blocks(groups) -> Blocks:
    return tuple(sorted(tuple(sorted(g)) for g in groups))


def _boundary_column_ok(column: Column) -> bool:
    # compatibility with the virtual all-zero column: first and last row
    # set, no two adjacent zero rows
    if not column or column[0] != 1 or column[-1] != 1:
        return False
    return all(a or b for a, b in zip(column, column[1:]))


def starters(width: int) -> tuple[State, ...]:
    """All states that may begin a word (left boundary against all-zero)."""
    if width < 1:
        raise ValueError("width must be >= 1")
    found = []
    for mask in range(1 << width):
        col = tuple((mask >> i) & 1 for i in range(width))
        if _boundary_column_ok(col):
            found.append(State(col, runs(col)))
    found.sort()
    return tuple(found)


def is_ender(state: State) -> bool:
    """May the word end here? (right boundary against all-zero.)

    All connectivity classes must already have merged into one, and the
    column must satisfy the boundary vertex conditions.
    """
    return len(state.blocks) == 1 and _boundary_column_ok(state.column)


def pockets(state: State) -> tuple[Pocket, ...]:
    """Pocket classes of a state, ordered by smallest gap row.

    Enclosed classes group all gaps sharing an innermost spanning arc;
    each gap with no spanning arc is its own outside-connected entry.
    """
    col = state.column
    ones = [i for i, b in enumerate(col, start=1) if b]
    gaps = []
    for a, b in zip(ones, ones[1:]):
        if b - a > 1:
            gaps.append(tuple(range(a + 1, b)))
    if not gaps:
        return ()
    arcs = []
    for block in state.blocks:
        arcs.extend(zip(block, block[1:]))
    grouped: dict[tuple[int, int], list[int]] = {}
    out = []
    for gap in gaps:
        lo, hi = gap[0] - 1, gap[-1] + 1   # flanking 1-rows
        spanning = [(y - x, x, y) for x, y in arcs if x <= lo and y >= hi]
        if not spanning:
            out.append((gap[0], Pocket(gap, True)))
        else:
            _, x, y = min(spanning)
            grouped.setdefault((x, y), []).extend(gap)
    for rows in grouped.values():
        out.append((rows[0], Pocket(tuple(sorted(rows)), False)))
    out.sort()
    return tuple(p for _, p in out)


# ----------------------------------------------------------------------
# transitions
# ----------------------------------------------------------------------

def _quad_ok(nw: int, sw: int, ne: int, se: int) -> bool:
    s = nw + sw + ne + se
    if s == 0 or s == 4:
        return False                       # vertex not on the curve / engulfed
    if s == 2 and nw == se:
        return False                       # diagonal: curve crosses itself
    return True


def _vertex_conditions(u: Column, w: Column) -> bool:
    m = len(u)
    prev_u, prev_w = 0, 0
    for i in range(m):
        if not _quad_ok(prev_u, u[i], prev_w, w[i]):
            return False
        prev_u, prev_w = u[i], w[i]
    return prev_u + prev_w >= 1            # bottom boundary vertex
    # note: the i = 0 iteration covers the top boundary vertex


def _merge_runs(blocks: Blocks, w: Column) -> Blocks:
    """Blocks of the successor: runs of w glued along shared old blocks."""
    new_runs = runs(w)
    parent = list(range(len(new_runs)))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    row_to_run = {}
    for ri, run in enumerate(new_runs):
        for r in run:
            row_to_run[r] = ri
    for block in blocks:
        first = None
        for r in block:
            ri = row_to_run.get(r)
            if ri is None:
                continue
            if first is None:
                first = find(ri)
            else:
                parent[find(ri)] = first
    groups: dict[int, list[int]] = {}
    for ri, run in enumerate(new_runs):
        groups.setdefault(find(ri), []).extend(run)
    return _canon_blocks(groups.values())


def transition(state: State, column: Column) -> Optional[State]:
    """Successor state when `column` follows, or None if forbidden."""
    u = state.column
    if len(column) != len(u):
        raise ValueError("column width mismatch")
    if any(b not in (0, 1) for b in column):
        raise ValueError("column entries must be bits")
    if not _vertex_conditions(u, column):
        return None
    for block in state.blocks:
        if not any(column[r - 1] for r in block):
            return None                    # a curve piece would close early
    for pocket in pockets(state):
        if pocket.outside:
            continue
        if all(column[r - 1] for r in pocket.rows):
            return None                    # would seal an enclosed hole
    return State(column, _merge_runs(state.blocks, column))


def successors(state: State) -> list[State]:
    """All legal successor states, in canonical order."""
    u = state.column
    m = len(u)
    # per-position bookkeeping for early survival/pocket pruning
    block_last = {}
    for block in state.blocks:
        block_last[block[-1]] = block
    pocket_last = {}
    for pocket in pockets(state):
        if not pocket.outside:
            pocket_last[pocket.rows[-1]] = pocket.rows

    out = []
    w = [0] * m

    def place(i: int, prev_u: int, prev_w: int) -> None:
        for bit in (0, 1):
            if not _quad_ok(prev_u, u[i], prev_w, bit):
                continue
            w[i] = bit
            row = i + 1
            block = block_last.get(row)
            if block is not None and not any(w[r - 1] for r in block):
                continue
            prows = pocket_last.get(row)
            if prows is not None and all(w[r - 1] for r in prows):
                continue
            if i + 1 == m:
                if u[i] + bit >= 1:        # bottom boundary vertex
                    col = tuple(w)
                    out.append(State(col, _merge_runs(state.blocks, col)))
            else:
                place(i + 1, u[i], bit)
        w[i] = 0

    place(0, 0, 0)
    out.sort()
    return out


# ----------------------------------------------------------------------
# the trimmed automaton
# ----------------------------------------------------------------------

class Automaton:
    """Trimmed column automaton for a fixed matrix height (`width` rows).

    States are kept in canonical order (column lexicographic, then block
    structure).  Every state is reachable from a starter and can reach an
    ender.  In the 1-based digraph view, vertex 1 is the start, vertices
    2..N+1 are the states, and vertex N+2 is the accept vertex.
    """

    def __init__(self, width: int, states: tuple[State, ...],
                 succ: tuple[tuple[int, ...], ...],
                 starter_idx: tuple[int, ...],
                 ender_flags: tuple[bool, ...]):
        self.width = width
        self.states = states
        self.succ = succ
        self.starter_idx = starter_idx
        self.ender_flags = ender_flags
        self.index = {s: i for i, s in enumerate(states)}

    @property
    def state_count(self) -> int:
        return len(self.states)

    def predecessor_lists(self) -> list[list[int]]:
        preds: list[list[int]] = [[] for _ in self.states]
        for i, targets in enumerate(self.succ):
            for t in targets:
                preds[t].append(i)
        return preds

    def digraph(self) -> list[set[int]]:
        """1-based adjacency (index 0 unused): start, states, accept."""
        n = len(self.states)
        adj: list[set[int]] = [set() for _ in range(n + 3)]
        adj[1] = {i + 2 for i in self.starter_idx}
        for i, targets in enumerate(self.succ):
            adj[i + 2] = {t + 2 for t in targets}
            if self.ender_flags[i]:
                adj[i + 2].add(n + 2)
        return adj

    def columns(self) -> tuple[Column, ...]:
        return tuple(sorted({s.column for s in self.states}))

    # -- serialization (cache is an optimization only) -------------------

    def to_json(self) -> str:
        payload = {
            "format": FORMAT_NAME,
            "version": FORMAT_VERSION,
            "width": self.width,
            "states": [[list(s.column), [list(b) for b in s.blocks]]
                       for s in self.states],
            "succ": [list(t) for t in self.succ],
            "starters": list(self.starter_idx),
            "enders": [i for i, f in enumerate(self.ender_flags) if f],
        }
        return json.dumps(payload, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "Automaton":
        payload = json.loads(text)
        if payload.get("format") != FORMAT_NAME:
            raise ValueError("not an automaton cache file")
        if payload.get("version") != FORMAT_VERSION:
            raise ValueError("automaton cache version mismatch")
        states = tuple(State(tuple(col), tuple(tuple(b) for b in blocks))
                       for col, blocks in payload["states"])
        enders = set(payload["enders"])
        return cls(payload["width"], states,
                   tuple(tuple(t) for t in payload["succ"]),
                   tuple(payload["starters"]),
                   tuple(i in enders for i in range(len(states))))

    def __eq__(self, other) -> bool:
        return (isinstance(other, Automaton)
                and self.width == other.width and self.states == other.states
                and self.succ == other.succ
                and self.starter_idx == other.starter_idx
                and self.ender_flags == other.ender_flags)


def build_automaton(width: int) -> Automaton:
    """Closure of the starters under transitions, trimmed to useful states."""
    if width < 1:
        raise ValueError("width must be >= 1")
    start = starters(width)
    succ_map: dict[State, list[State]] = {}
    frontier = list(start)
    seen = set(start)
    while frontier:
        state = frontier.pop()
        nxt = successors(state)
        succ_map[state] = nxt
        for t in nxt:
            if t not in seen:
                seen.add(t)
                frontier.append(t)
    # trim: keep states from which an ender is reachable (all states are
    # already reachable from a starter by construction)
    rev: dict[State, list[State]] = {s: [] for s in seen}
    for s, targets in succ_map.items():
        for t in targets:
            rev[t].append(s)
    kept = {s for s in seen if is_ender(s)}
    frontier = list(kept)
    while frontier:
        state = frontier.pop()
        for p in rev[state]:
            if p not in kept:
                kept.add(p)
                frontier.append(p)
    states = tuple(sorted(kept))
    index = {s: i for i, s in enumerate(states)}
    succ = tuple(tuple(index[t] for t in succ_map[s] if t in kept)
                 for s in states)
    starter_idx = tuple(index[s] for s in start if s in kept)
    ender_flags = tuple(is_ender(s) for s in states)
    return Automaton(width, states, succ, starter_idx, ender_flags)


@lru_cache(maxsize=None)
def automaton(width: int) -> Automaton:
    """Memoized accessor; automata are immutable once built."""
    return build_automaton(width)


def accepted_words(aut: Automaton, length: int) -> Iterator[tuple[Column, ...]]:
    """All accepted words of the given length (for small sizes only)."""
    if length < 1:
        return
    def walk(i: int, remaining: int, acc):
        if remaining == 0:
            if aut.ender_flags[i]:
                yield tuple(acc)
            return
        for t in aut.succ[i]:
            acc.append(aut.states[t].column)
            yield from walk(t, remaining - 1, acc)
            acc.pop()
    for i in aut.starter_idx:
        yield from walk(i, length - 1, [aut.states[i].column])
