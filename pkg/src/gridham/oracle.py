"""Independent brute-force reference implementations.

Everything here is deliberately written from first principles, without the
column automaton, so the fast code paths can be tested against it.  Sizes
are capped hard; these routines exist for cross-checking, not production.
"""

from __future__ import annotations

from .errors import DomainError, ResourceLimitError
from .geometry import CellMatrix, Edge, edge

_BRUTE_CELL_CAP = 42


def enumerate_cycles_bruteforce(m: int, n: int) -> list[frozenset[Edge]]:
    """All Hamiltonian cycles of the m x n grid as normalized edge sets.

    Canonical search: every such cycle uses both grid edges at the corner
    (0, 0), so paths are rooted there and each cycle is produced once.
    """
    if m < 2 or n < 2:
        raise DomainError(f"grid {m} x {n} has no cycles, need both sides >= 2")
    if m * n > _BRUTE_CELL_CAP:
        raise ResourceLimitError(
            f"brute force capped at {_BRUTE_CELL_CAP} vertices, got {m * n}")

    total = m * n
    def vid(i: int, j: int) -> int:
        return i * n + j

    nbrs: list[tuple[int, ...]] = []
    for i in range(m):
        for j in range(n):
            out = []
            if i > 0:
                out.append(vid(i - 1, j))
            if i < m - 1:
                out.append(vid(i + 1, j))
            if j > 0:
                out.append(vid(i, j - 1))
            if j < n - 1:
                out.append(vid(i, j + 1))
            nbrs.append(tuple(out))

    start, first, target = vid(0, 0), vid(0, 1), vid(1, 0)
    visited = bytearray(total)
    # deg[v]: free neighbours of v, v itself unvisited and not the target
    deg = [len(nbrs[v]) for v in range(total)]
    path = [start, first]
    found: list[list[int]] = []

    def visit(v: int) -> None:
        visited[v] = 1
        for w in nbrs[v]:
            deg[w] -= 1

    def unvisit(v: int) -> None:
        visited[v] = 0
        for w in nbrs[v]:
            deg[w] += 1

    visit(start)
    visit(first)

    def feasible(cur: int, prev: int) -> bool:
        # A free vertex can still get its two cycle edges only from free
        # neighbours (the reserved target among them) or the path head;
        # once that upper bound drops below 2 the branch is dead.  Only
        # vertices around prev and cur can have just changed.
        for w in nbrs[prev] + nbrs[cur]:
            if visited[w] or w == target:
                continue
            avail = deg[w] + (1 if cur in nbrs[w] else 0)
            if avail < 2:
                return False
        if deg[target] == 0 and len(path) < total - 1 and cur not in nbrs[target]:
            return False
        return True

    def extend() -> None:
        cur = path[-1]
        for w in nbrs[cur]:
            if w == target:
                if len(path) == total - 1:
                    found.append(path.copy())
                continue
            if visited[w]:
                continue
            visit(w)
            path.append(w)
            if feasible(w, cur):
                extend()
            path.pop()
            unvisit(w)

    extend()

    cycles = []
    for seq in found:
        seq = seq + [target]
        es = frozenset(
            edge(divmod(seq[k], n), divmod(seq[(k + 1) % total], n))
            for k in range(total))
        cycles.append(es)
    cycles.sort(key=lambda es: tuple(sorted(es)))
    return cycles


# ----------------------------------------------------------------------
# global validity of cell matrices
# ----------------------------------------------------------------------

def validate_matrix_global(matrix: CellMatrix) -> bool:
    """Whole-matrix test of the four inside-region conditions.

    A binary matrix is the cell encoding of some Hamiltonian grid cycle
    exactly when: the 1-cells are edge-connected; the 0-cells are
    edge-connected to the outside; every lattice vertex touches at least
    one 1 and at least one 0 (cells off the matrix count as 0); and no
    vertex sees its two 1-cells diagonally opposite.
    """
    rows = len(matrix)
    cols = len(matrix[0])
    if any(len(r) != cols for r in matrix):
        raise ValueError("ragged matrix")
    if any(b not in (0, 1) for r in matrix for b in r):
        raise ValueError("matrix entries must be 0 or 1")

    def bit(r: int, c: int) -> int:
        if 0 <= r < rows and 0 <= c < cols:
            return matrix[r][c]
        return 0

    for i in range(rows + 1):
        for j in range(cols + 1):
            quad = (bit(i - 1, j - 1), bit(i, j - 1), bit(i - 1, j), bit(i, j))
            s = sum(quad)
            if s == 0 or s == 4:
                return False
            if s == 2 and quad[0] == quad[3]:
                return False

    ones = [(r, c) for r in range(rows) for c in range(cols) if matrix[r][c]]
    if not _connected(ones):
        return False

    zeros = [(r, c) for r in range(rows) for c in range(cols) if not matrix[r][c]]
    boundary_zeros = [
        (r, c) for r, c in zeros
        if r in (0, rows - 1) or c in (0, cols - 1)]
    if not _reaches_all(boundary_zeros, set(zeros)):
        return False
    return True


def _connected(cells: list[tuple[int, int]]) -> bool:
    if not cells:
        return False
    return _reaches_all(cells[:1], set(cells))


def _reaches_all(seeds, cells: set[tuple[int, int]]) -> bool:
    if not cells:
        return True
    stack = list(seeds)
    seen = set(seeds)
    while stack:
        r, c = stack.pop()
        for nb in ((r - 1, c), (r + 1, c), (r, c - 1), (r, c + 1)):
            if nb in cells and nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return seen == cells


def enumerate_valid_matrices(height: int, width: int) -> list[CellMatrix]:
    """All globally valid height x width cell matrices, column by column.

    Columns are grown left to right, pruning on the vertex conditions,
    which only ever relate adjacent columns; the connectivity conditions
    are then checked on each completed matrix.
    """
    if height < 1 or width < 1:
        raise DomainError("matrix dimensions must be positive")
    if height * width > _BRUTE_CELL_CAP:
        raise ResourceLimitError(
            f"matrix enumeration capped at {_BRUTE_CELL_CAP} cells")

    masks = [tuple((mask >> r) & 1 for r in range(height))
             for mask in range(1 << height)]
    zero = masks[0]

    def pair_ok(left, right) -> bool:
        for i in range(height + 1):
            a = left[i - 1] if i > 0 else 0
            b = left[i] if i < height else 0
            c = right[i - 1] if i > 0 else 0
            d = right[i] if i < height else 0
            s = a + b + c + d
            if s == 0 or s == 4:
                return False
            if s == 2 and a == d:
                return False
        return True

    out: list[CellMatrix] = []

    def grow(cols: list[tuple[int, ...]]) -> None:
        if len(cols) == width:
            if pair_ok(cols[-1], zero):
                rows = tuple(tuple(col[r] for col in cols)
                             for r in range(height))
                if validate_matrix_global(rows):
                    out.append(rows)
            return
        for cand in masks:
            if pair_ok(cols[-1] if cols else zero, cand):
                cols.append(cand)
                grow(cols)
                cols.pop()

    grow([])
    return out
