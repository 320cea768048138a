"""Geometry of grid cycles: the cell-matrix encoding and plot rendering.

Vertices of the m x n grid are (row, col) pairs with (0, 0) top left, row
increasing downward.  A closed non-crossing curve through all vertices
splits the (m-1) x (n-1) unit cells into inside and outside; the cell
matrix records inside cells as 1.  An edge of the grid lies on the curve
exactly when the two faces it separates (cells, or the outside) carry
different bits, and conversely a cell is inside exactly when a ray drawn
to the left from its centre crosses the curve an odd number of times.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidCycleError

Vertex = tuple[int, int]
Edge = tuple[Vertex, Vertex]
CellMatrix = tuple[tuple[int, ...], ...]


def edge(u: Vertex, v: Vertex) -> Edge:
    return (u, v) if u <= v else (v, u)


def matrix_from_columns(columns) -> CellMatrix:
    cols = [tuple(c) for c in columns]
    if not cols:
        raise ValueError("need at least one column")
    height = len(cols[0])
    if any(len(c) != height for c in cols):
        raise ValueError("ragged columns")
    return tuple(tuple(col[r] for col in cols) for r in range(height))


def matrix_to_columns(matrix: CellMatrix) -> list[tuple[int, ...]]:
    return [tuple(row[j] for row in matrix) for j in range(len(matrix[0]))]


# ----------------------------------------------------------------------
# matrix <-> cycle
# ----------------------------------------------------------------------

def matrix_to_cycle(matrix: CellMatrix) -> frozenset[Edge]:
    """Boundary edges of the inside region described by the matrix.

    Raises InvalidCycleError (naming an offending vertex) unless the result
    is a single closed curve through every vertex of the grid.
    """
    rows = len(matrix)
    if rows == 0 or len(matrix[0]) == 0:
        raise ValueError("matrix must be nonempty")
    cols = len(matrix[0])
    if any(len(r) != cols for r in matrix):
        raise ValueError("ragged matrix")
    m, n = rows + 1, cols + 1

    def bit(r: int, c: int) -> int:
        if 1 <= r <= rows and 1 <= c <= cols:
            return matrix[r - 1][c - 1]
        return 0

    edges = set()
    for i in range(m):
        for j in range(n - 1):
            if bit(i, j + 1) != bit(i + 1, j + 1):
                edges.add(edge((i, j), (i, j + 1)))
    for i in range(m - 1):
        for j in range(n):
            if bit(i + 1, j) != bit(i + 1, j + 1):
                edges.add(edge((i, j), (i + 1, j)))
    _check_single_cycle(frozenset(edges), m, n)
    return frozenset(edges)


def _check_single_cycle(edges: frozenset[Edge], m: int, n: int) -> None:
    deg: dict[Vertex, list[Vertex]] = {}
    for u, v in edges:
        deg.setdefault(u, []).append(v)
        deg.setdefault(v, []).append(u)
    for i in range(m):
        for j in range(n):
            d = len(deg.get((i, j), ()))
            if d != 2:
                raise InvalidCycleError(
                    f"vertex {(i, j)} lies on {d} curve edges, need 2")
    start = (0, 0)
    seen = {start}
    prev, cur = None, start
    while True:
        a, b = deg[cur]
        nxt = b if a == prev else a
        if nxt == start:
            break
        seen.add(nxt)
        prev, cur = cur, nxt
    if len(seen) != m * n:
        raise InvalidCycleError(
            f"curve through {(0, 0)} visits {len(seen)} of {m * n} vertices")


def cycle_to_matrix(edges: frozenset[Edge]) -> CellMatrix:
    """Inverse of matrix_to_cycle: inside bits by ray-crossing parity."""
    if not edges:
        raise InvalidCycleError("empty edge set")
    vertices = {v for e in edges for v in e}
    m = max(i for i, _ in vertices) + 1
    n = max(j for _, j in vertices) + 1
    if min(i for i, _ in vertices) != 0 or min(j for _, j in vertices) != 0:
        raise InvalidCycleError("cycle does not start at the grid origin")
    _check_single_cycle(edges, m, n)
    out = []
    for r in range(1, m):
        parity = 0
        row = []
        for c in range(1, n):
            if edge((r - 1, c - 1), (r, c - 1)) in edges:
                parity ^= 1
            row.append(parity)
        out.append(tuple(row))
    return tuple(out)


# ----------------------------------------------------------------------
# rendering
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class RenderOptions:
    format: str = "svg"
    cell_size: int = 24
    margin: int = 12

    def __post_init__(self):
        if self.format not in ("ascii", "svg"):
            raise ValueError("format must be 'ascii' or 'svg'")
        if self.cell_size <= 0 or self.margin < 0:
            raise ValueError("cell_size must be positive, margin nonnegative")


def render_ascii(edges: frozenset[Edge]) -> str:
    """Character-grid plot: '+' vertices, '-' and '|' edges."""
    vertices = {v for e in edges for v in e}
    m = max(i for i, _ in vertices) + 1
    n = max(j for _, j in vertices) + 1
    grid = [[" "] * (2 * n - 1) for _ in range(2 * m - 1)]
    for i in range(m):
        for j in range(n):
            grid[2 * i][2 * j] = "+"
    for (i1, j1), (i2, j2) in edges:
        if i1 == i2:
            grid[2 * i1][j1 + j2] = "-"
        else:
            grid[i1 + i2][2 * j1] = "|"
    return "\n".join("".join(line) for line in grid)


def _trace(edges: frozenset[Edge]) -> list[Vertex]:
    nbr: dict[Vertex, list[Vertex]] = {}
    for u, v in edges:
        nbr.setdefault(u, []).append(v)
        nbr.setdefault(v, []).append(u)
    start = min(nbr)
    path = [start]
    prev, cur = None, start
    while True:
        a, b = sorted(nbr[cur])
        nxt = b if a == prev else a
        if nxt == start:
            break
        path.append(nxt)
        prev, cur = cur, nxt
    return path


def render_svg(edges: frozenset[Edge], opts: RenderOptions = RenderOptions()) -> bytes:
    """Deterministic standalone SVG document with one closed path."""
    path = _trace(edges)
    vertices = {v for e in edges for v in e}
    m = max(i for i, _ in vertices) + 1
    n = max(j for _, j in vertices) + 1
    cs, mg = opts.cell_size, opts.margin
    width = 2 * mg + cs * (n - 1)
    height = 2 * mg + cs * (m - 1)

    def xy(v: Vertex) -> str:
        i, j = v
        return f"{mg + cs * j} {mg + cs * i}"

    d = f"M {xy(path[0])} " + " ".join(f"L {xy(v)}" for v in path[1:]) + " Z"
    doc = (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">\n'
        f'<path d="{d}" fill="none" stroke="black" stroke-width="2" '
        'stroke-linejoin="miter"/>\n'
        "</svg>\n"
    )
    return doc.encode("utf-8")
