"""Exact Hamiltonian-cycle counting on rectangular grids.

Counts for the m x n grid come from the column automaton of height m-1:
each accepted word of length n-1 is the cell matrix of exactly one cycle.
Since every walk through the automaton's graph has one extra edge (into
the accept vertex), the coefficient of z^n in the walk series is the
count for n grid columns directly.

Large n goes through the rational generating function: the series
satisfies an integer linear recurrence (order bounded by the state
count), fitted once, verified exactly, and optionally persisted in a
small JSON cache, one file per height.
"""

from __future__ import annotations

import json
import os
import tempfile
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .algebra import RatFunc, UniPoly, series_of_ratfunc
from .automaton import automaton
from .errors import DomainError, ResourceLimitError
from .multipoly import MultiPoly
from .walks import WalkSeries, WeightedDigraph, walk_gf

CACHE_ENV = "GRIDHAM_CACHE_DIR"
_CACHE_FORMAT = "gridham-gf"
_CACHE_VERSION = 1
_SPOT_CHECK_TERMS = 24
# below this length a plain sweep is cheaper than fitting a recurrence
_DIRECT_SWEEP_LIMIT = 256
_UNCACHED_SWEEP_LIMIT = 4096
_SYMBOLIC_HEIGHT_LIMIT = 5
_DEFAULT_MAX_TERMS = 500_000

_gf_memo: dict[int, RatFunc] = {}


def _require_grid(m: int, n: int) -> None:
    if not isinstance(m, int) or not isinstance(n, int) or m < 2 or n < 2:
        raise DomainError(f"grid {m} x {n} out of domain, need integers >= 2")


def _unit_graph(m: int) -> WeightedDigraph:
    return WeightedDigraph.from_automaton(automaton(m - 1))


# ----------------------------------------------------------------------
# plain counting
# ----------------------------------------------------------------------

def count_series(m: int, last_n: int) -> list[int]:
    """Counts for P_m x P_n, n = 0..last_n (entries below n=2 are zero)."""
    if not isinstance(m, int) or m < 2:
        raise DomainError(f"height {m} out of domain, need an integer >= 2")
    if last_n < 0:
        raise DomainError("series length must be nonnegative")
    return [int(a) for a in WalkSeries(_unit_graph(m)).upto(last_n)]


def count_cycles(m: int, n: int, *, cache_dir=None, no_cache: bool = False) -> int:
    """Exact number of Hamiltonian cycles of the m x n grid graph."""
    _require_grid(m, n)
    if m > n:
        m, n = n, m
    if n <= _DIRECT_SWEEP_LIMIT:
        return int(WalkSeries(_unit_graph(m)).coeff(n))
    f = None
    if not no_cache:
        f = _gf_load_only(m, cache_dir)
    if f is None and n <= _UNCACHED_SWEEP_LIMIT:
        return int(WalkSeries(_unit_graph(m)).coeff(n))
    if f is None:
        f = gf_count(m, cache_dir=cache_dir, no_cache=no_cache)
    return _series_term_of_gf(f, n)


def _series_term_of_gf(f: RatFunc, n: int) -> int:
    """Coefficient of z^n, by integer recurrence when possible."""
    den, num = f.den, f.num
    order = den.degree
    start = max(order, num.degree + 1)
    lead = series_of_ratfunc(f, min(n, start))
    if n < len(lead):
        a = lead[n]
        if a.denominator != 1:
            raise ValueError("count series is not integral")
        return a.numerator
    d0 = den.coeff(0)
    rec = [-(den.coeff(i) / d0) for i in range(1, order + 1)]
    if all(c.denominator == 1 for c in rec) and all(
            a.denominator == 1 for a in lead):
        coeffs = [(i, c.numerator) for i, c in enumerate(rec, start=1)
                  if c.numerator]
        seq = [a.numerator for a in lead]
        for k in range(len(seq), n + 1):
            acc = 0
            for i, c in coeffs:
                acc += c * seq[k - i]
            seq.append(acc)
        return seq[n]
    return int(series_of_ratfunc(f, n)[n])


# ----------------------------------------------------------------------
# generating functions and their cache
# ----------------------------------------------------------------------

def _cache_roots(cache_dir) -> list[Path]:
    roots = []
    if cache_dir is not None:
        roots.append(Path(cache_dir))
    env = os.environ.get(CACHE_ENV)
    if env:
        roots.append(Path(env))
    packaged = _packaged_root()
    if packaged is not None:
        roots.append(packaged)
    return roots


def _packaged_root():
    try:
        root = resources.files("gridham").joinpath("data", "gf")
    except (ModuleNotFoundError, TypeError):
        return None
    path = Path(str(root))
    return path if path.is_dir() else None


def _cache_name(m: int) -> str:
    return f"gf-m{m}.json"


def _gf_spot_check(m: int, f: RatFunc, origin: str) -> None:
    got = series_of_ratfunc(f, _SPOT_CHECK_TERMS)
    want = WalkSeries(_unit_graph(m)).upto(_SPOT_CHECK_TERMS)
    if got != want:
        raise RuntimeError(
            f"cached generating function from {origin} disagrees with a "
            f"direct sweep for m={m}")


def _gf_load_only(m: int, cache_dir):
    """Fetch the GF for height m from memory or disk, never computing it."""
    if m in _gf_memo:
        return _gf_memo[m]
    for root in _cache_roots(cache_dir):
        path = root / _cache_name(m)
        if not path.is_file():
            continue
        data = json.loads(path.read_text())
        if (data.get("format") != _CACHE_FORMAT
                or data.get("version") != _CACHE_VERSION
                or data.get("m") != m):
            raise RuntimeError(f"unrecognized cache file {path}")
        f = RatFunc(UniPoly.from_pairs(data["num"]),
                    UniPoly.from_pairs(data["den"]))
        _gf_spot_check(m, f, str(path))
        _gf_memo[m] = f
        return f
    return None


def _gf_store(m: int, f: RatFunc, cache_dir) -> None:
    """Persist to the explicit or environment cache directory, atomically."""
    root = None
    if cache_dir is not None:
        root = Path(cache_dir)
    else:
        env = os.environ.get(CACHE_ENV)
        if env:
            root = Path(env)
    if root is None:
        return
    root.mkdir(parents=True, exist_ok=True)
    payload = {
        "format": _CACHE_FORMAT,
        "version": _CACHE_VERSION,
        "m": m,
        "num": f.num.to_pairs(),
        "den": f.den.to_pairs(),
    }
    text = json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"
    fd, tmp = tempfile.mkstemp(dir=root, prefix=_cache_name(m), suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, root / _cache_name(m))
    except BaseException:
        os.unlink(tmp)
        raise


def gf_count(m: int, *, cache_dir=None, no_cache: bool = False,
             rigorous: bool = False) -> RatFunc:
    """Rational function whose z^n series coefficient is count_cycles(m, n)."""
    if not isinstance(m, int) or m < 2:
        raise DomainError(f"height {m} out of domain, need an integer >= 2")
    if not no_cache:
        f = _gf_load_only(m, cache_dir)
        if f is not None:
            return f
    f = walk_gf(_unit_graph(m), rigorous=rigorous)
    if not no_cache:
        _gf_memo[m] = f
        _gf_store(m, f, cache_dir)
    return f


# ----------------------------------------------------------------------
# weighted counting
# ----------------------------------------------------------------------

def normalize_weight_spec(height_rows: int, spec) -> tuple[bool, ...]:
    """Per-row activity flags: entry 'w'/True marks the row, 1 leaves it out."""
    if spec is None or spec == "all":
        return (True,) * height_rows
    entries = list(spec)
    if len(entries) != height_rows:
        raise DomainError(
            f"weight spec needs {height_rows} entries, got {len(entries)}")
    out = []
    for v in entries:
        if v is True or v == "w":
            out.append(True)
        elif v is False or v is None or v == 1 or v == "1":
            out.append(False)
        else:
            raise DomainError(f"weight spec entry {v!r} not understood")
    return tuple(out)


def _specialized_gf(aut, act: tuple[int, ...], point: tuple[int, ...]) -> RatFunc:
    """Weighted walk GF with each active marker pinned to an integer."""

    def col_weight(col):
        w = 1
        for r, x in zip(act, point):
            if col[r]:
                w *= x
        return w

    g = WeightedDigraph.from_automaton(aut, weight_fn=col_weight)
    return walk_gf(g, rigorous=True)


def _lagrange_polys(nodes) -> list[UniPoly]:
    out = []
    for j, tj in enumerate(nodes):
        p = UniPoly([Fraction(1)])
        denom = Fraction(1)
        for i, ti in enumerate(nodes):
            if i == j:
                continue
            p = p * UniPoly([Fraction(-ti), Fraction(1)])
            denom *= tj - ti
        out.append(p.scale(1 / denom))
    return out


def _interp_unipoly(pairs) -> UniPoly:
    nodes = [t for t, _ in pairs]
    acc = UniPoly()
    for basis, (_, v) in zip(_lagrange_polys(nodes), pairs):
        if v:
            acc = acc + basis.scale(v)
    return acc


def _tensor_interp(axes_nodes, var_idx, nvars: int, value_at) -> MultiPoly:
    """Polynomial through exact values on a node grid.

    axes_nodes[a] holds the integer nodes of axis a, var_idx[a] the target
    variable index, and value_at(index_tuple) the value at that grid point.
    """
    bases = [[MultiPoly.from_unipoly(b, nvars, var_idx[a])
              for b in _lagrange_polys(nodes)]
             for a, nodes in enumerate(axes_nodes)]

    def rec(prefix, depth):
        if depth == len(axes_nodes):
            return MultiPoly.const(nvars, value_at(prefix))
        acc = MultiPoly.zero(nvars)
        for j in range(len(axes_nodes[depth])):
            sub = rec(prefix + (j,), depth + 1)
            if not sub.is_zero():
                acc = acc + sub * bases[depth][j]
        return acc

    return rec((), 0)


def _reconstruct_attempt(m, act, active, aut, ev, start):
    """One reconstruction round; None means the node layout was unlucky."""
    nvars = m
    ax = len(act)
    cap = aut.state_count + 2

    # disjoint value ranges per axis so no two markers ever coincide;
    # coordinate equalities are where specializations tend to degenerate
    origin = [start + a * (cap + 2) for a in range(ax)]
    base = tuple(origin)

    # probe each marker axis on a transversal line through the base point
    probes: list[list[tuple[int, RatFunc]]] = []
    seen = [ev(base)]
    for a in range(ax):
        line = []
        for t in range(origin[a], origin[a] + cap + 1):
            pt = tuple(t if j == a else base[j] for j in range(ax))
            f = ev(pt)
            line.append((t, f))
            seen.append(f)
        probes.append(line)
    r_est = max(f.den.degree for f in seen)
    s_est = max(f.num.degree for f in seen)

    # a specialization is trustworthy only when nothing cancelled, which
    # shows up as the full denominator degree
    good_nodes: list[list[tuple[int, RatFunc]]] = []
    for line in probes:
        good = [(t, f) for t, f in line if f.den.degree == r_est]
        if len(good) < 2:
            return None
        good_nodes.append(good)

    degs = []
    for a in range(ax):
        d = 0
        for k in range(1, r_est + 1):
            p = _interp_unipoly([(t, f.den.coeff(k)) for t, f in good_nodes[a]])
            d = max(d, p.degree)
        for k in range(s_est + 1):
            p = _interp_unipoly([(t, f.num.coeff(k)) for t, f in good_nodes[a]])
            d = max(d, p.degree)
        degs.append(d)

    axes_nodes = []
    for a in range(ax):
        vals = [t for t, _ in good_nodes[a]]
        if len(vals) < degs[a] + 1:
            return None
        axes_nodes.append(vals[: degs[a] + 1])

    grid: dict[tuple[int, ...], RatFunc] = {}

    def fill(prefix):
        if len(prefix) == ax:
            f = ev(tuple(axes_nodes[a][i] for a, i in enumerate(prefix)))
            if f.den.degree != r_est:
                return False
            grid[prefix] = f
            return True
        return all(fill(prefix + (i,))
                   for i in range(len(axes_nodes[len(prefix)])))

    if not fill(()):
        return None

    var_idx = [r + 1 for r in act]
    den = MultiPoly.zero(nvars)
    for k in range(r_est + 1):
        dk = _tensor_interp(axes_nodes, var_idx, nvars,
                            lambda idx, k=k: grid[idx].den.coeff(k))
        den = den + MultiPoly.monomial(nvars, (k,) + (0,) * (nvars - 1)) * dk
    num = MultiPoly.zero(nvars)
    for k in range(s_est + 1):
        nk = _tensor_interp(axes_nodes, var_idx, nvars,
                            lambda idx, k=k: grid[idx].num.coeff(k))
        num = num + MultiPoly.monomial(nvars, (k,) + (0,) * (nvars - 1)) * nk

    # exact acceptance test: both sides have z-degree at most cap, so
    # agreement of this many series terms forces equality
    last = 2 * cap + 1
    rows = m - 1
    want = [MultiPoly(rows, t)
            for t in _weighted_sweep(m, active, last, _DEFAULT_MAX_TERMS)]
    if series_of_weighted_gf(num, den, last) != want:
        return None
    return num, den


def gf_weighted(m: int, spec=None) -> tuple[MultiPoly, MultiPoly]:
    """Weighted GF as a reduced (numerator, denominator) pair.

    Variables: index 0 is z, index i is the marker for matrix row i.  The
    z^n coefficient restricted to the active markers is the weight
    enumerator of P_m x P_n.  Coefficient polynomials are rebuilt exactly
    from integer specializations of the walk GF and the result is checked
    against the sweep series to past the degree bound, which makes the
    identity rigorous.  Heights above the guard must use
    weight_enumerator / monomial_coefficient instead.
    """
    if not isinstance(m, int) or m < 2:
        raise DomainError(f"height {m} out of domain, need an integer >= 2")
    rows = m - 1
    active = normalize_weight_spec(rows, spec)
    nvars = m
    if not any(active):
        f = gf_count(m)
        return (MultiPoly.from_unipoly(f.num, nvars, 0),
                MultiPoly.from_unipoly(f.den, nvars, 0))
    if m > _SYMBOLIC_HEIGHT_LIMIT:
        raise ResourceLimitError(
            f"symbolic weighted GF too large for m={m}, "
            f"limit is m <= {_SYMBOLIC_HEIGHT_LIMIT}")
    act = tuple(r for r in range(rows) if active[r])
    aut = automaton(rows)
    cache: dict[tuple[int, ...], RatFunc] = {}

    def ev(pt: tuple[int, ...]) -> RatFunc:
        f = cache.get(pt)
        if f is None:
            f = _specialized_gf(aut, act, pt)
            cache[pt] = f
        return f

    span = len(act) * (aut.state_count + 4) + 1
    for attempt in range(3):
        got = _reconstruct_attempt(m, act, active, aut, ev, 2 + attempt * span)
        if got is not None:
            return got
    raise RuntimeError(f"weighted GF reconstruction did not stabilize "
                       f"for m={m}; all node layouts degenerated")


def series_of_weighted_gf(num: MultiPoly, den: MultiPoly,
                          last_n: int) -> list[MultiPoly]:
    """Marker-polynomial coefficients of z^0..z^last_n of num/den.

    Input variables follow gf_weighted (z first); output polynomials are
    over the marker variables only.
    """
    rows = num.nvars - 1

    def split(p: MultiPoly) -> dict[int, MultiPoly]:
        out: dict[int, dict] = {}
        for e, c in p.terms.items():
            out.setdefault(e[0], {})[e[1:]] = c
        return {k: MultiPoly(rows, t) for k, t in out.items()}

    num_z = split(num)
    den_z = split(den)
    d0 = den_z.get(0)
    if d0 is None or not d0.is_const() or not d0.constant():
        raise ValueError("denominator must have a nonzero constant term")
    c0 = d0.constant()
    zero = MultiPoly.zero(rows)
    out: list[MultiPoly] = []
    for k in range(last_n + 1):
        acc = num_z.get(k, zero)
        for j in range(1, k + 1):
            dj = den_z.get(j)
            if dj is not None:
                acc = acc - dj * out[k - j]
        out.append(acc.scale(1 / c0))
    return out


def _weighted_sweep(m: int, active, last_n: int,
                    max_terms: int) -> list[dict[tuple, int]]:
    """Raw marker-count tables for n = 0..last_n (empty below n = 2)."""
    rows = m - 1
    aut = automaton(rows)
    deltas = [tuple(bit if active[r] else 0 for r, bit in enumerate(s.column))
              for s in aut.states]

    def ender_total(v):
        total: dict[tuple, int] = {}
        for s, table in v.items():
            if aut.ender_flags[s]:
                for e, c in table.items():
                    total[e] = total.get(e, 0) + c
        return total

    out: list[dict[tuple, int]] = [{}, {}]
    if last_n < 2:
        return out[: last_n + 1]
    vec: dict[int, dict[tuple, int]] = {}
    for i in aut.starter_idx:
        vec.setdefault(i, {})[deltas[i]] = 1
    out.append(ender_total(vec))
    for _ in range(last_n - 2):
        new: dict[int, dict[tuple, int]] = {}
        for s, table in vec.items():
            for t in aut.succ[s]:
                d = deltas[t]
                dst = new.setdefault(t, {})
                for e, c in table.items():
                    key = tuple(a + b for a, b in zip(e, d))
                    dst[key] = dst.get(key, 0) + c
        vec = new
        size = sum(len(t) for t in vec.values())
        if size > max_terms:
            raise ResourceLimitError(
                f"weight enumerator too large: over {max_terms} monomials "
                f"in flight for m={m}")
        out.append(ender_total(vec))
    return out


def weight_enumerator(m: int, n: int, spec=None, *,
                      max_terms: int = _DEFAULT_MAX_TERMS) -> MultiPoly:
    """Marker polynomial for P_m x P_n: the coefficient of each monomial
    w_1^{a_1}..w_{m-1}^{a_{m-1}} counts cycles whose cell matrix has a_i
    ones in row i.  Computed by a direct sweep, not via gf_weighted."""
    _require_grid(m, n)
    active = normalize_weight_spec(m - 1, spec)
    tables = _weighted_sweep(m, active, n, max_terms)
    return MultiPoly(m - 1, tables[n])


def monomial_coefficient(m: int, n: int, exponents) -> int:
    """Number of cycles whose cell matrix has exactly the given one-count
    per row; entries None or '*' leave that row unconstrained."""
    _require_grid(m, n)
    rows = m - 1
    entries = list(exponents)
    if len(entries) != rows:
        raise DomainError(f"need {rows} exponents, got {len(entries)}")
    cons: list[tuple[int, int]] = []
    for r, t in enumerate(entries):
        if t is None or t == "*":
            continue
        t = int(t)
        if t < 0:
            raise DomainError("exponents must be nonnegative")
        cons.append((r, t))
    if not cons:
        return count_cycles(m, n)
    length = n - 1
    goal = tuple(t for _, t in cons)
    if any(t > length for t in goal):
        return 0
    aut = automaton(rows)
    deltas = [tuple(s.column[r] for r, _ in cons) for s in aut.states]

    def viable(key: tuple, remaining: int) -> bool:
        for have, want in zip(key, goal):
            if have > want or have + remaining < want:
                return False
        return True

    vec: dict[int, dict[tuple, int]] = {}
    for i in aut.starter_idx:
        d = deltas[i]
        if viable(d, length - 1):
            vec.setdefault(i, {})[d] = 1
    for used in range(2, length + 1):
        remaining = length - used
        new: dict[int, dict[tuple, int]] = {}
        for s, table in vec.items():
            for t in aut.succ[s]:
                d = deltas[t]
                dst = None
                for e, c in table.items():
                    key = tuple(a + b for a, b in zip(e, d))
                    if not viable(key, remaining):
                        continue
                    if dst is None:
                        dst = new.setdefault(t, {})
                    dst[key] = dst.get(key, 0) + c
        vec = new
    total = 0
    for s, table in vec.items():
        if aut.ender_flags[s]:
            total += table.get(goal, 0)
    return total
