"""Weighted-digraph walk enumeration.

A WeightedDigraph has vertices labelled 1..V with vertex 1 the source and
vertex V the sink.  The engine computes a_k = total weight of length-k
walks from source to sink, exactly, over any commutative coefficient
domain (int, Fraction, MultiPoly, jets).  The sink is absorbing: its
outgoing edges, if any are supplied, are dropped so that a walk ends the
moment it reaches the sink.

For numeric weights the full series is rational; walk_gf recovers that
rational function by fitting a minimal linear recurrence (bounded by the
vertex count, the degree of the characteristic polynomial) and
re-verifying it on extra terms.  walk_gf_symbolic instead eliminates
states exactly via cofactor determinants, for polynomial weights.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import RatFunc, fit_min_recurrence, ratfunc_from_recurrence
from .errors import DomainError, FitError, ResourceLimitError
from .multipoly import MultiPoly, bareiss_det

_ELIMINATION_CAP = 200


class WeightedDigraph:
    __slots__ = ("vertex_count", "out_edges", "out_dsts", "zero", "one",
                 "unit_weights")

    def __init__(self, vertex_count: int, edges, zero=0, one=1):
        """edges: iterable of (u, v, weight) with 1-based vertex labels."""
        if vertex_count < 1:
            raise ValueError("need at least one vertex")
        out = [[] for _ in range(vertex_count)]
        unit = True
        for u, v, w in edges:
            if not (1 <= u <= vertex_count and 1 <= v <= vertex_count):
                raise ValueError(f"edge ({u}, {v}) out of range")
            if u == vertex_count:
                continue
            out[u - 1].append((v - 1, w))
            if w != one or not isinstance(w, int):
                unit = False
        object.__setattr__(self, "vertex_count", vertex_count)
        object.__setattr__(self, "out_edges", tuple(tuple(e) for e in out))
        object.__setattr__(self, "out_dsts",
                           tuple(tuple(d for d, _ in e) for e in out))
        object.__setattr__(self, "zero", zero)
        object.__setattr__(self, "one", one)
        object.__setattr__(self, "unit_weights",
                           unit and isinstance(one, int))

    def __setattr__(self, name, value):
        raise AttributeError("WeightedDigraph is immutable")

    @classmethod
    def from_automaton(cls, aut, weight_fn=None, zero=0, one=1):
        """Walk graph of an automaton: source 1, one vertex per state,
        sink last.  Each edge into a state carries the weight of that
        state's column (unit weight when weight_fn is None)."""
        n = aut.state_count
        if weight_fn is None:
            col_weight = [one] * n
        else:
            col_weight = [weight_fn(s.column) for s in aut.states]
        edges = []
        for i in aut.starter_idx:
            edges.append((1, i + 2, col_weight[i]))
        for i, dsts in enumerate(aut.succ):
            for j in dsts:
                edges.append((i + 2, j + 2, col_weight[j]))
        for i, is_end in enumerate(aut.ender_flags):
            if is_end:
                edges.append((i + 2, n + 2, one))
        return cls(n + 2, edges, zero=zero, one=one)


class WalkSeries:
    """Incrementally generated walk weights a_0, a_1, ... for a graph."""

    def __init__(self, g: WeightedDigraph):
        self.graph = g
        vec = [g.zero] * g.vertex_count
        vec[0] = g.one
        self._vec = vec
        self._coeffs = [vec[-1]]

    def _step(self) -> None:
        g = self.graph
        old = self._vec
        new = [g.zero] * g.vertex_count
        if g.unit_weights:
            dsts = g.out_dsts
            for src, x in enumerate(old):
                if x:
                    for dst in dsts[src]:
                        new[dst] += x
        else:
            edges = g.out_edges
            for src, x in enumerate(old):
                if x != g.zero:
                    for dst, w in edges[src]:
                        new[dst] = new[dst] + x * w
        self._vec = new
        self._coeffs.append(new[-1])

    def upto(self, steps: int) -> list:
        if steps < 0:
            raise ValueError("steps must be nonnegative")
        while len(self._coeffs) <= steps:
            self._step()
        return self._coeffs[: steps + 1]

    def coeff(self, k: int):
        return self.upto(k)[k]


def walk_weights(g: WeightedDigraph, steps: int) -> list:
    return WalkSeries(g).upto(steps)


def walk_gf(g: WeightedDigraph, rigorous: bool = False) -> RatFunc:
    """Rational generating function Σ a_k x^k for numeric edge weights.

    Fits a minimal recurrence to the series and re-verifies it on twice
    the recurrence order of additional terms; the window grows up to the
    vertex count, which bounds the true denominator degree.  With
    rigorous=True the full bound is used immediately.
    """
    bound = g.vertex_count
    series = WalkSeries(g)
    probe = series.upto(min(4, bound))
    if not all(isinstance(a, (int, Fraction)) for a in probe):
        raise DomainError("walk_gf requires numeric edge weights")
    window = bound if rigorous else min(32, bound)
    while True:
        seq = series.upto(2 * window)
        rec = fit_min_recurrence(seq, window)
        if rec is not None:
            check = series.upto(2 * window + 2 * rec.order)
            if rec.holds_on(check):
                return ratfunc_from_recurrence(rec)
        if window >= bound:
            raise FitError(
                f"no recurrence of order <= {bound} reproduces the walk "
                "series; the theoretical bound was violated")
        window = min(2 * window, bound)


def walk_gf_symbolic(g: WeightedDigraph) -> tuple[MultiPoly, MultiPoly]:
    """(numerator, denominator) of the walk series by exact elimination.

    Weights must be MultiPoly and must already carry the length-counting
    variable.  Cofactor formula: entry (source, sink) of (I - A)^{-1} is
    a signed minor of I - A over its determinant.
    """
    V = g.vertex_count
    if V > _ELIMINATION_CAP:
        raise ResourceLimitError(
            f"symbolic elimination capped at {_ELIMINATION_CAP} vertices, "
            f"got {V}")
    if not isinstance(g.one, MultiPoly):
        raise DomainError("walk_gf_symbolic requires MultiPoly weights")
    if V == 1:
        return g.one, g.one
    nvars = g.one.nvars
    zero = MultiPoly.zero(nvars)
    b = [[zero] * V for _ in range(V)]
    for i in range(V):
        b[i][i] = g.one
    for src in range(V):
        for dst, w in g.out_edges[src]:
            b[src][dst] = b[src][dst] - w
    den = bareiss_det(b)
    minor = [[b[i][j] for j in range(1, V)] for i in range(V - 1)]
    num = bareiss_det(minor)
    if (V - 1) % 2:
        num = -num
    return num, den
