"""Row-statistic moments over uniformly random Hamiltonian cycles.

The statistic of a row set is how many ones the cell matrix carries in
those rows, which is also the number of cycle edges running along the
matching grid lines.  Finite-n moments push truncated Taylor jets at
w = 1 through the walk enumerator, so the full multivariate GF is never
expanded; asymptotic slopes come from the dominant pole of the counting
GF and the implicit derivative of the single-marker denominator, with
every reported bound computed in exact interval arithmetic.
"""

from __future__ import annotations

import decimal
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .algebra import UniPoly, isolate_dominant_pole
from .automaton import automaton
from .counting import gf_count, gf_weighted, weight_enumerator
from .errors import DomainError, EmptyEnsembleError, NoPositiveRootError
from .multipoly import MultiPoly
from .walks import WalkSeries, WeightedDigraph

Interval = tuple[Fraction, Fraction]


# ----------------------------------------------------------------------
# jet weight domains
# ----------------------------------------------------------------------

class Jet2:
    """Taylor coefficients (f, f', f''/2) of a weight at w = 1."""

    __slots__ = ("c0", "c1", "c2")

    def __init__(self, c0, c1=0, c2=0):
        self.c0 = c0
        self.c1 = c1
        self.c2 = c2

    def __add__(self, other):
        return Jet2(self.c0 + other.c0, self.c1 + other.c1, self.c2 + other.c2)

    def __mul__(self, other):
        return Jet2(self.c0 * other.c0,
                    self.c0 * other.c1 + self.c1 * other.c0,
                    self.c0 * other.c2 + self.c1 * other.c1
                    + self.c2 * other.c0)

    def __eq__(self, other):
        if not isinstance(other, Jet2):
            return NotImplemented
        return (self.c0, self.c1, self.c2) == (other.c0, other.c1, other.c2)

    def __repr__(self):
        return f"Jet2({self.c0}, {self.c1}, {self.c2})"


class PairJet:
    """Bivariate jet to total degree 2: coefficients of
    1, e1, e2, e1^2, e1*e2, e2^2 at (w1, w2) = (1, 1)."""

    __slots__ = ("c00", "c10", "c01", "c20", "c11", "c02")

    def __init__(self, c00, c10=0, c01=0, c20=0, c11=0, c02=0):
        self.c00 = c00
        self.c10 = c10
        self.c01 = c01
        self.c20 = c20
        self.c11 = c11
        self.c02 = c02

    def __add__(self, o):
        return PairJet(self.c00 + o.c00, self.c10 + o.c10, self.c01 + o.c01,
                       self.c20 + o.c20, self.c11 + o.c11, self.c02 + o.c02)

    def __mul__(self, o):
        return PairJet(
            self.c00 * o.c00,
            self.c00 * o.c10 + self.c10 * o.c00,
            self.c00 * o.c01 + self.c01 * o.c00,
            self.c00 * o.c20 + self.c10 * o.c10 + self.c20 * o.c00,
            self.c00 * o.c11 + self.c10 * o.c01 + self.c01 * o.c10
            + self.c11 * o.c00,
            self.c00 * o.c02 + self.c01 * o.c01 + self.c02 * o.c00)

    def __eq__(self, o):
        if not isinstance(o, PairJet):
            return NotImplemented
        return (self.c00, self.c10, self.c01, self.c20, self.c11, self.c02) \
            == (o.c00, o.c10, o.c01, o.c20, o.c11, o.c02)

    def __repr__(self):
        return (f"PairJet({self.c00}, {self.c10}, {self.c01}, "
                f"{self.c20}, {self.c11}, {self.c02})")


# ----------------------------------------------------------------------
# reports
# ----------------------------------------------------------------------

def _dec_str(x: Fraction, places: int, rounding: str) -> str:
    with decimal.localcontext() as ctx:
        ctx.prec = places + 8
        ctx.rounding = rounding
        d = decimal.Decimal(x.numerator) / decimal.Decimal(x.denominator)
        return format(d.quantize(decimal.Decimal(1).scaleb(-places)), "f")


def _fmt_value(v) -> str:
    if isinstance(v, Fraction):
        approx = f" (~ {float(v):.9g}, approximate)" if v.denominator != 1 else ""
        return f"{v}{approx}"
    if isinstance(v, tuple):
        lo = _dec_str(v[0], 15, decimal.ROUND_FLOOR)
        hi = _dec_str(v[1], 15, decimal.ROUND_CEILING)
        return f"[{lo}, {hi}] (outward-rounded decimal enclosure)"
    return str(v)


@dataclass(frozen=True)
class StatReport:
    """Moment report for one row-set statistic (or a pair of them)."""

    m: int
    n: object                      # column count, or the string "asymptotic"
    rows: tuple[int, ...]
    rows2: tuple[int, ...] | None = None
    count: int | None = None
    expectation: Fraction | None = None
    variance: Fraction | None = None
    correlation: object | None = None       # Fraction, or (lo, hi) interval
    degenerate: bool = False
    growth: Interval | None = None           # lambda, or lambda^2 (period 2)
    period: int = 1
    slope: Interval | None = None            # expectation per added column
    intercept: Interval | None = None
    variance_slope: Interval | None = None
    flags: tuple[str, ...] = ()

    def render(self) -> str:
        what = f"rows {self.rows}"
        if self.rows2 is not None:
            what += f" vs rows {self.rows2}"
        grid = f"P{self.m} x Pn (n -> infinity)" if self.n == "asymptotic" \
            else f"P{self.m} x P{self.n}"
        lines = [f"{grid} statistic on {what}"]
        if self.count is not None:
            lines.append(f"  cycles: {self.count}")
        if self.expectation is not None:
            lines.append(f"  expectation: {_fmt_value(self.expectation)}")
        if self.variance is not None:
            lines.append(f"  variance: {_fmt_value(self.variance)}")
        if self.correlation is not None:
            lines.append(f"  correlation: {_fmt_value(self.correlation)}")
        if self.degenerate:
            lines.append("  degenerate statistic (zero variance)")
        if self.growth is not None:
            name = "growth lambda^2 (even n only)" if self.period == 2 \
                else "growth lambda"
            lines.append(f"  {name}: {_fmt_value(self.growth)}")
        if self.slope is not None:
            lines.append(f"  expectation slope: {_fmt_value(self.slope)}")
        if self.intercept is not None:
            lines.append(
                f"  expectation intercept (estimate): "
                f"{_fmt_value(self.intercept)}")
        if self.variance_slope is not None:
            lines.append(
                f"  variance slope (estimate): "
                f"{_fmt_value(self.variance_slope)}")
        for flag in self.flags:
            lines.append(f"  flag: {flag}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        def enc(v):
            if v is None or isinstance(v, (int, str, bool)):
                return v
            if isinstance(v, Fraction):
                return str(v)
            if isinstance(v, tuple):
                return [enc(x) for x in v]
            raise TypeError(f"cannot encode {v!r}")

        out = {"m": self.m, "n": self.n, "rows": list(self.rows)}
        if self.rows2 is not None:
            out["rows2"] = list(self.rows2)
        for key in ("count", "expectation", "variance", "correlation",
                    "growth", "slope", "intercept", "variance_slope"):
            val = getattr(self, key)
            if val is not None:
                out[key] = enc(val)
        out["degenerate"] = self.degenerate
        out["period"] = self.period
        if self.flags:
            out["flags"] = list(self.flags)
        return out


# ----------------------------------------------------------------------
# finite moments
# ----------------------------------------------------------------------

def _row_set(m: int, rows) -> tuple[int, ...]:
    if isinstance(rows, int):
        rows = (rows,)
    out = tuple(sorted(set(int(r) for r in rows)))
    if not out:
        raise DomainError("row set must not be empty")
    for r in out:
        if not 1 <= r <= m - 1:
            raise DomainError(
                f"row {r} out of range, matrix rows are 1..{m - 1}")
    return out


def _require_grid(m: int, n: int) -> None:
    if not (isinstance(m, int) and isinstance(n, int)) or m < 2 or n < 2:
        raise DomainError(f"grid {m} x {n} out of domain, need both >= 2")


def _jet_totals(m: int, n: int, rows: tuple[int, ...]) -> tuple[int, int, int]:
    """(A, B, C): cycle count, sum of statistic, sum of statistic*(stat-1)."""
    picked = set(r - 1 for r in rows)

    def wfn(col):
        k = sum(col[r] for r in picked)
        return Jet2(1, k, k * (k - 1) // 2)

    g = WeightedDigraph.from_automaton(
        automaton(m - 1), weight_fn=wfn, zero=Jet2(0), one=Jet2(1))
    t = WalkSeries(g).coeff(n)
    return t.c0, t.c1, 2 * t.c2


def moments(m: int, n: int, rows) -> StatReport:
    """Exact expectation and variance of the row-set statistic at (m, n)."""
    _require_grid(m, n)
    rows = _row_set(m, rows)
    a, b, c = _jet_totals(m, n, rows)
    if a == 0:
        raise EmptyEnsembleError(f"no Hamiltonian cycles on P{m} x P{n}")
    e = Fraction(b, a)
    var = Fraction(c, a) + e - e * e
    return StatReport(m=m, n=n, rows=rows, count=a, expectation=e,
                      variance=var, degenerate=(var == 0))


def moments_via_enumerator(m: int, n: int, rows) -> StatReport:
    """Same report as moments(), but summed over the full enumerator.

    Independent code path kept for cross-checking: it expands every
    monomial instead of collapsing to jets during the sweep.
    """
    _require_grid(m, n)
    rows = _row_set(m, rows)
    poly = weight_enumerator(m, n)
    a = b = c = 0
    for exps, coeff in poly.terms.items():
        k = sum(exps[r - 1] for r in rows)
        a += coeff
        b += coeff * k
        c += coeff * k * (k - 1)
    if a == 0:
        raise EmptyEnsembleError(f"no Hamiltonian cycles on P{m} x P{n}")
    e = Fraction(b, a)
    var = Fraction(c, a) + e - e * e
    return StatReport(m=m, n=n, rows=rows, count=int(a), expectation=e,
                      variance=var, degenerate=(var == 0))


def _pair_totals(m: int, n: int, rows_a, rows_b):
    pa = set(r - 1 for r in rows_a)
    pb = set(r - 1 for r in rows_b)

    def wfn(col):
        x = sum(col[r] for r in pa)
        y = sum(col[r] for r in pb)
        return PairJet(1, x, y, x * (x - 1) // 2, x * y, y * (y - 1) // 2)

    g = WeightedDigraph.from_automaton(
        automaton(m - 1), weight_fn=wfn, zero=PairJet(0), one=PairJet(1))
    return WalkSeries(g).coeff(n)


def _sqrt_interval(x: Fraction, precision: int) -> Interval:
    """Enclosure of sqrt(x) for x >= 0, width about 10^-precision."""
    if x < 0:
        raise ValueError("negative radicand")
    scale = 10 ** precision
    floor_scaled = isqrt(x.numerator * scale * scale // x.denominator)
    lo = Fraction(floor_scaled, scale)
    hi = Fraction(floor_scaled + 1, scale)
    if lo * lo == x:
        return lo, lo
    return lo, hi


def correlation(m: int, n, rows_a, rows_b, *, precision: int = 12,
                base_n: int = 24) -> StatReport:
    """Pearson correlation of two disjoint row-set statistics.

    Finite n gives exact moments and a tight interval for the square
    root; n="asymptotic" extrapolates finite-n correlations instead.
    """
    rows_a = _row_set(m, rows_a)
    rows_b = _row_set(m, rows_b)
    if set(rows_a) & set(rows_b):
        raise DomainError("row sets must be disjoint")
    if n == "asymptotic":
        return _asymptotic_correlation(m, rows_a, rows_b,
                                       precision=precision, base_n=base_n)
    _require_grid(m, n)
    t = _pair_totals(m, n, rows_a, rows_b)
    if t.c00 == 0:
        raise EmptyEnsembleError(f"no Hamiltonian cycles on P{m} x P{n}")
    a = t.c00
    ex = Fraction(t.c10, a)
    ey = Fraction(t.c01, a)
    var_x = Fraction(2 * t.c20, a) + ex - ex * ex
    var_y = Fraction(2 * t.c02, a) + ey - ey * ey
    cov = Fraction(t.c11, a) - ex * ey
    if var_x == 0 or var_y == 0:
        return StatReport(m=m, n=n, rows=rows_a, rows2=rows_b, count=a,
                          degenerate=True, flags=("degenerate statistic",))
    denom = var_x * var_y
    r2 = cov * cov / denom
    root_lo, root_hi = _sqrt_interval(r2, precision)
    if root_lo == root_hi:
        corr = root_lo if cov > 0 else -root_lo if cov < 0 else Fraction(0)
    elif cov > 0:
        corr = (root_lo, root_hi)
    elif cov < 0:
        corr = (-root_hi, -root_lo)
    else:
        corr = Fraction(0)
    return StatReport(m=m, n=n, rows=rows_a, rows2=rows_b, count=a,
                      correlation=corr)


# ----------------------------------------------------------------------
# asymptotics
# ----------------------------------------------------------------------

def _poly_range(p: UniPoly, lo: Fraction, hi: Fraction) -> Interval:
    """Conservative range of p over [lo, hi] with 0 <= lo <= hi."""
    out_lo = out_hi = Fraction(0)
    for k in range(p.degree + 1):
        c = p.coeff(k)
        if not c:
            continue
        a, b = lo ** k, hi ** k
        if c > 0:
            out_lo += c * a
            out_hi += c * b
        else:
            out_lo += c * b
            out_hi += c * a
    return out_lo, out_hi


def _div_interval(num: Interval, den: Interval) -> Interval:
    if den[0] <= 0 <= den[1]:
        raise ZeroDivisionError("denominator interval straddles zero")
    corners = [a / b for a in num for b in den]
    return min(corners), max(corners)


def _marker_partials(m: int, rows: tuple[int, ...]) -> tuple[UniPoly, UniPoly]:
    """(dQ/dz, dQ/dw) at w = 1 for the single-marker denominator Q(z, w)."""
    num, den = gf_weighted(m, [r - 1 in set(x - 1 for x in rows)
                               for r in range(1, m)])
    qz = den.derivative(0)
    qw = MultiPoly.zero(m)
    for r in rows:
        qw = qw + den.derivative(r)
    for i in range(1, m):
        qz = qz.substitute(i, Fraction(1))
        qw = qw.substitute(i, Fraction(1))
    return qz.as_unipoly(0), qw.as_unipoly(0)


def asymptotic_moments(m: int, rows, precision: int = 12, *,
                       base_n: int = 24) -> StatReport:
    """Growth rate and per-column expectation/variance slopes for height m.

    The expectation slope alpha is the implicit derivative of the
    dominant pole of the single-marker GF; the variance slope is the
    Richardson extrapolate of Var_n/n at base_n, 2*base_n, 4*base_n.
    For odd heights the count sequence lives on even n, so the growth is
    reported as lambda^2 per two added columns.
    """
    if not isinstance(m, int) or m < 2:
        raise DomainError(f"height {m} out of domain, need an integer >= 2")
    rows = _row_set(m, rows)
    f = gf_count(m)
    den0 = f.den
    period = 2 if all(den0.coeff(k) == 0
                      for k in range(1, den0.degree + 1, 2)) else 1
    flags: list[str] = []

    qz, qw = _marker_partials(m, rows)
    target = Fraction(1, 10 ** precision)
    pole = alpha = None
    prec = precision + 6
    for _ in range(5):
        try:
            lo, hi = isolate_dominant_pole(den0, prec)
        except NoPositiveRootError:
            return StatReport(m=m, n="asymptotic", rows=rows, period=period,
                              flags=("no dominant positive pole",))
        pole = (lo, hi)
        qz_rng = _poly_range(qz * UniPoly([0, 1]), lo, hi)
        if qz_rng[0] <= 0 <= qz_rng[1]:
            prec += 10
            continue
        qw_rng = _poly_range(qw, lo, hi)
        a_lo, a_hi = _div_interval(qw_rng, qz_rng)
        alpha = (a_lo, a_hi)
        if a_hi - a_lo <= target:
            break
        prec += 10
    if pole is None or alpha is None:
        return StatReport(
            m=m, n="asymptotic", rows=rows, period=period,
            flags=("pole of the marker denominator is not provably simple",))
    if alpha[1] - alpha[0] > target:
        flags.append("slope interval wider than requested precision")

    lo, hi = pole
    if period == 2:
        growth = (1 / (hi * hi), 1 / (lo * lo)) if lo > 0 else None
    else:
        growth = (1 / hi, 1 / lo)

    # finite-difference estimates for the intercept and the variance slope
    base = base_n if base_n % 2 == 0 else base_n + 1
    reps = [moments(m, k, rows) for k in (base, 2 * base, 4 * base)]
    e1, e2, e3 = (r.expectation for r in reps)
    v1, v2, v3 = (r.variance for r in reps)
    vs_prev = (v2 - v1) / base
    vs_best = (v3 - v2) / (2 * base)
    drift = abs(vs_best - vs_prev)
    variance_slope = (vs_best - drift, vs_best + drift)
    cut = [e3 - alpha[1] * 4 * base, e3 - alpha[0] * 4 * base]
    icut_prev = e2 - (alpha[0] + alpha[1]) / 2 * 2 * base
    wobble = abs((cut[0] + cut[1]) / 2 - icut_prev)
    intercept = (min(cut) - wobble, max(cut) + wobble)

    return StatReport(m=m, n="asymptotic", rows=rows, period=period,
                      growth=growth, slope=alpha, intercept=intercept,
                      variance_slope=variance_slope, flags=tuple(flags))


def _asymptotic_correlation(m: int, rows_a, rows_b, *, precision: int,
                            base_n: int) -> StatReport:
    if not 3 <= m <= 7:
        raise DomainError(
            "asymptotic correlation is supported for heights 3..7")
    base = base_n if base_n % 2 == 0 else base_n + 1
    mids = []
    for k in (base, 2 * base, 4 * base):
        rep = correlation(m, k, rows_a, rows_b, precision=precision + 4)
        if rep.degenerate:
            return StatReport(m=m, n="asymptotic", rows=rows_a, rows2=rows_b,
                              degenerate=True,
                              flags=("degenerate statistic",))
        c = rep.correlation
        mids.append(c if isinstance(c, Fraction) else (c[0] + c[1]) / 2)
    r1, r2, r3 = mids
    best = 2 * r3 - r2
    prev = 2 * r2 - r1
    err = abs(best - prev) + Fraction(1, 10 ** precision)
    lo = max(Fraction(-1), best - err)
    hi = min(Fraction(1), best + err)
    return StatReport(m=m, n="asymptotic", rows=rows_a, rows2=rows_b,
                      correlation=(lo, hi))
