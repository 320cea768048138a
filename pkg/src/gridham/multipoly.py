"""Sparse multivariate polynomials over the rationals.

Terms are stored as a dict from exponent tuples to nonzero Fractions.
Enough ring machinery lives here to support weighted transfer-matrix
elimination: arithmetic, exact division, gcd, and fraction-free
determinants.  Everything is exact.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import UniPoly


class MultiPoly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        if nvars < 1:
            raise ValueError("need at least one variable")
        clean: dict[tuple[int, ...], Fraction] = {}
        for exps, c in (terms or {}).items():
            c = Fraction(c)
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent tuple {exps!r}")
            if c:
                clean[tuple(exps)] = c
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors --------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> MultiPoly:
        return cls(nvars)

    @classmethod
    def const(cls, nvars: int, c) -> MultiPoly:
        return cls(nvars, {(0,) * nvars: Fraction(c)})

    @classmethod
    def var(cls, nvars: int, i: int) -> MultiPoly:
        if not 0 <= i < nvars:
            raise ValueError(f"variable index {i} out of range")
        exps = tuple(1 if k == i else 0 for k in range(nvars))
        return cls(nvars, {exps: Fraction(1)})

    @classmethod
    def monomial(cls, nvars: int, exps, c=1) -> MultiPoly:
        return cls(nvars, {tuple(exps): Fraction(c)})

    @classmethod
    def from_unipoly(cls, p: UniPoly, nvars: int, i: int) -> MultiPoly:
        terms = {}
        for d in range(p.degree + 1):
            c = p.coeff(d)
            if c:
                terms[tuple(d if k == i else 0 for k in range(nvars))] = c
        return cls(nvars, terms)

    # -- predicates and views -------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def degree_in(self, i: int) -> int:
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def coeff(self, exps) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def live_vars(self) -> tuple[int, ...]:
        live = set()
        for e in self.terms:
            for i, d in enumerate(e):
                if d:
                    live.add(i)
        return tuple(sorted(live))

    def as_unipoly(self, i: int) -> UniPoly:
        """View as a one-variable polynomial; all other variables must be absent."""
        if any(v != i for v in self.live_vars()):
            raise ValueError("polynomial involves other variables")
        coeffs = [Fraction(0)] * (self.degree_in(i) + 1 if self.terms else 0)
        for e, c in self.terms.items():
            coeffs[e[i]] = c
        return UniPoly(coeffs)

    # -- ring operations -------------------------------------------------

    def _check(self, other: MultiPoly) -> None:
        if self.nvars != other.nvars:
            raise ValueError("mixed variable counts")

    def __add__(self, other: MultiPoly) -> MultiPoly:
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, Fraction(0)) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return MultiPoly(self.nvars, terms)

    def __neg__(self) -> MultiPoly:
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: MultiPoly) -> MultiPoly:
        return self + (-other)

    def __mul__(self, other: MultiPoly) -> MultiPoly:
        self._check(other)
        terms: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e, Fraction(0)) + c1 * c2
                if s:
                    terms[e] = s
                else:
                    terms.pop(e, None)
        return MultiPoly(self.nvars, terms)

    def scale(self, c) -> MultiPoly:
        c = Fraction(c)
        return MultiPoly(self.nvars, {e: c * v for e, v in self.terms.items()})

    def __pow__(self, k: int) -> MultiPoly:
        if k < 0:
            raise ValueError("negative power")
        out = MultiPoly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        return (isinstance(other, MultiPoly) and self.nvars == other.nvars
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        return f"MultiPoly({self.nvars}, {self.pretty()!r})"

    # -- calculus and substitution ----------------------------------------

    def derivative(self, i: int) -> MultiPoly:
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = tuple(d - 1 if k == i else d for k, d in enumerate(e))
                terms[ne] = terms.get(ne, Fraction(0)) + c * e[i]
        return MultiPoly(self.nvars, terms)

    def substitute(self, i: int, value) -> MultiPoly:
        """Replace variable i by a Fraction or a MultiPoly over the same variables."""
        if isinstance(value, MultiPoly):
            self._check(value)
            out = MultiPoly.zero(self.nvars)
            powers = {0: MultiPoly.const(self.nvars, 1)}
            for e, c in sorted(self.terms.items()):
                d = e[i]
                if d not in powers:
                    powers[d] = value ** d
                rest = tuple(0 if k == i else v for k, v in enumerate(e))
                out = out + powers[d] * MultiPoly.monomial(self.nvars, rest, c)
            return out
        value = Fraction(value)
        terms: dict[tuple[int, ...], Fraction] = {}
        for e, c in self.terms.items():
            ne = tuple(0 if k == i else d for k, d in enumerate(e))
            s = terms.get(ne, Fraction(0)) + c * value ** e[i]
            if s:
                terms[ne] = s
            else:
                terms.pop(ne, None)
        return MultiPoly(self.nvars, terms)

    def eval_all(self, values) -> Fraction:
        values = [Fraction(v) for v in values]
        if len(values) != self.nvars:
            raise ValueError("wrong number of values")
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for v, d in zip(values, e):
                if d:
                    term *= v ** d
            total += term
        return total

    # -- division ----------------------------------------------------------

    def _lead(self) -> tuple[tuple[int, ...], Fraction]:
        e = max(self.terms)
        return e, self.terms[e]

    def exact_div(self, other: MultiPoly) -> MultiPoly:
        """Quotient self / other, raising ValueError unless division is exact."""
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return self
        if other.is_const():
            return self.scale(1 / other.constant())
        rem = dict(self.terms)
        le, lc = other._lead()
        q: dict[tuple[int, ...], Fraction] = {}
        while rem:
            re = max(rem)
            qe = tuple(a - b for a, b in zip(re, le))
            if any(d < 0 for d in qe):
                raise ValueError("not exactly divisible")
            qc = rem[re] / lc
            q[qe] = qc
            for e, c in other.terms.items():
                t = tuple(a + b for a, b in zip(qe, e))
                s = rem.get(t, Fraction(0)) - qc * c
                if s:
                    rem[t] = s
                else:
                    rem.pop(t, None)
        return MultiPoly(self.nvars, q)

    # -- presentation --------------------------------------------------------

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """Terms in graded order: total degree, then exponent tuple."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]))

    def pretty(self, names=None) -> str:
        if not self.terms:
            return "0"
        if names is None:
            names = [f"x{i}" for i in range(self.nvars)]
        parts = []
        for e, c in self.sorted_terms():
            factors = []
            for name, d in zip(names, e):
                if d == 1:
                    factors.append(name)
                elif d > 1:
                    factors.append(f"{name}^{d}")
            body = "*".join(factors)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{c}*{body}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def to_pairs(self):
        return [[list(e), [c.numerator, c.denominator]]
                for e, c in self.sorted_terms()]

    @classmethod
    def from_pairs(cls, nvars: int, pairs) -> MultiPoly:
        return cls(nvars, {tuple(e): Fraction(num, den)
                           for e, (num, den) in pairs})


# ----------------------------------------------------------------------
# gcd
# ----------------------------------------------------------------------

def _coeffs_in(p: MultiPoly, i: int) -> dict[int, MultiPoly]:
    """Split p as a polynomial in variable i with MultiPoly coefficients."""
    out: dict[int, dict] = {}
    for e, c in p.terms.items():
        d = e[i]
        rest = tuple(0 if k == i else v for k, v in enumerate(e))
        out.setdefault(d, {})[rest] = c
    return {d: MultiPoly(p.nvars, terms) for d, terms in out.items()}


def _join_coeffs(coeffs: dict[int, MultiPoly], nvars: int, i: int) -> MultiPoly:
    terms: dict[tuple[int, ...], Fraction] = {}
    for d, poly in coeffs.items():
        for e, c in poly.terms.items():
            ne = tuple(d if k == i else v for k, v in enumerate(e))
            terms[ne] = c
    return MultiPoly(nvars, terms)


def _normalized(p: MultiPoly) -> MultiPoly:
    if p.is_zero():
        return p
    _, lc = p._lead()
    return p.scale(1 / lc)


def multi_gcd(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Greatest common divisor, normalized to leading coefficient one.

    Primitive pseudo-remainder sequences in the highest live variable,
    recursing on the coefficient ring for contents.
    """
    if a.nvars != b.nvars:
        raise ValueError("mixed variable counts")
    if a.is_zero():
        return _normalized(b)
    if b.is_zero():
        return _normalized(a)
    live = sorted(set(a.live_vars()) | set(b.live_vars()))
    if not live:
        return MultiPoly.const(a.nvars, 1)
    v = live[-1]
    if a.degree_in(v) == 0 or b.degree_in(v) == 0:
        # one side is free of the main variable: gcd divides its content
        small, big = (a, b) if a.degree_in(v) == 0 else (b, a)
        g = small
        for coeff in _coeffs_in(big, v).values():
            g = multi_gcd(g, coeff)
            if g.is_const():
                return MultiPoly.const(a.nvars, 1)
        return _normalized(g)

    ca, pa = _content_primitive(a, v)
    cb, pb = _content_primitive(b, v)
    cg = multi_gcd(ca, cb)

    while not pb.is_zero():
        r = _pseudo_rem(pa, pb, v)
        pa, pb = pb, _primitive_part(r, v)
    return _normalized(cg * pa)


def _content_primitive(p: MultiPoly, v: int) -> tuple[MultiPoly, MultiPoly]:
    coeffs = _coeffs_in(p, v)
    content = MultiPoly.zero(p.nvars)
    for c in coeffs.values():
        content = multi_gcd(content, c)
        if content.is_const():
            content = MultiPoly.const(p.nvars, 1)
            break
    return content, p.exact_div(content)


def _primitive_part(p: MultiPoly, v: int) -> MultiPoly:
    if p.is_zero():
        return p
    return _content_primitive(p, v)[1]


def _pseudo_rem(a: MultiPoly, b: MultiPoly, v: int) -> MultiPoly:
    """Pseudo-remainder of a by b in variable v (degree of b must be positive)."""
    db = b.degree_in(v)
    lb = _coeffs_in(b, v)[db]
    r = a
    while not r.is_zero():
        dr = r.degree_in(v)
        if dr < db:
            break
        lr = _coeffs_in(r, v)[dr]
        shift = MultiPoly.monomial(
            a.nvars, tuple(dr - db if k == v else 0 for k in range(a.nvars)))
        r = r * lb - b * shift * lr
    return r


# ----------------------------------------------------------------------
# determinants
# ----------------------------------------------------------------------

def bareiss_det(matrix: list[list[MultiPoly]]) -> MultiPoly:
    """Fraction-free determinant of a square MultiPoly matrix.

    Two-step Bareiss elimination: every division is exact in the ring, so
    intermediate entries stay polynomial and modest in size.
    """
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix must be square")
    nvars = matrix[0][0].nvars
    m = [row[:] for row in matrix]
    prev = MultiPoly.const(nvars, 1)
    sign = 1
    for k in range(n - 1):
        if m[k][k].is_zero():
            for r in range(k + 1, n):
                if not m[r][k].is_zero():
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return MultiPoly.zero(nvars)
        pivot = m[k][k]
        for i in range(k + 1, n):
            row_i = m[i]
            head = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (pivot * row_i[j] - head * m[k][j]).exact_div(prev)
            row_i[k] = MultiPoly.zero(nvars)
        prev = pivot
    det = m[n - 1][n - 1]
    return det.scale(-1) if sign < 0 else det
