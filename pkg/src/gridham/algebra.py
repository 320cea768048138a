"""Exact univariate arithmetic: polynomials, rational functions, linear
recurrences, series extraction and positive real root isolation.

Conventions used throughout:

* coefficients are `fractions.Fraction`; nothing here ever touches floats,
  decimal rendering is left to the presentation layer;
* polynomial coefficient arrays are ascending (index k holds the z^k
  coefficient) with no trailing zeros, and the zero polynomial has degree -1;
* a rational function is kept reduced (gcd of numerator and denominator is 1)
  with the denominator's constant term normalised to 1 whenever it is nonzero;
* a linear recurrence with coefficients (r_1 .. r_d) means
  a_k = r_1 a_{k-1} + ... + r_d a_{k-d} for every k >= number of stored
  initial terms (and in fact for every k >= d).
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd as int_gcd
from typing import Iterable, Optional, Sequence

from .errors import (
    FitError,
    InsufficientTermsError,
    NoPositiveRootError,
    PoleAtOriginError,
)

_F0 = Fraction(0)
_F1 = Fraction(1)


# ======================================================================
# univariate polynomials
# ======================================================================

class UniPoly:
    """Immutable dense univariate polynomial over the rationals."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("UniPoly is immutable")

    # -- constructors --------------------------------------------------

    @classmethod
    def zero(cls) -> "UniPoly":
        return cls(())

    @classmethod
    def one(cls) -> "UniPoly":
        return cls((_F1,))

    @classmethod
    def x(cls) -> "UniPoly":
        return cls((_F0, _F1))

    @classmethod
    def monomial(cls, k: int, c=1) -> "UniPoly":
        return cls([_F0] * k + [Fraction(c)])

    # -- basic queries --------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else _F0

    @property
    def constant(self) -> Fraction:
        return self.coeff(0)

    @property
    def leading(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other: "UniPoly") -> "UniPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly(out)

    def __neg__(self) -> "UniPoly":
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly()
        out = [_F0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        return UniPoly(out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def scale(self, c) -> "UniPoly":
        c = Fraction(c)
        if c == 0:
            return UniPoly()
        return UniPoly([ci * c for ci in self.coeffs])

    def shift(self, k: int) -> "UniPoly":
        """Multiply by z^k."""
        if not self.coeffs:
            return self
        return UniPoly([_F0] * k + list(self.coeffs))

    def __divmod__(self, other: "UniPoly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UniPoly(), self
        quot = [_F0] * (dq + 1)
        lead = other.leading
        ob = other.coeffs
        for k in range(dq, -1, -1):
            c = rem[k + len(ob) - 1] / lead
            quot[k] = c
            if c:
                for j, bj in enumerate(ob):
                    rem[k + j] -= c * bj
        return UniPoly(quot), UniPoly(rem[: len(ob) - 1])

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return divmod(self, other)[1]

    def derivative(self) -> "UniPoly":
        return UniPoly([k * c for k, c in enumerate(self.coeffs)][1:])

    def __call__(self, x) -> Fraction:
        # Horner; exact for Fraction/int arguments.
        acc = _F0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- structure -------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("UniPoly", self.coeffs))

    def __repr__(self) -> str:
        return f"UniPoly({self.pretty()})"

    def pretty(self, var: str = "z") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                term = str(c)
            else:
                v = var if k == 1 else f"{var}^{k}"
                if c == 1:
                    term = v
                elif c == -1:
                    term = f"-{v}"
                else:
                    term = f"{c}*{v}"
            parts.append(term)
        out = parts[0]
        for term in parts[1:]:
            out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
        return out

    def to_pairs(self) -> list[list[int]]:
        """Serialize as ascending [numerator, denominator] pairs."""
        return [[c.numerator, c.denominator] for c in self.coeffs]

    @classmethod
    def from_pairs(cls, pairs: Sequence[Sequence[int]]) -> "UniPoly":
        return cls([Fraction(int(p), int(q)) for p, q in pairs])


# ----------------------------------------------------------------------
# polynomial gcd
# ----------------------------------------------------------------------

def _int_content(cs: list[int]) -> int:
    g = 0
    for c in cs:
        g = int_gcd(g, abs(c))
        if g == 1:
            break
    return g or 1

def _to_int_coeffs(p: UniPoly) -> list[int]:
    lcm = 1
    for c in p.coeffs:
        lcm = lcm * c.denominator // int_gcd(lcm, c.denominator)
    return [int(c * lcm) for c in p.coeffs]

def _int_prim(cs: list[int]) -> list[int]:
    g = _int_content(cs)
    if cs and cs[-1] < 0:
        g = -g
    return [c // g for c in cs]

def _int_pseudo_rem(a: list[int], b: list[int]) -> list[int]:
    # b nonzero, len(a) >= len(b); returns lc(b)^(da-db+1) * a mod b.
    a = list(a)
    lb = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        top = a[k + len(b) - 1]
        if top == 0:
            continue
        for i in range(len(a)):
            a[i] *= lb
        for j, bj in enumerate(b):
            a[k + j] -= top * bj
        # renormalise after each reduction step to keep growth in check
        g = _int_content(a)
        if g > 1:
            a = [c // g for c in a]
    while a and a[-1] == 0:
        a.pop()
    return a

def _int_gcd_prs(ca: list[int], cb: list[int]) -> list[int]:
    # primitive remainder sequence; slow on big degrees, kept as reference
    while cb:
        r = _int_pseudo_rem(ca, cb)
        ca, cb = cb, _int_prim(r) if r else []
    return ca

def _modp_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    # monic gcd of the mod-p images; callers ensure both leads are nonzero
    a = [c % p for c in a]
    b = [c % p for c in b]
    if len(a) < len(b):
        a, b = b, a
    while b:
        inv = pow(b[-1], -1, p)
        b = [c * inv % p for c in b]
        r = a
        for k in range(len(r) - len(b), -1, -1):
            top = r[k + len(b) - 1]
            if top:
                r[k + len(b) - 1] = 0
                for j in range(len(b) - 1):
                    r[k + j] = (r[k + j] - top * b[j]) % p
        while r and r[-1] == 0:
            r.pop()
        a, b = b, r
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]

def _int_divides(a: list[int], b: list[int]) -> bool:
    # exact divisibility in Z[x] (enough for primitive polys, by Gauss)
    if len(a) < len(b):
        return False
    r = list(a)
    lb = b[-1]
    for k in range(len(r) - len(b), -1, -1):
        top = r[k + len(b) - 1]
        if top == 0:
            continue
        if top % lb:
            return False
        q = top // lb
        for j, bj in enumerate(b):
            r[k + j] -= q * bj
    return not any(r)

def _gcd_prime_stream():
    rng = random.Random(0x9cd)
    while True:
        cand = rng.getrandbits(62) | (1 << 61) | 1
        if _is_probable_prime(cand):
            yield cand

def _int_gcd_modular(ca: list[int], cb: list[int]) -> list[int]:
    """Primitive gcd of primitive integer polynomials via mod-p images.

    For a prime not dividing the leading coefficients the image of the true
    gcd divides the mod-p gcd, so the image degree can only over-estimate:
    a degree-0 image proves coprimality outright.  Otherwise images of the
    minimal degree seen are CRT-combined (scaled to a common leading
    coefficient) until the balanced primitive lift stabilizes and exact
    trial division confirms it; a confirmed common divisor of the maximal
    possible degree *is* the gcd.
    """
    lg = int_gcd(abs(ca[-1]), abs(cb[-1]))
    acc: list[int] = []
    mod = 1
    deg = None
    prev = None
    rounds = 0
    for p in _gcd_prime_stream():
        if ca[-1] % p == 0 or cb[-1] % p == 0:
            continue
        rounds += 1
        if rounds > 64:
            break
        img = _modp_gcd(ca, cb, p)
        if len(img) == 1:
            return [1]
        scaled = [c * lg % p for c in img]
        d = len(img) - 1
        if deg is None or d < deg:
            deg, acc, mod, prev = d, scaled, p, None
        elif d > deg:
            continue
        else:
            acc = [_crt_pair(r, mod, s, p)[0] for r, s in zip(acc, scaled)]
            mod *= p
        cand = _int_prim([r - mod if 2 * r > mod else r for r in acc])
        if cand == prev and _int_divides(ca, cand) and _int_divides(cb, cand):
            return cand
        prev = cand
    return _int_gcd_prs(ca, cb)   # pragma: no cover - unlucky-prime escape

def uni_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd over the rationals (modular images, division-verified)."""
    if a.is_zero() and b.is_zero():
        return UniPoly()
    if a.is_zero():
        a, b = b, a
    if b.is_zero():
        return a.scale(1 / a.leading)
    ca, cb = _int_prim(_to_int_coeffs(a)), _int_prim(_to_int_coeffs(b))
    if len(ca) < len(cb):
        ca, cb = cb, ca
    if len(cb) == 1:
        return UniPoly.one()
    g = UniPoly(_int_gcd_modular(ca, cb))
    return g.scale(1 / g.leading)


# ======================================================================
# rational functions
# ======================================================================

class RatFunc:
    """Reduced rational function num/den in one variable.

    Canonical form: gcd(num, den) = 1 and the denominator's constant term is
    1 when nonzero (otherwise its lowest nonzero coefficient is 1).
    """

    __slots__ = ("num", "den")

    def __init__(self, num: UniPoly, den: UniPoly):
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            num, den = UniPoly(), UniPoly.one()
        else:
            g = uni_gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
            c = den.constant
            if c == 0:
                for c in den.coeffs:
                    if c != 0:
                        break
            num, den = num.scale(1 / c), den.scale(1 / c)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("RatFunc is immutable")

    @classmethod
    def from_poly(cls, p: UniPoly) -> "RatFunc":
        return cls(p, UniPoly.one())

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc(self.num * other.den + other.num * self.den,
                       self.den * other.den)

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __sub__(self, other: "RatFunc") -> "RatFunc":
        return self + (-other)

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RatFunc") -> "RatFunc":
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __eq__(self, other) -> bool:
        return (isinstance(other, RatFunc)
                and self.num == other.num and self.den == other.den)

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"RatFunc({self.pretty()})"

    def pretty(self, var: str = "z") -> str:
        if self.den == UniPoly.one():
            return self.num.pretty(var)
        return f"({self.num.pretty(var)}) / ({self.den.pretty(var)})"

    def series(self, n: int) -> list[Fraction]:
        return series_of_ratfunc(self, n)


def series_of_ratfunc(f: RatFunc, n: int) -> list[Fraction]:
    """Coefficients of z^0 .. z^n of the power series of f at the origin."""
    if n < 0:
        raise ValueError("series order must be >= 0")
    den = f.den.coeffs
    if not den or den[0] == 0:
        raise PoleAtOriginError("denominator vanishes at the origin")
    d0 = den[0]
    num = f.num
    out: list[Fraction] = []
    for k in range(n + 1):
        acc = num.coeff(k)
        for j in range(1, min(k, len(den) - 1) + 1):
            acc -= den[j] * out[k - j]
        out.append(acc / d0)
    return out


# ======================================================================
# linear recurrences and fitting
# ======================================================================

class LinRec:
    """Linear recurrence a_k = sum_i coeffs[i-1] * a_{k-i} with initial terms.

    The recurrence is valid for every k >= order; `initial` must hold at
    least `order` terms and the stored terms beyond the order are simply
    extra leading terms of the sequence (they shape the numerator when the
    recurrence is turned into a rational function).
    """

    __slots__ = ("coeffs", "initial")

    def __init__(self, coeffs: Iterable, initial: Iterable):
        cs = tuple(c if isinstance(c, Fraction) else Fraction(c) for c in coeffs)
        init = tuple(c if isinstance(c, Fraction) else Fraction(c) for c in initial)
        if len(init) < len(cs):
            raise ValueError("need at least `order` initial terms")
        object.__setattr__(self, "coeffs", cs)
        object.__setattr__(self, "initial", init)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("LinRec is immutable")

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def extend(self, n: int) -> list[Fraction]:
        """First n+1 sequence terms (indices 0..n)."""
        out = list(self.initial[: n + 1])
        cs = self.coeffs
        for k in range(len(out), n + 1):
            acc = _F0
            for i, c in enumerate(cs, start=1):
                acc += c * out[k - i]
            out.append(acc)
        return out

    def holds_on(self, seq: Sequence) -> bool:
        """Check the recurrence on every index >= order of the given terms."""
        cs = self.coeffs
        d = len(cs)
        if all(c.denominator == 1 for c in cs) and all(
                isinstance(t, int)
                or (isinstance(t, Fraction) and t.denominator == 1)
                for t in seq):
            # pure-int inner loop: skips Fraction normalization per step
            ics = [(i, c.numerator) for i, c in enumerate(cs, start=1) if c]
            iseq = [int(t) for t in seq]
            for k in range(d, len(iseq)):
                acc = 0
                for i, c in ics:
                    acc += c * iseq[k - i]
                if acc != iseq[k]:
                    return False
            return True
        for k in range(d, len(seq)):
            acc = _F0
            for i, c in enumerate(cs, start=1):
                acc += c * seq[k - i]
            if acc != seq[k]:
                return False
        return True

    def __eq__(self, other) -> bool:
        return (isinstance(other, LinRec) and self.coeffs == other.coeffs
                and self.initial == other.initial)

    def __repr__(self) -> str:
        return f"LinRec(order={self.order}, coeffs={list(self.coeffs)})"


def ratfunc_from_recurrence(rec: LinRec) -> RatFunc:
    """Rational function whose series expansion reproduces the recurrence.

    Denominator is 1 - sum_i r_i z^i; the numerator is the product of the
    denominator with the initial-terms polynomial, truncated below
    len(initial) (so it has degree < order + extra initial terms).
    """
    den = UniPoly([_F1] + [-c for c in rec.coeffs])
    init = UniPoly(rec.initial)
    prod = den * init
    num = UniPoly(prod.coeffs[: len(rec.initial)])
    return RatFunc(num, den)


# -- Berlekamp-Massey ---------------------------------------------------

def _bm_generic(seq, zero, one, div):
    """Minimal LFSR for seq over a field; returns (L, [r_1..r_L])."""
    conn = [one]
    back = [one]
    L = 0
    gap = 1
    last_d = one
    for i, s in enumerate(seq):
        d = s
        for j in range(1, L + 1):
            if conn[j] != zero:
                d = d + conn[j] * seq[i - j]
        if d == zero:
            gap += 1
            continue
        coef = div(d, last_d)
        need = gap + len(back)
        if len(conn) < need:
            conn = conn + [zero] * (need - len(conn))
        if 2 * L <= i:
            prev = conn[:]
            for j, bj in enumerate(back):
                if bj != zero:
                    conn[gap + j] = conn[gap + j] - coef * bj
            L = i + 1 - L
            back = prev
            last_d = d
            gap = 1
        else:
            for j, bj in enumerate(back):
                if bj != zero:
                    conn[gap + j] = conn[gap + j] - coef * bj
            gap += 1
    if len(conn) < L + 1:
        conn = conn + [zero] * (L + 1 - len(conn))
    return L, [-conn[j] for j in range(1, L + 1)]


def _bm_exact(seq: Sequence[Fraction]):
    return _bm_generic(seq, _F0, _F1, lambda a, b: a / b)


def _bm_modp(seq_mod: Sequence[int], p: int):
    zero, one = 0, 1

    class _M(int):
        def __add__(self, o): return _M((int(self) + int(o)) % p)
        def __sub__(self, o): return _M((int(self) - int(o)) % p)
        def __mul__(self, o): return _M((int(self) * int(o)) % p)
        def __neg__(self): return _M((-int(self)) % p)

    ms = [_M(x % p) for x in seq_mod]
    L, coeffs = _bm_generic(ms, _M(0), _M(1),
                            lambda a, b: _M(int(a) * pow(int(b), -1, p) % p))
    return L, [int(c) % p for c in coeffs]


# -- primes / CRT / rational reconstruction -----------------------------

def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _fitting_primes(count: int) -> list[int]:
    rng = random.Random(0x5eed)
    primes: list[int] = []
    while len(primes) < count:
        cand = rng.getrandbits(62) | (1 << 61) | 1
        if _is_probable_prime(cand) and cand not in primes:
            primes.append(cand)
    return primes


def _crt_pair(r1: int, m1: int, r2: int, m2: int) -> tuple[int, int]:
    t = (r2 - r1) * pow(m1, -1, m2) % m2
    return r1 + m1 * t, m1 * m2

def _rational_reconstruct(c: int, m: int) -> Optional[Fraction]:
    """Find n/d with c*d = n (mod m), |n|, d <= sqrt(m/2), gcd(d, m) = 1."""
    bound = int((m // 2) ** 0.5)
    r0, r1 = m, c % m
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    n, d = r1, s1
    if d == 0 or abs(n) > bound or abs(d) > bound:
        return None
    if d < 0:
        n, d = -n, -d
    if int_gcd(abs(n), d) != 1 or int_gcd(d, m) != 1:
        return None
    return Fraction(n, d)


_ORDER_EXCEEDED = object()   # sentinel: no fit within the bound can exist


def _fit_modular(seq: Sequence[int], max_order: int):
    """Multi-prime fit of an integer sequence, verified exactly afterwards.

    Mod-p fitting can only under- or exactly estimate the true minimal order
    (away from finitely many bad primes), so a candidate that verifies
    exactly against every given term *is* the minimal recurrence.  Returns
    _ORDER_EXCEEDED when every prime's order already beats the bound, or
    None when CRT lifting / verification keeps failing (the caller then
    falls back to the exact fit).
    """
    fits: list[tuple[int, int, tuple]] = []
    n_primes = 3
    for _ in range(6):
        primes = _fitting_primes(n_primes)   # seeded: prefix-stable
        for p in primes[len(fits):]:
            fits.append((p, *_bm_modp([t % p for t in seq], p)))
        if min(f[1] for f in fits) > max_order:
            return _ORDER_EXCEEDED
        L = max(f[1] for f in fits)
        if L > max_order:
            # primes disagree, so at least one is unlucky; outvote it
            n_primes *= 2
            continue
        good = [(p, cs) for (p, Lp, cs) in fits if Lp == L]
        coeffs: list[Fraction] = []
        for k in range(L):
            r, m = 0, 1
            for p, cs in good:
                r, m = _crt_pair(r, m, cs[k], p)
            bal = r if r <= m // 2 else r - m
            if abs(bal) * 4 <= m:
                coeffs.append(Fraction(bal))
            else:
                # balanced lift fills most of the modulus: either the modulus
                # is still too small or the coefficient is a true rational
                frac = _rational_reconstruct(r, m)
                if frac is None:
                    coeffs = []
                    break
                coeffs.append(frac)
        if len(coeffs) == L:
            rec = LinRec(coeffs, seq[:L] if L else ())
            if rec.holds_on(seq):
                return rec
        n_primes *= 2
    return None


def fit_min_recurrence(seq: Sequence, max_order: int) -> Optional[LinRec]:
    """Minimal-order linear recurrence consistent with *all* of seq.

    Requires len(seq) >= 2 * max_order + 1 so that an order-max_order fit is
    still overdetermined.  Returns None when no recurrence within the bound
    fits the whole sequence.
    """
    if max_order < 0:
        raise ValueError("max_order must be >= 0")
    need = 2 * max_order + 1
    if len(seq) < need:
        raise InsufficientTermsError(
            f"need at least {need} terms to fit order {max_order}, got {len(seq)}")
    # fast path: long integer sequences go through mod-p fitting + exact check
    if len(seq) > 64 and all(
            isinstance(t, int) or (isinstance(t, Fraction) and t.denominator == 1)
            for t in seq):
        rec = _fit_modular([int(t) for t in seq], max_order)
        if rec is _ORDER_EXCEEDED:
            # mod-p orders lower-bound the exact order, so no recurrence
            # within the bound exists and the exact fit would be wasted work
            return None
        if rec is not None:
            return rec
        # fall through to the exact fit: slower, but authoritative
    fseq = [t if isinstance(t, Fraction) else Fraction(t) for t in seq]
    L, coeffs = _bm_exact(fseq)
    if L > max_order:
        return None
    rec = LinRec(coeffs, fseq[:L] if L else ())
    if not rec.holds_on(fseq):  # pragma: no cover - BM guarantees this
        raise FitError("Berlekamp-Massey produced an inconsistent recurrence")
    return rec


# ======================================================================
# dominant pole isolation
# ======================================================================

def _first_sign_change(q: UniPoly, sign0: int, step: Fraction,
                       limit: Fraction) -> Optional[tuple[Fraction, Fraction]]:
    """Leftmost sign change of q on the grid step, 2*step, ... <= limit."""
    x = step
    prev = Fraction(0)
    while x <= limit:
        v = q(x)
        if v == 0:
            return x, x
        if (1 if v > 0 else -1) != sign0:
            return prev, x
        prev = x
        x += step
    return None


def isolate_dominant_pole(q: UniPoly, precision: int = 12) -> tuple[Fraction, Fraction]:
    """Bracket the smallest positive real root of q to width 10^-precision.

    Pure rational arithmetic: a dyadic grid scan locates the leftmost sign
    change, bisection narrows it, and a finer confirmation scan of the
    prefix (0, root) guards against an earlier crossing hiding between
    coarse grid points.  Roots of even multiplicity (no sign change) are
    not detected.
    """
    if q.is_zero() or q.degree < 1:
        raise NoPositiveRootError("polynomial has no positive real root")
    if q.constant == 0:
        # factor out z^k first; z = 0 is not a positive root
        cs = list(q.coeffs)
        while cs and cs[0] == 0:
            cs.pop(0)
        return isolate_dominant_pole(UniPoly(cs), precision)
    signs = [1 if c > 0 else -1 for c in q.coeffs if c != 0]
    variations = sum(1 for a, b in zip(signs, signs[1:]) if a != b)
    if variations == 0:
        # Descartes: no sign variation means no positive real root at all
        raise NoPositiveRootError("polynomial has no positive real root")
    lead = abs(q.leading)
    bound = 1 + max(abs(c) for c in q.coeffs) / lead  # Cauchy bound on all roots
    sign0 = 1 if q.constant > 0 else -1
    width = Fraction(1, 10 ** precision)

    bracket = None
    for depth in range(1, 21):  # capped: ~2M evaluations worst case
        bracket = _first_sign_change(q, sign0, bound / (2 ** depth), bound)
        if bracket is not None:
            break
    if bracket is None:
        # only sign-crossing roots are detectable by bracketing
        raise NoPositiveRootError("no sign change located on (0, root bound]")

    for _ in range(64):
        lo, hi = bracket
        if lo == hi:
            return lo, lo
        flo = q(lo) if lo else Fraction(sign0)
        while hi - lo > width:
            mid = (lo + hi) / 2
            v = q(mid)
            if v == 0:
                lo = hi = mid
                break
            if (v > 0) == (flo > 0):
                lo, flo = mid, v
            else:
                hi = mid
        if lo == 0:
            return lo, hi
        # confirmation: no earlier crossing on a 512-point prefix grid
        earlier = _first_sign_change(q, sign0, lo / 512, lo)
        if earlier is None or earlier[0] >= lo:
            return lo, hi
        bracket = earlier
    raise NoPositiveRootError("sign-change bracketing failed to stabilise")
