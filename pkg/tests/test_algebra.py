"""Exact-arithmetic layer: polynomials, rational functions, recurrence
fitting, series extraction and dominant-root isolation."""

from fractions import Fraction
import random
import time

import pytest

from gridham.algebra import (
    LinRec,
    RatFunc,
    UniPoly,
    fit_min_recurrence,
    isolate_dominant_pole,
    ratfunc_from_recurrence,
    series_of_ratfunc,
    uni_gcd,
)
from gridham.errors import (
    InsufficientTermsError,
    NoPositiveRootError,
    PoleAtOriginError,
)

F = Fraction


def P(*coeffs):
    return UniPoly(coeffs)


# ----------------------------------------------------------------------
# rationals / polynomials
# ----------------------------------------------------------------------

def test_rational_inverse_property():
    rng = random.Random(1)
    for _ in range(300):
        a = rng.randint(-10**6, 10**6)
        b = rng.randint(1, 10**6)
        if a == 0:
            continue
        q = F(a, b)
        assert q * (1 / q) == 1


def test_unipoly_normalisation_and_degree():
    assert P().degree == -1
    assert P(0, 0, 0).degree == -1
    assert P(5).degree == 0
    assert P(1, 2, 0).degree == 1
    assert P(0, 0, 3).coeffs == (F(0), F(0), F(3))


def test_unipoly_degree_of_product_property():
    rng = random.Random(2)
    for _ in range(200):
        f = P(*[rng.randint(-4, 4) for _ in range(rng.randint(1, 6))])
        g = P(*[rng.randint(-4, 4) for _ in range(rng.randint(1, 6))])
        if f.is_zero() or g.is_zero():
            continue
        assert (f * g).degree == f.degree + g.degree


def test_unipoly_divmod_roundtrip():
    rng = random.Random(3)
    for _ in range(200):
        a = P(*[F(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(rng.randint(0, 7))])
        b = P(*[F(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(rng.randint(1, 5))])
        if b.is_zero():
            continue
        q, r = divmod(a, b)
        assert q * b + r == a
        assert r.is_zero() or r.degree < b.degree


def test_uni_gcd_common_factor():
    g = P(-1, 0, 1)            # z^2 - 1
    a = g * P(3, 1)
    b = g * P(0, 0, 5, 2)
    d = uni_gcd(a, b)
    assert d == P(-1, 0, 1)    # monic
    assert (a % d).is_zero() and (b % d).is_zero()


def test_uni_gcd_matches_remainder_sequence():
    # the modular gcd must agree with the primitive remainder sequence
    from gridham.algebra import _int_gcd_prs, _int_prim, _to_int_coeffs

    rng = random.Random(11)
    for _ in range(120):
        def rand_poly(lo, hi):
            return P(*[rng.randint(-9, 9) for _ in range(rng.randint(lo, hi))])
        g = rand_poly(1, 5)
        a, b = g * rand_poly(1, 6), g * rand_poly(1, 6)
        if a.is_zero() or b.is_zero():
            continue
        got = uni_gcd(a, b)
        ca = _int_prim(_to_int_coeffs(a))
        cb = _int_prim(_to_int_coeffs(b))
        if len(ca) < len(cb):
            ca, cb = cb, ca
        want = P(*_int_gcd_prs(ca, cb))
        assert got == want.scale(1 / want.leading)
        assert (a % got).is_zero() and (b % got).is_zero()


def test_uni_gcd_big_coprime_is_fast():
    # coprimality of large-degree pairs must come from a single mod-p image
    rng = random.Random(12)
    a = P(*[rng.randint(-10**60, 10**60) for _ in range(300)], 1)
    b = a.derivative() + P(*[rng.randint(-10**60, 10**60) for _ in range(150)])
    start = time.time()
    d = uni_gcd(a, b)
    assert time.time() - start < 5.0
    assert d == UniPoly.one()


def test_ratfunc_canonical_form():
    # common factors cancel and the denominator constant term becomes 1
    f = RatFunc(P(0, 0, -1), P(-1, 2, -2, 2, 1).scale(1))
    g = RatFunc(P(0, 0, 1), P(1, -2, 2, -2, -1))
    assert f == g
    # multiplying numerator and denominator by a common polynomial is a no-op
    h = RatFunc(f.num * P(2, 3, 1), f.den * P(2, 3, 1))
    assert h == f
    assert f.den.constant == 1


def test_ratfunc_field_ops():
    one = RatFunc.from_poly(UniPoly.one())
    f = RatFunc(P(0, 1), P(1, -1))
    assert f - f == RatFunc.from_poly(UniPoly.zero())
    assert f / f == one
    assert (f + f) == RatFunc(P(0, 2), P(1, -1))


# ----------------------------------------------------------------------
# series extraction
# ----------------------------------------------------------------------

def test_series_of_reference_height4_function():
    f = RatFunc(P(0, 0, 1), P(1, -2, -2, 2, -1))
    assert series_of_ratfunc(f, 6) == [0, 0, 1, 2, 6, 14, 37]


def test_series_of_reference_height5_function():
    f = RatFunc(P(0, 0, 1, 0, 3), P(1, 0, -11, 0, 0, 0, -2))
    assert series_of_ratfunc(f, 4) == [0, 0, 1, 0, 14]


def test_series_pole_at_origin_rejected():
    f = RatFunc(P(1), P(0, 1))
    with pytest.raises(PoleAtOriginError):
        series_of_ratfunc(f, 3)


def test_series_linear_in_numerator_property():
    rng = random.Random(4)
    den = P(1, -1, -1)
    for _ in range(50):
        n1 = P(*[rng.randint(-5, 5) for _ in range(4)])
        n2 = P(*[rng.randint(-5, 5) for _ in range(4)])
        s1 = series_of_ratfunc(RatFunc(n1, den), 12)
        s2 = series_of_ratfunc(RatFunc(n2, den), 12)
        s12 = series_of_ratfunc(RatFunc(n1 + n2, den), 12)
        assert s12 == [a + b for a, b in zip(s1, s2)]


# ----------------------------------------------------------------------
# linear recurrences
# ----------------------------------------------------------------------

def test_linrec_extend_reproduces_initial_terms():
    rec = LinRec([2, 2, -2, 1], [0, 0, 1, 2, 6, 14])
    assert rec.extend(10) == [0, 0, 1, 2, 6, 14, 37, 92, 236, 596, 1517]


def test_fit_min_recurrence_known_order4():
    rec = fit_min_recurrence([1, 2, 6, 14, 37, 92, 236, 596, 1517], 4)
    assert rec is not None
    assert rec.order == 4
    assert rec.coeffs == (F(2), F(2), F(-2), F(1))


def test_fit_constant_sequence():
    rec = fit_min_recurrence([1, 1, 1, 1, 1], 1)
    assert rec is not None and rec.order == 1 and rec.coeffs == (F(1),)


def test_fit_refuses_insufficient_window():
    with pytest.raises(InsufficientTermsError):
        fit_min_recurrence([1, 2, 3], 2)


def test_fit_no_fit_within_bound():
    assert fit_min_recurrence([0, 1, 0, 2, 0, 4, 0], 1) is None


def test_fit_rational_coefficients():
    # a_k = a_{k-1}/2 + a_{k-2}
    seq = [F(4), F(2)]
    for _ in range(12):
        seq.append(seq[-1] / 2 + seq[-2])
    rec = fit_min_recurrence(seq, 3)
    assert rec is not None and rec.order == 2
    assert rec.coeffs == (F(1, 2), F(1))


def test_fit_modular_fast_path_long_integer_sequence():
    # long Fibonacci-like integer sequence exercises the multi-prime path
    seq = [0, 1]
    for _ in range(200):
        seq.append(3 * seq[-1] + 5 * seq[-2])
    rec = fit_min_recurrence(seq, 10)
    assert rec is not None and rec.order == 2
    assert rec.coeffs == (F(3), F(5))
    assert rec.holds_on(seq)


def test_fit_roundtrip_through_ratfunc():
    rng = random.Random(5)
    for _ in range(30):
        order = rng.randint(1, 4)
        coeffs = [rng.randint(-3, 3) for _ in range(order)]
        if coeffs[-1] == 0:
            coeffs[-1] = 1
        init = [rng.randint(-4, 4) for _ in range(order)]
        rec = LinRec(coeffs, init)
        seq = rec.extend(4 * order + 6)
        fit = fit_min_recurrence(seq, 2 * order)
        assert fit is not None and fit.order <= order
        assert fit.holds_on(seq)
        f = ratfunc_from_recurrence(fit)
        assert series_of_ratfunc(f, len(seq) - 1) == seq


def test_ratfunc_from_recurrence_reference_form():
    rec = LinRec([2, 2, -2, 1], [0, 0, 1, 2])
    f = ratfunc_from_recurrence(rec)
    assert f == RatFunc(P(0, 0, 1), P(1, -2, -2, 2, -1))


def test_ratfunc_from_recurrence_extra_initial_terms():
    # exceptional leading terms push the numerator degree past the order
    rec = LinRec([1], [5, 1, 1])
    f = ratfunc_from_recurrence(rec)
    assert series_of_ratfunc(f, 6) == [5, 1, 1, 1, 1, 1, 1]


# ----------------------------------------------------------------------
# dominant pole isolation
# ----------------------------------------------------------------------

def test_pole_linear_exact_hit():
    lo, hi = isolate_dominant_pole(P(1, -2), 10)
    assert lo == hi == F(1, 2)


def test_pole_of_reference_height5_denominator():
    q = P(1, 0, -11, 0, 0, 0, -2)
    lo, hi = isolate_dominant_pole(q, 10)
    assert hi - lo <= F(1, 10**10)
    assert q(lo) * q(hi) <= 0
    # cross-check: 11 rho^2 + 2 rho^6 = 1 at the root
    mid = (lo + hi) / 2
    assert abs(11 * mid**2 + 2 * mid**6 - 1) < F(1, 10**8)


def test_pole_of_reference_height4_denominator():
    q = P(1, -2, -2, 2, -1)
    lo, hi = isolate_dominant_pole(q, 12)
    growth = 1 / ((lo + hi) / 2)
    assert F(25386, 10000) < growth < F(25387, 10000)


def test_pole_leftmost_of_two_roots():
    # (1 - 3z)(1 - z) = 1 - 4z + 3z^2: the smaller positive root is 1/3
    lo, hi = isolate_dominant_pole(P(1, -4, 3), 12)
    assert lo <= F(1, 3) <= hi


def test_pole_none_found():
    with pytest.raises(NoPositiveRootError):
        isolate_dominant_pole(P(1, 0, 1), 8)   # 1 + z^2 > 0 on (0, inf)


def test_pole_prefix_has_no_earlier_sign_change():
    q = P(1, -2, -2, 2, -1)
    lo, hi = isolate_dominant_pole(q, 10)
    s0 = 1 if q.constant > 0 else -1
    for k in range(1, 200):
        x = lo * k / 200
        v = q(x)
        assert v == 0 or (1 if v > 0 else -1) == s0
