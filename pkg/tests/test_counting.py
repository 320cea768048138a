"""Counting facade: exact counts, series, GFs, enumerators, and the cache."""

from __future__ import annotations

import json

import pytest

from gridham import counting
from gridham.algebra import RatFunc, UniPoly, series_of_ratfunc
from gridham.automaton import automaton
from gridham.counting import (CACHE_ENV, count_cycles, count_series, gf_count,
                              gf_weighted, monomial_coefficient,
                              normalize_weight_spec, series_of_weighted_gf,
                              weight_enumerator)
from gridham.errors import DomainError, ResourceLimitError
from gridham.multipoly import MultiPoly
from gridham.walks import WalkSeries, WeightedDigraph

M10_SERIES = [0, 0, 1, 16, 1517, 18684, 1024028, 17066492,
              681728204, 13916993782, 467260456608]
M10_N100 = int(
    "2841755307998403180696485173480879907420461708673514070665759422586711"
    "26855416799214435461577164935511762299757966788827828321166383429987198")

# weight enumerator of the 4 x 10 grid: (row1, row2, row3) one-counts
P4X10_TERMS = {
    (5, 5, 9): 1, (5, 6, 8): 4, (5, 7, 7): 6, (5, 8, 6): 4, (5, 9, 5): 1,
    (6, 4, 9): 36, (6, 5, 8): 67, (6, 6, 7): 42, (6, 7, 6): 15, (6, 8, 5): 4,
    (7, 3, 9): 126, (7, 4, 8): 178, (7, 5, 7): 137, (7, 6, 6): 42,
    (7, 7, 5): 6,
    (8, 2, 9): 84, (8, 3, 8): 259, (8, 4, 7): 178, (8, 5, 6): 67,
    (8, 6, 5): 4,
    (9, 1, 9): 9, (9, 2, 8): 84, (9, 3, 7): 126, (9, 4, 6): 36, (9, 5, 5): 1,
}

# weighted GF of height 4, sign convention with constant -1 in the denominator
GF4_W_NUM = {(2, 1, 1, 1): -1}
GF4_W_DEN = {
    (4, 3, 2, 3): 1, (3, 2, 2, 2): -2, (2, 2, 1, 1): 1, (2, 2, 0, 2): -1,
    (2, 1, 2, 1): 1, (2, 1, 1, 2): 1, (1, 1, 0, 1): 2, (0, 0, 0, 0): -1,
}


def rf(num, den) -> RatFunc:
    return RatFunc(UniPoly(num), UniPoly(den))


def automaton_count(m: int, n: int) -> int:
    g = WeightedDigraph.from_automaton(automaton(m - 1))
    return WalkSeries(g).coeff(n)


# ----------------------------------------------------------------------
# counts and series
# ----------------------------------------------------------------------

def test_known_counts():
    assert count_cycles(10, 10) == 467260456608
    assert count_cycles(4, 10) == 1517
    assert count_cycles(10, 4) == 1517
    assert count_cycles(5, 7) == 0
    for n in (2, 3, 11, 40):
        assert count_cycles(2, n) == 1


def test_count_10_100():
    assert count_cycles(10, 100) == M10_N100
    assert len(str(M10_N100)) == 141


def test_count_series_m10():
    assert count_series(10, 10) == M10_SERIES


def test_count_series_small():
    assert count_series(4, 6) == [0, 0, 1, 2, 6, 14, 37]
    assert count_series(2, 4) == [0, 0, 1, 1, 1]
    assert count_series(3, 0) == [0]


def test_series_matches_counts():
    series = count_series(6, 9)
    for n in range(2, 10):
        assert series[n] == count_cycles(6, n)


def test_count_domain_errors():
    with pytest.raises(DomainError):
        count_cycles(1, 5)
    with pytest.raises(DomainError):
        count_cycles(4, 1)
    with pytest.raises(DomainError):
        count_series(0, 3)


def test_symmetry_without_canonical_swap():
    # swap-free automaton sweeps in both orientations must agree
    for m in range(2, 8):
        for n in range(m, 8):
            assert automaton_count(m, n) == automaton_count(n, m)


def test_odd_odd_counts_vanish():
    for m in range(3, 10, 2):
        for n in range(3, 10, 2):
            assert count_cycles(m, n) == 0


def test_large_n_recurrence_matches_sweep():
    # the rolling integer recurrence and a raw sweep must agree far out
    n = 700
    direct = WalkSeries(WeightedDigraph.from_automaton(automaton(3))).coeff(n)
    assert count_cycles(4, n) == direct


# ----------------------------------------------------------------------
# plain generating functions
# ----------------------------------------------------------------------

def test_gf_goldens():
    assert gf_count(4) == rf([0, 0, 1], [1, -2, -2, 2, -1])
    assert gf_count(5) == rf([0, 0, 1, 0, 3], [1, 0, -11, 0, 0, 0, -2])
    assert gf_count(2) == rf([0, 0, 1], [1, -1])


def test_gf_series_roundtrip():
    for m in (3, 6):
        f = gf_count(m)
        series = series_of_ratfunc(f, 12)
        assert series[0] == 0 and series[1] == 0
        for n in range(2, 13):
            assert series[n] == count_cycles(m, n)


def test_gf_refit_verified_on_extra_terms():
    # re-expand each fitted GF well past its fit window
    for m in range(2, 9):
        f = gf_count(m, no_cache=True)
        horizon = 2 * f.den.degree + f.num.degree + 10
        got = series_of_ratfunc(f, horizon)
        want = WalkSeries(
            WeightedDigraph.from_automaton(automaton(m - 1))).upto(horizon)
        assert got == want


def test_gf_domain_error():
    with pytest.raises(DomainError):
        gf_count(1)


# ----------------------------------------------------------------------
# GF cache
# ----------------------------------------------------------------------

def fresh_memo():
    counting._gf_memo.clear()


@pytest.fixture
def no_packaged(monkeypatch):
    # hide the packaged cache so the compute-and-store path runs
    monkeypatch.setattr(counting, "_packaged_root", lambda: None)
    fresh_memo()
    yield
    fresh_memo()


def test_cache_roundtrip(tmp_path, no_packaged):
    f = gf_count(5, cache_dir=tmp_path)
    path = tmp_path / "gf-m5.json"
    assert path.is_file()
    data = json.loads(path.read_text())
    assert data["format"] == "gridham-gf"
    assert data["m"] == 5
    fresh_memo()
    assert gf_count(5, cache_dir=tmp_path) == f
    fresh_memo()


def test_cache_env_var(tmp_path, monkeypatch, no_packaged):
    monkeypatch.setenv(CACHE_ENV, str(tmp_path))
    f = gf_count(4)
    assert (tmp_path / "gf-m4.json").is_file()
    fresh_memo()
    monkeypatch.delenv(CACHE_ENV)
    assert gf_count(4, no_cache=True) == f
    fresh_memo()


def test_cache_bypass_identical(tmp_path, no_packaged):
    cached = gf_count(6, cache_dir=tmp_path)
    fresh_memo()
    assert gf_count(6, no_cache=True) == cached
    fresh_memo()


def test_corrupt_cache_is_rejected(tmp_path, no_packaged):
    gf_count(4, cache_dir=tmp_path)
    path = tmp_path / "gf-m4.json"
    data = json.loads(path.read_text())
    data["num"] = [[2, 1], [5, 1]]  # wrong GF, right schema
    path.write_text(json.dumps(data))
    fresh_memo()
    with pytest.raises(RuntimeError, match="disagrees"):
        gf_count(4, cache_dir=tmp_path)
    fresh_memo()


def test_unrecognized_cache_is_rejected(tmp_path, no_packaged):
    gf_count(4, cache_dir=tmp_path)
    path = tmp_path / "gf-m4.json"
    data = json.loads(path.read_text())
    data["version"] = 999
    path.write_text(json.dumps(data))
    fresh_memo()
    with pytest.raises(RuntimeError, match="unrecognized"):
        gf_count(4, cache_dir=tmp_path)
    fresh_memo()


def test_packaged_cache_present():
    fresh_memo()
    root = counting._packaged_root()
    assert root is not None
    for m in range(2, 11):
        assert (root / f"gf-m{m}.json").is_file()
    fresh_memo()


# ----------------------------------------------------------------------
# weight specs
# ----------------------------------------------------------------------

def test_weight_spec_forms():
    assert normalize_weight_spec(3, None) == (True, True, True)
    assert normalize_weight_spec(3, "all") == (True, True, True)
    assert normalize_weight_spec(3, ["w", 1, "w"]) == (True, False, True)
    assert normalize_weight_spec(2, [True, False]) == (True, False)
    assert normalize_weight_spec(2, ["1", None]) == (False, False)


def test_weight_spec_errors():
    with pytest.raises(DomainError):
        normalize_weight_spec(3, ["w", 1])
    with pytest.raises(DomainError):
        normalize_weight_spec(2, ["q", 1])


# ----------------------------------------------------------------------
# weight enumerators
# ----------------------------------------------------------------------

def test_enumerator_4x10_golden():
    p = weight_enumerator(4, 10)
    assert {e: int(c) for e, c in p.terms.items()} == P4X10_TERMS
    assert p.coeff((9, 3, 7)) == 126
    assert sum(p.terms.values()) == 1517


def test_enumerator_totals_match_counts():
    for m, n in ((2, 6), (3, 4), (4, 6), (5, 6), (6, 5)):
        p = weight_enumerator(m, n)
        assert sum(p.terms.values()) == count_cycles(m, n)


def test_enumerator_reflection_symmetry():
    for m, n in ((4, 6), (4, 10), (5, 6), (6, 5)):
        p = weight_enumerator(m, n)
        flipped = {e[::-1]: c for e, c in p.terms.items()}
        assert flipped == dict(p.terms)


def test_enumerator_row_semantics_against_oracle():
    # marker exponents = per-row one counts of the cell matrices
    from gridham.geometry import matrix_from_columns
    from gridham.automaton import accepted_words
    for m, n in ((3, 6), (4, 5)):
        rows = m - 1
        tally: dict[tuple, int] = {}
        for word in accepted_words(automaton(rows), n - 1):
            mat = matrix_from_columns(word)
            key = tuple(sum(r) for r in mat)
            tally[key] = tally.get(key, 0) + 1
        assert tally == {e: int(c) for e, c
                         in weight_enumerator(m, n).terms.items()}


def test_enumerator_inactive_rows_collapse():
    full = weight_enumerator(4, 8)
    part = weight_enumerator(4, 8, ["w", 1, 1])
    squashed: dict[tuple, int] = {}
    for (a, b, c), v in full.terms.items():
        key = (a, 0, 0)
        squashed[key] = squashed.get(key, 0) + v
    assert squashed == {e: int(c) for e, c in part.terms.items()}


def test_enumerator_m2_is_single_monomial():
    p = weight_enumerator(2, 9)
    assert dict(p.terms) == {(8,): 1}


def test_enumerator_guard():
    with pytest.raises(ResourceLimitError):
        weight_enumerator(8, 40, max_terms=50)


# ----------------------------------------------------------------------
# weighted generating functions
# ----------------------------------------------------------------------

def test_gf_weighted_4_golden():
    num, den = gf_weighted(4)
    p_num = MultiPoly(4, GF4_W_NUM)
    p_den = MultiPoly(4, GF4_W_DEN)
    # equal as rational functions, and equal termwise after sign flip
    assert num * p_den == p_num * den
    assert num == p_num.scale(-1)
    assert den == p_den.scale(-1)


def test_gf_weighted_specializes_to_gf_count():
    for m in (2, 3, 4):
        num, den = gf_weighted(m)
        for i in range(1, m):
            num = num.substitute(i, 1)
            den = den.substitute(i, 1)
        f = gf_count(m)
        assert num.as_unipoly(0) * f.den == den.as_unipoly(0) * f.num


def test_gf_weighted_series_matches_enumerator():
    num, den = gf_weighted(4)
    series = series_of_weighted_gf(num, den, 10)
    assert series[10] == weight_enumerator(4, 10)
    assert series[5] == weight_enumerator(4, 5)
    assert series[0].is_zero() and series[1].is_zero()


def test_gf_weighted_single_marker_reflection():
    top_num, top_den = gf_weighted(4, ["w", 1, 1])
    bot_num, bot_den = gf_weighted(4, [1, 1, "w"])
    swap = {0: 0, 1: 3, 2: 2, 3: 1}
    relabel = lambda p: MultiPoly(
        4, {tuple(e[swap[i]] for i in range(4)): c for e, c in p.terms.items()})
    assert relabel(top_num) == bot_num
    assert relabel(top_den) == bot_den


def test_gf_weighted_all_ones_spec():
    num, den = gf_weighted(5, [1, 1, 1, 1])
    f = gf_count(5)
    assert num.as_unipoly(0) == f.num
    assert den.as_unipoly(0) == f.den


def test_gf_weighted_guard():
    with pytest.raises(ResourceLimitError):
        gf_weighted(6)
    with pytest.raises(DomainError):
        gf_weighted(1)


@pytest.mark.slow
def test_gf_weighted_5_cross_checks():
    num, den = gf_weighted(5)
    series = series_of_weighted_gf(num, den, 8)
    assert series[8] == weight_enumerator(5, 8)
    assert series[7] == weight_enumerator(5, 7)
    for i in range(1, 5):
        num = num.substitute(i, 1)
        den = den.substitute(i, 1)
    f = gf_count(5)
    assert num.as_unipoly(0) * f.den == den.as_unipoly(0) * f.num


# ----------------------------------------------------------------------
# monomial coefficients
# ----------------------------------------------------------------------

def test_monomial_reference_values():
    assert monomial_coefficient(4, 100, (90, 31, 78)) == int(
        "1113455025360859674900898483836789708")
    assert monomial_coefficient(6, 100, (80, None, None, None, None)) == int(
        "5769998174321676578317324842520250953447414723592327870562345553858"
        "388042")


def test_monomial_small_values():
    assert monomial_coefficient(4, 10, (9, 5, 5)) == 1
    assert monomial_coefficient(4, 10, (9, 3, 7)) == 126
    assert monomial_coefficient(4, 10, (8, 5, 6)) == 67
    assert monomial_coefficient(4, 10, (2, 2, 2)) == 0


def test_monomial_matches_enumerator():
    p = weight_enumerator(4, 7)
    for e, c in p.terms.items():
        assert monomial_coefficient(4, 7, e) == c


def test_monomial_wildcards():
    assert monomial_coefficient(4, 9, (None, None, None)) == count_cycles(4, 9)
    got = monomial_coefficient(4, 9, ("*", 4, "*"))
    want = sum(c for e, c in weight_enumerator(4, 9).terms.items()
               if e[1] == 4)
    assert got == want


def test_monomial_out_of_range_is_zero():
    assert monomial_coefficient(4, 6, (6, 1, 1)) == 0
    assert monomial_coefficient(3, 5, (0, 0)) == 0
