from __future__ import annotations

import random

import pytest

from gridham.errors import InvalidCycleError
from gridham.geometry import (
    RenderOptions,
    cycle_to_matrix,
    edge,
    matrix_from_columns,
    matrix_to_columns,
    matrix_to_cycle,
    render_ascii,
    render_svg,
)
from gridham.oracle import enumerate_valid_matrices

UNIT_SQUARE = ((1,),)

H_SHAPE = ((1, 1, 1), (0, 1, 0), (1, 1, 1))

NOTCH = ((1, 0, 1), (1, 1, 1))


def test_unit_square_cycle():
    c = matrix_to_cycle(UNIT_SQUARE)
    assert c == frozenset({
        edge((0, 0), (0, 1)), edge((0, 1), (1, 1)),
        edge((1, 0), (1, 1)), edge((0, 0), (1, 0)),
    })
    assert cycle_to_matrix(c) == UNIT_SQUARE


def test_unit_square_ascii():
    c = matrix_to_cycle(UNIT_SQUARE)
    assert render_ascii(c) == "+-+\n| |\n+-+"


def test_h_shape_ascii():
    c = matrix_to_cycle(H_SHAPE)
    assert render_ascii(c) == (
        "+-+-+-+\n"
        "|     |\n"
        "+-+ +-+\n"
        "  | |  \n"
        "+-+ +-+\n"
        "|     |\n"
        "+-+-+-+"
    )


def test_notch_ascii_and_roundtrip():
    c = matrix_to_cycle(NOTCH)
    assert render_ascii(c) == (
        "+-+ +-+\n"
        "| | | |\n"
        "+ +-+ +\n"
        "|     |\n"
        "+-+-+-+"
    )
    assert cycle_to_matrix(c) == NOTCH


def test_ring_matrix_is_two_curves():
    ring = ((1, 1, 1), (1, 0, 1), (1, 1, 1))
    with pytest.raises(InvalidCycleError, match="visits 12 of 16"):
        matrix_to_cycle(ring)


def test_diagonal_matrix_names_offending_vertex():
    # first bad vertex in scan order is the bare corner, not the
    # degree-four centre
    with pytest.raises(InvalidCycleError, match=r"\(0, 2\) lies on 0"):
        matrix_to_cycle(((1, 0), (0, 1)))
    with pytest.raises(InvalidCycleError, match=r"\(1, 1\) lies on 4"):
        matrix_to_cycle(((1, 0, 1), (0, 1, 0)))


def test_empty_and_ragged_matrices_rejected():
    with pytest.raises(ValueError):
        matrix_to_cycle(())
    with pytest.raises(ValueError):
        matrix_to_cycle(((1, 1), (1,)))


def test_column_row_conversions():
    cols = [(1, 0), (1, 1), (0, 1)]
    mat = matrix_from_columns(cols)
    assert mat == ((1, 1, 0), (0, 1, 1))
    assert matrix_to_columns(mat) == cols


def test_svg_golden_unit_square():
    c = matrix_to_cycle(UNIT_SQUARE)
    svg = render_svg(c)
    assert svg == (
        b'<?xml version="1.0" encoding="UTF-8"?>\n'
        b'<svg xmlns="http://www.w3.org/2000/svg" width="48" height="48" '
        b'viewBox="0 0 48 48">\n'
        b'<path d="M 12 12 L 36 12 L 36 36 L 12 36 Z" fill="none" '
        b'stroke="black" stroke-width="2" stroke-linejoin="miter"/>\n'
        b"</svg>\n"
    )


def test_svg_deterministic_and_sized():
    c = matrix_to_cycle(H_SHAPE)
    a = render_svg(c)
    b = render_svg(c)
    assert a == b
    assert a.count(b"<path") == 1
    small = render_svg(c, RenderOptions(cell_size=10, margin=0))
    assert b'width="30" height="30"' in small


def test_render_options_validation():
    with pytest.raises(ValueError):
        RenderOptions(format="png")
    with pytest.raises(ValueError):
        RenderOptions(cell_size=0)
    with pytest.raises(ValueError):
        RenderOptions(margin=-1)
    assert RenderOptions(format="ascii").format == "ascii"


def test_roundtrip_over_small_ensembles():
    rng = random.Random(4021)
    for h, w in [(2, 2), (3, 3), (3, 4), (2, 6)]:
        mats = enumerate_valid_matrices(h, w)
        sample = mats if len(mats) <= 25 else rng.sample(mats, 25)
        for mat in sample:
            c = matrix_to_cycle(mat)
            assert cycle_to_matrix(c) == mat
            assert len(c) == (h + 1) * (w + 1)
            art = render_ascii(c)
            lines = art.split("\n")
            assert len(lines) == 2 * h + 1
            assert all(len(line) == 2 * w + 1 for line in lines)


def test_cycle_to_matrix_rejects_offset_grid():
    shifted = frozenset({
        edge((1, 1), (1, 2)), edge((1, 2), (2, 2)),
        edge((2, 1), (2, 2)), edge((1, 1), (2, 1)),
    })
    with pytest.raises(InvalidCycleError, match="origin"):
        cycle_to_matrix(shifted)
