from fractions import Fraction

import pytest

import hullstream_py as hs

SQUARE = [(0, 0), (0, 1), (1, 1), (1, 0), ("1/2", "1/2")]
SQUARE_HULL = [
    (Fraction(0), Fraction(1)),
    (Fraction(1), Fraction(1)),
    (Fraction(1), Fraction(0)),
    (Fraction(0), Fraction(0)),
]


def test_oracle_square():
    assert hs.oracle_hull(SQUARE) == SQUARE_HULL


def test_all_algorithms_agree():
    pts = [(x, (x * x * 7) % 13 - x) for x in range(-8, 9)] + [(0, 100), (-3, -50)]
    want = hs.oracle_hull(pts)
    assert hs.ram_hull(pts) == want
    assert hs.ram_hull(pts, r=5) == want
    stream = hs.stream_hull(pts, delta="1/3")
    assert stream["hull"] == want
    assert stream["passes"] >= 1
    det = hs.wstream_hull(pts, space=64)
    assert det["hull"] == want
    rand = hs.wstream_hull(pts, space=64, seed=7)
    assert rand["hull"] == want


def test_rational_inputs():
    pts = [("1/3", "1/7"), ("2/3", "1/2"), (0.25, 0.75), (Fraction(9, 8), 0)]
    hull = hs.oracle_hull(pts)
    assert (Fraction(1, 4), Fraction(3, 4)) in hull
    assert (Fraction(9, 8), Fraction(0)) in hull


def test_seeded_reproducibility():
    pts = [(i * 3 % 17, i * 5 % 11) for i in range(40)]
    pts = list(dict.fromkeys(pts))
    a = hs.wstream_hull(pts, space=32, seed=123)
    b = hs.wstream_hull(pts, space=32, seed=123)
    assert a["hull"] == b["hull"]
    assert a["passes"] == b["passes"]


def test_budget_violation():
    pts = [(i, i * i) for i in range(50)]
    with pytest.raises(hs.BudgetViolation):
        hs.wstream_hull(pts, space=2)


def test_calipers():
    square = [(0, 0), (0, 1), (1, 1), (1, 0)]
    assert hs.diameter(square)["squared"] == 2
    mer = hs.min_enclosing_rectangle(square)
    assert mer["area"] == 1
    assert len(mer["corners"]) == 4
    collinear = [(0, 0), (1, 1), (2, 2)]
    assert hs.min_enclosing_rectangle(collinear)["area"] == 0


def test_generators():
    inst = hs.gen_disjointness([1, 2], [2, 3], 4)
    hull = hs.oracle_hull(inst["points"])
    assert len(hull) == inst["expected_extremes"]
    padded = hs.pad_interior(inst["points"], 50)
    assert len(padded) == 50
    assert hs.oracle_hull(padded) == hull
