"""Exact planar convex hulls in the RAM, streaming, and writable-tape models.

Coordinates cross the C++ boundary as exact rational strings; this wrapper
accepts ints, floats, Fractions, or strings and returns Fractions.
"""

from fractions import Fraction

from ._hullstream import (
    BudgetViolation,
    diameter as _diameter,
    gen_disjointness,
    min_enclosing_rectangle as _mer,
    oracle_hull as _oracle_hull,
    pad_interior as _pad_interior,
    ram_hull as _ram_hull,
    stream_hull as _stream_hull,
    wstream_hull as _wstream_hull,
)

__all__ = [
    "BudgetViolation",
    "oracle_hull",
    "ram_hull",
    "stream_hull",
    "wstream_hull",
    "diameter",
    "min_enclosing_rectangle",
    "gen_disjointness",
    "pad_interior",
]


def _coord(v):
    if isinstance(v, float):
        v = Fraction(v)
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    return str(v)


def _encode(points):
    return [(_coord(x), _coord(y)) for x, y in points]


def _decode(points):
    return [(Fraction(x), Fraction(y)) for x, y in points]


def oracle_hull(points):
    return _decode(_oracle_hull(_encode(points)))


def ram_hull(points, r=2):
    return _decode(_ram_hull(_encode(points), r))


def stream_hull(points, delta="1/3"):
    res = _stream_hull(_encode(points), str(delta))
    res["hull"] = _decode(res["hull"])
    return res


def wstream_hull(points, space=64, seed=None):
    res = _wstream_hull(_encode(points), space, seed)
    res["hull"] = _decode(res["hull"])
    return res


def diameter(points, space=16):
    res = _diameter(_encode(points), space)
    a, b = res["witness"]
    return {
        "squared": Fraction(res["squared"]),
        "witness": ((Fraction(a[0]), Fraction(a[1])), (Fraction(b[0]), Fraction(b[1]))),
    }


def min_enclosing_rectangle(points, space=16):
    res = _mer(_encode(points), space)
    return {
        "area": Fraction(res["area"]),
        "corners": _decode(res["corners"]),
    }


def pad_interior(points, total_n):
    return _decode(_pad_interior(_encode(points), total_n))
