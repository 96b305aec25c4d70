"""Scaled-integer numpy kernels for the O(n^3) paths.

A rational matrix is multiplied by the lcm of its denominators so that every
finite entry becomes an integer.  Integers are stored in float64 when all
intermediate sums provably stay below 2**52 (so float arithmetic on them is
exact and -inf is native); otherwise an object array of Python ints is used.
Every result is converted back to exact rationals before leaving this module.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

import numpy as np

from .core import NEG_INF, TropMatrix, _norm

_EXACT_FLOAT = 2**52


class Grid:
    """Integer image ``scale * A`` of a matrix, as a numpy array."""

    __slots__ = ("values", "scale")

    def __init__(self, values: np.ndarray, scale: int):
        self.values = values
        self.scale = scale

    def to_scalar(self, x):
        if x == -np.inf:
            return NEG_INF
        return _norm(Fraction(int(x), self.scale))


def common_scale(entries) -> int:
    s = 1
    for x in entries:
        if x is not NEG_INF and type(x) is Fraction:
            s = lcm(s, x.denominator)
    return s


def to_grid(a: TropMatrix, scale: int = None, walk_length: int = None) -> Grid:
    """Scaled integer grid of ``a``.

    ``walk_length`` bounds the number of entries summed by later kernels
    (defaults to ``2 * max(shape) + 2``); it decides whether float64 is exact.
    """
    flat = [x for row in a.entries for x in row]
    if scale is None:
        scale = common_scale(flat)
    ints = [None if x is NEG_INF else int(x * scale) for x in flat]
    biggest = max((abs(x) for x in ints if x is not None), default=0)
    if walk_length is None:
        walk_length = 2 * max(a.shape) + 2
    if biggest * walk_length < _EXACT_FLOAT:
        vals = np.array([-np.inf if x is None else float(x) for x in ints], dtype=np.float64)
    else:
        vals = np.empty(len(ints), dtype=object)
        vals[:] = [-np.inf if x is None else x for x in ints]
    return Grid(vals.reshape(a.shape), scale)


def from_values(values: np.ndarray, scale: int) -> TropMatrix:
    g = Grid(values, scale)
    if values.dtype == object:
        rows = tuple(tuple(g.to_scalar(x) for x in row) for row in values)
    elif scale == 1:
        rows = tuple(
            tuple(NEG_INF if x == -np.inf else int(x) for x in row) for row in values.tolist()
        )
    else:
        rows = tuple(tuple(g.to_scalar(x) for x in row) for row in values.tolist())
    return TropMatrix._trusted(rows)


def _harmonize(a: np.ndarray, b: np.ndarray):
    if a.dtype == object or b.dtype == object:
        return a.astype(object), b.astype(object)
    return a, b


def product(a: TropMatrix, b: TropMatrix) -> TropMatrix:
    scale = common_scale([x for row in a.entries + b.entries for x in row])
    ga = to_grid(a, scale, walk_length=4)
    gb = to_grid(b, scale, walk_length=4)
    av, bv = _harmonize(ga.values, gb.values)
    out = np.full((a.rows, b.cols), -np.inf, dtype=av.dtype)
    for k in range(a.cols):
        np.maximum(out, av[:, k, None] + bv[None, k, :], out=out)
    return from_values(out, scale)


def closure(values: np.ndarray) -> np.ndarray:
    """All-pairs maximal path weights by Floyd-Warshall (no diagonal reset).

    The caller must ensure no circuit has positive weight; a positive
    diagonal entry in the result signals that it does.
    """
    d = values.copy()
    n = d.shape[0]
    for k in range(n):
        np.maximum(d, d[:, k, None] + d[None, k, :], out=d)
    return d


def star(values: np.ndarray) -> np.ndarray:
    d = closure(values)
    idx = np.arange(d.shape[0])
    d[idx, idx] = np.maximum(d[idx, idx], 0)
    return d


def karp(values: np.ndarray):
    """Maximum cycle mean of a strongly connected integer-weighted graph.

    Returns a Fraction (in grid units).  The graph must be strongly connected
    and contain at least one circuit.
    """
    n = values.shape[0]
    dt = values.dtype
    walks = np.full((n + 1, n), -np.inf, dtype=dt)
    walks[0, 0] = 0
    for k in range(1, n + 1):
        walks[k] = (walks[k - 1][:, None] + values).max(axis=0)
    best = None
    last = walks[n]
    for v in range(n):
        if last[v] == -np.inf:
            continue
        worst = None
        dn = int(last[v])
        for k in range(n):
            dk = walks[k, v]
            if dk == -np.inf:
                continue
            m = Fraction(dn - int(dk), n - k)
            if worst is None or m < worst:
                worst = m
        if best is None or worst > best:
            best = worst
    return best
