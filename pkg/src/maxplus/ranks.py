"""Permanent, non-singularity and the computable tropical ranks.

Column and row rank run in polynomial time; tropical and symmetrized rank
are exact brute-force enumerations guarded by a size cap (computing the
tropical rank is NP-hard in general).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from . import _kernel
from .core import NEG_INF, Scalar, TropMatrix, TropVector, _norm
from .errors import DimensionError

DEFAULT_CAP = 7


@dataclass(frozen=True)
class PermanentCertificate:
    """Optimal assignment of a square matrix.

    ``tau[i]`` is the column matched to row ``i`` (present iff non-singular).
    The potentials satisfy ``A_ij <= row_potential[i] + col_potential[j]``
    with equality along every optimal permutation; they are None when no
    permutation has finite weight.
    """

    permanent: Scalar
    singular: bool
    tau: Optional[Tuple[int, ...]]
    row_potential: Optional[TropVector]
    col_potential: Optional[TropVector]


def _hungarian(cost: List[List[int]]):
    """Minimum-cost perfect assignment on a dense integer matrix.

    Returns (assignment row->col, row duals u, col duals v) with
    ``cost[i][j] >= u[i] + v[j]`` and equality on the assignment.
    """
    n = len(cost)
    inf = float("inf")
    u = [0] * (n + 1)
    v = [0] * (n + 1)
    p = [0] * (n + 1)
    way = [0] * (n + 1)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv = [inf] * (n + 1)
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = p[j0]
            row = cost[i0 - 1]
            ui0 = u[i0]
            delta = inf
            j1 = 0
            for j in range(1, n + 1):
                if not used[j]:
                    cur = row[j - 1] - ui0 - v[j]
                    if cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                    if minv[j] < delta:
                        delta = minv[j]
                        j1 = j
            for j in range(n + 1):
                if used[j]:
                    u[p[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while True:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
            if j0 == 0:
                break
    assign = [0] * n
    for j in range(1, n + 1):
        assign[p[j] - 1] = j - 1
    return assign, u[1:], v[1:]


def _unique_perfect_matching(n: int, edges) -> bool:
    """Whether a bipartite graph known to have a perfect matching has only one.

    Repeatedly match a degree-1 vertex with its only neighbour and delete
    both; the matching is unique iff this empties the graph.
    """
    radj = [set() for _ in range(n)]
    cadj = [set() for _ in range(n)]
    for i, j in edges:
        radj[i].add(j)
        cadj[j].add(i)
    alive_r = set(range(n))
    alive_c = set(range(n))
    pending = [("r", i) for i in range(n) if len(radj[i]) == 1]
    pending += [("c", j) for j in range(n) if len(cadj[j]) == 1]
    while alive_r:
        while pending:
            side, x = pending.pop()
            if side == "r" and x in alive_r and len(radj[x]) == 1:
                i, j = x, next(iter(radj[x]))
                break
            if side == "c" and x in alive_c and len(cadj[x]) == 1:
                i, j = next(iter(cadj[x])), x
                break
        else:
            return False
        alive_r.discard(i)
        alive_c.discard(j)
        for jj in radj[i]:
            if jj != j:
                cadj[jj].discard(i)
                if len(cadj[jj]) == 1:
                    pending.append(("c", jj))
        for ii in cadj[j]:
            if ii != i:
                radj[ii].discard(j)
                if len(radj[ii]) == 1:
                    pending.append(("r", ii))
        radj[i] = set()
        cadj[j] = set()
    return True


def permanent(a: TropMatrix) -> PermanentCertificate:
    """Tropical permanent with a uniqueness verdict for the optimal permutation."""
    if not a.is_square:
        raise DimensionError(f"permanent of a non-square {a.shape} matrix")
    n = a.rows
    scale = _kernel.common_scale([x for row in a.entries for x in row])
    ints = [[None if x is NEG_INF else int(x * scale) for x in row] for row in a.entries]
    finite_abs = sum(max((abs(x) for x in row if x is not None), default=0) for row in ints)
    forbidden = 2 * finite_abs + 1
    cost = [[forbidden if x is None else -x for x in row] for row in ints]
    assign, u, v = _hungarian(cost)
    if any(ints[i][assign[i]] is None for i in range(n)):
        # every permutation weighs -inf; for n >= 2 at least two of them tie
        return PermanentCertificate(NEG_INF, True, None, None, None)
    total = sum(ints[i][assign[i]] for i in range(n))
    tight = [
        (i, j)
        for i in range(n)
        for j in range(n)
        if ints[i][j] is not None and cost[i][j] == u[i] + v[j]
    ]
    unique = _unique_perfect_matching(n, tight)
    return PermanentCertificate(
        _norm(Fraction(total, scale)),
        not unique,
        tuple(assign) if unique else None,
        TropVector(Fraction(-x, scale) for x in u),
        TropVector(Fraction(-x, scale) for x in v),
    )


def is_nonsingular(a: TropMatrix):
    """(flag, tau) where tau is the unique optimal permutation or None."""
    cert = permanent(a)
    return (not cert.singular, cert.tau)


def _int_grid(a: TropMatrix):
    scale = _kernel.common_scale([x for row in a.entries for x in row])
    return [[None if x is NEG_INF else int(x * scale) for x in row] for row in a.entries]


def _better(slot, w, c):
    # slot is (best weight, number of maximizers capped at 2)
    if slot is None or w > slot[0]:
        return (w, c)
    if w == slot[0]:
        return (w, min(2, slot[1] + c))
    return slot


def _minor_layers(ints, rows: int, cols: int, depth: int):
    """Optimal assignments of every square minor, grouped by size.

    Layer k maps (row mask, column mask) of a k x k minor to a pair
    (even, odd): the best weight of an even / odd bijection from its rows to
    its columns with the number of bijections reaching it (capped at 2), or
    None when no finite bijection of that parity exists.  Rows are assigned
    in increasing order, so appending row t above all rows in the mask and
    sending it to column j adds one inversion per chosen column right of j.
    """
    layer = {(0, 0): ((0, 1), None)}
    layers = [layer]
    for _ in range(depth):
        nxt = {}
        for (tmask, smask), (even, odd) in layer.items():
            for t in range(tmask.bit_length(), rows):
                row = ints[t]
                for j in range(cols):
                    x = row[j]
                    if x is None or smask >> j & 1:
                        continue
                    key = (tmask | 1 << t, smask | 1 << j)
                    flip = bin(smask >> (j + 1)).count("1") & 1
                    e, o = (odd, even) if flip else (even, odd)
                    ne, no = nxt.get(key, (None, None))
                    if e is not None:
                        ne = _better(ne, e[0] + x, e[1])
                    if o is not None:
                        no = _better(no, o[0] + x, o[1])
                    nxt[key] = (ne, no)
        layer = nxt
        layers.append(layer)
    return layers


def _nonsingular_entry(even, odd) -> bool:
    if even is None or odd is None:
        best = even or odd
        return best is not None and best[1] == 1
    if even[0] != odd[0]:
        return max(even, odd)[1] == 1
    return False


def _signs_differ(even, odd) -> bool:
    return (even and even[0]) != (odd and odd[0])


def _largest(layers, test) -> int:
    for r in range(len(layers) - 1, 0, -1):
        if any(test(e, o) for e, o in layers[r].values()):
            return r
    return 0


def tropical_rank_bruteforce(a: TropMatrix, cap: int = DEFAULT_CAP) -> Optional[int]:
    """Largest r with a non-singular r x r submatrix; None above the cap."""
    k = min(a.rows, a.cols)
    if k > cap:
        return None
    layers = _minor_layers(_int_grid(a), a.rows, a.cols, k)
    return _largest(layers, _nonsingular_entry)


def symmetrized_rank_bruteforce(a: TropMatrix, cap: int = DEFAULT_CAP) -> Optional[int]:
    """Largest r with an r x r submatrix whose det+ and det- differ; None above the cap."""
    k = min(a.rows, a.cols)
    if k > cap:
        return None
    layers = _minor_layers(_int_grid(a), a.rows, a.cols, k)
    return _largest(layers, _signs_differ)


def _residual(c, others):
    """Greatest x with ``others (.) x <= c``; +inf coefficients come back as None."""
    coeffs = []
    for col in others:
        best = None  # None stands for +inf
        for ci, ai in zip(c, col):
            if ai is NEG_INF:
                continue
            d = NEG_INF if ci is NEG_INF else ci - ai
            if best is None or d < best:
                best = d
        coeffs.append(best)
    return coeffs


def _in_span(c, others) -> bool:
    if not others:
        return False
    coeffs = _residual(c, others)
    for i, ci in enumerate(c):
        best = NEG_INF
        for col, x in zip(others, coeffs):
            if x is None or x is NEG_INF or col[i] is NEG_INF:
                continue
            s = col[i] + x
            if best is NEG_INF or s > best:
                best = s
        if best != ci:
            return False
    return True


def column_rank(a: TropMatrix) -> int:
    """Number of extremal generators of the tropical convex hull of the columns."""
    cols = []
    seen = set()
    for j in range(a.cols):
        col = tuple(row[j] for row in a.entries)
        finite = [x for x in col if x is not NEG_INF]
        if not finite:
            continue
        top = max(finite)
        key = tuple(x if x is NEG_INF else _norm(x - top) for x in col)
        if key in seen:
            continue
        seen.add(key)
        cols.append(key)
    return sum(1 for k, c in enumerate(cols) if not _in_span(c, cols[:k] + cols[k + 1:]))


def row_rank(a: TropMatrix) -> int:
    return column_rank(a.transpose())


@dataclass(frozen=True)
class RankReport:
    """Ranks of a matrix; a brute-force rank is None when the size cap was hit."""

    column_rank: int
    row_rank: int
    tropical_rank: Optional[int]
    symmetrized_rank: Optional[int]


def rank_report(a: TropMatrix, cap: int = DEFAULT_CAP) -> RankReport:
    rep = RankReport(
        column_rank(a),
        row_rank(a),
        tropical_rank_bruteforce(a, cap),
        symmetrized_rank_bruteforce(a, cap),
    )
    upper = min(rep.column_rank, rep.row_rank)
    if rep.tropical_rank is not None and rep.symmetrized_rank is not None:
        assert rep.tropical_rank <= rep.symmetrized_rank, rep
    if rep.symmetrized_rank is not None:
        assert rep.symmetrized_rank <= upper, rep
    if rep.tropical_rank is not None:
        assert rep.tropical_rank <= upper, rep
    return rep
