"""Max-plus spectral theory: cycle mean, Kleene star, critical graph, eigenvectors."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np

from . import _kernel
from .core import (
    NEG_INF,
    Scalar,
    TropMatrix,
    TropVector,
    _norm,
    mat_vec,
    projective_form,
    scalar_mul,
    trop_mul,
)
from .digraph import Digraph, SccDecomposition, cyclicity_scc, graph_of_matrix, scc
from .errors import DimensionError, DomainError


@dataclass(frozen=True)
class SpectralData:
    rho: Scalar
    critical_graph: Digraph
    critical_scc: SccDecomposition
    cyclicities: Tuple[int, ...]

    @property
    def critical_components(self):
        """Components of the critical graph that carry circuits."""
        return self.critical_scc.nontrivial()

    @property
    def critical_nodes(self):
        return self.critical_graph.nodes_with_arcs()

    @property
    def critical_arcs(self):
        return self.critical_graph.arc_set()


@dataclass(frozen=True)
class EigenBasis:
    eigenvalue: Scalar
    generators: Tuple[TropVector, ...]


def _require_square(a: TropMatrix):
    if not a.is_square:
        raise DimensionError(f"expected a square matrix, got {a.shape}")


def _component_means(a: TropMatrix):
    """[(component, cycle mean)] for every non-trivial scc of G(a)."""
    g = graph_of_matrix(a)
    dec = scc(g)
    comps = dec.nontrivial()
    if not comps:
        return g, dec, []
    grid = _kernel.to_grid(a)
    out = []
    for comp in comps:
        idx = sorted(comp)
        sub = grid.values[np.ix_(idx, idx)]
        out.append((comp, _norm(_kernel.karp(sub) / grid.scale)))
    return g, dec, out


def max_cycle_mean(a: TropMatrix) -> Scalar:
    """Maximal mean weight of a circuit; -inf for an acyclic graph.

    Karp's recurrence is run on each non-trivial strongly connected component.
    """
    _require_square(a)
    _, _, means = _component_means(a)
    if not means:
        return NEG_INF
    return max(m for _, m in means)


def kleene_star(b: TropMatrix) -> TropMatrix:
    """``B* = I v B v B^2 v ...``; requires every circuit weight <= 0."""
    _require_square(b)
    grid = _kernel.to_grid(b)
    closed = _kernel.closure(grid.values)
    if (np.diagonal(closed) > 0).any():
        raise DomainError("matrix has a circuit of positive weight; the star diverges")
    idx = np.arange(b.rows)
    closed[idx, idx] = np.maximum(closed[idx, idx], 0)
    return _kernel.from_values(closed, grid.scale)


def critical_graph(a: TropMatrix) -> SpectralData:
    """Critical graph of ``a``: the union of circuits of maximal mean.

    Only components whose own cycle mean equals rho can hold critical arcs.
    Within them, with ``B = (-rho) A``, arc (i, j) is critical iff
    ``B_ij + B*_ji = 0``.
    """
    _require_square(a)
    n = a.rows
    _, _, means = _component_means(a)
    if not means:
        empty = Digraph(n, {})
        return SpectralData(NEG_INF, empty, scc(empty), ())
    rho = max(m for _, m in means)
    top = [comp for comp, m in means if m == rho]
    nodes = sorted(set().union(*top))
    pos = {v: k for k, v in enumerate(nodes)}
    where = {v: c for c, comp in enumerate(top) for v in comp}
    b = scalar_mul(-rho, a.submatrix(nodes, nodes))
    grid = _kernel.to_grid(b)
    st = _kernel.star(grid.values)
    vals = grid.values
    arcs = {}
    for i in nodes:
        pi = pos[i]
        for j in nodes:
            if where[i] != where[j]:
                continue
            pj = pos[j]
            if vals[pi, pj] == -np.inf:
                continue
            if vals[pi, pj] + st[pj, pi] == 0:
                arcs[(i, j)] = a.entries[i][j]
    gc = Digraph(n, arcs)
    dec = scc(gc)
    cyc = tuple(cyclicity_scc(gc, comp) for comp in dec.nontrivial())
    return SpectralData(rho, gc, dec, cyc)


def eigen_basis(a: TropMatrix, spectral: SpectralData = None) -> EigenBasis:
    """One eigenvector for rho per critical component.

    Generators are columns of ``((-rho) A)*`` at the smallest node of each
    critical component.
    """
    _require_square(a)
    sd = spectral or critical_graph(a)
    if sd.rho is NEG_INF:
        raise DomainError("acyclic matrix: no finite maximal eigenvalue")
    grid = _kernel.to_grid(scalar_mul(-sd.rho, a))
    st = _kernel.star(grid.values)
    gens = []
    for comp in sd.critical_components:
        j = min(comp)
        gens.append(TropVector(grid.to_scalar(x) for x in st[:, j]))
    return EigenBasis(sd.rho, tuple(gens))


def is_eigenvector(a: TropMatrix, v: TropVector) -> Optional[Scalar]:
    """The eigenvalue ``lam`` with ``A v = lam v``, or None."""
    v = v if isinstance(v, TropVector) else TropVector(v)
    if v.is_null:
        raise DomainError("the null vector is never an eigenvector")
    w = mat_vec(a, v)
    if w.is_null:
        return NEG_INF
    lam = None
    for wi, vi in zip(w, v):
        if vi is NEG_INF:
            if wi is not NEG_INF:
                return None
            continue
        if wi is NEG_INF:
            return None
        d = wi - vi
        if lam is None:
            lam = d
        elif d != lam:
            return None
    return _norm(lam)


@dataclass(frozen=True)
class OrbitReport:
    """Projective orbit of the powers ``A, A^2, ...``.

    When ``closed``, ``A^(preperiod + period) = shift (.) A^preperiod`` and
    ``forms[w-1]`` is the normal form of ``A^w`` for
    ``w < preperiod + period``.
    """

    closed: bool
    preperiod: Optional[int]
    period: Optional[int]
    shift: Optional[Scalar]
    forms: Tuple[TropMatrix, ...]
    steps: int
    rho: Scalar

    @property
    def periodic_part(self) -> Tuple[TropMatrix, ...]:
        if not self.closed:
            return ()
        return self.forms[self.preperiod - 1:]


def default_max_steps(n: int) -> int:
    return n**4 + n**2


def projective_power_orbit(a: TropMatrix, max_steps: int = None) -> OrbitReport:
    """Iterate normal forms of powers until one repeats or ``max_steps`` run out.

    Not closing within the budget is a reported outcome: it is expected
    whenever some component of G(A) has no critical node.
    """
    _require_square(a)
    if a.is_null:
        raise DomainError("orbit of the null matrix")
    if max_steps is None:
        max_steps = default_max_steps(a.rows)
    rho = max_cycle_mean(a)
    seen = {}
    forms: List[TropMatrix] = []
    shifts: List[Scalar] = []
    pf = projective_form(a)
    for step in range(1, max_steps + 1):
        key = pf.normalized
        total = pf.shift if step == 1 else shifts[-1] + pf.shift
        if key in seen:
            k = seen[key]
            prev = shifts[k - 1]
            shift = NEG_INF if total is NEG_INF or prev is NEG_INF else _norm(total - prev)
            return OrbitReport(True, k, step - k, shift, tuple(forms), step, rho)
        seen[key] = step
        forms.append(key)
        shifts.append(_norm(total) if total is not NEG_INF else NEG_INF)
        pf = projective_form(trop_mul(key, a))
    return OrbitReport(False, None, None, None, tuple(forms), max_steps, rho)
