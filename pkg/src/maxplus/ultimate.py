"""Ultimate rank of a single matrix: closed formula and power-orbit oracle."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

from .core import NEG_INF, TropMatrix
from .errors import DimensionError, DomainError
from .ranks import column_rank, permanent
from .spectral import SpectralData, critical_graph, projective_power_orbit


@dataclass(frozen=True)
class UltimateRankResult:
    value: int
    critical_scc_count: int
    per_scc_cyclicities: Tuple[int, ...]
    diagnosis: str


def ultimate_rank(a: TropMatrix, spectral: SpectralData = None) -> UltimateRankResult:
    """Sum of the cyclicities of the components of the critical graph."""
    if not a.is_square:
        raise DimensionError(f"ultimate rank of a non-square {a.shape} matrix")
    if a.is_null:
        return UltimateRankResult(0, 0, (), "null matrix")
    sd = spectral or critical_graph(a)
    if sd.rho is NEG_INF:
        return UltimateRankResult(0, 0, (), "acyclic graph: powers vanish (nilpotent)")
    return UltimateRankResult(sum(sd.cyclicities), len(sd.cyclicities), sd.cyclicities, "formula")


@dataclass(frozen=True)
class MaxUltimateRankDiagnosis:
    value: bool
    urk_is_n: bool
    critical_graph_is_permutation: bool
    unique_permutation_matches: bool
    tau: Optional[Tuple[int, ...]]


def _critical_permutation(sd: SpectralData, n: int):
    """The permutation whose graph is Gc, if Gc is one; else None."""
    succ = {}
    pred = set()
    for i, j in sd.critical_arcs:
        if i in succ or j in pred:
            return None
        succ[i] = j
        pred.add(j)
    if len(succ) != n:
        return None
    return tuple(succ[i] for i in range(n))


def has_max_ultimate_rank(a: TropMatrix) -> MaxUltimateRankDiagnosis:
    """Check urk(A) = n three independent ways; they must agree.

    The three characterizations are: the formula gives n; the critical graph
    is the graph of a permutation; the permanent has a unique maximizer whose
    graph is the critical graph.  When they hold, ``per(A) = n rho(A)``.
    """
    if not a.is_square:
        raise DimensionError("square matrix expected")
    n = a.rows
    if a.is_null:
        return MaxUltimateRankDiagnosis(False, False, False, False, None)
    sd = critical_graph(a)
    urk = ultimate_rank(a, sd)
    perm = _critical_permutation(sd, n) if sd.rho is not NEG_INF else None
    cert = permanent(a)
    matches = (not cert.singular) and perm is not None and cert.tau == perm
    flags = (urk.value == n, perm is not None, matches)
    if len(set(flags)) != 1:
        raise AssertionError(f"max-ultimate-rank characterizations disagree: {flags} for {a!r}")
    if flags[0]:
        assert cert.permanent == n * sd.rho, (cert.permanent, sd.rho)
    return MaxUltimateRankDiagnosis(flags[0], flags[0], flags[1], flags[2], cert.tau if matches else None)


@dataclass(frozen=True)
class OracleResult:
    """Rank reached by the powers of A.

    ``value`` is None when inconclusive (the projective orbit did not close,
    so the closure contains limit points the powers never reach).
    ``rank_trace`` lists column ranks of A, A^2, ... as examined.
    """

    value: Optional[int]
    closed: bool
    preperiod: Optional[int]
    period: Optional[int]
    rank_trace: Tuple[int, ...]

    @property
    def conclusive(self) -> bool:
        return self.value is not None


def ultimate_rank_oracle(a: TropMatrix, cap: int = None) -> OracleResult:
    """Minimal column rank over the projective orbit of the powers of ``a``.

    ``cap`` bounds the number of powers examined (default n^4 + n^2).
    """
    if a.is_null:
        raise DomainError("oracle undefined for the null matrix")
    orbit = projective_power_orbit(a, cap)
    if orbit.closed:
        trace = tuple(column_rank(m) for m in orbit.forms)
        value = min(column_rank(m) for m in orbit.periodic_part)
        return OracleResult(value, True, orbit.preperiod, orbit.period, trace)
    trace = tuple(column_rank(m) for m in orbit.forms[: 4 * a.rows])
    return OracleResult(None, False, None, None, trace)
