"""Maximal ultimate rank of finitely generated matrix semigroups.

Decision procedure via three combinatorial conditions on the generators and
their normalized envelope ``M``, with a common-eigenvector witness, plus a
bounded product-enumeration oracle and the visualization / fundamental-cell
machinery both rely on.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional, Sequence, Tuple

import numpy as np

from . import _kernel
from .core import (
    NEG_INF,
    Scalar,
    TropMatrix,
    TropVector,
    _norm,
    conjugate,
    mat_vec,
    projective_form,
    scalar_mul,
    trop_add,
    trop_mul,
)
from .errors import BudgetExceeded, DimensionError, DomainError
from .ranks import permanent
from .spectral import SpectralData, critical_graph, is_eigenvector, max_cycle_mean
from .ultimate import ultimate_rank

MAX_HALVINGS = 128


def _as_vector(u) -> TropVector:
    return u if isinstance(u, TropVector) else TropVector(u)


def _visualization_inputs(a: TropMatrix, u, rho=None):
    u = _as_vector(u)
    if not u.is_finite:
        raise DomainError("a visualization must be a finite vector")
    if len(u) != a.rows or not a.is_square:
        raise DimensionError("vector length must match the square matrix")
    rho = max_cycle_mean(a) if rho is None else rho
    if rho is NEG_INF:
        raise DomainError("acyclic matrix has no visualization")
    return u, rho


def is_visualization(a: TropMatrix, u) -> bool:
    """``A u <= rho(A) u`` entrywise."""
    u, rho = _visualization_inputs(a, u)
    return mat_vec(a, u) <= u.shift(rho)


def is_strict_visualization(a: TropMatrix, u, spectral: SpectralData = None) -> bool:
    sd = spectral or critical_graph(a)
    u, rho = _visualization_inputs(a, u, sd.rho)
    crit = sd.critical_arcs
    conj = conjugate(a, u)
    for i, row in enumerate(conj.entries):
        for j, x in enumerate(row):
            if (i, j) in crit:
                if x != rho:
                    return False
            elif x is not NEG_INF and x >= rho:
                return False
    return True


def strict_visualization(a: TropMatrix, spectral: SpectralData = None) -> TropVector:
    """A finite ``u`` making ``diag(-u) A diag(u)`` strictly visualized.

    Solves ``u_i >= A_ij - rho + delta*[(i,j) not critical] + u_j`` as
    ``u = C* (.) 0``, halving ``delta`` until ``C`` has no positive circuit.
    """
    sd = spectral or critical_graph(a)
    if sd.rho is NEG_INF:
        raise DomainError("acyclic matrix has no visualization")
    crit = sd.critical_arcs
    base = scalar_mul(-sd.rho, a)
    delta = Fraction(1)
    for _ in range(MAX_HALVINGS):
        c = TropMatrix._trusted(
            tuple(
                tuple(
                    x if x is NEG_INF or (i, j) in crit else _norm(x + delta)
                    for j, x in enumerate(row)
                )
                for i, row in enumerate(base.entries)
            )
        )
        grid = _kernel.to_grid(c)
        closed = _kernel.closure(grid.values)
        if not (np.diagonal(closed) > 0).any():
            idx = np.arange(a.rows)
            closed[idx, idx] = np.maximum(closed[idx, idx], 0)
            u = TropVector(grid.to_scalar(x) for x in closed.max(axis=1))
            if not is_strict_visualization(a, u, sd):
                raise AssertionError(f"strict visualization self-check failed for {a!r}")
            return u
        delta /= 2
    raise AssertionError(f"no strict visualization after {MAX_HALVINGS} halvings of delta")


@dataclass(frozen=True)
class FundamentalCellQuery:
    matrix: TropMatrix
    point: TropVector


def fundamental_cell_contains(q, point=None, tau=None) -> bool:
    """Membership of a finite point in the fundamental cell of a matrix.

    Accepts a :class:`FundamentalCellQuery` or ``(matrix, point)``.  The cell
    of a singular matrix is empty.
    """
    if isinstance(q, FundamentalCellQuery):
        a, x = q.matrix, q.point
    else:
        a, x = q, point
    x = _as_vector(x)
    if not x.is_finite:
        raise DomainError("fundamental cells contain only finite points")
    if tau is None:
        cert = permanent(a)
        if cert.singular:
            return False
        tau = cert.tau
    for i, row in enumerate(a.entries):
        t = tau[i]
        target = row[t] + x[t]
        for j, aij in enumerate(row):
            if j != t and aij is not NEG_INF and aij + x[j] >= target:
                return False
    return True


class GeneratorSet:
    """A finite list of equal-size square generators.

    ``normalized[k]`` is ``(-rho(A_k)) A_k`` (None for an acyclic generator)
    and ``envelope`` is the entrywise maximum of the normalized generators
    (None when some generator is acyclic).
    """

    def __init__(self, generators: Sequence[TropMatrix]):
        gens = tuple(generators)
        if not gens:
            raise DomainError("at least one generator is required")
        n = gens[0].rows
        for k, g in enumerate(gens):
            if not g.is_square or g.rows != n:
                raise DimensionError(f"generator {k + 1} has shape {g.shape}; expected ({n}, {n})")
        self.generators = gens
        self.n = n
        self.spectral = tuple(critical_graph(g) for g in gens)
        self.rhos = tuple(sd.rho for sd in self.spectral)
        self.normalized = tuple(
            None if r is NEG_INF else scalar_mul(-r, g) for g, r in zip(gens, self.rhos)
        )
        if any(x is None for x in self.normalized):
            self.envelope = None
        else:
            env = self.normalized[0]
            for x in self.normalized[1:]:
                env = trop_add(env, x)
            self.envelope = env

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)


@dataclass(frozen=True)
class ConditionResult:
    """One condition of the decision.  ``holds`` is None when not evaluated."""

    holds: Optional[bool]
    culprits: Tuple = ()
    detail: str = ""


@dataclass(frozen=True)
class SemigroupDecision:
    verdict: bool
    c1: ConditionResult
    c2: ConditionResult
    c3: ConditionResult
    envelope_rho: Optional[Scalar] = None
    witness_eigenvector: Optional[TropVector] = None
    witness_product: Optional[Tuple[int, ...]] = None


def _as_generator_set(g) -> GeneratorSet:
    return g if isinstance(g, GeneratorSet) else GeneratorSet(g)


def decide_max_ultimate_rank(g) -> SemigroupDecision:
    """Does the semigroup generated by ``g`` have ultimate rank n?

    (C1) every generator has ultimate rank n; (C2) the envelope M of the
    normalized generators has cycle mean 0; (C3) every critical arc (i, j) of
    M attained by a normalized generator is critical for that generator.
    Cost is O(|generators| n^3).
    """
    gs = _as_generator_set(g)
    n = gs.n
    bad = tuple(k for k, (a, sd) in enumerate(zip(gs.generators, gs.spectral))
                if ultimate_rank(a, sd).value != n)
    c1 = ConditionResult(not bad, bad, "generators with ultimate rank < n" if bad else "")
    if gs.envelope is None:
        skipped = ConditionResult(None, (), "not evaluated: an acyclic generator")
        return SemigroupDecision(False, c1, skipped, skipped)

    m = gs.envelope
    msd = critical_graph(m)
    c2 = ConditionResult(msd.rho == 0, (), f"rho(M) = {msd.rho}")

    violations = []
    for k, (tilde, sd) in enumerate(zip(gs.normalized, gs.spectral)):
        own = sd.critical_arcs
        for (i, j) in sorted(msd.critical_arcs):
            if tilde.entries[i][j] == m.entries[i][j] and (i, j) not in own:
                violations.append((k, (i, j)))
    c3 = ConditionResult(not violations, tuple(violations))

    verdict = bool(c1.holds and c2.holds and c3.holds)
    witness = None
    if verdict:
        witness = strict_visualization(m, msd)
        if not witness_check(gs, witness):
            raise AssertionError("witness eigenvector failed its self-check")
    return SemigroupDecision(verdict, c1, c2, c3, msd.rho, witness)


def witness_check(g, u) -> bool:
    """``u`` is an eigenvector of every generator lying in every fundamental cell."""
    gs = _as_generator_set(g)
    u = _as_vector(u)
    if not u.is_finite:
        raise DomainError("witness must be finite")
    for a, rho in zip(gs.generators, gs.rhos):
        if rho is NEG_INF or is_eigenvector(a, u) != rho:
            return False
        if not fundamental_cell_contains(a, u):
            return False
    return True


@dataclass(frozen=True)
class OracleReport:
    """Outcome of enumerating all products of length 1..max_len.

    ``maximal`` is the enumeration's verdict; ``witness_product`` is the
    shortest, then lexicographically smallest, word (0-based generator
    indices) whose product has ultimate rank < n.
    """

    maximal: bool
    decision: bool
    witness_product: Optional[Tuple[int, ...]]
    witness_rank: Optional[int]
    max_len: int
    words: int
    distinct_products: int

    @property
    def agree(self) -> bool:
        return self.maximal == self.decision


def semigroup_oracle(g, max_len: int = None, budget: int = 200_000,
                     decision: SemigroupDecision = None) -> OracleReport:
    """Brute-force check: does some product of length <= max_len lose rank?

    Words are explored breadth-first; products that coincide projectively are
    explored once, keeping the lexicographically smallest word.  ``budget``
    caps the number of distinct products evaluated.
    """
    gs = _as_generator_set(g)
    n = gs.n
    if max_len is None:
        max_len = n + 1
    if decision is None:
        decision = decide_max_ultimate_rank(gs)
    forms = [projective_form(a).normalized for a in gs.generators]
    seen = set()
    frontier = []
    words = 0
    for length in range(1, max_len + 1):
        words += len(gs) ** length
        if length == 1:
            candidates = (((k,), f) for k, f in enumerate(forms))
        else:
            candidates = (
                (w + (k,), projective_form(trop_mul(p, f)).normalized)
                for w, p in frontier
                for k, f in enumerate(forms)
            )
        nxt = []
        for word, p in candidates:
            if p in seen:
                continue
            seen.add(p)
            if len(seen) > budget:
                raise BudgetExceeded(f"more than {budget} distinct products up to length {length}")
            urk = ultimate_rank(p).value
            if urk < n:
                return OracleReport(False, decision.verdict, word, urk, max_len, words, len(seen))
            nxt.append((word, p))
        frontier = nxt
    return OracleReport(True, decision.verdict, None, None, max_len, words, len(seen))


def word_product(g, word: Sequence[int]) -> TropMatrix:
    gs = _as_generator_set(g)
    out = gs.generators[word[0]]
    for k in word[1:]:
        out = trop_mul(out, gs.generators[k])
    return out


def decide_with_oracle(g, max_len: int = None, budget: int = 200_000):
    """Decision plus enumeration cross-check; a bad word is copied into the decision."""
    gs = _as_generator_set(g)
    decision = decide_max_ultimate_rank(gs)
    report = semigroup_oracle(gs, max_len, budget, decision)
    if report.witness_product is not None:
        decision = replace(decision, witness_product=report.witness_product)
    return decision, report
