"""Acceptance criteria, one test per criterion.

Each test appends a PASS/FAIL line to ``conftest.ACCEPTANCE_LINES``; the
lines are printed in the terminal summary and to stdout.
"""

import io
import json
import random
import time
from contextlib import contextmanager
from fractions import Fraction
from itertools import product

import conftest
from maxplus import NEG_INF, TropMatrix, TropVector, conjugate, fixtures, scalar_mul
from maxplus.cli import run
from maxplus.ranks import (
    column_rank,
    is_nonsingular,
    permanent,
    row_rank,
    symmetrized_rank_bruteforce,
    tropical_rank_bruteforce,
)
from maxplus.semigroup import (
    GeneratorSet,
    decide_max_ultimate_rank,
    fundamental_cell_contains,
    is_strict_visualization,
    semigroup_oracle,
    strict_visualization,
    word_product,
)
from maxplus.spectral import critical_graph, is_eigenvector, max_cycle_mean, projective_power_orbit
from maxplus.ultimate import has_max_ultimate_rank, ultimate_rank, ultimate_rank_oracle

from helpers import planted_permutation, random_matrix, random_rational_matrix
from oracles import brute_critical_arcs, brute_rho

POOL = list(range(-3, 4))


@contextmanager
def criterion(number, title, limit=None):
    """Run a criterion body, record one PASS/FAIL line, re-raise on failure."""
    notes = []
    start = time.perf_counter()
    try:
        yield notes
        elapsed = time.perf_counter() - start
        if limit is not None and elapsed > limit:
            raise AssertionError(f"took {elapsed:.2f} s, limit {limit} s")
    except AssertionError as exc:
        elapsed = time.perf_counter() - start
        reason = str(exc).splitlines()[0] if str(exc) else "assertion failed"
        _record(f"FAIL  {number:>2}. {title} ({elapsed:.2f} s): {reason}")
        raise
    _record(f"PASS  {number:>2}. {title} ({elapsed:.2f} s)" + (f": {'; '.join(notes)}" if notes else ""))


def _record(line):
    conftest.ACCEPTANCE_LINES.append(line)
    print(line)


def check(cond, message):
    if not cond:
        raise AssertionError(message)


def cli_json(*argv):
    out = io.StringIO()
    code = run([*argv, "--json"], out)
    check(code == 0, f"exit status {code} for {argv}")
    return json.loads(out.getvalue())


def ranks_of(a):
    return tropical_rank_bruteforce(a), row_rank(a), column_rank(a)


def test_criterion_01_rank_examples():
    with criterion(1, "rank examples: A = (tr 2, row 3, col 3), B = (tr 3, row 3, col 4)", 1.0):
        got_a = ranks_of(fixtures.load("ex3_9_A"))
        got_b = ranks_of(fixtures.load("ex3_9_B"))
        check(got_a == (2, 3, 3), f"A: (tr, row, col) = {got_a}, expected (2, 3, 3)")
        check(got_b == (3, 3, 4), f"B: (tr, row, col) = {got_b}, expected (3, 3, 4)")


def test_criterion_02_non_torsion_powers():
    with criterion(2, "non-torsion powers: trrk 3, clrk 4 for w = 1..10; limit ranks 2; no closure", 1.0) as notes:
        a = fixtures.load("ex5_1_A")
        p = a
        for w in range(1, 11):
            tr, cl = tropical_rank_bruteforce(p), column_rank(p)
            check((tr, cl) == (3, 4), f"w = {w}: trrk {tr}, clrk {cl}")
            p = p @ a
        b = fixtures.load("ex5_1_B")
        lim = (tropical_rank_bruteforce(b), symmetrized_rank_bruteforce(b), row_rank(b), column_rank(b))
        check(lim == (2, 2, 2, 2), f"limit ranks (tr, sym, row, col) = {lim}")
        rep = cli_json("powers", str(fixtures.path("ex5_1_A")))
        check(rep["closed"] is False, "powers report closed")
        notes.append(f"no closure in {rep['max_steps']} steps")


def test_criterion_03_torsion_example():
    with criterion(3, "urk = 1; oracle closes at A^2 with clrk 1; ranks of A^2 all 1", 1.0):
        a = fixtures.load("ex5_4_A")
        check(ultimate_rank(a).value == 1, "formula")
        orc = ultimate_rank_oracle(a)
        check(orc.closed and orc.preperiod == 2 and orc.period == 1, f"orbit {orc.preperiod}, {orc.period}")
        check(orc.value == 1 and orc.rank_trace[1] == 1, f"oracle value {orc.value}")
        a2 = a @ a
        got = ranks_of(a2)
        check(got == (1, 1, 1), f"ranks of A^2 = {got}")


def test_criterion_04_generator_quartet():
    with criterion(4, "generator quartet: A, C true; B false (C3); D false (C2, rho(M) = 1/15)", 1.0):
        g = {t: [fixtures.load(f"{t}1"), fixtures.load(f"{t}2")] for t in "abcd"}
        check(decide_max_ultimate_rank(g["a"]).verdict, "{A1, A2} not maximal")
        check(decide_max_ultimate_rank(g["c"]).verdict, "{C1, C2} not maximal")
        b = decide_max_ultimate_rank(g["b"])
        check(not b.verdict and b.c3.holds is False, "{B1, B2} C3")
        check((1, (1, 2)) in b.c3.culprits, f"C3 culprits {b.c3.culprits}")
        d = decide_max_ultimate_rank(g["d"])
        check(not d.verdict and d.c2.holds is False, "{D1, D2} C2")
        check(d.envelope_rho == Fraction(1, 15), f"rho(M) = {d.envelope_rho}")
        b12 = word_product(g["b"], (0, 1))
        check(not is_nonsingular(b12)[0] and tropical_rank_bruteforce(b12) == 2, "B1 B2")
        check(ultimate_rank(word_product(g["d"], (0, 1, 0))).value == 1, "urk(D1 D2 D1)")


def _generator_set(rng):
    n = rng.choice([2, 3, 4])
    k = rng.choice([2, 3])
    kind = rng.random()
    if kind < 0.2:
        return [random_matrix(rng, n, p_bottom=0.15, pool=POOL) for _ in range(k)]
    shared = [rng.randint(-2, 2) for _ in range(n)]
    gens = []
    for _ in range(k):
        a, _ = planted_permutation(rng, n, top=rng.randint(-1, 1), pool=POOL, p_bottom=0.2)
        v = shared if kind < 0.6 else [rng.randint(-2, 2) for _ in range(n)]
        gens.append(conjugate(a, v))
    return gens


def test_criterion_05_oracle_equivalence():
    with criterion(5, "decision = enumeration verdict on >= 500 random generator sets", 60.0) as notes:
        rng = random.Random(5)
        trials = true_count = 0
        while trials < 500:
            gens = _generator_set(rng)
            n = gens[0].rows
            dec = decide_max_ultimate_rank(gens)
            rep = semigroup_oracle(gens, n + 1, decision=dec)
            check(rep.agree, f"disagreement (decision {dec.verdict}) on {[g.entries for g in gens]}")
            trials += 1
            true_count += dec.verdict
        check(0 < true_count < trials, "verdicts are not mixed")
        notes.append(f"{trials} sets, {true_count} maximal")


def test_criterion_06_rank_chain():
    with criterion(6, "rank chain, product monotonicity, permanent factorization", 60.0) as notes:
        rng = random.Random(6)
        for _ in range(1000):
            n = rng.randint(1, 5)
            a = random_matrix(rng, n, p_bottom=rng.choice([0.0, 0.2, 0.4]), pool=POOL)
            tr, sym = tropical_rank_bruteforce(a), symmetrized_rank_bruteforce(a)
            rw, cl = row_rank(a), column_rank(a)
            check(tr <= sym <= min(rw, cl), f"chain {tr}, {sym}, {rw}, {cl} for {a.entries}")
        pairs = 0
        for _ in range(300):
            n = rng.randint(1, 5)
            a, b = (random_matrix(rng, n, p_bottom=0.2, pool=POOL) for _ in range(2))
            ab = a @ b
            check(tropical_rank_bruteforce(ab) <= min(tropical_rank_bruteforce(a), tropical_rank_bruteforce(b)),
                  "trrk(AB)")
            check(row_rank(ab) <= row_rank(a), "rwrk(AB)")
            check(column_rank(ab) <= column_rank(b), "clrk(AB)")
            pairs += 1
        found = 0
        attempts = 0
        while found < 100:
            attempts += 1
            n = rng.randint(1, 5)
            a, b = (random_matrix(rng, n, p_bottom=0.3, pool=POOL) for _ in range(2))
            ok, tau_ab = is_nonsingular(a @ b)
            if not ok:
                continue
            found += 1
            (ok_a, tau_a), (ok_b, tau_b) = is_nonsingular(a), is_nonsingular(b)
            check(ok_a and ok_b, "factors of a non-singular product are non-singular")
            check(tau_ab == tuple(tau_b[tau_a[i]] for i in range(n)), "tau_AB = tau_B o tau_A")
            check(permanent(a @ b).permanent == permanent(a).permanent + permanent(b).permanent, "per")
        notes.append(f"1000 chains, {pairs} products, {found} non-singular products in {attempts} tries")


def test_criterion_07_idempotents():
    with criterion(7, "idempotent law on >= 200 harvested idempotents") as notes:
        rng = random.Random(7)
        harvested = set()
        tries = 0
        while len(harvested) < 200:
            tries += 1
            check(tries < 20000, "could not harvest 200 idempotents")
            n = rng.randint(1, 5)
            a = random_matrix(rng, n, p_bottom=rng.choice([0.1, 0.3, 0.5]), pool=POOL)
            rho = max_cycle_mean(a)
            if rho is NEG_INF:
                continue
            orbit = projective_power_orbit(a)
            if not orbit.closed:
                continue
            t = scalar_mul(-rho, a)
            w = orbit.period * max(1, -(-orbit.preperiod // orbit.period))
            e = t ** w
            check(e @ e == e, f"T^{w} is not idempotent for {a.entries}")
            if e in harvested:
                continue
            harvested.add(e)
            sd = critical_graph(e)
            r = len(sd.critical_components)
            got = (column_rank(e), row_rank(e), tropical_rank_bruteforce(e))
            check(got == (r, r, r), f"ranks {got}, {r} critical components, E = {e.entries}")
            check(all(e[v, v] == 0 for v in sd.critical_nodes), "critical node without a loop")
        notes.append(f"{len(harvested)} distinct idempotents from {tries} matrices")


def test_criterion_08_spectral_oracles():
    with criterion(8, "cycle mean and critical arcs vs circuit enumeration, 1000 matrices") as notes:
        rng = random.Random(8)
        acyclic = 0
        for k in range(1000):
            n = rng.randint(1, 6)
            if k % 3 == 0:
                a = random_rational_matrix(rng, n, p_bottom=rng.choice([0.3, 0.6]))
            else:
                a = random_matrix(rng, n, p_bottom=rng.choice([0.0, 0.3, 0.6]), pool=POOL)
            sd = critical_graph(a)
            check(sd.rho == brute_rho(a) and max_cycle_mean(a) == sd.rho, f"rho for {a.entries}")
            check(sd.critical_arcs == brute_critical_arcs(a), f"critical arcs for {a.entries}")
            acyclic += sd.rho is NEG_INF
        notes.append(f"{acyclic} acyclic")


def test_criterion_09_strict_visualization():
    with criterion(9, "strict visualization self-check and eigenvector/cell biconditional") as notes:
        rng = random.Random(9)
        done = 0
        while done < 500:
            n = rng.randint(1, 6)
            a = (random_rational_matrix(rng, n, p_bottom=0.3) if done % 2
                 else random_matrix(rng, n, p_bottom=0.3, pool=POOL))
            if max_cycle_mean(a) is NEG_INF:
                continue
            check(is_strict_visualization(a, strict_visualization(a)), f"self-check for {a.entries}")
            done += 1
        both = [0, 0]
        grid = [Fraction(k, 2) for k in range(-6, 7)]
        for _ in range(40):
            a, _ = planted_permutation(rng, 3, top=rng.randint(-2, 2), pool=POOL)
            check(has_max_ultimate_rank(a).value, "planted matrix without maximal ultimate rank")
            rho = max_cycle_mean(a)
            for tail in product(grid, repeat=2):
                u = TropVector((0,) + tail)
                strict = is_strict_visualization(a, u)
                cell = is_eigenvector(a, u) == rho and fundamental_cell_contains(a, u)
                check(strict == cell, f"u = {u!r} for {a.entries}")
                both[strict] += 1
        check(all(both), "biconditional never exercised in one direction")
        notes.append(f"500 self-checks, {both[1]} strict and {both[0]} non-strict grid points")


def test_criterion_10_scaling():
    with criterion(10, "ultimate_rank scaling from n = 100 to n = 200 is <= 12x") as notes:
        rng = random.Random(10)
        best = {}
        for n in (100, 200):
            a = TropMatrix([[rng.randint(-1000, 1000) for _ in range(n)] for _ in range(n)])
            runs = []
            for _ in range(5):
                start = time.perf_counter()
                ultimate_rank(a)
                runs.append(time.perf_counter() - start)
            best[n] = min(runs)
        ratio = best[200] / best[100]
        check(ratio <= 12, f"ratio {ratio:.1f}")
        notes.append(f"{best[100]:.3f} s vs {best[200]:.3f} s, ratio {ratio:.1f}")
