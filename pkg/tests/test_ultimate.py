import pytest

from maxplus import NEG_INF, DimensionError, DomainError, TropMatrix, diag
from maxplus.ranks import column_rank, row_rank, tropical_rank_bruteforce
from maxplus.ultimate import has_max_ultimate_rank, ultimate_rank, ultimate_rank_oracle

from helpers import planted_permutation, random_matrix, rng_for
from oracles import brute_critical_arcs, brute_cyclicity, brute_scc


def brute_urk(a):
    crit = dict.fromkeys(brute_critical_arcs(a), 0)
    if not crit:
        return 0
    total = 0
    for comp in brute_scc(a.rows, crit):
        if any((i, j) in crit for i in comp for j in comp):
            total += brute_cyclicity(a.rows, crit, comp)
    return total


def cycle(n, weight=0):
    return TropMatrix([[weight if j == (i + 1) % n else NEG_INF for j in range(n)] for i in range(n)])


class TestFormula:
    def test_rank_example(self, ex):
        res = ultimate_rank(ex["ex5_4_A"])
        assert res.value == 1 and res.critical_scc_count == 1

    def test_non_torsion(self, ex):
        assert ultimate_rank(ex["ex5_1_A"]).value == 2

    def test_identity(self):
        res = ultimate_rank(diag([0, 0, 0, 0]))
        assert res.value == 4 and res.per_scc_cyclicities == (1, 1, 1, 1)

    @pytest.mark.parametrize("n", [1, 2, 5])
    def test_cycle(self, n):
        assert ultimate_rank(cycle(n, 3)).value == n

    def test_null_and_nilpotent(self):
        assert ultimate_rank(TropMatrix.null(3)).value == 0
        strict_upper = TropMatrix([[NEG_INF, 1, 2], [NEG_INF, NEG_INF, 0], [NEG_INF] * 3])
        res = ultimate_rank(strict_upper)
        assert res.value == 0 and "nilpotent" in res.diagnosis

    def test_non_square(self):
        with pytest.raises(DimensionError):
            ultimate_rank(TropMatrix([[0, 0]]))

    def test_against_brute(self):
        rng = rng_for(11)
        for _ in range(300):
            a = random_matrix(rng, rng.randint(1, 5), p_bottom=0.4, pool=[-1, 0, 1])
            assert ultimate_rank(a).value == brute_urk(a)

    def test_scale_invariance(self):
        rng = rng_for(12)
        for _ in range(50):
            a = random_matrix(rng, 4)
            assert ultimate_rank(a).value == ultimate_rank(a.__class__(
                [[x if x is NEG_INF else x + 7 for x in row] for row in a.entries])).value


class TestMaxUltimateRank:
    def test_identity(self):
        d = has_max_ultimate_rank(diag([0, 0, 0]))
        assert d.value and d.tau == (0, 1, 2)

    def test_rank_example_is_not_maximal(self, ex):
        d = has_max_ultimate_rank(ex["ex5_4_A"])
        assert not d.value and not d.critical_graph_is_permutation

    def test_generators(self, ex):
        for name in ("a1", "a2", "b1", "b2", "c1", "c2", "d1", "d2"):
            assert has_max_ultimate_rank(ex[name]).value

    def test_planted(self):
        rng = rng_for(13)
        for _ in range(200):
            a, perm = planted_permutation(rng, rng.randint(1, 5))
            d = has_max_ultimate_rank(a)
            assert d.value and d.tau == tuple(perm)

    def test_characterizations_agree_on_random(self):
        rng = rng_for(14)
        hits = 0
        for _ in range(400):
            a = random_matrix(rng, rng.randint(1, 4), p_bottom=0.3)
            hits += has_max_ultimate_rank(a).value  # raises on disagreement
        assert hits > 0


class TestOracle:
    def test_rank_example_closes(self, ex):
        orc = ultimate_rank_oracle(ex["ex5_4_A"])
        assert orc.value == 1 and (orc.preperiod, orc.period) == (2, 1)
        assert orc.rank_trace[1] == 1

    def test_non_torsion_is_inconclusive(self, ex):
        orc = ultimate_rank_oracle(ex["ex5_1_A"], 60)
        assert not orc.conclusive and not orc.closed
        assert set(orc.rank_trace) == {4}

    def test_null_rejected(self):
        with pytest.raises(DomainError):
            ultimate_rank_oracle(TropMatrix.null(2))

    def test_nilpotent(self):
        a = TropMatrix([[NEG_INF, 0], [NEG_INF, NEG_INF]])
        assert ultimate_rank_oracle(a).value == 0 == ultimate_rank(a).value

    def test_agrees_with_formula_on_integers(self):
        # integer matrices with a loop in every scc are projectively torsion
        rng = rng_for(15)
        closed = 0
        for _ in range(200):
            n = rng.randint(1, 4)
            a = random_matrix(rng, n, p_bottom=0.2)
            if a.is_null:
                continue
            orc = ultimate_rank_oracle(a)
            if orc.conclusive:
                closed += 1
                assert orc.value == ultimate_rank(a).value
        assert closed > 100

    def test_periodic_ranks_coincide(self):
        rng = rng_for(16)
        for _ in range(60):
            a = random_matrix(rng, 4, p_bottom=0.0)
            orc = ultimate_rank_oracle(a)
            if not orc.conclusive:
                continue
            p = a ** (orc.preperiod + orc.period)
            assert column_rank(p) >= orc.value
            assert tropical_rank_bruteforce(p) <= row_rank(p)
