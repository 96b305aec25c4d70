"""Random matrix generators shared by the test modules."""

import random
from fractions import Fraction

from maxplus import NEG_INF, TropMatrix, conjugate

POOL = list(range(-3, 4))


def random_matrix(rng, n, m=None, p_bottom=0.2, pool=POOL):
    m = n if m is None else m
    return TropMatrix(
        [[NEG_INF if rng.random() < p_bottom else rng.choice(pool) for _ in range(m)] for _ in range(n)]
    )


def random_rational_matrix(rng, n, p_bottom=0.2, denominators=(1, 2, 3)):
    return TropMatrix(
        [
            [NEG_INF if rng.random() < p_bottom else Fraction(rng.randint(-9, 9), rng.choice(denominators))
             for _ in range(n)]
            for _ in range(n)
        ]
    )


def planted_permutation(rng, n, top=0, pool=POOL, p_bottom=0.2, perm=None):
    """A matrix whose critical graph is the graph of a permutation.

    The permutation's entries equal ``top``; every other entry is drawn from
    the pool strictly below ``top`` (or is -inf).
    """
    if perm is None:
        perm = list(range(n))
        rng.shuffle(perm)
    below = [x for x in pool if x < top]
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if perm[i] == j:
                row.append(top)
            elif rng.random() < p_bottom or not below:
                row.append(NEG_INF)
            else:
                row.append(rng.choice(below))
        rows.append(row)
    return TropMatrix(rows), tuple(perm)


def random_finite_vector(rng, n, lo=-3, hi=3):
    return [rng.randint(lo, hi) for _ in range(n)]


def rng_for(seed):
    return random.Random(seed)
