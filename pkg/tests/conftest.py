import random

import pytest

from metorb.algebra import GF, RatFunc
from metorb.metaplectic import mat_det


@pytest.fixture
def rng():
    return random.Random(20260810)


def rand_ratfunc(rng, field, num_len=3, den_depth=2, nonzero=False):
    while True:
        num = tuple(rng.randrange(field.q) for _ in range(rng.randrange(1, num_len + 1)))
        den = (0,) * rng.randrange(den_depth + 1) + (1,)
        f = RatFunc(field, num, den)
        if f or not nonzero:
            return f


def rand_invertible(rng, field, r, num_len=2, den_depth=1):
    while True:
        g = [[rand_ratfunc(rng, field, num_len, den_depth) for _ in range(r)]
             for _ in range(r)]
        try:
            if mat_det(g):
                return g
        except ZeroDivisionError:
            continue


def rand_integral_invertible(rng, field, r, depth=3):
    while True:
        g = [[RatFunc(field, tuple(rng.randrange(field.q) for _ in range(depth)))
              for _ in range(r)] for _ in range(r)]
        d = mat_det(g)
        if d and d.valuation() == 0:
            return g


def rand_unipotent(rng, field, r, num_len=2, den_depth=1):
    from metorb.metaplectic import mat_id
    n = mat_id(field, r)
    for i in range(r):
        for j in range(i + 1, r):
            n[i][j] = rand_ratfunc(rng, field, num_len, den_depth)
    return n
