import random

import pytest
from hypothesis import given, settings, strategies as st

from metorb.algebra import GF, Poly, resultant, irreducibles, is_irreducible, factor


def poly_strategy(q=3, max_deg=4, nonzero=False):
    def build(coeffs):
        return Poly(GF(q), coeffs)
    base = st.lists(st.integers(0, q - 1), min_size=1, max_size=max_deg + 1).map(build)
    if nonzero:
        return base.filter(lambda p: not p.is_zero())
    return base


def brute_resultant(P, Q):
    """Oracle: lc(P)^deg Q times the product of Q over the roots of P,
    found in a splitting field by scanning."""
    F = P.field
    # all roots of P live in GF(q^(deg P)!)-ish; scanning degree lcm <= 6 is enough here
    for m in (1, 2, 3, 4, 6):
        E = GF(F.p, F.m * m)
        roots = [x for x in E.elements() if P.eval_in(E, x).idx == 0]
        count = sum(1 for _ in roots)
        # with multiplicity: deflate by repeated division
        Pm = P.map_to(E).monic()
        rootlist = []
        for x in roots:
            while True:
                quo, rem = divmod(Pm, Poly.from_idx(E, (E.neg_table[x.idx], 1)))
                if rem.is_zero():
                    rootlist.append(x)
                    Pm = quo
                else:
                    break
        if Pm.degree() == 0:
            acc = E.one()
            for x in rootlist:
                acc = acc * Q.eval_in(E, x)
            lead = P.leading()
            out = E.one()
            table = E.embedding_from(F)
            lead_big = table[lead.idx]
            acc = acc * (E.elem(lead_big) ** Q.degree())
            # result lives in the base field
            back = table.index(acc.idx)
            return F.elem(back)
    raise RuntimeError("no splitting field found at desk scale")


def test_resultant_degree_one_left_argument():
    # result(w - a, Q) = Q(a)
    F = GF(5)
    w = Poly.x(F)
    Q = w ** 3 + 2 * w + 1
    for a in range(5):
        P = w - a
        assert resultant(P, Q) == Q(F(a))


def test_resultant_worked_example():
    F = GF(3)
    w = Poly.x(F)
    assert resultant(w ** 2 + 1, w + 1) == F(2)


def test_resultant_swap_law(rng):
    F = GF(3)
    for _ in range(60):
        P = Poly(F, [rng.randrange(3) for _ in range(rng.randrange(1, 5))])
        Q = Poly(F, [rng.randrange(3) for _ in range(rng.randrange(1, 5))])
        if P.is_zero() or Q.is_zero():
            continue
        swap = resultant(Q, P)
        if (P.degree() * Q.degree()) % 2:
            swap = -swap
        assert resultant(P, Q) == swap


@settings(max_examples=60, deadline=None)
@given(poly_strategy(nonzero=True), poly_strategy(nonzero=True), poly_strategy(nonzero=True))
def test_resultant_multiplicative(P1, P2, Q):
    assert resultant(P1 * P2, Q) == resultant(P1, Q) * resultant(P2, Q)


def test_resultant_against_root_product_oracle(rng):
    F = GF(3)
    for _ in range(25):
        P = Poly(F, [rng.randrange(3) for _ in range(rng.randrange(2, 4))])
        Q = Poly(F, [rng.randrange(3) for _ in range(rng.randrange(2, 4))])
        if P.is_zero() or Q.is_zero() or P.degree() < 1:
            continue
        assert resultant(P, Q) == brute_resultant(P, Q)


def test_resultant_rejects_zero():
    F = GF(3)
    with pytest.raises(ValueError):
        resultant(Poly.zero(F), Poly.one(F))


def test_division_and_gcd(rng):
    F = GF(7)
    for _ in range(40):
        A = Poly(F, [rng.randrange(7) for _ in range(rng.randrange(1, 6))])
        B = Poly(F, [rng.randrange(7) for _ in range(rng.randrange(1, 6))])
        if B.is_zero():
            continue
        q, r = divmod(A, B)
        assert q * B + r == A
        assert r.is_zero() or r.degree() < B.degree()


def test_irreducible_tables():
    F = GF(3)
    # x^2 + 1 is irreducible over GF(3) (since -1 is not a square)
    assert is_irreducible(Poly(F, [1, 0, 1]))
    assert not is_irreducible(Poly(F, [2, 0, 1]))  # w^2 - 1 = (w-1)(w+1)
    degs = [len(irreducibles(F, d)) for d in (1, 2, 3)]
    # Classical counts: q, (q^2 - q)/2, (q^3 - q)/3
    assert degs == [3, 3, 8]


def test_factor_roundtrip(rng):
    F = GF(3)
    for _ in range(50):
        P = Poly(F, [rng.randrange(3) for _ in range(rng.randrange(1, 7))])
        if P.is_zero():
            continue
        unit, parts = factor(P)
        prod = Poly.const(F, unit)
        for f, m in parts:
            assert is_irreducible(f) or f.degree() == 1
            prod = prod * f ** m
        assert prod == P


def test_shift_composition():
    F = GF(3, 2)
    s = F.gen()
    w = Poly.x(GF(3))
    P = w ** 2 + w + 1
    shifted = P.shift(s)
    # shifted(x) = P(x + s)
    for x in F.elements():
        assert shifted.eval_in(F, x) == P.eval_in(F, x + s)
