import pytest

from metorb.algebra import GF, GFq, FieldElem


def test_characteristic_three_addition():
    F = GF(3)
    assert F(2) + F(2) == F(1)


def test_inverse_of_one_is_one():
    for q in (3, 5, 7):
        F = GF(q)
        assert F(1).inv() == F(1)


def test_all_units_invertible():
    F = GF(3, 2)
    for x in F.units():
        assert x * x.inv() == F.one()
    with pytest.raises(ZeroDivisionError):
        F.zero().inv()


def test_gf9_modulus_is_lex_first():
    # over GF(3) the first irreducible quadratic in lex order is s^2 + 1
    F = GF(3, 2)
    assert F.modulus == [1, 0, 1]
    s = F.gen()
    assert s * s == F(-1)


def test_trace_of_generator_gf9():
    # s + s^3 = s - s = 0 by the power formula
    F = GF(3, 2)
    assert F.gen().trace_to_base() == 0


def test_trace_and_norm_by_power_formula():
    for (p, m) in ((3, 2), (5, 2), (3, 3)):
        F = GF(p, m)
        for x in F.elements():
            tr = x
            nm = x
            y = x
            for _ in range(m - 1):
                y = y.frobenius()
                tr = tr + y
                nm = nm * y
            assert tr.trace_to_base() * 0 == 0  # tr lands in the prime field
            assert x.trace_to_base() == tr.idx % p or tr.idx < p
            assert x.trace_to_base() == tr.idx
            assert x.norm_to_base() == nm.idx


def test_frobenius_fixes_exactly_prime_field():
    F = GF(3, 2)
    fixed = [x for x in F.elements() if x.frobenius() == x]
    assert sorted(e.idx for e in fixed) == [0, 1, 2]


def test_field_mismatch_raises():
    with pytest.raises(ValueError):
        GF(3)(1) + GF(5)(1)


def test_embedding_consistency():
    small, big = GF(3), GF(3, 2)
    table = big.embedding_from(small)
    for i in range(3):
        for j in range(3):
            s = small.add_table[i][j]
            assert big.add_table[table[i]][table[j]] == table[s]
            m = small.mul_table[i][j]
            assert big.mul_table[table[i]][table[j]] == table[m]


def test_relative_trace_lands_in_subfield():
    small, big = GF(3), GF(3, 2)
    for x in big.elements():
        t = big.trace_to(small, x.idx)
        assert 0 <= t < 3


def test_gfq_lookup():
    assert GFq(9) is GF(3, 2)
    assert GFq(7) is GF(7)
    with pytest.raises(ValueError):
        GFq(8)


def test_even_characteristic_rejected():
    with pytest.raises(ValueError):
        GF(2)
