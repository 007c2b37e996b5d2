import random
from fractions import Fraction

import pytest

from abeliants.fields import QQ, PrimeField
from abeliants.matrix import (Mat, MatError, coefficient_rows, det_bareiss,
                              exact_rank, k_general, lin_independent)
from abeliants.poly import Algebra

from conftest import F7, F101, rand_mat, rank1_mat

F1009 = PrimeField(1009)


def test_det_examples():
    assert Mat.identity(F7, 3).det() == 1
    m = Mat(QQ, [[QQ.of_int(a) for a in row] for row in [[1, 2], [3, 4]]])
    assert m.det() == Fraction(-2)
    rng = random.Random(1)
    m1, _, _ = rank1_mat(F7, 3, rng)
    assert m1.det() == 0
    with pytest.raises(MatError):
        rand_mat(F7, 2, rng, m=3).det()


def test_adjugate_examples():
    m = Mat(QQ, [[QQ.of_int(a) for a in row] for row in [[1, 2], [3, 4]]])
    adj = m.adjugate()
    assert adj.entries == [[Fraction(4), Fraction(-2)], [Fraction(-3), Fraction(1)]]
    assert Mat.identity(F7, 3).adjugate() == Mat.identity(F7, 3)


def test_adjugate_identity_random():
    rng = random.Random(2)
    for F in (F7, QQ):
        for n in (2, 3, 4):
            m = rand_mat(F, n, rng)
            d = m.det()
            assert m.adjugate() * m == Mat.identity(F, n).scalar_mul(d)
            assert m * m.adjugate() == Mat.identity(F, n).scalar_mul(d)


def test_product_laws():
    rng = random.Random(3)
    for n in (2, 3, 4):
        a, b = rand_mat(F101, n, rng), rand_mat(F101, n, rng)
        assert (a * b).adjugate() == b.adjugate() * a.adjugate()
        assert F101.eq((a * b).det(), F101.mul(a.det(), b.det()))


def test_bareiss_matches_cofactor():
    rng = random.Random(4)
    for n in (2, 3, 4, 5):
        for _ in range(5):
            m = Mat(QQ, [[QQ.of_int(rng.randrange(-9, 10)) for _ in range(n)]
                         for _ in range(n)])
            assert det_bareiss(m) == _cofactor_det(m)


def _cofactor_det(m):
    from abeliants.matrix import _det_cofactor
    return _det_cofactor(m.ring, m.entries)


def test_rank_leq_one():
    rng = random.Random(5)
    m, _, _ = rank1_mat(F7, 3, rng)
    assert m.rank_leq_one()
    assert not Mat.identity(F7, 2).rank_leq_one()
    assert Mat.zeros(F7, 3, 3).rank_leq_one()


def test_kronecker():
    assert Mat.identity(F7, 2).kronecker(Mat.identity(F7, 2)) == Mat.identity(F7, 4)
    rng = random.Random(6)
    for _ in range(5):
        a, b = rand_mat(F7, 2, rng), rand_mat(F7, 2, rng)
        x, y = rand_mat(F7, 2, rng), rand_mat(F7, 2, rng)
        assert a.kronecker(b) * x.kronecker(y) == (a * x).kronecker(b * y)
    # rank-1 mixed product
    m1, u1, v1 = rank1_mat(F7, 2, rng)
    m2, u2, v2 = rank1_mat(F7, 2, rng)
    uu = [F7.mul(a, b) for a in u1 for b in u2]
    vv = [F7.mul(a, b) for a in v1 for b in v2]
    assert m1.kronecker(m2) == Mat.column(F7, uu) * Mat.row(F7, vv)


def test_perm_and_block():
    rng = random.Random(7)
    m = rand_mat(F7, 3, rng)
    assert m.apply_perm(None, None) == m
    assert m.block(range(3), range(3)) == m
    assert m.apply_perm([0, 1, 2], [2, 1, 0]).entries[0][0] == m.entries[0][2]
    # transpose via entry moves
    t = Mat(F7, [[m.entries[j][i] for j in range(3)] for i in range(3)])
    assert t == m.transpose()
    with pytest.raises(MatError):
        m.block([0, 5], [0])
    with pytest.raises(MatError):
        m.apply_perm([0, 0, 1], None)


def test_exact_rank():
    rows = [[1, 2, 3], [2, 4, 6], [0, 1, 0]]
    rows = [[F7.of_int(x) for x in r] for r in rows]
    assert exact_rank(F7, rows) == 2
    assert exact_rank(F7, []) == 0


def test_k_general():
    A = Algebra(F1009, gens=("x", "y"), relations=[(1, 0, (3, 0, 2, 1))])
    R = A.ring((0,))
    one, x, y = R.one(), R.var(0), R.var(1)
    basis = [one, x, y]
    X = Mat(R, [[basis[i] * basis[j] for j in range(3)] for i in range(3)])
    assert k_general(X)
    # all entries scalar multiples of one polynomial -> not k-general
    Y = Mat(R, [[x.scalar_mul(i * 3 + j + 1) for j in range(2)] for i in range(2)])
    assert not k_general(Y)


def test_lin_independent():
    A = Algebra(F7, gens=("x",))
    R = A.ring((0,))
    x = R.var(0)
    assert lin_independent([R.one(), x, x * x])
    assert not lin_independent([x, x.scalar_mul(2)])
    rows, monos = coefficient_rows([R.one() + x, x])
    assert len(rows) == 2 and len(monos) == 2
