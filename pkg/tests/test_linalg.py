"""Exact linear algebra, cross-checked against an independent sympy oracle."""

import random
from fractions import Fraction

import pytest
import sympy

from wittkit import linalg
from wittkit.linalg import RationalMatrix, RowSpace, kernel, rank, rref, solve, solve_many


def rows_of(m):
    return [[sympy.Rational(v) for v in m.row(i)] for i in range(m.rows)]


def random_matrix(rng, r, c, bound=10):
    return RationalMatrix.from_rows(
        [[Fraction(rng.randint(-bound, bound), rng.randint(1, 4)) for _ in range(c)] for _ in range(r)]
    )


def test_rref_goldens():
    eye = RationalMatrix.identity(3)
    assert rref(eye) == eye
    assert rref(RationalMatrix.from_rows([[2, 4], [1, 2]])) == RationalMatrix.from_rows([[1, 2], [0, 0]])
    z = RationalMatrix.zero(2, 3)
    assert rref(z) == z


def test_kernel_goldens():
    assert kernel(RationalMatrix.identity(4)) == []
    assert len(kernel(RationalMatrix.zero(2, 3))) == 3
    assert kernel(RationalMatrix.from_rows([[1, 1]])) == [(Fraction(-1), Fraction(1))]


def test_solve_goldens():
    eye = RationalMatrix.identity(3)
    out = solve(eye, [1, 2, 3])
    assert out.kind == "unique" and out.particular == (1, 2, 3) and out.kernel_basis == ()
    out = solve(RationalMatrix.from_rows([[1, 1]]), [0])
    assert out.kind == "underdetermined" and len(out.kernel_basis) == 1
    out = solve(RationalMatrix.from_rows([[0]]), [1])
    assert out.kind == "inconsistent" and out.particular is None and out.bad_row == 0


def test_solve_shape_checks():
    with pytest.raises(ValueError):
        solve(RationalMatrix.identity(2), [1])
    with pytest.raises(ValueError):
        RationalMatrix(2, 2, (Fraction(1),))


def test_rref_matches_sympy():
    rng = random.Random(421)
    for _ in range(60):
        r, c = rng.randint(1, 7), rng.randint(1, 7)
        m = random_matrix(rng, r, c)
        ours = rref(m)
        theirs, _ = sympy.Matrix(rows_of(m)).rref()
        assert rows_of(ours) == theirs.tolist()


def test_kernel_matches_sympy_span():
    rng = random.Random(422)
    for _ in range(60):
        r, c = rng.randint(1, 7), rng.randint(1, 7)
        m = random_matrix(rng, r, c)
        ours = kernel(m)
        theirs = sympy.Matrix(rows_of(m)).nullspace()
        assert len(ours) == len(theirs)
        for vec in ours:
            assert all(v == 0 for v in m.mat_vec(list(vec)))
        if ours:
            span = RowSpace(c)
            for vec in theirs:
                span.add([Fraction(v.p, v.q) for v in vec])
            assert span.rank == len(ours)
            assert all(span.contains(vec) for vec in ours)


def test_rank_nullity_and_determinism():
    rng = random.Random(423)
    for _ in range(40):
        m = random_matrix(rng, rng.randint(1, 6), rng.randint(1, 6))
        assert rank(m) + len(kernel(m)) == m.cols
        assert rref(m) == rref(m)
        assert kernel(m) == kernel(m)
        assert rref(rref(m)) == rref(m)


def test_solve_classification_matches_sympy():
    rng = random.Random(424)
    for _ in range(60):
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        m = random_matrix(rng, r, c, bound=4)
        b = [Fraction(rng.randint(-4, 4)) for _ in range(r)]
        ours = solve(m, b)
        A = sympy.Matrix(rows_of(m))
        rhs = sympy.Matrix([sympy.Rational(v) for v in b])
        consistent = A.rank() == A.row_join(rhs).rank()
        if not consistent:
            assert ours.kind == "inconsistent"
        else:
            assert ours.kind in ("unique", "underdetermined")
            assert m.mat_vec(list(ours.particular)) == b
            if ours.kind == "unique":
                assert A.rank() == c
            else:
                assert A.rank() < c


def test_solve_many_shares_results():
    rng = random.Random(425)
    m = random_matrix(rng, 5, 4)
    bs = [[Fraction(rng.randint(-3, 3)) for _ in range(5)] for _ in range(6)]
    batch = solve_many(m, bs)
    singles = [solve(m, b) for b in bs]
    assert batch == singles


@pytest.mark.skipif(linalg._elim_c is None, reason="compiled engine not built")
def test_engine_parity_bit_for_bit():
    rng = random.Random(426)
    previous = linalg._ENGINE
    try:
        for _ in range(80):
            m = random_matrix(rng, rng.randint(1, 7), rng.randint(1, 7))
            b = [Fraction(rng.randint(-5, 5)) for _ in range(m.rows)]
            linalg.set_engine("compiled")
            out_c = (rref(m), kernel(m), solve(m, b))
            linalg.set_engine("pure")
            out_p = (rref(m), kernel(m), solve(m, b))
            assert out_c == out_p
    finally:
        linalg.set_engine(previous)


@pytest.mark.skipif(linalg._elim_c is None, reason="compiled engine not built")
def test_compiled_overflow_falls_back():
    # entries far beyond int64 must silently use the pure engine
    big = 10**40
    m = RationalMatrix.from_rows([[big, 1], [1, big]])
    previous = linalg._ENGINE
    try:
        linalg.set_engine("compiled")
        res_c = rref(m)
        linalg.set_engine("pure")
        res_p = rref(m)
        assert res_c == res_p == RationalMatrix.identity(2)
    finally:
        linalg.set_engine(previous)


def test_rowspace_membership():
    space = RowSpace(3)
    assert space.add([1, 0, 1])
    assert space.add([0, 1, 1])
    assert not space.add([1, 1, 2])
    assert space.rank == 2
    assert space.contains([2, -1, 1])
    assert not space.contains([0, 0, 1])
    basis = space.basis()
    assert basis == [(1, 0, 1), (0, 1, 1)]


def test_set_engine_validation():
    with pytest.raises(ValueError):
        linalg.set_engine("fastest")
