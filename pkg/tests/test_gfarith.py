"""Sanity checks for exact F_p linear algebra and interpolation."""

from __future__ import annotations

from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hallcrest.gfarith import (
    FMatrix,
    PrimeField,
    QPolynomial,
    enumerate_subspaces,
    gaussian_binomial,
    gl_order,
    interpolate,
    solve_matrix,
)


def _count_subspaces_by_bases(n: int, k: int, p: int) -> int:
    # independent oracle: count ordered independent k-tuples, divide by the
    # number of ordered bases of a k-dimensional space
    vecs = list(product(range(p), repeat=n))
    tuples = 0
    for choice in product(vecs, repeat=k):
        m = FMatrix(p, choice) if k else FMatrix.zeros(p, 0, n)
        if m.rank == k:
            tuples += 1
    per_space = 1
    for i in range(k):
        per_space *= p**k - p**i
    if k == 0:
        return 1
    assert tuples % per_space == 0
    return tuples // per_space


def test_prime_field_basics():
    f = PrimeField(7)
    assert f.inv(3) == 5
    assert f.from_fraction(Fraction(1, 2)) == 4
    with pytest.raises(ZeroDivisionError):
        f.from_fraction(Fraction(1, 7))
    with pytest.raises(ValueError):
        PrimeField(6)


def test_rref_upper_triangular_f2():
    m = FMatrix(2, [[1, 1], [0, 1]])
    rank, red, pivots = m.rref()
    assert rank == 2
    assert pivots == (0, 1)
    assert red == FMatrix.identity(2, 2)
    assert m.right_kernel().rows == 0


def test_rref_idempotent_and_rank_nullity():
    m = FMatrix(5, [[1, 2, 3], [2, 4, 1], [3, 6, 4]])
    rank, red, _ = m.rref()
    assert red.rref()[1] == red
    ker = m.right_kernel()
    assert rank + ker.rows == m.cols
    for row in ker.data:
        v = FMatrix(5, [row]).transpose()
        assert (m @ v).is_zero()


def test_matmul_inverse_matpow():
    m = FMatrix(7, [[1, 2], [3, 4]])
    inv = m.inverse()
    assert m @ inv == FMatrix.identity(7, 2)
    assert m.matpow(3) == m @ m @ m
    assert m.matpow(0) == FMatrix.identity(7, 2)
    sing = FMatrix(7, [[1, 2], [2, 4]])
    assert not sing.is_invertible()
    with pytest.raises(ValueError):
        sing.inverse()


def test_solve_matrix():
    a = FMatrix(5, [[1, 0], [1, 1], [0, 2]])
    x = FMatrix(5, [[2, 1], [3, 0]])
    b = a @ x
    assert solve_matrix(a, b) == x
    bad = FMatrix(5, [[1, 0], [0, 0], [0, 0]])
    assert solve_matrix(FMatrix(5, [[0, 0], [0, 0], [0, 0]]), bad) is None


def test_enumerate_subspaces_lines_of_f2_squared():
    lines = list(enumerate_subspaces(2, 1, 2))
    assert len(lines) == 3
    assert len(set(lines)) == 3
    assert gaussian_binomial(2, 1, 2) == 3
    for m in lines:
        assert m.rank == 1
        assert m.rref()[1] == m  # canonical representatives are already reduced


@pytest.mark.parametrize("n,k,p", [(2, 1, 2), (3, 1, 3), (3, 2, 2), (4, 2, 2), (2, 2, 3), (3, 0, 5)])
def test_subspace_counts_match_independent_oracle(n, k, p):
    subs = list(enumerate_subspaces(n, k, p))
    assert len(subs) == len(set(subs))
    assert len(subs) == gaussian_binomial(n, k, p)
    assert len(subs) == _count_subspaces_by_bases(n, k, p)


def test_subspace_order_deterministic():
    first = list(enumerate_subspaces(3, 2, 3))
    second = list(enumerate_subspaces(3, 2, 3))
    assert first == second


def test_gl_order():
    assert gl_order(1, 2) == 1
    assert gl_order(2, 2) == 6
    assert gl_order(2, 3) == 48
    assert gl_order(3, 2) == 168


def test_interpolate_line():
    poly, stable = interpolate([(2, 3), (3, 4)])
    assert poly == QPolynomial([1, 1])
    assert str(poly) == "q + 1"
    # held-out check fits through the earlier samples only: the constant 3
    # through (2,3) does not predict (3,4)
    assert not stable
    poly3, stable3 = interpolate([(2, 3), (3, 4), (5, 6)])
    assert poly3 == poly
    assert stable3


def test_interpolate_quadratic():
    poly, stable = interpolate([(2, 7), (3, 13), (5, 31)])
    assert poly == QPolynomial([1, 1, 1])
    assert poly.at_one() == 3
    assert str(poly) == "q^2 + q + 1"


def test_interpolate_stability_flag():
    # samples from q^2: the polynomial through the first two is linear and
    # fails to predict the third -> unstable; with a fourth sample the cubic
    # fit through the first three is exact -> stable
    sq = [(2, 4), (3, 9), (5, 25), (7, 49)]
    _, stable3 = interpolate(sq[:3])
    assert not stable3
    poly, stable4 = interpolate(sq)
    assert stable4
    assert poly == QPolynomial([0, 0, 1])


def test_interpolate_rejects_bad_input():
    with pytest.raises(ValueError):
        interpolate([(2, 1)])
    with pytest.raises(ValueError):
        interpolate([(2, 1), (2, 2)])


def test_qpolynomial_formatting_and_eval():
    poly = QPolynomial([Fraction(-1), Fraction(1, 2), Fraction(2)])
    assert str(poly) == "2*q^2 + 1/2*q - 1"
    assert poly(2) == Fraction(8)
    assert QPolynomial([0, 0, 0]).degree == -1
    assert str(QPolynomial([])) == "0"


@settings(max_examples=40, deadline=None)
@given(
    st.lists(st.integers(min_value=-9, max_value=9), min_size=1, max_size=5),
)
def test_interpolation_roundtrip(coeffs):
    poly = QPolynomial(coeffs)
    xs = [2, 3, 5, 7, 11, 13][: max(poly.degree + 2, 2)]
    samples = [(x, poly(x)) for x in xs]
    got, stable = interpolate(samples)
    assert got == poly
    assert stable


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=2**18))
def test_rref_random_matrices(seed):
    import random

    rng = random.Random(seed)
    p = rng.choice([2, 3, 5])
    rows, cols = rng.randint(1, 4), rng.randint(1, 4)
    m = FMatrix(p, [[rng.randrange(p) for _ in range(cols)] for _ in range(rows)])
    rank, red, pivots = m.rref()
    assert red.rref()[1] == red
    assert rank == len(pivots)
    assert rank + m.right_kernel().rows == cols
    ker = m.right_kernel()
    if ker.rows:
        assert (m @ ker.transpose()).is_zero()
