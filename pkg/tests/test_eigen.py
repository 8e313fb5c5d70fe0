import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from oracles import oracle_char_poly
from strategies import matrices
from sympy import I as sI
from sympy import Poly, Rational, factor_list, symbols

from jordanq.cli import generate_matrix
from jordanq.eigen import (
    Polynomial,
    algebraic_multiplicity,
    char_poly,
    find_eigenvalues,
    split_polynomial,
    verify_eigenvalue,
)
from jordanq.errors import InvalidHint, RequiresEigenvalueHint
from jordanq.linalg import ExactMatrix, det, invert
from jordanq.scalar import GaussianRational

M = ExactMatrix
G = GaussianRational


def companion(coeffs):
    """Companion matrix of the monic polynomial with lower coefficients ``coeffs``."""
    n = len(coeffs)
    rows = [[0] * n for _ in range(n)]
    for i in range(1, n):
        rows[i][i - 1] = 1
    for i, c in enumerate(coeffs):
        rows[i][n - 1] = -c
    return M(rows)


class TestCharPoly:
    def test_scalar(self):
        assert char_poly(M([[2]])) == Polynomial([-2, 1])

    def test_double_root(self):
        assert char_poly(M([[3, 1], [0, 3]])) == Polynomial([9, -6, 1])

    def test_companion(self):
        # x^3 + 2x - 5
        assert char_poly(companion([-5, 2, 0])) == Polynomial([-5, 2, 0, 1])

    def test_empty(self):
        assert char_poly(M.zeros(0, 0)) == Polynomial([1])

    @settings(max_examples=60)
    @given(matrices(1, 5, square=True))
    def test_matches_sympy(self, A):
        assert list(char_poly(A).coeffs) == oracle_char_poly(A)

    @settings(max_examples=30)
    @given(matrices(1, 4, square=True))
    def test_conjugation_invariant(self, A):
        rng = random.Random(A.rows)
        S = M([[rng.randint(-2, 2) + (i == j) * 5 for j in range(A.rows)] for i in range(A.rows)])
        assert char_poly(S @ A @ invert(S)) == char_poly(A)

    @settings(max_examples=30)
    @given(matrices(1, 4, square=True))
    def test_is_monic_with_roots_eigenvalues(self, A):
        p = char_poly(A)
        assert p.is_monic() and p.degree == A.rows
        # trace and determinant sit in the expected coefficients
        assert p.coeffs[A.rows - 1] == -sum((A[i, i] for i in range(A.rows)), G(0))
        assert p.coeffs[0] == (-1) ** A.rows * det(A)


class TestFindEigenvalues:
    def test_diag(self):
        r = find_eigenvalues(M.diag(2, 2, 5))
        assert r.eigenvalues == [(G(2), 2), (G(5), 1)] and r.complete

    def test_rotation(self):
        # x^2 + 1 has roots +-i
        r = find_eigenvalues(M([[0, -1], [1, 0]]))
        assert r.eigenvalues == [(G(0, -1), 1), (G(0, 1), 1)] and r.complete

    def test_cube_root_of_two(self):
        with pytest.raises(RequiresEigenvalueHint) as info:
            find_eigenvalues(companion([-2, 0, 0]))
        assert info.value.polynomial == Polynomial([-2, 0, 0, 1])
        assert "x^3 - 2" in str(info.value)

    def test_irrational_quadratic(self):
        with pytest.raises(RequiresEigenvalueHint):
            find_eigenvalues(M([[0, 2], [1, 0]]))

    def test_gaussian_roots_of_real_quartic(self):
        # (x^2 + 1)(x^2 + 4): no rational root, all four roots in Q(i)
        r = find_eigenvalues(companion([4, 0, 5, 0]))
        assert r.values == [G(0, -2), G(0, -1), G(0, 1), G(0, 2)]

    def test_gaussian_coefficients(self):
        A = generate_matrix({"1+1i": [2], "-1/2i": [1], "3": [1]}, 5)
        r = find_eigenvalues(A)
        assert r.eigenvalues == [(G(0, Fraction(-1, 2)), 1), (G(1, 1), 2), (G(3), 1)]

    def test_rational_roots(self):
        p = Polynomial.from_roots([Fraction(2, 3), Fraction(-5, 4), Fraction(-5, 4), 7])
        assert split_polynomial(p * 6) == sorted(
            [G(Fraction(2, 3)), G(Fraction(-5, 4)), G(Fraction(-5, 4)), G(7)]
        )

    def test_hints(self):
        A = M.diag(2, 2, 5)
        r = find_eigenvalues(A, hints=["2"])
        assert r.eigenvalues == [(G(2), 2), (G(5), 1)] and r.complete

    def test_invalid_hint(self):
        with pytest.raises(InvalidHint):
            find_eigenvalues(M.diag(2, 3), hints=[G(4)])

    def test_hint_with_unsplit_rest(self):
        # (x - 1)(x^3 - 2): the hint covers 1, the cubic stays unsplit
        A = M([[1, 0, 0, 0], [0, 0, 0, 2], [0, 1, 0, 0], [0, 0, 1, 0]])
        r = find_eigenvalues(A, hints=[1])
        assert r.eigenvalues == [(G(1), 1)] and not r.complete
        assert r.residual == Polynomial([-2, 0, 0, 1])


class TestVerify:
    def test_examples(self):
        assert verify_eigenvalue(M.diag(2, 3), 2)
        assert not verify_eigenvalue(M.diag(2, 3), 4)
        assert verify_eigenvalue(M([[0, 1], [0, 0]]), 0)

    def test_multiplicity(self):
        assert algebraic_multiplicity(M([[5, 1], [0, 5]]), 5) == 2


def _qi_roots_by_sympy(A):
    """Roots in Q(i) with multiplicity, from sympy's factorisation over Q(i)."""
    x = symbols("x")
    expr = sum(
        (Rational(int(c.re.numerator), int(c.re.denominator))
         + sI * Rational(int(c.im.numerator), int(c.im.denominator))) * x**k
        for k, c in enumerate(oracle_char_poly(A))
    )
    _, factors = factor_list(expr, x, extension=sI)
    out = {}
    for f, m in factors:
        p = Poly(f, x)
        if p.degree() == 1:
            a, b = p.all_coeffs()
            r = complex(-b / a)
            out[r] = out.get(r, 0) + m
    return out


def test_reported_eigenvalues_agree_with_sympy():
    complete = 0
    for entries in itertools.islice(itertools.product((-1, 0, 1), repeat=9), 0, 19683, 41):
        A = M([entries[0:3], entries[3:6], entries[6:9]])
        want = _qi_roots_by_sympy(A)
        try:
            report = find_eigenvalues(A)
        except RequiresEigenvalueHint:
            assert sum(want.values()) < 3
            continue
        complete += 1
        assert {complex(lam): m for lam, m in report.eigenvalues} == want
        for lam, _ in report.eigenvalues:
            assert not report.char_poly(lam) and not det(A.shift(lam))
    assert complete > 100
