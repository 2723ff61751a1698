import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from oracles import invariant_factors_from_minors, laplace_det, rank_mod_p_minors, rational_solve
from tilecoh.generators import random_matrix, random_unimodular
from tilecoh.linalg import (
    FgAbGroup,
    IntMatrix,
    charpoly,
    charpoly_rational,
    cokernel,
    column_hnf,
    det,
    integer_coordinates,
    invariant_diagonal,
    is_unimodular,
    kernel_basis,
    rank,
    rank_mod_p,
    smith,
    solve_rational,
)


@st.composite
def matrices(draw, max_rows=5, max_cols=5, bound=6):
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(0, max_cols))
    rows = [[draw(st.integers(-bound, bound)) for _ in range(c)] for _ in range(r)]
    return IntMatrix.from_rows(rows, cols=c)


@st.composite
def square(draw, max_n=5, bound=5):
    n = draw(st.integers(0, max_n))
    return IntMatrix.from_rows([[draw(st.integers(-bound, bound)) for _ in range(n)] for _ in range(n)], cols=n)


def test_smith_known_values():
    assert smith([[2, 4], [6, 8]]).diagonal == (2, 4)
    assert smith([[0, 0], [0, 0]]).diagonal == (0, 0)
    assert smith([[2, 0], [0, 3]]).diagonal == (1, 6)
    assert smith(IntMatrix.zeros(3, 0)).diagonal == ()


@given(matrices())
def test_smith_decomposition_identities(m):
    sd = smith(m)
    assert sd.U @ m @ sd.V == sd.S
    assert sd.U @ sd.U_inv == IntMatrix.identity(m.rows)
    assert sd.V @ sd.V_inv == IntMatrix.identity(m.cols)
    assert is_unimodular(sd.U) and is_unimodular(sd.V)
    d = sd.diagonal
    for i in range(sd.S.rows):
        for j in range(sd.S.cols):
            if i != j:
                assert sd.S[i, j] == 0
    nz = [x for x in d if x]
    assert all(x > 0 for x in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert d[len(nz) :] == (0,) * (len(d) - len(nz))


@given(matrices(max_rows=4, max_cols=4))
def test_smith_matches_gcd_of_minors(m):
    expected = invariant_factors_from_minors(m.to_lists())
    got = [x for x in smith(m).diagonal if x]
    assert got == expected


def test_cokernel_and_group_strings():
    assert str(cokernel([[2]])) == "Z/2"
    assert str(cokernel(IntMatrix.zeros(2, 0))) == "Z^2"
    assert str(cokernel([[2, 0], [0, 3]])) == "Z/6"
    assert str(FgAbGroup(0)) == "0"
    assert str(FgAbGroup(2, (2, 4))) == "Z^2 (+) Z/2 (+) Z/4"
    with pytest.raises(ValueError):
        FgAbGroup(0, (4, 2))


def _in_lattice(basis: IntMatrix, v) -> bool:
    if basis.cols == 0:
        return all(x == 0 for x in v)
    sol = rational_solve(basis.to_lists(), list(v))
    return sol is not None and all(x.denominator == 1 for x in sol) and list(basis.apply([int(x) for x in sol])) == list(v)


@given(matrices(max_rows=4, max_cols=5))
def test_column_hnf_spans_same_lattice(m):
    h = column_hnf(m)
    assert h.cols == rank(m)
    for j in range(m.cols):
        assert _in_lattice(h, m.col(j))
    if m.cols:
        sm = sympy.Matrix(m.to_lists())
        for j in range(h.cols):
            sol = sympy.linsolve((sm, sympy.Matrix(h.col(j))))
            assert sol, "HNF column outside the rational span"


def test_kernel_examples():
    assert kernel_basis([[2, 4]]).columns() == [(2, -1)] or kernel_basis([[2, 4]]).columns() == [(-2, 1)]
    assert kernel_basis([[1, 1]]).columns() in ([(1, -1)], [(-1, 1)])


@given(matrices(max_rows=4, max_cols=5))
def test_kernel_is_saturated_complement(m):
    k = kernel_basis(m)
    assert k.cols == m.cols - rank(m)
    assert (m @ k).is_zero()
    if k.cols:
        # saturated: the gcd of maximal minors is 1
        assert invariant_factors_from_minors(k.to_lists()) == [1] * k.cols


@given(matrices(max_rows=4, max_cols=4), st.lists(st.integers(-5, 5), min_size=4, max_size=4))
def test_solve_rational_against_gauss(m, t):
    target = t[: m.rows]
    got = solve_rational(m, target)
    ref = rational_solve(m.to_lists(), target) if m.rows else [Fraction(0)] * m.cols
    assert (got is None) == (ref is None)
    if got is not None:
        assert [sum(Fraction(m[i, j]) * got[j] for j in range(m.cols)) for i in range(m.rows)] == [Fraction(x) for x in target]


def test_integer_coordinates_rejects_outside_points():
    basis = IntMatrix.from_columns([(2, 0)], rows=2)
    with pytest.raises(ValueError):
        integer_coordinates(basis, IntMatrix.from_columns([(1, 0)], rows=2))
    assert integer_coordinates(basis, IntMatrix.from_columns([(4, 0)], rows=2)).col(0) == (2,)


@given(square())
def test_det_and_charpoly_against_sympy(m):
    assert det(m) == laplace_det(m.to_lists())
    x = sympy.Symbol("x")
    expected = [int(c) for c in sympy.Matrix(m.to_lists()).charpoly(x).all_coeffs()] if m.rows else [1]
    assert charpoly(m) == expected
    assert charpoly_rational(m) == expected


@given(matrices(max_rows=4, max_cols=4, bound=9), st.sampled_from([2, 3, 5, 7]))
def test_rank_mod_p_against_minors(m, p):
    assert rank_mod_p(m, p) == rank_mod_p_minors(m.to_lists(), p)


def test_invariant_diagonal_is_unimodular_invariant():
    rng = random.Random(5)
    for _ in range(30):
        m = random_matrix(rng, 3, 4)
        u, v = random_unimodular(rng, 3), random_unimodular(rng, 4)
        assert is_unimodular(u) and is_unimodular(v)
        assert invariant_diagonal(u @ m @ v) == invariant_diagonal(m)


def test_matrix_basics():
    a = IntMatrix.from_rows([[1, 2], [3, 4]])
    assert (a @ IntMatrix.identity(2)) == a
    assert a.T.to_lists() == [[1, 3], [2, 4]]
    assert (a**0) == IntMatrix.identity(2)
    assert (a**2).to_lists() == [[7, 10], [15, 22]]
    assert a.mod(3).to_lists() == [[1, 2], [0, 1]]
    assert IntMatrix.zeros(0, 3).T.shape == (3, 0)
    with pytest.raises(ValueError):
        IntMatrix.from_rows([[1, 2], [3]])
