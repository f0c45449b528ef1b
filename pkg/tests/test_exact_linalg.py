from fractions import Fraction

import pytest
from sympy import QQ, Poly

from e36verify.exact_linalg import (LaurentSeries, RationalFunction, SparseMatrix, homology_dimension, in_span,
                                    kernel_basis, parity_sizes, rank, rank_and_kernel, series_of, size_limit, solve, t)
from e36verify.exceptions import PoleAtLimitPoint


def r_factor():
    return RationalFunction(Poly((1 + t) ** 6, t, domain=QQ), Poly((1 - t ** 2) ** 3, t, domain=QQ))


def test_rank_of_identity():
    identity = SparseMatrix(3, 3, {(i, i): 1 for i in range(3)})
    assert rank(identity) == 3
    assert kernel_basis(identity) == []


def test_kernel_of_row():
    kernel = kernel_basis(SparseMatrix(1, 2, {(0, 0): 1, (0, 1): 1}))
    assert len(kernel) == 1
    v = kernel[0]
    assert v[0] == -v[1] != 0


def test_zero_entries_are_dropped():
    assert SparseMatrix(2, 2, {(0, 0): 0}).is_zero()
    with pytest.raises(ValueError):
        SparseMatrix(2, 2, {(2, 0): 1})


def test_solve_and_span():
    m = SparseMatrix(2, 2, {(0, 0): 2, (1, 1): 3})
    assert solve(m, {0: 1, 1: 1}) == {0: Fraction(1, 2), 1: Fraction(1, 3)}
    singular = SparseMatrix(2, 2, {(0, 0): 1})
    assert solve(singular, {1: 1}) is None
    assert in_span([{0: Fraction(1), 1: Fraction(1)}], {0: Fraction(2), 1: Fraction(2)}, 2)
    assert not in_span([{0: Fraction(1)}], {1: Fraction(1)}, 2)


def test_homology_of_short_sequence():
    # C^1 -> C^2 -> C^1, both maps of rank one
    d_in = SparseMatrix(2, 1, {(0, 0): 1})
    d_out = SparseMatrix(1, 2, {(0, 1): 1})
    assert homology_dimension(d_in, d_out) == 0
    assert homology_dimension(SparseMatrix.zero(2, 1), d_out) == 1


def test_geometric_series():
    series = series_of(RationalFunction(1, 1 + t), 5)
    assert series.as_list(0) == [1, -1, 1, -1, 1, -1]


def test_series_respects_shift():
    series = series_of(RationalFunction.t_power(-2, 3), 1)
    assert series.coefficients == {-2: Fraction(3)}
    with pytest.raises(ValueError):
        series.coefficient(2)


def test_r_factor_expansion():
    assert series_of(r_factor(), 3).as_list(0) == [1, 6, 18, 38]


def test_size_limit_and_parity():
    assert size_limit(r_factor()) == 16
    assert parity_sizes(r_factor()) == (8, 8)
    assert size_limit(RationalFunction.constant(1)) == 0


def test_inversion():
    assert RationalFunction.t_power(3).substitute_inverse() == RationalFunction.t_power(-3)
    f = RationalFunction(1, 1 + t)
    assert f.substitute_inverse() == RationalFunction(t, 1 + t)


def test_value_at():
    assert RationalFunction(1, 1 + t).value_at(1) == Fraction(1, 2)
    with pytest.raises(PoleAtLimitPoint):
        RationalFunction(1, 1 - t).value_at(1)


def test_laurent_product_truncates():
    a = LaurentSeries({0: 1, 1: 1}, 3)
    b = LaurentSeries({-1: 1}, 2)
    product = a * b
    assert product.order == 2
    assert product.coefficients == {-1: Fraction(1), 0: Fraction(1)}


def test_rank_and_kernel():
    r, kernel = rank_and_kernel(SparseMatrix(2, 3, {(0, 0): 1, (1, 0): 2}))
    assert r == 1
    assert len(kernel) == 2
    assert all(v.get(0, 0) == 0 for v in kernel)
    assert rank_and_kernel(SparseMatrix.zero(2, 2)) == (0, [{0: 1}, {1: 1}])
