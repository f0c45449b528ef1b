from fractions import Fraction

import pytest

from e36verify.singular_vectors import hw_monomial
from e36verify.verma_modules import (UNIT, ModuleVector, act_g0, component_basis, highest_weight_vectors, lmonomials,
                                     pbw_normal_form, u_add, y_of_component)


@pytest.mark.parametrize("space, m, n, size", [
    ('A', 1, 1, 6), ('A', 0, 0, 1), ('A', -1, 0, 0), ('D', -1, -1, 6), ('B', 2, -1, 12), ('C', 1, 0, 0),
])
def test_component_sizes(space, m, n, size):
    assert len(component_basis(space, m, n)) == size


@pytest.mark.parametrize("space, m, n, y", [
    ('D', -1, -1, Fraction(1, 3)), ('D', -1, -2, Fraction(4, 3)), ('A', 1, 1, Fraction(-1, 3)),
    ('A', 0, 1, -1), ('B', 0, 0, 2), ('C', 0, 0, -2),
])
def test_y_of_component(space, m, n, y):
    assert y_of_component(space, m, n) == y


def test_pbw_monomial_counts():
    assert lmonomials(0) == [UNIT]
    assert len(lmonomials(1)) == 6
    assert len(lmonomials(2)) == 18
    assert all(lm.degree == 3 for lm in lmonomials(3))


def test_highest_weight_is_killed_by_raising():
    for space, m, n in (('A', 1, 1), ('D', -1, -2), ('B', 2, -1)):
        v = ModuleVector.basis_vector((UNIT, hw_monomial(space, m, n)), space)
        for g in ('e1', 'e2', 'e3'):
            assert act_g0(g, v).is_zero()


def test_mixing_spaces_is_rejected():
    a = ModuleVector.basis_vector((UNIT, component_basis('A', 0, 0)[0]), 'A')
    d = ModuleVector.basis_vector((UNIT, component_basis('D', 0, 0)[0]), 'D')
    with pytest.raises(ValueError):
        a + d


def test_pbw_normal_form():
    assert pbw_normal_form(['d1+', 'd1+']) == {}
    anticommutator = u_add(pbw_normal_form(['d1+', 'd2-']), pbw_normal_form(['d2-', 'd1+']))
    assert anticommutator == pbw_normal_form(['dh3'], -1)


def test_highest_weight_vectors_of_trivial_component():
    found = highest_weight_vectors('A', 0, 0, 0)
    assert len(found) == 1
    assert found[0].ldegrees() == {0}
