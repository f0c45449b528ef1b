import random
from fractions import Fraction

import pytest

from e36verify.e510_algebra import (E510Element, all_permutation_signs_agree, bracket, expand_in_catalog,
                                    generator_catalog, generator_weight, is_well_formed, principal_component,
                                    random_element, structure_constants, super_jacobi_defect)
from e36verify.exceptions import NotInCatalogSpan


@pytest.mark.parametrize("left, right, expected", [
    ('h3', 'e3', {'e3': 2}),
    ('h1', 'e1', {'e1': 2}),
    ('e1', 'f1', {'h1': 1}),
    ('d1+', 'd2-', {'dh3': -1}),
    ('d1+', 'd2+', {}),
    ('Y', 'd1+', {'d1+': Fraction(-1, 3)}),
])
def test_structure_constants(left, right, expected):
    assert structure_constants(left, right) == expected


def test_bracket_is_supercommutative_on_odd_pairs():
    cat = generator_catalog()
    assert (bracket(cat['d1+'], cat['d2-']) - bracket(cat['d2-'], cat['d1+'])).is_zero()
    assert (bracket(cat['h1'], cat['e1']) + bracket(cat['e1'], cat['h1'])).is_zero()


def test_catalog_is_well_formed():
    assert all(is_well_formed(e) for e in generator_catalog().values())


def test_generator_weight():
    assert generator_weight('e1') == (2, -1, 0, 0)
    assert generator_weight('e3') == (0, 0, 2, 0)


@pytest.mark.parametrize("names", [('e0', 'f0', 'd1+'), ('e0p', 'd1+', 'd2-'), ('h1', 'e1', 'f1'), ('e0', 'e0p', 'f3')])
def test_jacobi_on_catalog(names):
    cat = generator_catalog()
    assert super_jacobi_defect(*(cat[n] for n in names)).is_zero()


def test_jacobi_on_random_elements():
    rng = random.Random(7)
    for _ in range(5):
        a, b, c = (random_element(rng, 3) for _ in range(3))
        assert super_jacobi_defect(a, b, c).is_zero()


def test_principal_component():
    cat = generator_catalog()
    mixed = cat['dh1'] + cat['d1+'] + cat['e1']
    assert principal_component(mixed, -2).terms == cat['dh1'].terms
    assert principal_component(mixed, -1).terms == cat['d1+'].terms
    assert principal_component(mixed, 0).terms == cat['e1'].terms
    assert not principal_component(mixed, 1).terms


def test_outside_catalog_span():
    with pytest.raises(NotInCatalogSpan):
        expand_in_catalog(E510Element.vector(0, (3, 0, 0, 0, 0)))


def test_form_antisymmetry():
    assert E510Element.form(1, 1).is_zero()
    assert (E510Element.form(2, 0) + E510Element.form(0, 2)).is_zero()


def test_epsilon_signs():
    assert all_permutation_signs_agree()
