from collections import Counter
from fractions import Fraction

import pytest

from e36verify.exceptions import InconsistentDecomposition
from e36verify.homology_engine import (ComplexInstance, ComplexSpec, bicomplex_split, build, check_representatives,
                                       dim_irreducible, expected_block_dimension, expected_dimension,
                                       first_page_dimensions, g0_decompose, homology, irreducible_graded_pieces,
                                       isomorphism_dimensions, position_homology, rank_inequality, symbol,
                                       verma_homology_graded)
from e36verify.nabla_operators import Node, apply, build_operator
from e36verify.singular_vectors import PLUS, REPRESENTATIVES, d_00_class, representatives, tensor, vmono
from e36verify.verma_modules import UNIT, Weight


def g0_homology(space, m, n):
    spec = ComplexSpec('G0', space)
    return sum(sum(position_homology(spec, Node(space, m, n), j).values()) for j in range(spec.top_layer + 1))


@pytest.mark.parametrize("space, m, n, dim", [
    ('A', 0, 1, 5), ('A', 1, 1, 5), ('C', 0, 0, 20), ('A', 2, 2, 0), ('A', 0, 0, 1),
])
def test_expected_dimension(space, m, n, dim):
    assert expected_dimension(space, m, n) == dim


@pytest.mark.parametrize("space, m, n", [('A', 0, 1), ('A', 1, 1), ('A', 2, 1), ('D', -1, -1), ('B', 1, -1)])
def test_subquotient_homology_matches_closed_form(space, m, n):
    assert g0_homology(space, m, n) == expected_dimension(space, m, n)


def test_block_dimensions():
    assert expected_block_dimension('A', 0, 0, 0, 0) == 1
    assert expected_block_dimension('A', -1, 0, 0, 0) == 0
    assert expected_block_dimension('B', 4, 0, 0, 0) == 0


def test_spec_validation():
    with pytest.raises(ValueError):
        ComplexSpec('X', 'A')
    with pytest.raises(ValueError):
        ComplexSpec('G0', 'AB')
    with pytest.raises(ValueError):
        ComplexSpec('M', 'A', block=(0, 0))
    assert ComplexSpec('G', 'A', block=(1, 2)).label == 'G_A(1,2)'
    assert ComplexSpec('BigM').label == 'BigM'


def test_build_checks_squares():
    instance = build(ComplexSpec('G', 'A'), bound=1, check_layers=2)
    assert Node('A', 1, 1) in instance.nodes
    assert all(a.source.space == 'A' for a in instance.arrows)


def test_decomposition():
    assert g0_decompose({Weight(0, 0, 0, 0): 1}) == Counter({(0, 0, 0, Fraction(0)): 1})
    doublet = {Weight(0, 0, 1, Fraction(-1)): 1, Weight(0, 0, -1, Fraction(-1)): 1}
    assert g0_decompose(doublet) == Counter({(0, 0, 1, Fraction(-1)): 1})
    with pytest.raises(InconsistentDecomposition):
        g0_decompose({Weight(0, 0, 1, 0): 1})


def test_dim_irreducible():
    assert dim_irreducible((1, 0, 0, 0)) == 3
    assert dim_irreducible((1, 1, 1, 0)) == 16


def test_homology_content():
    content = homology(ComplexInstance(ComplexSpec('G0', 'A'), []), 0, 0).content
    assert dict(content) == {(0, 0, 0, 0): 1}
    content = homology(ComplexInstance(ComplexSpec('G0', 'D'), []), -1, -1).content
    assert sorted(dim_irreducible(label) for label, k in content.items() for _ in range(k)) == [2, 3]


def test_trivial_quotient():
    pieces = irreducible_graded_pieces(Node('A', 0, 0), 2)
    assert pieces.dims == {0: 1, 1: 0, 2: 0}


def test_bicomplex():
    assert bicomplex_split('A', Node('A', 2, 2)) == {'plus_squared': True, 'minus_squared': True,
                                                      'anticommute': True}

@pytest.mark.parametrize("space, node, graded", [
    ('A', Node('A', 0, 0), {0: 1, 1: 0, 2: 0, 3: 0}),
    ('A', Node('A', 1, 2), {0: 0, 1: 0, 2: 0, 3: 0}),
    ('D', Node('D', 0, 0), {0: 0, 1: 0, 2: 0, 3: 0}),
])
def test_verma_homology_graded(space, node, graded):
    assert verma_homology_graded(ComplexSpec('M', space), node, 3) == graded


def test_rank_inequality():
    rows = rank_inequality('A', Node('A', 0, 1), 4)
    assert [j for j, _, _ in rows] == [0, 1, 2, 3, 4]
    assert rows[0] == (0, 2, 2)
    assert all(dim <= bound for _, dim, bound in rows)


def test_first_page_is_tensor_product():
    rows = first_page_dimensions('A', Node('A', 0, 1), 4)
    assert rows[0] == (0, 2, 2)
    assert rows[1] == (1, 3, 3)
    assert all(dim == bound for _, dim, bound in rows)


def test_isomorphism_dimensions():
    rows = isomorphism_dimensions(Node('A', 0, 3), Node('C', 0, 0), 'nabla3', 2)
    assert [j for j, _, _ in rows] == [0, 1, 2]
    assert all(coker == ker for _, coker, ker in rows)
    assert rows[0][1] > 0


@pytest.mark.parametrize("node", list(REPRESENTATIVES))
def test_representatives_span_homology(node):
    checks = check_representatives(node, representatives(node))
    assert checks
    for rc in checks:
        assert rc.passed, rc


def test_representative_y_values():
    s, = check_representatives(Node('A', 1, 2), representatives(Node('A', 1, 2)))
    assert s.layer == 2
    assert s.y == {'s': Fraction(-2)}
    xi, = check_representatives(Node('D', -1, -2), representatives(Node('D', -1, -2)))
    assert xi.y == {'xi': Fraction(0)}
    by_layer = {rc.layer: rc.names for rc in check_representatives(Node('A', 0, 1), representatives(Node('A', 0, 1)))}
    assert by_layer == {0: ('z+', 'z-'), 1: ('zeta1', 'zeta2', 'zeta3')}


def test_boundary_is_not_a_representative():
    node = Node('A', 1, 1)
    boundary = apply(build_operator('nabla', Node('A', 2, 2)),
                     tensor({UNIT: Fraction(1)}, vmono((0, 2), (PLUS, 2)), 'A'))
    rc, = check_representatives(node, {'boundary': boundary})
    assert rc.cycles == ('boundary',)
    assert rc.independent == 0
    assert not rc.passed


def test_symbol_keeps_top_length():
    lam = d_00_class()
    top = symbol(lam)
    assert {lm.length for lm, _ in top.terms} == {6}
    assert symbol(symbol(lam)).terms == top.terms
