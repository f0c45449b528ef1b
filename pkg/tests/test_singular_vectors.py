from fractions import Fraction

import pytest

from e36verify.exceptions import ParamsOutOfRange
from e36verify.nabla_operators import Node, apply, build_operator
from e36verify.singular_vectors import (FAMILIES, PLUS, REPRESENTATIVES, SECONDARY, anticommutator_defect,
                                        anticommutator_pairs, boundary_preimage, congruence_factor, d_00_class,
                                        d_0m1_pair, exhaustive_scan, family_parameters, hw_monomial,
                                        identity_residuals, identity_table, incoming_nabla, materialize,
                                        module_label, push_forward, pushed_singular_vectors, representatives,
                                        right_factors, tensor, verify_secondary, verify_singular, vmono,
                                        y_commutator_defect)
from e36verify.verma_modules import UNIT, ModuleVector, module_basis, word


@pytest.mark.parametrize("tag, params", [
    ('nabla_A', (0, 0)), ('nabla_A', (1, 1)), ('nabla_B', (0, 1)), ('nabla_C', (1, 0)), ('nabla_D', (1, 1)),
    ('nabla2_B', (0,)), ('nabla3_C', (0,)), ('nabla4p_vector', ()), ('nabla6_vector', ()),
    ('nabla_square_vector', ()),
])
def test_catalog_vectors_are_singular(tag, params):
    v = materialize(tag, *params)
    assert not v.is_zero()
    report = verify_singular(v, tag)
    assert report.passed, report.failed()


@pytest.mark.parametrize("tag", list(SECONDARY))
def test_secondary_classes(tag):
    report = verify_secondary(materialize(tag), incoming_nabla(SECONDARY[tag].node), tag)
    assert report.passed, report.failed()


def test_perturbed_vector_is_rejected():
    vm = hw_monomial('A', 1, 1)
    v = tensor(word('d1+'), vm, 'A') + tensor(word('d2+'), vm, 'A')
    report = verify_singular(v)
    assert not report.passed
    assert 'e1' in report.failed()
    assert 'e1' in report.residuals


def test_family_parameters():
    assert family_parameters('nabla_A', 1) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert family_parameters('nabla_D', 1) == [(1, 1)]
    assert family_parameters('nabla6_vector', 5) == [()]
    assert set(FAMILIES) >= {'nabla_A', 'nabla_B', 'nabla_C', 'nabla_D'}


def test_bad_parameters():
    with pytest.raises(ParamsOutOfRange):
        materialize('nabla_A', 1)
    with pytest.raises(ParamsOutOfRange):
        materialize('nabla_Z')


def test_module_label():
    assert module_label(Node('D', -1, -1)) == (0, 1, 1, Fraction(1, 3))
    assert module_label(Node('A', 1, 1)) == (1, 0, 1, Fraction(-1, 3))


def test_scan_finds_the_degree_one_vector():
    found = exhaustive_scan(Node('A', 1, 1), 1)
    assert len(found) == 1
    assert found[0].ldegrees() == {1}


def test_scan_of_the_two_vector_module():
    node = Node('D', -1, -1)
    assert module_label(node) == (0, 1, 1, Fraction(1, 3))
    found = exhaustive_scan(node, 4)
    assert len(found) == 2
    for v in found:
        assert verify_singular(v).passed


def test_scan_of_the_one_vector_module():
    node = Node('A', 1, 1)
    assert module_label(node) == (1, 0, 1, Fraction(-1, 3))
    assert len(exhaustive_scan(node, 4)) == 1


@pytest.mark.parametrize("name", [name for name, _, _ in identity_table()])
def test_identities_hold_exactly(name):
    residual = identity_residuals()[name]
    assert residual.is_zero(), repr(residual)


def test_identity_table_contents():
    names = {name for name, _, _ in identity_table()}
    assert 'r+ = -nabla6(z+)' in names
    assert 'lambda = 2ad - b hatDelta-' in names
    assert 'nabla lambda = hatDelta- q+ - hatDelta+ q-' in names
    assert 'd1- r+ - d1+ r- = 4 (dh3 rho2 - dh2 rho3)' in names
    assert all(lhs.space == rhs.space for _, lhs, rhs in identity_table() if lhs.terms and rhs.terms)


def test_r_plus_is_minus_nabla6_vector():
    assert (d_0m1_pair('+') + materialize('nabla6_vector')).is_zero()


def test_lambda_is_not_zero():
    lam = d_00_class()
    assert not lam.is_zero()
    assert lam.components() == {(0, 0)}


def test_congruence_factor():
    op = build_operator('nabla', Node('D', 0, 0))
    rhs = tensor({UNIT: Fraction(1)}, vmono((0, 1), (PLUS, 1)), 'D')
    boundary = apply(op, tensor(word('d1+'), vmono(), 'D'))
    assert not boundary.is_zero()
    assert congruence_factor(rhs.scale(3) + boundary, rhs, op) == 3
    assert congruence_factor(boundary, boundary, op) is None


def test_boundary_preimage():
    op = build_operator('nabla', Node('D', 0, 0))
    boundary = apply(op, tensor(word('d2-'), vmono(), 'D'))
    preimage = boundary_preimage(op, boundary)
    assert preimage is not None
    assert (apply(op, preimage) - boundary).is_zero()
    assert boundary_preimage(op, tensor({UNIT: Fraction(1)}, vmono((0, 1), (PLUS, 1)), 'D')) is None


def test_push_forward():
    trivial = tensor({UNIT: Fraction(1)}, vmono((0, 1), (PLUS, 1)), 'A')
    assert (push_forward(trivial) - materialize('nabla_A', 0, 0)).is_zero()
    assert push_forward(tensor({UNIT: Fraction(1)}, vmono(), 'A')) is None


def test_pushed_singular_vectors_are_singular():
    pushed = pushed_singular_vectors(1)
    assert pushed
    for name, v in pushed:
        assert verify_singular(v, name).passed, name


@pytest.mark.parametrize("node", list(REPRESENTATIVES))
def test_representatives_lie_at_their_node(node):
    for name, v in representatives(node).items():
        assert not v.is_zero(), name
        assert v.components() == {(node.m, node.n)}, name


def test_representatives_unknown_node():
    with pytest.raises(ParamsOutOfRange):
        representatives(Node('A', 3, 3))


@pytest.mark.parametrize("name", ['d+', 'd2', 'd3-', 'Delta+', 'delta1'])
def test_y_commutators(name):
    factor, eigenvalue = right_factors()[name]
    for key in module_basis('D', -1, -1, 2):
        v = ModuleVector.basis_vector(key, 'D')
        assert y_commutator_defect(v, factor, eigenvalue).is_zero()
    assert not y_commutator_defect(tensor({UNIT: Fraction(1)}, vmono((PLUS, 1)), 'D'), factor,
                                   eigenvalue + 1).is_zero()


def test_right_factor_eigenvalues():
    table = right_factors()
    assert table['d-'][1] == 1
    assert table['d1'][1] == Fraction(-2, 3)
    assert table['d2+'][1] == Fraction(-1, 3)
    assert table['Delta-'][1] == -1
    assert table['delta3'][1] == Fraction(2, 3)


def test_anticommutators():
    pairs = anticommutator_pairs()
    assert 'Delta+ Delta-' in pairs and 'delta1 delta2' in pairs
    for key in module_basis('D', 0, -1, 1):
        v = ModuleVector.basis_vector(key, 'D')
        for first, second in pairs.values():
            assert anticommutator_defect(v, first, second).is_zero()
