import pytest

from e36verify.exceptions import NotDefinedHere
from e36verify.nabla_operators import (Arrow, Node, apply, build_operator, chain_through, grid, outgoing,
                                       predecessor)
from e36verify.verma_modules import UNIT, ModuleVector, component_basis, lmonomials


@pytest.mark.parametrize("source, target, op_id", [
    (Node('A', 2, 2), Node('A', 1, 1), 'nabla'),
    (Node('A', 0, 3), Node('C', 0, 0), 'nabla3'),
    (Node('A', 0, 2), Node('D', -1, 0), 'nabla4p'),
    (Node('A', 1, 0), Node('D', 0, -2), 'nabla4pp'),
    (Node('A', 0, 1), Node('D', 0, -1), 'nabla6'),
    (Node('A', 2, 0), Node('B', 0, 0), 'nabla2'),
    (Node('C', 0, 0), Node('D', -2, 0), 'nabla2'),
])
def test_grid_arrows(source, target, op_id):
    assert Arrow(source, target, op_id) in grid(3)


def test_combined_complex_at_exceptional_node():
    assert outgoing(Node('A', 1, 1), combined=True) == Arrow(Node('A', 1, 1), Node('D', -1, -1), 'nabla_tilde')
    assert outgoing(Node('A', 1, 1)).op_id == 'nabla'
    assert outgoing(Node('A', 0, 0), combined=True) is None
    assert predecessor(Node('D', -1, -1), combined=True) == Node('A', 1, 1)


def test_chains():
    assert chain_through(Node('A', 1, 1), 1, 2, combined=False) == [
        Node('A', 3, 3), Node('A', 2, 2), Node('A', 1, 1), Node('A', 0, 0)]
    assert chain_through(Node('D', -1, -1), 2, 1) == [
        Node('A', 1, 1), Node('D', -1, -1), Node('D', -2, -2), Node('D', -3, -3)]


def test_operator_outside_its_arrow():
    with pytest.raises(NotDefinedHere):
        build_operator('nabla_tilde', Node('A', 0, 1))
    with pytest.raises(NotDefinedHere):
        build_operator('nabla3', Node('A', 1, 1))


def _basis(node, degree):
    return [ModuleVector.basis_vector((lm, vm), node.space)
            for lm in lmonomials(degree) for vm in component_basis(*node)]


def test_nabla_squares_to_zero():
    first = build_operator('nabla', Node('A', 2, 2))
    second = build_operator('nabla', Node('A', 1, 1))
    images = [apply(first, v) for v in _basis(Node('A', 2, 2), 0)]
    assert any(not w.is_zero() for w in images)
    assert all(apply(second, w).is_zero() for w in images)


def test_nabla_raises_degree_by_one():
    op = build_operator('nabla', Node('A', 1, 1))
    for v in _basis(Node('A', 1, 1), 0):
        image = apply(op, v)
        assert image.is_zero() or image.ldegrees() == {1}


def test_unit_is_degree_zero():
    assert UNIT.degree == 0
