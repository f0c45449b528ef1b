"""
Morphisms between the induced modules M_X^{m,n} and the grid they form.

An operator is a finite sum of terms ``u (x) phi`` acting by (u (x) phi)(u' (x) v) = u'u (x) phi(v).
Each ``phi`` is stored as a pair of exponent vectors: partial derivatives taken in the
source variables followed by multiplication by a monomial of the target space.
"""

import logging
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import prod
from typing import Dict, Iterator, List, NamedTuple, Optional, Tuple

from e36verify.exceptions import NotDefinedHere, SourceMismatch
from e36verify.verma_modules import (LMonomial, ModuleVector, UElement, VMonomial, _accumulate, base_space,
                                     component_basis, lmonomials, multiply_monomials, slot_kind, u_add, u_mul, word)

OPERATOR_IDS = ('nabla', 'nabla2', 'nabla3', 'nabla4p', 'nabla4pp', 'nabla6', 'nabla_tilde')

# consistent degree of the U(L_-) part of each operator
OPERATOR_DEGREE = {'nabla': 1, 'nabla2': 2, 'nabla3': 3, 'nabla4p': 4, 'nabla4pp': 4, 'nabla6': 6,
                   'nabla_tilde': 2}

PLUS, MINUS = 3, 4


class Node(NamedTuple):
    space: str
    m: int
    n: int

    def __str__(self):
        return f"{self.space}^{self.m},{self.n}"


class Arrow(NamedTuple):
    source: Node
    target: Node
    op_id: str


def _unit(i: int, k: int = 1) -> VMonomial:
    return tuple(k if j == i else 0 for j in range(5))


def _add(a: VMonomial, b: VMonomial) -> VMonomial:
    return tuple(x + y for x, y in zip(a, b))


ZERO: VMonomial = (0, 0, 0, 0, 0)


# ---------------------------------------------------------------- named elements of U(L_-)

def odd_letter(i: int, sign: str) -> str:
    """d_i^+ or d_i^- for i in 1..3."""
    return f"d{i}{sign}"


@lru_cache(maxsize=None)
def _odd_cube_items(k: int) -> Tuple:
    if k == 0:
        out = word('d1+', 'd2+', 'd3+')
    elif k == 3:
        out = word('d1-', 'd2-', 'd3-')
    else:
        words = []
        for minus in ((0,), (1,), (2,)) if k == 1 else ((0, 1), (0, 2), (1, 2)):
            words.append(word(*(odd_letter(i + 1, '-' if i in minus else '+') for i in range(3))))
        out = u_add(*words)
    return tuple(out.items())


def odd_cube(k: int) -> UElement:
    """Sum of the products d_1 d_2 d_3 carrying exactly ``k`` minus signs (k = 0..3)."""
    if k not in range(4):
        raise ValueError(f"odd_cube index must be 0..3, got {k}")
    return dict(_odd_cube_items(k))


# ---------------------------------------------------------------- operators

class InducedOperator(NamedTuple):
    op_id: str
    source: Node
    target: Node
    terms: Tuple[Tuple[Tuple, VMonomial, VMonomial], ...]

    def __repr__(self):
        return f"InducedOperator({self.op_id}: {self.source} -> {self.target}, {len(self.terms)} terms)"


def _term(u: UElement, der: VMonomial, mul: VMonomial) -> Tuple:
    return (tuple(sorted(u.items())), der, mul)


def _split_partial(space: str, exps: VMonomial) -> Tuple[VMonomial, VMonomial]:
    """Realize a monomial in d/dx_i, d/dz_e on V_X: derivatives on x-kind slots, products on d-kind."""
    der = tuple(e if slot_kind(space, i) == 'x' else 0 for i, e in enumerate(exps))
    mul = tuple(e if slot_kind(space, i) == 'd' else 0 for i, e in enumerate(exps))
    return der, mul


def _nabla_terms(space: str) -> List[Tuple]:
    terms = []
    for i, eps in product(range(3), (PLUS, MINUS)):
        der, mul = _split_partial(space, _add(_unit(i), _unit(eps)))
        terms.append(_term(word(odd_letter(i + 1, '+' if eps == PLUS else '-')), der, mul))
    return terms


def _nabla2_terms(space: str) -> List[Tuple]:
    terms = []
    for i, j in product(range(3), range(3)):
        der, mul = _split_partial(space, _add(_unit(i), _unit(j)))
        terms.append(_term(word(odd_letter(i + 1, '+'), odd_letter(j + 1, '-')), der, mul))
    return terms


def _nabla3_terms(space: str) -> List[Tuple]:
    terms = []
    for signs in product((PLUS, MINUS), repeat=3):
        exps = ZERO
        for eps in signs:
            exps = _add(exps, _unit(eps))
        der, mul = _split_partial(space, exps)
        letters = [odd_letter(i + 1, '+' if eps == PLUS else '-') for i, eps in enumerate(signs)]
        terms.append(_term(word(*letters), der, mul))
    return terms


def _nabla4p_terms() -> List[Tuple]:
    # a D^- d+^2 + b D^- d+d- + c D^- d-^2, from quadratics in z to the constants of V_D times d_i
    terms = []
    for cube, der in ((0, _unit(PLUS, 2)), (1, _add(_unit(PLUS), _unit(MINUS))), (2, _unit(MINUS, 2))):
        for i in range(3):
            terms.append(_term(u_mul(odd_cube(cube), word(odd_letter(i + 1, '-'))), der, _unit(i)))
    return terms


def _nabla4pp_terms() -> List[Tuple]:
    terms = []
    for cube, mul in ((0, _unit(PLUS, 2)), (1, _add(_unit(PLUS), _unit(MINUS))), (2, _unit(MINUS, 2))):
        for i in range(3):
            terms.append(_term(u_mul(word(odd_letter(i + 1, '-')), odd_cube(cube)), _unit(i), mul))
    return terms


def _nabla6_terms() -> List[Tuple]:
    a, b, c, d = (odd_cube(k) for k in range(4))
    minus_one = {LMonomial((0, 0, 0), ()): Fraction(-1)}
    return [
        _term(u_mul(minus_one, u_mul(a, d)), _unit(PLUS), _unit(MINUS)),
        _term(u_mul(minus_one, u_mul(a, c)), _unit(PLUS), _unit(PLUS)),
        _term(u_mul(minus_one, u_mul(d, b)), _unit(MINUS), _unit(MINUS)),
        _term(u_mul(minus_one, u_mul(d, a)), _unit(MINUS), _unit(PLUS)),
    ]


def _nabla_tilde_terms() -> List[Tuple]:
    # nabla on A^{1,1} down to the constants, then nabla from the constants of D
    terms = []
    for i, eps in product(range(3), (PLUS, MINUS)):
        for j, delta in product(range(3), (PLUS, MINUS)):
            u = word(odd_letter(i + 1, '+' if eps == PLUS else '-'), odd_letter(j + 1, '+' if delta == PLUS else '-'))
            if u:
                terms.append(_term(u, _add(_unit(i), _unit(eps)), _add(_unit(j), _unit(delta))))
    return terms


def outgoing(node: Node, combined: bool = False) -> Optional[Arrow]:
    """The unique arrow leaving ``node`` (basic grid, or the combined complex if ``combined``)."""
    space, m, n = node
    if component_basis(space, m, n) == []:
        return None
    if combined and node in (Node('A', 0, 0), Node('D', 0, 0)):
        return None
    if combined and node == Node('A', 1, 1):
        return Arrow(node, Node('D', -1, -1), 'nabla_tilde')
    if space == 'A':
        if m >= 1 and n >= 1:
            return Arrow(node, Node('A', m - 1, n - 1), 'nabla')
        if n == 0 and m >= 2:
            return Arrow(node, Node('B', m - 2, 0), 'nabla2')
        if n == 0 and m == 1:
            return Arrow(node, Node('D', 0, -2), 'nabla4pp')
        if m == 0 and n >= 3:
            return Arrow(node, Node('C', 0, n - 3), 'nabla3')
        if m == 0 and n == 2:
            return Arrow(node, Node('D', -1, 0), 'nabla4p')
        if m == 0 and n == 1:
            return Arrow(node, Node('D', 0, -1), 'nabla6')
        return None
    if space == 'B':
        if m >= 1:
            return Arrow(node, Node('B', m - 1, n - 1), 'nabla')
        return Arrow(node, Node('D', 0, n - 3), 'nabla3')
    if space == 'C':
        if n >= 1:
            return Arrow(node, Node('C', m - 1, n - 1), 'nabla')
        return Arrow(node, Node('D', m - 2, 0), 'nabla2')
    return Arrow(node, Node('D', m - 1, n - 1), 'nabla')


def valid_nodes(bound: int) -> Iterator[Node]:
    for space in 'ABCD':
        for m in range(-bound, bound + 1):
            for n in range(-bound, bound + 1):
                if component_basis(space, m, n):
                    yield Node(space, m, n)


def grid(bound: int = 3, combined: bool = False) -> List[Arrow]:
    """Arrows of the grid among nodes with |m|, |n| <= bound."""
    arrows = []
    for node in valid_nodes(bound):
        arrow = outgoing(node, combined)
        if arrow is not None:
            arrows.append(arrow)
    if not combined:
        arrows.append(Arrow(Node('A', 1, 1), Node('D', -1, -1), 'nabla_tilde'))
    return arrows


def predecessor_candidates(node: Node) -> List[Node]:
    """Every node that can have an arrow into ``node`` in any of the grids."""
    space, m, n = node
    return [Node('A', m + 1, n + 1), Node('A', m + 2, 0), Node('A', 1, 0), Node('A', 0, n + 3),
                  Node('A', 0, 2), Node('A', 0, 1), Node('A', 1, 1), Node(space, m + 1, n + 1),
                  Node('B', m + 2, 0), Node('B', 0, n + 3), Node('C', m + 2, 0), Node('C', 0, n + 3)]


def predecessor(node: Node, combined: bool = True) -> Optional[Node]:
    """The unique node whose outgoing arrow lands on ``node``, if any."""
    for candidate in predecessor_candidates(node):
        arrow = outgoing(candidate, combined)
        if arrow is not None and arrow.target == node:
            return candidate
    return None


def successor(node: Node, combined: bool = True) -> Optional[Node]:
    arrow = outgoing(node, combined)
    return arrow.target if arrow else None


def chain_through(node: Node, depth: int, height: int, combined: bool = True) -> List[Node]:
    """Nodes of the chain containing ``node``, from ``height`` steps above it down to ``depth`` steps below.

    Chains ending in the A diagonal have no top, so the upward walk always needs a bound.
    """
    top = [node]
    for _ in range(height):
        pred = predecessor(top[0], combined)
        if pred is None:
            break
        top.insert(0, pred)
    current = node
    for _ in range(depth):
        current = successor(current, combined)
        if current is None:
            break
        top.append(current)
    return top


def build_operator(op_id: str, source: Node) -> InducedOperator:
    source = Node(base_space(source[0]), source[1], source[2])
    arrow = outgoing(source)
    if op_id == 'nabla_tilde':
        if source != Node('A', 1, 1):
            raise NotDefinedHere(f"nabla_tilde only leaves A^1,1, not {source}")
        return InducedOperator(op_id, source, Node('D', -1, -1), tuple(_nabla_tilde_terms()))
    if op_id == 'nabla' and source.space in 'ABCD' and component_basis(*source):
        target = Node(source.space, source.m - 1, source.n - 1)
        if component_basis(*target):
            return InducedOperator(op_id, source, target, tuple(_nabla_terms(source.space)))
    if arrow is None or arrow.op_id != op_id:
        raise NotDefinedHere(f"{op_id} has no arrow leaving {source}")
    builders = {
        'nabla2': lambda: _nabla2_terms(source.space),
        'nabla3': lambda: _nabla3_terms(source.space),
        'nabla4p': _nabla4p_terms,
        'nabla4pp': _nabla4pp_terms,
        'nabla6': _nabla6_terms,
    }
    return InducedOperator(op_id, source, arrow.target, tuple(builders[op_id]()))


def _differentiate(vm: VMonomial, der: VMonomial) -> Tuple[int, Optional[VMonomial]]:
    if any(e < k for e, k in zip(vm, der)):
        return 0, None
    factor = prod(prod(range(e - k + 1, e + 1)) for e, k in zip(vm, der))
    return factor, tuple(e - k for e, k in zip(vm, der))


@lru_cache(maxsize=None)
def _apply_term(op: InducedOperator, lm: LMonomial, vm: VMonomial, graded: bool = False) -> Tuple[Tuple[Tuple[LMonomial, VMonomial], Fraction], ...]:
    out: Dict = {}
    for u_items, der, mul in op.terms:
        factor, rest = _differentiate(vm, der)
        if not factor:
            continue
        new_vm = _add(rest, mul)
        for ulm, c in u_items:
            for key, c2 in multiply_monomials(lm, ulm, graded).items():
                _accumulate(out, (key, new_vm), factor * c * c2)
    return tuple(out.items())


def apply(op: InducedOperator, v: ModuleVector, graded: bool = False) -> ModuleVector:
    """Apply ``op``; with ``graded`` the products are taken in Gr U(L_-)."""
    if v.is_zero():
        return ModuleVector({}, op.target.space)
    if v.space != op.source.space or v.components() != {(op.source.m, op.source.n)}:
        raise SourceMismatch(f"{op.op_id} expects M_{op.source}, got components {sorted(v.components())} of M_{v.space}")
    out: Dict = {}
    for (lm, vm), c in v.terms.items():
        for key, c2 in _apply_term(op, lm, vm, graded):
            _accumulate(out, key, c * c2)
    return ModuleVector(out, op.target.space)


def operator_on_degree(op: InducedOperator, ldegree: int) -> Tuple[List, Dict]:
    """Basis of the source at U-degree ``ldegree`` and the image of each basis vector."""
    basis = [(lm, vm) for lm in lmonomials(ldegree) for vm in component_basis(*op.source)]
    images = {key: apply(op, ModuleVector.basis_vector(key, op.source.space)) for key in basis}
    logging.debug(f"{op.op_id} on {op.source} degree {ldegree}: {len(basis)} basis vectors")
    return basis, images


def composable_pairs(bound: int = 3, combined: bool = False) -> List[Tuple[Arrow, Arrow]]:
    arrows = grid(bound, combined)
    by_source = {}
    for arrow in arrows:
        by_source.setdefault(arrow.source, []).append(arrow)
    return [(first, second) for first in arrows for second in by_source.get(first.target, [])]

