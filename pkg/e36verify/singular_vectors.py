"""
Catalog of singular and secondary singular vectors, their verification, and exhaustive scans.

A vector s is singular when e1, e2, e3, e0' and e0 all kill it. A secondary singular vector
is a g0 highest-weight cycle of nabla whose images under e0 and e0' are boundaries.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from e36verify.exact_linalg import SparseMatrix, solve
from e36verify.exceptions import NotDefinedHere, ParamsOutOfRange
from e36verify.nabla_operators import (InducedOperator, Node, apply, build_operator, odd_cube, odd_letter,
                                       outgoing, valid_nodes)
from e36verify.verma_modules import (UNIT, ModuleVector, UElement, act_g0, act_gplus, algebra_mul,
                                     component_basis, joint_kernel, lmonomials, lmul, term_weight, u_add,
                                     weight_spaces, word, y_of_component)

ZERO = (0, 0, 0, 0, 0)
PLUS, MINUS = 3, 4

CHECKS = ('e1', 'e2', 'e3', 'e0p', 'e0')


def _unit(i: int, k: int = 1):
    return tuple(k if j == i else 0 for j in range(5))


def vmono(*exps) -> Tuple[int, ...]:
    out = [0] * 5
    for i, k in exps:
        out[i] += k
    return tuple(out)


def tensor(u: UElement, vm, space: str, coeff=1) -> ModuleVector:
    return ModuleVector.from_u(u, vm, space, coeff)


def hw_monomial(space: str, m: int, n: int):
    """Highest-weight monomial of V_X^{m,n}: x1 or d3 in the first group, z+ or d- in the second."""
    first = 0 if space in 'AB' else 2
    second = PLUS if space in 'AC' else MINUS
    return vmono((first, abs(m)), (second, abs(n)))


def module_label(node: Node) -> Tuple[int, int, int, Fraction]:
    """(p, q, r, y) of the generalized Verma module sitting at ``node``."""
    space, m, n = node
    if space in 'AB':
        p, q = abs(m), 0
    else:
        p, q = 0, abs(m)
    return p, q, abs(n), y_of_component(space, m, n)


# ---------------------------------------------------------------- family builders

def _trivial(space: str, m: int, n: int) -> Tuple[Node, ModuleVector]:
    if not component_basis(space, m, n):
        raise ParamsOutOfRange(f"V_{space}^{m},{n} is zero")
    return Node(space, m, n), tensor({UNIT: Fraction(1)}, hw_monomial(space, m, n), space)


def _image(op_id: str, source: Node, vm) -> ModuleVector:
    op = build_operator(op_id, source)
    return apply(op, tensor({UNIT: Fraction(1)}, vm, source.space))


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ParamsOutOfRange(message)


def _nabla_a(p: int, r: int) -> ModuleVector:
    _require(p >= 0 and r >= 0, "nabla_A needs p, r >= 0")
    return _image('nabla', Node('A', p + 1, r + 1), vmono((0, p + 1), (PLUS, r + 1)))


def _nabla_b(p: int, r: int) -> ModuleVector:
    _require(p >= 0 and r > 0, "nabla_B needs p >= 0, r > 0")
    return _image('nabla', Node('B', p + 1, -(r - 1)), vmono((0, p + 1), (MINUS, r - 1)))


def _nabla_c(q: int, r: int) -> ModuleVector:
    _require(q > 0 and r >= 0, "nabla_C needs q > 0, r >= 0")
    return _image('nabla', Node('C', -(q - 1), r + 1), vmono((2, q - 1), (PLUS, r + 1)))


def _nabla_d(q: int, r: int) -> ModuleVector:
    _require(q > 0 and r > 0, "nabla_D needs q, r > 0")
    return _image('nabla', Node('D', -(q - 1), -(r - 1)), vmono((2, q - 1), (MINUS, r - 1)))


def _nabla2_b(p: int) -> ModuleVector:
    _require(p >= 0, "nabla2_B needs p >= 0")
    return _image('nabla2', Node('A', p + 2, 0), vmono((0, p + 2)))


def _nabla2_d(q: int) -> ModuleVector:
    _require(q >= 2, "nabla2_D needs q >= 2")
    return _image('nabla2', Node('C', -(q - 2), 0), vmono((2, q - 2)))


def _nabla3_c(r: int) -> ModuleVector:
    _require(r >= 0, "nabla3_C needs r >= 0")
    return _image('nabla3', Node('A', 0, r + 3), vmono((PLUS, r + 3)))


def _nabla3_d(r: int) -> ModuleVector:
    _require(r >= 3, "nabla3_D needs r >= 3")
    return _image('nabla3', Node('B', 0, -(r - 3)), vmono((MINUS, r - 3)))


def _nabla4p_vector() -> ModuleVector:
    return _image('nabla4p', Node('A', 0, 2), _unit(PLUS, 2)).scale(Fraction(1, 2))


def _nabla4pp_vector() -> ModuleVector:
    return _image('nabla4pp', Node('A', 1, 0), _unit(0))


def _nabla6_vector() -> ModuleVector:
    return _image('nabla6', Node('A', 0, 1), _unit(PLUS))


def _nabla_square_vector() -> ModuleVector:
    return _image_from(Node('D', 0, 0), word('d1+'))


def _image_from(source: Node, u: UElement) -> ModuleVector:
    return apply(build_operator('nabla', source), tensor(u, ZERO, source.space))


@dataclass(frozen=True)
class SingularFamily:
    tag: str
    params: Tuple[str, ...]
    builder: Callable[..., ModuleVector]
    description: str


FAMILIES: Dict[str, SingularFamily] = {f.tag: f for f in (
    SingularFamily('nabla_A', ('p', 'r'), _nabla_a, "nabla(x1^{p+1} z+^{r+1}) in M(p,0;r;y_A)"),
    SingularFamily('nabla_B', ('p', 'r'), _nabla_b, "nabla(x1^{p+1} d-^{r-1}) in M(p,0;r;y_B)"),
    SingularFamily('nabla_C', ('q', 'r'), _nabla_c, "nabla(d3^{q-1} z+^{r+1}) in M(0,q;r;y_C)"),
    SingularFamily('nabla_D', ('q', 'r'), _nabla_d, "nabla(d3^{q-1} d-^{r-1}) in M(0,q;r;y_D)"),
    SingularFamily('nabla2_B', ('p',), _nabla2_b, "nabla2(x1^{p+2}) in M(p,0;0;y_B)"),
    SingularFamily('nabla2_D', ('q',), _nabla2_d, "nabla2(d3^{q-2}) in M(0,q;0;y_D)"),
    SingularFamily('nabla3_C', ('r',), _nabla3_c, "nabla3(z+^{r+3}) in M(0,0;r;y_C)"),
    SingularFamily('nabla3_D', ('r',), _nabla3_d, "nabla3(d-^{r-3}) in M(0,0;r;y_D)"),
    SingularFamily('nabla4p_vector', (), _nabla4p_vector, "a Delta^- 1 in M(0,1;0;y_D)"),
    SingularFamily('nabla4pp_vector', (), _nabla4pp_vector, "d1^-(a d+^2 + b d+d- + c d-^2) in M(0,0;2;y_D)"),
    SingularFamily('nabla6_vector', (), _nabla6_vector, "nabla6(z+) in M(0,0;1;y_D)"),
    SingularFamily('nabla_square_vector', (), _nabla_square_vector, "d1^+(Delta^+ d+ + Delta^- d-) in M(0,1;1;y_D)"),
)}


def materialize(tag: str, *params) -> ModuleVector:
    if tag == 'trivial':
        return _trivial(*params)[1]
    if tag in SECONDARY:
        if params:
            raise ParamsOutOfRange(f"{tag} takes no parameters")
        return SECONDARY[tag].builder()
    try:
        family = FAMILIES[tag]
    except KeyError:
        raise ParamsOutOfRange(f"unknown family {tag}") from None
    if len(params) != len(family.params):
        raise ParamsOutOfRange(f"{tag} takes parameters {family.params}")
    return family.builder(*params)


def family_parameters(tag: str, bound: int) -> List[Tuple[int, ...]]:
    """Parameter tuples of a family with every parameter at most ``bound``."""
    family = FAMILIES[tag]
    lows = {'nabla_A': (0, 0), 'nabla_B': (0, 1), 'nabla_C': (1, 0), 'nabla_D': (1, 1), 'nabla2_B': (0,),
            'nabla2_D': (2,), 'nabla3_C': (0,), 'nabla3_D': (3,)}.get(tag, ())
    out = [()]
    for low in lows:
        out = [prev + (k,) for prev in out for k in range(low, bound + 1)]
    return out if family.params else [()]


# ---------------------------------------------------------------- elements of U(L_-) (x) V

def _d(u: UElement, vm=ZERO) -> ModuleVector:
    return tensor(u, vm, 'D')


def _dvar(*exps) -> ModuleVector:
    return _d({UNIT: Fraction(1)}, vmono(*exps))


def _prod(*factors: ModuleVector) -> ModuleVector:
    out = factors[0]
    for f in factors[1:]:
        out = algebra_mul(out, f)
    return out


def cube(k: int) -> ModuleVector:
    return _d(odd_cube(k))


def delta_sum(sign: str) -> ModuleVector:
    """d_1^s d1 + d_2^s d2 + d_3^s d3 in U(L_-) (x) V_D."""
    out = ModuleVector({}, 'D')
    for i in range(3):
        out = out + _d(word(odd_letter(i + 1, sign)), _unit(i))
    return out


def d_m1m2_class() -> ModuleVector:
    """The secondary cycle in M_D^{-1,-2}."""
    dm = delta_sum('-')
    return (_prod(cube(0), dm, _dvar((PLUS, 2))) + _prod(cube(1), dm, _dvar((PLUS, 1), (MINUS, 1)))
            + _prod(cube(2), dm, _dvar((MINUS, 2))))


def d_m1m1_pair(sign: str) -> ModuleVector:
    """Cycles of M_D^{-1,-1} generating a copy of the two-dimensional g0-module."""
    if sign == '+':
        dm = delta_sum('-')
        out = _prod(cube(0), dm, _dvar((PLUS, 1))).scale(-2) - _prod(cube(1), dm, _dvar((MINUS, 1)))
    else:
        dp = delta_sum('+')
        out = _prod(cube(2), dp, _dvar((PLUS, 1))) + _prod(cube(3), dp, _dvar((MINUS, 1))).scale(2)
    return out.scale(Fraction(1, 3))


def _a(u: UElement, *exps, coeff=1) -> ModuleVector:
    return tensor(u, vmono(*exps), 'A', coeff)


def _cyclic_sum(signs: Tuple[str, str], even: bool) -> List[Tuple[UElement, int]]:
    """Pairs (d_i^s1 d_j^s2, k) over even or odd permutations (i, j, k) of 1, 2, 3."""
    perms = ((1, 2, 3), (2, 3, 1), (3, 1, 2)) if even else ((2, 1, 3), (1, 3, 2), (3, 2, 1))
    return [(word(odd_letter(i, signs[0]), odd_letter(j, signs[1])), k) for i, j, k in perms]


def _cyclic_x(signs: Tuple[str, str], even: bool, z_slot: int) -> ModuleVector:
    out = ModuleVector({}, 'A')
    for u, k in _cyclic_sum(signs, even):
        out = out + _a(u, (k - 1, 1), (z_slot, 1))
    return out


def a_11_pair(sign: str) -> ModuleVector:
    if sign == '+':
        return (_cyclic_x(('+', '+'), True, MINUS) - _cyclic_x(('+', '-'), True, PLUS)
                + _cyclic_x(('+', '-'), False, PLUS) - _cyclic_x(('-', '+'), False, PLUS))
    return (-_cyclic_x(('-', '-'), True, PLUS) + _cyclic_x(('-', '+'), True, MINUS)
            - _cyclic_x(('-', '+'), False, MINUS) + _cyclic_x(('+', '-'), False, MINUS))


# ---------------------------------------------------------------- homology representatives

def _cyclic(i: int) -> Tuple[int, int]:
    """(j, k) completing i to a cyclic permutation of 1, 2, 3."""
    return {1: (2, 3), 2: (3, 1), 3: (1, 2)}[i]


def _times_v(v: ModuleVector, *exps) -> ModuleVector:
    shift = vmono(*exps)
    return ModuleVector({(lm, tuple(a + b for a, b in zip(vm, shift))): c for (lm, vm), c in v.terms.items()},
                        v.space)


def z_vector(sign: str) -> ModuleVector:
    return _a({UNIT: Fraction(1)}, (PLUS if sign == '+' else MINUS, 1))


def a_01_triple(i: int) -> ModuleVector:
    """zeta_i = d_i^- z+ - d_i^+ z-."""
    return _a(word(odd_letter(i, '-')), (PLUS, 1)) - _a(word(odd_letter(i, '+')), (MINUS, 1))


def _alpha(sign: str) -> ModuleVector:
    out = ModuleVector({}, 'A')
    for i in (1, 2, 3):
        j, k = _cyclic(i)
        out = out + _a(word(odd_letter(i, sign), odd_letter(j, sign)), (k - 1, 1))
    return out


def a_12_class() -> ModuleVector:
    """s = (alpha_- z+^2 - alpha_0 z+ z- + alpha_+ z-^2) / 3 with alpha_0 = f3 alpha_+."""
    plus = _alpha('+')
    return (_times_v(_alpha('-'), (PLUS, 2)) - _times_v(act_g0('f3', plus), (PLUS, 1), (MINUS, 1))
            + _times_v(plus, (MINUS, 2))).scale(Fraction(1, 3))


def a_11_triple(i: int) -> ModuleVector:
    """tau_i = d_j^+ x_k z- + d_k^- x_j z+."""
    j, k = _cyclic(i)
    return (_a(word(odd_letter(j, '+')), (k - 1, 1), (MINUS, 1))
            + _a(word(odd_letter(k, '-')), (j - 1, 1), (PLUS, 1)))


def a_11_curl(i: int) -> ModuleVector:
    """theta_i = dh_k tau_j - dh_j tau_k."""
    j, k = _cyclic(i)
    return lmul(word(f'dh{k}'), a_11_triple(j)) - lmul(word(f'dh{j}'), a_11_triple(k))


def delta_hat(sign: str) -> ModuleVector:
    """dh1 d_1^s + dh2 d_2^s + dh3 d_3^s."""
    return _d(u_add(*(word(f'dh{i}', odd_letter(i, sign)) for i in (1, 2, 3))))


def delta_small(i: int) -> ModuleVector:
    """d_i^+ d+ + d_i^- d-."""
    return _d(word(odd_letter(i, '+')), _unit(PLUS)) + _d(word(odd_letter(i, '-')), _unit(MINUS))


def d_00_class() -> ModuleVector:
    """lambda = 2ad + c hat-Delta^+, the class of H^{0,0}(G_D)."""
    return _prod(cube(0), cube(3)).scale(2) + _prod(cube(2), delta_hat('+'))


def d_m1m1_triple(i: int) -> ModuleVector:
    """kappa_i = d_i^- q+ - d_i^+ q-."""
    return (_prod(_d(word(odd_letter(i, '-'))), d_m1m1_pair('+'))
            - _prod(_d(word(odd_letter(i, '+'))), d_m1m1_pair('-')))


def d_0m1_pair(sign: str) -> ModuleVector:
    """r+ = a(d d- + c d+) and r- = d(b d- + a d+)."""
    if sign == '+':
        first, tail = cube(0), (cube(3), cube(2))
    else:
        first, tail = cube(3), (cube(1), cube(0))
    return _prod(first, _prod(tail[0], _dvar((MINUS, 1))) + _prod(tail[1], _dvar((PLUS, 1))))


def d_0m1_triple(i: int) -> ModuleVector:
    """rho_i = (d_j^+ d_k^+ d d- + d_j^- d_k^- a d+) / 2, a cycle of G_D at layer 5."""
    j, k = _cyclic(i)
    plus = _prod(_d(word(odd_letter(j, '+'), odd_letter(k, '+'))), cube(3), _dvar((MINUS, 1)))
    minus = _prod(_d(word(odd_letter(j, '-'), odd_letter(k, '-'))), cube(0), _dvar((PLUS, 1)))
    return (plus + minus).scale(Fraction(1, 2))


REPRESENTATIVES: Dict[Node, Dict[str, Callable[[], ModuleVector]]] = {
    Node('A', 0, 1): {'z+': lambda: z_vector('+'), 'z-': lambda: z_vector('-'),
                      **{f'zeta{i}': (lambda i=i: a_01_triple(i)) for i in (1, 2, 3)}},
    Node('A', 1, 2): {'s': a_12_class},
    Node('A', 1, 1): {'t+': lambda: a_11_pair('+'), 't-': lambda: a_11_pair('-'),
                      **{f'tau{i}': (lambda i=i: a_11_triple(i)) for i in (1, 2, 3)}},
    Node('D', -1, -1): {'q+': lambda: d_m1m1_pair('+'), 'q-': lambda: d_m1m1_pair('-'),
                        **{f'kappa{i}': (lambda i=i: d_m1m1_triple(i)) for i in (1, 2, 3)}},
    Node('D', 0, 0): {'lambda': d_00_class},
    Node('D', 0, -1): {'r+': lambda: d_0m1_pair('+'), 'r-': lambda: d_0m1_pair('-'),
                       **{f'rho{i}': (lambda i=i: d_0m1_triple(i)) for i in (1, 2, 3)}},
    Node('D', -1, -2): {'xi': d_m1m2_class},
}


def representatives(node: Node) -> Dict[str, ModuleVector]:
    """Named vectors whose classes form a basis of H(G_X) at ``node``."""
    try:
        builders = REPRESENTATIVES[node]
    except KeyError:
        raise ParamsOutOfRange(f"no representatives listed at {tuple(node)}") from None
    return {name: build() for name, build in builders.items()}


# ---------------------------------------------------------------- identities

def supercommutator(x: ModuleVector, y: ModuleVector) -> ModuleVector:
    """xy - (-1)^{|x||y|} yx in U(L_-) (x) V_D."""
    sign = -1 if (x.parity() or 0) * (y.parity() or 0) else 1
    return algebra_mul(x, y) - algebra_mul(y, x).scale(sign)


def _letter(i: int, sign: str) -> ModuleVector:
    return _d(word(odd_letter(i, sign)))


def _dh(i: int) -> ModuleVector:
    return _d(word(f'dh{i}'))


def _commutation_identities() -> Dict[str, Tuple[ModuleVector, ModuleVector]]:
    zero = ModuleVector({}, 'D')
    delta = {s: delta_sum(s) for s in '+-'}
    hat = {s: delta_hat(s) for s in '+-'}
    out = {}
    for i in (1, 2, 3):
        j, k = _cyclic(i)
        for s in '+-':
            out[f'[d{i}{s}, Delta{s}] = 0'] = (supercommutator(_letter(i, s), delta[s]), zero)
            for e in '+-':
                out[f'[d{i}{s}, hatDelta{e}] = 0'] = (supercommutator(_letter(i, s), hat[e]), zero)
        curl = _d(word(f'dh{j}'), _unit(k - 1)) - _d(word(f'dh{k}'), _unit(j - 1))
        out[f'[d{i}+, Delta-] = dh{j} d{k} - dh{k} d{j}'] = (supercommutator(_letter(i, '+'), delta['-']), curl)
        out[f'[d{i}-, Delta+] = dh{k} d{j} - dh{j} d{k}'] = (supercommutator(_letter(i, '-'), delta['+']), -curl)
        out[f'[a, d{i}-] = hatDelta+ d{i}+'] = (supercommutator(cube(0), _letter(i, '-')),
                                               _prod(hat['+'], _letter(i, '+')))
        out[f'[d, d{i}+] = -hatDelta- d{i}-'] = (supercommutator(cube(3), _letter(i, '+')),
                                                -_prod(hat['-'], _letter(i, '-')))
        for i2 in range(i, 4):
            out[f'[delta{i}, delta{i2}] = 0'] = (supercommutator(delta_small(i), delta_small(i2)), zero)
    for s in '+-':
        for e in '+-':
            out[f'[Delta{s}, Delta{e}] = 0'] = (supercommutator(delta[s], delta[e]), zero)
            out[f'[Delta{s}, hatDelta{e}] = 0'] = (supercommutator(delta[s], hat[e]), zero)
            out[f'[hatDelta{s}, hatDelta{e}] = 0'] = (supercommutator(hat[s], hat[e]), zero)
    return out


def _cube_identities() -> Dict[str, Tuple[ModuleVector, ModuleVector]]:
    zero = ModuleVector({}, 'D')
    a, b, c, d = (cube(k) for k in range(4))
    dp, dm = delta_sum('+'), delta_sum('-')
    hp, hm = delta_hat('+'), delta_hat('-')
    m = _prod
    out = {
        '[a, Delta-] = hatDelta+ Delta+': (supercommutator(a, dm), m(hp, dp)),
        '[b, Delta-] = hatDelta+ Delta- + hatDelta- Delta+': (supercommutator(b, dm), m(hp, dm) + m(hm, dp)),
        '[c, Delta-] = hatDelta- Delta-': (supercommutator(c, dm), m(hm, dm)),
        'd Delta- = 0': (m(d, dm), zero),
        'Delta- d = 0': (m(dm, d), zero),
        'a Delta+ = 0': (m(a, dp), zero),
        'Delta+ a = 0': (m(dp, a), zero),
        '[b, Delta+] = Delta+ hatDelta+': (supercommutator(b, dp), m(dp, hp)),
        '[c, Delta+] = Delta+ hatDelta- + Delta- hatDelta+': (supercommutator(c, dp), m(dp, hm) + m(dm, hp)),
        '[d, Delta+] = Delta- hatDelta-': (supercommutator(d, dp), m(dm, hm)),
        'ac = a hatDelta-': (m(a, c), m(a, hm)),
        'ca = a hatDelta-': (m(c, a), m(a, hm)),
        '-hatDelta- a = a hatDelta-': (-m(hm, a), m(a, hm)),
        'ab = 0': (m(a, b), zero),
        'ba = 0': (m(b, a), zero),
        'db = -d hatDelta+': (m(d, b), -m(d, hp)),
        'bd = -d hatDelta+': (m(b, d), -m(d, hp)),
        'hatDelta+ d = -d hatDelta+': (m(hp, d), -m(d, hp)),
        'dc = 0': (m(d, c), zero),
        'cd = 0': (m(c, d), zero),
        'ad + da = b hatDelta-': (m(a, d) + m(d, a), m(b, hm)),
        'hatDelta+ c = b hatDelta-': (m(hp, c), m(b, hm)),
        '2ad + bc = da': (m(a, d).scale(2) + m(b, c), m(d, a)),
    }
    cubes = (a, b, c, d)
    for name, (left, right) in (('Delta', (dp, dm)), ('hatDelta', (hp, hm))):
        for k in range(5):
            # the chain 0 = X+ a = X- a + X+ b = ... = X- d, from both sides
            lhs_l, lhs_r = zero, zero
            if k < 4:
                lhs_l, lhs_r = lhs_l + m(left, cubes[k]), lhs_r + m(cubes[k], left)
            if k > 0:
                lhs_l, lhs_r = lhs_l + m(right, cubes[k - 1]), lhs_r + m(cubes[k - 1], right)
            out[f'{name} chain {k} (left) = 0'] = (lhs_l, zero)
            out[f'{name} chain {k} (right) = 0'] = (lhs_r, zero)
    return out


def _class_identities() -> Dict[str, Tuple[ModuleVector, ModuleVector]]:
    a, b, c, d = (cube(k) for k in range(4))
    hp, hm = delta_hat('+'), delta_hat('-')
    lam = d_00_class()
    q_plus, q_minus = d_m1m1_pair('+'), d_m1m1_pair('-')
    ladder = _prod(hm, q_plus) - _prod(hp, q_minus)
    kappas = ModuleVector({}, 'D')
    for i in (1, 2, 3):
        kappas = kappas + _prod(_dh(i), d_m1m1_triple(i))
    r_plus, r_minus = d_0m1_pair('+'), d_0m1_pair('-')
    rho_curl = _prod(_dh(3), d_0m1_triple(2)) - _prod(_dh(2), d_0m1_triple(3))
    nabla_s = apply(build_operator('nabla', Node('A', 1, 2)), a_12_class())
    zetas = ModuleVector({}, 'A')
    for i in (1, 2, 3):
        zetas = zetas + lmul(word(f'dh{i}'), a_01_triple(i))
    out = {
        'lambda = 2ad - b hatDelta-': (lam, _prod(a, d).scale(2) - _prod(b, hm)),
        'lambda = -2da + b hatDelta-': (lam, _prod(b, hm) - _prod(d, a).scale(2)),
        'nabla lambda = hatDelta- q+ - hatDelta+ q-': (apply(build_operator('nabla', Node('D', 0, 0)), lam), ladder),
        'hatDelta- q+ - hatDelta+ q- = sum dh_i kappa_i': (ladder, kappas),
        'r+ = -nabla6(z+)': (r_plus, -_nabla6_vector()),
        'd1- r+ - d1+ r- = 4 (dh3 rho2 - dh2 rho3)': (
            _prod(_letter(1, '-'), r_plus) - _prod(_letter(1, '+'), r_minus), rho_curl.scale(4)),
        'nabla s = sum dh_i zeta_i': (nabla_s, zetas),
    }
    for i in (1, 2, 3):
        tau = apply(build_operator('nabla', Node('A', 1, 1)), a_11_triple(i))
        out[f'nabla tau{i} = -dh{i}'] = (tau, _a(word(f'dh{i}')).scale(-1))
    for sign in '+-':
        out[f'nabla t{sign} = 0'] = (apply(build_operator('nabla', Node('A', 1, 1)), a_11_pair(sign)),
                                     ModuleVector({}, 'A'))
    return out


@lru_cache(maxsize=None)
def identity_table() -> Tuple[Tuple[str, ModuleVector, ModuleVector], ...]:
    """Named identities (lhs, rhs) among the elements of U(L_-) (x) V_D and M_A above."""
    table = {**_commutation_identities(), **_cube_identities(), **_class_identities()}
    return tuple((name, lhs, rhs) for name, (lhs, rhs) in table.items())


def identity_residuals() -> Dict[str, ModuleVector]:
    return {name: lhs - rhs for name, lhs, rhs in identity_table()}


def curl_congruence() -> Optional[Fraction]:
    """k with d1- t+ - d1+ t- = k (dh3 tau2 - dh2 tau3) modulo the image of nabla in M_A^{1,1}."""
    lhs = lmul(word('d1-'), a_11_pair('+')) - lmul(word('d1+'), a_11_pair('-'))
    return congruence_factor(lhs, a_11_curl(1), incoming_nabla(Node('A', 1, 1)))


# ---------------------------------------------------------------- right factors of nabla on M_D

def right_factors() -> Dict[str, Tuple[ModuleVector, Fraction]]:
    """Factors acting on M_D by right multiplication, with their Y-commutator eigenvalue."""
    out = {'d+': (_dvar((PLUS, 1)), Fraction(1)), 'd-': (_dvar((MINUS, 1)), Fraction(1))}
    for i in (1, 2, 3):
        out[f'd{i}'] = (_dvar((i - 1, 1)), Fraction(-2, 3))
        for s in '+-':
            out[f'd{i}{s}'] = (_letter(i, s), Fraction(-1, 3))
    for s in '+-':
        out[f'Delta{s}'] = (delta_sum(s), Fraction(-1))
    for i in (1, 2, 3):
        out[f'delta{i}'] = (delta_small(i), Fraction(2, 3))
    return out


def y_commutator_defect(v: ModuleVector, factor: ModuleVector, eigenvalue: Fraction) -> ModuleVector:
    """Y(v P) - (Y v) P - c v P for right multiplication by P."""
    moved = algebra_mul(v, factor)
    return act_g0('Y', moved) - algebra_mul(act_g0('Y', v), factor) - moved.scale(eigenvalue)


def anticommutator_pairs() -> Dict[str, Tuple[ModuleVector, ModuleVector]]:
    """Pairs of right factors whose successive products anticommute on M_D."""
    delta = {s: delta_sum(s) for s in '+-'}
    out = {f'Delta{s} Delta{e}': (delta[s], delta[e]) for s, e in (('+', '+'), ('-', '-'), ('+', '-'))}
    for i in (1, 2, 3):
        for j in range(i, 4):
            out[f'delta{i} delta{j}'] = (delta_small(i), delta_small(j))
    return out


def anticommutator_defect(v: ModuleVector, first: ModuleVector, second: ModuleVector) -> ModuleVector:
    return algebra_mul(algebra_mul(v, first), second) + algebra_mul(algebra_mul(v, second), first)


@dataclass(frozen=True)
class SecondaryFamily:
    tag: str
    node: Node
    builder: Callable[[], ModuleVector]
    description: str


SECONDARY: Dict[str, SecondaryFamily] = {f.tag: f for f in (
    SecondaryFamily('secondary_D_-1_-2', Node('D', -1, -2), d_m1m2_class,
                    "a D^- d+^2 + b D^- d+d- + c D^- d-^2 in M(0,1;2;y_D)"),
    SecondaryFamily('secondary_D_-1_-1', Node('D', -1, -1), lambda: d_m1m1_pair('+'),
                    "(-2 a D^- d+ - b D^- d-)/3 in M(0,1;1;y_D)"),
    SecondaryFamily('secondary_A_1_1', Node('A', 1, 1), lambda: a_11_pair('+'),
                    "the Q-generating cycle of M(1,0;1;y_A)"),
)}


# ---------------------------------------------------------------- verification

@dataclass
class VerificationReport:
    name: str
    checks: Dict[str, bool] = field(default_factory=dict)
    residuals: Dict[str, ModuleVector] = field(default_factory=dict)
    preimages: Dict[str, ModuleVector] = field(default_factory=dict)
    ldegrees: Tuple[int, ...] = ()

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(self.checks.values())

    def failed(self) -> List[str]:
        return [name for name, ok in self.checks.items() if not ok]


def _generator_action(g: str, v: ModuleVector) -> ModuleVector:
    return act_gplus(g, v) if g in ('e0', 'e0p') else act_g0(g, v)


def verify_singular(v: ModuleVector, name: str = '') -> VerificationReport:
    report = VerificationReport(name or repr(v), ldegrees=tuple(sorted(v.ldegrees())))
    for g in CHECKS:
        residual = _generator_action(g, v)
        report.checks[g] = residual.is_zero()
        if not residual.is_zero():
            report.residuals[g] = residual
    return report


def _node_of(v: ModuleVector) -> Node:
    (m, n), = v.components()
    return Node(v.space, m, n)


def _image_system(op: InducedOperator, vectors: Sequence[ModuleVector]) -> Tuple[List, List[Dict], Dict]:
    """Images of the source monomials that can reach ``vectors``, by degree and weight, as columns."""
    degrees = {d - 1 for v in vectors for d in v.ldegrees() if d >= 1}
    weights = {term_weight(v.space, lm, vm) for v in vectors for lm, vm in v.terms}
    index: Dict = {}
    candidates, columns = [], []
    for degree in sorted(degrees):
        for key in ((lm, vm) for lm in lmonomials(degree) for vm in component_basis(*op.source)):
            image = apply(op, ModuleVector.basis_vector(key, op.source.space))
            if image.is_zero():
                continue
            lm, vm = next(iter(image.terms))
            if term_weight(op.target.space, lm, vm) not in weights:
                continue
            candidates.append(key)
            columns.append({index.setdefault(k, len(index)): c for k, c in image.terms.items()})
    return candidates, columns, index


def _column(v: ModuleVector, index: Dict) -> Dict[int, Fraction]:
    return {index.setdefault(k, len(index)): c for k, c in v.terms.items()}


def boundary_preimage(op: InducedOperator, target: ModuleVector) -> Optional[ModuleVector]:
    """A vector x with op(x) = target, searched in the matching degrees and weights, or None."""
    if target.is_zero():
        return ModuleVector({}, op.source.space)
    candidates, columns, index = _image_system(op, [target])
    rhs = _column(target, index)
    solution = solve(SparseMatrix.from_columns(columns, len(index)), rhs)
    if solution is None:
        return None
    return ModuleVector({candidates[i]: c for i, c in solution.items()}, op.source.space)


def congruence_factor(lhs: ModuleVector, rhs: ModuleVector, op: InducedOperator) -> Optional[Fraction]:
    """The scalar k with lhs - k rhs in the image of ``op``; None if no k works or k is not unique."""
    _, columns, index = _image_system(op, [lhs, rhs])
    target, extra = _column(lhs, index), _column(rhs, index)
    size = len(index)
    if solve(SparseMatrix.from_columns(columns, size), extra) is not None:
        return None
    solution = solve(SparseMatrix.from_columns(columns + [extra], size), target)
    if solution is None:
        return None
    return solution.get(len(columns), Fraction(0))


def verify_secondary(v: ModuleVector, incoming: InducedOperator, name: str = '') -> VerificationReport:
    report = VerificationReport(name or repr(v), ldegrees=tuple(sorted(v.ldegrees())))
    for g in ('e1', 'e2', 'e3'):
        residual = act_g0(g, v)
        report.checks[g] = residual.is_zero()
        if not residual.is_zero():
            report.residuals[g] = residual
    node = _node_of(v)
    try:
        out = apply(build_operator('nabla', node), v)
    except NotDefinedHere:
        out = ModuleVector({}, node.space)
    report.checks['cycle'] = out.is_zero()
    if not out.is_zero():
        report.residuals['cycle'] = out
    for g in ('e0p', 'e0'):
        image = act_gplus(g, v)
        preimage = boundary_preimage(incoming, image)
        report.checks[f'{g}_boundary'] = preimage is not None
        if preimage is None:
            report.residuals[f'{g}_boundary'] = image
        else:
            report.preimages[g] = preimage
    logging.debug(f"secondary check {report.name}: {report.checks}")
    return report


def incoming_nabla(node: Node) -> InducedOperator:
    return build_operator('nabla', Node(node.space, node.m + 1, node.n + 1))


def push_forward(v: ModuleVector) -> Optional[ModuleVector]:
    """Image of ``v`` under the arrow leaving its position; None where no arrow leaves."""
    node = _node_of(v)
    a = outgoing(node)
    if a is None or not component_basis(*a.target):
        return None
    return apply(build_operator(a.op_id, node), v)


def pushed_singular_vectors(bound: int) -> List[Tuple[str, ModuleVector]]:
    """Non-zero images of the trivial and catalog singular vectors with |m|, |n| <= ``bound``."""
    sources = [(f"trivial{tuple(node)}", _trivial(*node)[1]) for node in valid_nodes(bound)]
    sources += [(f"{tag}{params}", v) for tag, params, v in catalog_vectors(bound) if not v.is_zero()]
    out = []
    for name, v in sources:
        image = push_forward(v)
        if image is not None and not image.is_zero():
            out.append((name, image))
    return out


# ---------------------------------------------------------------- scans

def exhaustive_scan(node: Node, max_ldegree: int, min_ldegree: int = 1) -> List[ModuleVector]:
    """All singular vectors of M_X^{m,n} of U-degree in [min_ldegree, max_ldegree], per weight space."""
    funcs = [lambda v, g=g: _generator_action(g, v) for g in CHECKS]
    found = []
    for degree in range(min_ldegree, max_ldegree + 1):
        keys = [(lm, vm) for lm in lmonomials(degree) for vm in component_basis(*node)]
        for weight, block in sorted(weight_spaces(node.space, keys).items()):
            if any(Fraction(x).denominator != 1 or x < 0 for x in weight[:3]):
                continue
            vectors = joint_kernel(funcs, block, node.space)
            if vectors:
                logging.debug(f"scan {node} degree {degree} weight {tuple(weight)}: {len(vectors)}")
            found.extend(vectors)
    return found


def catalog_vectors(bound: int) -> List[Tuple[str, Tuple[int, ...], ModuleVector]]:
    out = []
    for tag in FAMILIES:
        for params in family_parameters(tag, bound):
            out.append((tag, params, materialize(tag, *params)))
    return out
