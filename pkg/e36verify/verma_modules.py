"""
Induced modules M_X = U(L_-) (x) V_X for the four coefficient spaces A, B, C, D.

PBW monomials of U(L_-) are ``LMonomial(even, odd)``: ``even`` holds the powers of the three
central even letters dh1, dh2, dh3 and ``odd`` an increasing tuple of odd letter indices in
the order d1+ < d2+ < d3+ < d1- < d2- < d3-. Elements of V_X are monomials in five slots;
slots 0-2 carry x_i (x-kind) or d/dx_i (d-kind), slots 3-4 carry z+/z- or d/dz+/d/dz-.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from typing import Callable, Dict, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Tuple

from e36verify.e510_algebra import (G0, L_MINUS, ODD_LETTERS, POSITIVE, RAISING, generator_catalog,
                                    generator_weight, structure_constants)
from e36verify.exact_linalg import SparseMatrix, kernel_basis

VMonomial = Tuple[int, int, int, int, int]


class LMonomial(NamedTuple):
    even: Tuple[int, int, int]
    odd: Tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.odd) + 2 * sum(self.even)

    @property
    def length(self) -> int:
        return len(self.odd) + sum(self.even)


UNIT = LMonomial((0, 0, 0), ())


class Weight(NamedTuple):
    h1: Fraction
    h2: Fraction
    h3: Fraction
    y: Fraction


class SpaceInfo(NamedTuple):
    kinds: Tuple[str, str]
    twist: int


SPACES: Dict[str, SpaceInfo] = {
    'A': SpaceInfo(('x', 'x'), 0),
    'B': SpaceInfo(('x', 'd'), 2),
    'C': SpaceInfo(('d', 'x'), -2),
    'D': SpaceInfo(('d', 'd'), 0),
}


def base_space(space_id: str) -> str:
    return space_id.rstrip("'")


def slot_kind(space: str, slot: int) -> str:
    return SPACES[base_space(space)].kinds[0 if slot < 3 else 1]


def bidegree(space: str, vm: VMonomial) -> Tuple[int, int]:
    info = SPACES[base_space(space)]
    m = sum(vm[:3]) * (1 if info.kinds[0] == 'x' else -1)
    n = sum(vm[3:]) * (1 if info.kinds[1] == 'x' else -1)
    return m, n


def _monomials(nvars: int, degree: int) -> List[Tuple[int, ...]]:
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        exps = [0] * nvars
        for i in combo:
            exps[i] += 1
        out.append(tuple(exps))
    return sorted(out, reverse=True)


def component_basis(space_id: str, m: int, n: int) -> List[VMonomial]:
    """Monomials of V_X with bidegree (m, n); primes restrict to n = 0 (') or m = 0 ('')."""
    info = SPACES[base_space(space_id)]
    primes = len(space_id) - len(base_space(space_id))
    if (primes == 1 and n != 0) or (primes == 2 and m != 0):
        return []
    if (info.kinds[0] == 'x' and m < 0) or (info.kinds[0] == 'd' and m > 0):
        return []
    if (info.kinds[1] == 'x' and n < 0) or (info.kinds[1] == 'd' and n > 0):
        return []
    return [a + b for a in _monomials(3, abs(m)) for b in _monomials(2, abs(n))]


# ---------------------------------------------------------------- U(L_-) normal form

EVEN_INDEX = {'dh1': 0, 'dh2': 1, 'dh3': 2}
ODD_INDEX = {name: i for i, name in enumerate(ODD_LETTERS)}


def _accumulate(out: Dict, key, value) -> None:
    if value == 0:
        return
    new = out.get(key, Fraction(0)) + value
    if new == 0:
        out.pop(key, None)
    else:
        out[key] = new


@lru_cache(maxsize=None)
def odd_bracket(a: int, b: int) -> Tuple[Tuple[int, Fraction], ...]:
    """[d_a, d_b] as a combination of dh letters (even index -> coefficient)."""
    expansion = structure_constants(ODD_LETTERS[a], ODD_LETTERS[b])
    return tuple((EVEN_INDEX[name], c) for name, c in expansion.items())


def _add_even(even: Tuple[int, int, int], i: int, k: int = 1) -> Tuple[int, int, int]:
    return tuple(e + k if j == i else e for j, e in enumerate(even))


@lru_cache(maxsize=None)
def normal_odd_word(word: Tuple[int, ...]) -> Tuple[Tuple[LMonomial, Fraction], ...]:
    """PBW normal form of a product of odd letters."""
    for pos in range(len(word) - 1):
        a, b = word[pos], word[pos + 1]
        if a == b:
            return ()
        if a > b:
            out: Dict[LMonomial, Fraction] = {}
            for key, c in normal_odd_word(word[:pos] + (b, a) + word[pos + 2:]):
                _accumulate(out, key, -c)
            shorter = word[:pos] + word[pos + 2:]
            for i, c in odd_bracket(a, b):
                for key, c2 in normal_odd_word(shorter):
                    _accumulate(out, LMonomial(_add_even(key.even, i), key.odd), c * c2)
            return tuple(out.items())
    return ((LMonomial((0, 0, 0), word), Fraction(1)),)


@lru_cache(maxsize=None)
def graded_odd_word(word: Tuple[int, ...]) -> Tuple[Tuple[LMonomial, Fraction], ...]:
    """Normal form in Gr U(L_-): odd letters anticommute exactly."""
    if len(set(word)) != len(word):
        return ()
    sign = 1
    for a in range(len(word)):
        for b in range(a + 1, len(word)):
            if word[a] > word[b]:
                sign = -sign
    return ((LMonomial((0, 0, 0), tuple(sorted(word))), Fraction(sign)),)


def multiply_monomials(x: LMonomial, y: LMonomial, graded: bool = False) -> Dict[LMonomial, Fraction]:
    even = tuple(a + b for a, b in zip(x.even, y.even))
    reducer = graded_odd_word if graded else normal_odd_word
    out: Dict[LMonomial, Fraction] = {}
    for key, c in reducer(x.odd + y.odd):
        _accumulate(out, LMonomial(tuple(a + b for a, b in zip(even, key.even)), key.odd), c)
    return out


UElement = Dict[LMonomial, Fraction]


def u_mul(x: Mapping[LMonomial, Fraction], y: Mapping[LMonomial, Fraction], graded: bool = False) -> UElement:
    out: UElement = {}
    for kx, cx in x.items():
        for ky, cy in y.items():
            for key, c in multiply_monomials(kx, ky, graded).items():
                _accumulate(out, key, cx * cy * c)
    return out


def u_add(*elements: Mapping[LMonomial, Fraction], coeffs: Optional[Sequence] = None) -> UElement:
    out: UElement = {}
    for idx, element in enumerate(elements):
        scale = Fraction(coeffs[idx]) if coeffs is not None else Fraction(1)
        for key, c in element.items():
            _accumulate(out, key, scale * c)
    return out


def letter(name: str) -> UElement:
    if name in EVEN_INDEX:
        return {LMonomial(_add_even((0, 0, 0), EVEN_INDEX[name]), ()): Fraction(1)}
    return {LMonomial((0, 0, 0), (ODD_INDEX[name],)): Fraction(1)}


def word(*names: str, graded: bool = False) -> UElement:
    out: UElement = {UNIT: Fraction(1)}
    for name in names:
        out = u_mul(out, letter(name), graded)
    return out


def pbw_normal_form(letters: Sequence[str], coeff=1, graded: bool = False) -> UElement:
    return {k: v * Fraction(coeff) for k, v in word(*letters, graded=graded).items()}


def lmonomials(degree: int) -> List[LMonomial]:
    """PBW monomials of consistent degree ``degree``."""
    out = []
    for n_even in range(degree // 2 + 1):
        n_odd = degree - 2 * n_even
        if n_odd > 6:
            continue
        for evens in _monomials(3, n_even):
            for odd in combinations(range(6), n_odd):
                out.append(LMonomial(evens, odd))
    return out


# ---------------------------------------------------------------- module vectors

Key = Tuple[LMonomial, VMonomial]


@dataclass(frozen=True)
class ModuleVector:
    terms: Mapping[Key, Fraction] = field(default_factory=dict)
    space: str = 'A'

    def __post_init__(self):
        object.__setattr__(self, 'terms', {k: Fraction(v) for k, v in self.terms.items() if v != 0})
        object.__setattr__(self, 'space', base_space(self.space))

    @classmethod
    def from_u(cls, u: Mapping[LMonomial, Fraction], vm: VMonomial, space: str, coeff=1) -> 'ModuleVector':
        return cls({(k, tuple(vm)): c * Fraction(coeff) for k, c in u.items()}, space)

    @classmethod
    def basis_vector(cls, key: Key, space: str) -> 'ModuleVector':
        return cls({key: Fraction(1)}, space)

    def _combine(self, other: 'ModuleVector', sign: int) -> 'ModuleVector':
        if other.terms and self.terms and other.space != self.space:
            raise ValueError(f"cannot add vectors of M_{self.space} and M_{other.space}")
        out = dict(self.terms)
        for k, v in other.terms.items():
            _accumulate(out, k, sign * v)
        return ModuleVector(out, self.space if self.terms else other.space)

    def __add__(self, other: 'ModuleVector') -> 'ModuleVector':
        return self._combine(other, 1)

    def __sub__(self, other: 'ModuleVector') -> 'ModuleVector':
        return self._combine(other, -1)

    def __neg__(self) -> 'ModuleVector':
        return self.scale(-1)

    def scale(self, c) -> 'ModuleVector':
        return ModuleVector({k: v * Fraction(c) for k, v in self.terms.items()}, self.space)

    __rmul__ = scale

    def is_zero(self) -> bool:
        return not self.terms

    def components(self) -> set:
        return {bidegree(self.space, vm) for _, vm in self.terms}

    def ldegrees(self) -> set:
        return {lm.degree for lm, _ in self.terms}

    def parity(self) -> Optional[int]:
        parities = {len(lm.odd) % 2 for lm, _ in self.terms}
        return parities.pop() if len(parities) == 1 else None

    def __repr__(self):
        if not self.terms:
            return f"0 in M_{self.space}"
        parts = [f"{c}*{_lm_str(lm)}(x){vm}" for (lm, vm), c in sorted(self.terms.items())]
        return ' + '.join(parts) + f" in M_{self.space}"


def _lm_str(lm: LMonomial) -> str:
    names = [f"dh{i + 1}^{e}" if e > 1 else f"dh{i + 1}" for i, e in enumerate(lm.even) if e]
    names += [ODD_LETTERS[i] for i in lm.odd]
    return '.'.join(names) or '1'


def lmul(u: Mapping[LMonomial, Fraction], v: ModuleVector, graded: bool = False) -> ModuleVector:
    """Left multiplication u . v."""
    out: Dict[Key, Fraction] = {}
    for lm, c in u.items():
        for (lm2, vm), c2 in v.terms.items():
            for key, c3 in multiply_monomials(lm, lm2, graded).items():
                _accumulate(out, (key, vm), c * c2 * c3)
    return ModuleVector(out, v.space)


def algebra_mul(x: ModuleVector, y: ModuleVector) -> ModuleVector:
    """Product in U(L_-) (x) V with V a commutative polynomial algebra (used for V_D identities)."""
    out: Dict[Key, Fraction] = {}
    for (lx, vx), cx in x.terms.items():
        for (ly, vy), cy in y.terms.items():
            vm = tuple(a + b for a, b in zip(vx, vy))
            for key, c in multiply_monomials(lx, ly).items():
                _accumulate(out, (key, vm), cx * cy * c)
    return ModuleVector(out, x.space if x.terms else y.space)


# ---------------------------------------------------------------- g0 action

@lru_cache(maxsize=None)
def _linear_terms(g: str) -> Tuple[Tuple[int, int, Fraction], ...]:
    """g = sum c x_i d/dx_j as (i, j, c)."""
    out = []
    for key, c in generator_catalog()[g].terms.items():
        kind, j, mono = key
        if kind != 'v' or sum(mono) != 1:
            raise ValueError(f"{g} is not a linear vector field")
        out.append((mono.index(1), j, c))
    return tuple(out)


@lru_cache(maxsize=None)
def y_component(g: str) -> Fraction:
    """Coefficient of the central Y direction of g, the scalar by which a twist enters."""
    return sum((c for i, j, c in _linear_terms(g) if i == j and i < 3), Fraction(0)) / 2


@lru_cache(maxsize=None)
def g0_on_v(g: str, space: str, vm: VMonomial) -> Tuple[Tuple[VMonomial, Fraction], ...]:
    out: Dict[VMonomial, Fraction] = {}
    for i, j, c in _linear_terms(g):
        if slot_kind(space, i) == 'x':
            if vm[j]:
                new = list(vm)
                new[j] -= 1
                new[i] += 1
                _accumulate(out, tuple(new), c * vm[j])
        else:
            if vm[i]:
                new = list(vm)
                new[i] -= 1
                new[j] += 1
                _accumulate(out, tuple(new), -c * vm[i])
    twist = SPACES[space].twist
    if twist:
        _accumulate(out, vm, twist * y_component(g))
    return tuple(out.items())


@lru_cache(maxsize=None)
def g0_on_letter(g: str, name: str) -> Tuple[Tuple[str, Fraction], ...]:
    return tuple(structure_constants(g, name).items())


@lru_cache(maxsize=None)
def g0_on_lmonomial(g: str, lm: LMonomial) -> Tuple[Tuple[LMonomial, Fraction], ...]:
    """Adjoint action of g in g0 on a PBW monomial (a derivation)."""
    out: Dict[LMonomial, Fraction] = {}
    for i, a in enumerate(lm.even):
        if not a:
            continue
        for name, c in g0_on_letter(g, L_MINUS[i]):
            even = _add_even(_add_even(lm.even, i, -1), EVEN_INDEX[name])
            _accumulate(out, LMonomial(even, lm.odd), a * c)
    for pos, o in enumerate(lm.odd):
        for name, c in g0_on_letter(g, ODD_LETTERS[o]):
            replaced = lm.odd[:pos] + (ODD_INDEX[name],) + lm.odd[pos + 1:]
            for key, c2 in normal_odd_word(replaced):
                even = tuple(x + y for x, y in zip(lm.even, key.even))
                _accumulate(out, LMonomial(even, key.odd), c * c2)
    return tuple(out.items())


@lru_cache(maxsize=None)
def _g0_on_term(g: str, space: str, lm: LMonomial, vm: VMonomial) -> Tuple[Tuple[Key, Fraction], ...]:
    out: Dict[Key, Fraction] = {}
    for key, c in g0_on_lmonomial(g, lm):
        _accumulate(out, (key, vm), c)
    for new_vm, c in g0_on_v(g, space, vm):
        _accumulate(out, (lm, new_vm), c)
    return tuple(out.items())


def act_g0(g: str, v: ModuleVector) -> ModuleVector:
    if g not in G0:
        raise ValueError(f"{g} is not a g0 generator")
    out: Dict[Key, Fraction] = {}
    for (lm, vm), c in v.terms.items():
        for key, c2 in _g0_on_term(g, v.space, lm, vm):
            _accumulate(out, key, c * c2)
    return ModuleVector(out, v.space)


# ---------------------------------------------------------------- positive generators

def _first_letter(lm: LMonomial) -> Tuple[Optional[str], Optional[LMonomial]]:
    for i, a in enumerate(lm.even):
        if a:
            return L_MINUS[i], LMonomial(_add_even(lm.even, i, -1), lm.odd)
    if lm.odd:
        return ODD_LETTERS[lm.odd[0]], LMonomial(lm.even, lm.odd[1:])
    return None, None


@lru_cache(maxsize=None)
def _gplus_on_term(g: str, space: str, lm: LMonomial, vm: VMonomial) -> Tuple[Tuple[Key, Fraction], ...]:
    first, rest = _first_letter(lm)
    if first is None:
        return ()
    rest_vec = ModuleVector({(rest, vm): Fraction(1)}, space)
    out = ModuleVector({}, space)
    if first in EVEN_INDEX:
        # [g, dh_i] lies in g_-1
        for name, c in structure_constants(g, first).items():
            out = out + lmul(letter(name), rest_vec).scale(c)
        out = out + lmul(letter(first), _act_gplus(g, rest_vec))
    else:
        # [g, d] lies in g0
        for name, c in structure_constants(g, first).items():
            out = out + act_g0(name, rest_vec).scale(c)
        out = out - lmul(letter(first), _act_gplus(g, rest_vec))
    return tuple(out.terms.items())


def _act_gplus(g: str, v: ModuleVector) -> ModuleVector:
    out: Dict[Key, Fraction] = {}
    for (lm, vm), c in v.terms.items():
        for key, c2 in _gplus_on_term(g, v.space, lm, vm):
            _accumulate(out, key, c * c2)
    return ModuleVector(out, v.space)


def act_gplus(g: str, v: ModuleVector) -> ModuleVector:
    """Action of e0 or e0p; L_+ kills 1 (x) V_X."""
    if g not in POSITIVE:
        raise ValueError(f"{g} is not one of {POSITIVE}")
    return _act_gplus(g, v)


def act(g: str, v: ModuleVector) -> ModuleVector:
    if g in G0:
        return act_g0(g, v)
    if g in POSITIVE:
        return act_gplus(g, v)
    if g in L_MINUS:
        return lmul(letter(g), v)
    raise ValueError(f"unknown generator {g}")


# ---------------------------------------------------------------- weights and bases

@lru_cache(maxsize=None)
def letter_weight(index_or_name) -> Weight:
    name = index_or_name if isinstance(index_or_name, str) else ODD_LETTERS[index_or_name]
    return Weight(*generator_weight(name))


@lru_cache(maxsize=None)
def v_weight(space: str, vm: VMonomial) -> Weight:
    values = []
    for h in ('h1', 'h2', 'h3', 'Y'):
        values.append(dict(g0_on_v(h, space, vm)).get(vm, Fraction(0)))
    return Weight(*values)


def term_weight(space: str, lm: LMonomial, vm: VMonomial) -> Weight:
    total = list(v_weight(space, vm))
    for i, a in enumerate(lm.even):
        if a:
            w = letter_weight(L_MINUS[i])
            total = [x + a * y for x, y in zip(total, w)]
    for o in lm.odd:
        w = letter_weight(o)
        total = [x + y for x, y in zip(total, w)]
    return Weight(*total)


def y_of_component(space: str, m: int, n: int) -> Fraction:
    twist = SPACES[base_space(space)].twist
    return Fraction(2, 3) * m - n + twist


def module_basis(space: str, m: int, n: int, ldegree: int) -> List[Key]:
    return [(lm, vm) for lm in lmonomials(ldegree) for vm in component_basis(space, m, n)]


def weight_spaces(space: str, keys: Iterable[Key]) -> Dict[Weight, List[Key]]:
    out: Dict[Weight, List[Key]] = {}
    for lm, vm in keys:
        out.setdefault(term_weight(space, lm, vm), []).append((lm, vm))
    return out


def operator_matrix(func: Callable[[ModuleVector], ModuleVector], basis: Sequence[Key], space: str,
                    target_index: Optional[Dict] = None) -> Tuple[SparseMatrix, Dict]:
    """Matrix of ``func`` on ``basis``; target rows are indexed on the fly unless given."""
    index = {} if target_index is None else target_index
    columns = []
    for key in basis:
        image = func(ModuleVector.basis_vector(key, space))
        col = {}
        for k, c in image.terms.items():
            if k not in index:
                index[k] = len(index)
            col[index[k]] = c
        columns.append(col)
    return SparseMatrix.from_columns(columns, len(index)), index


def joint_kernel(funcs: Sequence[Callable[[ModuleVector], ModuleVector]], basis: Sequence[Key],
                 space: str) -> List[ModuleVector]:
    """Basis of the common kernel of several operators on span(basis)."""
    if not basis:
        return []
    columns: List[Dict[int, Fraction]] = [dict() for _ in basis]
    offset = 0
    for func in funcs:
        mat, index = operator_matrix(func, basis, space)
        for (r, c), v in mat.entries.items():
            columns[c][offset + r] = v
        offset += len(index)
    stacked = SparseMatrix.from_columns(columns, offset)
    return [ModuleVector({basis[i]: c for i, c in vec.items()}, space) for vec in kernel_basis(stacked)]


def highest_weight_vectors(space: str, m: int, n: int, ldegree: int, exact_degree: bool = False) -> List[ModuleVector]:
    """Joint kernel of e1, e2, e3 on each weight space of M_X^{m,n} up to U-degree ``ldegree``."""
    degrees = [ldegree] if exact_degree else range(ldegree + 1)
    out = []
    for d in degrees:
        for weight, keys in sorted(weight_spaces(space, module_basis(space, m, n, d)).items()):
            found = joint_kernel([lambda v, g=g: act_g0(g, v) for g in RAISING], keys, space)
            logging.debug(f"hw search {space}^{m},{n} degree {d} weight {tuple(weight)}: {len(found)}")
            out.extend(found)
    return out
