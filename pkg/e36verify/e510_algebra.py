"""
Polynomial realization of E(5,10) and the named generators of E(3,6).

Even elements are divergence-free vector fields a * d/dx_i, odd elements are closed
two-forms b * dx_j ^ dx_k, all with polynomial coefficients in x1, x2, x3, x4 = z+, x5 = z-.
Terms are keyed ``('v', i, mono)`` and ``('w', (j, k), mono)`` with ``j < k`` and indices
starting at 0.
"""

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Dict, Mapping, Optional, Tuple

from e36verify.exact_linalg import SparseMatrix, solve
from e36verify.exceptions import NotInCatalogSpan

Mono = Tuple[int, int, int, int, int]
Key = tuple

ONE: Mono = (0, 0, 0, 0, 0)
NVARS = 5

# index pairs of g_-1 inside the 2-forms
PLUS_SLOT, MINUS_SLOT = 3, 4


def unit(i: int) -> Mono:
    return tuple(1 if k == i else 0 for k in range(NVARS))


def mono_mul(a: Mono, b: Mono) -> Mono:
    return tuple(x + y for x, y in zip(a, b))


def mono_diff(mono: Mono, i: int) -> Tuple[int, Optional[Mono]]:
    if mono[i] == 0:
        return 0, None
    return mono[i], tuple(e - 1 if k == i else e for k, e in enumerate(mono))


def permutation_sign(seq) -> int:
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0
    sign = 1
    for a in range(len(seq)):
        for b in range(a + 1, len(seq)):
            if seq[a] > seq[b]:
                sign = -sign
    return sign


def epsilon(j: int, k: int, l: int, m: int) -> Tuple[int, int]:
    """Sign and missing index i of the permutation (j, k, l, m, i) of (0, ..., 4)."""
    rest = set(range(NVARS)) - {j, k, l, m}
    if len(rest) != 1:
        return 0, -1
    i = rest.pop()
    return permutation_sign((j, k, l, m, i)), i


def _add(out: Dict, key, value) -> None:
    if value == 0:
        return
    new = out.get(key, Fraction(0)) + value
    if new == 0:
        out.pop(key, None)
    else:
        out[key] = new


@dataclass(frozen=True)
class E510Element:
    terms: Mapping[Key, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        cleaned = {}
        for key, v in self.terms.items():
            v = Fraction(v)
            if v == 0:
                continue
            if key[0] == 'w':
                j, k = key[1]
                if not j < k:
                    raise ValueError(f"form index pair {key[1]} not increasing")
            cleaned[key] = v
        object.__setattr__(self, 'terms', cleaned)

    @classmethod
    def vector(cls, i: int, mono: Mono = ONE, coeff=1) -> 'E510Element':
        return cls({('v', i, tuple(mono)): Fraction(coeff)})

    @classmethod
    def form(cls, j: int, k: int, mono: Mono = ONE, coeff=1) -> 'E510Element':
        if j == k:
            return cls({})
        if j > k:
            j, k, coeff = k, j, -Fraction(coeff)
        return cls({('w', (j, k), tuple(mono)): Fraction(coeff)})

    def __add__(self, other: 'E510Element') -> 'E510Element':
        out = dict(self.terms)
        for key, v in other.terms.items():
            _add(out, key, v)
        return E510Element(out)

    def __neg__(self) -> 'E510Element':
        return E510Element({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: 'E510Element') -> 'E510Element':
        return self + (-other)

    def scale(self, c) -> 'E510Element':
        return E510Element({k: v * Fraction(c) for k, v in self.terms.items()})

    __rmul__ = scale

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def parity(self) -> Optional[int]:
        kinds = {key[0] for key in self.terms}
        if kinds == {'v'}:
            return 0
        if kinds == {'w'}:
            return 1
        return None if kinds else 0

    def __repr__(self):
        parts = []
        for key, v in sorted(self.terms.items(), key=lambda kv: repr(kv[0])):
            if key[0] == 'v':
                parts.append(f"{v}*{_mono_str(key[2])}*D{key[1] + 1}")
            else:
                parts.append(f"{v}*{_mono_str(key[2])}*d{key[1][0] + 1}{key[1][1] + 1}")
        return ' + '.join(parts) if parts else '0'


def _mono_str(mono: Mono) -> str:
    names = ('x1', 'x2', 'x3', 'x4', 'x5')
    s = '*'.join(f"{n}^{e}" if e > 1 else n for n, e in zip(names, mono) if e)
    return s or '1'


def principal_degree(key: Key) -> int:
    """Consistent grading: deg x_i = 2 = -deg d/dx_i, deg dx_i = -1/2."""
    if key[0] == 'v':
        return 2 * sum(key[2]) - 2
    return 2 * sum(key[2]) - 1


def secondary_degree(key: Key) -> int:
    """deg x_{1,2,3} = 0, deg x_{4,5} = 1 = -deg d/dx_{4,5}, deg dx_{4,5} = 1/2, deg dx_{1,2,3} = -1/2."""
    mono = key[2]
    z_degree = mono[3] + mono[4]
    if key[0] == 'v':
        return z_degree - (1 if key[1] >= 3 else 0)
    j, k = key[1]
    return z_degree + sum(1 for s in (j, k) if s >= 3) - 1


def secondary_component(e: E510Element, j: int) -> E510Element:
    return E510Element({k: v for k, v in e.terms.items() if secondary_degree(k) == j})


def principal_component(e: E510Element, j: int) -> E510Element:
    return E510Element({k: v for k, v in e.terms.items() if principal_degree(k) == j})


def divergence(e: E510Element) -> Dict[Mono, Fraction]:
    out: Dict[Mono, Fraction] = {}
    for key, v in e.terms.items():
        if key[0] != 'v':
            continue
        c, m = mono_diff(key[2], key[1])
        if m is not None:
            _add(out, m, v * c)
    return out


def exterior_derivative(e: E510Element) -> Dict[Tuple[Tuple[int, int, int], Mono], Fraction]:
    out: Dict = {}
    for key, v in e.terms.items():
        if key[0] != 'w':
            continue
        j, k = key[1]
        for l in range(NVARS):
            c, m = mono_diff(key[2], l)
            if m is None or l in (j, k):
                continue
            sign = permutation_sign((l, j, k))
            _add(out, (tuple(sorted((l, j, k))), m), v * c * sign)
    return out


def is_well_formed(e: E510Element) -> bool:
    return not divergence(e) and not exterior_derivative(e)


def _vector_vector(f_mono, i, g_mono, j, coeff, out):
    # [f d_i, g d_j] = f d_i(g) d_j - g d_j(f) d_i
    c, m = mono_diff(g_mono, i)
    if m is not None:
        _add(out, ('v', j, mono_mul(f_mono, m)), coeff * c)
    c, m = mono_diff(f_mono, j)
    if m is not None:
        _add(out, ('v', i, mono_mul(g_mono, m)), -coeff * c)


def _lie_derivative(a_mono, i, b_mono, pair, coeff, out):
    """L_X w for X = a d/dx_i and w = b dx_j ^ dx_k."""
    j, k = pair
    c, m = mono_diff(b_mono, i)
    if m is not None:
        _add(out, ('w', pair, mono_mul(a_mono, m)), coeff * c)
    for l in range(NVARS):
        c, m = mono_diff(a_mono, l)
        if m is None:
            continue
        product = mono_mul(b_mono, m)
        if i == j and l != k:
            sign = 1 if l < k else -1
            _add(out, ('w', tuple(sorted((l, k))), product), coeff * c * sign)
        if i == k and l != j:
            sign = 1 if j < l else -1
            _add(out, ('w', tuple(sorted((j, l))), product), coeff * c * sign)


def _form_form(a_mono, p1, b_mono, p2, coeff, out):
    sign, i = epsilon(p1[0], p1[1], p2[0], p2[1])
    if sign:
        _add(out, ('v', i, mono_mul(a_mono, b_mono)), coeff * sign)


def bracket(a: E510Element, b: E510Element) -> E510Element:
    """Superbracket: vector fields bracket as usual, [X, w] = L_X w, [w, w'] via the epsilon rule."""
    out: Dict = {}
    for ka, va in a.terms.items():
        for kb, vb in b.terms.items():
            coeff = va * vb
            if ka[0] == 'v' and kb[0] == 'v':
                _vector_vector(ka[2], ka[1], kb[2], kb[1], coeff, out)
            elif ka[0] == 'v':
                _lie_derivative(ka[2], ka[1], kb[2], kb[1], coeff, out)
            elif kb[0] == 'v':
                _lie_derivative(kb[2], kb[1], ka[2], ka[1], -coeff, out)
            else:
                _form_form(ka[2], ka[1], kb[2], kb[1], coeff, out)
    return E510Element(out)


def super_jacobi_defect(a: E510Element, b: E510Element, c: E510Element) -> E510Element:
    """[a,[b,c]] - [[a,b],c] - (-1)^{|a||b|} [b,[a,c]] for parity-homogeneous inputs."""
    sign = -1 if (a.parity or 0) * (b.parity or 0) else 1
    return bracket(a, bracket(b, c)) - bracket(bracket(a, b), c) - bracket(b, bracket(a, c)).scale(sign)


X1, X2, X3, X4, X5 = (unit(i) for i in range(NVARS))

L_MINUS = ('dh1', 'dh2', 'dh3', 'd1+', 'd2+', 'd3+', 'd1-', 'd2-', 'd3-')
ODD_LETTERS = ('d1+', 'd2+', 'd3+', 'd1-', 'd2-', 'd3-')
G0 = ('h1', 'h2', 'h3', 'Y', 'e1', 'e2', 'e3', 'e12', 'f1', 'f2', 'f3', 'f12')
RAISING = ('e1', 'e2', 'e3')
POSITIVE = ('e0', 'e0p')


def _euler(indices, coeff) -> E510Element:
    out = E510Element()
    for i in indices:
        out = out + E510Element.vector(i, unit(i), coeff)
    return out


@lru_cache(maxsize=None)
def generator_catalog() -> Dict[str, E510Element]:
    v, w = E510Element.vector, E510Element.form
    cat = {
        'dh1': v(0), 'dh2': v(1), 'dh3': v(2),
        'd1+': w(0, PLUS_SLOT), 'd2+': w(1, PLUS_SLOT), 'd3+': w(2, PLUS_SLOT),
        'd1-': w(0, MINUS_SLOT), 'd2-': w(1, MINUS_SLOT), 'd3-': w(2, MINUS_SLOT),
        'h1': v(0, X1) - v(1, X2),
        'h2': v(1, X2) - v(2, X3),
        'h3': v(3, X4) - v(4, X5),
        'Y': _euler((0, 1, 2), Fraction(2, 3)) - _euler((3, 4), 1),
        'e1': v(1, X1), 'e2': v(2, X2), 'e12': v(2, X1),
        'f1': v(0, X2), 'f2': v(1, X3), 'f12': v(0, X3),
        'e3': v(4, X4), 'f3': v(3, X5),
        'f0': w(0, PLUS_SLOT),
        'e0p': w(2, MINUS_SLOT, X3),
        'e0': w(1, MINUS_SLOT, X3) - w(2, MINUS_SLOT, X2) + w(1, 2, X5, 2),
    }
    cat['h0'] = bracket(cat['e0'], cat['f0'])
    return cat


_BASIS = tuple(name for name in generator_catalog() if name not in ('h0', 'f0'))


@lru_cache(maxsize=None)
def _basis_matrix():
    keys = sorted({k for name in _BASIS for k in generator_catalog()[name].terms}, key=repr)
    index = {k: i for i, k in enumerate(keys)}
    columns = [{index[k]: v for k, v in generator_catalog()[name].terms.items()} for name in _BASIS]
    return SparseMatrix.from_columns(columns, len(keys)), index


def expand_in_catalog(e: E510Element) -> Dict[str, Fraction]:
    """Coordinates of ``e`` in the catalog basis (h0 and f0 excluded as dependent)."""
    if e.is_zero():
        return {}
    matrix, index = _basis_matrix()
    if any(k not in index for k in e.terms):
        raise NotInCatalogSpan(f"{e!r} has terms outside the catalog")
    x = solve(matrix, {index[k]: v for k, v in e.terms.items()})
    if x is None:
        raise NotInCatalogSpan(f"{e!r} is not a combination of catalog generators")
    return {_BASIS[i]: c for i, c in x.items()}


@lru_cache(maxsize=None)
def structure_constants(g: str, w: str) -> Dict[str, Fraction]:
    cat = generator_catalog()
    result = expand_in_catalog(bracket(cat[g], cat[w]))
    logging.debug(f"[{g}, {w}] = {result}")
    return result


def generator_weight(g: str) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
    """(h1, h2, h3, Y) eigenvalues of ad on a catalog generator."""
    cat = generator_catalog()
    target = expand_in_catalog(cat[g])
    name, c = next(iter(target.items()))
    return tuple(expand_in_catalog(bracket(cat[h], cat[g])).get(name, Fraction(0)) / c
                 for h in ('h1', 'h2', 'h3', 'Y'))


def random_polynomial(rng: random.Random, max_degree: int, terms: int = 3) -> Dict[Mono, Fraction]:
    out: Dict[Mono, Fraction] = {}
    for _ in range(terms):
        degree = rng.randint(0, max_degree)
        mono = [0] * NVARS
        for _ in range(degree):
            mono[rng.randrange(NVARS)] += 1
        _add(out, tuple(mono), Fraction(rng.randint(-3, 3)))
    return out


def random_element(rng: random.Random, max_principal_degree: int = 4, parity: Optional[int] = None) -> E510Element:
    """Random well-formed homogeneous element built as a curl (even) or an exact form (odd)."""
    if parity is None:
        parity = rng.randint(0, 1)
    out = E510Element()
    if parity == 0:
        # f d/dx_i - ... from a potential: d_j(phi) d_i - d_i(phi) d_j is divergence-free
        potential = random_polynomial(rng, max(0, (max_principal_degree + 2) // 2 + 1))
        i, j = rng.sample(range(NVARS), 2)
        for mono, c in potential.items():
            cj, mj = mono_diff(mono, j)
            ci, mi = mono_diff(mono, i)
            if mj is not None and 2 * sum(mj) - 2 <= max_principal_degree:
                out = out + E510Element.vector(i, mj, c * cj)
            if mi is not None and 2 * sum(mi) - 2 <= max_principal_degree:
                out = out - E510Element.vector(j, mi, c * ci)
        return out
    potential = random_polynomial(rng, max(0, (max_principal_degree + 1) // 2 + 1))
    k = rng.randrange(NVARS)
    for mono, c in potential.items():
        for l in range(NVARS):
            cl, ml = mono_diff(mono, l)
            if ml is not None and l != k and 2 * sum(ml) - 1 <= max_principal_degree:
                out = out + E510Element.form(l, k, ml, c * cl)
    return out


def all_permutation_signs_agree() -> bool:
    """epsilon is totally antisymmetric in its four arguments."""
    for perm in permutations(range(NVARS), 4):
        base, missing = epsilon(*perm)
        for a in range(4):
            for b in range(a + 1, 4):
                swapped = list(perm)
                swapped[a], swapped[b] = swapped[b], swapped[a]
                s, m = epsilon(*swapped)
                if s != -base or m != missing:
                    return False
    return True
