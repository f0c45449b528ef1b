"""
Complexes built from the induced modules and their homology.

G-type complexes live on Lambda(g_-1) (x) V_X with the exterior product, GrM on Gr U(L_-) (x) V_X
and the M-type complexes on U(L_-) (x) V_X cut off at a U-degree. A layer ``j`` of a position
is the span of the monomials of consistent U-degree ``j``; on it Y acts by y_X(m,n) - j/3.
Every differential is g0-equivariant, so all ranks are taken one g0-weight space at a time.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Dict, List, Mapping, NamedTuple, Optional, Sequence, Tuple

from e36verify.exact_linalg import SparseMatrix, Vector, kernel_basis, rank_of_vectors, row_reduce, subquotient_homology
from e36verify.exceptions import CompositionNotZero, InconsistentDecomposition
from e36verify.nabla_operators import (OPERATOR_DEGREE, Arrow, InducedOperator, Node, apply, build_operator,
                                       outgoing, predecessor_candidates, valid_nodes)
from e36verify.singular_vectors import module_label
from e36verify.verma_modules import (LMonomial, ModuleVector, VMonomial, Weight, component_basis, lmonomials,
                                     term_weight, y_of_component)

FAMILIES = ('G', 'G0', 'GrM', 'M', 'BigM')
EXTERIOR_FAMILIES = ('G', 'G0')
GRADED_FAMILIES = ('G', 'G0', 'GrM')
SPACE_IDS = ('A', 'B', 'C', 'D', 'AB', 'CD')
DEFAULT_TRUNCATION = 8

Key = Tuple[LMonomial, VMonomial]
Label = Tuple[int, int, int, Fraction]

# exceptional positions of the combined complex: the irreducible quotient is M / Ker(out)
EXCEPTIONAL = (Node('A', 1, 1), Node('D', -1, -1), Node('D', -1, -2))

_SL3_ALTERNATION = (((0, 0), 1), ((2, -1), -1), ((-1, 2), -1), ((3, 0), 1), ((0, 3), 1), ((2, 2), -1))
_SL2_ALTERNATION = ((0, 1), (2, -1))


@dataclass(frozen=True)
class ComplexSpec:
    """A complex of the grid.

    ``family`` is one of G, G0 (the subquotient carriers X°), GrM, M or BigM. ``space`` picks a
    single coefficient space or one of the pairs AB, CD where the A'/C' row is sent on by the
    second-order operator. ``block`` restricts a G-type complex to one summand (a, b).
    """
    family: str
    space: str = 'A'
    block: Optional[Tuple[int, int]] = None
    truncation: int = DEFAULT_TRUNCATION

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown complex family {self.family!r}, expected one of {FAMILIES}")
        if self.space not in SPACE_IDS:
            raise ValueError(f"unknown space {self.space!r}")
        if self.family == 'G0' and len(self.space) != 1:
            raise ValueError("G0 complexes are defined for a single space")
        if self.block is not None and self.family not in EXTERIOR_FAMILIES:
            raise ValueError("blocks (a, b) only split the G-type complexes")

    @property
    def graded(self) -> bool:
        return self.family in GRADED_FAMILIES

    @property
    def exterior(self) -> bool:
        return self.family in EXTERIOR_FAMILIES

    @property
    def top_layer(self) -> int:
        return 6 if self.exterior else self.truncation

    @property
    def label(self) -> str:
        name = {'G': 'G_', 'G0': 'G0_', 'GrM': 'GrM_', 'M': 'M_', 'BigM': 'BigM'}[self.family]
        if self.family != 'BigM':
            name += self.space
        if self.block is not None:
            name += f"({self.block[0]},{self.block[1]})"
        return name

    def contains(self, node: Node) -> bool:
        spaces = 'ABCD' if self.family == 'BigM' else self.space
        return node.space in spaces and bool(component_basis(*node))


class HomologyResult(NamedTuple):
    position: Node
    dimension: int
    graded: Dict[int, int]
    weights: Dict[Tuple[int, Weight], int]
    content: Counter


@dataclass
class ComplexInstance:
    spec: ComplexSpec
    nodes: List[Node]
    arrows: List[Arrow] = field(default_factory=list)

    def homology(self, m: int, n: int, space: Optional[str] = None) -> HomologyResult:
        return homology(self, m, n, space)


class IrreduciblePieces(NamedTuple):
    position: Node
    label: Label
    dims: Dict[int, int]
    weights: Dict[int, Dict[Weight, int]]
    basis: Dict[int, List[Key]]

    @property
    def dimension(self) -> int:
        return sum(self.dims.values())


def block_of(space: str, key: Key) -> Tuple[int, int]:
    """Summand (a, b) of a G-type monomial: plus (minus) letters plus the z_+ (z_-) degree."""
    lm, vm = key
    n_plus = sum(1 for o in lm.odd if o < 3)
    n_minus = len(lm.odd) - n_plus
    sign = 1 if space in 'AC' else -1
    return n_plus + sign * vm[3], n_minus + sign * vm[4]


# ---------------------------------------------------------------- arrows of a complex

def arrow(spec: ComplexSpec, node: Node) -> Optional[Arrow]:
    if not spec.contains(node):
        return None
    if spec.family == 'BigM':
        return outgoing(node, combined=True)
    if len(spec.space) == 2 and node.space in 'AC' and node.n == 0:
        target = Node(chr(ord(node.space) + 1), node.m - 2, 0)
        return Arrow(node, target, 'nabla2') if spec.contains(target) else None
    target = Node(node.space, node.m - 1, node.n - 1)
    return Arrow(node, target, 'nabla') if spec.contains(target) else None


def incoming(spec: ComplexSpec, node: Node) -> Optional[Arrow]:
    for candidate in predecessor_candidates(node):
        found = arrow(spec, candidate)
        if found is not None and found.target == node:
            return found
    return None


@lru_cache(maxsize=None)
def _operator(a: Arrow) -> InducedOperator:
    return build_operator(a.op_id, a.source)


@lru_cache(maxsize=None)
def _image(a: Arrow, key: Key, graded: bool) -> Mapping[Key, Fraction]:
    return apply(_operator(a), ModuleVector.basis_vector(key, a.source.space), graded).terms


# ---------------------------------------------------------------- layers and carriers

@lru_cache(maxsize=None)
def layer(spec: ComplexSpec, node: Node, j: int) -> Dict[Weight, Tuple[Key, ...]]:
    """Monomials of ``node`` at U-degree ``j``, grouped by weight."""
    if j < 0 or not spec.contains(node) or (spec.exterior and j > 6):
        return {}
    if spec.exterior:
        lms = [LMonomial((0, 0, 0), odd) for odd in combinations(range(6), j)]
    else:
        lms = lmonomials(j)
    out: Dict[Weight, List[Key]] = {}
    for lm in lms:
        for vm in component_basis(*node):
            key = (lm, vm)
            if spec.block is not None and block_of(node.space, key) != spec.block:
                continue
            out.setdefault(term_weight(node.space, lm, vm), []).append(key)
    return {w: tuple(keys) for w, keys in out.items()}


def _keys(spec: ComplexSpec, node: Node, j: int, w: Weight) -> Tuple[Key, ...]:
    return layer(spec, node, j).get(w, ())


def _indexed(terms: Mapping[Key, Fraction], index: Mapping[Key, int], where: str) -> Vector:
    vec = {}
    for key, c in terms.items():
        if key not in index:
            raise ValueError(f"image term {key} leaves the weight space at {where}")
        vec[index[key]] = c
    return vec


def _push(spec: ComplexSpec, a: Arrow, keys: Sequence[Key], vectors: Sequence[Vector],
          index: Mapping[Key, int]) -> List[Vector]:
    """Images under ``a`` of combinations of ``keys``, expressed in ``index``."""
    images = [_indexed(_image(a, key, spec.graded), index, str(a.target)) for key in keys]
    out = []
    for vec in vectors:
        acc: Dict[int, Fraction] = {}
        for i, c in vec.items():
            for r, v in images[i].items():
                acc[r] = acc.get(r, Fraction(0)) + c * v
        out.append({r: v for r, v in acc.items() if v})
    return out


def _carriers(spec: ComplexSpec, node: Node, j: int, w: Weight) -> Tuple[List[Vector], List[Vector]]:
    """(U, W) at a position: homology is taken of the subquotient U / W.

    Off the n = 0 row, and for all families but G0, U is everything and W = 0. On the row,
    A° and C° keep the kernel of the second-order operator, B° and D° divide out its image.
    """
    keys = _keys(spec, node, j, w)
    unit = [{i: Fraction(1)} for i in range(len(keys))]
    if spec.family != 'G0' or node.n != 0 or not keys:
        return unit, []
    plain = ComplexSpec('G', node.space)
    if node.space in 'AC':
        target = Node(chr(ord(node.space) + 1), node.m - 2, 0)
        if not component_basis(*target):
            return unit, []
        tindex = {k: i for i, k in enumerate(_keys(plain, target, j + 2, w))}
        d2 = Arrow(node, target, 'nabla2')
        columns = _push(spec, d2, keys, unit, tindex)
        return kernel_basis(SparseMatrix.from_columns(columns, len(tindex))), []
    source = Node(chr(ord(node.space) - 1), node.m + 2, 0)
    if not component_basis(*source):
        return unit, []
    index = {k: i for i, k in enumerate(keys)}
    d2 = Arrow(source, node, 'nabla2')
    sub = []
    for key in _keys(plain, source, j - 2, w):
        terms = _image(d2, key, True)
        if terms and all(k in index for k in terms):
            sub.append(_indexed(terms, index, str(node)))
    return unit, sub


# ---------------------------------------------------------------- homology

@lru_cache(maxsize=None)
def position_homology(spec: ComplexSpec, node: Node, j: int) -> Dict[Weight, int]:
    """Homology at layer ``j`` of ``node``, weight space by weight space (zeros dropped)."""
    out_arrow, in_arrow = arrow(spec, node), incoming(spec, node)
    result = {}
    for w, keys in layer(spec, node, j).items():
        index = {k: i for i, k in enumerate(keys)}
        top, sub = _carriers(spec, node, j, w)
        d_top: List[Vector] = []
        sub_out: List[Vector] = []
        after = 0
        if out_arrow is not None:
            jt = j + OPERATOR_DEGREE[out_arrow.op_id]
            tkeys = _keys(spec, out_arrow.target, jt, w)
            tindex = {k: i for i, k in enumerate(tkeys)}
            d_top = _push(spec, out_arrow, keys, top, tindex)
            sub_out = _carriers(spec, out_arrow.target, jt, w)[1]
            after = len(tkeys)
        top_in: List[Vector] = []
        if in_arrow is not None:
            js = j - OPERATOR_DEGREE[in_arrow.op_id]
            skeys = _keys(spec, in_arrow.source, js, w)
            if skeys:
                s_top = _carriers(spec, in_arrow.source, js, w)[0]
                top_in = _push(spec, in_arrow, skeys, s_top, index)
        dim = subquotient_homology(top_in, top, sub, sub_out, d_top, (0, len(keys), after))
        if dim:
            result[w] = dim
    logging.debug(f"{spec.label} at {tuple(node)} layer {j}: {sum(result.values())}")
    return result


def build(spec: ComplexSpec, bound: int = 3, check_layers: Optional[int] = None) -> ComplexInstance:
    """Materialize the complex on the nodes with |m|, |n| <= ``bound`` and check d . d = 0.

    The composition is checked on every basis monomial up to ``check_layers``
    (all materialized layers by default).
    """
    nodes = [node for node in valid_nodes(bound) if spec.contains(node)]
    arrows = [a for a in (arrow(spec, node) for node in nodes) if a is not None]
    top = spec.top_layer if check_layers is None else min(check_layers, spec.top_layer)
    for first in arrows:
        second = arrow(spec, first.target)
        if second is None:
            continue
        for j in range(top + 1):
            for keys in layer(spec, first.source, j).values():
                for key in keys:
                    mid = ModuleVector(_image(first, key, spec.graded), first.target.space)
                    if mid.is_zero():
                        continue
                    end = apply(_operator(second), mid, spec.graded)
                    if not end.is_zero():
                        raise CompositionNotZero(
                            f"{second.op_id} . {first.op_id} from {tuple(first.source)} is not zero on {key}")
    logging.info(f"Built {spec.label}: {len(nodes)} positions, {len(arrows)} arrows")
    return ComplexInstance(spec, nodes, arrows)


def homology(instance: ComplexInstance, m: int, n: int, space: Optional[str] = None) -> HomologyResult:
    spec = instance.spec
    node = Node(space or spec.space[0], m, n)
    graded: Dict[int, int] = {}
    weights: Dict[Tuple[int, Weight], int] = {}
    for j in range(spec.top_layer + 1):
        per_weight = position_homology(spec, node, j)
        graded[j] = sum(per_weight.values())
        weights.update({(j, w): d for w, d in per_weight.items()})
    content: Counter = Counter()
    if weights:
        by_weight: Dict[Weight, int] = {}
        for (_, w), d in weights.items():
            by_weight[w] = by_weight.get(w, 0) + d
        content = g0_decompose(by_weight)
    return HomologyResult(node, sum(graded.values()), graded, weights, content)


def dim_irreducible(label: Label) -> int:
    p, q, r, _ = label
    return (p + 1) * (q + 1) * (p + q + 2) // 2 * (r + 1)


def g0_decompose(weight_dims: Mapping[Weight, int]) -> Counter:
    """Multiset of highest weights (p, q, r, y) of a finite-dimensional g0-module from its weights."""
    mult = {tuple(w): d for w, d in weight_dims.items() if d}
    found: Counter = Counter()
    for w in mult:
        h1, h2, h3, y = w
        if min(h1, h2, h3) < 0 or any(Fraction(h).denominator != 1 for h in (h1, h2, h3)):
            continue
        count = 0
        for (a1, a2), s1 in _SL3_ALTERNATION:
            for a3, s2 in _SL2_ALTERNATION:
                count += s1 * s2 * mult.get((h1 + a1, h2 + a2, h3 + a3, y), 0)
        if count < 0:
            raise InconsistentDecomposition(f"negative multiplicity {count} at weight {w}")
        if count:
            found[(int(h1), int(h2), int(h3), Fraction(y))] = count
    total = sum(mult.values())
    counted = sum(dim_irreducible(label) * k for label, k in found.items())
    if counted != total:
        raise InconsistentDecomposition(f"highest weights account for {counted} of {total} dimensions")
    return found


# ---------------------------------------------------------------- closed-form targets

def _dim_p(k: int) -> int:
    return k + 1 if k >= 0 else 0


def _exterior(k: int) -> int:
    return comb(3, k) if 0 <= k <= 3 else 0


def expected_terms(space: str, m: int, n: int) -> List[Tuple[int, int]]:
    """Summands (i, k) of the G0-homology at (m, n): Lambda^i tensored with a (k+1)-dimensional piece."""
    if space == 'A' and m == 0 and n >= 0:
        terms = [(i, n - i) for i in range(4)]
    elif space == 'A' and m == 1 and 0 <= n <= 3:
        terms = [(i, i - n - 1) for i in range(4)]
    elif space == 'B' and m == 0 and n <= 0:
        terms = [(i, i - n) for i in range(4)]
    elif space == 'C' and m == 0 and n >= 0:
        terms = [(i, n + 3 - i) for i in range(4)]
    elif space == 'D' and m == 0 and n <= 0:
        terms = [(i, i - n - 3) for i in range(4)]
    elif space == 'D' and m == -1 and -2 <= n <= 0:
        terms = [(i, n - i + 2) for i in range(4)]
    else:
        terms = []
    return [(i, k) for i, k in terms if k >= 0]


def expected_dimension(space: str, m: int, n: int) -> int:
    return sum(comb(3, i) * _dim_p(k) for i, k in expected_terms(space, m, n))


def expected_block_dimension(space: str, a: int, b: int, m: int, n: int) -> int:
    """Homology of the summand (a, b) of G0_X at (m, n) as an exterior-power dimension."""
    if space in 'AC':
        shift = 0 if space == 'A' else 3
        if a < 0 or b < 0:
            return 0
        big_a, big_b = a > 3, b > 3
        if big_a or big_b:
            if m != 0:
                return 0
            floor = max(a if big_a else 0, b if big_b else 0) - shift
            return _exterior(a + b - n - shift) if n >= floor else 0
        if space == 'C':
            return _exterior(a + b - n - 3) if m == 0 and n >= 0 else 0
        low, high = min(a, b), max(a, b)
        if m == 0:
            return _exterior(a + b - n) if n >= high else 0
        if m == 1:
            return _exterior(1 + a + b - n) if 0 <= n <= low else 0
        return 0
    shift = 0 if space == 'B' else 3
    if a > 3 or b > 3:
        return 0
    neg_a, neg_b = a < 0, b < 0
    if neg_a or neg_b:
        if m != 0:
            return 0
        ceiling = min(a if neg_a else 0, b if neg_b else 0) - shift
        return _exterior(a + b - n - shift) if n <= ceiling else 0
    if space == 'B':
        return _exterior(a + b - n) if m == 0 and n <= 0 else 0
    low, high = min(a, b), max(a, b)
    if m == 0:
        return _exterior(a + b - n - 3) if n <= low - 3 else 0
    if m == -1:
        return _exterior(a + b - n - 4) if high - 3 <= n <= 0 else 0
    return 0


# ---------------------------------------------------------------- M-type homology

def verma_homology_graded(spec: ComplexSpec, node: Node, truncation: int) -> Dict[int, int]:
    """dim H at ``node`` per U-degree j <= ``truncation`` (Y-eigenvalue y(node) - j/3)."""
    spec = replace(spec, truncation=truncation)
    return {j: sum(position_homology(spec, node, j).values()) for j in range(truncation + 1)}


def _tensor_bound(space: str, node: Node, truncation: int) -> Dict[int, int]:
    """dim of S(g_-2) (x) H(G_X) at ``node``, layer by layer; dh_i has U-degree 2."""
    exterior = {j: sum(position_homology(ComplexSpec('G', space), node, j).values()) for j in range(7)}
    return {j: sum(comb(k + 2, 2) * exterior.get(j - 2 * k, 0) for k in range(j // 2 + 1))
            for j in range(truncation + 1)}


def rank_inequality(space: str, node: Node, truncation: int) -> List[Tuple[int, int, int]]:
    """(j, dim H_j(M_X), bound from S(g_-2) (x) H(G_X)) for each layer j."""
    verma = verma_homology_graded(ComplexSpec('M', space), node, truncation)
    bound = _tensor_bound(space, node, truncation)
    return [(j, verma[j], bound[j]) for j in range(truncation + 1)]


def first_page_dimensions(space: str, node: Node, truncation: int) -> List[Tuple[int, int, int]]:
    """(j, dim E^0_j, dim of S(g_-2) (x) H(G_X) at layer j) for the word-length filtration of M_X.

    E^0 is the homology of Gr M_X, computed directly on the GrM complex.
    """
    graded = verma_homology_graded(ComplexSpec('GrM', space), node, truncation)
    bound = _tensor_bound(space, node, truncation)
    return [(j, graded[j], bound[j]) for j in range(truncation + 1)]


def _weight_ranks(spec: ComplexSpec, a: Arrow, j: int) -> Dict[Weight, int]:
    """Rank of ``a`` on layer ``j`` of its source, per weight."""
    shift = OPERATOR_DEGREE[a.op_id]
    ranks = {}
    for w, keys in layer(spec, a.source, j).items():
        tindex = {k: i for i, k in enumerate(_keys(spec, a.target, j + shift, w))}
        unit = [{i: Fraction(1)} for i in range(len(keys))]
        ranks[w] = rank_of_vectors(_push(spec, a, keys, unit, tindex), len(tindex))
    return ranks


def _layer_dim(spec: ComplexSpec, node: Node, j: int) -> int:
    return sum(len(keys) for keys in layer(spec, node, j).values())


def isomorphism_dimensions(source: Node, target: Node, op_id: str, truncation: int) -> List[Tuple[int, int, int]]:
    """Compare Coker(nabla into ``source``) with the kernel of the grid arrow leaving ``target``, layer by layer.

    Rows are (j, dim of the cokernel at layer j, dim of the kernel at layer j + degree of ``op_id``).
    """
    spec = ComplexSpec('M', source.space, truncation=truncation)
    tspec = ComplexSpec('BigM', truncation=truncation)
    shift = OPERATOR_DEGREE[op_id]
    into = incoming(spec, source)
    out = outgoing(target)
    rows = []
    for j in range(truncation + 1):
        coker = _layer_dim(spec, source, j)
        if into is not None:
            coker -= sum(_weight_ranks(spec, into, j - 1).values())
        ker = _layer_dim(tspec, target, j + shift)
        if out is not None:
            ker -= sum(_weight_ranks(tspec, out, j + shift).values())
        rows.append((j, coker, ker))
    return rows


def bicomplex_split(space: str, node: Node) -> Dict[str, bool]:
    """Split nabla into its z_+ part and its z_- part and check both square to zero and anticommute."""
    first = build_operator('nabla', node)
    parts = {'plus': [], 'minus': []}
    for term in first.terms:
        _, der, mul = term
        parts['plus' if der[3] + mul[3] else 'minus'].append(term)
    target = first.target
    second = build_operator('nabla', target) if component_basis(target.space, target.m - 1, target.n - 1) else None
    checks = {'plus_squared': True, 'minus_squared': True, 'anticommute': True}
    if second is None:
        return checks
    ops = {}
    for name in parts:
        ops[('1', name)] = InducedOperator('nabla', node, target, tuple(parts[name]))
    for name in ('plus', 'minus'):
        ops[('2', name)] = InducedOperator('nabla', target, second.target,
                                           tuple(t for t in second.terms if (t[1][3] + t[2][3] > 0) == (name == 'plus')))
    spec = ComplexSpec('G', space)
    for j in range(7):
        for keys in layer(spec, node, j).values():
            for key in keys:
                v = ModuleVector.basis_vector(key, space)

                def twice(a, b):
                    return apply(ops[('2', b)], apply(ops[('1', a)], v, True), True)
                if not twice('plus', 'plus').is_zero():
                    checks['plus_squared'] = False
                if not twice('minus', 'minus').is_zero():
                    checks['minus_squared'] = False
                if not (twice('plus', 'minus') + twice('minus', 'plus')).is_zero():
                    checks['anticommute'] = False
    return checks


# ---------------------------------------------------------------- explicit representatives

class RepresentativeCheck(NamedTuple):
    """Named vectors of one layer tested as a basis of H(G_X) there."""
    position: Node
    layer: int
    names: Tuple[str, ...]
    cycles: Tuple[str, ...]
    independent: int
    homology: int
    y: Dict[str, Fraction]

    @property
    def passed(self) -> bool:
        return len(self.names) == len(self.cycles) == self.independent == self.homology


def symbol(v: ModuleVector) -> ModuleVector:
    """Top word-length part of ``v``: its class in Gr M."""
    if v.is_zero():
        return v
    top = max(lm.length for lm, _ in v.terms)
    return ModuleVector({k: c for k, c in v.terms.items() if k[0].length == top}, v.space)


def check_representatives(node: Node, vectors: Mapping[str, ModuleVector]) -> List[RepresentativeCheck]:
    """Test the symbols of ``vectors`` as cycles of G_X, independent modulo boundaries, spanning H."""
    spec = ComplexSpec('G', node.space)
    out_arrow, in_arrow = arrow(spec, node), incoming(spec, node)
    by_layer: Dict[int, Dict[str, ModuleVector]] = {}
    for name, v in vectors.items():
        s = symbol(v)
        by_layer.setdefault(max(lm.length for lm, _ in s.terms), {})[name] = s
    y_node = y_of_component(*node)
    results = []
    for j, named in sorted(by_layer.items()):
        keys = [k for ks in layer(spec, node, j).values() for k in ks]
        index = {k: i for i, k in enumerate(keys)}
        cycles = tuple(name for name, s in named.items()
                       if out_arrow is None or apply(_operator(out_arrow), s, graded=True).is_zero())
        boundaries: List[Vector] = []
        if in_arrow is not None:
            for ks in layer(spec, in_arrow.source, j - OPERATOR_DEGREE[in_arrow.op_id]).values():
                boundaries += [_indexed(_image(in_arrow, k, True), index, str(node)) for k in ks]
        reps = [_indexed(s.terms, index, str(node)) for s in named.values()]
        base = rank_of_vectors(boundaries, len(keys))
        independent = rank_of_vectors(boundaries + reps, len(keys)) - base
        y = {name: y_node - Fraction(max(vectors[name].ldegrees()), 3) for name in named}
        results.append(RepresentativeCheck(node, j, tuple(named), cycles, independent,
                                           sum(position_homology(spec, node, j).values()), y))
        logging.debug(f"representatives at {tuple(node)} layer {j}: {results[-1]}")
    return results


# ---------------------------------------------------------------- irreducible quotients

def irreducible_graded_pieces(node: Node, truncation: int) -> IrreduciblePieces:
    """Graded pieces of the irreducible quotient of the induced module at ``node``.

    Generic positions are divided by the image of the incoming arrow of the combined complex
    (A^{0,0} by the incoming nabla of the basic grid). The exceptional positions are divided
    by the kernel of their outgoing arrow instead.
    """
    spec = ComplexSpec('BigM', truncation=truncation)
    exceptional = node in EXCEPTIONAL
    if exceptional:
        a = arrow(spec, node)
    elif node == Node('A', 0, 0):
        a = incoming(ComplexSpec('M', 'A', truncation=truncation), node)
    else:
        a = incoming(spec, node)
    dims, weights, basis = {}, {}, {}
    for j in range(truncation + 1):
        dims[j], weights[j], basis[j] = 0, {}, []
        for w, keys in layer(spec, node, j).items():
            kept = _quotient_keys(spec, a, node, j, w, keys, exceptional)
            if kept:
                weights[j][w] = len(kept)
                dims[j] += len(kept)
                basis[j].extend(kept)
    logging.info(f"Irreducible quotient at {tuple(node)}: {sum(dims.values())} dimensions up to layer {truncation}")
    return IrreduciblePieces(node, module_label(node), dims, weights, basis)


def _quotient_keys(spec: ComplexSpec, a: Optional[Arrow], node: Node, j: int, w: Weight,
                   keys: Sequence[Key], exceptional: bool) -> List[Key]:
    if a is None:
        return list(keys)
    index = {k: i for i, k in enumerate(keys)}
    if exceptional:
        shift = OPERATOR_DEGREE[a.op_id]
        tindex = {k: i for i, k in enumerate(_keys(spec, a.target, j + shift, w))}
        unit = [{i: Fraction(1)} for i in range(len(keys))]
        images = _push(spec, a, keys, unit, tindex)
        if not any(images):
            return []
        # independent images pick out a complement of the kernel
        columns = SparseMatrix.from_columns(images, len(tindex))
        _, pivots = row_reduce([{c: v for (r, c), v in columns.entries.items() if r == row}
                                for row in range(len(tindex))], len(keys))
        return [keys[c] for c in pivots]
    shift = OPERATOR_DEGREE[a.op_id]
    skeys = _keys(spec, a.source, j - shift, w)
    unit = [{i: Fraction(1)} for i in range(len(skeys))]
    images = _push(spec, a, skeys, unit, index)
    _, pivots = row_reduce(images, len(keys))
    taken = set(pivots)
    return [k for i, k in enumerate(keys) if i not in taken]
