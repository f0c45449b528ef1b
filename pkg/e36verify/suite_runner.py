import logging
import random
import time
from dataclasses import asdict, dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from multiprocessing import Pool
from typing import Callable, Dict, Iterator, List, Mapping, NamedTuple, Optional, Sequence, Tuple

from tqdm import tqdm

from e36verify.characters import (SERIES, ModuleLabel, ch_irreducible, ch_verma, closed_form_a, closed_form_a_zero,
                                  d_series_shift, dim_f, dual_piece_label, enumerated_verma_series,
                                  negative_coefficients, parity_split, size_formula, size_of, verma_size)
from e36verify.e510_algebra import (G0, POSITIVE, E510Element, all_permutation_signs_agree, bracket,
                                    expand_in_catalog, generator_catalog, is_well_formed, random_element,
                                    secondary_component, super_jacobi_defect)
from e36verify.exact_linalg import RationalFunction, SparseMatrix, series_of
from e36verify.exceptions import (CacheCorrupt, CompositionNotZero, E36Error, InvalidConfig, NotInCatalogSpan,
                                  UnknownSuite)
from e36verify.homology_engine import (ComplexInstance, ComplexSpec, bicomplex_split, build, check_representatives,
                                       dim_irreducible, expected_block_dimension, expected_dimension, homology,
                                       first_page_dimensions, irreducible_graded_pieces, isomorphism_dimensions,
                                       position_homology, rank_inequality, verma_homology_graded)
from e36verify.nabla_operators import (Arrow, Node, apply, build_operator, composable_pairs, grid,
                                       operator_on_degree, valid_nodes)
from e36verify.singular_vectors import (FAMILIES, REPRESENTATIVES, SECONDARY, anticommutator_defect,
                                        anticommutator_pairs, catalog_vectors, curl_congruence, exhaustive_scan,
                                        family_parameters, hw_monomial, identity_residuals, incoming_nabla,
                                        materialize, module_label, pushed_singular_vectors, representatives,
                                        right_factors, tensor, verify_secondary, verify_singular,
                                        y_commutator_defect)
from e36verify.spectral_sequence import (FilteredComplex, converge, degeneration_report, page,
                                         page_recurrence_holds, random_filtered_complex, verma_filtered_complex)
from e36verify.standard_model import (LISTED_MULTIPLETS, OUT_OF_REACH_MULTIPLETS, UNLISTED_MULTIPLETS,
                                      degenerate_labels_exponentiate, enumerate_fundamental, is_fundamental,
                                      multiplet, scan_degenerate_sum)
from e36verify.utils.cache import ResultCache, content_key
from e36verify.utils.report import FORMATS, Check, Report, check, exact
from e36verify.verma_modules import ModuleVector, act, component_basis, module_basis, word, y_of_component


@dataclass(frozen=True)
class SuiteConfig:
    trunc: int = 8
    pbw_deg: int = 6
    range: int = 4
    format: str = 'md'
    cache_dir: Optional[str] = None
    jobs: int = 1
    scan_trunc: int = 10

    def __post_init__(self):
        for name in ('trunc', 'pbw_deg', 'range', 'scan_trunc', 'jobs'):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or value < 0:
                raise InvalidConfig(f"{name} must be a non-negative integer, got {value!r}")
        if self.jobs < 1:
            raise InvalidConfig(f"jobs must be at least 1, got {self.jobs}")
        if self.format not in FORMATS:
            raise InvalidConfig(f"format must be one of {FORMATS}, got {self.format!r}")

    @classmethod
    def from_mapping(cls, values: Mapping[str, object]) -> 'SuiteConfig':
        """Build from a config-file dict; keys starting with '_' are comments, None means default."""
        known = set(cls.__dataclass_fields__)
        unknown = sorted(k for k in values if not k.startswith('_') and k not in known)
        if unknown:
            raise InvalidConfig(f"unknown configuration keys: {', '.join(unknown)}")
        return cls(**{k: v for k, v in values.items() if k in known and v is not None})

    def as_dict(self) -> Dict[str, object]:
        return asdict(self)


class Task(NamedTuple):
    key: str
    func: Callable[..., List[Check]]
    args: Tuple = ()

    @property
    def cache_key(self) -> str:
        return content_key((self.key, f"{self.func.__module__}.{self.func.__name__}", self.args))


def _execute(task: Task) -> List[Check]:
    try:
        return task.func(*task.args)
    except E36Error as e:
        logging.error(f"{task.key} raised {type(e).__name__}: {e}")
        return [Check(task.key, 'completes without error', 'fail', 'no error', type(e).__name__, str(e))]


def _residuals(report) -> str:
    return '; '.join(f"{g}: {v!r}"[:300] for g, v in report.residuals.items())


# ---------------------------------------------------------------- brackets

RELATIONS = (
    ('d1+', 'd2-', {'dh3': -1}),
    ('e0p', 'd1+', {'f2': 1}),
    ('e0p', 'd2+', {'f12': -1}),
    ('e0p', 'd3+', {}),
    ('e0', 'f0', {'h0': 1}),
    ('e0p', 'f0', {'f2': 1}),
    ('h1', 'e1', {'e1': 2}),
    ('h2', 'e2', {'e2': 2}),
    ('h3', 'e3', {'e3': 2}),
    ('e1', 'f1', {'h1': 1}),
    ('e3', 'f3', {'h3': 1}),
)


def relation_table() -> List[Tuple[str, str, Dict[str, Fraction]]]:
    rows = [(a, b, {k: Fraction(v) for k, v in rhs.items()}) for a, b, rhs in RELATIONS]
    odd = [f"d{i}{s}" for s in '+-' for i in (1, 2, 3)]
    for a, b in product(odd, repeat=2):
        if a[-1] == b[-1]:
            rows.append((a, b, {}))
    for d in odd:
        rows.append(('Y', d, {d: Fraction(-1, 3)}))
        for k in (1, 2, 3):
            rows.append((f"dh{k}", d, {}))
    return rows


def _combination(rhs: Mapping[str, Fraction]) -> str:
    return ' + '.join(f"{exact(c)} {name}" for name, c in sorted(rhs.items())) or '0'


def relations_task() -> List[Check]:
    cat = generator_catalog()
    rows = []
    for a, b, rhs in relation_table():
        lhs = bracket(cat[a], cat[b])
        target = E510Element()
        for name, c in rhs.items():
            target = target + cat[name].scale(c)
        if (lhs - target).is_zero():
            computed = rhs
        else:
            try:
                computed = expand_in_catalog(lhs)
            except NotInCatalogSpan:
                computed = repr(lhs)
        rows.append(check(f"brackets/relation/{a},{b}", f"[{a}, {b}] = {_combination(rhs)}", rhs, computed))
    return rows


def jacobi_catalog_task() -> List[Check]:
    cat = generator_catalog()
    names = sorted(cat)
    bad = [(a, b, c) for a, b, c in product(names, repeat=3)
           if not super_jacobi_defect(cat[a], cat[b], cat[c]).is_zero()]
    return [check('brackets/jacobi/catalog', f"super-Jacobi identity on all {len(names) ** 3} generator triples",
                  0, len(bad), residual=exact(bad[:5]) if bad else '')]


def jacobi_random_task(seed: int, count: int, degree: int) -> List[Check]:
    rng = random.Random(seed)
    bad = 0
    for _ in range(count):
        a, b, c = (random_element(rng, degree) for _ in range(3))
        if not super_jacobi_defect(a, b, c).is_zero():
            bad += 1
    return [check(f"brackets/jacobi/random/{seed}",
                  f"super-Jacobi identity on {count} random triples of principal degree <= {degree}", 0, bad)]


def catalog_shape_task() -> List[Check]:
    cat = generator_catalog()
    malformed = sorted(name for name, e in cat.items() if not is_well_formed(e))
    off_degree = sorted(name for name, e in cat.items() if not (secondary_component(e, 0) - e).is_zero())
    return [
        check('brackets/catalog/well-formed', "catalog generators are divergence-free vector fields or closed forms",
              [], malformed),
        check('brackets/catalog/secondary-degree', "catalog generators have secondary degree 0", [], off_degree),
        check('brackets/catalog/epsilon', "epsilon is totally antisymmetric", True, all_permutation_signs_agree()),
    ]


def _brackets(config: SuiteConfig) -> List[Task]:
    return [
        Task('brackets/relations', relations_task),
        Task('brackets/jacobi/catalog', jacobi_catalog_task),
        Task('brackets/jacobi/random', jacobi_random_task, (0, 100, 4)),
        Task('brackets/catalog', catalog_shape_task),
    ]


# ---------------------------------------------------------------- operators

def square_task(first: Arrow, second: Arrow, degree: int) -> List[Check]:
    op1 = build_operator(first.op_id, first.source)
    op2 = build_operator(second.op_id, second.source)
    nonzero = []
    for j in range(degree + 1):
        basis, images = operator_on_degree(op1, j)
        for key in basis:
            mid = images[key]
            if not mid.is_zero() and not apply(op2, mid).is_zero():
                nonzero.append(key)
    return [check(f"operators/square/{first.source}/{first.op_id}/{second.op_id}",
                  f"{second.op_id} after {first.op_id} vanishes on M at {first.source} up to U-degree {degree}",
                  0, len(nonzero), residual=repr(nonzero[:3]) if nonzero else '')]


def equivariance_task(a: Arrow, degree: int) -> List[Check]:
    op = build_operator(a.op_id, a.source)
    broken = set()
    for j in range(degree + 1):
        basis, images = operator_on_degree(op, j)
        for key in basis:
            v = ModuleVector.basis_vector(key, a.source.space)
            for g in G0 + POSITIVE:
                moved = act(g, v)
                rhs = ModuleVector({}, op.target.space) if moved.is_zero() else apply(op, moved)
                if not (act(g, images[key]) - rhs).is_zero():
                    broken.add(g)
    return [check(f"operators/equivariance/{a.source}/{a.op_id}",
                  f"{a.op_id} from {a.source} commutes with g0, e0 and e0p up to U-degree {degree}",
                  [], sorted(broken))]


def y_commutator_task(node: Node, degree: int) -> List[Check]:
    factors = right_factors()
    broken = set()
    for j in range(degree + 1):
        for key in module_basis(*node, j):
            v = ModuleVector.basis_vector(key, node.space)
            broken.update(name for name, (p, c) in factors.items() if not y_commutator_defect(v, p, c).is_zero())
    return [check(f"operators/y-commutator/{node}",
                  f"[Y, P] = c P for right multiplication on M at {node} up to U-degree {degree}",
                  [], sorted(broken))]


def anticommutator_task(node: Node, degree: int) -> List[Check]:
    pairs = anticommutator_pairs()
    broken = set()
    for j in range(degree + 1):
        for key in module_basis(*node, j):
            v = ModuleVector.basis_vector(key, node.space)
            broken.update(name for name, (p, q) in pairs.items() if not anticommutator_defect(v, p, q).is_zero())
    return [check(f"operators/anticommutator/{node}",
                  f"Delta+ and Delta- anticommute, as do the delta_i, on M at {node} up to U-degree {degree}",
                  [], sorted(broken))]


def _operators(config: SuiteConfig) -> List[Task]:
    tasks = [Task(f"operators/square/{f.source}/{f.op_id}/{s.op_id}", square_task, (f, s, config.pbw_deg))
             for f, s in composable_pairs(config.range)]
    tasks += [Task(f"operators/equivariance/{a.source}/{a.op_id}", equivariance_task, (a, config.pbw_deg))
              for a in grid(config.range)]
    d_nodes = [node for node in valid_nodes(config.range) if node.space == 'D']
    tasks += [Task(f"operators/y-commutator/{node}", y_commutator_task, (node, config.pbw_deg)) for node in d_nodes]
    tasks += [Task(f"operators/anticommutator/{node}", anticommutator_task, (node, config.pbw_deg))
              for node in d_nodes]
    return tasks


# ---------------------------------------------------------------- singular vectors

def catalog_task(tag: str, bound: int) -> List[Check]:
    family = FAMILIES[tag]
    rows = []
    for params in family_parameters(tag, bound):
        v = materialize(tag, *params)
        name = f"{tag}{exact(params) if params else ''}"
        if v.is_zero():
            rows.append(check(f"singular/{name}", f"{family.description} is non-zero", 'non-zero', 'zero'))
            continue
        report = verify_singular(v, name)
        rows.append(check(f"singular/{name}", f"{family.description} is killed by e1, e2, e3, e0p and e0",
                          [], report.failed(), residual=_residuals(report)))
    return rows


def secondary_task(tag: str) -> List[Check]:
    family = SECONDARY[tag]
    report = verify_secondary(materialize(tag), incoming_nabla(family.node), tag)
    return [check(f"singular/secondary/{tag}",
                  f"{family.description} is a cycle whose e0 and e0p images are boundaries",
                  [], report.failed(), residual=_residuals(report))]


def perturbed_task() -> List[Check]:
    vm = hw_monomial('A', 1, 1)
    v = tensor(word('d1+'), vm, 'A') + tensor(word('d2+'), vm, 'A')
    report = verify_singular(v, 'perturbed')
    return [check('singular/perturbed', "d1+ x1 z+ + d2+ x1 z+ is rejected with an e1 residual",
                  True, 'e1' in report.failed())]


@lru_cache(maxsize=None)
def catalog_index(bound: int) -> Dict[Tuple, Tuple[int, ...]]:
    """Module label -> U-degrees of the catalog vectors in that module, parameters up to ``bound``.

    A module can sit at two nodes (M(0,0;0;0) is both A^0,0 and D^0,0), so the key is its label.
    """
    index: Dict[Tuple, List[int]] = {}
    for _, _, v in catalog_vectors(bound):
        if v.is_zero():
            continue
        (m, n), = v.components()
        index.setdefault(module_label(Node(v.space, m, n)), []).append(max(v.ldegrees()))
    return {label: tuple(sorted(degrees)) for label, degrees in index.items()}


def scan_task(node: Node, degree: int, bound: int) -> List[Check]:
    label = module_label(node)
    expected = sum(1 for d in catalog_index(bound).get(label, ()) if d <= degree)
    found = exhaustive_scan(node, degree)
    p, q, r, y = label
    return [check(f"singular/scan/{node}",
                  f"M({p},{q};{r};{y}) has exactly the catalog singular vectors up to U-degree {degree}",
                  expected, len(found))]


def identities_task() -> List[Check]:
    rows = [check(f"singular/identities/{name}", name, 0, len(residual.terms),
                  residual=repr(residual)[:300] if not residual.is_zero() else '')
            for name, residual in identity_residuals().items()]
    k = curl_congruence()
    rows.append(check('singular/identities/curl-congruence',
                      "d1- t+ - d1+ t- = k (dh3 tau2 - dh2 tau3) modulo the image of nabla, with k = 4",
                      4, 'none' if k is None else k))
    return rows


def pushed_task(bound: int) -> List[Check]:
    failing = [name for name, v in pushed_singular_vectors(bound) if not verify_singular(v, name).passed]
    return [check('singular/pushed', f"images of singular vectors along the grid arrows, |m|, |n| <= {bound}, "
                  "are singular", [], failing)]


def _singular(config: SuiteConfig) -> List[Task]:
    tasks = [Task(f"singular/{tag}", catalog_task, (tag, config.range)) for tag in FAMILIES]
    tasks += [Task(f"singular/secondary/{tag}", secondary_task, (tag,)) for tag in SECONDARY]
    tasks.append(Task('singular/perturbed', perturbed_task))
    tasks.append(Task('singular/identities', identities_task))
    tasks.append(Task('singular/pushed', pushed_task, (config.range,)))
    tasks += [Task(f"singular/scan/{node}", scan_task, (node, config.pbw_deg, config.range))
              for node in valid_nodes(config.range)]
    return tasks


# ---------------------------------------------------------------- homology

SQUARE_COMPLEXES = tuple(('G', s) for s in 'ABCD') + (('G', 'AB'), ('G', 'CD')) + \
    tuple(('M', s) for s in 'ABCD') + (('BigM', 'A'),)

# (family, space, position, expected homology character)
VERMA_TARGETS = (
    ('M', 'A', Node('A', 0, 0), 'one'),
    ('M', 'A', Node('A', 1, 2), 'zero'),
    ('M', 'A', Node('A', 0, 1), 'minimal'),
    ('M', 'A', Node('A', 1, 1), 'minimal'),
    ('M', 'D', Node('D', 0, 0), 'zero'),
    ('M', 'D', Node('D', -1, -2), 'one'),
    ('BigM', 'A', Node('D', -1, -1), 'one_plus_minimal'),
)

RANK_NODES = (Node('A', 1, 1), Node('A', 0, 1), Node('D', -1, -1), Node('D', 0, -1))
FIRST_PAGE_NODES = (Node('A', 0, 0), Node('A', 0, 1), Node('A', 1, 1), Node('A', 1, 2), Node('A', 2, 2))

# Coker(nabla into the source) against Ker(outgoing arrow of the target)
ISOMORPHISMS = (
    (Node('A', 0, 3), Node('C', 0, 0), 'nabla3'),
    (Node('A', 2, 0), Node('B', 0, 0), 'nabla2'),
    (Node('A', 0, 2), Node('D', -1, 0), 'nabla4p'),
    (Node('A', 1, 0), Node('D', 0, -2), 'nabla4pp'),
)

BICOMPLEX_NODES = (Node('A', 1, 1), Node('A', 2, 1), Node('B', 1, -1), Node('C', -1, 1), Node('D', -1, -1))


def _expected_character(kind: str) -> RationalFunction:
    minimal = closed_form_a_zero(1)
    return {
        'zero': RationalFunction.constant(0),
        'one': RationalFunction.constant(1),
        'minimal': minimal,
        'one_plus_minimal': RationalFunction.constant(1) + minimal,
    }[kind]


def _by_exponent(node: Node, graded: Mapping[int, int]) -> Dict[int, int]:
    """Layer j of ``node`` carries t^(-3y + j)."""
    base = int(-3 * y_of_component(node.space, node.m, node.n))
    return {base + j: d for j, d in graded.items() if d}


def _series_dims(rf: RationalFunction, node: Node, truncation: int) -> Dict[int, int]:
    base = int(-3 * y_of_component(node.space, node.m, node.n))
    coefficients = series_of(rf, base + truncation).coefficients
    return {k: int(v) for k, v in coefficients.items() if v and k >= base}


def g0_table_task(space: str, bound: int) -> List[Check]:
    spec = ComplexSpec('G0', space)
    rows = []
    for m, n in product(range(-3, 4), range(-bound, bound + 1)):
        node = Node(space, m, n)
        if not component_basis(*node):
            continue
        computed = sum(sum(position_homology(spec, node, j).values()) for j in range(spec.top_layer + 1))
        rows.append(check(f"homology/G0/{node}", f"dim H at {node} of the subquotient complex {spec.label}",
                          expected_dimension(space, m, n), computed))
    return rows


def block_task(space: str, bound: int) -> List[Check]:
    rows = []
    top = min(bound, 5)
    for a, b in product(range(top + 1), repeat=2):
        spec = ComplexSpec('G0', space, block=(a, b))
        for m, n in product(range(-2, 3), range(-bound, bound + 1)):
            node = Node(space, m, n)
            if not component_basis(*node):
                continue
            computed = sum(sum(position_homology(spec, node, j).values()) for j in range(spec.top_layer + 1))
            rows.append(check(f"homology/block/{space}/{a},{b}/{m},{n}", f"dim H at {node} of {spec.label}",
                              expected_block_dimension(space, a, b, m, n), computed))
    return rows


def square_complex_task(family: str, space: str, bound: int, layers: int) -> List[Check]:
    spec = ComplexSpec(family, space, truncation=layers)
    try:
        build(spec, bound, check_layers=layers)
        failure = ''
    except CompositionNotZero as e:
        failure = str(e)
    return [check(f"homology/square/{spec.label}", f"{spec.label} is a complex up to layer {layers}",
                  'd d = 0', failure or 'd d = 0', residual=failure)]


def verma_homology_task(family: str, space: str, node: Node, kind: str, truncation: int) -> List[Check]:
    spec = ComplexSpec(family, space, truncation=truncation)
    computed = _by_exponent(node, verma_homology_graded(spec, node, truncation))
    expected = _series_dims(_expected_character(kind), node, truncation)
    return [check(f"homology/verma/{spec.label}/{node}",
                  f"graded dimensions of H at {node} of {spec.label} up to U-degree {truncation}",
                  expected, computed)]


def rank_task(node: Node, truncation: int) -> List[Check]:
    rows = rank_inequality(node.space, node, truncation)
    violated = [j for j, dim, bound in rows if dim > bound]
    return [check(f"homology/rank/{node}",
                  f"dim H(M) at {node} is bounded by S(g_-2) tensor H(G) layer by layer",
                  [], violated, residual=exact(rows) if violated else '')]


def isomorphism_task(source: Node, target: Node, op_id: str, truncation: int) -> List[Check]:
    rows = isomorphism_dimensions(source, target, op_id, truncation)
    mismatched = [j for j, coker, ker in rows if coker != ker]
    return [check(f"homology/isomorphism/{source}/{op_id}",
                  f"{op_id} matches the cokernel at {source} with the kernel at {target}",
                  [], mismatched, residual=exact(rows) if mismatched else '')]


def bicomplex_task() -> List[Check]:
    expected = {'anticommute': True, 'minus_squared': True, 'plus_squared': True}
    return [check(f"homology/bicomplex/{node}", f"the z+ and z- parts of nabla at {node} form a bicomplex",
                  expected, bicomplex_split(node.space, node)) for node in BICOMPLEX_NODES]


def decomposition_task() -> List[Check]:
    rows = []
    spec = ComplexSpec('G0', 'A')
    content = homology(ComplexInstance(spec, []), 0, 0).content
    rows.append(check('homology/decomposition/A^0,0', "H at A^0,0 is the trivial module",
                      {(0, 0, 0, 0): 1}, dict(content)))
    spec = ComplexSpec('G0', 'D')
    content = homology(ComplexInstance(spec, []), -1, -1).content
    dims = sorted(dim_irreducible(label) for label, k in content.items() for _ in range(k))
    rows.append(check('homology/decomposition/D^-1,-1', "H at D^-1,-1 splits into irreducibles of dimension 2 and 3",
                      [2, 3], dims))
    return rows


# Y on explicit classes, where it is stated for them
REPRESENTATIVE_Y = {'s': Fraction(-2), 'xi': Fraction(0)}


def representatives_task(node: Node) -> List[Check]:
    rows = []
    for rc in check_representatives(node, representatives(node)):
        names = list(rc.names)
        rows.append(check(f"homology/representatives/{node}/{rc.layer}",
                          f"{', '.join(names)} are cycles of G_{node.space} independent modulo boundaries "
                          f"and span H at {node}, layer {rc.layer}",
                          {'cycles': names, 'independent': len(names), 'homology': len(names)},
                          {'cycles': list(rc.cycles), 'independent': rc.independent, 'homology': rc.homology},
                          residual=f"Y {exact(rc.y)}"))
    return rows


def representative_y_task() -> List[Check]:
    computed = {}
    for node in REPRESENTATIVES:
        for rc in check_representatives(node, representatives(node)):
            computed.update({name: y for name, y in rc.y.items() if name in REPRESENTATIVE_Y})
    return [check('homology/representatives/Y', "Y is -2 on s and 0 on xi", REPRESENTATIVE_Y, computed)]


def _homology(config: SuiteConfig) -> List[Task]:
    bound, trunc = config.range, config.trunc
    tasks = [Task(f"homology/G0/{space}", g0_table_task, (space, bound)) for space in 'ABCD']
    tasks += [Task(f"homology/block/{space}", block_task, (space, bound)) for space in 'ABCD']
    tasks += [Task(f"homology/square/{family}/{space}", square_complex_task, (family, space, bound, 2))
              for family, space in SQUARE_COMPLEXES]
    tasks += [Task(f"homology/verma/{family}/{node}", verma_homology_task, (family, space, node, kind, trunc))
              for family, space, node, kind in VERMA_TARGETS]
    tasks += [Task(f"homology/rank/{node}", rank_task, (node, trunc)) for node in RANK_NODES]
    tasks += [Task(f"homology/isomorphism/{source}/{op_id}", isomorphism_task, (source, target, op_id, trunc))
              for source, target, op_id in ISOMORPHISMS]
    tasks.append(Task('homology/bicomplex', bicomplex_task))
    tasks.append(Task('homology/decomposition', decomposition_task))
    tasks += [Task(f"homology/representatives/{node}", representatives_task, (node,)) for node in REPRESENTATIVES]
    tasks.append(Task('homology/representatives/Y', representative_y_task))
    return tasks


# ---------------------------------------------------------------- spectral sequences

RANDOM_SEEDS = 20


def random_dimension(seed: int) -> int:
    """Dimensions 10 to 40 spread over the seeds."""
    return 10 + 30 * seed // (RANDOM_SEEDS - 1)


def random_spectral_task(seed: int) -> List[Check]:
    fc = random_filtered_complex(seed, dim=random_dimension(seed), shift=seed % 3)
    result = converge(fc)
    recurrence = [r for r in range(fc.shift - 1, result.stable_page + 1) if not page_recurrence_holds(fc, r)]
    graded = {p: fc.levels.count(p) for p in fc.filtration_range}
    early = [r for r in range(fc.shift - 3, fc.shift - 1)
             if page(fc, r).dims != graded or not page(fc, r).is_zero_differential()]
    return [
        check(f"spectral/random/{seed}/limit", f"E-infinity of {fc.name} (s = {fc.shift}) equals Gr H",
              result.graded_homology, result.limit),
        check(f"spectral/random/{seed}/recurrence", f"each page of {fc.name} is the homology of the one before",
              [], recurrence),
        check(f"spectral/random/{seed}/early", f"pages of {fc.name} below s - 1 are F_p / F_p-1 with d = 0",
              [], early),
    ]


def hand_spectral_task() -> List[Check]:
    # x at level 2, y at level 0, z at level 1, dx = y
    fc = FilteredComplex(SparseMatrix(3, 3, {(1, 0): Fraction(1)}), (2, 0, 1), 1, 'hand')
    return [
        check('spectral/hand/stable', "the three-vector example stabilizes at page 3", 3, converge(fc).stable_page),
        check('spectral/hand/degeneration', "the three-vector example has a non-zero d2",
              (False, 2), degeneration_report(fc, 1)),
    ]


def zero_differential_task() -> List[Check]:
    fc = FilteredComplex(SparseMatrix.zero(4, 4), (0, 1, 1, 2), 1, 'zero')
    dims = {r: page(fc, r).dims for r in range(4)}
    return [check('spectral/zero', "with d = 0 every page is the associated graded module",
                  {r: {0: 1, 1: 2, 2: 1} for r in range(4)}, dims)]


def verma_spectral_task(space: str, top: Node, start: int, length: int) -> List[Check]:
    fc = verma_filtered_complex(space, top, start, length)
    result = converge(fc)
    return [
        check(f"spectral/verma/{space}/degeneration", f"{fc.name} degenerates at the first page",
              (True, None), degeneration_report(fc, 1)),
        check(f"spectral/verma/{space}/limit", f"E-infinity of {fc.name} equals Gr H",
              result.graded_homology, result.limit),
    ]


def first_page_task(node: Node, truncation: int) -> List[Check]:
    rows = first_page_dimensions(node.space, node, truncation)
    return [check(f"spectral/first-page/{node}",
                  f"E0 of the word-length filtration of M_{node.space} at {node} is S(g_-2) tensor H(G) "
                  f"up to U-degree {truncation}",
                  {j: bound for j, _, bound in rows}, {j: dim for j, dim, _ in rows})]


def _spectral(config: SuiteConfig) -> List[Task]:
    start = min(1, config.trunc)
    tasks = [Task(f"spectral/random/{seed}", random_spectral_task, (seed,)) for seed in range(RANDOM_SEEDS)]
    tasks += [
        Task('spectral/hand', hand_spectral_task),
        Task('spectral/zero', zero_differential_task),
        Task('spectral/verma/A', verma_spectral_task, ('A', Node('A', 2, 2), start, 3)),
        Task('spectral/verma/D', verma_spectral_task, ('D', Node('D', 0, 0), start, 3)),
    ]
    tasks += [Task(f"spectral/first-page/{node}", first_page_task, (node, config.trunc))
              for node in FIRST_PAGE_NODES]
    return tasks


# ---------------------------------------------------------------- characters

D_EXCEPTIONS = ((0, 0), (1, 1), (1, 2))


def sizes_task(series: str, bound: int) -> List[Check]:
    rows = []
    unbalanced = []
    for a, r in product(range(bound + 1), repeat=2):
        label = ModuleLabel(series, a, r)
        rows.append(check(f"characters/size/{series}/{a},{r}", f"size {label}", size_formula(label), size_of(label)))
        even, odd = parity_split(label)
        if even != odd:
            unbalanced.append(str(label))
    rows.append(check(f"characters/parity/{series}", f"even and odd parts have equal size in series {series}",
                      [], unbalanced))
    return rows


def dual_pieces_task(top: int) -> List[Check]:
    return [check(f"characters/dual/{j}", f"size {dual_piece_label(j)} = 2j + 3 at j = {j}",
                  2 * j + 3, size_of(dual_piece_label(j))) for j in range(-1, top + 1)]


def verma_sizes_task(bound: int) -> List[Check]:
    return [check(f"characters/verma-size/{p},{q},{r}", f"size M({p},{q};{r};0) = 16 dim F",
                  16 * dim_f(p, q, r), verma_size(p, q, r)) for p, q, r in product(range(bound + 1), repeat=3)]


def closed_form_task(bound: int) -> List[Check]:
    rows = []
    for p, r in product(range(bound + 1), repeat=2):
        if (p, r) in ((0, 0), (1, 1)):
            continue
        label = ModuleLabel('A', p, r)
        closed = closed_form_a_zero(r) if p == 0 else closed_form_a(p, r)
        computed = ch_irreducible(label)
        rows.append(check(f"characters/closed-form/A/{p},{r}", f"ch {label} agrees with its closed form",
                          True, computed == closed, residual='' if computed == closed else repr(computed - closed)))
    return rows


def d_inversion_task(bound: int) -> List[Check]:
    rows = []
    for q, r in product(range(bound + 1), repeat=2):
        if (q, r) in D_EXCEPTIONS:
            continue
        left, inverted, shifted = d_series_shift(q, r)
        note = f"t^(4q-6r) shift form {'holds' if left == shifted else 'does not hold'}"
        rows.append(check(f"characters/d-inversion/{q},{r}",
                          f"ch {ModuleLabel('D', q, r)} = -ch {ModuleLabel('A', q + 1, r + 1)} at 1/t",
                          True, left == inverted, residual=note))
    return rows


def verma_series_task(order: int) -> List[Check]:
    rows = []
    for label in (ModuleLabel('A', 0, 0), ModuleLabel('A', 1, 1), ModuleLabel('B', 0, 2), ModuleLabel('D', 1, 0)):
        p, q, r, y = label.weight
        base = int(-3 * y)
        expected = enumerated_verma_series(p, q, r, y, order).coefficients
        computed = series_of(ch_verma(p, q, r, y), base + order).coefficients
        rows.append(check(f"characters/verma-series/{label.series}/{label.a},{label.r}",
                          f"ch M({p},{q};{r};{y}) matches PBW counting to order {order}", expected, computed))
    return rows


def quotient_series_task(truncation: int) -> List[Check]:
    rows = []
    for node in (Node('A', 0, 1), Node('A', 1, 1), Node('D', -1, -1)):
        pieces = irreducible_graded_pieces(node, truncation)
        label = ModuleLabel(*{'A': ('A', node.m, node.n), 'D': ('D', -node.m, -node.n)}[node.space])
        expected = _series_dims(ch_irreducible(label), node, truncation)
        rows.append(check(f"characters/quotient/{node}",
                          f"graded dimensions of the quotient at {node} match ch {label} to layer {truncation}",
                          expected, _by_exponent(node, pieces.dims)))
    return rows


def positivity_task(bound: int) -> List[Check]:
    rows = []
    for series in SERIES:
        negative = []
        for a, r in product(range(bound + 1), repeat=2):
            found = negative_coefficients(ModuleLabel(series, a, r))
            if found is not None:
                negative.append(f"{ModuleLabel(series, a, r)} at t^{found[0]}")
        rows.append(check(f"characters/positivity/{series}", f"series {series} characters have no negative coefficient",
                          [], negative))
    return rows


def _characters(config: SuiteConfig) -> List[Task]:
    bound = config.range
    tasks = [Task(f"characters/size/{series}", sizes_task, (series, bound)) for series in SERIES]
    tasks += [
        Task('characters/dual', dual_pieces_task, (6,)),
        Task('characters/verma-size', verma_sizes_task, (min(bound, 2),)),
        Task('characters/closed-form', closed_form_task, (bound,)),
        Task('characters/d-inversion', d_inversion_task, (bound,)),
        Task('characters/verma-series', verma_series_task, (config.trunc,)),
        Task('characters/quotient', quotient_series_task, (config.trunc,)),
        Task('characters/positivity', positivity_task, (bound,)),
    ]
    return tasks


# ---------------------------------------------------------------- multiplets

QUARK_DOUBLET = multiplet(0, 1, 1, Fraction(1, 3))


def enumeration_task() -> List[Check]:
    found = sorted(enumerate_fundamental())
    expected = sorted(set(LISTED_MULTIPLETS) | set(UNLISTED_MULTIPLETS))
    return [
        check('multiplets/enumeration', "fundamental multiplets are the listed ones plus (11,1,1), (11,1,-1), (11,2,0)",
              [str(m) for m in expected], [str(m) for m in found]),
        check('multiplets/listed', "every listed multiplet is fundamental",
              [], [str(m) for m in LISTED_MULTIPLETS if not is_fundamental(m)]),
        check('multiplets/conjugation', "fundamental multiplets are closed under conjugation",
              [], [str(m) for m in found if m.conjugate() not in found]),
        check('multiplets/charges', "charges of the fundamental multiplets",
              {str(m): m.charges for m in expected}, {str(m): m.charges for m in found}),
    ]


def exponentiation_task(bound: int) -> List[Check]:
    rows = degenerate_labels_exponentiate(bound)
    failing = [(series, a, r) for series, a, r, ok in rows if not ok]
    return [check('multiplets/exponentiation', f"degenerate labels with parameters <= {bound} exponentiate to K",
                  [], failing)]


def scan_sum_task(truncation: int) -> List[Check]:
    result = scan_degenerate_sum(truncation)
    rows = []
    for m in LISTED_MULTIPLETS:
        k = result.multiplicity(m)
        if m in OUT_OF_REACH_MULTIPLETS:
            rows.append(check(f"multiplets/scan/{m}", f"{m} is listed but cannot occur: Y = 2 only on the trivial "
                              "layer 0 of I(0,0;0;2)", 0, k, residual=f"multiplicity {k}"))
            continue
        rows.append(check(f"multiplets/scan/{m}", f"{m} occurs in the degenerate sum up to layer {truncation}",
                          True, k >= 1, residual=f"multiplicity {k}"))
    k = result.multiplicity(QUARK_DOUBLET)
    rows.append(check('multiplets/scan/twice', f"{QUARK_DOUBLET} occurs at least twice up to layer {truncation}",
                      True, k >= 2, residual=f"multiplicity {k}", window_limited=True))
    others = [str(m) for m in result.repeated() if m != QUARK_DOUBLET]
    if others:
        rows.append(check('multiplets/scan/once', "no other multiplet repeats", [], others))
    else:
        rows.append(Check('multiplets/scan/once', "every other multiplet occurs exactly once", 'window-limited',
                          'exactly once in the full module', f"no repetition up to layer {truncation}"))
    return rows


def _multiplets(config: SuiteConfig) -> List[Task]:
    return [
        Task('multiplets/enumeration', enumeration_task),
        Task('multiplets/exponentiation', exponentiation_task, (10,)),
        Task('multiplets/scan', scan_sum_task, (config.scan_trunc,)),
    ]


SUITES: Dict[str, Callable[[SuiteConfig], List[Task]]] = {
    'brackets': _brackets,
    'operators': _operators,
    'singular': _singular,
    'homology': _homology,
    'spectral': _spectral,
    'characters': _characters,
    'multiplets': _multiplets,
}
SUITE_NAMES = tuple(SUITES) + ('all',)


# ---------------------------------------------------------------- running

class SuiteRunner:
    def __init__(self, name: str, config: SuiteConfig):
        if name not in SUITE_NAMES:
            raise UnknownSuite(f"unknown suite {name!r}, expected one of {', '.join(SUITE_NAMES)}")
        self.name = name
        self.config = config
        self.cache = ResultCache(config.cache_dir) if config.cache_dir else None

    def tasks(self) -> List[Task]:
        names = list(SUITES) if self.name == 'all' else [self.name]
        return [task for name in names for task in SUITES[name](self.config)]

    def run(self) -> Report:
        start = time.perf_counter()
        tasks = self.tasks()
        logging.info(f"Suite {self.name}: {len(tasks)} tasks")

        results: Dict[int, List[Check]] = {}
        pending = []
        for i, task in enumerate(tasks):
            rows = self._load(task)
            if rows is None:
                pending.append(i)
            else:
                results[i] = rows
        if self.cache is not None:
            logging.info(f"{len(tasks) - len(pending)} tasks loaded from {self.cache.directory}")

        with tqdm(total=len(pending), desc=f"{self.name} checks", leave=True) as pbar:
            for i, rows in zip(pending, self._compute([tasks[i] for i in pending])):
                results[i] = rows
                self._store(tasks[i], rows)
                pbar.update(1)

        checks = [c for i in range(len(tasks)) for c in results[i]]
        report = Report(self.name, self.config.as_dict(), checks, time.perf_counter() - start)
        summary = report.summary
        logging.info(f"Suite {self.name}: {summary['pass']} passed, {summary['fail']} failed, "
                     f"{summary['window-limited']} window-limited")
        for c in checks:
            if c.status == 'window-limited':
                logging.warning(f"{c.id} is window-limited: {c.computed}")
        return report

    def _compute(self, tasks: Sequence[Task]) -> Iterator[List[Check]]:
        if self.config.jobs > 1 and len(tasks) > 1:
            with Pool(min(self.config.jobs, len(tasks))) as pool:
                yield from pool.imap(_execute, tasks)
        else:
            for task in tasks:
                yield _execute(task)

    def _load(self, task: Task) -> Optional[List[Check]]:
        if self.cache is None:
            return None
        try:
            rows = self.cache.load(task.cache_key)
        except CacheCorrupt as e:
            logging.warning(f"{e}; recomputing {task.key}")
            self.cache.discard(task.cache_key)
            return None
        return None if rows is None else [Check(**row) for row in rows]

    def _store(self, task: Task, rows: List[Check]) -> None:
        if self.cache is not None:
            self.cache.store(task.cache_key, [c._asdict() for c in rows])


def run_suite(name: str, config: Optional[SuiteConfig] = None) -> Report:
    return SuiteRunner(name, config or SuiteConfig()).run()
