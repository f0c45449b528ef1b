"""
Spectral sequence of a finite filtered complex whose differential moves the filtration by
d(F_p) <= F_{p-s+1}.

The filtration is given by a level on each basis vector, F_p being the span of the basis
vectors of level <= p. With

    Z^r_p = {a in F_p : da in F_{p-r}}
    E^r_p = (Z^r_p + F_{p-1}) / (d Z^{r-1}_{p+r-1} + F_{p-1})

every page up to ``s - 1`` is the associated graded module, d^r is zero below s - 1,
and d^r maps E^r_p to E^r_{p-r}.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from e36verify.exact_linalg import SparseMatrix, Vector, kernel_basis, rank, rank_of_vectors, row_reduce
from e36verify.exceptions import CompositionNotZero, NoStabilization
from e36verify.homology_engine import ComplexSpec, _image, arrow
from e36verify.nabla_operators import Node
from e36verify.verma_modules import Weight, component_basis, lmonomials, term_weight


@dataclass(frozen=True)
class FilteredComplex:
    differential: SparseMatrix
    levels: Tuple[int, ...]
    shift: int = 1
    name: str = 'complex'

    def __post_init__(self):
        d = self.differential
        if d.rows != d.cols or d.cols != len(self.levels):
            raise ValueError(f"differential of shape {(d.rows, d.cols)} on {len(self.levels)} basis vectors")
        if not d.matmul(d).is_zero():
            raise CompositionNotZero(f"d . d is not zero on {self.name}")
        for (r, c) in d.entries:
            if self.levels[r] > self.levels[c] - self.shift + 1:
                raise ValueError(f"d sends level {self.levels[c]} to level {self.levels[r]}, "
                                 f"beyond the shift s = {self.shift}")

    @property
    def dim(self) -> int:
        return len(self.levels)

    @property
    def filtration_range(self) -> range:
        if not self.levels:
            return range(0)
        return range(min(self.levels), max(self.levels) + 1)

    def span_of_level(self, p: int) -> List[Vector]:
        """Basis of F_p."""
        return [{i: Fraction(1)} for i, level in enumerate(self.levels) if level <= p]

    def image(self, vectors: Sequence[Vector]) -> List[Vector]:
        out = []
        for vec in vectors:
            acc: Dict[int, Fraction] = {}
            for (r, c), v in self.differential.entries.items():
                if c in vec:
                    acc[r] = acc.get(r, Fraction(0)) + v * vec[c]
            out.append({r: v for r, v in acc.items() if v})
        return out

    def cycles(self, p: int, r: int) -> List[Vector]:
        """Basis of Z^r_p."""
        columns = [i for i, level in enumerate(self.levels) if level <= p]
        if not columns:
            return []
        rows = [i for i, level in enumerate(self.levels) if level > p - r]
        row_index = {i: k for k, i in enumerate(rows)}
        col_index = {i: k for k, i in enumerate(columns)}
        entries = {(row_index[i], col_index[j]): v for (i, j), v in self.differential.entries.items()
                   if i in row_index and j in col_index}
        kernel = kernel_basis(SparseMatrix(len(rows), len(columns), entries))
        return [{columns[k]: v for k, v in vec.items()} for vec in kernel]

    def closed(self, p: int) -> List[Vector]:
        """Basis of ker d intersected with F_p."""
        return self.cycles(p, p - min(self.levels) + 1)

    @cached_property
    def kernel(self) -> List[Vector]:
        return kernel_basis(self.differential)

    @cached_property
    def boundaries(self) -> List[Vector]:
        return [v for v in self.image(self.span_of_level(max(self.levels, default=0))) if v]

    def homology_dimension(self) -> int:
        return len(self.kernel) - rank(self.differential)

    def graded_homology(self) -> Dict[int, int]:
        """dim Gr_p H: the filtration of H induced by F."""
        out = {}
        below = 0
        bound = rank_of_vectors(self.boundaries, self.dim)
        for p in self.filtration_range:
            here = rank_of_vectors(self.closed(p) + self.boundaries, self.dim) - bound
            out[p] = here - below
            below = here
        return out


class Page(NamedTuple):
    r: int
    dims: Dict[int, int]
    ranks: Dict[int, int]
    bases: Dict[int, List[Vector]]

    @property
    def total(self) -> int:
        return sum(self.dims.values())

    def is_zero_differential(self) -> bool:
        return not any(self.ranks.values())


def _sum_dim(parts: Sequence[Sequence[Vector]], dim: int) -> int:
    return rank_of_vectors([v for part in parts for v in part], dim)


def _denominator(fc: FilteredComplex, p: int, r: int) -> List[Vector]:
    return [v for v in fc.image(fc.cycles(p + r - 1, r - 1)) if v] + fc.span_of_level(p - 1)


def page(fc: FilteredComplex, r: int) -> Page:
    """E^r with dimensions, ranks of d^r and representatives of a basis at every p."""
    dims, ranks, bases = {}, {}, {}
    for p in fc.filtration_range:
        numerator = fc.cycles(p, r) + fc.span_of_level(p - 1)
        denominator = _denominator(fc, p, r)
        low = rank_of_vectors(denominator, fc.dim)
        dims[p] = rank_of_vectors(numerator, fc.dim) - low
        bases[p] = _complement(numerator, denominator, fc.dim)
        target = _denominator(fc, p - r, r)
        images = [v for v in fc.image(fc.cycles(p, r)) if v]
        ranks[p] = _sum_dim([images, target], fc.dim) - rank_of_vectors(target, fc.dim)
    logging.debug(f"{fc.name} page {r}: {dims}")
    return Page(r, dims, ranks, bases)


def _complement(numerator: Sequence[Vector], denominator: Sequence[Vector], dim: int) -> List[Vector]:
    basis, _ = row_reduce(list(denominator), dim)
    picked: List[Vector] = []
    current = len(basis)
    for vec in numerator:
        trial = rank_of_vectors(list(basis) + picked + [vec], dim)
        if trial > current:
            picked.append(vec)
            current = trial
    return picked


def page_recurrence_holds(fc: FilteredComplex, r: int) -> bool:
    """dim E^{r+1}_p = dim ker d^r - dim im d^r at every p."""
    here, after = page(fc, r), page(fc, r + 1)
    for p in fc.filtration_range:
        homology = here.dims[p] - here.ranks[p] - here.ranks.get(p + r, 0)
        if homology != after.dims[p]:
            return False
    return True


def _stable(fc: FilteredComplex, r: int) -> bool:
    for p in fc.filtration_range:
        if len(fc.cycles(p, r)) != len(fc.closed(p)):
            return False
        boundary = [v for v in fc.image(fc.cycles(p + r - 1, r - 1)) if v]
        if rank_of_vectors(boundary, fc.dim) != _boundaries_in_level(fc, p):
            return False
    return True


def _boundaries_in_level(fc: FilteredComplex, p: int) -> int:
    everything = fc.boundaries
    inside = fc.span_of_level(p)
    both = rank_of_vectors(everything + inside, fc.dim)
    return rank_of_vectors(everything, fc.dim) + len(inside) - both


class Convergence(NamedTuple):
    stable_page: int
    limit: Dict[int, int]
    graded_homology: Dict[int, int]

    @property
    def agrees(self) -> bool:
        return all(self.limit.get(p, 0) == d for p, d in self.graded_homology.items()) and \
            sum(self.limit.values()) == sum(self.graded_homology.values())


def converge(fc: FilteredComplex) -> Convergence:
    """Run pages until Z^r and dZ^{r-1} stop changing and compare E^infinity with Gr H."""
    if not fc.levels:
        return Convergence(fc.shift - 1, {}, {})
    span = max(fc.levels) - min(fc.levels)
    for r in range(fc.shift - 1, fc.shift + span + fc.dim + 1):
        if _stable(fc, r):
            limit = page(fc, r).dims
            graded = fc.graded_homology()
            logging.info(f"{fc.name}: stable from page {r}, total {sum(limit.values())}")
            return Convergence(r, limit, graded)
    raise NoStabilization(f"{fc.name} did not stabilize within {span + fc.dim + 1} pages")


def degeneration_report(fc: FilteredComplex, from_page: int) -> Tuple[bool, Optional[int]]:
    """(True, None) when every d^r with r >= ``from_page`` vanishes, else (False, first such r)."""
    last = converge(fc).stable_page
    for r in range(max(from_page, fc.shift - 1), last + 1):
        if not page(fc, r).is_zero_differential():
            return False, r
    return True, None


# ---------------------------------------------------------------- instances

def random_filtered_complex(seed: int, dim: int = 12, shift: int = 1, levels: int = 4,
                            density: float = 0.4) -> FilteredComplex:
    """d = P N P^-1 with N a square-zero matching respecting the filtration and P unitriangular."""
    rng = np.random.default_rng(seed)
    level = tuple(sorted(int(x) for x in rng.integers(0, levels, size=dim)))
    order = list(rng.permutation(dim))
    used = set()
    pairs = []
    for c in order:
        if c in used:
            continue
        options = [r for r in range(dim) if r != c and r not in used and level[r] <= level[c] - shift + 1]
        if options and rng.random() < 0.7:
            r = options[int(rng.integers(0, len(options)))]
            pairs.append((r, c))
            used.update((r, c))
    n_mat = np.zeros((dim, dim), dtype=object)
    for r, c in pairs:
        n_mat[r, c] = Fraction(1)
    p_mat = np.zeros((dim, dim), dtype=object)
    for i in range(dim):
        p_mat[i, i] = Fraction(1)
        for j in range(i + 1, dim):
            if level[i] <= level[j] and rng.random() < density:
                p_mat[i, j] = Fraction(int(rng.integers(-3, 4)))
    d = p_mat.dot(n_mat).dot(_unitriangular_inverse(p_mat))
    entries = {(i, j): d[i, j] for i in range(dim) for j in range(dim) if d[i, j] != 0}
    return FilteredComplex(SparseMatrix(dim, dim, entries), level, shift, f"random[{seed}]")


def _unitriangular_inverse(p_mat: np.ndarray) -> np.ndarray:
    dim = p_mat.shape[0]
    inv = np.zeros((dim, dim), dtype=object)
    for col in range(dim):
        for i in range(dim - 1, -1, -1):
            value = Fraction(1 if i == col else 0)
            for j in range(i + 1, dim):
                value -= p_mat[i, j] * inv[j, col]
            inv[i, col] = value
    return inv


def verma_filtered_complex(space: str, top: Node, start: int, length: int,
                           weight: Optional[Weight] = None) -> FilteredComplex:
    """The piece of (M_X, nabla) running down from ``top`` through U-degrees start, start + 1, ...

    The filtration level of a monomial is its word length, which nabla raises by at most one.
    """
    spec = ComplexSpec('M', space)
    chain = [top]
    while len(chain) < length:
        nxt = arrow(spec, chain[-1])
        if nxt is None:
            break
        chain.append(nxt.target)
    keys = []
    for k, node in enumerate(chain):
        for lm in lmonomials(start + k):
            for vm in component_basis(*node):
                if weight is None or term_weight(space, lm, vm) == weight:
                    keys.append((node, lm, vm))
    index = {key: i for i, key in enumerate(keys)}
    entries = {}
    for (node, lm, vm), col in index.items():
        a = arrow(spec, node)
        if a is None or a.target not in chain:
            continue
        for (lm2, vm2), v in _image(a, (lm, vm), False).items():
            row = index.get((a.target, lm2, vm2))
            if row is not None:
                entries[(row, col)] = v
    levels = tuple(lm.length for _, lm, _ in keys)
    name = f"M_{space} from {tuple(top)} at degree {start}"
    return FilteredComplex(SparseMatrix(len(keys), len(keys), entries), levels, 0, name)
