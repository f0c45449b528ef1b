"""
Characters tr t^{-3Y} of induced and degenerate irreducible modules, and their sizes.

Irreducible characters come from the exact sequences of the combined complex: the image of
the incoming arrow at a node is an alternating sum of induced characters over the nodes
above it. That sum ends in an infinite run of A-nodes which is summed in closed form.
"""

import logging
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, NamedTuple, Optional, Tuple

from sympy import QQ, Poly

from e36verify.exact_linalg import LaurentSeries, RationalFunction, parity_sizes, series_of, size_limit, t
from e36verify.exceptions import NotDegenerate
from e36verify.nabla_operators import Node, predecessor
from e36verify.verma_modules import component_basis, lmonomials, y_of_component

SERIES = ('A', 'B', 'C', 'D')

# exact sequences of the combined complex have non-zero homology exactly here
HOMOLOGY_NODES = (Node('A', 1, 1), Node('D', -1, -1), Node('D', -1, -2))
TRIVIAL_NODES = (Node('A', 0, 0), Node('D', 0, 0))


class ModuleLabel(NamedTuple):
    """A degenerate module of series A-D with parameters (p or q, r)."""
    series: str
    a: int
    r: int

    @property
    def p(self) -> int:
        return self.a if self.series in 'AB' else 0

    @property
    def q(self) -> int:
        return self.a if self.series in 'CD' else 0

    @property
    def y(self) -> Fraction:
        node = self.node
        return y_of_component(node.space, node.m, node.n)

    @property
    def node(self) -> Node:
        a, r = self.a, self.r
        return {'A': Node('A', a, r), 'B': Node('B', a, -r), 'C': Node('C', -a, r), 'D': Node('D', -a, -r)}[self.series]

    @property
    def weight(self) -> Tuple[int, int, int, Fraction]:
        return self.p, self.q, self.r, self.y

    def __str__(self):
        return f"I({self.p},{self.q};{self.r};{self.y})"


def label_of(node: Node) -> ModuleLabel:
    space, m, n = node
    if not component_basis(space, m, n):
        raise NotDegenerate(f"{tuple(node)} is not a node of the grid")
    return {'A': ModuleLabel('A', m, n), 'B': ModuleLabel('B', m, -n),
            'C': ModuleLabel('C', -m, n), 'D': ModuleLabel('D', -m, -n)}[space]


def label_from_weight(p: int, q: int, r: int, y) -> ModuleLabel:
    """The series label of a degenerate highest weight (p, q; r; y)."""
    y = Fraction(y)
    candidates = []
    if q == 0:
        candidates += [ModuleLabel('A', p, r), ModuleLabel('B', p, r)]
    if p == 0:
        candidates += [ModuleLabel('C', q, r), ModuleLabel('D', q, r)]
    for label in candidates:
        if label.y == y:
            return label
    raise NotDegenerate(f"({p},{q};{r};{y}) is not degenerate")


def dim_f(p: int, q: int, r: int) -> int:
    if min(p, q, r) < 0:
        raise ValueError(f"negative parameters {(p, q, r)}")
    return (p + 1) * (q + 1) * (p + q + 2) * (r + 1) // 2


def r_factor() -> RationalFunction:
    """R(t) = (1 + t)^6 / (1 - t^2)^3."""
    return RationalFunction(Poly((1 + t) ** 6, t, domain=QQ), Poly((1 - t ** 2) ** 3, t, domain=QQ))


def ch_verma(p: int, q: int, r: int, y) -> RationalFunction:
    exponent = -3 * Fraction(y)
    if exponent.denominator != 1:
        raise ValueError(f"y = {y} is not in (1/3)Z")
    return RationalFunction.t_power(int(exponent), dim_f(p, q, r)) * r_factor()


def ch_node(node: Node) -> RationalFunction:
    return ch_verma(*label_of(node).weight)


def _a_tail(node: Node) -> RationalFunction:
    """Sum over k >= 0 of (-1)^k ch M(A^{m+k, n+k})."""
    m, n = node.m, node.n
    degree = 3
    values = [dim_f(m + k, 0, n + k) for k in range(degree + 1)]
    partial = Poly(sum((-1) ** k * v * t ** k for k, v in enumerate(values)), t, domain=QQ)
    product = partial * Poly((1 + t) ** (degree + 1), t, domain=QQ)
    numerator = Poly(sum(c * t ** e for (e,), c in product.terms() if e <= degree), t, domain=QQ)
    summed = RationalFunction(numerator, Poly((1 + t) ** (degree + 1), t, domain=QQ))
    return RationalFunction.t_power(3 * n - 2 * m) * r_factor() * summed


def ch_homology(node: Node) -> RationalFunction:
    """Character of the homology of the combined complex at ``node``."""
    if node == Node('A', 1, 1):
        return ch_irreducible(ModuleLabel('A', 0, 1))
    if node == Node('D', -1, -1):
        return RationalFunction.constant(1) + ch_irreducible(ModuleLabel('A', 0, 1))
    if node == Node('D', -1, -2):
        return RationalFunction.constant(1)
    return RationalFunction.constant(0)


def ch_incoming_image(node: Node) -> RationalFunction:
    """Character of the image of the incoming arrow of the combined complex at ``node``."""
    total = RationalFunction.constant(0)
    sign = 1
    current = predecessor(node, combined=True)
    steps = 0
    while current is not None and (current.space != 'A' or current in HOMOLOGY_NODES):
        total = total + (ch_node(current) - ch_homology(current)) * sign
        sign = -sign
        current = predecessor(current, combined=True)
        steps += 1
    if current is not None:
        total = total + _a_tail(current) * sign
    logging.debug(f"incoming image at {tuple(node)}: {steps} finite steps")
    return total


@lru_cache(maxsize=None)
def ch_irreducible(label: ModuleLabel) -> RationalFunction:
    """Exact character of I(label)."""
    if label.series not in SERIES or label.a < 0 or label.r < 0:
        raise NotDegenerate(f"{label} is not a degenerate label")
    node = label.node
    if node in TRIVIAL_NODES:
        return RationalFunction.constant(1)
    image = ch_incoming_image(node)
    quotient = ch_node(node) - image
    if node in HOMOLOGY_NODES:
        quotient = quotient - ch_homology(node)
    return quotient


def closed_form_a(p: int, r: int) -> RationalFunction:
    """The A-series character as a sum over (1 + t)^-k, k = 1..4."""
    pieces = RationalFunction.constant(0)
    for power, coeff in ((4, Fraction(3)), (3, Fraction(2 * p + r - 2)), (2, Fraction(p * p + 2 * p * r - p, 2)),
                         (1, Fraction(p * p * r + p * r, 2))):
        pieces = pieces + RationalFunction.one_plus_t(-power) * coeff
    return RationalFunction.t_power(3 * r - 2 * p) * r_factor() * pieces


def closed_form_a_zero(r: int) -> RationalFunction:
    """I(0,0;r;-r) for r > 0."""
    numerator = RationalFunction(Poly((r + 1) + (r - 2) * t, t, domain=QQ))
    return RationalFunction.t_power(3 * r) * r_factor() * numerator * RationalFunction.one_plus_t(-4)


def d_series_shift(q: int, r: int) -> Tuple[RationalFunction, RationalFunction, RationalFunction]:
    """ch I(0,q;r;y_D) next to two expressions through ch I(q+1,0;r+1;y_A).

    Returns (D character, -ch_A(1/t), t^{4q-6r} ch_A(t)). Summing the resolution of the D module
    by the nodes below it gives the second; the third is the shifted form without inversion.
    """
    left = ch_irreducible(ModuleLabel('D', q, r))
    a_side = ch_irreducible(ModuleLabel('A', q + 1, r + 1))
    inverted = -a_side.substitute_inverse()
    shifted = RationalFunction.t_power(4 * q - 6 * r) * a_side
    return left, inverted, shifted


# ---------------------------------------------------------------- sizes

def size_of(label: ModuleLabel) -> Fraction:
    return size_limit(ch_irreducible(label))


def parity_split(label: ModuleLabel) -> Tuple[Fraction, Fraction]:
    return parity_sizes(ch_irreducible(label))


def size_formula(label: ModuleLabel) -> int:
    """Closed size polynomials per series, with the two exceptional values."""
    series, a, r = label
    if series == 'A':
        if (a, r) == (0, 0):
            return 0
        if (a, r) == (1, 1):
            return 16
        return 2 * r * (2 * a * a + 4 * a + 1) + (2 * a * a + 2 * a - 1)
    if series == 'B':
        return 2 * r * (2 * a * a + 4 * a + 1) + (6 * a * a + 14 * a + 5)
    if series == 'C':
        return 2 * r * (2 * a * a + 8 * a + 7) + (2 * a * a + 10 * a + 11)
    if (a, r) == (0, 0):
        return 0
    if (a, r) == (1, 1):
        return 79
    return 2 * r * (2 * a * a + 8 * a + 7) + (6 * a * a + 22 * a + 17)


class SizeRow(NamedTuple):
    label: ModuleLabel
    computed: Fraction
    expected: int
    even: Fraction
    odd: Fraction

    @property
    def passed(self) -> bool:
        return self.computed == self.expected and self.even == self.odd


def verify_sizes(bound: int = 5) -> List[SizeRow]:
    rows = []
    for series in SERIES:
        for a in range(bound + 1):
            for r in range(bound + 1):
                label = ModuleLabel(series, a, r)
                even, odd = parity_split(label)
                rows.append(SizeRow(label, size_of(label), size_formula(label), even, odd))
    failed = [row for row in rows if not row.passed]
    logging.info(f"Sizes checked for {len(rows)} labels, {len(failed)} mismatches")
    return rows


def verma_size(p: int, q: int, r: int) -> Fraction:
    return size_limit(ch_verma(p, q, r, 0))


def dual_piece_label(j: int) -> ModuleLabel:
    """The irreducible identified with U^{j*} in the secondary grading of E(5,10)."""
    if j < -1:
        raise ValueError(f"secondary degree {j} below -1")
    if j == -1:
        return ModuleLabel('A', 0, 1)
    if j == 0:
        return ModuleLabel('A', 1, 0)
    return ModuleLabel('B', 0, j - 1)


def dual_piece_sizes(top: int = 6) -> Dict[int, Tuple[Fraction, int]]:
    """j -> (size computed from the character, 2j + 3)."""
    return {j: (size_of(dual_piece_label(j)), 2 * j + 3) for j in range(-1, top + 1)}


# ---------------------------------------------------------------- series

def enumerated_verma_series(p: int, q: int, r: int, y, order: int) -> LaurentSeries:
    """ch M by counting PBW monomials degree by degree."""
    base = -3 * Fraction(y)
    coeffs = {}
    for j in range(order + 1):
        coeffs[int(base) + j] = Fraction(len(lmonomials(j)) * dim_f(p, q, r))
    return LaurentSeries(coeffs, int(base) + order)


def series_coefficients(rf: RationalFunction, order: int) -> Dict[int, Fraction]:
    series = series_of(rf, order)
    return dict(sorted(series.coefficients.items()))


def negative_coefficients(label: ModuleLabel, order: int = 12) -> Optional[Tuple[int, Fraction]]:
    """First negative series coefficient of ch I(label) up to t^order above its lowest term, if any."""
    rf = ch_irreducible(label)
    series = series_of(rf, rf.shift + order)
    for k, v in sorted(series.coefficients.items()):
        if v < 0:
            return k, v
    return None
