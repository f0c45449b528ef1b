"""
Bookkeeping of K = (SU(3) x SU(2) x U(1))/C multiplets F(p,q;r;y).

A multiplet exponentiates to K when y is in (1/3)Z and 2(p - q) + 3r - 3y is in 6Z. Charges
follow the Gell-Mann - Nishijima rule (y + h)/2 over the sl2 weights h = r, r - 2, ..., -r.
"""

import logging
from collections import Counter
from fractions import Fraction
from typing import Dict, Iterable, List, NamedTuple, Tuple

from e36verify.characters import SERIES, ModuleLabel
from e36verify.homology_engine import g0_decompose, irreducible_graded_pieces
from e36verify.nabla_operators import Node

FUNDAMENTAL_SL3 = ((0, 0), (1, 0), (0, 1), (1, 1))


class Multiplet(NamedTuple):
    p: int
    q: int
    r: int
    y: Fraction

    @property
    def charges(self) -> List[Fraction]:
        return [(Fraction(self.y) + h) / 2 for h in range(self.r, -self.r - 1, -2)]

    def conjugate(self) -> 'Multiplet':
        return Multiplet(self.q, self.p, self.r, -Fraction(self.y))

    def __str__(self):
        return f"({self.p}{self.q},{self.r},{Fraction(self.y)})"


def multiplet(p: int, q: int, r: int, y) -> Multiplet:
    return Multiplet(p, q, r, Fraction(y))


LISTED_MULTIPLETS = (
    multiplet(0, 1, 1, Fraction(1, 3)), multiplet(1, 0, 1, Fraction(-1, 3)),
    multiplet(1, 0, 0, Fraction(-4, 3)), multiplet(0, 1, 0, Fraction(4, 3)),
    multiplet(0, 1, 0, Fraction(-2, 3)), multiplet(1, 0, 0, Fraction(2, 3)),
    multiplet(0, 0, 1, -1), multiplet(0, 0, 1, 1), multiplet(0, 0, 0, 2), multiplet(0, 0, 0, -2),
    multiplet(1, 1, 0, 0), multiplet(0, 0, 2, 0), multiplet(0, 0, 0, 0),
    multiplet(1, 1, 0, 2), multiplet(1, 1, 0, -2),
)

# fundamental by the two defining conditions but missing from the usual list
UNLISTED_MULTIPLETS = (multiplet(1, 1, 1, 1), multiplet(1, 1, 1, -1), multiplet(1, 1, 2, 0))

# listed, but Y equals 2 only on layer 0 of I(0,0;0;2), where the module is trivial
OUT_OF_REACH_MULTIPLETS = (multiplet(1, 1, 0, 2),)

# I(0,0;1;-1), I(1,0;0;2/3), I(0,0;0;2) and I(0,0;0;-2)
DEGENERATE_SUM = (Node('A', 0, 1), Node('A', 1, 0), Node('B', 0, 0), Node('C', 0, 0))


def exponentiates_to_k(p: int, q: int, r: int, y) -> bool:
    three_y = 3 * Fraction(y)
    if three_y.denominator != 1:
        return False
    return (2 * (p - q) + 3 * r - int(three_y)) % 6 == 0


def is_fundamental(m: Multiplet) -> bool:
    if not exponentiates_to_k(*m):
        return False
    if (m.p, m.q) not in FUNDAMENTAL_SL3:
        return False
    return all(abs(c) <= 1 for c in m.charges)


def enumerate_fundamental() -> List[Multiplet]:
    """Every fundamental multiplet. A charge bound of 1 forces r <= 2 and |y| <= 2."""
    found = []
    for p, q in FUNDAMENTAL_SL3:
        for r in range(3):
            for three_y in range(-6, 7):
                m = multiplet(p, q, r, Fraction(three_y, 3))
                if is_fundamental(m):
                    found.append(m)
    logging.info(f"Found {len(found)} fundamental multiplets")
    return found


def degenerate_labels_exponentiate(bound: int = 10) -> List[Tuple[str, int, int, bool]]:
    """(series, p or q, r, passes) for every degenerate label with parameters up to ``bound``."""
    rows = []
    for series in SERIES:
        for a in range(bound + 1):
            for r in range(bound + 1):
                label = ModuleLabel(series, a, r)
                rows.append((series, a, r, exponentiates_to_k(*label.weight)))
    return rows


class ScanResult(NamedTuple):
    truncation: int
    counts: Counter
    per_module: Dict[Node, Counter]

    def multiplicity(self, m: Multiplet) -> int:
        return self.counts.get(m, 0)

    def missing(self, wanted: Iterable[Multiplet]) -> List[Multiplet]:
        return [m for m in wanted if not self.counts.get(m)]

    def repeated(self) -> List[Multiplet]:
        return sorted(m for m, k in self.counts.items() if k > 1)


def scan_degenerate_sum(truncation: int) -> ScanResult:
    """Fundamental multiplets inside the four degenerate modules, layer by layer up to ``truncation``."""
    total: Counter = Counter()
    per_module: Dict[Node, Counter] = {}
    for node in DEGENERATE_SUM:
        pieces = irreducible_graded_pieces(node, truncation)
        found: Counter = Counter()
        for j, weights in pieces.weights.items():
            if not weights:
                continue
            for (p, q, r, y), k in g0_decompose(weights).items():
                m = multiplet(p, q, r, y)
                if is_fundamental(m):
                    found[m] += k
        per_module[node] = found
        total.update(found)
        logging.info(f"{tuple(node)}: {sum(found.values())} fundamental multiplets up to layer {truncation}")
    return ScanResult(truncation, total, per_module)
