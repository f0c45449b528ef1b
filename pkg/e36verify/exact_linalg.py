"""
Exact linear algebra over Q and one-variable series arithmetic.

Matrices are stored sparsely and handed to sympy's ``SDM`` (sparse domain matrix over
``QQ``) for elimination. Every scalar that leaves this module is a ``fractions.Fraction``.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from sympy import QQ, Poly, Rational, symbols
from sympy.polys.matrices.sdm import SDM

from e36verify.exceptions import CompositionNotZero, PoleAtLimitPoint

Vector = Dict[int, Fraction]

t = symbols('t')


def to_fraction(value) -> Fraction:
    """Convert an int, Fraction, QQ element or sympy Rational to ``Fraction``."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if hasattr(value, 'p') and hasattr(value, 'q'):
        return Fraction(int(value.p), int(value.q))
    return Fraction(int(value.numerator), int(value.denominator))


def to_qq(value):
    value = to_fraction(value)
    return QQ(value.numerator, value.denominator)


def to_sympy(value) -> Rational:
    value = to_fraction(value)
    return Rational(value.numerator, value.denominator)


def clean_vector(vec: Mapping[int, Fraction]) -> Vector:
    return {k: Fraction(v) for k, v in vec.items() if v != 0}


@dataclass(frozen=True)
class SparseMatrix:
    rows: int
    cols: int
    entries: Mapping[Tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError(f"negative matrix shape {(self.rows, self.cols)}")
        cleaned = {}
        for (r, c), v in self.entries.items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise ValueError(f"entry {(r, c)} outside shape {(self.rows, self.cols)}")
            v = to_fraction(v)
            if v != 0:
                cleaned[(r, c)] = v
        object.__setattr__(self, 'entries', cleaned)

    @classmethod
    def from_columns(cls, columns: Sequence[Mapping[int, Fraction]], rows: int) -> 'SparseMatrix':
        entries = {}
        for c, col in enumerate(columns):
            for r, v in col.items():
                entries[(r, c)] = v
        return cls(rows, len(columns), entries)

    @classmethod
    def zero(cls, rows: int, cols: int) -> 'SparseMatrix':
        return cls(rows, cols, {})

    def columns(self) -> List[Vector]:
        cols: List[Vector] = [dict() for _ in range(self.cols)]
        for (r, c), v in self.entries.items():
            cols[c][r] = v
        return cols

    def is_zero(self) -> bool:
        return not self.entries

    def apply(self, vec: Mapping[int, Fraction]) -> Vector:
        out: Vector = {}
        by_col: Dict[int, List[Tuple[int, Fraction]]] = {}
        for (r, c), v in self.entries.items():
            by_col.setdefault(c, []).append((r, v))
        for c, x in vec.items():
            for r, v in by_col.get(c, ()):
                out[r] = out.get(r, Fraction(0)) + v * x
        return clean_vector(out)

    def matmul(self, other: 'SparseMatrix') -> 'SparseMatrix':
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {(self.rows, self.cols)} @ {(other.rows, other.cols)}")
        if not self.entries or not other.entries:
            return SparseMatrix.zero(self.rows, other.cols)
        product = self.to_sdm().matmul(other.to_sdm())
        return SparseMatrix.from_sdm(product)

    def to_sdm(self) -> SDM:
        data: Dict[int, Dict[int, object]] = {}
        for (r, c), v in self.entries.items():
            data.setdefault(r, {})[c] = to_qq(v)
        return SDM(data, (self.rows, self.cols), QQ)

    @classmethod
    def from_sdm(cls, mat: SDM) -> 'SparseMatrix':
        rows, cols = mat.shape
        entries = {}
        for r, row in mat.items():
            for c, v in row.items():
                entries[(r, c)] = to_fraction(v)
        return cls(rows, cols, entries)


def _rows_sdm(vectors: Sequence[Mapping[int, Fraction]], dim: int) -> SDM:
    data = {}
    for i, vec in enumerate(vectors):
        row = {k: to_qq(v) for k, v in vec.items() if v != 0}
        if row:
            data[i] = row
    return SDM(data, (len(vectors), dim), QQ)


def rank(M: SparseMatrix) -> int:
    if not M.entries:
        return 0
    _, _, pivots = M.to_sdm().rref_den()
    return len(pivots)


def rank_and_kernel(M: SparseMatrix) -> Tuple[int, List[Vector]]:
    """Rank of ``M`` and a basis of its right kernel (vectors of length ``M.cols``)."""
    if M.cols == 0:
        return 0, []
    if not M.entries:
        return 0, [{j: Fraction(1)} for j in range(M.cols)]
    null, _ = M.to_sdm().nullspace()
    kernel = [{c: to_fraction(v) for c, v in row.items()} for _, row in sorted(null.items())]
    r = M.cols - len(kernel)
    logging.debug(f"rank_and_kernel: shape {(M.rows, M.cols)}, rank {r}")
    return r, kernel


def kernel_basis(M: SparseMatrix) -> List[Vector]:
    return rank_and_kernel(M)[1]


def rank_of_vectors(vectors: Sequence[Mapping[int, Fraction]], dim: int) -> int:
    if not any(vectors):
        return 0
    _, _, pivots = _rows_sdm(vectors, dim).rref_den()
    return len(pivots)


def row_reduce(vectors: Sequence[Mapping[int, Fraction]], dim: int) -> Tuple[List[Vector], List[int]]:
    """Reduced echelon basis of the span of ``vectors`` together with its pivot columns."""
    if not any(vectors):
        return [], []
    reduced, pivots = _rows_sdm(vectors, dim).rref()
    basis = []
    for _, row in reduced.items():
        if row:
            basis.append({c: to_fraction(v) for c, v in row.items()})
    basis.sort(key=min)
    return basis, sorted(pivots)


def solve(M: SparseMatrix, b: Mapping[int, Fraction]) -> Optional[Vector]:
    """One exact solution x of M x = b, or None when b is not in the column space."""
    b = clean_vector(b)
    if not b:
        return {}
    if not M.entries:
        return None
    augmented = dict(M.entries)
    for r, v in b.items():
        augmented[(r, M.cols)] = v
    reduced, pivots = SparseMatrix(M.rows, M.cols + 1, augmented).to_sdm().rref()
    if M.cols in pivots:
        return None
    solution: Vector = {}
    for _, row in reduced.items():
        if not row:
            continue
        lead = min(row)
        value = row.get(M.cols)
        if value is not None:
            solution[lead] = to_fraction(value)
    return clean_vector(solution)


def in_span(vectors: Sequence[Mapping[int, Fraction]], target: Mapping[int, Fraction], dim: int) -> bool:
    return rank_of_vectors(list(vectors) + [target], dim) == rank_of_vectors(vectors, dim)


def homology_dimension(d_in: SparseMatrix, d_out: SparseMatrix) -> int:
    """dim ker(d_out) - rank(d_in) for a three-term complex."""
    if d_in.rows != d_out.cols:
        raise ValueError(f"d_in lands in dimension {d_in.rows}, d_out starts at {d_out.cols}")
    if d_in.cols and d_out.rows and not d_out.matmul(d_in).is_zero():
        raise CompositionNotZero("d_out . d_in is not zero")
    return (d_out.cols - rank(d_out)) - rank(d_in)


def subquotient_homology(top_in: Sequence[Vector], top: Sequence[Vector], sub: Sequence[Vector],
                         sub_out: Sequence[Vector], d_top: Sequence[Vector], dims: Tuple[int, int, int]) -> int:
    """Homology at P of a subquotient complex T/S.

    ``top`` spans T_P, ``sub`` spans S_P, ``top_in`` are the images under d of a spanning set of
    T at the previous position, ``d_top`` the images of ``top`` at the next position and
    ``sub_out`` a spanning set of S there. ``dims`` are the ambient dimensions
    (previous, current, next); only the current and next are used.
    """
    _, here, after = dims
    k = rank_of_vectors(top, here)
    s_here = rank_of_vectors(sub, here)
    s_after = rank_of_vectors(sub_out, after)
    ker_part = k - (rank_of_vectors(list(d_top) + list(sub_out), after) - s_after) - s_here
    img_part = rank_of_vectors(list(top_in) + list(sub), here) - s_here
    return ker_part - img_part


@dataclass(frozen=True)
class LaurentSeries:
    """Finite Laurent series in t, exact through ``order`` inclusive."""
    coefficients: Mapping[int, Fraction] = field(default_factory=dict)
    order: int = 0

    def __post_init__(self):
        cleaned = {int(k): to_fraction(v) for k, v in self.coefficients.items()
                   if k <= self.order and v != 0}
        object.__setattr__(self, 'coefficients', cleaned)

    def coefficient(self, k: int) -> Fraction:
        if k > self.order:
            raise ValueError(f"exponent {k} beyond truncation order {self.order}")
        return self.coefficients.get(k, Fraction(0))

    def __add__(self, other: 'LaurentSeries') -> 'LaurentSeries':
        out = dict(self.coefficients)
        for k, v in other.coefficients.items():
            out[k] = out.get(k, Fraction(0)) + v
        return LaurentSeries(out, min(self.order, other.order))

    def __neg__(self) -> 'LaurentSeries':
        return LaurentSeries({k: -v for k, v in self.coefficients.items()}, self.order)

    def __sub__(self, other: 'LaurentSeries') -> 'LaurentSeries':
        return self + (-other)

    def __mul__(self, other: 'LaurentSeries') -> 'LaurentSeries':
        low_self = min(self.coefficients, default=self.order)
        low_other = min(other.coefficients, default=other.order)
        order = min(self.order + low_other, other.order + low_self)
        out: Dict[int, Fraction] = {}
        for a, x in self.coefficients.items():
            for b, y in other.coefficients.items():
                if a + b <= order:
                    out[a + b] = out.get(a + b, Fraction(0)) + x * y
        return LaurentSeries(out, order)

    def as_list(self, start: int) -> List[Fraction]:
        return [self.coefficient(k) for k in range(start, self.order + 1)]


class RationalFunction:
    """Exact rational function t**shift * num(t) / den(t) with den(0) != 0 and den monic."""

    __slots__ = ('num', 'den', 'shift')

    def __init__(self, num, den=None, shift: int = 0):
        num = num if isinstance(num, Poly) else Poly(num, t, domain=QQ)
        den = Poly(1, t, domain=QQ) if den is None else (den if isinstance(den, Poly) else Poly(den, t, domain=QQ))
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        self.num, self.den, self.shift = self._normalize(num, den, shift)

    @staticmethod
    def _lowest_exponent(p: Poly) -> int:
        return min(m[0] for m in p.monoms())

    @classmethod
    def _normalize(cls, num: Poly, den: Poly, shift: int):
        if num.is_zero:
            return Poly(0, t, domain=QQ), Poly(1, t, domain=QQ), 0
        g = num.gcd(den)
        num, den = num.exquo(g), den.exquo(g)
        for which in ('num', 'den'):
            p = num if which == 'num' else den
            k = cls._lowest_exponent(p)
            if k:
                p = p.exquo(Poly(t ** k, t, domain=QQ))
                shift += k if which == 'num' else -k
                if which == 'num':
                    num = p
                else:
                    den = p
        lc = den.LC()
        return num.quo_ground(lc), den.monic(), shift

    @classmethod
    def constant(cls, c) -> 'RationalFunction':
        return cls(Poly(to_sympy(c), t, domain=QQ))

    @classmethod
    def t_power(cls, k: int, c=1) -> 'RationalFunction':
        return cls(Poly(to_sympy(c), t, domain=QQ), None, k)

    @classmethod
    def one_plus_t(cls, power: int) -> 'RationalFunction':
        base = Poly(1 + t, t, domain=QQ) ** abs(power)
        return cls(base) if power >= 0 else cls(Poly(1, t, domain=QQ), base)

    def is_zero(self) -> bool:
        return self.num.is_zero

    def _parts(self):
        if self.shift >= 0:
            return self.num * Poly(t ** self.shift, t, domain=QQ), self.den
        return self.num, self.den * Poly(t ** (-self.shift), t, domain=QQ)

    def __add__(self, other):
        other = _as_rf(other)
        a, b = self._parts()
        c, d = other._parts()
        return RationalFunction(a * d + c * b, b * d)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, self.shift)

    def __sub__(self, other):
        return self + (-_as_rf(other))

    def __rsub__(self, other):
        return _as_rf(other) - self

    def __mul__(self, other):
        other = _as_rf(other)
        return RationalFunction(self.num * other.num, self.den * other.den, self.shift + other.shift)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_rf(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num, self.shift - other.shift)

    def __pow__(self, k: int):
        result = RationalFunction.constant(1)
        base = self if k >= 0 else RationalFunction.constant(1) / self
        for _ in range(abs(k)):
            result = result * base
        return result

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            try:
                other = _as_rf(other)
            except TypeError:
                return NotImplemented
        return self.shift == other.shift and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((str(self.num.as_expr()), str(self.den.as_expr()), self.shift))

    def __repr__(self):
        return f"RationalFunction(t**{self.shift} * ({self.num.as_expr()}) / ({self.den.as_expr()}))"

    def substitute_inverse(self) -> 'RationalFunction':
        """The rational function t -> f(1/t)."""
        n, d = self.num.degree(), self.den.degree()
        num_rev = Poly(list(reversed(self.num.all_coeffs())), t, domain=QQ)
        den_rev = Poly(list(reversed(self.den.all_coeffs())), t, domain=QQ)
        return RationalFunction(num_rev, den_rev, d - n - self.shift)

    def value_at(self, point) -> Fraction:
        point = to_fraction(point)
        den_val = to_fraction(self.den.eval(to_sympy(point)))
        if den_val == 0:
            raise PoleAtLimitPoint(f"pole at t = {point}")
        if point == 0 and self.shift < 0:
            raise PoleAtLimitPoint("pole at t = 0")
        return to_fraction(self.num.eval(to_sympy(point))) / den_val * point ** self.shift


def _as_rf(value) -> RationalFunction:
    if isinstance(value, RationalFunction):
        return value
    if isinstance(value, (int, Fraction)):
        return RationalFunction.constant(value)
    raise TypeError(f"cannot combine RationalFunction with {type(value).__name__}")


def series_of(rf: RationalFunction, order: int) -> LaurentSeries:
    """Expansion of ``rf`` at t = 0 through t**order."""
    if rf.is_zero():
        return LaurentSeries({}, order)
    n = order - rf.shift
    if n < 0:
        return LaurentSeries({}, order)
    p = {m[0]: to_fraction(c) for m, c in rf.num.terms()}
    q = {m[0]: to_fraction(c) for m, c in rf.den.terms()}
    q0 = q[0]
    c: List[Fraction] = []
    for k in range(n + 1):
        acc = p.get(k, Fraction(0))
        for i, qi in q.items():
            if 0 < i <= k:
                acc -= qi * c[k - i]
        c.append(acc / q0)
    return LaurentSeries({k + rf.shift: v for k, v in enumerate(c)}, order)


CLEARING = RationalFunction(Poly((1 - t ** 2) ** 3, t, domain=QQ))


def cleared_value(rf: RationalFunction, point) -> Fraction:
    """Value of (1 - t^2)^3 * rf at ``point``."""
    if rf.is_zero():
        return Fraction(0)
    return (CLEARING * rf).value_at(point)


def size_limit(rf: RationalFunction) -> Fraction:
    """One quarter of the S(g_-2)-rank read off a character: 1/4 (1 - t^2)^3 rf at t = 1."""
    return cleared_value(rf, 1) / 4


def parity_sizes(rf: RationalFunction) -> Tuple[Fraction, Fraction]:
    """Sizes of the parts with even and odd t-exponent, from the cleared values at t = 1 and t = -1."""
    plus = cleared_value(rf, 1)
    minus = cleared_value(rf, -1)
    return (plus + minus) / 8, (plus - minus) / 8
