"""
Exact sparse linear algebra over QQ.

Vectors are plain dicts ``key -> Fraction`` with zero entries dropped; keys are
whatever indexes the ambient space (basis indices, PBW monomials, module
monomials).  Row reduction is delegated to sympy's sparse domain matrices.
"""

from fractions import Fraction
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.matrices.sdm import SDM

Vector = Dict[Hashable, Fraction]


# ------------------------------------------------------------------
# Scalars and sparse vectors
# ------------------------------------------------------------------

def to_fraction(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


def to_qq(x):
    x = Fraction(x)
    return QQ(x.numerator, x.denominator)


def add_into(acc: Vector, vec: Vector, scale=1) -> Vector:
    """acc += scale * vec, in place; returns acc."""
    if scale == 0:
        return acc
    for key, value in vec.items():
        new = acc.get(key, 0) + scale * value
        if new:
            acc[key] = new
        else:
            acc.pop(key, None)
    return acc


def scaled(vec: Vector, scale) -> Vector:
    if scale == 0:
        return {}
    return {key: scale * value for key, value in vec.items()}


def combine(*pairs: Tuple[object, Vector]) -> Vector:
    out: Vector = {}
    for scale, vec in pairs:
        add_into(out, vec, scale)
    return out


def dot(u: Vector, v: Vector) -> Fraction:
    if len(u) > len(v):
        u, v = v, u
    return sum((value * v[key] for key, value in u.items() if key in v), Fraction(0))


# ------------------------------------------------------------------
# Row reduction
# ------------------------------------------------------------------

def _sdm(rows: Sequence[Vector], position: Dict[Hashable, int]) -> SDM:
    data = {}
    for i, row in enumerate(rows):
        entries = {position[key]: to_qq(value) for key, value in row.items() if value}
        if entries:
            data[i] = entries
    return SDM(data, (len(rows), len(position)), QQ)


def rref(rows: Sequence[Vector], column_order: Sequence[Hashable]) -> List[Tuple[Hashable, Vector]]:
    """
    Reduced row echelon form of ``rows``.

    Columns earlier in ``column_order`` are preferred as pivots.  Returns the
    nonzero rows as ``(pivot_key, row)`` pairs with ``row[pivot_key] == 1``.
    """
    position = {key: i for i, key in enumerate(column_order)}
    reduced, _ = _sdm(rows, position).rref()
    out = []
    for entries in reduced.values():
        if not entries:
            continue
        pivot = min(entries)
        row = {column_order[j]: to_fraction(value) for j, value in entries.items() if value}
        out.append((column_order[pivot], row))
    out.sort(key=lambda item: position[item[0]])
    return out


class EchelonBasis:
    """
    A fixed row-echelon basis of a subspace, used as a canonical reducer.

    ``reduce(v)`` returns the unique representative of ``v`` modulo the span
    whose support avoids every pivot column.
    """

    def __init__(self, rows: Iterable[Vector], column_order: Optional[Sequence[Hashable]] = None):
        rows = [row for row in rows if row]
        if column_order is None:
            column_order = sorted({key for row in rows for key in row})
        self.column_order = list(column_order)
        self._position = {key: i for i, key in enumerate(self.column_order)}
        missing = {key for row in rows for key in row if key not in self._position}
        if missing:
            raise KeyError(f"row entries outside the column set: {sorted(map(repr, missing))[:5]}")
        self.rows: Dict[Hashable, Vector] = dict(rref(rows, self.column_order)) if rows else {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> List[Hashable]:
        return sorted(self.rows, key=self._position.__getitem__)

    def reduce(self, vec: Vector) -> Vector:
        out = dict(vec)
        for key in [k for k in vec if k in self.rows]:
            add_into(out, self.rows[key], -vec[key])
        return out

    def contains(self, vec: Vector) -> bool:
        return not self.reduce(vec)


def nullspace(rows: Sequence[Vector], columns: Sequence[Hashable]) -> List[Vector]:
    """Basis of {x : row · x = 0 for every row}, one vector per free column."""
    reduced = rref(rows, columns) if rows else []
    pivots = {pivot for pivot, _ in reduced}
    basis = []
    for free in columns:
        if free in pivots:
            continue
        vec = {free: Fraction(1)}
        for pivot, row in reduced:
            coeff = row.get(free)
            if coeff:
                vec[pivot] = -coeff
        basis.append(vec)
    return basis


def span_rank(rows: Sequence[Vector]) -> int:
    rows = [row for row in rows if row]
    if not rows:
        return 0
    columns = sorted({key for row in rows for key in row}, key=repr)
    return len(rref(rows, columns))


class SpanCoordinates:
    """
    Coordinates with respect to a linearly independent family of vectors.

    Built once by reducing the family augmented with an identity block.
    """

    _TAG = "__coordinate__"

    def __init__(self, basis: Sequence[Vector]):
        self.size = len(basis)
        data_columns = sorted({key for vec in basis for key in vec}, key=repr)
        tags = [(self._TAG, i) for i in range(self.size)]
        augmented = []
        for i, vec in enumerate(basis):
            row = dict(vec)
            row[tags[i]] = Fraction(1)
            augmented.append(row)
        reduced = rref(augmented, data_columns + tags)
        self._rows = {}
        for pivot, row in reduced:
            if isinstance(pivot, tuple) and len(pivot) == 2 and pivot[0] == self._TAG:
                raise ValueError("family is linearly dependent")
            data = {k: v for k, v in row.items() if not (isinstance(k, tuple) and len(k) == 2 and k[0] == self._TAG)}
            coords = {k[1]: v for k, v in row.items() if isinstance(k, tuple) and len(k) == 2 and k[0] == self._TAG}
            self._rows[pivot] = (data, coords)

    def coordinates(self, vec: Vector) -> Optional[Dict[int, Fraction]]:
        """Coefficients c with vec = Σ c_i basis_i, or None when vec is outside the span."""
        residual = dict(vec)
        coords: Dict[int, Fraction] = {}
        for key in [k for k in vec if k in self._rows]:
            data, tag_part = self._rows[key]
            value = vec[key]
            add_into(residual, data, -value)
            add_into(coords, tag_part, value)
        if residual:
            return None
        return coords
