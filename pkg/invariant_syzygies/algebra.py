"""Exact field arithmetic and dense linear algebra.

Rationals are ``fractions.Fraction`` values, prime field residues are
``PrimeFieldElement`` values. Both support the ordinary arithmetic operators,
so everything above this module is written once for both kinds of field.
"""

from __future__ import annotations

from collections.abc import Callable, Hashable, Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
import logging
from typing import NamedTuple, Union

import sympy as sp

from .errors import RingMismatchError, UsageError
from .types import FieldKind

_LOGGER: logging.Logger = logging.getLogger(__name__)


class PrimeFieldElement:
    """Residue class modulo a prime p, stored in [0, p)."""

    __slots__ = ("p", "value")

    def __init__(self, value: int, p: int) -> None:
        """Initialize."""
        self.p: int = p
        self.value: int = value % p

    def _coerce(self, other) -> int | None:
        if isinstance(other, PrimeFieldElement):
            if other.p != self.p:
                raise RingMismatchError(f"Residues modulo {self.p} and {other.p} cannot be combined")
            return other.value
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p) % self.p
        return None

    def __add__(self, other):
        value = self._coerce(other)
        if value is None:
            return NotImplemented
        return PrimeFieldElement(self.value + value, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        value = self._coerce(other)
        if value is None:
            return NotImplemented
        return PrimeFieldElement(self.value - value, self.p)

    def __rsub__(self, other):
        value = self._coerce(other)
        if value is None:
            return NotImplemented
        return PrimeFieldElement(value - self.value, self.p)

    def __mul__(self, other):
        value = self._coerce(other)
        if value is None:
            return NotImplemented
        return PrimeFieldElement(self.value * value, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        value = self._coerce(other)
        if value is None:
            return NotImplemented
        if value == 0:
            raise ZeroDivisionError(f"Division by zero modulo {self.p}")
        return PrimeFieldElement(self.value * pow(value, -1, self.p), self.p)

    def __rtruediv__(self, other):
        value = self._coerce(other)
        if value is None:
            return NotImplemented
        if self.value == 0:
            raise ZeroDivisionError(f"Division by zero modulo {self.p}")
        return PrimeFieldElement(value * pow(self.value, -1, self.p), self.p)

    def __neg__(self):
        return PrimeFieldElement(-self.value, self.p)

    def __pos__(self):
        return self

    def __pow__(self, exponent: int):
        if exponent < 0:
            if self.value == 0:
                raise ZeroDivisionError(f"Division by zero modulo {self.p}")
            return PrimeFieldElement(pow(pow(self.value, -1, self.p), -exponent, self.p), self.p)
        return PrimeFieldElement(pow(self.value, exponent, self.p), self.p)

    def __eq__(self, other) -> bool:
        value = self._coerce(other) if isinstance(other, (int, Fraction, PrimeFieldElement)) else None
        if value is None:
            return NotImplemented
        return self.value == value

    def __hash__(self) -> int:
        return hash((self.value, self.p))

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"PrimeFieldElement({self.value}, {self.p})"

    def __str__(self) -> str:
        return str(self.value)


Scalar = Union[Fraction, PrimeFieldElement]


@dataclass(frozen=True)
class FieldSpec:
    """The base field K: the rationals or a prime field."""

    kind: FieldKind = FieldKind.RATIONALS
    characteristic: int = 0

    def __post_init__(self) -> None:
        """Validate the characteristic against the field kind."""
        if self.kind == FieldKind.RATIONALS and self.characteristic != 0:
            raise UsageError("The rationals have characteristic 0")
        if self.kind == FieldKind.PRIME_FIELD and not sp.isprime(self.characteristic):
            raise UsageError(f"Prime field needs a prime characteristic, got {self.characteristic}")

    @classmethod
    def rationals(cls) -> FieldSpec:
        """Return the field of rational numbers."""
        return cls(FieldKind.RATIONALS, 0)

    @classmethod
    def prime(cls, p: int) -> FieldSpec:
        """Return the prime field with p elements."""
        return cls(FieldKind.PRIME_FIELD, int(p))

    @property
    def zero(self) -> Scalar:
        """Additive identity."""
        return self.element(0)

    @property
    def one(self) -> Scalar:
        """Multiplicative identity."""
        return self.element(1)

    def element(self, value: int | str | Fraction | PrimeFieldElement) -> Scalar:
        """Convert an integer, an 'a/b' string or a fraction into a field element."""
        if isinstance(value, PrimeFieldElement):
            if self.kind != FieldKind.PRIME_FIELD or value.p != self.characteristic:
                raise RingMismatchError(f"{value!r} is not an element of {self}")
            return value
        if isinstance(value, str):
            try:
                value = Fraction(value.strip())
            except ValueError as err:
                raise UsageError(f"Not a field element: {value!r}") from err
        if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
            raise UsageError(f"Not a field element: {value!r}")
        if self.kind == FieldKind.RATIONALS:
            return Fraction(value)
        value = Fraction(value)
        if value.denominator % self.characteristic == 0:
            raise UsageError(f"{value} has no residue modulo {self.characteristic}")
        return PrimeFieldElement(
            value.numerator * pow(value.denominator, -1, self.characteristic),
            self.characteristic,
        )

    def divides_order(self, order: int) -> bool:
        """Check whether the characteristic divides a group order (the modular case)."""
        return self.characteristic != 0 and order % self.characteristic == 0

    def element_of_order(self, m: int) -> Scalar | None:
        """Return the smallest element of multiplicative order exactly m, if one exists."""
        if m < 1:
            return None
        if self.kind == FieldKind.RATIONALS:
            return {1: self.one, 2: self.element(-1)}.get(m)
        p = self.characteristic
        if (p - 1) % m:
            return None
        for candidate in range(1, p):
            if pow(candidate, m, p) == 1 and all(pow(candidate, k, p) != 1 for k in range(1, m)):
                return self.element(candidate)
        return None

    def __str__(self) -> str:
        if self.kind == FieldKind.RATIONALS:
            return "QQ"
        return f"GF({self.characteristic})"

    def to_dict(self) -> dict:
        """Return the JSON form used in spec files and reports."""
        if self.kind == FieldKind.RATIONALS:
            return {"type": FieldKind.RATIONALS.value}
        return {"type": FieldKind.PRIME_FIELD.value, "p": self.characteristic}


def scalar_to_json(value: Scalar) -> int | str:
    """Render a scalar as an integer or an 'a/b' string."""
    if isinstance(value, PrimeFieldElement):
        return value.value
    if value.denominator == 1:
        return value.numerator
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class DenseMatrix:
    """Matrix of scalars over one field, stored row by row."""

    field: FieldSpec
    rows: int
    cols: int
    entries: tuple[tuple[Scalar, ...], ...]

    def __post_init__(self) -> None:
        """Validate the shape."""
        if len(self.entries) != self.rows or any(len(row) != self.cols for row in self.entries):
            raise RingMismatchError(f"Entries do not form a {self.rows}x{self.cols} matrix")

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence], cols: int | None = None) -> DenseMatrix:
        """Build a matrix from nested sequences of anything field.element accepts."""
        entries = tuple(tuple(field.element(x) for x in row) for row in rows)
        if cols is None:
            cols = len(entries[0]) if entries else 0
        return cls(field, len(entries), cols, entries)

    @classmethod
    def from_columns(cls, field: FieldSpec, columns: Sequence[Sequence], rows: int) -> DenseMatrix:
        """Build a matrix from its columns."""
        return cls.from_rows(
            field, [[column[i] for column in columns] for i in range(rows)], len(columns)
        )

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> DenseMatrix:
        """Return the n x n identity matrix."""
        return cls.from_rows(field, [[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zero(cls, field: FieldSpec, rows: int, cols: int) -> DenseMatrix:
        """Return the zero matrix."""
        return cls.from_rows(field, [[0] * cols for _ in range(rows)], cols)

    def __getitem__(self, index: tuple[int, int]) -> Scalar:
        row, col = index
        return self.entries[row][col]

    def __matmul__(self, other: DenseMatrix) -> DenseMatrix:
        if self.field != other.field or self.cols != other.rows:
            raise RingMismatchError("Matrix product of incompatible operands")
        zero = self.field.zero
        entries = tuple(
            tuple(
                sum((self.entries[i][k] * other.entries[k][j] for k in range(self.cols)), zero)
                for j in range(other.cols)
            )
            for i in range(self.rows)
        )
        return DenseMatrix(self.field, self.rows, other.cols, entries)

    def column(self, j: int) -> tuple[Scalar, ...]:
        """Return column j."""
        return tuple(row[j] for row in self.entries)

    def transpose(self) -> DenseMatrix:
        """Return the transposed matrix."""
        entries = tuple(tuple(row[j] for row in self.entries) for j in range(self.cols))
        return DenseMatrix(self.field, self.cols, self.rows, entries)

    def is_zero(self) -> bool:
        """Check whether every entry vanishes."""
        return not any(any(row) for row in self.entries)

    def key(self) -> tuple:
        """Hashable canonical form, e.g. for group element lookup."""
        return tuple(tuple(int(x) if isinstance(x, PrimeFieldElement) else x for x in row) for row in self.entries)


class RowEchelon(NamedTuple):
    """Result of a reduced row echelon computation."""

    reduced: DenseMatrix
    pivot_columns: tuple[int, ...]
    rank: int


def rref(m: DenseMatrix) -> RowEchelon:
    """Return the reduced row echelon form, the pivot columns and the rank."""
    rows = [list(row) for row in m.entries]
    pivots: list[int] = []
    lead = 0
    for col in range(m.cols):
        pivot_row = next((r for r in range(lead, m.rows) if rows[r][col]), None)
        if pivot_row is None:
            continue
        rows[lead], rows[pivot_row] = rows[pivot_row], rows[lead]
        inverse = 1 / rows[lead][col]
        rows[lead] = [x * inverse for x in rows[lead]]
        for r in range(m.rows):
            factor = rows[r][col]
            if r != lead and factor:
                pivot_values = rows[lead]
                rows[r] = [x - factor * y for x, y in zip(rows[r], pivot_values)]
        pivots.append(col)
        lead += 1
        if lead == m.rows:
            break
    reduced = DenseMatrix(m.field, m.rows, m.cols, tuple(tuple(row) for row in rows))
    return RowEchelon(reduced, tuple(pivots), len(pivots))


def kernel_basis(m: DenseMatrix) -> DenseMatrix:
    """Return a matrix whose columns form the canonical basis of the right null space.

    Free variables are set to 1 one at a time in increasing column order.
    """
    reduced, pivots, rank = rref(m)
    free = [c for c in range(m.cols) if c not in pivots]
    columns = []
    for f in free:
        vector = [m.field.zero] * m.cols
        vector[f] = m.field.one
        for row, p in enumerate(pivots):
            vector[p] = -reduced.entries[row][f]
        columns.append(vector)
    return DenseMatrix.from_columns(m.field, columns, m.cols) if columns else DenseMatrix.zero(m.field, m.cols, 0)


def rank(m: DenseMatrix) -> int:
    """Return the rank."""
    return rref(m).rank


class EchelonSpace:
    """Incrementally maintained row echelon basis of a span of sparse vectors.

    Vectors are dictionaries from coordinate keys to nonzero scalars. The pivot
    of a stored row is its largest key under ``sort_key``; stored rows are monic.
    """

    def __init__(self, sort_key: Callable[[Hashable], object] | None = None) -> None:
        """Initialize."""
        self._sort_key = sort_key or (lambda key: key)
        self.rows: dict[Hashable, dict] = {}

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def rank(self) -> int:
        """Dimension of the span."""
        return len(self.rows)

    def _lead(self, vector: dict) -> Hashable:
        return max(vector, key=self._sort_key)

    def reduce(self, vector: dict) -> dict:
        """Reduce the vector until its leading key is not a pivot, or it vanishes."""
        work = {k: v for k, v in vector.items() if v}
        while work:
            lead = self._lead(work)
            row = self.rows.get(lead)
            if row is None:
                break
            factor = work[lead]
            for key, value in row.items():
                updated = work.get(key, 0) - factor * value
                if updated:
                    work[key] = updated
                else:
                    work.pop(key, None)
        return work

    def add(self, vector: dict) -> bool:
        """Add a vector to the span, return True if the rank grew."""
        reduced = self.reduce(vector)
        if not reduced:
            return False
        lead = self._lead(reduced)
        inverse = 1 / reduced[lead]
        self.rows[lead] = {k: v * inverse for k, v in reduced.items()}
        return True

    def extend(self, vectors: Iterable[dict]) -> int:
        """Add several vectors, return how many increased the rank."""
        return sum(1 for vector in vectors if self.add(vector))

    def contains(self, vector: dict) -> bool:
        """Check span membership."""
        return not self.reduce(vector)

    def reduced_basis(self) -> list[dict]:
        """Return the canonical reduced basis, ordered by decreasing pivot.

        Every pivot key appears in exactly one row, with coefficient 1.
        """
        pivots = sorted(self.rows, key=self._sort_key)
        reduced: dict[Hashable, dict] = {}
        for pivot in pivots:
            row = dict(self.rows[pivot])
            for lower in list(row):
                if lower != pivot and lower in reduced and row.get(lower):
                    factor = row[lower]
                    for key, value in reduced[lower].items():
                        updated = row.get(key, 0) - factor * value
                        if updated:
                            row[key] = updated
                        else:
                            row.pop(key, None)
            reduced[pivot] = row
        return [reduced[p] for p in reversed(pivots)]
