"""Syzygy ideal, minimal graded free resolution, Betti tables and Hilbert data of the invariant ring over S."""

from __future__ import annotations

from collections import Counter
from collections.abc import Callable, Sequence
from dataclasses import dataclass
import itertools
import logging

from .algebra import DenseMatrix, EchelonSpace, rank
from .errors import BoundViolationError, IncompleteResolutionError, UsageError
from .groebner import (
    FreeModule,
    GroebnerBasis,
    column_degree,
    elimination_basis,
    normal_form,
    syzygies,
)
from .invariants import HilbertIdealData, InvariantGeneratorSet
from .polyring import GradedRingSpec, Monomial, Polynomial, RationalFunction, rational_function_normalize, substitute

_LOGGER: logging.Logger = logging.getLogger(__name__)

Column = tuple[Polynomial, ...]


def degree_sum_cap(degrees: Sequence[int], s: int, i: int) -> int:
    """d_1 + ... + d_{s+i} - s, the proven degree cap for the i-th syzygies."""
    return sum(degrees[: s + i]) - s


@dataclass(frozen=True)
class SyzygyIdeal:
    """J, the kernel of S -> R, x_i -> f_i."""

    ring: GradedRingSpec
    basis: GroebnerBasis
    minimal_generators: tuple[Polynomial, ...]
    minimal_generator_degrees: tuple[int, ...]
    krull_dimension: int

    @property
    def beta1(self) -> int:
        """Largest degree of a minimal relation, 0 for J = 0."""
        return max(self.minimal_generator_degrees, default=0)

    def is_zero(self) -> bool:
        """Check whether the generators are algebraically independent."""
        return not self.basis.elements


@dataclass(frozen=True)
class GradedMap:
    """Matrix over S between graded free modules, stored column by column."""

    source_degrees: tuple[int, ...]
    target_degrees: tuple[int, ...]
    columns: tuple[Column, ...]

    def entry(self, row: int, col: int) -> Polynomial:
        """Entry in the given row and column."""
        return self.columns[col][row]

    def has_constant_entries(self) -> bool:
        """Check for nonzero scalar entries."""
        return any(entry.is_constant() for column in self.columns for entry in column)

    def compose(self, after: GradedMap) -> list[Column]:
        """Columns of self o after."""
        result = []
        for column in after.columns:
            image = [column[0].ring.zero() for _ in self.target_degrees] if column else []
            for k, coeff in enumerate(column):
                if coeff:
                    image = [acc + coeff * entry for acc, entry in zip(image, self.columns[k])]
            result.append(tuple(image))
        return result


@dataclass(frozen=True)
class ResolutionData:
    """Maps F_k -> ... -> F_1 -> F_0 = S; maps[i-1] is the map out of F_i."""

    ring: GradedRingSpec
    maps: tuple[GradedMap, ...]
    module_degrees: tuple[tuple[int, ...], ...]

    @property
    def length(self) -> int:
        """Index of the last nonzero free module."""
        return len(self.maps)

    def is_complex(self) -> bool:
        """Check that consecutive maps compose to zero."""
        for first, second in zip(self.maps, self.maps[1:]):
            if any(entry for column in first.compose(second) for entry in column):
                return False
        return True

    def is_minimal(self) -> bool:
        """Check that no map has a nonzero scalar entry."""
        return not any(m.has_constant_entries() for m in self.maps)


@dataclass(frozen=True)
class BettiTable:
    """Graded Betti numbers beta_{i,j} of R over S."""

    entries: tuple[tuple[int, int, int], ...]
    length: int | None  # None when the resolution was truncated
    complete: bool = True

    @classmethod
    def from_degrees(cls, module_degrees: Sequence[Sequence[int]], complete: bool = True) -> BettiTable:
        """Count the generator degrees of each free module."""
        triples = []
        for i, degrees in enumerate(module_degrees):
            triples.extend((i, j, count) for j, count in sorted(Counter(degrees).items()))
        length = max((i for i, _, _ in triples), default=0) if complete else None
        return cls(tuple(triples), length, complete)

    def as_dict(self) -> dict[tuple[int, int], int]:
        """Map (i, j) to beta_{i,j}."""
        return {(i, j): count for i, j, count in self.entries}

    def get(self, i: int, j: int) -> int:
        """beta_{i,j}, 0 when absent."""
        return self.as_dict().get((i, j), 0)

    def rank(self, i: int) -> int:
        """Rank of F_i."""
        return sum(count for k, _, count in self.entries if k == i)

    def max_degree(self, i: int) -> int | None:
        """beta^i, the largest j with beta_{i,j} != 0, None if F_i = 0."""
        return max((j for k, j, _ in self.entries if k == i), default=None)

    @property
    def homological_degrees(self) -> list[int]:
        """Indices i with F_i != 0."""
        return sorted({i for i, _, _ in self.entries})


@dataclass(frozen=True)
class HilbertData:
    """Hilbert series H(R,t) and a-invariant."""

    series: RationalFunction
    a_invariant: int | None


def select_minimal(module: FreeModule, columns: Sequence[Column]) -> list[Column]:
    """Minimal generating subset of homogeneous columns, chosen degreewise.

    A column of degree d is kept when it is not in the span of the degree d part of
    the submodule generated by the columns kept in lower degrees and those kept
    before it in degree d.
    """
    ring = module.ring
    indexed = sorted(enumerate(columns), key=lambda item: (column_degree(item[1], module), item[0]))
    kept: list[tuple[int, Column]] = []
    current = None
    space = None
    for _, column in indexed:
        degree = column_degree(column, module)
        if degree != current:
            current = degree
            space = EchelonSpace(sort_key=module.term_key)
            for lower_degree, lower in kept:
                for exps in ring.monomials_of_degree(degree - lower_degree):
                    if not any(exps):
                        continue
                    multiple = [entry.mul_term(exps, ring.field.one) for entry in lower]
                    space.add(module.vector(multiple))
        if space.add(module.vector(column)):
            kept.append((degree, column))
    return [column for _, column in kept]


def minimal_relations(basis: GroebnerBasis) -> list[Polynomial]:
    """Minimal generating subset of a homogeneous ideal basis, via dim (J / nJ)_d per degree."""
    return [column[0] for column in select_minimal(FreeModule(basis.ring), [(h,) for h in basis.elements])]


def minimal_generator_degrees(J: SyzygyIdeal) -> tuple[int, ...]:
    """Degrees of a minimal generating set of J, descending."""
    return tuple(sorted((h.homogeneous_degree() for h in minimal_relations(J.basis)), reverse=True))


def relations_vanish(gens: InvariantGeneratorSet, relations: Sequence[Polynomial]) -> bool:
    """Check that every relation maps to zero under x_i -> f_i."""
    return all(not substitute(h, gens.generators, target=gens.ring) for h in relations)


def syzygy_ideal(
    gens: InvariantGeneratorSet,
    interrupt: Callable[[], None] | None = None,
) -> SyzygyIdeal:
    """Relations among the generators, by eliminating y from (x_i - f_i(y))."""
    T = gens.ring
    S = GradedRingSpec.weighted(gens.degrees, T.field)
    E = T.join(S)
    n = T.nvars
    ideal = [E.gen(n + i) - f.embed(E, 0) for i, f in enumerate(gens.generators)]
    basis = elimination_basis(ideal, n, E.order, interrupt) if ideal else GroebnerBasis(S, S.order, ())
    if not relations_vanish(gens, basis.elements):
        raise BoundViolationError("A relation of J does not vanish on the generators")
    minimal = minimal_relations(basis)
    degrees = tuple(sorted((h.homogeneous_degree() for h in minimal), reverse=True))
    if degrees and degrees[0] > degree_sum_cap(gens.degrees, n, 1) and n + 1 <= gens.r:
        raise BoundViolationError(
            f"Relation of degree {degrees[0]} exceeds the proven cap {degree_sum_cap(gens.degrees, n, 1)}"
        )
    _LOGGER.debug("J has a Groebner basis of %s elements, minimal degrees %s", len(basis), degrees)
    return SyzygyIdeal(S, basis, tuple(minimal), degrees, n)


def _columns_to_rows(m: GradedMap) -> list[list[Polynomial]]:
    return [[m.columns[c][r] for c in range(len(m.columns))] for r in range(len(m.target_degrees))]


def _rows_to_map(rows: list[list[Polynomial]], source: list[int], target: list[int]) -> GradedMap:
    columns = tuple(tuple(rows[r][c] for r in range(len(target))) for c in range(len(source)))
    return GradedMap(tuple(source), tuple(target), columns)


def minimalize(maps: Sequence[GradedMap], module_degrees: Sequence[Sequence[int]]) -> tuple[list[GradedMap], list[tuple[int, ...]]]:
    """Prune a graded free resolution to a minimal one by cancelling scalar entries.

    A unit c at row a, column b of the map out of F_t splits off e_b of F_t with
    e_a of F_{t-1}: the map is updated by m[k][j] -= m[k][b] * m[a][j] / c, column a
    of the previous map and row b of the next map are dropped.
    """
    mats = [_columns_to_rows(m) for m in maps]
    degrees = [list(d) for d in module_degrees]
    while True:
        hit = next(
            (
                (t, a, b)
                for t, rows in enumerate(mats)
                for a, row in enumerate(rows)
                for b, entry in enumerate(row)
                if entry.is_constant()
            ),
            None,
        )
        if hit is None:
            break
        t, a, b = hit
        rows = mats[t]
        c = rows[a][b].lead_coefficient
        updated = []
        for k, row in enumerate(rows):
            if k == a:
                continue
            factor = row[b]
            updated.append(
                [entry - factor * rows[a][j].scale(1 / c) if factor else entry for j, entry in enumerate(row) if j != b]
            )
        mats[t] = updated
        if t > 0:
            mats[t - 1] = [[entry for j, entry in enumerate(row) if j != a] for row in mats[t - 1]]
        if t + 1 < len(mats):
            mats[t + 1] = [row for k, row in enumerate(mats[t + 1]) if k != b]
        degrees[t].pop(a)
        degrees[t + 1].pop(b)
        _LOGGER.debug("Cancelled a unit entry of the map out of F_%s", t + 1)
    while len(degrees) > 1 and not degrees[-1]:
        degrees.pop()
    mats = mats[: len(degrees) - 1]
    result = [_rows_to_map(rows, degrees[t + 1], degrees[t]) for t, rows in enumerate(mats)]
    return result, [tuple(d) for d in degrees]


def betti_table(
    gens: InvariantGeneratorSet,
    J: SyzygyIdeal,
    i_max: int,
    interrupt: Callable[[], None] | None = None,
) -> tuple[BettiTable, ResolutionData]:
    """Resolve R = S/J by iterated syzygies and read off the graded Betti numbers.

    Stops after the map out of F_{i_max}; the table is marked incomplete when
    F_{i_max + 1} would be nonzero.
    """
    if i_max < 1:
        raise UsageError(f"i_max must be at least 1, got {i_max}")
    S, s, r = J.ring, J.krull_dimension, gens.r
    target = FreeModule(S)
    columns: list[Column] = [(h,) for h in J.minimal_generators]
    maps: list[GradedMap] = []
    module_degrees: list[tuple[int, ...]] = [(0,)]
    i = 1
    while columns:
        source_degrees = tuple(column_degree(column, target) for column in columns)
        if s + i <= r and max(source_degrees) > degree_sum_cap(gens.degrees, s, i):
            raise BoundViolationError(
                f"Syzygy of degree {max(source_degrees)} in F_{i} exceeds the proven cap "
                f"{degree_sum_cap(gens.degrees, s, i)}"
            )
        maps.append(GradedMap(source_degrees, target.shifts, tuple(columns)))
        module_degrees.append(source_degrees)
        source, syz = syzygies(columns, target, interrupt)
        columns = select_minimal(source, syz)
        _LOGGER.debug("F_%s has degrees %s, %s minimal syzygies", i, source_degrees, len(columns))
        target = source
        if i >= i_max:
            break
        i += 1
    complete = not columns
    pruned, degrees = minimalize(maps, module_degrees)
    resolution = ResolutionData(S, tuple(pruned), tuple(degrees))
    return BettiTable.from_degrees(degrees, complete), resolution


def hilbert_series_from_betti(table: BettiTable, degrees: Sequence[int]) -> HilbertData:
    """H(R,t) = sum (-1)^i beta_{i,j} t^j / prod (1 - t^d_i), with its degree a(R)."""
    if not table.complete:
        raise IncompleteResolutionError("Hilbert series needs the full resolution")
    top = max((j for _, j, _ in table.entries), default=0)
    numerator = [0] * (top + 1)
    for i, j, count in table.entries:
        numerator[j] += (-1) ** i * count
    denominator = [1]
    for d in degrees:
        shifted = [0] * d + denominator
        denominator = [a - b for a, b in itertools.zip_longest(denominator + [0] * d, shifted, fillvalue=0)]
    series = rational_function_normalize(RationalFunction.from_coefficients(numerator, denominator))
    return HilbertData(series, series.degree)


def regularity_hilbert_ideal(hd: HilbertIdealData) -> int:
    """reg(I) = reg(T/I) + 1, where reg(T/I) is the top degree of the finite length quotient."""
    top = max(hd.standard_monomials_by_degree, default=-1)
    value = top + 1
    if value != hd.tau:
        raise BoundViolationError(f"reg(I) = {value} differs from tau = {hd.tau}")
    return value


def first_syzygies_over_T(
    gens: InvariantGeneratorSet,
    tau_value: int | None = None,
    interrupt: Callable[[], None] | None = None,
) -> tuple[int, ...]:
    """Minimal generator degrees of U = {w : sum w_i f_i = 0} inside the sum of T(-d_i)."""
    if not gens.generators:
        return ()
    target = FreeModule(gens.ring)
    source, syz = syzygies([(f,) for f in gens.generators], target, interrupt)
    degrees = tuple(sorted((column_degree(c, source) for c in select_minimal(source, syz)), reverse=True))
    if tau_value is not None and degrees and degrees[0] > tau_value + 1:
        raise BoundViolationError(f"U has a generator of degree {degrees[0]} > tau + 1 = {tau_value + 1}")
    return degrees


def _standard_basis(J: SyzygyIdeal, degree: int) -> list[Monomial]:
    leads = J.basis.lead_monomials()
    return [
        m
        for m in J.ring.monomials_of_degree(degree)
        if not any(all(a <= b for a, b in zip(lead, m)) for lead in leads)
    ]


def koszul_betti_numbers(J: SyzygyIdeal, max_degree: int) -> dict[tuple[int, int], int]:
    """beta_{i,j} for j <= max_degree from the Koszul complex of the variables of S over R = S/J.

    Independent of the resolution: only normal forms modulo J and ranks of dense matrices.
    """
    S = J.ring
    r = S.nvars
    weights = S.weights
    bases: dict[int, list[Monomial]] = {}

    def basis(e: int) -> list[Monomial]:
        if e not in bases:
            bases[e] = _standard_basis(J, e) if e >= 0 else []
        return bases[e]

    reduced: dict[tuple[int, Monomial], Polynomial] = {}

    def times_variable(l: int, m: Monomial) -> Polynomial:
        if (l, m) not in reduced:
            up = m[:l] + (m[l] + 1,) + m[l + 1 :]
            reduced[(l, m)] = normal_form(S.monomial(up), J.basis)
        return reduced[(l, m)]

    def chain_basis(i: int, j: int) -> list[tuple[tuple[int, ...], Monomial]]:
        return [
            (subset, m)
            for subset in itertools.combinations(range(r), i)
            for m in basis(j - sum(weights[l] for l in subset))
        ]

    def differential_rank(i: int, j: int) -> int:
        if i < 1 or i > r:
            return 0
        source = chain_basis(i, j)
        target = chain_basis(i - 1, j)
        if not source or not target:
            return 0
        index = {element: k for k, element in enumerate(target)}
        columns = []
        for subset, m in source:
            column = [S.field.zero] * len(target)
            for p, l in enumerate(subset):
                rest = subset[:p] + subset[p + 1 :]
                sign = -1 if p % 2 else 1
                for exps, coeff in times_variable(l, m).items():
                    column[index[(rest, exps)]] += sign * coeff
            columns.append(column)
        return rank(DenseMatrix.from_columns(S.field, columns, len(target)))

    result = {}
    for j in range(max_degree + 1):
        for i in range(r + 1):
            size = len(chain_basis(i, j))
            if not size:
                continue
            value = size - differential_rank(i, j) - differential_rank(i + 1, j)
            if value:
                result[(i, j)] = value
    return result
