"""Buchberger engine for homogeneous ideals and submodules of graded free modules.

Ideals are handled as submodules of a free module of rank one, so normal forms,
reduced bases, elimination and syzygy computations all share one implementation.
Module terms are compared position over term: a lower component index is greater,
ties are broken by the ring's monomial order.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
import heapq
import logging
import math

from .algebra import Scalar
from .errors import GradingError, RingMismatchError
from .polyring import (
    GradedRingSpec,
    Monomial,
    MonomialOrder,
    Polynomial,
    monomial_divides,
    monomial_lcm,
    monomial_product,
    monomial_quotient,
)
from .types import FieldKind, OrderKind, WorkbenchDefaults

_LOGGER: logging.Logger = logging.getLogger(__name__)

# (component, exponents)
Term = tuple[int, Monomial]
Vector = dict[Term, Scalar]


@dataclass(frozen=True)
class FreeModule:
    """Graded free module S(-shift_0) + ... + S(-shift_q-1) over a ring."""

    ring: GradedRingSpec
    shifts: tuple[int, ...] = (0,)

    @property
    def rank(self) -> int:
        """Number of components."""
        return len(self.shifts)

    @property
    def is_ideal(self) -> bool:
        """Rank one free module without shift, i.e. the ring itself."""
        return self.shifts == (0,)

    def term_key(self, term: Term) -> tuple[int, ...]:
        """Sort key of a module term, larger is greater."""
        return (-term[0],) + self.ring.order.key(term[1])

    def term_degree(self, term: Term) -> int:
        """Degree of a module term including the component shift."""
        return self.shifts[term[0]] + self.ring.degree(term[1])

    def vector(self, column: Sequence[Polynomial]) -> Vector:
        """Convert a column of polynomials into a sparse vector."""
        if len(column) != self.rank:
            raise RingMismatchError(f"Column of length {len(column)} for a module of rank {self.rank}")
        vector: Vector = {}
        for comp, entry in enumerate(column):
            if entry.ring.variable_names != self.ring.variable_names or entry.ring.field != self.ring.field:
                raise RingMismatchError("Column entry from another ring")
            for exps, coeff in entry.items():
                vector[(comp, exps)] = coeff
        return vector

    def column(self, vector: Vector) -> tuple[Polynomial, ...]:
        """Convert a sparse vector back into a column of polynomials."""
        parts: list[dict[Monomial, Scalar]] = [{} for _ in self.shifts]
        for (comp, exps), coeff in vector.items():
            parts[comp][exps] = coeff
        return tuple(Polynomial(self.ring, part) for part in parts)

    def degree(self, vector: Vector) -> int | None:
        """Degree of a homogeneous nonzero vector, None otherwise."""
        degrees = {self.term_degree(term) for term in vector}
        return degrees.pop() if len(degrees) == 1 else None


def _neg(key: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(-x for x in key)


def _coprime(a: Monomial, b: Monomial) -> bool:
    return not any(x and y for x, y in zip(a, b))


def _normalize(vector: Vector, lead: Term, kind: FieldKind) -> Vector:
    """Content normalization over the rationals, monic over prime fields."""
    if kind == FieldKind.PRIME_FIELD:
        inverse = 1 / vector[lead]
        return {t: c * inverse for t, c in vector.items()}
    denominators = math.lcm(*(c.denominator for c in vector.values()))
    content = math.gcd(*(int(c * denominators) for c in vector.values()))
    factor = Fraction(denominators, content)
    if vector[lead] < 0:
        factor = -factor
    return {t: c * factor for t, c in vector.items()}


class _Buchberger:
    """Stateful Buchberger run: pair queue, Gebauer-Moeller update and reductions."""

    def __init__(self, module: FreeModule, interrupt: Callable[[], None] | None = None) -> None:
        self.module = module
        self.kind = module.ring.field.kind
        self.polys: list[Vector] = []
        self.leads: list[Term] = []
        self.active: dict[int, list[int]] = {}
        self.pairs: set[tuple[int, int]] = set()
        self.queue: list[tuple[int, tuple[int, ...], int, int]] = []
        self.interrupt = interrupt
        self.processed = 0

    @classmethod
    def from_basis(cls, module: FreeModule, vectors: Iterable[Vector]) -> _Buchberger:
        """Reducer over an existing basis, no pairs."""
        engine = cls(module)
        for vector in vectors:
            lead = engine.lead(vector)
            engine.polys.append(vector)
            engine.leads.append(lead)
            engine.active.setdefault(lead[0], []).append(len(engine.polys) - 1)
        return engine

    def lead(self, vector: Vector) -> Term:
        return max(vector, key=self.module.term_key)

    def _divisor(self, term: Term) -> int | None:
        for idx in self.active.get(term[0], ()):
            if monomial_divides(self.leads[idx][1], term[1]):
                return idx
        return None

    def reduce(self, vector: Vector) -> Vector:
        """Full normal form against the active elements."""
        key = self.module.term_key
        work = {t: c for t, c in vector.items() if c}
        heap = [(_neg(key(t)), t) for t in work]
        heapq.heapify(heap)
        result: Vector = {}
        while heap:
            _, term = heapq.heappop(heap)
            coeff = work.pop(term, None)
            if coeff is None:
                continue
            idx = self._divisor(term)
            if idx is None:
                result[term] = coeff
                continue
            reducer, lead = self.polys[idx], self.leads[idx]
            factor = coeff / reducer[lead]
            shift = monomial_quotient(term[1], lead[1])
            for (comp, exps), value in reducer.items():
                if (comp, exps) == lead:
                    continue
                target = (comp, monomial_product(exps, shift))
                updated = work.get(target, 0) - factor * value
                if updated:
                    if target not in work:
                        heapq.heappush(heap, (_neg(key(target)), target))
                    work[target] = updated
                else:
                    work.pop(target, None)
        return result

    def _spoly(self, i: int, j: int) -> Vector:
        (comp, a), (_, b) = self.leads[i], self.leads[j]
        lcm = monomial_lcm(a, b)
        result: Vector = {}
        for idx, exps, sign in ((i, a, 1), (j, b, -1)):
            vector = self.polys[idx]
            factor = sign / vector[self.leads[idx]]
            shift = monomial_quotient(lcm, exps)
            for (c, e), value in vector.items():
                target = (c, monomial_product(e, shift))
                updated = result.get(target, 0) + factor * value
                if updated:
                    result[target] = updated
                else:
                    result.pop(target, None)
        return result

    def _push_pair(self, i: int, j: int) -> None:
        comp = self.leads[i][0]
        term = (comp, monomial_lcm(self.leads[i][1], self.leads[j][1]))
        self.pairs.add((i, j))
        heapq.heappush(self.queue, (self.module.term_degree(term), self.module.term_key(term), i, j))

    def insert(self, vector: Vector) -> None:
        """Add a reduced nonzero vector and update the pair set."""
        if not vector:
            return
        lead = self.lead(vector)
        vector = _normalize(vector, lead, self.kind)
        h = len(self.polys)
        self.polys.append(vector)
        self.leads.append(lead)
        comp, lead_h = lead
        ideal = self.module.is_ideal
        same = list(self.active.get(comp, []))
        lcms = {g: monomial_lcm(self.leads[g][1], lead_h) for g in same}

        # chain criterion among the new pairs
        kept: list[int] = []
        for pos, g in enumerate(same):
            coprime = ideal and _coprime(self.leads[g][1], lead_h)
            others = same[pos + 1 :] + kept
            if coprime or not any(monomial_divides(lcms[o], lcms[g]) for o in others):
                kept.append(g)
        # chain criterion against old pairs
        for i, j in list(self.pairs):
            if self.leads[i][0] != comp:
                continue
            lcm = monomial_lcm(self.leads[i][1], self.leads[j][1])
            if (
                monomial_divides(lead_h, lcm)
                and monomial_lcm(self.leads[i][1], lead_h) != lcm
                and monomial_lcm(self.leads[j][1], lead_h) != lcm
            ):
                self.pairs.discard((i, j))
        # product criterion, only valid for ideals
        for g in kept:
            if not (ideal and _coprime(self.leads[g][1], lead_h)):
                self._push_pair(g, h)
        self.active[comp] = [g for g in same if not monomial_divides(lead_h, self.leads[g][1])] + [h]

    def run(self, vectors: Iterable[Vector]) -> list[Vector]:
        """Compute the reduced basis of the submodule spanned by the vectors."""
        inputs = [v for v in vectors if v]
        inputs.sort(key=lambda v: (max(self.module.term_degree(t) for t in v), self.module.term_key(self.lead(v))))
        for vector in inputs:
            self.insert(self.reduce(vector))
        while self.queue:
            _, _, i, j = heapq.heappop(self.queue)
            if (i, j) not in self.pairs:
                continue
            self.pairs.discard((i, j))
            self.processed += 1
            if self.interrupt and self.processed % WorkbenchDefaults.INTERRUPT_EVERY == 0:
                self.interrupt()
            self.insert(self.reduce(self._spoly(i, j)))
        basis = self.reduced_basis()
        _LOGGER.debug(
            "Buchberger finished: %s inputs, %s pairs reduced, %s basis elements",
            len(inputs),
            self.processed,
            len(basis),
        )
        return basis

    def reduced_basis(self) -> list[Vector]:
        """Inter-reduce the active elements and sort them ascending by leading term."""
        result = []
        for indices in self.active.values():
            for idx in indices:
                vector, lead = self.polys[idx], self.leads[idx]
                tail = self.reduce({t: c for t, c in vector.items() if t != lead})
                tail[lead] = vector[lead]
                result.append(_normalize(tail, lead, self.kind))
        result.sort(key=lambda v: self.module.term_key(self.lead(v)))
        return result


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis of a homogeneous ideal, sorted ascending by leading monomial."""

    ring: GradedRingSpec
    order: MonomialOrder
    elements: tuple[Polynomial, ...] = field(default_factory=tuple)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def lead_monomials(self) -> list[Monomial]:
        """Leading monomials of the basis elements."""
        return [f.lead_monomial for f in self.elements]

    def is_unit_ideal(self) -> bool:
        """Check whether the ideal is the whole ring."""
        return any(f.is_constant() for f in self.elements)

    def contains(self, f: Polynomial) -> bool:
        """Ideal membership."""
        return normal_form(f, self).is_zero()


def _ring_for(ring: GradedRingSpec, order: MonomialOrder | None) -> GradedRingSpec:
    if order is None or order == ring.order:
        return ring
    if order.weights != ring.weights:
        raise RingMismatchError("Monomial order weights do not match the ring")
    return ring.with_order(order.kind, order.block)


def _same_variables(a: GradedRingSpec, b: GradedRingSpec) -> bool:
    return a.variable_names == b.variable_names and a.weights == b.weights and a.field == b.field


def normal_form(f: Polynomial, gb: GroebnerBasis) -> Polynomial:
    """Remainder of f after full reduction by gb."""
    if not _same_variables(f.ring, gb.ring):
        raise RingMismatchError(f"{f.ring} is not the ring of the Groebner basis")
    module = FreeModule(gb.ring)
    engine = _Buchberger.from_basis(module, (module.vector((g,)) for g in gb.elements))
    return module.column(engine.reduce(module.vector((f.in_ring(gb.ring),))))[0]


def buchberger(
    generators: Sequence[Polynomial],
    order: MonomialOrder | None = None,
    *,
    ring: GradedRingSpec | None = None,
    interrupt: Callable[[], None] | None = None,
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by the polynomials."""
    if ring is None:
        if not generators:
            raise RingMismatchError("A ring is needed for an empty generator list")
        ring = generators[0].ring
    ring = _ring_for(ring, order)
    for g in generators:
        if not _same_variables(g.ring, ring):
            raise RingMismatchError("Generators must share one ring")
    module = FreeModule(ring)
    basis = _Buchberger(module, interrupt).run(module.vector((g.in_ring(ring),)) for g in generators)
    return GroebnerBasis(ring, ring.order, tuple(module.column(v)[0] for v in basis))


def elimination_basis(
    generators: Sequence[Polynomial],
    eliminate_count: int,
    order: MonomialOrder,
    interrupt: Callable[[], None] | None = None,
) -> GroebnerBasis:
    """Reduced Groebner basis of the elimination ideal, in the ring of the remaining variables."""
    if order.kind != OrderKind.BLOCK_ELIMINATION or order.block != eliminate_count:
        raise RingMismatchError(f"Order {order.kind.value} does not eliminate the first {eliminate_count} variables")
    gb = buchberger(generators, order, interrupt=interrupt)
    target = gb.ring.subring(eliminate_count)
    kept = tuple(f.restrict(target, eliminate_count) for f in gb.elements if not any(f.lead_monomial[:eliminate_count]))
    return GroebnerBasis(target, target.order, kept)


def eliminate(
    generators: Sequence[Polynomial],
    eliminate_count: int,
    order: MonomialOrder,
    interrupt: Callable[[], None] | None = None,
) -> list[Polynomial]:
    """Generators of the ideal intersected with the ring of the remaining variables."""
    return list(elimination_basis(generators, eliminate_count, order, interrupt).elements)


@dataclass(frozen=True)
class StandardMonomials:
    """Monomials outside the leading ideal, grouped by weighted degree."""

    finite: bool
    by_degree: dict[int, list[Monomial]] = field(default_factory=dict)

    @property
    def max_degree(self) -> int:
        """Largest degree of a standard monomial, -1 if there is none."""
        return max(self.by_degree, default=-1)

    def count(self) -> int:
        """Total number of standard monomials."""
        return sum(len(ms) for ms in self.by_degree.values())

    def hilbert_function(self) -> list[int]:
        """Counts per degree from 0 up to the maximal degree."""
        return [len(self.by_degree.get(d, [])) for d in range(self.max_degree + 1)]


def standard_monomials(gb: GroebnerBasis) -> StandardMonomials:
    """Enumerate the standard monomials of a zero-dimensional quotient."""
    leads = gb.lead_monomials()
    n = gb.ring.nvars
    pure = {i for m in leads for i in range(n) if m[i] and not any(m[j] for j in range(n) if j != i)}
    if len(pure) < n and not gb.is_unit_ideal():
        _LOGGER.debug("Quotient of %s is not finite dimensional", gb.ring)
        return StandardMonomials(False)
    by_degree: dict[int, list[Monomial]] = {}
    frontier = [(0,) * n]
    seen = set(frontier)
    while frontier:
        following = []
        for m in frontier:
            if any(monomial_divides(lead, m) for lead in leads):
                continue
            by_degree.setdefault(gb.ring.degree(m), []).append(m)
            for i in range(n):
                up = m[:i] + (m[i] + 1,) + m[i + 1 :]
                if up not in seen:
                    seen.add(up)
                    following.append(up)
        frontier = following
    for monomials in by_degree.values():
        monomials.sort(reverse=True)
    return StandardMonomials(True, dict(sorted(by_degree.items())))


def quotient_hilbert_function(gb: GroebnerBasis) -> list[int] | None:
    """Hilbert function of a zero-dimensional quotient, None if it is infinite."""
    monomials = standard_monomials(gb)
    return monomials.hilbert_function() if monomials.finite else None


def satisfies_buchberger_criterion(gb: GroebnerBasis) -> bool:
    """Check that every S-polynomial of the basis reduces to zero."""
    module = FreeModule(gb.ring)
    engine = _Buchberger.from_basis(module, (module.vector((g,)) for g in gb.elements))
    count = len(gb.elements)
    return all(not engine.reduce(engine._spoly(i, j)) for i in range(count) for j in range(i + 1, count))


def module_groebner(
    columns: Sequence[Sequence[Polynomial]],
    module: FreeModule,
    interrupt: Callable[[], None] | None = None,
) -> list[tuple[Polynomial, ...]]:
    """Reduced Groebner basis of the submodule generated by the columns."""
    basis = _Buchberger(module, interrupt).run(module.vector(column) for column in columns)
    return [module.column(v) for v in basis]


def column_degree(column: Sequence[Polynomial], module: FreeModule) -> int:
    """Degree of a homogeneous nonzero column in the graded free module."""
    degree = module.degree(module.vector(column))
    if degree is None:
        raise GradingError("Column is zero or not homogeneous")
    return degree


def syzygies(
    columns: Sequence[Sequence[Polynomial]],
    target: FreeModule,
    interrupt: Callable[[], None] | None = None,
) -> tuple[FreeModule, list[tuple[Polynomial, ...]]]:
    """Groebner basis of the syzygy module of homogeneous columns.

    Returns the graded source module, whose shifts are the column degrees, and the
    syzygies as columns over it. Computed from the vectors (column_j, e_j) in the sum
    of target and source, keeping the basis elements that live in the source part.
    """
    shifts = tuple(column_degree(column, target) for column in columns)
    source = FreeModule(target.ring, shifts)
    combined = FreeModule(target.ring, target.shifts + shifts)
    one = target.ring.one()
    zero = target.ring.zero()
    extended = [
        tuple(column) + tuple(one if k == j else zero for k in range(len(columns)))
        for j, column in enumerate(columns)
    ]
    engine = _Buchberger(combined, interrupt)
    basis = engine.run(combined.vector(column) for column in extended)
    q = target.rank
    result = []
    for vector in basis:
        if engine.lead(vector)[0] < q:
            continue
        result.append(source.column({(comp - q, exps): c for (comp, exps), c in vector.items()}))
    return source, result
