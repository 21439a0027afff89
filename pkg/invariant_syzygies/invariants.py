"""Finite linear groups, Reynolds averaging, Molien series, minimal invariant generators and the Hilbert ideal.

Required Python modules:
pip install sympy
"""

from __future__ import annotations

from collections import Counter, deque
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
import itertools
import logging

import sympy as sp

from .algebra import DenseMatrix, EchelonSpace, FieldSpec, PrimeFieldElement, rank
from .errors import (
    BoundViolationError,
    GroupTooLargeError,
    IncompleteGeneratorsError,
    ModularCaseError,
    NotZeroDimensionalError,
    RingMismatchError,
    UnsupportedFieldError,
    UsageError,
)
from .groebner import GroebnerBasis, buchberger, standard_monomials
from .polyring import T_SYMBOL, GradedRingSpec, Monomial, Polynomial, RationalFunction, rational_function_normalize, substitute
from .types import FieldKind, GroupKind, WorkbenchDefaults

_LOGGER: logging.Logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GroupSpec:
    """Generators of a finite linear group acting on V = K^n."""

    kind: GroupKind
    n: int
    field: FieldSpec
    permutations: tuple[tuple[int, ...], ...] = ()
    matrices: tuple[DenseMatrix, ...] = ()
    m: int = 0

    @classmethod
    def permutation(cls, n: int, generators: Sequence[Sequence[int]], field: FieldSpec) -> GroupSpec:
        """Permutation group given by 0-based image lists."""
        perms = tuple(tuple(int(x) for x in g) for g in generators)
        for perm in perms:
            if sorted(perm) != list(range(n)):
                raise UsageError(f"{list(perm)} is not a permutation of 0..{n - 1}")
        return cls(GroupKind.PERMUTATION, n, field, permutations=perms)

    @classmethod
    def from_matrices(cls, n: int, entries: Sequence[Sequence[Sequence]], field: FieldSpec) -> GroupSpec:
        """Group generated by explicit invertible n x n matrices."""
        matrices = []
        for rows in entries:
            if len(rows) != n or any(len(row) != n for row in rows):
                raise UsageError(f"Generator is not a {n}x{n} matrix")
            matrix = DenseMatrix.from_rows(field, rows, n)
            if rank(matrix) != n:
                raise UsageError("Group generators must be invertible")
            matrices.append(matrix)
        return cls(GroupKind.MATRICES, n, field, matrices=tuple(matrices))

    @classmethod
    def cyclic_scalar(cls, m: int, n: int, field: FieldSpec) -> GroupSpec:
        """Cyclic group of order m acting on K^n by a primitive m-th root of unity."""
        if m < 1 or n < 1:
            raise UsageError("cyclic_scalar needs m >= 1 and n >= 1")
        if field.divides_order(m):
            raise ModularCaseError(f"modular case not supported: {field} and group order {m}")
        if field.element_of_order(m) is None:
            if field.kind == FieldKind.RATIONALS:
                raise UnsupportedFieldError(
                    f"The rationals have no primitive {m}-th root of unity, use a prime field with m | p-1"
                )
            raise UnsupportedFieldError(f"{field} has no element of order {m}")
        return cls(GroupKind.CYCLIC_SCALAR, n, field, m=m)

    @property
    def root_of_unity(self) -> PrimeFieldElement | Fraction | None:
        """The scalar of a cyclic_scalar group."""
        return self.field.element_of_order(self.m) if self.kind == GroupKind.CYCLIC_SCALAR else None

    def generator_matrices(self) -> list[DenseMatrix]:
        """Generators as matrices acting on the coordinates."""
        n = self.n
        if self.kind == GroupKind.PERMUTATION:
            return [
                DenseMatrix.from_rows(self.field, [[int(perm[i] == j) for j in range(n)] for i in range(n)], n)
                for perm in self.permutations
            ]
        if self.kind == GroupKind.CYCLIC_SCALAR:
            zeta = self.root_of_unity
            zero = self.field.zero
            return [DenseMatrix(self.field, n, n, tuple(tuple(zeta if i == j else zero for j in range(n)) for i in range(n)))]
        return list(self.matrices)

    def describe(self) -> str:
        """Short human readable description."""
        if self.kind == GroupKind.PERMUTATION:
            gens = ", ".join(str(list(p)) for p in self.permutations)
            return f"permutation group on K^{self.n} generated by {gens}"
        if self.kind == GroupKind.CYCLIC_SCALAR:
            return f"cyclic group of order {self.m} acting by scalars on K^{self.n} (zeta = {self.root_of_unity})"
        return f"matrix group on K^{self.n} with {len(self.matrices)} generators"


@dataclass(frozen=True)
class GroupElement:
    """Group element acting by y_i -> sum_j matrix[i][j] y_j."""

    matrix: DenseMatrix

    @property
    def n(self) -> int:
        """Dimension of V."""
        return self.matrix.rows

    @cached_property
    def monomial_data(self) -> tuple[tuple[int, object], ...] | None:
        """Per row the single nonzero column and its value, None unless the matrix is monomial."""
        data = []
        for row in self.matrix.entries:
            nonzero = [(j, x) for j, x in enumerate(row) if x]
            if len(nonzero) != 1:
                return None
            data.append(nonzero[0])
        return tuple(data)

    def is_identity(self) -> bool:
        """Check for the identity matrix."""
        return self.matrix == DenseMatrix.identity(self.matrix.field, self.n)


def act(g: GroupElement, f: Polynomial) -> Polynomial:
    """Apply the linear substitution of g to f."""
    if f.ring.nvars != g.n:
        raise RingMismatchError(f"Element acts on K^{g.n}, polynomial has {f.ring.nvars} variables")
    data = g.monomial_data
    if data is None:
        ring = f.ring
        images = [
            Polynomial(ring, {tuple(int(k == j) for k in range(g.n)): x for j, x in enumerate(row) if x})
            for row in g.matrix.entries
        ]
        return substitute(f, images, check_grading=False, target=ring)
    terms: dict[Monomial, object] = {}
    for exps, coeff in f.items():
        image = [0] * g.n
        for i, e in enumerate(exps):
            if e:
                j, x = data[i]
                image[j] += e
                coeff = coeff * x**e
        key = tuple(image)
        terms[key] = terms.get(key, 0) + coeff
    return Polynomial(f.ring, terms)


@dataclass(frozen=True)
class FiniteGroupClosure:
    """All elements of a finite group, breadth-first from the identity."""

    spec: GroupSpec
    elements: tuple[GroupElement, ...]
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    @property
    def order(self) -> int:
        """|G|."""
        return len(self.elements)

    @cached_property
    def is_monomial(self) -> bool:
        """Every element maps monomials to scalar multiples of monomials."""
        return all(g.monomial_data is not None for g in self.elements)

    @property
    def field(self) -> FieldSpec:
        """Base field."""
        return self.spec.field

    @property
    def n(self) -> int:
        """Dimension of V."""
        return self.spec.n

    @cached_property
    def ring(self) -> GradedRingSpec:
        """Coordinate ring T = K[y_1..y_n]."""
        return GradedRingSpec.coordinate_ring(self.n, self.field)


def group_closure(spec: GroupSpec, cap: int = WorkbenchDefaults.GROUP_CAP) -> FiniteGroupClosure:
    """Enumerate the group generated by spec."""
    if cap < 1:
        raise UsageError("Closure cap must be positive")
    generators = spec.generator_matrices()
    identity = DenseMatrix.identity(spec.field, spec.n)
    elements = [identity]
    seen = {identity.key()}
    queue = deque([identity])
    while queue:
        current = queue.popleft()
        for gen in generators:
            product = current @ gen
            key = product.key()
            if key in seen:
                continue
            if len(elements) >= cap:
                raise GroupTooLargeError(f"group too large or infinite: more than {cap} elements")
            seen.add(key)
            elements.append(product)
            queue.append(product)
    if spec.field.divides_order(len(elements)):
        raise ModularCaseError(f"modular case not supported: characteristic {spec.field.characteristic} divides |G| = {len(elements)}")
    _LOGGER.debug("Closure of %s has %s elements", spec.describe(), len(elements))
    return FiniteGroupClosure(spec, tuple(GroupElement(m) for m in elements))


def reynolds(f: Polynomial, G: FiniteGroupClosure) -> Polynomial:
    """Average of f over the group."""
    if G.field.divides_order(G.order):
        raise ModularCaseError("Reynolds operator needs |G| invertible in K")
    total = f.ring.zero()
    for g in G.elements:
        total = total + act(g, f)
    return total.scale(G.field.element(Fraction(1, G.order)))


def invariant_space_basis(G: FiniteGroupClosure, d: int) -> list[Polynomial]:
    """Canonical basis of the degree d invariants, from Reynolds images of monomials in lex order."""
    cache = G._cache.setdefault("basis", {})
    if d not in cache:
        T = G.ring
        space = EchelonSpace(sort_key=T.order.key)
        covered: set[Monomial] = set()
        for exps in T.monomials_of_degree(d):
            if exps in covered:
                continue
            image = reynolds(T.monomial(exps), G)
            if G.is_monomial:
                # the image of any monomial in this support is a multiple of image
                covered.update(image.to_dict())
            space.add(image.to_dict())
        cache[d] = [Polynomial(T, row).primitive() for row in space.reduced_basis()]
        _LOGGER.debug("dim R_%s = %s", d, len(cache[d]))
    return list(cache[d])


def _pivots(G: FiniteGroupClosure, d: int) -> list[Monomial]:
    """Leading monomials of the canonical basis of R_d; their coefficients are coordinates on R_d."""
    return [b.lead_monomial for b in invariant_space_basis(G, d)]


def _coordinates(f: Polynomial, pivots: Sequence[Monomial]) -> dict[Monomial, object]:
    return {p: c for p in pivots if (c := f.coefficient(p))}


def molien_series(G: FiniteGroupClosure) -> RationalFunction:
    """(1/|G|) sum over the group of 1/det(1 - t g), normalized."""
    if G.field.kind != FieldKind.RATIONALS:
        raise UnsupportedFieldError("Molien closed form restricted to characteristic 0")
    if "molien" not in G._cache:
        counts: Counter = Counter()
        identity = sp.eye(G.n)
        for g in G.elements:
            matrix = sp.Matrix([[sp.Rational(x.numerator, x.denominator) for x in row] for row in g.matrix.entries])
            det = sp.Poly((identity - T_SYMBOL * matrix).det(method="berkowitz"), T_SYMBOL, domain=sp.QQ)
            counts[tuple(det.all_coeffs())] += 1
        total = sum(
            (sp.Rational(count, G.order) / sp.Poly(list(coeffs), T_SYMBOL, domain=sp.QQ).as_expr() for coeffs, count in counts.items()),
            sp.Integer(0),
        )
        G._cache["molien"] = rational_function_normalize(RationalFunction.from_expr(sp.cancel(sp.together(total))))
    return G._cache["molien"]


@dataclass(frozen=True)
class InvariantGeneratorSet:
    """Minimal homogeneous generators f_1..f_r of the invariant ring, degrees descending."""

    ring: GradedRingSpec
    generators: tuple[Polynomial, ...]
    degrees: tuple[int, ...]
    degree_cap: int = 0
    complete: bool = True  # nothing new was found at degree_cap + 1

    @property
    def r(self) -> int:
        """Number of generators."""
        return len(self.generators)

    @property
    def beta(self) -> int:
        """beta_G(V), the largest generator degree."""
        return self.degrees[0] if self.degrees else 0

    @classmethod
    def from_polynomials(cls, ring: GradedRingSpec, polynomials: Sequence[Polynomial]) -> InvariantGeneratorSet:
        """Wrap given homogeneous polynomials, sorted by degree descending."""
        degrees = []
        for f in polynomials:
            degree = f.homogeneous_degree()
            if degree is None or degree < 1:
                raise UsageError(f"Generator {f} is not homogeneous of positive degree")
            degrees.append(degree)
        order = sorted(range(len(polynomials)), key=lambda i: -degrees[i])
        return cls(ring, tuple(polynomials[i] for i in order), tuple(degrees[i] for i in order))

    def dropping(self, index: int) -> InvariantGeneratorSet:
        """Copy without one generator."""
        keep = [i for i in range(self.r) if i != index]
        return InvariantGeneratorSet(
            self.ring,
            tuple(self.generators[i] for i in keep),
            tuple(self.degrees[i] for i in keep),
            self.degree_cap,
            self.complete,
        )


def _products_space(
    G: FiniteGroupClosure, gens: Sequence[tuple[int, Polynomial]], d: int, pivots: Sequence[Monomial]
) -> EchelonSpace:
    """Span of f * b in R_d for generators f of degree at most d and invariant basis elements b.

    Correct as the degree d part of the subalgebra generated by gens once that
    subalgebra is known to contain every R_e with e < d.
    """
    space = EchelonSpace(sort_key=G.ring.order.key)
    for degree, f in gens:
        if not 0 < degree <= d:
            continue
        for b in invariant_space_basis(G, d - degree):
            space.add(_coordinates(f * b, pivots))
            if space.rank == len(pivots):
                return space
    return space


def minimal_generators(G: FiniteGroupClosure, degree_cap: int | None = None) -> InvariantGeneratorSet:
    """Minimal generators, built degreewise as a complement of the decomposables in R_d.

    Degrees 1..degree_cap are scanned, degree_cap + 1 is checked afterwards.
    """
    cap = G.order if degree_cap is None else degree_cap
    if cap < 1:
        raise UsageError("degree_cap must be at least 1")
    found: list[tuple[int, Polynomial]] = []
    complete = True
    for d in range(1, cap + 2):
        basis = invariant_space_basis(G, d)
        if not basis:
            continue
        pivots = _pivots(G, d)
        space = _products_space(G, found, d, pivots)
        new = [b for b in basis if space.add(_coordinates(b, pivots))]
        if new and d > G.order and cap >= G.order:
            raise BoundViolationError(
                f"Noether bound violated: new invariant generator in degree {d} > |G| = {G.order}"
            )
        if d <= cap:
            found.extend((d, f) for f in new)
            if new:
                _LOGGER.debug("%s new generators in degree %s", len(new), d)
        elif new:
            _LOGGER.warning("Generators exist beyond degree_cap %s, the generator set is incomplete", cap)
            complete = False
    found.sort(key=lambda item: -item[0])
    return InvariantGeneratorSet(
        G.ring, tuple(f for _, f in found), tuple(d for d, _ in found), cap, complete
    )


def check_generation(G: FiniteGroupClosure, gens: InvariantGeneratorSet, up_to: int | None = None) -> None:
    """Verify degreewise that the subalgebra generated by gens contains every R_d, d <= up_to."""
    up_to = G.order if up_to is None else up_to
    for f in gens.generators:
        if any(act(g, f) != f for g in G.elements):
            raise IncompleteGeneratorsError(f"Generator {f} is not invariant")
    pairs = list(zip(gens.degrees, gens.generators))
    # by induction on d the subalgebra already contains R_e for e < d
    for d in range(1, up_to + 1):
        pivots = _pivots(G, d)
        space = _products_space(G, pairs, d, pivots)
        if space.rank < len(pivots):
            raise IncompleteGeneratorsError(
                f"Generators span {space.rank} of {len(pivots)} invariants in degree {d}"
            )


def elementary_symmetric(ring: GradedRingSpec) -> list[Polynomial]:
    """e_1..e_n in the ring's variables."""
    gens = ring.gens()
    result = []
    for k in range(1, ring.nvars + 1):
        total = ring.zero()
        for subset in itertools.combinations(gens, k):
            term = ring.one()
            for y in subset:
                term = term * y
            total = total + term
        result.append(total)
    return result


def vandermonde(ring: GradedRingSpec) -> Polynomial:
    """Product of y_i - y_j over i < j."""
    result = ring.one()
    gens = ring.gens()
    for i, j in itertools.combinations(range(ring.nvars), 2):
        result = result * (gens[i] - gens[j])
    return result


@dataclass(frozen=True)
class HilbertIdealData:
    """The Hilbert ideal I = (f_1..f_r) of T, its standard monomials and tau."""

    tau: int
    standard_monomials_by_degree: dict[int, list[Monomial]]
    hilbert_ideal_basis: GroebnerBasis

    def hilbert_function(self) -> list[int]:
        """dim (T/I)_d for d = 0..tau-1."""
        return [len(self.standard_monomials_by_degree.get(d, [])) for d in range(self.tau)]


def tau(
    G: FiniteGroupClosure,
    gens: InvariantGeneratorSet,
    interrupt: Callable[[], None] | None = None,
) -> HilbertIdealData:
    """Smallest d with I_d = T_d, read off the standard monomials of the Hilbert ideal."""
    gb = buchberger(list(gens.generators), ring=G.ring, interrupt=interrupt)
    monomials = standard_monomials(gb)
    if not monomials.finite:
        raise NotZeroDimensionalError("Hilbert ideal is not zero-dimensional, the generators cannot be complete")
    degrees = list(monomials.by_degree)
    if degrees != list(range(len(degrees))):
        raise BoundViolationError(f"No-gap property fails for T/I, standard monomial degrees {degrees}")
    value = monomials.max_degree + 1
    if value > G.order:
        raise BoundViolationError(f"Fogarty bound violated: tau = {value} > |G| = {G.order}")
    _LOGGER.debug("tau = %s, Hilbert function of T/I %s", value, monomials.hilbert_function())
    return HilbertIdealData(value, monomials.by_degree, gb)
