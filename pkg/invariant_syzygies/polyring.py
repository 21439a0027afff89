"""Graded polynomial rings, monomial orders, substitution and univariate rational functions.

Required Python modules:
pip install sympy
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
import logging
import math
import re

import sympy as sp

from .algebra import FieldSpec, PrimeFieldElement, Scalar
from .errors import GradingError, RingMismatchError, UsageError, ZeroDenominatorError
from .types import Comparison, FieldKind, OrderKind, WorkbenchDefaults

_LOGGER: logging.Logger = logging.getLogger(__name__)

# exponent vector, one entry per ring variable
Monomial = tuple[int, ...]

T_SYMBOL = sp.Symbol("t")


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    """Check whether monomial a divides monomial b."""
    return all(x <= y for x, y in zip(a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    """Least common multiple of two monomials."""
    return tuple(max(x, y) for x, y in zip(a, b))


def monomial_quotient(a: Monomial, b: Monomial) -> Monomial:
    """Quotient a / b, assuming b divides a."""
    return tuple(x - y for x, y in zip(a, b))


def monomial_product(a: Monomial, b: Monomial) -> Monomial:
    """Product of two monomials."""
    return tuple(x + y for x, y in zip(a, b))


def _grevlex_key(weights: Sequence[int], exps: Monomial) -> tuple[int, ...]:
    return (sum(w * e for w, e in zip(weights, exps)),) + tuple(-e for e in reversed(exps))


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order, compared through flat integer sort keys (larger key, larger monomial)."""

    kind: OrderKind
    weights: tuple[int, ...]
    block: int = 0  # first_block_size of a block elimination order

    def __post_init__(self) -> None:
        """Validate the block size."""
        if not 0 <= self.block <= len(self.weights):
            raise UsageError(f"Block size {self.block} outside 0..{len(self.weights)}")

    def key(self, exps: Monomial) -> tuple[int, ...]:
        """Return the sort key of a monomial."""
        return _order_key(self, exps)

    def compare(self, a: Monomial, b: Monomial) -> Comparison:
        """Compare two monomials."""
        if len(a) != len(self.weights) or len(b) != len(self.weights):
            raise RingMismatchError("Monomials do not belong to the ring of this order")
        ka, kb = self.key(a), self.key(b)
        if ka == kb:
            return Comparison.EQUAL
        return Comparison.GREATER if ka > kb else Comparison.LESS


@lru_cache(maxsize=None)
def _order_key(order: MonomialOrder, exps: Monomial) -> tuple[int, ...]:
    if order.kind == OrderKind.LEX:
        return exps
    if order.kind == OrderKind.BLOCK_ELIMINATION:
        k = order.block
        return _grevlex_key(order.weights[:k], exps[:k]) + _grevlex_key(order.weights[k:], exps[k:])
    return _grevlex_key(order.weights, exps)


def compare_monomials(order: MonomialOrder, a: Monomial, b: Monomial) -> Comparison:
    """Compare two monomials under the order."""
    return order.compare(a, b)


def weighted_degree(m: Monomial, ring: GradedRingSpec) -> int:
    """Sum of exponent times weight."""
    if len(m) != ring.nvars:
        raise RingMismatchError(f"Monomial {m} does not belong to a ring with {ring.nvars} variables")
    return ring.degree(m)


@lru_cache(maxsize=None)
def _monomials_of_degree(weights: tuple[int, ...], d: int) -> tuple[Monomial, ...]:
    """Monomials of weighted degree d, in decreasing lexicographic order."""
    if not weights:
        return ((),) if d == 0 else ()
    head, tail = weights[0], weights[1:]
    result = []
    for e in range(d // head, -1, -1):
        result.extend((e,) + rest for rest in _monomials_of_degree(tail, d - e * head))
    return tuple(result)


@dataclass(frozen=True)
class GradedRingSpec:
    """Polynomial ring K[z_1..z_n] graded by positive integer weights."""

    variable_names: tuple[str, ...]
    weights: tuple[int, ...]
    field: FieldSpec
    order_kind: OrderKind = OrderKind.WEIGHTED_GREVLEX
    block: int = 0

    def __post_init__(self) -> None:
        """Validate weights against variables."""
        if len(self.variable_names) != len(self.weights):
            raise RingMismatchError("One weight per variable is required")
        if any(w < 1 for w in self.weights):
            raise UsageError("Weights must be positive integers")

    @classmethod
    def coordinate_ring(cls, n: int, field: FieldSpec, prefix: str = WorkbenchDefaults.T_PREFIX) -> GradedRingSpec:
        """Return T = K[y_1..y_n] with standard grading."""
        return cls(tuple(f"{prefix}{i + 1}" for i in range(n)), (1,) * n, field)

    @classmethod
    def weighted(
        cls, degrees: Sequence[int], field: FieldSpec, prefix: str = WorkbenchDefaults.S_PREFIX
    ) -> GradedRingSpec:
        """Return S = K[x_1..x_r] with deg(x_i) = d_i."""
        return cls(tuple(f"{prefix}{i + 1}" for i in range(len(degrees))), tuple(degrees), field)

    @cached_property
    def order(self) -> MonomialOrder:
        """The designated monomial order."""
        return MonomialOrder(self.order_kind, self.weights, self.block)

    @property
    def nvars(self) -> int:
        """Number of variables."""
        return len(self.weights)

    def degree(self, exps: Monomial) -> int:
        """Weighted degree of a monomial."""
        return sum(w * e for w, e in zip(self.weights, exps))

    def with_order(self, kind: OrderKind, block: int = 0) -> GradedRingSpec:
        """Same ring with another designated order."""
        return GradedRingSpec(self.variable_names, self.weights, self.field, kind, block)

    def join(self, other: GradedRingSpec) -> GradedRingSpec:
        """Ring in the variables of self followed by those of other, eliminating self's block."""
        if self.field != other.field:
            raise RingMismatchError("Rings over different fields cannot be joined")
        return GradedRingSpec(
            self.variable_names + other.variable_names,
            self.weights + other.weights,
            self.field,
            OrderKind.BLOCK_ELIMINATION,
            self.nvars,
        )

    def subring(self, start: int) -> GradedRingSpec:
        """Ring in the variables from index start on, with weighted grevlex."""
        return GradedRingSpec(self.variable_names[start:], self.weights[start:], self.field)

    def monomials_of_degree(self, d: int) -> tuple[Monomial, ...]:
        """All monomials of weighted degree d, in decreasing lexicographic order."""
        if d < 0:
            return ()
        return _monomials_of_degree(self.weights, d)

    def zero(self) -> Polynomial:
        """The zero polynomial."""
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        """The unit polynomial."""
        return self.constant(1)

    def constant(self, value) -> Polynomial:
        """A constant polynomial."""
        return Polynomial(self, {(0,) * self.nvars: self.field.element(value)})

    def monomial(self, exps: Monomial, coeff=1) -> Polynomial:
        """A single term."""
        if len(exps) != self.nvars:
            raise RingMismatchError(f"Monomial {exps} does not fit {self.nvars} variables")
        return Polynomial(self, {tuple(exps): self.field.element(coeff)})

    def gen(self, i: int) -> Polynomial:
        """The i-th variable (0-based)."""
        return self.monomial(tuple(int(j == i) for j in range(self.nvars)))

    def gens(self) -> list[Polynomial]:
        """All variables."""
        return [self.gen(i) for i in range(self.nvars)]

    def __str__(self) -> str:
        weights = ",".join(str(w) for w in self.weights)
        return f"{self.field}[{','.join(self.variable_names)}] (weights {weights})"


class Polynomial:
    """Immutable polynomial, a map from monomials to nonzero scalars."""

    def __init__(self, ring: GradedRingSpec, terms: Mapping[Monomial, Scalar] | None = None) -> None:
        """Initialize, dropping zero coefficients."""
        self.ring: GradedRingSpec = ring
        self._terms: dict[Monomial, Scalar] = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def _raw(cls, ring: GradedRingSpec, terms: dict[Monomial, Scalar]) -> Polynomial:
        poly = cls.__new__(cls)
        poly.ring = ring
        poly._terms = terms
        return poly

    # --- structure -------------------------------------------------------

    @cached_property
    def terms(self) -> tuple[tuple[Monomial, Scalar], ...]:
        """Terms sorted descending under the ring's order."""
        order = self.ring.order
        return tuple(sorted(self._terms.items(), key=lambda t: order.key(t[0]), reverse=True))

    def to_dict(self) -> dict[Monomial, Scalar]:
        """Copy of the monomial to coefficient map."""
        return dict(self._terms)

    def items(self) -> Iterable[tuple[Monomial, Scalar]]:
        """Unsorted terms."""
        return self._terms.items()

    def coefficient(self, exps: Monomial) -> Scalar:
        """Coefficient of a monomial, zero if absent."""
        return self._terms.get(tuple(exps), self.ring.field.zero)

    def monomials(self) -> list[Monomial]:
        """Monomials in descending order."""
        return [m for m, _ in self.terms]

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[tuple[Monomial, Scalar]]:
        return iter(self.terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        """Check for the zero polynomial."""
        return not self._terms

    def is_constant(self) -> bool:
        """Check for a nonzero constant."""
        return len(self._terms) == 1 and not any(next(iter(self._terms)))

    @property
    def lead_monomial(self) -> Monomial:
        """Leading monomial, the zero polynomial has none."""
        if not self._terms:
            raise ValueError("The zero polynomial has no leading monomial")
        return self.terms[0][0]

    @property
    def lead_coefficient(self) -> Scalar:
        """Leading coefficient."""
        if not self._terms:
            return self.ring.field.zero
        return self.terms[0][1]

    def degree(self) -> int:
        """Largest weighted degree of a term, -1 for zero."""
        return max((self.ring.degree(m) for m in self._terms), default=-1)

    def homogeneous_degree(self) -> int | None:
        """Weighted degree if homogeneous and nonzero, else None."""
        degrees = {self.ring.degree(m) for m in self._terms}
        return degrees.pop() if len(degrees) == 1 else None

    def is_homogeneous(self) -> bool:
        """Check whether all monomials share one weighted degree (zero counts as homogeneous)."""
        return len({self.ring.degree(m) for m in self._terms}) <= 1

    # --- arithmetic ------------------------------------------------------

    def _check(self, other: Polynomial) -> None:
        if other.ring is not self.ring and other.ring != self.ring:
            raise RingMismatchError(f"Polynomials from {self.ring} and {other.ring} cannot be combined")

    def _lift(self, other) -> Polynomial | None:
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, PrimeFieldElement)):
            return self.ring.constant(other)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        terms = dict(self._terms)
        for m, c in other._terms.items():
            value = terms.get(m, 0) + c
            if value:
                terms[m] = value
            else:
                terms.pop(m, None)
        return Polynomial._raw(self.ring, terms)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial._raw(self.ring, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, PrimeFieldElement)):
            return self.scale(self.ring.field.element(other))
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        terms: dict[Monomial, Scalar] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                value = terms.get(m, 0) + c1 * c2
                if value:
                    terms[m] = value
                else:
                    terms.pop(m, None)
        return Polynomial._raw(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> Polynomial:
        if exponent < 0:
            raise ValueError("Negative powers are not polynomials")
        result = self.ring.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def scale(self, factor: Scalar) -> Polynomial:
        """Multiply by a scalar."""
        if not factor:
            return self.ring.zero()
        return Polynomial._raw(self.ring, {m: c * factor for m, c in self._terms.items()})

    def mul_term(self, exps: Monomial, coeff: Scalar) -> Polynomial:
        """Multiply by the term coeff * z^exps."""
        if not coeff:
            return self.ring.zero()
        return Polynomial._raw(
            self.ring,
            {tuple(x + y for x, y in zip(m, exps)): c * coeff for m, c in self._terms.items()},
        )

    def monic(self) -> Polynomial:
        """Scale to leading coefficient 1."""
        if not self._terms:
            return self
        return self.scale(1 / self.lead_coefficient)

    def primitive(self) -> Polynomial:
        """Content normalized form: integer coefficients without common factor, positive leading coefficient.

        Over a prime field this is the monic form.
        """
        if not self._terms or self.ring.field.kind == FieldKind.PRIME_FIELD:
            return self.monic()
        denominators = math.lcm(*(c.denominator for c in self._terms.values()))
        content = math.gcd(*(int(c * denominators) for c in self._terms.values()))
        factor = Fraction(denominators, content)
        if self.lead_coefficient < 0:
            factor = -factor
        return self.scale(factor)

    def in_ring(self, ring: GradedRingSpec) -> Polynomial:
        """Same terms viewed in a ring with the same variables and another order."""
        if ring.nvars != self.ring.nvars or ring.field != self.ring.field:
            raise RingMismatchError("Target ring has different variables or field")
        return Polynomial._raw(ring, dict(self._terms))

    def embed(self, ring: GradedRingSpec, offset: int = 0) -> Polynomial:
        """Place the variables of this polynomial at positions offset.. of a larger ring."""
        if ring.field != self.ring.field or offset + self.ring.nvars > ring.nvars:
            raise RingMismatchError("Target ring cannot hold this polynomial")
        before = (0,) * offset
        after = (0,) * (ring.nvars - offset - self.ring.nvars)
        return Polynomial._raw(ring, {before + m + after: c for m, c in self._terms.items()})

    def restrict(self, ring: GradedRingSpec, offset: int) -> Polynomial:
        """Inverse of embed: drop the leading offset variables, which must not occur."""
        terms = {}
        for m, c in self._terms.items():
            if any(m[:offset]):
                raise RingMismatchError("Polynomial involves variables outside the target ring")
            terms[m[offset : offset + ring.nvars]] = c
        return Polynomial._raw(ring, terms)

    # --- comparison and display -----------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, Fraction, PrimeFieldElement)):
            if not other:
                return not self._terms
            return self._terms == {(0,) * self.ring.nvars: self.ring.field.element(other)}
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)!r})"

    def __str__(self) -> str:
        return format_polynomial(self)


def format_polynomial(f: Polynomial) -> str:
    """Render terms in descending order with explicit '^' powers and '*' products."""
    if f.is_zero():
        return "0"
    names = f.ring.variable_names
    pieces = []
    for exps, coeff in f.terms:
        factors = [
            names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(exps) if e
        ]
        negative = isinstance(coeff, Fraction) and coeff < 0
        magnitude = -coeff if negative else coeff
        if magnitude == 1 and factors:
            body = "*".join(factors)
        else:
            body = "*".join([str(magnitude)] + factors)
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(pieces)


_TOKEN = re.compile(r"\s*(?:(\d+/\d+|\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\^|\*|\+|-|\(|\)))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if not match:
            raise UsageError(f"Cannot parse polynomial near {text[pos:]!r}")
        number, name, symbol = match.groups()
        if number is not None:
            tokens.append(("num", number))
        elif name is not None:
            tokens.append(("name", name))
        else:
            tokens.append(("sym", symbol))
        pos = match.end()
    return tokens


class _PolynomialParser:
    """Recursive descent over sums of products, powers and parentheses."""

    def __init__(self, text: str, ring: GradedRingSpec) -> None:
        self.tokens = _tokenize(text)
        self.pos = 0
        self.ring = ring
        self.names = {name: i for i, name in enumerate(ring.variable_names)}

    def _peek(self) -> tuple[str, str] | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _take(self) -> tuple[str, str]:
        token = self._peek()
        if token is None:
            raise UsageError("Unexpected end of polynomial")
        self.pos += 1
        return token

    def parse(self) -> Polynomial:
        result = self._expr()
        if self._peek() is not None:
            raise UsageError(f"Unexpected token {self._peek()[1]!r}")
        return result

    def _expr(self) -> Polynomial:
        sign = 1
        if self._peek() in (("sym", "+"), ("sym", "-")):
            sign = -1 if self._take()[1] == "-" else 1
        result = self._term() * sign
        while self._peek() in (("sym", "+"), ("sym", "-")):
            op = self._take()[1]
            term = self._term()
            result = result + term if op == "+" else result - term
        return result

    def _term(self) -> Polynomial:
        result = self._factor()
        while self._peek() == ("sym", "*"):
            self._take()
            result = result * self._factor()
        return result

    def _factor(self) -> Polynomial:
        base = self._atom()
        if self._peek() == ("sym", "^"):
            self._take()
            kind, value = self._take()
            if kind != "num" or "/" in value:
                raise UsageError(f"Exponent must be a nonnegative integer, got {value!r}")
            base = base ** int(value)
        return base

    def _atom(self) -> Polynomial:
        kind, value = self._take()
        if kind == "num":
            return self.ring.constant(value)
        if kind == "name":
            if value not in self.names:
                raise UsageError(f"Unknown variable {value!r} for {self.ring}")
            return self.ring.gen(self.names[value])
        if value == "(":
            inner = self._expr()
            if self._take() != ("sym", ")"):
                raise UsageError("Missing closing parenthesis")
            return inner
        if value == "-":
            return -self._atom()
        raise UsageError(f"Unexpected token {value!r}")


def parse_polynomial(text: str, ring: GradedRingSpec) -> Polynomial:
    """Parse the grammar produced by format_polynomial (parentheses allowed)."""
    return _PolynomialParser(text, ring).parse()


def substitute(
    h: Polynomial,
    images: Sequence[Polynomial],
    check_grading: bool = True,
    target: GradedRingSpec | None = None,
) -> Polynomial:
    """Apply the ring homomorphism sending the i-th variable of h's ring to images[i]."""
    if len(images) != h.ring.nvars:
        raise RingMismatchError(f"{len(images)} images for {h.ring.nvars} variables")
    if target is None:
        if not images:
            raise RingMismatchError("Target ring needed when there are no images")
        target = images[0].ring
    for i, image in enumerate(images):
        if image.ring != target:
            raise RingMismatchError("Images must share one ring")
        if check_grading and image and image.homogeneous_degree() != h.ring.weights[i]:
            raise GradingError(
                f"Image of {h.ring.variable_names[i]} is not homogeneous of degree {h.ring.weights[i]}"
            )
    powers: dict[tuple[int, int], Polynomial] = {}

    def power(i: int, e: int) -> Polynomial:
        if (i, e) not in powers:
            powers[(i, e)] = images[i] if e == 1 else power(i, e - 1) * images[i]
        return powers[(i, e)]

    result = target.zero()
    for exps, coeff in h.items():
        term = target.constant(coeff)
        for i, e in enumerate(exps):
            if e:
                term = term * power(i, e)
        result = result + term
    return result


def _sympy_rational(value) -> Fraction:
    value = sp.Rational(value)
    return Fraction(int(value.p), int(value.q))


@dataclass(frozen=True)
class RationalFunction:
    """Univariate rational function in t with rational coefficients."""

    numerator: sp.Poly
    denominator: sp.Poly

    @classmethod
    def from_expr(cls, expr) -> RationalFunction:
        """Build from a sympy expression in t."""
        num, den = sp.fraction(sp.together(sp.sympify(expr)))
        return cls(sp.Poly(num, T_SYMBOL, domain=sp.QQ), sp.Poly(den, T_SYMBOL, domain=sp.QQ))

    @classmethod
    def from_coefficients(cls, numerator: Sequence, denominator: Sequence) -> RationalFunction:
        """Build from coefficient lists, lowest degree first."""
        num = [sp.Rational(str(c)) for c in reversed(list(numerator))] or [sp.Integer(0)]
        den = [sp.Rational(str(c)) for c in reversed(list(denominator))] or [sp.Integer(0)]
        return cls(
            sp.Poly.from_list(num, T_SYMBOL, domain=sp.QQ),
            sp.Poly.from_list(den, T_SYMBOL, domain=sp.QQ),
        )

    @classmethod
    def cyclotomic_denominator(cls, degrees: Iterable[int]) -> sp.Poly:
        """Return prod (1 - t^d)."""
        result = sp.Poly(1, T_SYMBOL, domain=sp.QQ)
        for d in degrees:
            result = result * sp.Poly(1 - T_SYMBOL**d, T_SYMBOL, domain=sp.QQ)
        return result

    @property
    def degree(self) -> int | None:
        """deg numerator - deg denominator, None for the zero function."""
        if self.numerator.is_zero:
            return None
        return self.numerator.degree() - self.denominator.degree()

    def coefficients(self) -> tuple[list[Fraction], list[Fraction]]:
        """Numerator and denominator coefficients, lowest degree first."""
        return (
            [_sympy_rational(c) for c in reversed(self.numerator.all_coeffs())],
            [_sympy_rational(c) for c in reversed(self.denominator.all_coeffs())],
        )

    def as_expr(self):
        """The sympy expression num/den."""
        return self.numerator.as_expr() / self.denominator.as_expr()

    def __str__(self) -> str:
        return f"({self.numerator.as_expr()})/({sp.factor(self.denominator.as_expr())})"


def rational_function_normalize(f: RationalFunction) -> RationalFunction:
    """Cancel common factors and scale the denominator to constant term 1 (or monic if t divides it)."""
    if f.denominator.is_zero:
        raise ZeroDenominatorError("Rational function with zero denominator")
    if f.numerator.is_zero:
        return RationalFunction(f.numerator, sp.Poly(1, T_SYMBOL, domain=sp.QQ))
    common = f.numerator.gcd(f.denominator)
    num = f.numerator.exquo(common)
    den = f.denominator.exquo(common)
    scale = den.coeff_monomial(1)
    if scale == 0:
        scale = den.LC()
    return RationalFunction(num.quo_ground(scale), den.quo_ground(scale))


def expand_series(f: RationalFunction, up_to: int) -> list[Fraction]:
    """Power series coefficients of f for degrees 0..up_to."""
    f = rational_function_normalize(f)
    num, den = f.coefficients()
    if not den[0]:
        raise ZeroDenominatorError("Series expansion needs a denominator with nonzero constant term")
    coefficients: list[Fraction] = []
    for k in range(up_to + 1):
        value = num[k] if k < len(num) else Fraction(0)
        for j in range(1, min(k, len(den) - 1) + 1):
            value -= den[j] * coefficients[k - j]
        coefficients.append(value / den[0])
    return coefficients
