"""Tests for the Buchberger engine, elimination and module syzygies."""

import random

import pytest

from invariant_syzygies.algebra import DenseMatrix, rank
from invariant_syzygies.errors import RingMismatchError
from invariant_syzygies.groebner import (
    FreeModule,
    buchberger,
    column_degree,
    eliminate,
    module_groebner,
    normal_form,
    quotient_hilbert_function,
    satisfies_buchberger_criterion,
    standard_monomials,
    syzygies,
)
from invariant_syzygies.invariants import elementary_symmetric
from invariant_syzygies.polyring import GradedRingSpec, monomial_divides, parse_polynomial
from invariant_syzygies.types import OrderKind


@pytest.fixture
def T3(qq):
    return GradedRingSpec.coordinate_ring(3, qq)


def test_coinvariant_algebra(T3):
    gb = buchberger(elementary_symmetric(T3))
    assert satisfies_buchberger_criterion(gb)
    assert not gb.is_unit_ideal()
    # (1+t)(1+t+t^2)
    assert quotient_hilbert_function(gb) == [1, 2, 2, 1]
    assert standard_monomials(gb).count() == 6
    y1, y2, y3 = T3.gens()
    assert gb.contains(y1 * y2 * y3 * y1)
    assert gb.contains((y1 + y2 + y3) * y2)
    assert not gb.contains(y1)
    assert normal_form(y1**3, gb).is_zero()


def test_reduced_basis_is_canonical(T3):
    e1, e2, e3 = elementary_symmetric(T3)
    first = buchberger([e1, e2, e3])
    second = buchberger([e3, e2 + e1 * e1, e1 * 5])
    assert first.elements == second.elements
    assert first.lead_monomials() == sorted(first.lead_monomials(), key=T3.order.key)


def test_prime_field_basis(f7):
    T = GradedRingSpec.coordinate_ring(2, f7)
    y1, y2 = T.gens()
    gb = buchberger([y1**3, y2**3, 3 * y1 * y2])
    assert all(g.lead_coefficient == 1 for g in gb)
    assert quotient_hilbert_function(gb) == [1, 2, 2]


def test_unit_and_positive_dimensional_ideals(T3):
    assert buchberger([T3.one()]).is_unit_ideal()
    gb = buchberger([T3.gen(0)])
    assert quotient_hilbert_function(gb) is None
    assert not standard_monomials(gb).finite


def test_other_orders(T3):
    y1, y2, y3 = T3.gens()
    lex = T3.with_order(OrderKind.LEX).order
    gb = buchberger([y1 * y2 - y3**2, y1**2 - y2 * y3], lex)
    assert gb.order == lex
    assert satisfies_buchberger_criterion(gb)
    with pytest.raises(RingMismatchError):
        buchberger([])
    with pytest.raises(RingMismatchError):
        normal_form(GradedRingSpec.coordinate_ring(2, T3.field).gen(0), gb)


def test_elimination_twisted_conic(qq):
    T = GradedRingSpec.coordinate_ring(2, qq)
    S = GradedRingSpec.weighted((2, 2, 2), qq)
    E = T.join(S)
    y1, y2 = (T.gen(i).embed(E) for i in range(2))
    x1, x2, x3 = (E.gen(2 + i) for i in range(3))
    relations = eliminate([x1 - y1**2, x2 - y1 * y2, x3 - y2**2], 2, E.order)
    expected = parse_polynomial("x1*x3 - x2^2", S)
    assert len(relations) == 1
    assert relations[0] in (expected, -expected)
    with pytest.raises(RingMismatchError):
        eliminate([x1 - y1**2], 1, E.order)


def test_koszul_syzygy(qq):
    T = GradedRingSpec.coordinate_ring(2, qq)
    y1, y2 = T.gens()
    target = FreeModule(T)
    source, syz = syzygies([(y1,), (y2,)], target)
    assert source.shifts == (1, 1)
    assert len(syz) == 1
    assert syz[0] in ((y2, -y1), (-y2, y1))
    assert column_degree(syz[0], source) == 2


def test_module_groebner(qq):
    T = GradedRingSpec.coordinate_ring(2, qq)
    y1, y2 = T.gens()
    module = FreeModule(T, (0, 0))
    basis = module_groebner([(y1, y2), (y2, T.zero())], module)
    # y2 * (y1, y2) - y1 * (y2, 0) = (0, y2^2)
    assert (T.zero(), y2**2) in basis
    assert len(basis) == 3


def _random_form(ring, rng: random.Random, degree: int):
    f = ring.zero()
    for exps in ring.monomials_of_degree(degree):
        if rng.random() < 0.5:
            f = f + ring.monomial(exps, rng.randint(-3, 3))
    return f


def _random_zero_dimensional_ideal(T, rng: random.Random):
    return [g**3 for g in T.gens()] + [_random_form(T, rng, 2), _random_form(T, rng, 3)]


def test_normal_form_is_a_projection(T3):
    rng = random.Random(4242)
    for _ in range(5):
        gb = buchberger(_random_zero_dimensional_ideal(T3, rng))
        leads = gb.lead_monomials()
        for degree in (2, 3, 4, 5):
            f = _random_form(T3, rng, degree) + _random_form(T3, rng, degree - 1)
            remainder = normal_form(f, gb)
            assert normal_form(f - remainder, gb).is_zero()
            assert gb.contains(f - remainder)
            assert normal_form(remainder, gb) == remainder
            assert not any(monomial_divides(lead, m) for lead in leads for m in remainder.monomials())


def test_standard_monomials_match_membership_rank(T3):
    rng = random.Random(77)
    for _ in range(3):
        generators = [g for g in _random_zero_dimensional_ideal(T3, rng) if not g.is_zero()]
        hilbert = quotient_hilbert_function(buchberger(generators))
        for d in range(len(hilbert) + 1):
            monomials = T3.monomials_of_degree(d)
            rows = [
                [(m * g).coefficient(exps) for exps in monomials]
                for g in generators
                for m in (T3.monomial(e) for e in T3.monomials_of_degree(d - g.homogeneous_degree()))
            ]
            span = rank(DenseMatrix.from_rows(T3.field, rows, len(monomials))) if rows else 0
            assert len(monomials) - span == (hilbert[d] if d < len(hilbert) else 0), d


def test_elimination_of_a_cuspidal_parametrization(qq):
    T = GradedRingSpec.coordinate_ring(1, qq)
    S = GradedRingSpec.weighted((2, 3), qq)
    E = T.join(S)
    y, x1, x2 = E.gens()
    relations = eliminate([x1 - y**2, x2 - y**3], 1, E.order)
    expected = parse_polynomial("x1^3 - x2^2", S)
    assert len(relations) == 1
    assert relations[0] in (expected, -expected)
