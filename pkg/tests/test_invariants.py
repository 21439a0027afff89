"""Tests for group closures, Reynolds averaging, Molien series, generators and tau."""

import random

import pytest

from invariant_syzygies.algebra import FieldSpec
from invariant_syzygies.errors import (
    GroupTooLargeError,
    IncompleteGeneratorsError,
    ModularCaseError,
    NotZeroDimensionalError,
    UnsupportedFieldError,
    UsageError,
)
from invariant_syzygies.invariants import (
    GroupSpec,
    InvariantGeneratorSet,
    act,
    check_generation,
    elementary_symmetric,
    group_closure,
    invariant_space_basis,
    minimal_generators,
    molien_series,
    reynolds,
    tau,
    vandermonde,
)
from invariant_syzygies.polyring import T_SYMBOL, RationalFunction, expand_series, rational_function_normalize

t = T_SYMBOL


def random_polynomial(ring, rng: random.Random, degree: int):
    f = ring.zero()
    for exps in ring.monomials_of_degree(degree):
        if rng.random() < 0.6:
            f = f + ring.monomial(exps, rng.randint(-5, 5))
    return f


def test_closure_orders(qq, f7, a3, s3, c2_k2, c3_f7):
    assert (a3.order, s3.order, c2_k2.order, c3_f7.order) == (3, 6, 2, 3)
    signs = group_closure(GroupSpec.from_matrices(2, [[[-1, 0], [0, 1]], [[1, 0], [0, -1]]], qq))
    assert signs.order == 4
    rotation = group_closure(GroupSpec.from_matrices(2, [[[0, -1], [1, 0]]], qq))
    assert rotation.order == 4
    assert group_closure(GroupSpec.permutation(2, [], qq)).order == 1
    assert a3.elements[0].is_identity()


def test_closure_limits(qq):
    with pytest.raises(GroupTooLargeError):
        group_closure(GroupSpec.permutation(3, [[1, 0, 2], [1, 2, 0]], qq), cap=5)
    with pytest.raises(GroupTooLargeError, match="group too large or infinite"):
        group_closure(GroupSpec.from_matrices(1, [[[2]]], qq), cap=50)


def test_modular_and_unsupported_inputs(qq):
    with pytest.raises(ModularCaseError, match="modular case not supported"):
        group_closure(GroupSpec.permutation(2, [[1, 0]], FieldSpec.prime(2)))
    with pytest.raises(ModularCaseError):
        GroupSpec.cyclic_scalar(2, 2, FieldSpec.prime(2))
    with pytest.raises(UnsupportedFieldError):
        GroupSpec.cyclic_scalar(3, 2, qq)
    with pytest.raises(UnsupportedFieldError):
        GroupSpec.cyclic_scalar(3, 2, FieldSpec.prime(5))
    with pytest.raises(UsageError):
        GroupSpec.from_matrices(2, [[[1, 1], [1, 1]]], qq)
    with pytest.raises(UsageError):
        GroupSpec.permutation(3, [[0, 0, 1]], qq)


@pytest.mark.parametrize("group", ["a3", "s3", "c2_k2", "c3_f7"])
def test_reynolds_projection(group, request):
    G = request.getfixturevalue(group)
    rng = random.Random(2718)
    for degree in (1, 2, 3):
        f = random_polynomial(G.ring, rng, degree)
        average = reynolds(f, G)
        assert reynolds(average, G) == average
        for g in G.elements:
            assert act(g, average) == average
            assert reynolds(act(g, f), G) == average


def test_act_on_non_monomial_matrix(qq):
    G = group_closure(GroupSpec.from_matrices(2, [[[0, -1], [1, 1]]], qq))
    assert G.order == 6
    y1, y2 = G.ring.gens()
    for f in invariant_space_basis(G, 2):
        assert all(act(g, f) == f for g in G.elements)
    assert act(G.elements[1], y1) in (-y2, y1 + y2, y2, -y1 - y2)


def test_molien_series(a3, c3_f7):
    expected = rational_function_normalize(
        RationalFunction.from_expr((1 + t**3) / ((1 - t) * (1 - t**2) * (1 - t**3)))
    )
    assert molien_series(a3) == expected
    with pytest.raises(UnsupportedFieldError):
        molien_series(c3_f7)


@pytest.mark.parametrize("group", ["a3", "s3", "c2_k2"])
def test_molien_matches_invariant_dimensions(group, request):
    G = request.getfixturevalue(group)
    coefficients = expand_series(molien_series(G), 2 * G.order)
    assert coefficients == [len(invariant_space_basis(G, d)) for d in range(2 * G.order + 1)]


@pytest.mark.parametrize(
    ("group", "degrees"),
    [("a3", (3, 3, 2, 1)), ("s3", (3, 2, 1)), ("c2_k2", (2, 2, 2)), ("c3_f7", (3, 3, 3, 3))],
)
def test_minimal_generator_degrees(group, degrees, request):
    G = request.getfixturevalue(group)
    gens = minimal_generators(G)
    assert gens.degrees == degrees
    assert gens.complete
    assert gens.beta <= G.order
    check_generation(G, gens)


def test_symmetric_group_generators(qq):
    for n in (2, 3, 4):
        G = group_closure(GroupSpec.permutation(n, [[1, 0] + list(range(2, n)), list(range(1, n)) + [0]], qq))
        gens = minimal_generators(G)
        assert gens.degrees == tuple(range(n, 0, -1))


def test_degree_cap_scan_checks_one_degree_beyond(a3):
    gens = minimal_generators(a3, degree_cap=2)
    assert gens.degrees == (2, 1)
    assert not gens.complete
    with pytest.raises(UsageError):
        minimal_generators(a3, degree_cap=0)


def test_check_generation_failures(a3, s3):
    gens = minimal_generators(a3)
    with pytest.raises(IncompleteGeneratorsError):
        check_generation(a3, gens.dropping(0))
    y1 = a3.ring.gen(0)
    with pytest.raises(IncompleteGeneratorsError, match="not invariant"):
        check_generation(a3, InvariantGeneratorSet.from_polynomials(a3.ring, [y1]))
    with pytest.raises(UsageError):
        InvariantGeneratorSet.from_polynomials(a3.ring, [y1 + y1 * y1])


def test_symmetric_polynomials(s3, a3):
    e = elementary_symmetric(s3.ring)
    assert [f.homogeneous_degree() for f in e] == [1, 2, 3]
    assert all(act(g, f) == f for g in s3.elements for f in e)
    delta = vandermonde(a3.ring)
    assert all(act(g, delta) == delta for g in a3.elements)
    assert any(act(g, delta) == -delta for g in s3.elements)


@pytest.mark.parametrize(("group", "expected"), [("a3", 3), ("s3", 4), ("c2_k2", 2), ("c3_f7", 3)])
def test_tau(group, expected, request):
    G = request.getfixturevalue(group)
    data = tau(G, minimal_generators(G))
    assert data.tau == expected
    assert expected <= G.order
    assert all(data.hilbert_function())


def test_tau_needs_zero_dimensional_ideal(s3):
    gens = minimal_generators(s3)
    with pytest.raises(NotZeroDimensionalError):
        tau(s3, gens.dropping(gens.r - 1))
