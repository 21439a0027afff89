"""Tests for the syzygy ideal, minimal resolutions, Betti tables and Hilbert data."""

import pytest

from invariant_syzygies.errors import IncompleteResolutionError, UsageError
from invariant_syzygies.invariants import GroupSpec, group_closure, minimal_generators, molien_series, tau
from invariant_syzygies.polyring import GradedRingSpec, parse_polynomial, substitute
from invariant_syzygies.resolution import (
    BettiTable,
    GradedMap,
    betti_table,
    first_syzygies_over_T,
    hilbert_series_from_betti,
    koszul_betti_numbers,
    minimal_generator_degrees,
    minimalize,
    regularity_hilbert_ideal,
    relations_vanish,
    syzygy_ideal,
    degree_sum_cap,
)

C2_K3_BETTI = {(0, 0): 1, (1, 4): 6, (2, 6): 8, (3, 8): 3}
TWISTED_CUBIC_BETTI = {(0, 0): 1, (1, 6): 3, (2, 9): 2}


def test_degree_sum_cap():
    assert degree_sum_cap((3, 3, 2, 1), 3, 1) == 6
    assert degree_sum_cap((2,) * 6, 3, 1) == 5
    assert degree_sum_cap((3,) * 4, 2, 2) == 10


def test_polynomial_invariant_ring_has_no_relations(s3):
    J = syzygy_ideal(minimal_generators(s3))
    assert J.is_zero()
    assert J.beta1 == 0
    table, resolution = betti_table(minimal_generators(s3), J, 3)
    assert table.as_dict() == {(0, 0): 1}
    assert table.length == 0 and resolution.length == 0


def test_quadric_cone(c2_k2):
    gens = minimal_generators(c2_k2)
    J = syzygy_ideal(gens)
    expected = parse_polynomial("x1*x3 - x2^2", J.ring)
    assert J.minimal_generators in ((expected,), (-expected,))
    assert J.minimal_generator_degrees == (4,)
    assert minimal_generator_degrees(J) == (4,)


def test_alternating_group_relation(a3):
    gens = minimal_generators(a3)
    J = syzygy_ideal(gens)
    assert J.minimal_generator_degrees == (6,)
    assert J.beta1 == 6
    assert J.krull_dimension == 3
    for h in J.basis.elements:
        assert substitute(h, gens.generators, target=a3.ring).is_zero()
    table, resolution = betti_table(gens, J, 4)
    assert table.as_dict() == {(0, 0): 1, (1, 6): 1}
    assert resolution.length == 1 == gens.r - J.krull_dimension


def test_veronese_resolution(qq):
    G = group_closure(GroupSpec.cyclic_scalar(2, 3, qq))
    gens = minimal_generators(G)
    J = syzygy_ideal(gens)
    assert len(J.minimal_generators) == 6
    assert set(J.minimal_generator_degrees) == {4}
    table, resolution = betti_table(gens, J, 6)
    assert table.as_dict() == C2_K3_BETTI
    assert table.complete and table.length == 3
    assert resolution.is_complex() and resolution.is_minimal()
    truncated, _ = betti_table(gens, J, 1)
    assert not truncated.complete
    assert truncated.length is None
    assert truncated.as_dict() == {(0, 0): 1, (1, 4): 6}
    with pytest.raises(IncompleteResolutionError):
        hilbert_series_from_betti(truncated, gens.degrees)


def test_twisted_cubic_resolution(c3_f7):
    gens = minimal_generators(c3_f7)
    J = syzygy_ideal(gens)
    assert J.minimal_generator_degrees == (6, 6, 6)
    table, resolution = betti_table(gens, J, 4)
    assert table.as_dict() == TWISTED_CUBIC_BETTI
    assert table.max_degree(1) == 6 and table.max_degree(2) == 9
    assert table.rank(1) == 3 and table.rank(2) == 2
    assert resolution.is_complex() and resolution.is_minimal()
    hilbert = hilbert_series_from_betti(table, gens.degrees)
    assert hilbert.a_invariant == -3


@pytest.mark.parametrize("group", ["a3", "c2_k2", "c3_f7"])
def test_koszul_oracle_agrees(group, request):
    G = request.getfixturevalue(group)
    gens = minimal_generators(G)
    J = syzygy_ideal(gens)
    table, _ = betti_table(gens, J, gens.r)
    top = max(j for _, j, _ in table.entries)
    assert koszul_betti_numbers(J, top) == table.as_dict()


def test_hilbert_series_matches_molien(a3):
    gens = minimal_generators(a3)
    table, _ = betti_table(gens, syzygy_ideal(gens), gens.r)
    hilbert = hilbert_series_from_betti(table, gens.degrees)
    assert hilbert.series == molien_series(a3)
    assert hilbert.a_invariant == -3


def test_regularity_equals_tau(a3, c3_f7):
    for G in (a3, c3_f7):
        data = tau(G, minimal_generators(G))
        assert regularity_hilbert_ideal(data) == data.tau


def test_module_u_degrees(s3, a3):
    assert first_syzygies_over_T(minimal_generators(s3), 4) == (5, 4, 3)
    gens = minimal_generators(a3)
    degrees = first_syzygies_over_T(gens, 3)
    assert degrees and max(degrees) <= 4


def test_minimalize_cancels_unit_entries(qq):
    S = GradedRingSpec.weighted((1,), qq)
    x, zero, one = S.gen(0), S.zero(), S.one()
    first = GradedMap((1, 2), (0,), ((x,), (zero,)))
    second = GradedMap((2,), (1, 2), ((zero, one),))
    maps, degrees = minimalize([first, second], [(0,), (1, 2), (2,)])
    assert degrees == [(0,), (1,)]
    assert len(maps) == 1
    assert maps[0].columns == ((x,),)
    assert not maps[0].has_constant_entries()


def test_betti_table_from_degrees():
    table = BettiTable.from_degrees([(0,), (6, 6, 6), (9, 9)])
    assert table.as_dict() == TWISTED_CUBIC_BETTI
    assert table.homological_degrees == [0, 1, 2]
    assert table.get(1, 7) == 0
    assert table.max_degree(3) is None


def test_relations_vanish_on_the_generators(c2_k2):
    gens = minimal_generators(c2_k2)
    J = syzygy_ideal(gens)
    assert relations_vanish(gens, J.minimal_generators)
    assert relations_vanish(gens, J.basis.elements)
    assert not relations_vanish(gens, [J.ring.gen(0)])


def test_betti_table_needs_a_positive_homological_degree(a3):
    gens = minimal_generators(a3)
    J = syzygy_ideal(gens)
    for i_max in (0, -1):
        with pytest.raises(UsageError, match="i_max"):
            betti_table(gens, J, i_max)
