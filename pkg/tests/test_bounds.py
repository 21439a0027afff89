"""Tests for the inequality records and the verify pipeline of the workbench."""

import json
import time

import pytest

from invariant_syzygies.bounds import (
    BoundsReport,
    conjecture_bound,
    evaluate,
    degree_sum_bound,
    a_invariant_bound,
)
from invariant_syzygies.errors import (
    BudgetExceededError,
    IncompleteGeneratorsError,
    exit_code_for,
)
from invariant_syzygies.helpers import StageTimer
from invariant_syzygies.invariants import GroupSpec
from invariant_syzygies.report import parse_spec
from invariant_syzygies.resolution import BettiTable
from invariant_syzygies.types import BoundKind, BoundStatus
from invariant_syzygies.workbench import InvariantWorkbench, verify



def test_evaluate_statuses():
    assert evaluate("noether", BoundKind.THEOREM, 3, 6).status == BoundStatus.holds
    assert evaluate("noether", BoundKind.THEOREM, 6, 6).status == BoundStatus.sharp
    assert evaluate("noether", BoundKind.THEOREM, 7, 6).status == BoundStatus.violated
    assert evaluate("regularity", BoundKind.IDENTITY, 4, 4).status == BoundStatus.sharp
    assert evaluate("regularity", BoundKind.IDENTITY, 3, 4).status == BoundStatus.violated
    assert evaluate("conjecture", BoundKind.CONJECTURE, 5, 6, 1).status == BoundStatus.conjecture_holds
    assert evaluate("conjecture", BoundKind.CONJECTURE, 6, 6, 1).status == BoundStatus.conjecture_sharp
    record = evaluate("conjecture", BoundKind.CONJECTURE, 7, 6, 1)
    assert record.status == BoundStatus.conjecture_counterexample
    assert record.to_dict() == {
        "name": "conjecture",
        "kind": "conjecture",
        "left": 7,
        "right": 6,
        "status": "CONJECTURE-COUNTEREXAMPLE",
        "i": 1,
    }


def test_bound_formulas():
    degrees = (3, 3, 2, 1)
    assert degree_sum_bound(degrees, 3, 1) == 6
    assert a_invariant_bound(degrees, 3, 1, -3) == 6
    assert conjecture_bound(3, 1) == 6
    assert conjecture_bound(3, 2) == 9


def _report(records) -> BoundsReport:
    return BoundsReport(
        group="test",
        field={"type": "rational"},
        order=1,
        n=1,
        s=1,
        degrees=[1],
        beta=1,
        tau=1,
        a_invariant=-1,
        r=1,
        k=0,
        betti=BettiTable.from_degrees([(0,)]),
        i_max=1,
        records=records,
    )


def test_report_exit_codes():
    assert _report([evaluate("noether", BoundKind.THEOREM, 1, 1)]).exit_code == 0
    assert _report([evaluate("conjecture", BoundKind.CONJECTURE, 3, 2, 1)]).exit_code == 3
    violated = _report(
        [evaluate("conjecture", BoundKind.CONJECTURE, 3, 2, 1), evaluate("knop", BoundKind.THEOREM, 0, -1)]
    )
    assert violated.exit_code == 70
    broken = _report([])
    broken.consistency["resolution_is_complex"] = False
    assert broken.exit_code == 70
    assert violated.record("knop").right == -1
    assert violated.record("conjecture") is None


def test_alternating_group_is_sharp(workbenches):
    report = workbenches["a3"].verify_bounds()
    assert report.degrees == [3, 3, 2, 1]
    assert (report.order, report.tau, report.a_invariant, report.k, report.r, report.s) == (3, 3, -3, 1, 4, 3)
    assert report.details["beta1"] == 6
    for name in ("noether", "fogarty", "relation_degree", "knop", "regularity", "cohen_macaulay"):
        assert report.record(name).status == BoundStatus.sharp, name
    assert report.record("degree_sum", 1).right == 6
    assert report.record("degree_sum", 1).status == BoundStatus.sharp
    assert report.record("degree_sum_a", 1).status == BoundStatus.sharp
    assert report.record("conjecture", 1).status == BoundStatus.conjecture_sharp
    assert report.record("degree_sum", 2) is None
    assert all(value is not False for value in report.consistency.values())
    assert report.consistency["hilbert_series_matches_molien"] is True
    assert report.consistency["generators_complete"] is True
    assert report.consistency["relations_vanish"] is True
    assert report.consistency["koszul_oracle_matches"] is True
    assert report.exit_code == 0


def test_veronese_relation_degree_sharp_degree_sum_not(workbenches):
    report = workbenches["c2_k3"].verify_bounds(2)
    assert report.tau == 2
    assert report.record("relation_degree").left == 4
    assert report.record("relation_degree").status == BoundStatus.sharp
    degree_sum = report.record("degree_sum", 1)
    assert (degree_sum.left, degree_sum.right, degree_sum.status) == (4, 5, BoundStatus.holds)
    assert report.k == 3 == report.r - report.s
    assert report.exit_code == 0


def test_twisted_cubic_conjecture_sharp(workbenches):
    report = workbenches["c3_k2_f7"].verify_bounds(2)
    assert report.betti.as_dict() == {(0, 0): 1, (1, 6): 3, (2, 9): 2}
    assert report.record("conjecture", 1).right == 6
    assert report.record("conjecture", 2).right == 9
    assert report.record("conjecture", 1).status == BoundStatus.conjecture_sharp
    assert report.record("conjecture", 2).status == BoundStatus.conjecture_sharp
    assert report.consistency["hilbert_series_matches_molien"] is None
    assert report.consistency["koszul_oracle_matches"] is True
    assert (report.k, report.a_invariant) == (2, -3)


@pytest.mark.parametrize(
    ("name", "degrees"),
    [("s2", [2, 1]), ("s3", [3, 2, 1]), ("s4", [4, 3, 2, 1]), ("sign_k2", [2, 2]), ("trivial", [1, 1])],
)
def test_polynomial_invariant_rings(name, degrees, workbenches):
    report = workbenches[name].verify_bounds()
    assert report.degrees == degrees
    assert report.k == 0
    assert report.details["relations"] == []
    assert report.a_invariant == -sum(degrees)
    assert report.beta <= report.order
    assert report.exit_code == 0


@pytest.mark.parametrize(
    "name",
    ["a3", "s2", "s3", "c2_k2", "c2_k3", "sign_k2", "trivial", pytest.param("s4", marks=pytest.mark.slow)],
)
def test_molien_dimensions_up_to_twice_the_order(name, workbenches):
    bench = workbenches[name]
    assert bench.molien_dimensions_agree()
    assert bench.molien_dimensions_agree(2 * bench.closure().order)
    assert bench.verify_bounds().consistency["molien_matches_dimensions"] is True


def test_every_example_passes(workbenches):
    for name, bench in workbenches.items():
        report = bench.verify_bounds()
        assert report.exit_code == 0, name
        assert all(record.status != BoundStatus.violated for record in report.records), name


def test_corrupted_generators_are_caught(qq):
    bench = InvariantWorkbench(GroupSpec.permutation(3, [[1, 2, 0]], qq))
    gens = bench.generators()
    bench.set_generators(gens.dropping(gens.r - 1))
    with pytest.raises(IncompleteGeneratorsError) as err:
        bench.verify_bounds()
    assert exit_code_for(err.value) == 70


def test_budget(qq):
    timer = StageTimer(0.0)
    time.sleep(0.01)
    with pytest.raises(BudgetExceededError):
        timer.check()
    bench = InvariantWorkbench(GroupSpec.permutation(3, [[1, 2, 0]], qq), budget_seconds=0.0)
    time.sleep(0.01)
    with pytest.raises(BudgetExceededError) as err:
        bench.closure()
    assert exit_code_for(err.value) == 65


def test_timings_only_on_request(qq):
    spec = GroupSpec.permutation(2, [[1, 0]], qq)
    assert verify(spec).timings is None
    timed = verify(spec, include_timings=True)
    assert set(timed.timings) >= {"closure", "generators", "tau", "syzygy_ideal", "resolution"}
    assert str(StageTimer()).endswith("(no stages)")


def test_log_level(qq):
    bench = InvariantWorkbench(GroupSpec.cyclic_scalar(2, 2, qq))
    assert bench.logLevel(10) == 10


@pytest.mark.slow
def test_alternating_group_on_four_letters(specs_dir):
    run = parse_spec(json.loads((specs_dir / "stress" / "a4.json").read_text(encoding="utf-8")))
    bench = InvariantWorkbench(run.group, i_max=run.i_max)
    assert bench.closure().order == 12
    assert bench.generators().degrees == (6, 4, 3, 2, 1)
    assert bench.hilbert_ideal().tau == 6
    assert bench.syzygy_ideal().beta1 == 12
