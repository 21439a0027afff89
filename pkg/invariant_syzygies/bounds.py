"""Inequality records for the degree bounds and the verify pipeline method of the workbench."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
import logging

from .resolution import BettiTable, degree_sum_cap, relations_vanish
from .types import BoundKind, BoundStatus, ExitCode, FieldKind

_LOGGER: logging.Logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BoundRecord:
    """One checked inequality left <= right (or identity left = right)."""

    name: str
    kind: BoundKind
    left: int
    right: int
    status: BoundStatus
    i: int | None = None

    def to_dict(self) -> dict:
        """JSON form."""
        data = {"name": self.name, "kind": self.kind.value, "left": self.left, "right": self.right, "status": self.status.value}
        if self.i is not None:
            data["i"] = self.i
        return data


def evaluate(name: str, kind: BoundKind, left: int, right: int, i: int | None = None) -> BoundRecord:
    """Classify left against right."""
    if kind == BoundKind.CONJECTURE:
        if left < right:
            status = BoundStatus.conjecture_holds
        elif left == right:
            status = BoundStatus.conjecture_sharp
        else:
            status = BoundStatus.conjecture_counterexample
            _LOGGER.warning("Conjecture counterexample: %s with %s > %s", name, left, right)
    elif left == right:
        status = BoundStatus.sharp
    elif kind == BoundKind.THEOREM and left < right:
        status = BoundStatus.holds
    else:
        status = BoundStatus.violated
        _LOGGER.error("Proven bound violated: %s with %s against %s", name, left, right)
    return BoundRecord(name, kind, left, right, status, i)


def degree_sum_bound(degrees: Sequence[int], s: int, i: int) -> int:
    """d_1 + ... + d_{s+i} - s."""
    return degree_sum_cap(degrees, s, i)


def a_invariant_bound(degrees: Sequence[int], s: int, i: int, a_invariant: int) -> int:
    """d_1 + ... + d_{s+i} + a(R)."""
    return sum(degrees[: s + i]) + a_invariant


def conjecture_bound(tau: int, i: int) -> int:
    """(i+1) tau."""
    return (i + 1) * tau


@dataclass
class BoundsReport:
    """Everything computed for one group, with a verdict per inequality."""

    group: str
    field: dict
    order: int
    n: int
    s: int
    degrees: list[int]
    beta: int
    tau: int
    a_invariant: int | None
    r: int
    k: int | None
    betti: BettiTable
    i_max: int
    records: list[BoundRecord] = field(default_factory=list)
    consistency: dict[str, bool | None] = field(default_factory=dict)
    details: dict = field(default_factory=dict)
    timings: dict[str, float] | None = None
    spec_digest: str | None = None

    @property
    def exit_code(self) -> int:
        """70 on any violated theorem or failed consistency check, 3 on a conjecture counterexample, else 0."""
        if any(record.status == BoundStatus.violated for record in self.records) or any(
            value is False for value in self.consistency.values()
        ):
            return int(ExitCode.BOUND_VIOLATION)
        if any(record.status == BoundStatus.conjecture_counterexample for record in self.records):
            return int(ExitCode.CONJECTURE_COUNTEREXAMPLE)
        return int(ExitCode.OK)

    def record(self, name: str, i: int | None = None) -> BoundRecord | None:
        """Look up a record by name and homological degree."""
        return next((rec for rec in self.records if rec.name == name and rec.i == i), None)


def verify_bounds(self, i_max: int | None = None) -> BoundsReport:
    """Run the whole pipeline and evaluate every bound up to homological degree i_max."""
    i_max = i_max or self.i_max
    closure = self.closure()
    gens = self.generators()
    generators_complete = self.completeness()
    hilbert_ideal = self.hilbert_ideal()
    J = self.syzygy_ideal()
    table, resolution = self.resolution()
    hilbert = self.hilbert()
    u_degrees = self.module_u()
    order, n, s, r = closure.order, closure.n, J.krull_dimension, gens.r
    tau_value = hilbert_ideal.tau
    degrees = list(gens.degrees)
    a = hilbert.a_invariant

    records = [
        evaluate("noether", BoundKind.THEOREM, gens.beta, order),
        evaluate("fogarty", BoundKind.THEOREM, tau_value, order),
        evaluate("relation_degree", BoundKind.THEOREM, J.beta1, 2 * tau_value),
        evaluate("relation_degree_group", BoundKind.THEOREM, 2 * tau_value, 2 * order),
        evaluate("knop", BoundKind.THEOREM, a, -s),
        evaluate("u_generated", BoundKind.THEOREM, max(u_degrees, default=0), tau_value + 1),
        evaluate("regularity", BoundKind.IDENTITY, self.regularity(), tau_value),
        evaluate("cohen_macaulay", BoundKind.IDENTITY, table.length, r - s),
    ]
    for i in range(1, i_max + 1):
        top = table.max_degree(i)
        if top is None:
            continue
        records.extend(
            [
                evaluate("degree_sum", BoundKind.THEOREM, top, degree_sum_bound(degrees, s, i), i),
                evaluate("degree_sum_a", BoundKind.THEOREM, top, a_invariant_bound(degrees, s, i, a), i),
                evaluate("degree_sum_noether", BoundKind.THEOREM, top, (s + i) * gens.beta - s, i),
                evaluate("degree_sum_group", BoundKind.THEOREM, top, (n + i) * order - n, i),
                evaluate("conjecture", BoundKind.CONJECTURE, top, conjecture_bound(tau_value, i), i),
            ]
        )

    consistency: dict[str, bool | None] = {
        "generators_complete": generators_complete,
        "relations_vanish": relations_vanish(gens, J.minimal_generators),
        "resolution_is_complex": resolution.is_complex(),
        "resolution_is_minimal": resolution.is_minimal(),
        "hilbert_series_matches_molien": None,
        "molien_matches_dimensions": None,
        "koszul_oracle_matches": None,
    }
    if closure.field.kind == FieldKind.RATIONALS:
        molien = self.molien()
        consistency["hilbert_series_matches_molien"] = molien == hilbert.series
        consistency["molien_matches_dimensions"] = self.molien_dimensions_agree()
    oracle = self.oracle()
    if oracle is not None:
        consistency["koszul_oracle_matches"] = oracle == table.as_dict()
    for name, value in consistency.items():
        if value is False:
            _LOGGER.error("Consistency check failed: %s", name)

    report = BoundsReport(
        group=closure.spec.describe(),
        field=closure.field.to_dict(),
        order=order,
        n=n,
        s=s,
        degrees=degrees,
        beta=gens.beta,
        tau=tau_value,
        a_invariant=a,
        r=r,
        k=table.length,
        betti=table,
        i_max=i_max,
        records=records,
        consistency=consistency,
        details={
            "generators": [str(f) for f in gens.generators],
            "relations": [str(h) for h in J.minimal_generators],
            "relation_degrees": list(J.minimal_generator_degrees),
            "beta1": J.beta1,
            "u_degrees": list(u_degrees),
            "hilbert_ideal_function": hilbert_ideal.hilbert_function(),
            "hilbert_series": str(hilbert.series),
        },
        timings=dict(self.timer.timings) if self.include_timings else None,
    )
    self._logger.info("Verified %s: exit code %s", report.group, report.exit_code)
    return report
