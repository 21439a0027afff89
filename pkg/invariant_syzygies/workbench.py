"""Class for running the invariant syzygy pipeline on one group, caching every stage.

Required Python modules:
pip install sympy
pip install aiofiles
pip install cryptography
"""

from __future__ import annotations

import logging
import sys

from .errors import IncompleteGeneratorsError
from .helpers import StageTimer
from .invariants import (
    FiniteGroupClosure,
    GroupSpec,
    HilbertIdealData,
    InvariantGeneratorSet,
    check_generation,
    group_closure,
    invariant_space_basis,
    minimal_generators,
    molien_series,
    tau,
)
from .polyring import RationalFunction, expand_series
from .resolution import (
    BettiTable,
    HilbertData,
    ResolutionData,
    SyzygyIdeal,
    betti_table,
    first_syzygies_over_T,
    hilbert_series_from_betti,
    koszul_betti_numbers,
    regularity_hilbert_ideal,
    syzygy_ideal,
)
from .types import PIPELINE_STAGES, WorkbenchDefaults

_LOGGER: logging.Logger = logging.getLogger(__name__)


class InvariantWorkbench:
    """Define the workbench class computing invariants, syzygies and resolutions of one finite group, along with the cached result of every stage."""

    # import outsourced methods
    from .bounds import verify_bounds  # pylint: disable=import-outside-toplevel

    def __init__(
        self,
        spec: GroupSpec,
        degree_cap: int | None = None,
        i_max: int | None = None,
        logger=None,
        budget_seconds: float | None = WorkbenchDefaults.BUDGET_SECONDS_DEF,
        group_cap: int = WorkbenchDefaults.GROUP_CAP,
        include_timings: bool = False,
    ) -> None:
        """Initialize."""
        self.spec: GroupSpec = spec
        self.degree_cap: int | None = degree_cap
        self.i_max: int = i_max or WorkbenchDefaults.I_MAX_DEF
        self.group_cap: int = group_cap
        self.include_timings: bool = include_timings
        self.timer: StageTimer = StageTimer(budget_seconds)
        # initialize logger for object
        if logger:
            self._logger = logger
        else:
            self._logger = _LOGGER
            self._logger.setLevel(logging.WARNING)
        if not self._logger.hasHandlers():
            self._logger.addHandler(logging.StreamHandler(sys.stdout))
        # cached stage results, keyed by PIPELINE_STAGES names
        self._stages: dict = {}

    def logLevel(self, level: int | None = None) -> int:
        """Get or set the logger log level."""
        if level is not None and isinstance(level, int):
            self._logger.setLevel(level)
            self._logger.info("Set log level to: %s", level)
        return self._logger.getEffectiveLevel()

    def _stage(self, name: str, compute):
        if name not in self._stages:
            with self.timer.stage(name):
                self._stages[name] = compute()
            self._logger.debug("Stage %s (%s) done", name, PIPELINE_STAGES.get(name, name))
        return self._stages[name]

    def closure(self) -> FiniteGroupClosure:
        """All group elements."""
        return self._stage("closure", lambda: group_closure(self.spec, self.group_cap))

    def generators(self) -> InvariantGeneratorSet:
        """Minimal generators of the invariant ring."""
        return self._stage("generators", lambda: minimal_generators(self.closure(), self.degree_cap))

    def set_generators(self, gens: InvariantGeneratorSet) -> None:
        """Replace the generator set and drop every stage computed from it."""
        closure = self._stages.get("closure")
        self._stages = {"generators": gens}
        if closure is not None:
            self._stages["closure"] = closure

    def completeness(self) -> bool:
        """Check that the generators span every R_d up to |G|."""

        def compute() -> bool:
            gens = self.generators()
            if not gens.complete:
                raise IncompleteGeneratorsError(
                    f"New generators exist above degree_cap {gens.degree_cap}, the generator set is incomplete"
                )
            check_generation(self.closure(), gens, self.closure().order)
            return True

        return self._stage("completeness", compute)

    def hilbert_ideal(self) -> HilbertIdealData:
        """Groebner basis, standard monomials and tau of the Hilbert ideal."""
        return self._stage("tau", lambda: tau(self.closure(), self.generators(), self.timer.check))

    def regularity(self) -> int:
        """reg(I), checked against tau."""
        return regularity_hilbert_ideal(self.hilbert_ideal())

    def syzygy_ideal(self) -> SyzygyIdeal:
        """J, the relations among the generators."""
        return self._stage("syzygy_ideal", lambda: syzygy_ideal(self.generators(), self.timer.check))

    def resolution(self, i_max: int | None = None) -> tuple[BettiTable, ResolutionData]:
        """Full minimal resolution of R over S, or one truncated after i_max when given."""
        if i_max is not None:
            return betti_table(self.generators(), self.syzygy_ideal(), i_max, self.timer.check)
        return self._stage(
            "resolution",
            lambda: betti_table(self.generators(), self.syzygy_ideal(), max(self.generators().r, 1), self.timer.check),
        )

    def hilbert(self) -> HilbertData:
        """Hilbert series and a-invariant from the Betti numbers."""
        return self._stage(
            "hilbert", lambda: hilbert_series_from_betti(self.resolution()[0], self.generators().degrees)
        )

    def molien(self) -> RationalFunction:
        """Molien series (characteristic 0 only)."""
        return self._stage("molien", lambda: molien_series(self.closure()))

    def molien_dimensions_agree(self, up_to: int | None = None) -> bool:
        """Compare Molien coefficients with dim R_d for d <= up_to (default 2|G|)."""
        up_to = 2 * self.closure().order if up_to is None else up_to
        coefficients = expand_series(self.molien(), up_to)
        return all(coefficients[d] == len(invariant_space_basis(self.closure(), d)) for d in range(up_to + 1))

    def module_u(self) -> tuple[int, ...]:
        """Generator degrees of the first syzygies of f_1..f_r over T."""
        return self._stage(
            "module_u",
            lambda: first_syzygies_over_T(self.generators(), self.hilbert_ideal().tau, self.timer.check),
        )

    def oracle(self) -> dict[tuple[int, int], int] | None:
        """Koszul Betti numbers, for small S only."""
        J = self.syzygy_ideal()
        if J.ring.nvars > WorkbenchDefaults.ORACLE_MAX_VARIABLES:
            return None
        table = self.resolution()[0]
        top = max((j for _, j, _ in table.entries), default=0)
        return self._stage("oracle", lambda: koszul_betti_numbers(J, top))


def verify(
    spec: GroupSpec,
    i_max: int | None = None,
    degree_cap: int | None = None,
    logger=None,
    budget_seconds: float | None = None,
    include_timings: bool = False,
):
    """Build a workbench for spec and run verify_bounds."""
    bench = InvariantWorkbench(
        spec,
        degree_cap=degree_cap,
        i_max=i_max,
        logger=logger,
        budget_seconds=budget_seconds,
        include_timings=include_timings,
    )
    return bench.verify_bounds(i_max)
