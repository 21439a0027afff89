"""Helper classes for the invariant syzygy workbench."""

from collections.abc import Iterator
from contextlib import contextmanager
import logging
from time import perf_counter

from .errors import BudgetExceededError

_LOGGER: logging.Logger = logging.getLogger(__name__)


class StageTimer:
    """Wall clock per pipeline stage, with an optional overall budget."""

    def __init__(self, budget_seconds: float | None = None) -> None:
        """Initialize."""
        self.budget_seconds: float | None = budget_seconds
        self.started: float = perf_counter()
        self.timings: dict[str, float] = {}

    def __str__(self) -> str:
        """Print the timings."""
        stages = ", ".join(f"{name} {seconds:.3f}s" for name, seconds in self.timings.items())
        return f"{self.elapsed():.3f}s total ({stages or 'no stages'})"

    def elapsed(self) -> float:
        """Seconds since the timer was created."""
        return perf_counter() - self.started

    def check(self) -> None:
        """Raise when the budget is used up."""
        if self.budget_seconds is not None and self.elapsed() > self.budget_seconds:
            raise BudgetExceededError(
                f"Time budget of {self.budget_seconds} seconds exceeded after {self.elapsed():.1f} seconds"
            )

    @contextmanager
    def stage(self, name: str) -> Iterator[None]:
        """Time a stage and check the budget before and after it."""
        self.check()
        start = perf_counter()
        try:
            yield
        finally:
            self.timings[name] = self.timings.get(name, 0.0) + perf_counter() - start
            _LOGGER.debug("Stage %s took %.3f seconds", name, self.timings[name])
        self.check()
