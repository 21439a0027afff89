"""A collection of helper functions for the workbench scripts."""

import logging
import os
import sys

from .bounds import BoundsReport
from .report import render_betti_table, render_report_text
from .resolution import BettiTable
from .types import WorkbenchDefaults

CONSOLE: logging.Logger = logging.getLogger("console")
CONSOLE.addHandler(logging.StreamHandler(sys.stdout))
CONSOLE.setLevel(logging.INFO)

# Optional default settings to be used
_SETTINGS = {
    "BUDGET_SECONDS": os.getenv("SYZYGY_BUDGET_SECONDS"),
    "JOBS": os.getenv("SYZYGY_JOBS"),
    "GROUP_CAP": os.getenv("SYZYGY_GROUP_CAP"),
}


def budget_seconds() -> float | None:
    """Get the default wall clock budget."""
    if _SETTINGS.get("BUDGET_SECONDS"):
        try:
            return float(_SETTINGS["BUDGET_SECONDS"])
        except ValueError:
            CONSOLE.warning("Ignoring SYZYGY_BUDGET_SECONDS=%s", _SETTINGS["BUDGET_SECONDS"])
    return WorkbenchDefaults.BUDGET_SECONDS_DEF


def jobs() -> int:
    """Get the default number of sweep workers."""
    if (_SETTINGS.get("JOBS") or "").isdigit() and int(_SETTINGS["JOBS"]) > 0:
        return int(_SETTINGS["JOBS"])
    return WorkbenchDefaults.JOBS_DEF


def group_cap() -> int:
    """Get the closure cap."""
    if (_SETTINGS.get("GROUP_CAP") or "").isdigit() and int(_SETTINGS["GROUP_CAP"]) > 0:
        return int(_SETTINGS["GROUP_CAP"])
    return WorkbenchDefaults.GROUP_CAP


def print_betti_table(table: BettiTable) -> None:
    """Print the Betti table as grid."""
    for line in render_betti_table(table).splitlines():
        CONSOLE.info(line)


def print_report(report: BoundsReport) -> None:
    """Print a bounds report."""
    for line in render_report_text(report).splitlines():
        CONSOLE.info(line)


def print_summary(rows: list[dict]) -> None:
    """Print the sweep summary as table."""
    t1 = max([len(row.get("name", "")) for row in rows] + [4])
    CONSOLE.info(f"{'Spec':<{t1}} {'|G|':>5} {'degrees':<18} {'tau':>4} {'beta1':>5} {'k':>3} {'a':>4} {'exit':>4}")
    for row in rows:
        CONSOLE.info(
            f"{row.get('name', ''):<{t1}} {row.get('order', '-')!s:>5} {str(tuple(row.get('degrees') or ())):<18} "
            f"{row.get('tau', '-')!s:>4} {row.get('beta1', '-')!s:>5} {row.get('k', '-')!s:>3} "
            f"{row.get('a_invariant', '-')!s:>4} {row.get('exit_code')!s:>4}"
        )
