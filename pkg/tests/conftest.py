"""Shared fixtures: fields, groups and cached workbenches for the example specs."""

import json
from pathlib import Path

import pytest

from invariant_syzygies.algebra import FieldSpec
from invariant_syzygies.invariants import GroupSpec, group_closure
from invariant_syzygies.report import parse_spec
from invariant_syzygies.workbench import InvariantWorkbench

SPECS = Path(__file__).resolve().parent.parent / "specs"


def load_example(name: str):
    """Parse specs/<name>.json without going through the async loader."""
    path = SPECS / f"{name}.json"
    return parse_spec(json.loads(path.read_text(encoding="utf-8")), path.stem)


@pytest.fixture(scope="session")
def specs_dir() -> Path:
    return SPECS


@pytest.fixture(scope="session")
def qq() -> FieldSpec:
    return FieldSpec.rationals()


@pytest.fixture(scope="session")
def f7() -> FieldSpec:
    return FieldSpec.prime(7)


@pytest.fixture(scope="session")
def a3(qq):
    return group_closure(GroupSpec.permutation(3, [[1, 2, 0]], qq))


@pytest.fixture(scope="session")
def s3(qq):
    return group_closure(GroupSpec.permutation(3, [[1, 0, 2], [1, 2, 0]], qq))


@pytest.fixture(scope="session")
def c2_k2(qq):
    return group_closure(GroupSpec.cyclic_scalar(2, 2, qq))


@pytest.fixture(scope="session")
def c3_f7(f7):
    return group_closure(GroupSpec.cyclic_scalar(3, 2, f7))


@pytest.fixture(scope="session")
def workbenches() -> dict[str, InvariantWorkbench]:
    """One workbench per example spec, shared so every stage is computed once per session."""
    benches = {}
    for name in ("a3", "s2", "s3", "s4", "c2_k2", "c2_k3", "c3_k2_f7", "sign_k2", "trivial"):
        run = load_example(name)
        benches[name] = InvariantWorkbench(run.group, degree_cap=run.degree_cap, i_max=run.i_max)
    return benches
