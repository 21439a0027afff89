"""Spec files, report documents and their JSON and text renderings.

Required Python modules:
pip install aiofiles
pip install cryptography
"""

from __future__ import annotations

from dataclasses import dataclass
import json
import logging
import os

import aiofiles
from cryptography.hazmat.backends import default_backend
from cryptography.hazmat.primitives import hashes

from .algebra import FieldSpec
from .bounds import BoundsReport
from .errors import UsageError
from .invariants import GroupSpec
from .resolution import BettiTable
from .types import FieldKind, GroupKind

_LOGGER: logging.Logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RunSpec:
    """A parsed spec file: the group plus optional per-run settings."""

    group: GroupSpec
    degree_cap: int | None = None
    i_max: int | None = None
    name: str | None = None
    digest: str | None = None


def _positive_int(data: dict, key: str) -> int | None:
    value = data.get(key)
    if value is None:
        return None
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise UsageError(f"'{key}' must be a positive integer, got {value!r}")
    return value


def parse_field(data: dict | None) -> FieldSpec:
    """Parse {"type": "rational"} or {"type": "prime", "p": 7}."""
    data = data or {"type": FieldKind.RATIONALS.value}
    if not isinstance(data, dict):
        raise UsageError("'field' must be an object")
    kind = data.get("type")
    if kind == FieldKind.RATIONALS.value:
        return FieldSpec.rationals()
    if kind == FieldKind.PRIME_FIELD.value:
        p = data.get("p")
        if isinstance(p, bool) or not isinstance(p, int):
            raise UsageError("A prime field needs an integer 'p'")
        return FieldSpec.prime(p)
    raise UsageError(f"Unknown field type {kind!r}")


def parse_group(data: dict, field: FieldSpec) -> GroupSpec:
    """Parse the group object of a spec file."""
    if not isinstance(data, dict):
        raise UsageError("'group' must be an object")
    try:
        kind = GroupKind(data.get("type"))
    except ValueError as err:
        raise UsageError(f"Unknown group type {data.get('type')!r}") from err
    if kind == GroupKind.CYCLIC_SCALAR:
        m, n = _positive_int(data, "m"), _positive_int(data, "n")
        if m is None or n is None:
            raise UsageError("cyclic_scalar needs 'm' and 'n'")
        return GroupSpec.cyclic_scalar(m, n, field)
    n = _positive_int(data, "n")
    if n is None:
        raise UsageError(f"{kind.value} group needs 'n'")
    if kind == GroupKind.PERMUTATION:
        generators = data.get("generators")
        if not isinstance(generators, list) or not all(isinstance(g, list) for g in generators):
            raise UsageError("'generators' must be a list of image lists")
        return GroupSpec.permutation(n, generators, field)
    entries = data.get("entries")
    if not isinstance(entries, list):
        raise UsageError("'entries' must be a list of matrices")
    return GroupSpec.from_matrices(n, entries, field)


def spec_digest(data: dict) -> str:
    """SHA-256 of the canonical JSON form of a spec document."""
    h = hashes.Hash(hashes.SHA256(), default_backend())
    h.update(json.dumps(data, sort_keys=True, separators=(",", ":")).encode("utf-8"))
    return h.finalize().hex()


def parse_spec(data: dict, name: str | None = None) -> RunSpec:
    """Validate a spec document."""
    if not isinstance(data, dict):
        raise UsageError("Spec must be a JSON object")
    field = parse_field(data.get("field"))
    group = parse_group(data.get("group"), field)
    return RunSpec(
        group=group,
        degree_cap=_positive_int(data, "degree_cap"),
        i_max=_positive_int(data, "i_max"),
        name=name,
        digest=spec_digest(data),
    )


async def load_spec(filename: str) -> RunSpec:
    """Load and parse a spec file."""
    try:
        async with aiofiles.open(filename, encoding="utf-8") as file:
            data = json.loads(await file.read())
            _LOGGER.debug("Loaded spec from file %s: %s", filename, data)
    except OSError as err:
        raise UsageError(f"Cannot read spec file {filename}: {err}") from err
    except json.JSONDecodeError as err:
        raise UsageError(f"Spec file {filename} is not valid JSON: {err}") from err
    return parse_spec(data, os.path.splitext(os.path.basename(filename))[0])


async def save_json(filename: str, data: dict) -> bool:
    """Save json data to given file."""
    try:
        async with aiofiles.open(filename, "w", encoding="utf-8") as file:
            await file.write(json.dumps(data, indent=2) + "\n")
            _LOGGER.debug("Saved JSON to file %s", filename)
            return True
    except OSError as err:
        _LOGGER.error("ERROR: Failed to save JSON to file %s", filename)
        _LOGGER.error(err)
        return False


def betti_triples(table: BettiTable) -> list[list[int]]:
    """Machine readable (i, j, beta_ij) triples."""
    return [list(triple) for triple in table.entries]


def render_betti_table(table: BettiTable) -> str:
    """Macaulay style grid: columns are i, rows are j - i, zeros shown as '.'."""
    values = table.as_dict()
    columns = table.homological_degrees or [0]
    columns = list(range(max(columns) + 1))
    offsets = sorted({j - i for i, j in values})
    width = max([len(str(v)) for v in values.values()] + [len(str(table.rank(i))) for i in columns] + [len(str(c)) for c in columns])
    label = max([len(f"{o}:") for o in offsets] + [len("total:")])
    lines = [" " * (label + 1) + " ".join(f"{c:>{width}}" for c in columns)]
    lines.append(f"{'total:':>{label}} " + " ".join(f"{table.rank(c):>{width}}" for c in columns))
    for offset in range(offsets[0], offsets[-1] + 1) if offsets else []:
        cells = [values.get((c, c + offset), 0) for c in columns]
        lines.append(f"{str(offset) + ':':>{label}} " + " ".join(f"{(v or '.')!s:>{width}}" for v in cells))
    if not table.complete:
        lines.append("(truncated)")
    return "\n".join(lines)


def report_to_dict(report: BoundsReport) -> dict:
    """JSON form of a bounds report; timings only when recorded."""
    data = {
        "group": report.group,
        "field": report.field,
        "order": report.order,
        "n": report.n,
        "s": report.s,
        "r": report.r,
        "degrees": report.degrees,
        "beta": report.beta,
        "tau": report.tau,
        "a_invariant": report.a_invariant,
        "k": report.k,
        "i_max": report.i_max,
        "betti": betti_triples(report.betti),
        "betti_table": render_betti_table(report.betti).splitlines(),
        "records": [record.to_dict() for record in report.records],
        "consistency": report.consistency,
        "details": report.details,
        "exit_code": report.exit_code,
    }
    if report.spec_digest:
        data["spec_digest"] = report.spec_digest
    if report.timings is not None:
        data["timings"] = {name: round(seconds, 6) for name, seconds in report.timings.items()}
    return data


def render_report_text(report: BoundsReport) -> str:
    """Human readable rendering of a bounds report."""
    lines = [
        f"Group: {report.group}",
        f"Field: {FieldSpec(FieldKind(report.field['type']), report.field.get('p', 0))}, |G| = {report.order}, n = s = {report.n}",
        f"Generator degrees: {tuple(report.degrees)} (r = {report.r}, beta = {report.beta})",
        f"tau = {report.tau}, a(R) = {report.a_invariant}, resolution length k = {report.k}",
        "Betti table:",
        render_betti_table(report.betti),
        "Bounds:",
    ]
    for record in report.records:
        where = f"[i={record.i}]" if record.i is not None else ""
        relation = "=" if record.kind.value == "identity" else "<="
        lines.append(f"  {record.name + where:<22} {record.left:>6} {relation} {record.right:<6} {record.status.value}")
    lines.append("Consistency:")
    for name, value in report.consistency.items():
        lines.append(f"  {name:<32} {'n/a' if value is None else 'ok' if value else 'FAILED'}")
    return "\n".join(lines)
