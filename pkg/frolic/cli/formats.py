import csv
import io
import json
import math

from typing import Any, Dict, Iterable, Sequence

from frolic.errors import InvalidParameter
from frolic.lie import LieVector, StructureTable, VerificationReport


def _json(data: Any) -> str:
    return json.dumps(data, sort_keys=True)


def _csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue().rstrip("\n")


def _unknown(fmt: str) -> InvalidParameter:
    return InvalidParameter(f"unknown output format '{fmt}'")


def render_bracket(group: str, lv: LieVector, fmt: str) -> str:
    coords = lv.to_list()
    if fmt == "json":
        return _json({"group": group, "bracket": coords})
    if fmt == "csv":
        return _csv(["k", "c"], enumerate(repr(c) for c in coords))
    if fmt == "text":
        return f"[v, w] in {group}: ({', '.join(f'{c:.12g}' for c in coords)})"
    raise _unknown(fmt)


def render_table(table: StructureTable, fmt: str) -> str:
    """Zero entries are omitted in every format."""
    if fmt == "json":
        return _json(table.to_dict())
    if fmt == "csv":
        return _csv(["i", "j", "k", "c"], ((i, j, k, repr(c)) for i, j, k, c in table.rows()))
    if fmt == "text":
        lines = [f"structure constants of {table.group} (dim {table.dim})"]
        lines += [f"[e{i}, e{j}]_{k} = {c:.12g}" for i, j, k, c in table.rows()]
        if len(lines) == 1:
            lines.append("all brackets vanish")
        return "\n".join(lines)
    raise _unknown(fmt)


def render_report(report: VerificationReport, fmt: str) -> str:
    data = report.to_dict()
    if fmt == "json":
        # JSON has no NaN token
        if not math.isfinite(data["worst_abs_dev"]):
            data["worst_abs_dev"] = None
        return _json(data)
    if fmt == "csv":
        header = ["suite", "group", "trials", "worst_abs_dev", "pass", "seed"]
        return _csv(header, [[data[key] for key in header]])
    if fmt == "text":
        verdict = "PASS" if report.passed else "FAIL"
        lines = [
            f"[{verdict}] {report.suite} on {report.group}: {report.trials} trials, "
            f"worst deviation {report.worst_abs_dev:.3e}, seed {report.seed}"
        ]
        lines += [f"  {key}: {value:.3e}" for key, value in sorted(report.details.items())]
        return "\n".join(lines)
    raise _unknown(fmt)


def render_listing(listing: Dict[str, Any], fmt: str) -> str:
    groups, spaces = listing["groups"], listing["spaces"]
    if fmt == "json":
        return _json(listing)
    if fmt == "csv":
        rows = [("group", name, info["lie_dim"], " ".join(info["params"])) for name, info in groups.items()]
        rows += [("space", name, "", " ".join(params)) for name, params in spaces.items()]
        return _csv(["kind", "name", "lie_dim", "params"], rows)
    if fmt == "text":
        lines = ["groups:"]
        for name, info in groups.items():
            params = ", ".join(info["params"]) or "-"
            lines.append(f"  {name:<12} lie_dim {info['lie_dim']:<26} params: {params}")
        lines.append("spaces:")
        for name, params in spaces.items():
            lines.append(f"  {name:<16} params: {', '.join(params) or '-'}")
        return "\n".join(lines)
    raise _unknown(fmt)
