"""Report assembly and serialization (JSON, CSV, plain table) plus the
golden-table comparison."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from importlib import resources

from . import __version__
from .classify import FamilyRecord
from .fuchsian import format_branching, parse_branching

SCHEMA_VERSION = "1.0"
CSV_COLUMNS = ("label", "group", "order", "m", "n", "gC", "gF", "components", "dimension")


@dataclass
class Report:
    command: list[str]
    catalog: str
    records: list[FamilyRecord]
    replay: list[dict] = field(default_factory=list)
    orbits: dict | None = None
    warnings: list[str] = field(default_factory=list)
    golden: dict | None = None
    seconds: float = 0.0
    version: str = __version__

    def to_dict(self) -> dict:
        d = {
            "schema_version": SCHEMA_VERSION,
            "tool": {"name": "isoprod", "version": self.version},
            "command": list(self.command),
            "catalog": self.catalog,
            "records": [r.to_dict() for r in self.records],
            "replay": list(self.replay),
            "warnings": list(self.warnings),
            "timing": {"seconds": round(self.seconds, 3)},
        }
        if self.orbits is not None:
            d["orbits"] = self.orbits
        if self.golden is not None:
            d["golden"] = self.golden
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        return cls(command=list(d["command"]), catalog=d["catalog"],
                   records=[FamilyRecord.from_dict(r) for r in d["records"]],
                   replay=list(d.get("replay", [])), orbits=d.get("orbits"),
                   warnings=list(d.get("warnings", [])), golden=d.get("golden"),
                   seconds=d["timing"]["seconds"], version=d["tool"]["version"])


def to_json(report: Report) -> str:
    return json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n"


def records_json(records: list[FamilyRecord]) -> str:
    """Records only, with no timing; stable across runs."""
    return json.dumps([r.to_dict() for r in records], indent=2, sort_keys=True) + "\n"


def csv_row(r: FamilyRecord) -> dict:
    return {"label": r.label, "group": r.group, "order": r.order, "m": format_branching(r.m),
            "n": format_branching(r.n), "gC": r.g_C, "gF": r.g_F,
            "components": r.num_components, "dimension": r.component_dimension}


def to_csv(records: list[FamilyRecord]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    for r in records:
        w.writerow(csv_row(r))
    return buf.getvalue()


def parse_csv(text: str) -> list[dict]:
    """CSV rows back into typed summary dicts (see :func:`summary`)."""
    out = []
    for row in csv.DictReader(io.StringIO(text)):
        out.append({"label": row["label"], "group": row["group"], "order": int(row["order"]),
                    "m": parse_branching(row["m"]), "n": parse_branching(row["n"]),
                    "gC": int(row["gC"]), "gF": int(row["gF"]),
                    "components": int(row["components"]), "dimension": int(row["dimension"])})
    return out


def summary(r: FamilyRecord) -> dict:
    return {"label": r.label, "group": r.group, "order": r.order, "m": tuple(r.m), "n": tuple(r.n),
            "gC": r.g_C, "gF": r.g_F, "components": r.num_components, "dimension": r.component_dimension}


def to_table(report: Report) -> str:
    rows = [csv_row(r) for r in report.records]
    for row, rec in zip(rows, report.records):
        if not rec.exact:
            row["components"] = f">={row['components']}"
    cols = list(CSV_COLUMNS)
    widths = {c: max([len(c)] + [len(str(row[c])) for row in rows]) for c in cols}
    lines = []
    if rows or report.orbits is None:
        lines.append("  ".join(c.ljust(widths[c]) for c in cols).rstrip())
        lines.append("  ".join("-" * widths[c] for c in cols))
        for row in rows:
            lines.append("  ".join(str(row[c]).ljust(widths[c]) for c in cols).rstrip())
    for rec in report.records:
        for v, w in rec.representatives[:4]:
            lines.append(f"  {rec.label}: V={v}  W={w}")
        if len(rec.representatives) > 4:
            lines.append(f"  {rec.label}: ... {len(rec.representatives) - 4} more")
    if report.orbits is not None:
        o = report.orbits
        lines.append(f"orbits: G={o['group']} V{o['signature']} W{o['base_signature']}: "
                     f"{o['valid_pairs']} valid pairs, {o['num_classes']} classes")
        for c in o["classes"]:
            lines.append(f"  size {c['size']}: V={c['V']}  W={c['W']}")
        if o.get("note"):
            lines.append(f"  note: {o['note']}")
    for t in report.replay:
        lines.append(f"[{'PASS' if t['ok'] else 'FAIL'}] {t['family']}: {t['claim']}")
    for w in report.warnings:
        lines.append(f"warning: {w}")
    if report.golden is not None:
        lines.append(f"golden: {'match' if report.golden['match'] else 'MISMATCH'}"
                     + "".join(f"\n  {p}" for p in report.golden.get("problems", [])))
    lines.append(f"catalog: {report.catalog}")
    return "\n".join(lines) + "\n"


def load_data(name: str) -> dict:
    return json.loads(resources.files("isoprod").joinpath("data", name).read_text(encoding="utf-8"))


def load_schema() -> dict:
    return load_data("report.schema.json")


def load_golden() -> dict:
    return load_data("golden.json")


def _golden_key(d: dict) -> tuple:
    return (d["group"], d["order"], tuple(d["m"]), tuple(d["n"]), d["gC"], d["gF"])


def compare_abelian(records: list[FamilyRecord], golden: dict | None = None) -> list[str]:
    """Structural differences between abelian records and the golden table."""
    golden = golden or load_golden()
    want = {_golden_key(d): d for d in golden["abelian"]}
    got = {_golden_key(summary(r)): summary(r) for r in records}
    problems = []
    for k in sorted(set(want) - set(got)):
        problems.append(f"missing family {want[k]['label']}: {k}")
    for k in sorted(set(got) - set(want)):
        problems.append(f"unexpected family {got[k]['label']}: {k}")
    for k in sorted(set(want) & set(got)):
        for f in ("label", "components", "dimension"):
            if want[k][f] != got[k][f]:
                problems.append(f"{want[k]['label']}: {f} {got[k][f]} != {want[k][f]}")
    return problems


def compare_nonabelian(records: list[FamilyRecord], golden: dict | None = None,
                       max_order: int | None = None) -> list[str]:
    """Known rows (up to ``max_order``) missing from ``records``."""
    golden = golden or load_golden()
    got = {_golden_key(summary(r)) for r in records}
    problems = []
    for d in golden["nonabelian_known"]:
        if max_order is not None and d["order"] > max_order:
            continue
        if _golden_key(d) not in got:
            problems.append(f"missing known row {d['group']}: m={d['m']} n={d['n']}")
    return problems
