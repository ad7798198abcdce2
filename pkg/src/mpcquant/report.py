"""Structured command reports with machine and human renderings.

The machine form is JSON-shaped data (strings for exact rationals, lists for
lattice points) and round-trips losslessly; the human form is a plain-text
summary of the same content.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from typing import Optional

from .exact import Covector, fmt


def covector_json(v: Covector) -> list:
    return [fmt(e) for e in v.entries]


def polyhedron_json(poly) -> dict:
    out: dict = {"rank": poly.rank, "degenerate": poly.degenerate}
    if poly.vertices is not None:
        out["vertices"] = [covector_json(v) for v in poly.vertices]
    if poly.rays:
        out["rays"] = [covector_json(r) for r in poly.rays]
    if poly.halfspaces is not None:
        out["halfspaces"] = [
            {"normal": covector_json(h.normal), "offset": fmt(h.offset)}
            for h in poly.halfspaces
        ]
    return out


def equivariance_json(report) -> dict:
    out = {
        "overall": report.overall,
        "points": [
            {
                "name": p.name,
                "half_sum": covector_json(p.half_sum),
                "defect": covector_json(p.defect),
            }
            for p in report.points
        ],
    }
    if report.suggested_shift is not None:
        out["suggested_shift"] = covector_json(report.suggested_shift)
    return out


@dataclass
class Report:
    command: str
    input_document: Optional[dict] = None
    equivariance: Optional[dict] = None
    shift: Optional[list] = None
    polyhedron: Optional[dict] = None
    levels: Optional[list] = None
    count: Optional[int] = None
    energies: Optional[list] = None
    reductions: Optional[list] = None
    holonomy: Optional[list] = None
    diagram: Optional[str] = None
    error: Optional[str] = None

    def to_json(self) -> str:
        data = {k: v for k, v in asdict(self).items() if v is not None}
        return json.dumps(data, sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Report":
        data = json.loads(text)
        return cls(**data)


def _format_table(rows, headers) -> list:
    widths = [
        max(len(str(h)), *(len(str(r[i])) for r in rows)) if rows else len(str(h))
        for i, h in enumerate(headers)
    ]
    lines = ["  ".join(str(h).ljust(w) for h, w in zip(headers, widths))]
    for r in rows:
        lines.append("  ".join(str(c).ljust(w) for c, w in zip(r, widths)))
    return lines


def render_human(report: Report) -> str:
    lines = [f"command: {report.command}"]
    if report.error is not None:
        lines.append(f"error: {report.error}")
    if report.equivariance is not None:
        eq = report.equivariance
        lines.append(f"equivariant: {'yes' if eq['overall'] else 'no'}")
        rows = [
            (
                p["name"],
                "(" + ", ".join(p["half_sum"]) + ")",
                "(" + ", ".join(p["defect"]) + ")",
            )
            for p in eq["points"]
        ]
        lines.extend(_format_table(rows, ("fixed point", "half-sum", "defect")))
        if eq.get("suggested_shift"):
            lines.append("suggested shift: (" + ", ".join(eq["suggested_shift"]) + ")")
    if report.shift is not None:
        lines.append("shift: (" + ", ".join(report.shift) + ")")
    if report.polyhedron is not None:
        poly = report.polyhedron
        if "vertices" in poly:
            lines.append(
                "vertices: "
                + "; ".join("(" + ", ".join(v) + ")" for v in poly["vertices"])
            )
        if poly.get("rays"):
            lines.append(
                "rays: " + "; ".join("(" + ", ".join(r) + ")" for r in poly["rays"])
            )
        if poly.get("degenerate"):
            lines.append("polyhedron is degenerate (not full-dimensional)")
    if report.levels is not None:
        lines.append(f"quantized levels ({len(report.levels)}):")
        for i, point in enumerate(report.levels):
            entry = "  (" + ", ".join(str(c) for c in point) + ")"
            if report.energies is not None:
                entry += f"   E/hbar = {report.energies[i]}"
            lines.append(entry)
    if report.count is not None:
        lines.append(f"count: {report.count}")
    if report.reductions:
        lines.append("reductions:")
        for red in report.reductions:
            point = "(" + ", ".join(str(c) for c in red["level"]) + ")"
            extra = f", K/hbar = {red['k_over_hbar']}" if red.get("k_over_hbar") else ""
            succ = ""
            if red.get("successor_equivariant") is not None:
                succ = (
                    ", successor equivariant"
                    if red["successor_equivariant"]
                    else ", successor NOT equivariant"
                )
            lines.append(
                f"  level {point}: reduced dim {red['reduced_dim']}"
                f"{extra}{succ}  [{red['note']}]"
            )
    if report.holonomy is not None:
        rows = [
            (
                "(" + ", ".join(row["level"]) + ")",
                "(" + ", ".join(str(c) for c in row["xi"]) + ")",
                f"{row['numeric'][0]:+.9f}{row['numeric'][1]:+.9f}i",
                f"{row['closed'][0]:+.9f}{row['closed'][1]:+.9f}i",
                "yes" if row["trivial"] else "no",
            )
            for row in report.holonomy
        ]
        lines.extend(
            _format_table(rows, ("level", "xi", "numeric", "closed form", "trivial"))
        )
    if report.diagram is not None:
        lines.append(f"diagram written to {report.diagram}")
    return "\n".join(lines) + "\n"
