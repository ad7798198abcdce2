"""Command-line front end.

Exit codes: 0 for success or a positive mathematical verdict, 1 for a
negative mathematical verdict (not equivariant, inconsistent defects), 2 for
input or usage errors.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import holonomy as hol
from .docio import InputDocument, build_system, load_document
from .equivariance import check_equivariance, solve_shift
from .errors import (
    InconsistentDefectsError,
    MpcquantError,
    NotPrequantizableError,
    RankUnsupportedError,
    UnboundedError,
    WindowRequiredError,
)
from .exact import Covector, fmt
from .report import (
    Report,
    covector_json,
    equivariance_json,
    polyhedron_json,
    render_human,
)
from .spectrum import Region, hull_from_fixed_points, quantized_levels, reduction_report
from .svg import render_diagram

MODELS_HELP = """\
available model stanzas (the "model" field of an input document):

  {"type": "oscillator_t1", "n": 3, "shifted": true}
      diagonal circle action on the n-dimensional oscillator; "shifted"
      selects the momentum map satisfying the equivariance condition

  {"type": "oscillator_tn", "n": 2}
      componentwise torus action on the n-dimensional oscillator (shifted)

  {"type": "projective", "n": 2, "N": 0,
   "weight_basis": [[1, 0], [0, 1]], "constant": ["1/2", "1/2"]}
      projective space CP^n with K/hbar = N + (n+1)/2; weight_basis defaults
      to the standard basis and constant defaults to zero

alternatively supply "explicit": {rank, dim, fixed_points, polyhedron?, flags}
with rationals as "p/q" strings.
"""


def _parse_window_flag(text: str):
    axes = []
    for part in text.split("x"):
        pieces = part.split(",")
        if len(pieces) != 2:
            raise ValueError(f"bad window axis {part!r}; expected lo,hi")
        lo, hi = int(pieces[0]), int(pieces[1])
        if lo > hi:
            raise ValueError(f"empty window axis {part!r}")
        axes.append((lo, hi))
    return tuple(axes)


def _doc_window(doc: InputDocument, args, rank: int):
    window = doc.window
    if getattr(args, "window", None):
        window = _parse_window_flag(args.window)
    if window is not None and len(window) != rank:
        raise WindowRequiredError(
            f"window has {len(window)} axes but the system has rank {rank}"
        )
    return window


def _ensure_polyhedron(system):
    if system.polyhedron is not None:
        return system.polyhedron
    return hull_from_fixed_points(system)


def _is_oscillator(system) -> bool:
    try:
        hol._oscillator_weights(system)
        return True
    except ValueError:
        return False


def _energies(system, levels):
    """E/hbar for oscillator levels: the classical energy on the level set
    is the vertex momentum minus the level, summed over components."""
    vertex_sum = sum(system.fixed_points[0].momentum.entries, Fraction(0))
    return [fmt(vertex_sum - sum(lvl.point)) for lvl in levels]


def _reduction_rows(system, levels):
    rows = []
    for lvl in levels:
        try:
            red = reduction_report(system, lvl.covector())
        except MpcquantError:
            return None
        successor_equivariant = None
        if red.successor is not None:
            successor_equivariant = check_equivariance(red.successor).overall
        rows.append(
            {
                "level": list(lvl.point),
                "reduced_dim": red.reduced_dim,
                "prequantizable": red.reduction_prequantizable,
                "k_over_hbar": fmt(red.k_over_hbar) if red.k_over_hbar is not None else None,
                "successor_equivariant": successor_equivariant,
                "note": red.note,
            }
        )
    return rows


def cmd_check(doc: InputDocument, args) -> tuple:
    system = build_system(doc)
    report = Report(command="check", input_document=doc.to_json_dict())
    try:
        eq = check_equivariance(system)
    except NotPrequantizableError as exc:
        report.error = str(exc)
        report.equivariance = {"overall": False, "points": []}
        return report, 1
    report.equivariance = equivariance_json(eq)
    return report, 0 if eq.overall else 1


def cmd_shift(doc: InputDocument, args) -> tuple:
    system = build_system(doc)
    report = Report(command="shift", input_document=doc.to_json_dict())
    try:
        shift = solve_shift(system)
    except InconsistentDefectsError as exc:
        report.error = str(exc)
        return report, 1
    report.shift = covector_json(shift)
    return report, 0


def cmd_levels(doc: InputDocument, args) -> tuple:
    system = build_system(doc)
    poly = _ensure_polyhedron(system)
    window = _doc_window(doc, args, system.rank)
    levels = quantized_levels(poly, window=window)
    report = Report(
        command="levels",
        input_document=doc.to_json_dict(),
        polyhedron=polyhedron_json(poly),
        levels=[list(lvl.point) for lvl in levels],
        count=len(levels),
    )
    if _is_oscillator(system):
        report.energies = _energies(system, levels)
    if system.action_free_on_regular_levels:
        report.reductions = _reduction_rows(system, levels)
    return report, 0


def _half_integer_grid(window):
    axes = []
    for lo, hi in window:
        axes.append([Fraction(m, 2) for m in range(2 * lo, 2 * hi + 1)])
    out = [()]
    for axis in axes:
        out = [prefix + (v,) for prefix in out for v in axis]
    return [Covector(entries) for entries in out]


def cmd_holonomy(doc: InputDocument, args) -> tuple:
    system = build_system(doc)
    if not _is_oscillator(system):
        raise MpcquantError("the holonomy table is available only for oscillator models")
    window = _doc_window(doc, args, system.rank)
    if window is None:
        raise WindowRequiredError(
            "holonomy needs a window, e.g. --window -3,1"
        )
    report = Report(command="holonomy", input_document=doc.to_json_dict())
    eq = check_equivariance(system)
    if not eq.overall:
        report.equivariance = equivariance_json(eq)
        report.error = (
            "model momentum map is not equivariant; apply the suggested shift"
        )
        return report, 1
    poly = _ensure_polyhedron(system)
    h = float(doc.planck_h)
    steps = args.steps
    rows = []
    k = system.rank
    for x in _half_integer_grid(window):
        if poly.classify(x) is not Region.INTERIOR:
            continue
        trivial = True
        for a in range(k):
            xi = tuple(1 if b == a else 0 for b in range(k))
            spec = hol.orbit_spec_for_level(system, x, xi, steps=steps, h=h)
            numeric = hol.numeric_mpc_holonomy(spec, h=h)
            closed = hol.closed_form_holonomy(x, xi)
            trivial = trivial and abs(numeric - 1.0) < 1e-6
            rows.append(
                {
                    "level": covector_json(x),
                    "xi": list(xi),
                    "numeric": [numeric.real, numeric.imag],
                    "closed": [closed.real, closed.imag],
                    "agreement": abs(numeric - closed),
                    "trivial": bool(abs(numeric - 1.0) < 1e-6),
                }
            )
    report.holonomy = rows
    return report, 0


def cmd_render(doc: InputDocument, args) -> tuple:
    system = build_system(doc)
    if system.rank != 2:
        raise RankUnsupportedError("diagrams are drawn only at rank 2")
    if not args.output:
        raise MpcquantError("render requires --output <file.svg>")
    poly = _ensure_polyhedron(system)
    window = _doc_window(doc, args, system.rank)
    levels = quantized_levels(poly, window=window)
    fixed_images = [(fp.name, fp.momentum) for fp in system.fixed_points]
    text = render_diagram(
        poly,
        [lvl.point for lvl in levels],
        fixed_images,
        window=window,
    )
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(text)
    report = Report(
        command="render",
        input_document=doc.to_json_dict(),
        levels=[list(lvl.point) for lvl in levels],
        count=len(levels),
        diagram=args.output,
    )
    return report, 0


COMMANDS = {
    "check": cmd_check,
    "shift": cmd_shift,
    "levels": cmd_levels,
    "holonomy": cmd_holonomy,
    "render": cmd_render,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mpcquant",
        description="equivariance checks, momentum shifts, quantized energy "
        "levels, and holonomy tables for Hamiltonian torus actions",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("check", "evaluate the fixed-point equivariance condition"),
        ("shift", "solve for the momentum shift that makes the system equivariant"),
        ("levels", "enumerate quantized energy levels"),
        ("holonomy", "tabulate orbit holonomy on oscillator models"),
        ("render", "draw the rank-2 momentum polytope as SVG"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--input", required=True, help="input document (JSON)")
        p.add_argument(
            "--format", choices=("human", "machine"), default="human",
            help="report rendering (default human)",
        )
        p.add_argument("--window", help="integer window, e.g. -3,3 or -3,3x-3,3")
        if name == "holonomy":
            p.add_argument("--steps", type=int, default=1000,
                           help="quadrature steps (default 1000)")
        if name == "render":
            p.add_argument("--output", help="output SVG path")
    sub.add_parser("models", help="list available model stanzas")
    return parser


def _join_window_flag(argv):
    """Fold "--window -2,0" into "--window=-2,0" so argparse does not read
    the negative bound as an option."""
    out = []
    i = 0
    while i < len(argv):
        if argv[i] == "--window" and i + 1 < len(argv):
            out.append(f"--window={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    args = build_parser().parse_args(_join_window_flag(list(argv)))
    if args.command == "models":
        print(MODELS_HELP, end="")
        return 0
    try:
        doc = load_document(args.input)
        report, code = COMMANDS[args.command](doc, args)
    except (UnboundedError, WindowRequiredError) as exc:
        print(
            f"error: {exc}\nhint: pass --window, e.g. --window -5,0",
            file=sys.stderr,
        )
        return 2
    except MpcquantError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.format == "machine":
        sys.stdout.write(report.to_json())
    else:
        sys.stdout.write(render_human(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
