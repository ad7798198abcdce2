"""Input-document parsing and serialization.

Documents are JSON with exact rationals carried as "p/q" or "p" strings so
lattice arithmetic never sees a float.  A document holds either a `model`
stanza naming a builder or an `explicit` stanza with raw fixed-point data,
plus an optional Planck constant (numeric modules only) and integer window.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .equivariance import FixedPointDatum, SystemData
from .errors import DocumentError
from .exact import Covector, fmt, rat
from .models import (
    OscillatorSpec,
    ProjectiveSpec,
    oscillator,
    projective_space,
)
from .spectrum import MomentumPolyhedron, canonical_halfspace

MODEL_TYPES = ("oscillator_t1", "oscillator_tn", "projective")


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise DocumentError(message)


def _parse_rational(value, where: str) -> Fraction:
    try:
        if isinstance(value, bool) or isinstance(value, float):
            raise TypeError("rationals must be integers or 'p/q' strings")
        return rat(value)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise DocumentError(f"{where}: bad rational {value!r} ({exc})") from exc


def _parse_covector(values, where: str) -> Covector:
    _require(isinstance(values, list) and values, f"{where}: expected a nonempty list")
    return Covector(_parse_rational(v, where) for v in values)


def _parse_int(value, where: str) -> int:
    _require(isinstance(value, int) and not isinstance(value, bool),
             f"{where}: expected an integer, got {value!r}")
    return value


def _parse_weight(values, where: str) -> tuple:
    _require(isinstance(values, list) and values, f"{where}: expected a nonempty list")
    return tuple(_parse_int(v, where) for v in values)


@dataclass(frozen=True)
class InputDocument:
    """Normalized form of a parsed document; serialization is canonical."""

    model: Optional[dict] = None
    explicit: Optional[dict] = None
    planck_h: Fraction = Fraction(1)
    window: Optional[tuple] = None

    def to_json_dict(self) -> dict:
        out: dict = {}
        if self.model is not None:
            stanza = dict(self.model)
            if "constant" in stanza:
                stanza["constant"] = [fmt(e) for e in stanza["constant"].entries]
            if "weight_basis" in stanza:
                stanza["weight_basis"] = [list(w) for w in stanza["weight_basis"]]
            out["model"] = stanza
        if self.explicit is not None:
            ex = self.explicit
            fps = [
                {
                    "name": fp.name,
                    "weights": [list(w) for w in fp.weights],
                    "momentum": [fmt(e) for e in fp.momentum.entries],
                }
                for fp in ex["fixed_points"]
            ]
            block = {
                "rank": ex["rank"],
                "dim": ex["dim"],
                "fixed_points": fps,
                "flags": dict(ex["flags"]),
            }
            if ex.get("polyhedron") is not None:
                block["polyhedron"] = _polyhedron_to_json(ex["polyhedron"])
            out["explicit"] = block
        if self.planck_h != 1:
            out["planck_h"] = fmt(self.planck_h)
        if self.window is not None:
            out["window"] = [list(axis) for axis in self.window]
        return out

    def serialize(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, indent=2) + "\n"


def _polyhedron_to_json(spec: dict) -> dict:
    if "halfspaces" in spec:
        return {
            "halfspaces": [
                {"normal": [fmt(e) for e in h.normal.entries], "offset": fmt(h.offset)}
                for h in spec["halfspaces"]
            ],
            "degenerate": spec.get("degenerate", False),
        }
    out = {"vertices": [[fmt(e) for e in v.entries] for v in spec["vertices"]]}
    if spec.get("rays"):
        out["rays"] = [[fmt(e) for e in r.entries] for r in spec["rays"]]
    return out


def _parse_window(raw, rank: Optional[int]) -> tuple:
    _require(isinstance(raw, list) and raw, "window: expected a list of [lo, hi] pairs")
    axes = []
    for axis in raw:
        _require(
            isinstance(axis, list) and len(axis) == 2,
            "window: each axis needs [lo, hi]",
        )
        lo = _parse_int(axis[0], "window")
        hi = _parse_int(axis[1], "window")
        _require(lo <= hi, f"window: empty axis [{lo}, {hi}]")
        axes.append((lo, hi))
    if rank is not None:
        _require(len(axes) == rank, f"window: {len(axes)} axes for rank {rank}")
    return tuple(axes)


FIELDS_BY_MODEL = {
    "oscillator_t1": {"type", "n", "shifted"},
    "oscillator_tn": {"type", "n"},
    "projective": {"type", "n", "N", "weight_basis", "constant"},
}


def _parse_model_stanza(raw: dict) -> dict:
    _require(isinstance(raw, dict), "model: expected an object")
    mtype = raw.get("type")
    _require(mtype in MODEL_TYPES, f"model.type must be one of {MODEL_TYPES}")
    for key in raw:
        _require(
            key in FIELDS_BY_MODEL[mtype],
            f"model: field {key!r} is not valid for type {mtype!r}",
        )
    stanza: dict = {"type": mtype, "n": _parse_int(raw.get("n"), "model.n")}
    if mtype == "oscillator_t1":
        shifted = raw.get("shifted", True)
        _require(isinstance(shifted, bool), "model.shifted must be a boolean")
        stanza["shifted"] = shifted
    elif mtype == "projective":
        stanza["N"] = _parse_int(raw.get("N"), "model.N")
        n = stanza["n"]
        basis_raw = raw.get("weight_basis")
        if basis_raw is None:
            basis = tuple(
                tuple(1 if i == j else 0 for j in range(n)) for i in range(n)
            )
        else:
            _require(isinstance(basis_raw, list) and len(basis_raw) == n,
                     f"model.weight_basis needs {n} rows")
            basis = tuple(_parse_weight(w, "model.weight_basis") for w in basis_raw)
        stanza["weight_basis"] = basis
        const_raw = raw.get("constant")
        if const_raw is None:
            stanza["constant"] = Covector([0] * n)
        else:
            constant = _parse_covector(const_raw, "model.constant")
            _require(constant.rank == n, "model.constant rank must equal n")
            stanza["constant"] = constant
    return stanza


def _parse_polyhedron(raw: dict, rank: int) -> dict:
    _require(isinstance(raw, dict), "polyhedron: expected an object")
    if "halfspaces" in raw:
        hs = []
        for i, item in enumerate(raw["halfspaces"]):
            where = f"polyhedron.halfspaces[{i}]"
            _require(isinstance(item, dict), f"{where}: expected an object")
            normal = _parse_covector(item.get("normal"), f"{where}.normal")
            _require(normal.rank == rank, f"{where}: normal rank != {rank}")
            offset = _parse_rational(item.get("offset"), f"{where}.offset")
            hs.append(canonical_halfspace(normal, offset))
        degenerate = raw.get("degenerate", False)
        _require(isinstance(degenerate, bool), "polyhedron.degenerate must be boolean")
        return {"halfspaces": tuple(hs), "degenerate": degenerate}
    _require("vertices" in raw, "polyhedron: needs vertices or halfspaces")
    vertices = tuple(
        _parse_covector(v, "polyhedron.vertices") for v in raw["vertices"]
    )
    for v in vertices:
        _require(v.rank == rank, "polyhedron: vertex rank mismatch")
    rays = tuple(
        _parse_covector(r, "polyhedron.rays") for r in raw.get("rays", [])
    )
    for r in rays:
        _require(r.rank == rank, "polyhedron: ray rank mismatch")
    return {"vertices": vertices, "rays": rays}


def _parse_explicit_stanza(raw: dict) -> dict:
    _require(isinstance(raw, dict), "explicit: expected an object")
    rank = _parse_int(raw.get("rank"), "explicit.rank")
    dim = _parse_int(raw.get("dim"), "explicit.dim")
    fps_raw = raw.get("fixed_points")
    _require(isinstance(fps_raw, list), "explicit.fixed_points: expected a list")
    fixed_points = []
    for i, item in enumerate(fps_raw):
        where = f"explicit.fixed_points[{i}]"
        _require(isinstance(item, dict), f"{where}: expected an object")
        name = item.get("name", f"z{i}")
        _require(isinstance(name, str), f"{where}.name must be a string")
        weights = tuple(
            _parse_weight(w, f"{where}.weights") for w in item.get("weights", [])
        )
        momentum = _parse_covector(item.get("momentum"), f"{where}.momentum")
        _require(momentum.rank == rank, f"{where}: momentum rank != {rank}")
        _require(len(weights) == dim, f"{where}: expected {dim} weights")
        for w in weights:
            _require(len(w) == rank, f"{where}: weight length != {rank}")
        fixed_points.append(
            FixedPointDatum(name=name, weights=weights, momentum=momentum)
        )
    flags_raw = raw.get("flags", {})
    _require(isinstance(flags_raw, dict), "explicit.flags: expected an object")
    flags = {
        "mpc_prequantizable": flags_raw.get("mpc_prequantizable", True),
        "mpc_note": flags_raw.get("mpc_note", ""),
        "action_free_on_regular_levels": flags_raw.get(
            "action_free_on_regular_levels", False
        ),
        "action_free_note": flags_raw.get("action_free_note", ""),
    }
    for key in ("mpc_prequantizable", "action_free_on_regular_levels"):
        _require(isinstance(flags[key], bool), f"explicit.flags.{key} must be boolean")
    out = {
        "rank": rank,
        "dim": dim,
        "fixed_points": tuple(fixed_points),
        "flags": flags,
        "polyhedron": None,
    }
    if raw.get("polyhedron") is not None:
        out["polyhedron"] = _parse_polyhedron(raw["polyhedron"], rank)
    return out


def parse_document(text: str) -> InputDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from exc
    _require(isinstance(raw, dict), "document must be a JSON object")
    known = {"model", "explicit", "planck_h", "window"}
    for key in raw:
        _require(key in known, f"unknown top-level field {key!r}")
    has_model = raw.get("model") is not None
    has_explicit = raw.get("explicit") is not None
    _require(
        has_model != has_explicit,
        "document must contain exactly one of 'model' or 'explicit'",
    )
    model = _parse_model_stanza(raw["model"]) if has_model else None
    explicit = _parse_explicit_stanza(raw["explicit"]) if has_explicit else None
    planck = raw.get("planck_h", 1)
    planck_h = _parse_rational(planck, "planck_h")
    _require(planck_h > 0, "planck_h must be positive")
    rank = explicit["rank"] if explicit else None
    window = _parse_window(raw["window"], rank) if raw.get("window") is not None else None
    return InputDocument(
        model=model, explicit=explicit, planck_h=planck_h, window=window
    )


def load_document(path: str) -> InputDocument:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_document(fh.read())


def build_system(doc: InputDocument) -> SystemData:
    """Materialize the document's system description."""
    if doc.model is not None:
        stanza = doc.model
        if stanza["type"] == "oscillator_t1":
            return oscillator(
                OscillatorSpec(n=stanza["n"], variant="t1", shifted=stanza["shifted"])
            )
        if stanza["type"] == "oscillator_tn":
            return oscillator(OscillatorSpec(n=stanza["n"], variant="tn"))
        spec = ProjectiveSpec(
            n=stanza["n"],
            level_index=stanza["N"],
            weight_basis=stanza["weight_basis"],
            constant=stanza["constant"],
        )
        return projective_space(spec)
    ex = doc.explicit
    poly = None
    if ex["polyhedron"] is not None:
        pd = ex["polyhedron"]
        if "halfspaces" in pd:
            poly = MomentumPolyhedron.from_halfspaces(
                pd["halfspaces"], rank=ex["rank"], degenerate=pd["degenerate"]
            )
        elif ex["rank"] <= 2:
            poly = MomentumPolyhedron.from_points_and_rays(
                pd["vertices"], rays=pd["rays"], rank=ex["rank"]
            )
        else:
            poly = MomentumPolyhedron(
                rank=ex["rank"], vertices=pd["vertices"], rays=pd["rays"]
            )
    flags = ex["flags"]
    return SystemData(
        rank=ex["rank"],
        dim=ex["dim"],
        fixed_points=ex["fixed_points"],
        polyhedron=poly,
        mpc_prequantizable=flags["mpc_prequantizable"],
        mpc_note=flags["mpc_note"],
        action_free_on_regular_levels=flags["action_free_on_regular_levels"],
        action_free_note=flags["action_free_note"],
    )
