"""Fixed-point data and the equivariance condition for torus actions.

At a fixed point the torus rotates the tangent space with integer isotropy
weights w_1..w_n; half their sum is the shift that separates the
metaplectic-c equivariance lattice from the plain prequantization lattice.
A system admits an equivariant metaplectic-c prequantization iff its
momentum value at a fixed point, in units of h, lands on the shifted lattice,
i.e. the defect frac(momentum - half_sum) vanishes.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional

from .errors import (
    InconsistentDefectsError,
    NoFixedPointsError,
    NotPrequantizableError,
)
from .exact import Covector, UnimodularMatrix, WeightVector


@dataclass(frozen=True)
class FixedPointDatum:
    """A fixed point: its isotropy weights and momentum value (units of h)."""

    name: str
    weights: tuple[WeightVector, ...]
    momentum: Covector

    def __post_init__(self):
        for w in self.weights:
            if len(w) != self.momentum.rank:
                raise ValueError(
                    f"weight {w} has length {len(w)}, expected {self.momentum.rank}"
                )


@dataclass(frozen=True)
class SystemData:
    """A torus action summarized by its fixed-point data.

    `polyhedron` is the momentum image when known (see spectrum module).  The
    two flags are model-provided hypotheses, not derived facts; their notes
    record where they come from.
    """

    rank: int
    dim: int
    fixed_points: tuple[FixedPointDatum, ...]
    polyhedron: Optional[object] = None
    mpc_prequantizable: bool = True
    mpc_note: str = ""
    action_free_on_regular_levels: bool = False
    action_free_note: str = ""

    def __post_init__(self):
        if self.rank > self.dim:
            raise ValueError(f"rank {self.rank} exceeds complex dimension {self.dim}")
        for fp in self.fixed_points:
            if fp.momentum.rank != self.rank:
                raise ValueError(f"fixed point {fp.name}: momentum rank != {self.rank}")
            if len(fp.weights) != self.dim:
                raise ValueError(
                    f"fixed point {fp.name}: {len(fp.weights)} weights, "
                    f"expected {self.dim}"
                )


@dataclass(frozen=True)
class PointReport:
    name: str
    half_sum: Covector
    defect: Covector


@dataclass(frozen=True)
class EquivarianceReport:
    points: tuple[PointReport, ...]
    overall: bool
    suggested_shift: Optional[Covector] = None


def half_sum(z: FixedPointDatum) -> Covector:
    """Half the componentwise sum of the isotropy weights at z."""
    k = z.momentum.rank
    totals = [Fraction(0)] * k
    for w in z.weights:
        for i, e in enumerate(w):
            totals[i] += e
    return Covector(t / 2 for t in totals)


def defect(z: FixedPointDatum) -> Covector:
    """Fractional part of momentum - half_sum; zero iff the equivariance
    condition holds at z."""
    return (z.momentum - half_sum(z)).frac()


def check_equivariance(s: SystemData) -> EquivarianceReport:
    """Evaluate the fixed-point condition at every listed fixed point.

    The condition at a single fixed point decides existence for genuine
    systems; all points are checked so that inconsistent input data is
    surfaced rather than silently trusted.
    """
    if not s.mpc_prequantizable:
        raise NotPrequantizableError(
            "system is not flagged metaplectic-c prequantizable"
        )
    if not s.fixed_points:
        raise NoFixedPointsError("no fixed points supplied")
    points = tuple(
        PointReport(fp.name, half_sum(fp), defect(fp)) for fp in s.fixed_points
    )
    overall = all(p.defect.is_zero() for p in points)
    suggested = None
    if not overall:
        shifts = {(half_sum(fp) - fp.momentum).frac() for fp in s.fixed_points}
        if len(shifts) == 1:
            suggested = next(iter(shifts))
    return EquivarianceReport(points=points, overall=overall, suggested_shift=suggested)


def solve_shift(s: SystemData) -> Covector:
    """Canonical shift c in [0,1)^k making every fixed-point defect zero.

    Each fixed point demands c = frac(half_sum - momentum); genuine systems
    agree across fixed points, so disagreement is an input-consistency error.
    """
    if not s.fixed_points:
        raise NoFixedPointsError("no fixed points supplied")
    shifts = [(half_sum(fp) - fp.momentum).frac() for fp in s.fixed_points]
    first = shifts[0]
    if any(c != first for c in shifts[1:]):
        defects = ", ".join(
            f"{fp.name}: defect {defect(fp)}" for fp in s.fixed_points
        )
        raise InconsistentDefectsError(
            f"fixed points demand different shifts ({defects}); "
            "no single constant makes the system equivariant"
        )
    return first


def shifted_system(s: SystemData, c: Covector) -> SystemData:
    """Add the constant c to every momentum value (and translate the
    momentum image, if present)."""
    fps = tuple(replace(fp, momentum=fp.momentum + c) for fp in s.fixed_points)
    poly = s.polyhedron.translate(c) if s.polyhedron is not None else None
    return replace(s, fixed_points=fps, polyhedron=poly)


def transform_system(s: SystemData, b: UnimodularMatrix) -> SystemData:
    """Relabel the dual lattice: weights and momenta co-transform by the
    right action of B (they live in the same space and the defect couples
    them), and the momentum image moves along."""
    fps = tuple(
        FixedPointDatum(
            name=fp.name,
            weights=tuple(b.transform_weight(w) for w in fp.weights),
            momentum=b.transform_momentum(fp.momentum),
        )
        for fp in s.fixed_points
    )
    poly = s.polyhedron.transform(b) if s.polyhedron is not None else None
    return replace(s, fixed_points=fps, polyhedron=poly)
