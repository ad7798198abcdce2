"""Numerical holonomy cross-check on the oscillator models.

Two independent routes to the circle-bundle holonomy over a torus orbit on a
momentum level set x (units of h):

* closed form: exp(-2*pi*i * <x, xi>), trivial exactly at integer levels;
* numeric: quadrature of the symplectic potential beta = (1/2) * sum(q dp - p dq)
  along the orbit, exponentiated as the prequantum phase, times the
  half-form phase built from the fixed-point weights.

Agreement of the two validates the lattice characterization of quantized
levels on models where the bundle trivializes globally.  The orientation
convention is fixed by the closed form above; triviality statements are
orientation-independent.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .equivariance import SystemData, check_equivariance
from .errors import NotEquivariantError, NotOnLevelSetError
from .exact import Covector
from .mpc import halfform_phase
from .spectrum import Region

LEVEL_TOL = 1e-9


def _oscillator_weights(model: SystemData) -> tuple:
    """Isotropy weights of a (linear) oscillator model, or raise.

    Accepts the diagonal-circle form (rank 1, all weights 1) and the
    componentwise-torus form (full rank, standard-basis weights).
    """
    if len(model.fixed_points) != 1:
        raise ValueError("oscillator models have a single fixed point")
    weights = model.fixed_points[0].weights
    k, n = model.rank, model.dim
    diag_circle = k == 1 and all(w == (1,) for w in weights)
    full_torus = k == n and all(
        w == tuple(1 if a == j else 0 for a in range(n))
        for j, w in enumerate(weights)
    )
    if not (diag_circle or full_torus):
        raise ValueError("not an oscillator model (unrecognized weight pattern)")
    return weights


def _require_equivariant(model: SystemData) -> None:
    report = check_equivariance(model)
    if not report.overall:
        raise NotEquivariantError(
            "holonomy is defined against an equivariant prequantization; "
            f"apply the shift {report.suggested_shift} first"
        )


@dataclass
class OrbitSpec:
    """A torus orbit on a level set: base point (q_1..q_n, p_1..p_n),
    generator direction xi, exact level x, and quadrature step count."""

    model: SystemData
    base_point: np.ndarray
    xi: tuple
    level: Covector
    steps: int = 1000

    def __post_init__(self):
        self.base_point = np.asarray(self.base_point, dtype=float)
        self.xi = tuple(int(a) for a in self.xi)
        if all(a == 0 for a in self.xi):
            raise ValueError("xi must be a nonzero integer direction")
        if len(self.xi) != self.model.rank:
            raise ValueError(f"xi has length {len(self.xi)}, expected {self.model.rank}")
        if self.level.rank != self.model.rank:
            raise ValueError("level rank mismatch")
        if self.base_point.shape != (2 * self.model.dim,):
            raise ValueError(
                f"base point must have {2 * self.model.dim} coordinates"
            )
        if self.steps < 16:
            raise ValueError("need at least 16 quadrature steps")


def closed_form_holonomy(x: Covector, xi) -> complex:
    """exp(-2*pi*i*<x, xi>); exactly 1 iff the pairing is an integer."""
    t = x.dot(tuple(int(a) for a in xi))
    t -= math.floor(t)
    if t == 0:
        return complex(1.0)
    return cmath.exp(-2j * math.pi * float(t))


def _moment_residual(model, weights, qs, ps, x, h):
    """Componentwise gap between the momentum of the base point and x*h."""
    mod2 = qs * qs + ps * ps
    c = model.fixed_points[0].momentum
    gaps = []
    for a in range(model.rank):
        val = float(c.entries[a]) - (math.pi / h) * sum(
            w[a] * m2 for w, m2 in zip(weights, mod2)
        )
        gaps.append(val - float(x.entries[a]))
    return max(abs(g) for g in gaps)


def orbit_action_integral(spec: OrbitSpec, h: float = 1.0) -> float:
    """Composite-trapezoid value of the symplectic potential paired with the
    orbit generator over one period.

    The orbit of xi rotates coordinate j by the angle 2*pi*<w_j, xi>*t, and
    beta evaluated on the generator is pi * sum_j <w_j, xi> * |z_j(t)|^2.
    """
    weights = _oscillator_weights(spec.model)
    n = spec.model.dim
    qs, ps = spec.base_point[:n], spec.base_point[n:]
    gap = _moment_residual(spec.model, weights, qs, ps, spec.level, h)
    if gap > LEVEL_TOL:
        raise NotOnLevelSetError(
            f"base point misses level {spec.level} by {gap:.3e} (tol {LEVEL_TOL:.0e})"
        )
    pairings = np.array([sum(a * b for a, b in zip(w, spec.xi)) for w in weights], float)

    def integrand(t: float) -> float:
        theta = 2.0 * math.pi * pairings * t
        q_t = np.cos(theta) * qs - np.sin(theta) * ps
        p_t = np.sin(theta) * qs + np.cos(theta) * ps
        return math.pi * float(np.dot(pairings, q_t * q_t + p_t * p_t))

    m = spec.steps
    values = [integrand(i / m) for i in range(m + 1)]
    return (0.5 * values[0] + sum(values[1:-1]) + 0.5 * values[-1]) / m


def numeric_mpc_holonomy(spec: OrbitSpec, h: float = 1.0) -> complex:
    """Prequantum phase of the orbit action integral times the half-form
    phase; agrees with the closed form on equivariant oscillator models."""
    _require_equivariant(spec.model)
    action = orbit_action_integral(spec, h=h)
    weights = _oscillator_weights(spec.model)
    prequantum = cmath.exp(2j * math.pi * action / h)
    return prequantum * halfform_phase(weights, spec.xi)


def base_point_for_level(model: SystemData, x: Covector, h: float = 1.0) -> np.ndarray:
    """A canonical point of the level set: all momentum mass placed in the q
    coordinates, spread evenly where the level does not pin components."""
    weights = _oscillator_weights(model)
    n, k = model.dim, model.rank
    c = model.fixed_points[0].momentum
    if k == 1:
        total = float(c.entries[0] - x.entries[0]) * h / math.pi
        if total <= 0:
            raise NotOnLevelSetError(f"level {x} is not below the vertex {c}")
        mod2 = [total / n] * n
    else:
        mod2 = []
        for a in range(n):
            m2 = float(c.entries[a] - x.entries[a]) * h / math.pi
            if m2 <= 0:
                raise NotOnLevelSetError(
                    f"level component {x.entries[a]} is not below {c.entries[a]}"
                )
            mod2.append(m2)
    qs = np.sqrt(np.array(mod2))
    return np.concatenate([qs, np.zeros(n)])


def orbit_spec_for_level(
    model: SystemData, x: Covector, xi, steps: int = 1000, h: float = 1.0
) -> OrbitSpec:
    return OrbitSpec(
        model=model,
        base_point=base_point_for_level(model, x, h=h),
        xi=tuple(xi),
        level=x,
        steps=steps,
    )


def is_quantized_via_holonomy(
    model: SystemData,
    x: Covector,
    steps: int = 1000,
    h: float = 1.0,
    tol: float = 1e-6,
) -> bool:
    """True iff the numeric holonomy is trivial in every lattice basis
    direction; agrees with integrality of x on the oscillator models."""
    if model.polyhedron is None or model.polyhedron.classify(x) is not Region.INTERIOR:
        raise ValueError(f"level {x} is not an interior (regular) value")
    k = model.rank
    for a in range(k):
        xi = tuple(1 if b == a else 0 for b in range(k))
        spec = orbit_spec_for_level(model, x, xi, steps=steps, h=h)
        if abs(numeric_mpc_holonomy(spec, h=h) - 1.0) >= tol:
            return False
    return True
