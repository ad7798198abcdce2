"""Builders for the two worked model families.

Harmonic oscillators on C^n carry either the diagonal circle action (every
coordinate rotated together, momentum -pi*|z|^2 up to the half-shift) or the
componentwise torus action.  Projective space CP^n carries a linear torus
action induced from C^{n+1} with an integer weight basis k^1..k^n; writing
k^0 = 0, the fixed point Z_j has isotropy weights {k^i - k^j : i != j} and
momentum image -(N + (n+1)/2) k^j + C in units of h, where the integer N
fixes the symplectic scale K/hbar = N + (n+1)/2.

The projective builder for n >= 3 extends the n = 2 pattern; it is exercised
by consistency tests only, and its momentum image is attached only at ranks
where the exact hull is available.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .equivariance import FixedPointDatum, SystemData
from .errors import NonUnimodularError
from .exact import Covector, UnimodularMatrix, WeightVector
from .spectrum import MomentumPolyhedron, canonical_halfspace, hull_from_fixed_points


@dataclass(frozen=True)
class OscillatorSpec:
    n: int
    variant: str = "t1"  # "t1" diagonal circle, "tn" componentwise torus
    shifted: bool = True

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.variant not in ("t1", "tn"):
            raise ValueError(f"unknown oscillator variant {self.variant!r}")


@dataclass(frozen=True)
class ProjectiveSpec:
    """CP^n with symplectic scale K/hbar = N + (n+1)/2 and additive constant C."""

    n: int
    level_index: int
    weight_basis: tuple[WeightVector, ...]
    constant: Covector

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if len(self.weight_basis) != self.n:
            raise ValueError(f"need {self.n} basis weights, got {len(self.weight_basis)}")
        if self.constant.rank != self.n:
            raise ValueError("constant rank must equal n")

    @property
    def k_over_hbar(self) -> Fraction:
        return self.level_index + Fraction(self.n + 1, 2)


def standard_basis(k: int) -> tuple:
    return tuple(tuple(1 if i == j else 0 for j in range(k)) for i in range(k))


def solved_constant(weight_basis) -> Covector:
    """The constant C = (1/2) * sum_j k^j that satisfies the equivariance
    condition at every fixed point of the projective model."""
    k = len(weight_basis)
    return Covector(
        Fraction(sum(w[a] for w in weight_basis), 2) for a in range(k)
    )


def oscillator_t1(n: int, shifted: bool = True) -> SystemData:
    """Diagonal circle action on the n-dimensional oscillator.

    One fixed point at the origin with all isotropy weights 1.  The momentum
    value there is n/2 (units of h) when shifted, else 0; the momentum image
    is the half-line below it.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    vertex = Covector([Fraction(n, 2) if shifted else Fraction(0)])
    fp = FixedPointDatum(name="origin", weights=((1,),) * n, momentum=vertex)
    poly = MomentumPolyhedron.from_points_and_rays([vertex], rays=[Covector([-1])])
    return SystemData(
        rank=1,
        dim=n,
        fixed_points=(fp,),
        polyhedron=poly,
        mpc_prequantizable=True,
        mpc_note="contractible phase space; prequantization exists and is unique",
        action_free_on_regular_levels=True,
        action_free_note="diagonal circle acts freely away from the origin, "
        "and regular level sets avoid the origin",
    )


def oscillator_tn(n: int) -> SystemData:
    """Componentwise torus action on the n-dimensional oscillator, shifted.

    Full-rank action: weights are the standard basis of the integer lattice
    and the shifted momentum at the origin is (1/2, ..., 1/2).  Both
    polyhedron representations are written directly (the image is the
    downward orthant at the vertex), so any rank is supported.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    vertex = Covector([Fraction(1, 2)] * n)
    weights = standard_basis(n)
    fp = FixedPointDatum(name="origin", weights=weights, momentum=vertex)
    rays = tuple(
        Covector([-1 if a == j else 0 for a in range(n)]) for j in range(n)
    )
    halfspaces = [
        canonical_halfspace(Covector(w), Fraction(1, 2)) for w in weights
    ]
    poly = MomentumPolyhedron(
        rank=n,
        vertices=(vertex,),
        rays=tuple(sorted(rays)),
        halfspaces=sorted(halfspaces),
        degenerate=False,
    )
    return SystemData(
        rank=n,
        dim=n,
        fixed_points=(fp,),
        polyhedron=poly,
        mpc_prequantizable=True,
        mpc_note="contractible phase space; prequantization exists and is unique",
        action_free_on_regular_levels=True,
        action_free_note="componentwise torus acts freely where every "
        "coordinate is nonzero, which holds on interior level sets",
    )


def oscillator(spec: OscillatorSpec) -> SystemData:
    if spec.variant == "t1":
        return oscillator_t1(spec.n, shifted=spec.shifted)
    return oscillator_tn(spec.n)


def projective_space(spec: ProjectiveSpec) -> SystemData:
    """Linear torus action on CP^n from an integer weight basis.

    Raises NonUnimodularError unless the basis spans the integer lattice.
    """
    n = spec.n
    try:
        UnimodularMatrix(spec.weight_basis)
    except NonUnimodularError as exc:
        raise NonUnimodularError(f"weight basis is not unimodular: {exc}") from exc
    lam = spec.k_over_hbar
    k_vecs = (tuple([0] * n),) + tuple(tuple(w) for w in spec.weight_basis)
    fixed_points = []
    for j in range(n + 1):
        weights = tuple(
            tuple(k_vecs[i][a] - k_vecs[j][a] for a in range(n))
            for i in range(n + 1)
            if i != j
        )
        momentum = spec.constant - Covector(k_vecs[j]) * lam
        fixed_points.append(
            FixedPointDatum(name=f"Z{j}", weights=weights, momentum=momentum)
        )
    system = SystemData(
        rank=n,
        dim=n,
        fixed_points=tuple(fixed_points),
        polyhedron=None,
        mpc_prequantizable=True,
        mpc_note=(
            f"projective space is metaplectic-c prequantizable at "
            f"K/hbar = N + (n+1)/2 = {lam} (N = {spec.level_index})"
        ),
        action_free_on_regular_levels=True,
        action_free_note="torus acts freely over the interior of the "
        "momentum simplex (model-asserted)",
    )
    if n <= 2:
        system = replace(system, polyhedron=hull_from_fixed_points(system))
    return system
