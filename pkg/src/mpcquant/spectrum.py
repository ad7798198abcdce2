"""Momentum polyhedra, value classification, and level enumeration.

The momentum image is a rational convex polyhedron: convex hull of the
fixed-point images plus model-supplied recession rays.  Regular values are
the interior values for the supported models; quantized energy levels are
the integer lattice points (units of h) classified as interior.  All
geometry here is exact over the rationals.

Exact facet computation is implemented at rank 1 and 2 by homogenizing to a
cone one dimension up and enumerating supporting hyperplanes through
generator subsets.  Higher ranks require an explicit halfspace description.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .equivariance import SystemData, defect
from .errors import (
    ActionNotFreeError,
    NotQuantizedError,
    RankUnsupportedError,
    UnboundedError,
    WindowRequiredError,
)
from .exact import Covector, UnimodularMatrix, rat

Window = tuple  # per-axis (lo, hi) integer bounds, inclusive


class Region(Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    EXTERIOR = "exterior"


@dataclass(frozen=True, order=True)
class Halfspace:
    """Constraint <normal, x> <= offset with integer primitive data."""

    normal: Covector
    offset: Fraction

    def evaluate(self, x: Covector) -> Fraction:
        """Positive outside, zero on the boundary plane, negative inside."""
        return self.normal.dot(x) - self.offset


def _gcd_all(values: Iterable[int]) -> int:
    g = 0
    for v in values:
        g = math.gcd(g, abs(v))
    return g


def _primitive(entries: Sequence[Fraction]) -> tuple:
    """Scale a nonzero rational vector to coprime integers, preserving sign."""
    denom = 1
    for e in entries:
        denom = denom * e.denominator // math.gcd(denom, e.denominator)
    ints = [int(e * denom) for e in entries]
    g = _gcd_all(ints)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    return tuple(v // g for v in ints)


def canonical_halfspace(normal, offset) -> Halfspace:
    """Normalize to coprime integer (normal, offset) for stable comparison."""
    n = normal.entries if isinstance(normal, Covector) else tuple(rat(e) for e in normal)
    o = rat(offset)
    denom = o.denominator
    for e in n:
        denom = denom * e.denominator // math.gcd(denom, e.denominator)
    ints = [int(e * denom) for e in n] + [int(o * denom)]
    g = _gcd_all(ints)
    if g == 0 or all(v == 0 for v in ints[:-1]):
        raise ValueError("halfspace normal must be nonzero")
    ints = [v // g for v in ints]
    return Halfspace(normal=Covector(ints[:-1]), offset=Fraction(ints[-1]))


def _span_rank(vectors: Sequence[Sequence[Fraction]]) -> int:
    rows = [list(v) for v in vectors]
    rank = 0
    cols = len(rows[0]) if rows else 0
    for col in range(cols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pv = rows[rank][col]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col] / pv
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def _cross3(a, b) -> tuple:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def _orient(candidate, generators):
    """Return the orientation of `candidate` with all generators on the
    non-positive side, or None if the plane is not supporting."""
    signs = [sum(c * g for c, g in zip(candidate, gen)) for gen in generators]
    if all(s <= 0 for s in signs):
        return candidate
    if all(s >= 0 for s in signs):
        return tuple(-c for c in candidate)
    return None


def _facets_full_dim(generators: Sequence[tuple], rank: int) -> list:
    """Supporting halfspaces of a full-dimensional homogenized cone.

    Generators are integer (rank+1)-vectors; candidates orthogonal to one
    (rank 1) or two (rank 2) generators are tested for one-sidedness.  The
    hyperplane at infinity (vanishing spatial part) is discarded.
    """
    found = set()
    if rank == 1:
        candidates = ((-g[1], g[0]) for g in generators)
        for cand in candidates:
            if all(c == 0 for c in cand):
                continue
            oriented = _orient(cand, generators)
            if oriented is not None and oriented[0] != 0:
                g = _gcd_all(oriented)
                found.add(tuple(v // g for v in oriented))
    else:
        for a, b in itertools.combinations(generators, 2):
            cand = _cross3(a, b)
            if all(c == 0 for c in cand):
                continue
            oriented = _orient(cand, generators)
            if oriented is not None and (oriented[0] != 0 or oriented[1] != 0):
                g = _gcd_all(oriented)
                found.add(tuple(v // g for v in oriented))
    # <N_spatial, x> + N_last <= 0  becomes  <N_spatial, x> <= -N_last
    return sorted(
        Halfspace(Covector(f[:-1]), Fraction(-f[-1])) for f in found
    )


def _axis_box_halfspaces(point: Covector) -> list:
    out = []
    k = point.rank
    for a in range(k):
        e = [0] * k
        e[a] = 1
        out.append(canonical_halfspace(Covector(e), point.entries[a]))
        e[a] = -1
        out.append(canonical_halfspace(Covector(e), -point.entries[a]))
    return sorted(out)


def _degenerate_rep(points, rays):
    """H- and V-representation of a polyhedron whose generators are affinely
    dependent: a single point, or a segment/ray/line inside a line."""
    if not rays and len(set(points)) == 1:
        v = points[0]
        return _axis_box_halfspaces(v), (v,), ()
    # collinear family: direction from two distinct points or from a ray
    distinct = sorted(set(points))
    if len(distinct) >= 2:
        d = _primitive((distinct[-1] - distinct[0]).entries)
    else:
        d = _primitive(rays[0].entries)
    d_cov = Covector(d)
    halfspaces = []
    if len(d) == 2:
        a = Covector((-d[1], d[0]))
        c = a.dot(distinct[0])
        halfspaces.append(canonical_halfspace(a, c))
        halfspaces.append(canonical_halfspace(-a, -c))
    ray_signs = {1 if d_cov.dot(r) > 0 else -1 for r in rays}
    params = [(d_cov.dot(p), p) for p in distinct]
    vertices = []
    if 1 not in ray_signs:
        t_max, v_max = max(params)
        halfspaces.append(canonical_halfspace(d_cov, t_max))
        vertices.append(v_max)
    if -1 not in ray_signs:
        t_min, v_min = min(params)
        halfspaces.append(canonical_halfspace(-d_cov, -t_min))
        vertices.append(v_min)
    if not vertices:
        # full line: keep a representative anchor point
        vertices.append(distinct[0])
    return sorted(halfspaces), tuple(sorted(set(vertices))), tuple(sorted(set(rays)))


def _vertices_from_halfspaces(halfspaces: Sequence[Halfspace], rank: int) -> tuple:
    verts = set()
    if rank == 1:
        for hs in halfspaces:
            n = hs.normal.entries[0]
            x = Covector([hs.offset / n])
            if all(h.evaluate(x) <= 0 for h in halfspaces):
                verts.add(x)
    else:
        for h1, h2 in itertools.combinations(halfspaces, 2):
            a1, b1 = h1.normal.entries
            a2, b2 = h2.normal.entries
            det = a1 * b2 - a2 * b1
            if det == 0:
                continue
            x = Covector(
                [
                    (h1.offset * b2 - h2.offset * b1) / det,
                    (a1 * h2.offset - a2 * h1.offset) / det,
                ]
            )
            if all(h.evaluate(x) <= 0 for h in halfspaces):
                verts.add(x)
    return tuple(sorted(verts))


class MomentumPolyhedron:
    """Rational convex polyhedron in the dual torus algebra (units of h).

    Carries a vertex/ray representation, a halfspace representation, or
    both.  `degenerate` flags a polyhedron that is not full-dimensional; its
    halfspace list then contains equality pairs and its interior is empty.
    """

    __slots__ = ("rank", "vertices", "rays", "halfspaces", "degenerate")

    def __init__(self, rank, vertices=None, rays=None, halfspaces=None, degenerate=False):
        if vertices is None and halfspaces is None:
            raise ValueError("need a vertex or halfspace description")
        if vertices is not None and not vertices:
            raise ValueError("vertex list must be nonempty when given")
        self.rank = rank
        self.vertices = tuple(vertices) if vertices is not None else None
        self.rays = tuple(rays) if rays is not None else None
        self.halfspaces = tuple(halfspaces) if halfspaces is not None else None
        self.degenerate = degenerate

    @classmethod
    def from_points_and_rays(cls, points, rays=(), rank=None) -> "MomentumPolyhedron":
        """Exact hull of finitely many rational points plus recession rays.

        Implemented at rank 1 and 2; higher ranks must supply halfspaces.
        """
        points = [p if isinstance(p, Covector) else Covector(p) for p in points]
        if not points:
            raise ValueError("need at least one point")
        k = rank if rank is not None else points[0].rank
        rays = tuple(
            Covector(_primitive((r if isinstance(r, Covector) else Covector(r)).entries))
            for r in rays
        )
        if k > 2:
            raise RankUnsupportedError(
                f"exact hull implemented for rank <= 2, got rank {k}; "
                "supply halfspaces explicitly"
            )
        gens = []
        seen = set()
        for p in points:
            g = _primitive(tuple(p.entries) + (Fraction(1),))
            if g not in seen:
                seen.add(g)
                gens.append(g)
        for r in sorted(set(rays)):
            g = tuple(r.to_ints()) + (0,)
            if g not in seen:
                seen.add(g)
                gens.append(g)
        if _span_rank([[Fraction(e) for e in g] for g in gens]) < k + 1:
            hs, verts, rs = _degenerate_rep(points, rays)
            return cls(k, vertices=verts, rays=rs, halfspaces=hs, degenerate=True)
        halfspaces = _facets_full_dim(gens, k)
        vertices = _vertices_from_halfspaces(halfspaces, k)
        if not vertices:
            # the polyhedron contains a line and has no extreme points; keep
            # a representative anchor so the vertex description stays usable
            vertices = (min(points),)
        return cls(
            k,
            vertices=vertices,
            rays=tuple(sorted(set(rays))),
            halfspaces=halfspaces,
            degenerate=False,
        )

    @classmethod
    def from_halfspaces(cls, halfspaces, rank, degenerate=False) -> "MomentumPolyhedron":
        canon = sorted(
            canonical_halfspace(h.normal, h.offset)
            if isinstance(h, Halfspace)
            else canonical_halfspace(h[0], h[1])
            for h in halfspaces
        )
        return cls(rank, halfspaces=canon, degenerate=degenerate)

    def ensure_halfspaces(self) -> tuple:
        if self.halfspaces is not None:
            return self.halfspaces
        rebuilt = MomentumPolyhedron.from_points_and_rays(
            self.vertices, self.rays or (), rank=self.rank
        )
        return rebuilt.halfspaces

    def classify(self, x: Covector) -> Region:
        """Exact classification of a value against every halfspace."""
        values = [h.evaluate(x) for h in self.ensure_halfspaces()]
        if any(v > 0 for v in values):
            return Region.EXTERIOR
        if any(v == 0 for v in values):
            return Region.BOUNDARY
        return Region.INTERIOR

    def is_bounded(self) -> bool:
        if self.rays is not None:
            return len(self.rays) == 0
        halfspaces = self.halfspaces
        if self.rank > 2:
            raise RankUnsupportedError(
                "boundedness is undecidable here above rank 2 without vertex data"
            )
        if not halfspaces:
            return False
        # The recession cone, if nontrivial, contains a direction on which
        # some constraint is tight, i.e. one perpendicular to a facet normal.
        candidates = []
        for hs in halfspaces:
            n = hs.normal.entries
            if self.rank == 1:
                candidates.extend([(1,), (-1,)])
            else:
                candidates.extend([(-n[1], n[0]), (n[1], -n[0])])
        for d in candidates:
            if all(h.normal.dot(d) <= 0 for h in halfspaces):
                return False
        return True

    def bounding_box(self) -> tuple:
        """Per-axis exact (min, max) bounds; requires a bounded polyhedron."""
        if not self.is_bounded():
            raise UnboundedError("bounding box of an unbounded polyhedron")
        verts = self.vertices
        if verts is None:
            verts = _vertices_from_halfspaces(self.halfspaces, self.rank)
        lo = [min(v.entries[a] for v in verts) for a in range(self.rank)]
        hi = [max(v.entries[a] for v in verts) for a in range(self.rank)]
        return tuple(zip(lo, hi))

    def translate(self, c: Covector) -> "MomentumPolyhedron":
        verts = tuple(v + c for v in self.vertices) if self.vertices is not None else None
        hs = None
        if self.halfspaces is not None:
            hs = tuple(
                Halfspace(h.normal, h.offset + h.normal.dot(c)) for h in self.halfspaces
            )
        return MomentumPolyhedron(
            self.rank, vertices=verts, rays=self.rays, halfspaces=hs,
            degenerate=self.degenerate,
        )

    def transform(self, b: UnimodularMatrix) -> "MomentumPolyhedron":
        """Basis change matching the system-level one: points and rays by
        the right action of B, facet normals by the inverse transpose (so
        every constraint value is unchanged)."""
        verts = (
            tuple(sorted(b.transform_momentum(v) for v in self.vertices))
            if self.vertices is not None
            else None
        )
        rays = (
            tuple(sorted(Covector(_primitive(b.transform_momentum(r).entries)) for r in self.rays))
            if self.rays is not None
            else None
        )
        hs = None
        if self.halfspaces is not None:
            hs = tuple(
                sorted(
                    canonical_halfspace(b.transform_covector(h.normal), h.offset)
                    for h in self.halfspaces
                )
            )
        return MomentumPolyhedron(
            self.rank, vertices=verts, rays=rays, halfspaces=hs,
            degenerate=self.degenerate,
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MomentumPolyhedron)
            and self.rank == other.rank
            and self.vertices == other.vertices
            and self.rays == other.rays
            and self.halfspaces == other.halfspaces
            and self.degenerate == other.degenerate
        )

    def __repr__(self) -> str:
        parts = [f"rank={self.rank}"]
        if self.vertices is not None:
            parts.append(f"vertices={list(self.vertices)}")
        if self.rays:
            parts.append(f"rays={list(self.rays)}")
        if self.degenerate:
            parts.append("degenerate")
        return "MomentumPolyhedron(" + ", ".join(parts) + ")"


@dataclass(frozen=True)
class QuantizedLevel:
    """An integer lattice point classified interior to the momentum image."""

    point: tuple
    note: str = "interior"

    def covector(self) -> Covector:
        return Covector(self.point)


@dataclass(frozen=True)
class ReductionReport:
    level: QuantizedLevel
    reduced_dim: int
    reduction_prequantizable: bool
    statement: str
    successor: Optional[SystemData] = None
    k_over_hbar: Optional[Fraction] = None
    note: str = ""


def hull_from_fixed_points(s: SystemData, rays=()) -> MomentumPolyhedron:
    """Momentum polyhedron spanned by the fixed-point images and the given
    recession rays; both representations are produced (rank <= 2)."""
    points = [fp.momentum for fp in s.fixed_points]
    return MomentumPolyhedron.from_points_and_rays(points, rays=rays, rank=s.rank)


def classify_value(p: MomentumPolyhedron, x: Covector) -> Region:
    return p.classify(x)


def _intersect_ranges(a, b):
    return tuple(
        (max(lo1, lo2), min(hi1, hi2)) for (lo1, hi1), (lo2, hi2) in zip(a, b)
    )


def quantized_levels(p: MomentumPolyhedron, window: Optional[Window] = None) -> list:
    """Integer lattice points strictly interior to p, in lexicographic order.

    Unbounded polyhedra require a window; bounded ones are scanned over the
    exact bounding box (intersected with the window when given).
    """
    if window is not None:
        if len(window) != p.rank:
            raise ValueError(f"window has {len(window)} axes, expected {p.rank}")
        for lo, hi in window:
            if lo > hi:
                raise ValueError(f"empty window axis ({lo}, {hi})")
    try:
        bounded = p.is_bounded()
    except RankUnsupportedError:
        bounded = False
    if not bounded and window is None:
        raise WindowRequiredError(
            "polyhedron is unbounded (or undecidable); supply an integer window"
        )
    if bounded:
        box = tuple(
            (math.ceil(lo), math.floor(hi)) for lo, hi in p.bounding_box()
        )
        ranges = _intersect_ranges(box, window) if window is not None else box
    else:
        ranges = window
    axes = [range(lo, hi + 1) for lo, hi in ranges]
    out = []
    for point in itertools.product(*axes):
        if p.classify(Covector(point)) is Region.INTERIOR:
            out.append(QuantizedLevel(point=point))
    return out


def count_levels(p: MomentumPolyhedron) -> int:
    try:
        bounded = p.is_bounded()
    except RankUnsupportedError as exc:
        raise UnboundedError(str(exc)) from exc
    if not bounded:
        raise UnboundedError("level count requires a bounded polyhedron")
    return len(quantized_levels(p))


def _oscillator_t1_structure(s: SystemData) -> bool:
    return (
        s.rank == 1
        and len(s.fixed_points) == 1
        and all(w == (1,) for w in s.fixed_points[0].weights)
    )


def reduction_report(s: SystemData, x: Covector) -> ReductionReport:
    """Assert metaplectic-c prequantizability of the reduced space at a
    quantized level, with an explicit successor where one is constructible.

    For the diagonal-circle oscillator the reduction at level -N is complex
    projective space one dimension down, scaled so that the symplectic
    volume parameter is K/hbar = N + n/2; the successor system is returned
    and can be rechecked independently.
    """
    if any(not defect(fp).is_zero() for fp in s.fixed_points):
        raise NotQuantizedError(
            "quantized levels are defined against an equivariant momentum "
            "map; apply the solved shift first"
        )
    if not x.is_integral():
        raise NotQuantizedError(f"level {x} is not an integer lattice point")
    if s.polyhedron is None:
        raise NotQuantizedError("system has no momentum polyhedron to classify against")
    region = s.polyhedron.classify(x)
    if region is not Region.INTERIOR:
        raise NotQuantizedError(f"level {x} is {region.value}, not interior")
    if not s.action_free_on_regular_levels:
        raise ActionNotFreeError(
            "torus action is not flagged free on regular level sets"
        )
    reduced_dim = 2 * (s.dim - s.rank)
    level = QuantizedLevel(point=x.to_ints())
    successor = None
    k_over_hbar = None
    note = ""
    if reduced_dim == 0:
        note = "reduction is a point; multiplicity one"
    if _oscillator_t1_structure(s) and s.dim >= 2:
        from .models import ProjectiveSpec, projective_space, solved_constant

        n = s.dim
        big_n = -x.entries[0]
        k_over_hbar = big_n + Fraction(n, 2)
        m = n - 1
        basis = tuple(
            tuple(1 if i == j else 0 for j in range(m)) for i in range(m)
        )
        spec = ProjectiveSpec(
            n=m, level_index=int(big_n), weight_basis=basis,
            constant=solved_constant(basis),
        )
        successor = projective_space(spec)
        note = (
            f"reduction is projective space of complex dimension {m} "
            f"with K/hbar = {k_over_hbar}"
        )
    statement = (
        "the symplectic reduction at this quantized level inherits a "
        "metaplectic-c prequantization from the quotient of the level-set "
        "circle bundle"
    )
    return ReductionReport(
        level=level,
        reduced_dim=reduced_dim,
        reduction_prequantizable=True,
        statement=statement,
        successor=successor,
        k_over_hbar=k_over_hbar,
        note=note,
    )
