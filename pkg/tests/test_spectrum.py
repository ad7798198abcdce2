import random
from fractions import Fraction

import pytest

from mpcquant.equivariance import SystemData
from mpcquant.errors import (
    ActionNotFreeError,
    NotQuantizedError,
    RankUnsupportedError,
    UnboundedError,
    WindowRequiredError,
)
from mpcquant.exact import Covector, is_integral
from mpcquant.models import ProjectiveSpec, oscillator_t1, oscillator_tn, projective_space
from mpcquant.spectrum import (
    MomentumPolyhedron,
    Region,
    canonical_halfspace,
    classify_value,
    count_levels,
    hull_from_fixed_points,
    quantized_levels,
    reduction_report,
)

from conftest import random_fraction, random_unimodular, strictly_inside_triangle


def cp2(n_index=0, constant=("1/2", "1/2"), basis=((1, 0), (0, 1))):
    return projective_space(
        ProjectiveSpec(
            n=2, level_index=n_index, weight_basis=basis, constant=Covector(constant)
        )
    )


def test_cp2_triangle_vertices():
    poly = cp2(0).polyhedron
    assert set(poly.vertices) == {
        Covector(["1/2", "1/2"]),
        Covector([-1, "1/2"]),
        Covector(["1/2", -1]),
    }
    assert poly.rays == ()
    assert not poly.degenerate
    assert len(poly.halfspaces) == 3


def test_oscillator_halfline():
    poly = oscillator_t1(1).polyhedron
    assert poly.vertices == (Covector(["1/2"]),)
    assert poly.rays == (Covector([-1]),)
    [hs] = poly.halfspaces
    assert hs.normal.dot(Covector([1])) > 0  # upper bound only
    assert not poly.is_bounded()


def test_single_point_degenerate():
    poly = MomentumPolyhedron.from_points_and_rays([Covector([0, 0])])
    assert poly.degenerate
    assert poly.vertices == (Covector([0, 0]),)
    assert poly.classify(Covector([0, 0])) is Region.BOUNDARY
    assert poly.classify(Covector([1, 0])) is Region.EXTERIOR
    assert quantized_levels(poly) == []


def test_segment_degenerate():
    poly = MomentumPolyhedron.from_points_and_rays(
        [Covector([0, 0]), Covector([2, 2])]
    )
    assert poly.degenerate
    assert set(poly.vertices) == {Covector([0, 0]), Covector([2, 2])}
    assert poly.classify(Covector([1, 1])) is Region.BOUNDARY
    assert poly.classify(Covector([1, 0])) is Region.EXTERIOR
    assert count_levels(poly) == 0


def test_halfline_degenerate_with_ray():
    poly = MomentumPolyhedron.from_points_and_rays(
        [Covector([0, 0])], rays=[Covector([1, 1])]
    )
    assert poly.degenerate
    assert poly.vertices == (Covector([0, 0]),)
    assert not poly.is_bounded()
    assert poly.classify(Covector([3, 3])) is Region.BOUNDARY
    assert poly.classify(Covector([-1, -1])) is Region.EXTERIOR


def test_hull_drops_non_extreme_points():
    poly = MomentumPolyhedron.from_points_and_rays(
        [
            Covector([0, 0]),
            Covector([4, 0]),
            Covector([0, 4]),
            Covector([1, 1]),  # interior
            Covector([2, 0]),  # edge midpoint
            Covector([0, 0]),  # duplicate
        ]
    )
    assert set(poly.vertices) == {
        Covector([0, 0]), Covector([4, 0]), Covector([0, 4]),
    }
    assert len(poly.halfspaces) == 3


def test_halfplane_has_anchor_vertex():
    # contains a line: no extreme points exist, a representative anchor is kept
    poly = MomentumPolyhedron.from_points_and_rays(
        [Covector([0, 0])],
        rays=[Covector([1, 0]), Covector([-1, 0]), Covector([0, -1])],
    )
    assert not poly.degenerate
    assert len(poly.halfspaces) == 1
    assert poly.vertices == (Covector([0, 0]),)
    assert poly.classify(Covector([5, -1])) is Region.INTERIOR
    assert poly.classify(Covector([5, 0])) is Region.BOUNDARY
    assert poly.classify(Covector([0, 1])) is Region.EXTERIOR
    levels = quantized_levels(poly, window=((-1, 1), (-2, 2)))
    assert {l.point for l in levels} == {
        (a, b) for a in (-1, 0, 1) for b in (-2, -1)
    }


def test_classify_examples():
    poly = cp2(0).polyhedron
    assert classify_value(poly, Covector([0, 0])) is Region.INTERIOR
    assert classify_value(poly, Covector(["1/2", "1/2"])) is Region.BOUNDARY
    assert classify_value(poly, Covector([2, 2])) is Region.EXTERIOR


def test_levels_cp2_n0():
    levels = quantized_levels(cp2(0).polyhedron)
    assert [l.point for l in levels] == [(0, 0)]


def test_levels_cp2_n2():
    # brute-force check bakes in the expected set at N = 2
    levels = quantized_levels(cp2(2).polyhedron)
    assert {l.point for l in levels} == {
        (0, 0), (0, -1), (0, -2), (-1, 0), (-1, -1), (-2, 0),
    }
    assert [l.point for l in levels] == sorted(l.point for l in levels)


def test_levels_oscillator_window():
    levels = quantized_levels(oscillator_t1(3).polyhedron, window=((-3, 3),))
    assert [l.point for l in levels] == [(-3,), (-2,), (-1,), (0,), (1,)]


def test_levels_unbounded_needs_window():
    with pytest.raises(WindowRequiredError):
        quantized_levels(oscillator_t1(2).polyhedron)
    with pytest.raises(UnboundedError):
        count_levels(oscillator_t1(2).polyhedron)


def test_count_examples():
    assert count_levels(cp2(0).polyhedron) == 1
    assert count_levels(cp2(5).polyhedron) == 21
    poly = cp2(-1).polyhedron
    assert set(poly.vertices) == {
        Covector(["1/2", "1/2"]),
        Covector([0, "1/2"]),
        Covector(["1/2", 0]),
    }
    assert count_levels(poly) == 0


def test_ehrhart_family():
    for n_index in range(0, 11):
        expected = (n_index + 1) * (n_index + 2) // 2
        assert count_levels(cp2(n_index).polyhedron) == expected


def test_enumeration_matches_triangle_oracle():
    rng = random.Random(1234)
    for _ in range(100):
        verts = [
            Covector([random_fraction(rng, -10, 10), random_fraction(rng, -10, 10)])
            for _ in range(3)
        ]
        poly = MomentumPolyhedron.from_points_and_rays(verts)
        got = {l.point for l in quantized_levels(poly, window=((-10, 10), (-10, 10)))}
        a, b, c = [v.entries for v in verts]
        expected = {
            (x, y)
            for x in range(-10, 11)
            for y in range(-10, 11)
            if strictly_inside_triangle(a, b, c, (Fraction(x), Fraction(y)))
        }
        assert got == expected


def test_levels_reclassify_interior_and_integral():
    for poly in (cp2(3).polyhedron, oscillator_tn(2).polyhedron):
        for level in quantized_levels(poly, window=((-4, 4),) * 2):
            v = level.covector()
            assert is_integral(v)
            assert poly.classify(v) is Region.INTERIOR


def test_unimodular_invariance_of_levels():
    rng = random.Random(77)
    poly = cp2(2).polyhedron
    base = {l.point for l in quantized_levels(poly)}
    for _ in range(50):
        b = random_unimodular(rng, 2)
        moved = poly.transform(b)
        got = {l.point for l in quantized_levels(moved)}
        expected = {b.transform_momentum(Covector(p)).to_ints() for p in base}
        assert got == expected


def test_hull_transform_consistency():
    rng = random.Random(99)
    s = cp2(1)
    for _ in range(20):
        b = random_unimodular(rng, 2)
        from mpcquant.equivariance import transform_system

        moved = transform_system(s, b)
        assert hull_from_fixed_points(moved) == moved.polyhedron


def test_hull_rank_unsupported():
    s = oscillator_tn(3)
    with pytest.raises(RankUnsupportedError):
        hull_from_fixed_points(s, rays=s.polyhedron.rays)
    # ... but the builder-supplied halfspaces still classify and enumerate
    levels = quantized_levels(s.polyhedron, window=((-1, 1),) * 3)
    assert {l.point for l in levels} == {
        (a, b, c) for a in (-1, 0) for b in (-1, 0) for c in (-1, 0)
    }


def test_supplied_halfspaces_only():
    poly = MomentumPolyhedron.from_halfspaces(
        [
            canonical_halfspace(Covector([1, 0]), Fraction(1)),
            canonical_halfspace(Covector([-1, 0]), Fraction(1)),
            canonical_halfspace(Covector([0, 1]), Fraction(1)),
            canonical_halfspace(Covector([0, -1]), Fraction(1)),
        ],
        rank=2,
    )
    assert poly.is_bounded()
    assert {l.point for l in quantized_levels(poly)} == {(0, 0)}
    assert poly.bounding_box() == ((Fraction(-1), Fraction(1)),) * 2


def test_reduction_oscillator_successor():
    red = reduction_report(oscillator_t1(3), Covector([0]))
    assert red.reduced_dim == 4
    assert red.k_over_hbar == Fraction(3, 2)
    assert red.successor is not None
    assert red.successor.mpc_prequantizable
    assert red.reduction_prequantizable


def test_reduction_point_multiplicity():
    red = reduction_report(cp2(0), Covector([0, 0]))
    assert red.reduced_dim == 0
    assert red.successor is None
    assert "multiplicity one" in red.note


def test_reduction_rejects_non_quantized():
    with pytest.raises(NotQuantizedError):
        reduction_report(oscillator_t1(2), Covector(["1/3"]))
    with pytest.raises(NotQuantizedError):
        reduction_report(oscillator_t1(2), Covector([1]))  # exterior
    with pytest.raises(NotQuantizedError):
        reduction_report(oscillator_t1(3, shifted=False), Covector([0]))


def test_reduction_requires_free_action():
    s = oscillator_t1(2)
    frozen = SystemData(
        rank=s.rank, dim=s.dim, fixed_points=s.fixed_points,
        polyhedron=s.polyhedron, action_free_on_regular_levels=False,
    )
    with pytest.raises(ActionNotFreeError):
        reduction_report(frozen, Covector([0]))
