"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines.  Exact criteria use rational arithmetic with no tolerance; numeric
criteria state their tolerance inline.
"""

import math
import random
import time
from fractions import Fraction

import numpy as np

from mpcquant.equivariance import (
    check_equivariance,
    defect,
    shifted_system,
    solve_shift,
    transform_system,
)
from mpcquant.exact import Covector, is_integral
from mpcquant.holonomy import (
    closed_form_holonomy,
    is_quantized_via_holonomy,
    numeric_mpc_holonomy,
    orbit_spec_for_level,
)
from mpcquant.models import (
    ProjectiveSpec,
    oscillator_t1,
    projective_space,
    solved_constant,
    standard_basis,
)
from mpcquant.mpc import SymplecticMatrix, det_c, track_sqrt
from mpcquant.spectrum import (
    MomentumPolyhedron,
    count_levels,
    quantized_levels,
    reduction_report,
)

from conftest import random_fraction, random_unimodular, strictly_inside_triangle


def announce(number: int, label: str) -> None:
    print(f"ACCEPTANCE {number} [{label}]: PASS")


def cp2_solved(n_index: int) -> MomentumPolyhedron:
    basis = standard_basis(2)
    return projective_space(
        ProjectiveSpec(
            n=2, level_index=n_index, weight_basis=basis,
            constant=solved_constant(basis),
        )
    ).polyhedron


def test_criterion_1_oscillator_spectrum():
    start = time.monotonic()
    for n in range(1, 6):
        system = oscillator_t1(n)
        levels = quantized_levels(system.polyhedron, window=((-12, 12),))
        expected = [(x,) for x in range(-12, 13) if Fraction(x) < Fraction(n, 2)]
        assert [l.point for l in levels] == expected
        for (x,) in expected:
            big_n = -x
            energy = Fraction(n, 2) - x  # E/hbar on the level set
            assert energy == big_n + Fraction(n, 2)
            assert big_n > Fraction(-n, 2)
    elapsed = time.monotonic() - start
    assert elapsed < 1.0
    announce(1, f"oscillator spectrum E/hbar = N + n/2, {elapsed:.3f}s")


def test_criterion_2_oscillator_parity():
    for n in range(1, 11):
        d = defect(oscillator_t1(n, shifted=False).fixed_points[0])
        expected = Covector([0]) if n % 2 == 0 else Covector(["1/2"])
        assert d == expected
    announce(2, "unshifted defect 0 (even n) / 1/2 (odd n)")


def test_criterion_3_cp2_vertices():
    basis = standard_basis(2)
    unshifted = projective_space(
        ProjectiveSpec(n=2, level_index=0, weight_basis=basis,
                       constant=Covector([0, 0]))
    )
    shift = solve_shift(unshifted)
    assert shift == Covector(["1/2", "1/2"])
    poly = shifted_system(unshifted, shift).polyhedron
    assert set(poly.vertices) == {
        Covector(["1/2", "1/2"]),
        Covector([-1, "1/2"]),
        Covector(["1/2", -1]),
    }
    announce(3, "CP^2 vertices (1/2,1/2), (-1,1/2), (1/2,-1)")


def test_criterion_4_cp2_counts():
    start = time.monotonic()
    for n_index in range(0, 11):
        assert count_levels(cp2_solved(n_index)) == (n_index + 1) * (n_index + 2) // 2
    assert count_levels(cp2_solved(-1)) == 0
    elapsed = time.monotonic() - start
    assert elapsed < 1.0
    announce(4, f"CP^2 counts (N+1)(N+2)/2 for N=0..10 and 0 at N=-1, {elapsed:.3f}s")


def test_criterion_5_cp2_random_bases():
    rng = random.Random(20260809)
    zero = Covector([0, 0])
    for trial in range(50):
        basis = tuple(random_unimodular(rng, 2, bound=5).rows)
        constant = Covector([rng.randint(-3, 3), rng.randint(-3, 3)])
        for n_index in (-1, 0, 1, 2):
            system = projective_space(
                ProjectiveSpec(n=2, level_index=n_index, weight_basis=basis,
                               constant=constant)
            )
            solved = shifted_system(system, solve_shift(system))
            for fp in solved.fixed_points:
                assert defect(fp) == zero
    announce(5, "50 random unimodular bases: all three defects zero after shift")


def test_criterion_6_reduction_loop():
    for n in (2, 3, 4):
        for big_n in (0, 1, 2):
            system = oscillator_t1(n)
            red = reduction_report(system, Covector([-big_n]))
            assert red.k_over_hbar == big_n + Fraction(n, 2)
            successor = red.successor
            assert successor is not None
            assert successor.mpc_prequantizable
            assert successor.dim == n - 1
            assert check_equivariance(successor).overall
    announce(6, "oscillator reduction feeds CP^{n-1} at K/hbar = N + n/2")


def test_criterion_7_metaplectic_branch():
    for m in range(1, 7):
        steps = 128 * m
        path = lambda t: SymplecticMatrix.block_rotation(m, 2 * math.pi * t)
        mu = track_sqrt(path, steps)
        assert abs(mu - (-1.0) ** m) < 1e-9
    rng = np.random.default_rng(424242)
    for _ in range(100):
        n = int(rng.integers(1, 5))
        h = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        h = 0.5 * (h + h.conj().T)
        evals, evecs = np.linalg.eigh(h)

        def path(t):
            u = evecs @ np.diag(np.exp(1j * evals * t)) @ evecs.conj().T
            return SymplecticMatrix.from_complex(u)

        mu = track_sqrt(path, 256)
        assert abs(mu * mu * det_c(path(1.0)) - 1.0) < 1e-9
    announce(7, "mu(1) = (-1)^m on weight paths; mu^2 det_c = 1 on 100 random paths")


def test_criterion_8_holonomy_oracle():
    start = time.monotonic()
    for n in (1, 2, 3):
        model = oscillator_t1(n)
        for level in ("-2", "-3/2", "-1", "-1/2", "0"):
            x = Covector([level])
            spec = orbit_spec_for_level(model, x, (1,), steps=1000)
            numeric = numeric_mpc_holonomy(spec)
            closed = closed_form_holonomy(x, (1,))
            assert abs(numeric - closed) < 1e-9
            assert is_quantized_via_holonomy(model, x, steps=1000) == is_integral(x)
    elapsed = time.monotonic() - start
    assert elapsed < 5.0
    announce(8, f"holonomy quadrature matches closed form < 1e-9, {elapsed:.2f}s")


def test_criterion_9_enumeration_oracle():
    rng = random.Random(31337)
    for _ in range(100):
        verts = [
            Covector([random_fraction(rng, -10, 10), random_fraction(rng, -10, 10)])
            for _ in range(3)
        ]
        poly = MomentumPolyhedron.from_points_and_rays(verts)
        got = {l.point for l in quantized_levels(poly, window=((-10, 10), (-10, 10)))}
        a, b, c = [v.entries for v in verts]
        brute = {
            (x, y)
            for x in range(-10, 11)
            for y in range(-10, 11)
            if strictly_inside_triangle(a, b, c, (Fraction(x), Fraction(y)))
        }
        assert got == brute
    announce(9, "enumeration equals brute-force triangle scan on 100 random triangles")


def test_criterion_10_invariance_suite():
    rng = random.Random(271828)
    basis = standard_basis(2)
    equivariant = projective_space(
        ProjectiveSpec(n=2, level_index=1, weight_basis=basis,
                       constant=solved_constant(basis))
    )
    skew = projective_space(
        ProjectiveSpec(n=2, level_index=1, weight_basis=basis,
                       constant=Covector([0, 0]))
    )
    base_levels = {l.point for l in quantized_levels(equivariant.polyhedron)}
    base_shift = solve_shift(skew)
    for _ in range(100):
        b = random_unimodular(rng, 2)
        moved_eq = transform_system(equivariant, b)
        moved_skew = transform_system(skew, b)
        assert check_equivariance(moved_eq).overall
        assert not check_equivariance(moved_skew).overall
        got_shift = solve_shift(moved_skew)
        assert (got_shift - b.transform_momentum(base_shift)).frac() == Covector([0, 0])
        got_levels = {l.point for l in quantized_levels(moved_eq.polyhedron)}
        assert got_levels == {
            b.transform_momentum(Covector(p)).to_ints() for p in base_levels
        }
    announce(10, "verdicts, shift classes, and level sets unimodular-invariant")
