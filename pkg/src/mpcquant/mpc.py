"""Floating-point model of the symplectic group and its double cover.

Conventions: coordinates are ordered (q_1..q_n, p_1..p_n).  The symplectic
form is Omega(u, v) = u^T A v with A = [[0, I], [-I, 0]], and the compatible
complex structure J sends q_j to p_j, so J = [[0, -I], [I, 0]] and A J = I.
A real matrix commuting with J has block form [[X, Y], [-Y, X]] and acts on
z = q + ip as the complex matrix X - iY.

The complex-linear part of a symplectic g is c_g = (g - J g J) / 2; its
complex determinant never vanishes and has modulus 1 exactly on the unitary
subgroup.  Double-cover elements are tracked through their parameters
(g, mu) with mu^2 * det_c(g) = 1: mu is a continuous square-root branch of
det_c(g(t))^(-1) along a path from the identity, where mu(0) = 1.
"""

from __future__ import annotations

import cmath
from typing import Callable, Sequence, Union

import numpy as np

from .errors import NotSymplecticError, RankMismatchError, StepTooCoarseError

DEFAULT_TOL = 1e-9


def omega_matrix(n: int) -> np.ndarray:
    """Matrix of the symplectic form in (q, p) block order."""
    a = np.zeros((2 * n, 2 * n))
    a[:n, n:] = np.eye(n)
    a[n:, :n] = -np.eye(n)
    return a


def complex_structure(n: int) -> np.ndarray:
    """Matrix of J (q_j -> p_j, p_j -> -q_j)."""
    j = np.zeros((2 * n, 2 * n))
    j[:n, n:] = -np.eye(n)
    j[n:, :n] = np.eye(n)
    return j


class SymplecticMatrix:
    """A 2n x 2n real matrix preserving the standard symplectic form.

    The form-invariance check g^T A g = A is enforced at construction, within
    `tol` (default 1e-9).
    """

    __slots__ = ("array", "n", "tol")

    def __init__(self, entries, tol: float = DEFAULT_TOL):
        arr = np.asarray(entries, dtype=float)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] % 2:
            raise NotSymplecticError(f"expected a 2n x 2n matrix, got {arr.shape}")
        n = arr.shape[0] // 2
        a = omega_matrix(n)
        err = np.max(np.abs(arr.T @ a @ arr - a))
        if err > tol:
            raise NotSymplecticError(
                f"form invariance violated by {err:.3e} (tol {tol:.1e})"
            )
        self.array = arr
        self.n = n
        self.tol = tol

    @classmethod
    def identity(cls, n: int) -> "SymplecticMatrix":
        return cls(np.eye(2 * n))

    @classmethod
    def from_complex(cls, u, tol: float = DEFAULT_TOL) -> "SymplecticMatrix":
        """Embed a complex n x n matrix u = X + iY as [[X, -Y], [Y, X]].

        The embedding is symplectic iff u is unitary; the constructor check
        rejects anything else.
        """
        u = np.asarray(u, dtype=complex)
        x, y = u.real, u.imag
        top = np.hstack([x, -y])
        bot = np.hstack([y, x])
        return cls(np.vstack([top, bot]), tol=tol)

    @classmethod
    def diag_rotation(cls, angles: Sequence[float]) -> "SymplecticMatrix":
        """Rotation by angles[j] in each (q_j, p_j) plane: z_j -> e^{i a_j} z_j."""
        return cls.from_complex(np.diag(np.exp(1j * np.asarray(angles, float))))

    @classmethod
    def block_rotation(cls, n: int, theta: float) -> "SymplecticMatrix":
        """The same rotation angle in every plane."""
        return cls.diag_rotation([theta] * n)

    def commutes_with_j(self, tol: float = 1e-6) -> bool:
        j = complex_structure(self.n)
        return np.max(np.abs(self.array @ j - j @ self.array)) <= tol

    def __matmul__(self, other: "SymplecticMatrix") -> "SymplecticMatrix":
        return SymplecticMatrix(self.array @ other.array, tol=max(self.tol, other.tol))

    def __repr__(self) -> str:
        return f"SymplecticMatrix(n={self.n})"


def _as_symplectic(g, tol: float) -> SymplecticMatrix:
    if isinstance(g, SymplecticMatrix):
        return g
    return SymplecticMatrix(g, tol=tol)


def c_map(g: Union[SymplecticMatrix, np.ndarray], tol: float = DEFAULT_TOL) -> np.ndarray:
    """Complex n x n representative of (g - J g J) / 2.

    The real matrix (g - JgJ)/2 commutes with J identically, so its complex
    form X - iY is read off the blocks.
    """
    gm = _as_symplectic(g, tol)
    n = gm.n
    j = complex_structure(n)
    c = 0.5 * (gm.array - j @ gm.array @ j)
    x = c[:n, :n]
    y = c[:n, n:]
    return x - 1j * y


def det_c(g: Union[SymplecticMatrix, np.ndarray], tol: float = DEFAULT_TOL) -> complex:
    """Complex determinant of the complex-linear part of g; never zero."""
    return complex(np.linalg.det(c_map(g, tol=tol)))


class ParameterPair:
    """Parameters (g, mu) of a double-cover element: mu^2 * det_c(g) = 1."""

    __slots__ = ("g", "mu")

    def __init__(self, g: SymplecticMatrix, mu: complex, tol: float = DEFAULT_TOL):
        if abs(mu * mu * det_c(g, tol=tol) - 1.0) > tol:
            raise ValueError("mu^2 * det_c(g) != 1; not a double-cover parameter pair")
        self.g = g
        self.mu = complex(mu)

    def __repr__(self) -> str:
        return f"ParameterPair(n={self.g.n}, mu={self.mu:.6g})"


PathLike = Union[Callable[[float], Union[SymplecticMatrix, np.ndarray]],
                 Sequence[Union[SymplecticMatrix, np.ndarray]]]


def track_sqrt(
    path: PathLike,
    steps: int,
    tol: float = DEFAULT_TOL,
    ratio_guard: float = 0.5,
) -> complex:
    """Continuous branch mu(1) of det_c(g(t))^(-1/2) along a path with g(0) = I.

    `path` is either a callable on [0, 1] or a sequence of steps+1 samples.
    At each step the square-root candidate nearest the previous value is
    chosen; this is the correct branch as long as consecutive determinants
    satisfy |d(t+dt)/d(t) - 1| < ratio_guard, which is checked.
    """
    if steps < 1:
        raise ValueError("steps must be positive")
    if callable(path):
        samples = [path(i / steps) for i in range(steps + 1)]
    else:
        samples = list(path)
        if len(samples) != steps + 1:
            raise ValueError(f"expected {steps + 1} samples, got {len(samples)}")
    mats = [_as_symplectic(g, tol) for g in samples]
    if np.max(np.abs(mats[0].array - np.eye(2 * mats[0].n))) > tol:
        raise ValueError("path must start at the identity")

    dets = [det_c(g, tol=tol) for g in mats]
    mu = 1.0 + 0.0j
    for i in range(steps):
        if abs(dets[i + 1] / dets[i] - 1.0) >= ratio_guard:
            raise StepTooCoarseError(
                f"determinant moved by {abs(dets[i + 1] / dets[i] - 1.0):.3f} "
                f"at step {i}; increase the step count"
            )
        root = 1.0 / cmath.sqrt(dets[i + 1])
        mu = root if abs(root - mu) <= abs(-root - mu) else -root
    return mu


def track_parameters(path: PathLike, steps: int, tol: float = DEFAULT_TOL) -> ParameterPair:
    """Endpoint parameters (g(1), mu(1)) of a path from the identity."""
    mu = track_sqrt(path, steps, tol=tol)
    end = path(1.0) if callable(path) else path[-1]
    return ParameterPair(_as_symplectic(end, tol), mu, tol=tol)


def halfform_phase(weights: Sequence[Sequence[int]], xi: Sequence[int]) -> complex:
    """Half-form phase exp(-pi*i * sum_j <w_j, xi>) for integer weights.

    The exponent sum is an integer, so the value is exactly +1 or -1.  Agrees
    with track_sqrt along the diagonal rotation path with the same weights.
    """
    total = 0
    for w in weights:
        if len(w) != len(xi):
            raise RankMismatchError(f"weight length {len(w)} vs {len(xi)}")
        total += sum(int(a) * int(b) for a, b in zip(w, xi))
    return complex(1.0 if total % 2 == 0 else -1.0)
