"""Exact arithmetic for torus weights, momenta, and lattice bases.

Dual-algebra values (momentum values, shifts, defects) are tuples of exact
rationals stored in units of Planck's constant h, so lattice membership is a
denominator check and no floating constant enters this layer.  Isotropy
weights are plain integer tuples.  A basis change of the integer lattice acts
on weights on the right (row convention) and on covectors by the inverse
transpose, which preserves all pairings.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import NonUnimodularError, RankMismatchError

RationalLike = Union[int, str, Fraction]

WeightVector = tuple[int, ...]


def rat(value: RationalLike) -> Fraction:
    """Coerce an int, a "p/q" / "p" string, or a Fraction to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"not a rational: {value!r}")


def fmt(q: Fraction) -> str:
    """Serialize a rational as "p/q" or "p"."""
    return str(q)


def weight(entries: Iterable[int]) -> tuple:
    """Validate and freeze an integer weight vector."""
    out = tuple(entries)
    for e in out:
        if not isinstance(e, int) or isinstance(e, bool):
            raise TypeError(f"weight entries must be integers, got {e!r}")
    return out


def idot(a: Sequence[int], b: Sequence[int]) -> int:
    """Integer dot product, with a length check."""
    if len(a) != len(b):
        raise RankMismatchError(f"length {len(a)} vs {len(b)}")
    return sum(x * y for x, y in zip(a, b))


class Covector:
    """Exact element of the dual torus algebra, in units of h.

    Immutable; supports componentwise arithmetic, pairing with integer or
    rational vectors, and the fractional-part / integrality tests that the
    equivariance and lattice conditions reduce to.
    """

    __slots__ = ("entries",)

    def __init__(self, entries):
        if isinstance(entries, Covector):
            object.__setattr__(self, "entries", entries.entries)
        else:
            object.__setattr__(self, "entries", tuple(rat(e) for e in entries))

    def __setattr__(self, name, value):
        raise AttributeError("Covector is immutable")

    @classmethod
    def zero(cls, rank: int) -> "Covector":
        return cls([0] * rank)

    @property
    def rank(self) -> int:
        return len(self.entries)

    def _check_rank(self, other) -> None:
        if len(self.entries) != len(other):
            raise RankMismatchError(
                f"rank {len(self.entries)} vs {len(other)}"
            )

    def __add__(self, other: "Covector") -> "Covector":
        self._check_rank(other.entries)
        return Covector(a + b for a, b in zip(self.entries, other.entries))

    def __sub__(self, other: "Covector") -> "Covector":
        self._check_rank(other.entries)
        return Covector(a - b for a, b in zip(self.entries, other.entries))

    def __neg__(self) -> "Covector":
        return Covector(-a for a in self.entries)

    def __mul__(self, scalar: RationalLike) -> "Covector":
        s = rat(scalar)
        return Covector(a * s for a in self.entries)

    __rmul__ = __mul__

    def dot(self, vector: Union["Covector", Sequence[RationalLike]]) -> Fraction:
        """Pairing with a vector (integer weights, directions, or points)."""
        entries = vector.entries if isinstance(vector, Covector) else vector
        self._check_rank(entries)
        return sum(
            (a * rat(b) for a, b in zip(self.entries, entries)),
            start=Fraction(0),
        )

    def frac(self) -> "Covector":
        """Canonical representative mod the integer lattice, entries in [0, 1)."""
        return Covector(a - math.floor(a) for a in self.entries)

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self.entries)

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.entries)

    def to_floats(self) -> tuple:
        return tuple(float(a) for a in self.entries)

    def to_ints(self) -> tuple:
        if not self.is_integral():
            raise ValueError(f"not an integer covector: {self}")
        return tuple(int(a) for a in self.entries)

    def __eq__(self, other) -> bool:
        return isinstance(other, Covector) and self.entries == other.entries

    def __lt__(self, other: "Covector") -> bool:
        return self.entries < other.entries

    def __le__(self, other: "Covector") -> bool:
        return self.entries <= other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return "(" + ", ".join(fmt(a) for a in self.entries) + ")"


def frac_part(v: Covector) -> Covector:
    """Entrywise fractional part; output entries lie in [0, 1)."""
    return v.frac()


def is_integral(v: Covector) -> bool:
    """True iff every entry is an integer (lattice membership in units of h)."""
    return v.is_integral()


def _int_det(rows) -> int:
    """Fraction-free Bareiss determinant of a square integer matrix."""
    m = [list(r) for r in rows]
    k = len(m)
    if k == 0:
        return 1
    sign = 1
    prev = 1
    for i in range(k - 1):
        if m[i][i] == 0:
            for r in range(i + 1, k):
                if m[r][i] != 0:
                    m[i], m[r] = m[r], m[i]
                    sign = -sign
                    break
            else:
                return 0
        for r in range(i + 1, k):
            for c in range(i + 1, k):
                m[r][c] = (m[r][c] * m[i][i] - m[r][i] * m[i][c]) // prev
            m[r][i] = 0
        prev = m[i][i]
    return sign * m[-1][-1]


class UnimodularMatrix:
    """Integer k x k matrix with determinant +1 or -1.

    Encodes a basis change of the integer lattice.  Weights transform on the
    right, w -> w B; covectors transform by the inverse transpose so that
    every pairing <v, w> is preserved.
    """

    __slots__ = ("rows", "_det")

    def __init__(self, rows: Iterable[Iterable[int]]):
        frozen = tuple(tuple(int(e) for e in row) for row in rows)
        k = len(frozen)
        if any(len(row) != k for row in frozen):
            raise ValueError("matrix must be square")
        det = _int_det(frozen)
        if det not in (1, -1):
            raise NonUnimodularError(f"determinant is {det}, expected +/-1")
        object.__setattr__(self, "rows", frozen)
        object.__setattr__(self, "_det", det)

    def __setattr__(self, name, value):
        raise AttributeError("UnimodularMatrix is immutable")

    @classmethod
    def identity(cls, k: int) -> "UnimodularMatrix":
        return cls(
            tuple(tuple(1 if i == j else 0 for j in range(k)) for i in range(k))
        )

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def det(self) -> int:
        return self._det

    def transpose(self) -> "UnimodularMatrix":
        k = self.rank
        return UnimodularMatrix(
            tuple(tuple(self.rows[i][j] for i in range(k)) for j in range(k))
        )

    def inverse(self) -> "UnimodularMatrix":
        """Exact integer inverse (exists because det is a unit)."""
        k = self.rank
        aug = [
            [Fraction(self.rows[i][j]) for j in range(k)]
            + [Fraction(1 if i == j else 0) for j in range(k)]
            for i in range(k)
        ]
        for col in range(k):
            pivot = next(r for r in range(col, k) if aug[r][col] != 0)
            aug[col], aug[pivot] = aug[pivot], aug[col]
            pv = aug[col][col]
            aug[col] = [x / pv for x in aug[col]]
            for r in range(k):
                if r != col and aug[r][col] != 0:
                    f = aug[r][col]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
        inv_rows = []
        for i in range(k):
            row = aug[i][k:]
            assert all(x.denominator == 1 for x in row)
            inv_rows.append(tuple(int(x) for x in row))
        return UnimodularMatrix(inv_rows)

    def transform_weight(self, w: Sequence[int]) -> tuple:
        """Row action w -> w B on an integer weight vector."""
        k = self.rank
        if len(w) != k:
            raise RankMismatchError(f"weight length {len(w)} vs rank {k}")
        return tuple(sum(w[i] * self.rows[i][j] for i in range(k)) for j in range(k))

    def transform_covector(self, v: Covector) -> Covector:
        """Inverse-transpose action on a covector: preserves the pairing
        against lattice vectors that transform by the right action."""
        k = self.rank
        if v.rank != k:
            raise RankMismatchError(f"covector rank {v.rank} vs rank {k}")
        inv = self.inverse().rows
        return Covector(
            sum((v.entries[i] * inv[j][i] for i in range(k)), start=Fraction(0))
            for j in range(k)
        )

    def transform_momentum(self, v: Covector) -> Covector:
        """Right action v -> v B on rational dual data.

        Momentum values live in the same dual lattice as the weights, so a
        relabeling of that lattice moves both by the same right action (see
        transform_weight); defects and lattice membership are preserved.
        """
        k = self.rank
        if v.rank != k:
            raise RankMismatchError(f"covector rank {v.rank} vs rank {k}")
        return Covector(
            sum((v.entries[i] * self.rows[i][j] for i in range(k)), start=Fraction(0))
            for j in range(k)
        )

    def __matmul__(self, other: "UnimodularMatrix") -> "UnimodularMatrix":
        k = self.rank
        if other.rank != k:
            raise RankMismatchError("rank mismatch in matrix product")
        return UnimodularMatrix(
            tuple(
                tuple(
                    sum(self.rows[i][m] * other.rows[m][j] for m in range(k))
                    for j in range(k)
                )
                for i in range(k)
            )
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, UnimodularMatrix) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"UnimodularMatrix({list(map(list, self.rows))})"
