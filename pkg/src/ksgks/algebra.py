"""Exact rational linear algebra for rank-1 projector arithmetic.

All exact values are `fractions.Fraction`; vectors are tuples of Fractions
and matrices are tuples of row tuples.  Dimensions here are tiny (2 to 9),
so clarity wins over speed and nothing is ever rounded.

A thin floating-point layer (numpy complex128) backs the constructions
whose amplitudes are irrational: hexagon qubit states and rotated spin
eigenbases.  Floating comparisons use the fixed tolerances below, far
above double-precision noise at these dimensions and far below any
structural deviation.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

Rational = Fraction
RationalVector = tuple[Fraction, ...]
RationalMatrix = tuple[tuple[Fraction, ...], ...]

#: Tolerance for Hermiticity checks on floating matrices.
TOL_HERM = 1e-10
#: Tolerance for identity-resolution checks on floating matrices.
TOL_ID = 1e-10
#: Tolerance below which a floating inner product counts as orthogonal.
TOL_ORTHO = 1e-10


def rational(x) -> Fraction:
    """Coerce an int, string ('p/q'), or Fraction to an exact Fraction."""
    if isinstance(x, float):
        raise TypeError("refusing to coerce a float into exact arithmetic")
    return Fraction(x)


def vector(components: Iterable) -> RationalVector:
    return tuple(rational(c) for c in components)


def matrix(rows: Iterable[Iterable]) -> RationalMatrix:
    m = tuple(tuple(rational(x) for x in row) for row in rows)
    if any(len(row) != len(m) for row in m):
        raise ValueError("matrix must be square")
    return m


def dot(u: RationalVector, v: RationalVector) -> Fraction:
    """Exact inner product of two rational vectors of equal dimension."""
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} != {len(v)}")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def is_zero_vector(v: RationalVector) -> bool:
    return all(c == 0 for c in v)


def projector(v: RationalVector) -> RationalMatrix:
    """Rank-1 projector v v^T / (v^T v), exact.

    Dividing by the squared norm instead of normalizing v keeps every
    entry rational.  The result is symmetric, idempotent, and has trace
    exactly 1.
    """
    if is_zero_vector(v):
        raise ValueError("projector of the zero vector is undefined")
    n = dot(v, v)
    return tuple(tuple(a * b / n for b in v) for a in v)


def identity_matrix(dim: int) -> RationalMatrix:
    return tuple(
        tuple(Fraction(1 if i == j else 0) for j in range(dim)) for i in range(dim)
    )


def zero_matrix(dim: int) -> RationalMatrix:
    return tuple(tuple(Fraction(0) for _ in range(dim)) for _ in range(dim))


def mat_add(a: RationalMatrix, b: RationalMatrix) -> RationalMatrix:
    if len(a) != len(b):
        raise ValueError(f"dimension mismatch: {len(a)} != {len(b)}")
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(c, m: RationalMatrix) -> RationalMatrix:
    c = rational(c)
    return tuple(tuple(c * x for x in row) for row in m)


def mat_mul(a: RationalMatrix, b: RationalMatrix) -> RationalMatrix:
    if len(a) != len(b):
        raise ValueError(f"dimension mismatch: {len(a)} != {len(b)}")
    bt = tuple(zip(*b))
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def trace(m: RationalMatrix) -> Fraction:
    return sum((m[i][i] for i in range(len(m))), Fraction(0))


def weighted_sum(mats: Sequence[RationalMatrix], w, dim: int | None = None) -> RationalMatrix:
    """w * sum(mats), exact.  `dim` disambiguates the empty sum."""
    w = rational(w)
    if not mats:
        return zero_matrix(0 if dim is None else dim)
    acc = mats[0]
    for m in mats[1:]:
        acc = mat_add(acc, m)
    return mat_scale(w, acc)


def is_identity(m: RationalMatrix) -> bool:
    """True iff m is exactly the identity."""
    return all(
        m[i][j] == (1 if i == j else 0)
        for i in range(len(m))
        for j in range(len(m))
    )


def is_symmetric(m: RationalMatrix) -> bool:
    d = len(m)
    return all(m[i][j] == m[j][i] for i in range(d) for j in range(i + 1, d))


def is_idempotent(m: RationalMatrix) -> bool:
    return mat_mul(m, m) == m


# ---------------------------------------------------------------------------
# Floating complex layer


def cdot(u: np.ndarray, v: np.ndarray) -> complex:
    """Hermitian inner product <u|v> (conjugate on the first argument)."""
    if u.shape != v.shape:
        raise ValueError(f"dimension mismatch: {u.shape} != {v.shape}")
    return complex(np.vdot(u, v))


def cprojector(state: np.ndarray) -> np.ndarray:
    """Rank-1 projector |psi><psi| / <psi|psi> as a complex128 matrix."""
    state = np.asarray(state, dtype=np.complex128)
    n = np.vdot(state, state).real
    if n == 0.0:
        raise ValueError("projector of the zero vector is undefined")
    return np.outer(state, state.conj()) / n


def weighted_sum_c(mats: Sequence[np.ndarray], w) -> np.ndarray:
    if not mats:
        raise ValueError("empty operator sum has no dimension")
    return float(w) * np.sum(mats, axis=0)


def is_identity_c(m: np.ndarray, tol: float = TOL_ID) -> bool:
    return identity_residual_c(m) <= tol


def identity_residual_c(m: np.ndarray) -> float:
    """Max-entry deviation of m from the identity."""
    return float(np.max(np.abs(m - np.eye(m.shape[0], dtype=np.complex128))))


def is_hermitian(m: np.ndarray, tol: float = TOL_HERM) -> bool:
    return bool(np.max(np.abs(m - m.conj().T)) <= tol)
