"""Spin-j POVM constructions over arbitrary direction sets.

For n directions and a divisor r, the scaled projectors onto all d = 2j+1
spin states along each direction form C(n,r) POVMs (one per r-subset of
directions, each element weighted 1/r).  Every element lands in
M = C(n,r) - C(n-1,r) = C(n-1,r-1) of them; when C(n,r) is odd and M is
even the usual parity argument makes the cover noncolorable.

States along a direction (theta, phi) are D(phi, theta, 0)|j,m> in the
z-y-z Euler convention, basis ordered m = +j..-j.  The convention only
matters up to phase here: everything downstream consumes projectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np

from .algebra import TOL_ID
from .covers import CoverStructure, build_gks_cover
from .rays import BACKEND_FLOATING, Ray, RaySet


@dataclass(frozen=True)
class Direction:
    """A spatial direction in spherical angles (radians)."""

    theta: float
    phi: float

    def __post_init__(self):
        if not (math.isfinite(self.theta) and math.isfinite(self.phi)):
            raise ValueError("direction angles must be finite")
        if not 0.0 <= self.theta <= math.pi:
            raise ValueError(f"theta must lie in [0, pi], got {self.theta}")
        if not 0.0 <= self.phi < 2.0 * math.pi:
            raise ValueError(f"phi must lie in [0, 2*pi), got {self.phi}")


@dataclass(frozen=True)
class SpinConstructionParams:
    j: Fraction
    d: int
    n: int
    r: int
    N: int  # number of POVMs: C(n, r)
    M: int  # occurrences of each element: C(n, r) - C(n-1, r)
    parity_ok: bool  # N odd and M even


@dataclass(frozen=True)
class SpinElement:
    """One POVM element: the projector onto |j,m> along a direction,
    divided by r."""

    element_id: int
    direction_index: int
    m: Fraction
    operator: np.ndarray

    def __post_init__(self):
        self.operator.setflags(write=False)


def _two_j(j) -> int:
    tj = Fraction(j) * 2
    if tj.denominator != 1 or tj < 1:
        raise ValueError(f"j must be a positive half-integer, got {j!r}")
    return int(tj)


def _m_values(two_j: int) -> list[Fraction]:
    return [Fraction(two_j - 2 * k, 2) for k in range(two_j + 1)]


def wigner_small_d(j, theta: float) -> np.ndarray:
    """The real rotation matrix d^j(theta) on the |j,m> basis, rows and
    columns ordered m = +j..-j.

    Computed by the factorial sum formula with exact integer/rational
    coefficients, converted to float only when multiplied by the
    half-angle sine/cosine powers; orthogonal to ~1e-12 for j <= 10.
    """
    two_j = _two_j(j)
    if not math.isfinite(theta):
        raise ValueError("theta must be finite")
    ms = _m_values(two_j)
    c = math.cos(theta / 2.0)
    s = math.sin(theta / 2.0)
    dim = two_j + 1
    out = np.zeros((dim, dim), dtype=np.float64)
    fact = math.factorial
    for a, mp in enumerate(ms):
        for b, m in enumerate(ms):
            jpm = int(Fraction(two_j, 2) + m)
            jmm = two_j - jpm
            jpmp = int(Fraction(two_j, 2) + mp)
            jmmp = two_j - jpmp
            pref = math.sqrt(fact(jpm) * fact(jmm) * fact(jpmp) * fact(jmmp))
            dmm = int(mp - m)  # m' - m, always an integer
            total = 0.0
            for k in range(max(0, -dmm), min(jpm, jmmp) + 1):
                coeff = Fraction(
                    (-1) ** (dmm + k),
                    fact(jpm - k) * fact(k) * fact(jmmp - k) * fact(dmm + k),
                )
                total += float(coeff) * c ** (two_j - dmm - 2 * k) * s ** (dmm + 2 * k)
            out[a, b] = pref * total
    return out


def rotation_matrix(j, direction: Direction) -> np.ndarray:
    """Full rotation D(phi, theta, 0) carrying the z-axis eigenbasis onto
    the eigenbasis along `direction`; columns are the rotated states."""
    two_j = _two_j(j)
    d_small = wigner_small_d(j, direction.theta)
    phases = np.array(
        [np.exp(-1j * float(m) * direction.phi) for m in _m_values(two_j)],
        dtype=np.complex128,
    )
    return phases[:, None] * d_small


def spin_states(j, direction: Direction) -> list[np.ndarray]:
    """The d = 2j+1 spin states along `direction` (z-basis components),
    ordered m = +j..-j.  Their projectors resolve the identity."""
    rot = rotation_matrix(j, direction)
    return [np.ascontiguousarray(rot[:, b]) for b in range(rot.shape[1])]


def spin_elements(j, directions: Sequence[Direction], r: int) -> list[SpinElement]:
    """All n*d POVM elements: per direction, per m, the projector/r.
    Element ids run 1..n*d, direction-major, m descending within."""
    two_j = _two_j(j)
    d = two_j + 1
    ms = _m_values(two_j)
    elements = []
    for i, direction in enumerate(directions):
        states = spin_states(j, direction)
        for k, state in enumerate(states):
            op = np.outer(state, state.conj()) / r
            elements.append(
                SpinElement(
                    element_id=i * d + k + 1,
                    direction_index=i,
                    m=ms[k],
                    operator=op,
                )
            )
    return elements


def construction_params(j, n: int, r: int) -> SpinConstructionParams:
    two_j = _two_j(j)
    if n < 2:
        raise ValueError("need at least 2 directions")
    if not 1 <= r <= n:
        raise ValueError(f"r must satisfy 1 <= r <= n, got r={r}, n={n}")
    big_n = math.comb(n, r)
    big_m = big_n - math.comb(n - 1, r)
    return SpinConstructionParams(
        j=Fraction(two_j, 2),
        d=two_j + 1,
        n=n,
        r=r,
        N=big_n,
        M=big_m,
        parity_ok=(big_n % 2 == 1 and big_m % 2 == 0),
    )


def generate_gks(j, directions: Sequence[Direction], r: int, tol: float = TOL_ID) -> CoverStructure:
    """Build and verify the full construction as a POVM cover.

    One context per r-subset of directions (lexicographic subset order,
    names P1..PN), each holding the r*d elements of its directions at
    weight 1/r.  Every context is checked to resolve the identity within
    tol.  Repeated directions are rejected up front.
    """
    n = len(directions)
    params = construction_params(j, n, r)
    if len({(d.theta, d.phi) for d in directions}) != n:
        raise ValueError("directions must be pairwise distinct")
    d = params.d
    ms = _m_values(d - 1)
    states = [spin_states(j, direction) for direction in directions]
    rays = tuple(
        Ray(
            id=i * d + k + 1,
            coords=np.asarray(state, dtype=np.complex128),
            label=f"n{i} m={ms[k]}",
        )
        for i, dir_states in enumerate(states)
        for k, state in enumerate(dir_states)
    )
    rayset = RaySet(dim=d, rays=rays, backend=BACKEND_FLOATING)
    groups = [
        [i * d + k + 1 for i in subset for k in range(d)]
        for subset in combinations(range(n), r)
    ]
    return build_gks_cover(rayset, groups, Fraction(1, r), tol=tol)


def find_parity_params(n_max: int) -> list[tuple[int, int, int, int]]:
    """All (n, r, N, M) with 1 <= r <= n <= n_max, C(n,r) odd and
    C(n,r) - C(n-1,r) even, in ascending (n, r) order.  Exact integer
    binomials throughout."""
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    out = []
    for n in range(2, n_max + 1):
        for r in range(1, n + 1):
            big_n = math.comb(n, r)
            big_m = big_n - math.comb(n - 1, r)
            if big_n % 2 == 1 and big_m % 2 == 0:
                out.append((n, r, big_n, big_m))
    return out


def random_directions(n: int, seed: int | None = None) -> list[Direction]:
    """n distinct directions drawn uniformly on the sphere."""
    rng = np.random.default_rng(seed)
    out: list[Direction] = []
    seen = set()
    while len(out) < n:
        theta = math.acos(rng.uniform(-1.0, 1.0))
        phi = rng.uniform(0.0, 2.0 * math.pi)
        if (theta, phi) in seen:
            continue
        seen.add((theta, phi))
        out.append(Direction(theta=theta, phi=phi))
    return out


# ---------------------------------------------------------------------------
# Direction list file: one `dir <theta> <phi>` line per direction, radians.


class DirectionFormatError(ValueError):
    pass


def format_directions(directions: Sequence[Direction]) -> str:
    return "".join(f"dir {d.theta!r} {d.phi!r}\n" for d in directions)


def parse_directions(text: str) -> list[Direction]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if fields[0] != "dir" or len(fields) != 3:
            raise DirectionFormatError(f"line {lineno}: expected 'dir <theta> <phi>'")
        try:
            direction = Direction(theta=float(fields[1]), phi=float(fields[2]))
        except ValueError as e:
            raise DirectionFormatError(f"line {lineno}: {e}") from None
        out.append(direction)
    return out


def load_directions(path) -> list[Direction]:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_directions(fh.read())


def save_directions(directions: Sequence[Direction], path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_directions(directions))
