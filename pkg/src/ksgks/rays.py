"""Canonical ray sets: 24-cell vertices, the dual 24-cell, their union,
the 18-ray subset, and the hexagon qubit states.

A ray is an antipodal-identified direction: rational rays are stored in
canonical form (integer components divided by their gcd, first nonzero
component positive), so v and -v and 2v all construct the same ray.
Ray ids are frozen to the conventional numbering: 1-12 for the 24-cell
vertex order below, 13-24 for the dual, and the 18-ray subset keeps the
gaps (ids 1, 5, 10, 16, 20, 24 absent).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .algebra import RationalVector, rational

BACKEND_EXACT = "exact"
BACKEND_FLOATING = "floating"

# 24-cell vertices (one per antipodal pair), in the fixed id order 1..12.
# Ids 1-4, 5-8, 9-12 are the three inscribed cross polytopes; each group is
# a tetrad of mutually orthogonal rays.
CELL24_VERTICES = (
    (2, 0, 0, 0),
    (0, 2, 0, 0),
    (0, 0, 2, 0),
    (0, 0, 0, 2),
    (1, 1, 1, 1),
    (1, -1, 1, -1),
    (1, 1, -1, -1),
    (1, -1, -1, 1),
    (1, 1, 1, -1),
    (-1, 1, 1, 1),
    (1, -1, 1, 1),
    (1, 1, -1, 1),
)

# Dual 24-cell vertices (permutations of (+-1, +-1, 0, 0) up to antipodes),
# in the fixed id order 13..24.
DUAL24_VERTICES = (
    (1, 0, 1, 0),
    (0, 1, 0, 1),
    (1, 0, -1, 0),
    (0, 1, 0, -1),
    (1, 1, 0, 0),
    (1, -1, 0, 0),
    (0, 0, 1, 1),
    (0, 0, 1, -1),
    (1, 0, 0, 1),
    (0, 1, 1, 0),
    (1, 0, 0, -1),
    (0, 1, -1, 0),
)

# The 18-ray subset omits 1, 5, 10 from the first twelve and 16, 20, 24
# from the second twelve.
RAY18_IDS = (2, 3, 4, 6, 7, 8, 9, 11, 12, 13, 14, 15, 17, 18, 19, 21, 22, 23)


@dataclass(frozen=True)
class Ray:
    """A rank-1 direction with a stable id.

    coords is a tuple of Fractions (exact backend) or a read-only
    complex128 array (floating backend).
    """

    id: int
    coords: RationalVector | np.ndarray
    label: str = ""

    def __post_init__(self):
        if self.id <= 0:
            raise ValueError(f"ray id must be positive, got {self.id}")
        if isinstance(self.coords, np.ndarray):
            self.coords.setflags(write=False)


@dataclass(frozen=True)
class RaySet:
    dim: int
    rays: tuple[Ray, ...]
    backend: str = BACKEND_EXACT
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.backend not in (BACKEND_EXACT, BACKEND_FLOATING):
            raise ValueError(f"unknown backend {self.backend!r}")
        index = {}
        seen_coords = set()
        for r in self.rays:
            if len(r.coords) != self.dim:
                raise ValueError(f"ray {r.id} has dimension {len(r.coords)}, expected {self.dim}")
            if r.id in index:
                raise ValueError(f"duplicate ray id {r.id}")
            index[r.id] = r
            if self.backend == BACKEND_EXACT:
                c = canonicalize(r.coords)
                if c != r.coords:
                    raise ValueError(f"ray {r.id} is not in canonical form")
                if c in seen_coords:
                    raise ValueError(f"ray {r.id} duplicates another ray's direction")
                seen_coords.add(c)
        object.__setattr__(self, "_index", index)

    def __len__(self) -> int:
        return len(self.rays)

    def ids(self) -> tuple[int, ...]:
        return tuple(r.id for r in self.rays)

    def ray(self, ray_id: int) -> Ray:
        try:
            return self._index[ray_id]
        except KeyError:
            raise KeyError(f"no ray with id {ray_id}") from None


def canonicalize(v) -> RationalVector:
    """Canonical form of a rational direction.

    Scales to coprime integer components with the first nonzero one
    positive, which identifies antipodes: canonicalize(v) == canonicalize(-v).
    """
    v = tuple(rational(c) for c in v)
    if all(c == 0 for c in v):
        raise ValueError("cannot canonicalize the zero vector")
    lcm = math.lcm(*(c.denominator for c in v))
    ints = [int(c * lcm) for c in v]
    g = math.gcd(*ints)
    ints = [c // g for c in ints]
    first = next(c for c in ints if c != 0)
    if first < 0:
        ints = [-c for c in ints]
    return tuple(Fraction(c) for c in ints)


def _exact_rayset(vertices, start_id: int) -> RaySet:
    rays = tuple(
        Ray(id=i, coords=canonicalize(v), label=",".join(str(c) for c in v))
        for i, v in enumerate(vertices, start=start_id)
    )
    return RaySet(dim=4, rays=rays, backend=BACKEND_EXACT)


def build_24cell_rays() -> RaySet:
    """The 12 antipodal-identified 24-cell vertex rays, ids 1..12."""
    return _exact_rayset(CELL24_VERTICES, start_id=1)


def build_dual_24cell_rays() -> RaySet:
    """The 12 dual 24-cell vertex rays, ids 13..24."""
    return _exact_rayset(DUAL24_VERTICES, start_id=13)


def build_peres24() -> RaySet:
    """The union of the 24-cell and dual rays: the 24-ray set of the
    Peres/Mermin KS proof, ids 1..24."""
    a = build_24cell_rays()
    b = build_dual_24cell_rays()
    return RaySet(dim=4, rays=a.rays + b.rays, backend=BACKEND_EXACT)


def build_18ray() -> RaySet:
    """The economical 18-ray subset (ids keep the numbering gaps)."""
    full = build_peres24()
    return RaySet(dim=4, rays=tuple(full.ray(i) for i in RAY18_IDS), backend=BACKEND_EXACT)


def build_hexagon_rays() -> RaySet:
    """Six qubit states for the hexagon construction, ids 1..6.

    State k is the spin-up state along the direction at theta_k = k*60deg
    in a fixed plane: (cos(theta_k/2), sin(theta_k/2)).  Opposite hexagon
    directions (k, k+3) give orthogonal states, so the six states form
    three complete measurement pairs.
    """
    rays = []
    for k in range(6):
        theta = k * math.pi / 3.0
        state = np.array([math.cos(theta / 2), math.sin(theta / 2)], dtype=np.complex128)
        rays.append(Ray(id=k + 1, coords=state, label=f"k={k}"))
    return RaySet(dim=2, rays=tuple(rays), backend=BACKEND_FLOATING)


def inscribed_tesseracts() -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
    """Ray-id sets of the three tesseracts inscribed in the 24-cell.

    Pairing the three cross polytopes C1={1..4}, C2={5..8}, C3={9..12}
    gives (C1|C2, C1|C3, C2|C3); every ray lies in exactly two of the
    three tesseracts.
    """
    c1, c2, c3 = tuple(range(1, 5)), tuple(range(5, 9)), tuple(range(9, 13))
    return (c1 + c2, c1 + c3, c2 + c3)


# ---------------------------------------------------------------------------
# Ray set text format: `dim <d>` then one `ray <id> <c1> ... <cd>` per line.
# Components are integers or p/q rationals (exact backend) or decimal /
# complex literals (floating backend).  `#` starts a comment.


class RayFormatError(ValueError):
    pass


def _format_component(c) -> str:
    if isinstance(c, Fraction):
        return str(c)
    c = complex(c)
    if c.imag == 0.0:
        return repr(c.real)
    return repr(c)[1:-1]  # strip the parentheses from complex repr


def format_rayset(rs: RaySet) -> str:
    lines = [f"dim {rs.dim}"]
    for r in rs.rays:
        comps = " ".join(_format_component(c) for c in r.coords)
        lines.append(f"ray {r.id} {comps}")
    return "\n".join(lines) + "\n"


def _parse_component(token: str):
    if "/" in token:
        return Fraction(token)
    try:
        return Fraction(int(token))
    except ValueError:
        pass
    try:
        return complex(token)
    except ValueError:
        raise ValueError(f"bad component {token!r}") from None


def parse_rayset(text: str) -> RaySet:
    """Parse the ray set text format; rational rays are canonicalized."""
    dim = None
    parsed: list[tuple[int, list]] = []
    floating = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if fields[0] == "dim":
            if dim is not None:
                raise RayFormatError(f"line {lineno}: duplicate dim line")
            if len(fields) != 2 or not fields[1].isdigit() or int(fields[1]) < 1:
                raise RayFormatError(f"line {lineno}: expected 'dim <positive integer>'")
            dim = int(fields[1])
        elif fields[0] == "ray":
            if dim is None:
                raise RayFormatError(f"line {lineno}: 'ray' before 'dim'")
            if len(fields) != 2 + dim:
                raise RayFormatError(f"line {lineno}: expected {dim} components")
            try:
                rid = int(fields[1])
                comps = [_parse_component(t) for t in fields[2:]]
            except ValueError as e:
                raise RayFormatError(f"line {lineno}: {e}") from None
            if any(isinstance(c, complex) for c in comps):
                floating = True
            parsed.append((rid, comps))
        else:
            raise RayFormatError(f"line {lineno}: unknown directive {fields[0]!r}")
    if dim is None:
        raise RayFormatError("missing 'dim' line")
    rays = []
    for rid, comps in parsed:
        if floating:
            coords = np.array([complex(c) for c in comps], dtype=np.complex128)
            rays.append(Ray(id=rid, coords=coords))
        else:
            rays.append(Ray(id=rid, coords=canonicalize(comps)))
    try:
        return RaySet(
            dim=dim,
            rays=tuple(rays),
            backend=BACKEND_FLOATING if floating else BACKEND_EXACT,
        )
    except ValueError as e:
        raise RayFormatError(str(e)) from None


def load_rayset(path) -> RaySet:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_rayset(fh.read())


def save_rayset(rs: RaySet, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_rayset(rs))
