"""Named built-in ray sets and covers.

The canonical objects are compiled in so every construction reproduces
with zero setup; files override them at the CLI.
"""

from __future__ import annotations

from fractions import Fraction

from .covers import CoverStructure, build_gks_cover, build_ks_cover
from .rays import (
    RaySet,
    build_18ray,
    build_24cell_rays,
    build_dual_24cell_rays,
    build_hexagon_rays,
    build_peres24,
    inscribed_tesseracts,
)

RAYSET_BUILDERS = {
    "24cell": build_24cell_rays,
    "dual24cell": build_dual_24cell_rays,
    "peres24": build_peres24,
    "rays18": build_18ray,
    "hexagon": build_hexagon_rays,
}

# POVM grouping of the nine tetrads of the 18-ray set: three triples whose
# unions each resolve the identity at weight 1/3.
GKS18_GROUPS = (("T1", "T5", "T7"), ("T2", "T4", "T8"), ("T3", "T6", "T9"))


def hexagon_povm_groups() -> list[list[int]]:
    """Two opposite-direction pairs per POVM: pairs are (k, k+3), i.e.
    ids (1,4), (2,5), (3,6); any two pairs form a 4-element POVM."""
    pairs = [[1, 4], [2, 5], [3, 6]]
    return [pairs[0] + pairs[1], pairs[0] + pairs[2], pairs[1] + pairs[2]]


def _ks18() -> CoverStructure:
    return build_ks_cover(build_18ray())


def _gks18() -> CoverStructure:
    return build_gks_cover(build_18ray(), GKS18_GROUPS, Fraction(1, 3))


def _ks24cell() -> CoverStructure:
    return build_ks_cover(build_24cell_rays())


def _gks24cell() -> CoverStructure:
    return build_gks_cover(build_24cell_rays(), inscribed_tesseracts(), Fraction(1, 2))


def _ksperes24() -> CoverStructure:
    return build_ks_cover(build_peres24())


def _gkshexagon() -> CoverStructure:
    return build_gks_cover(build_hexagon_rays(), hexagon_povm_groups(), Fraction(1, 2))


COVER_BUILDERS = {
    "ks18": _ks18,
    "gks18": _gks18,
    "ks24cell": _ks24cell,
    "gks24cell": _gks24cell,
    "ksperes24": _ksperes24,
    "gkshexagon": _gkshexagon,
}


def builtin_rayset(name: str) -> RaySet:
    try:
        return RAYSET_BUILDERS[name]()
    except KeyError:
        raise KeyError(
            f"unknown ray set {name!r}; built-ins: {', '.join(sorted(RAYSET_BUILDERS))}"
        ) from None


def builtin_cover(name: str) -> CoverStructure:
    try:
        return COVER_BUILDERS[name]()
    except KeyError:
        raise KeyError(
            f"unknown cover {name!r}; built-ins: {', '.join(sorted(COVER_BUILDERS))}"
        ) from None
