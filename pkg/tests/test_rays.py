import random
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

from ksgks.algebra import cdot, cprojector, dot
from ksgks.rays import (
    BACKEND_EXACT,
    BACKEND_FLOATING,
    RAY18_IDS,
    Ray,
    RayFormatError,
    RaySet,
    build_18ray,
    build_24cell_rays,
    build_dual_24cell_rays,
    build_hexagon_rays,
    build_peres24,
    canonicalize,
    format_rayset,
    inscribed_tesseracts,
    parse_rayset,
)

F = Fraction


def test_canonicalize_examples():
    assert canonicalize([2, 0, 0, 0]) == (1, 0, 0, 0)
    assert canonicalize([-1, 1, 1, 1]) == (1, -1, -1, -1)
    assert canonicalize([F(1, 2), F(1, 3)]) == (3, 2)


def test_canonicalize_idempotent_and_antipodal():
    rng = random.Random(314)
    for _ in range(100):
        v = [F(rng.randint(-8, 8), rng.randint(1, 6)) for _ in range(4)]
        if all(c == 0 for c in v):
            continue
        c = canonicalize(v)
        assert canonicalize(c) == c
        assert canonicalize([-x for x in v]) == c
        scale = F(rng.randint(1, 9), rng.randint(1, 9))
        assert canonicalize([scale * x for x in v]) == c


def test_canonicalize_rejects_zero():
    with pytest.raises(ValueError):
        canonicalize([0, 0, 0, 0])


def test_24cell_listing():
    rs = build_24cell_rays()
    assert rs.ids() == tuple(range(1, 13))
    assert rs.dim == 4 and rs.backend == BACKEND_EXACT
    assert rs.ray(1).coords == (1, 0, 0, 0)
    assert rs.ray(10).coords == (1, -1, -1, -1)


def test_24cell_tetrads_mutually_orthogonal():
    rs = build_24cell_rays()
    for tetrad in [(1, 2, 3, 4), (5, 6, 7, 8), (9, 10, 11, 12)]:
        for a, b in combinations(tetrad, 2):
            assert dot(rs.ray(a).coords, rs.ray(b).coords) == 0


def test_dual_24cell_listing():
    rs = build_dual_24cell_rays()
    assert rs.ids() == tuple(range(13, 25))
    assert rs.ray(13).coords == (1, 0, 1, 0)
    assert rs.ray(24).coords == (0, 1, -1, 0)
    for r in rs.rays:
        assert sorted(abs(c) for c in r.coords) == [0, 0, 1, 1]


def test_peres24_union():
    rs = build_peres24()
    assert len(rs) == 24
    assert rs.ids() == tuple(range(1, 25))
    coords = {r.coords for r in rs.rays}
    assert (1, 0, 0, 0) in coords and (1, 1, 0, 0) in coords
    # no two of the 24 rays are collinear
    assert len(coords) == 24


def test_18ray_ids():
    rs = build_18ray()
    assert rs.ids() == RAY18_IDS
    ids = set(rs.ids())
    assert 1 not in ids and 2 in ids
    assert 16 not in ids and 17 in ids
    assert len(rs) == 18


def test_hexagon_states():
    rs = build_hexagon_rays()
    assert len(rs) == 6 and rs.dim == 2 and rs.backend == BACKEND_FLOATING
    np.testing.assert_allclose(rs.ray(1).coords, [1.0, 0.0], atol=1e-12)
    np.testing.assert_allclose(rs.ray(4).coords, [0.0, 1.0], atol=1e-12)  # k=3
    for k in range(3):
        opposite = abs(cdot(rs.ray(k + 1).coords, rs.ray(k + 4).coords))
        assert opposite < 1e-12


def test_hexagon_half_weight_resolution():
    # six elements = three complete measurement pairs
    rs = build_hexagon_rays()
    total = sum(cprojector(r.coords) for r in rs.rays) / 2.0
    np.testing.assert_allclose(total, 1.5 * np.eye(2), atol=1e-10)


def test_inscribed_tesseracts():
    a, b, c = inscribed_tesseracts()
    assert a == tuple(range(1, 9))
    assert b == tuple(range(1, 5)) + tuple(range(9, 13))
    assert c == tuple(range(5, 13))
    for rid in range(1, 13):
        assert sum(rid in t for t in (a, b, c)) == 2
    assert all(len(t) == 8 for t in (a, b, c))


def test_rayset_validation():
    with pytest.raises(ValueError):
        Ray(id=0, coords=(F(1), F(0)))
    with pytest.raises(ValueError):
        RaySet(dim=2, rays=(Ray(1, (F(1), F(0))), Ray(1, (F(0), F(1)))))
    with pytest.raises(ValueError):
        # same direction after canonicalization
        RaySet(dim=2, rays=(Ray(1, (F(1), F(0))), Ray(2, (F(1), F(0)))))
    with pytest.raises(ValueError):
        RaySet(dim=2, rays=(Ray(1, (F(2), F(0))),))  # not canonical


@pytest.mark.parametrize("builder", [build_24cell_rays, build_dual_24cell_rays, build_peres24, build_18ray])
def test_exact_format_round_trip(builder):
    rs = builder()
    text = format_rayset(rs)
    back = parse_rayset(text)
    assert back.dim == rs.dim
    assert back.backend == rs.backend
    assert back.ids() == rs.ids()
    assert all(back.ray(i).coords == rs.ray(i).coords for i in rs.ids())
    # writers emit canonical form: a second trip is byte-identical
    assert format_rayset(back) == text


def test_floating_format_round_trip():
    rs = build_hexagon_rays()
    back = parse_rayset(format_rayset(rs))
    assert back.backend == BACKEND_FLOATING
    for i in rs.ids():
        np.testing.assert_array_equal(back.ray(i).coords, rs.ray(i).coords)


def test_parse_canonicalizes():
    rs = parse_rayset("dim 4\nray 1 2 0 0 0\nray 7 -1 1 1 1\n")
    assert rs.ray(1).coords == (1, 0, 0, 0)
    assert rs.ray(7).coords == (1, -1, -1, -1)


def test_parse_rational_components():
    rs = parse_rayset("dim 2\nray 3 1/2 1/3\n")
    assert rs.ray(3).coords == (3, 2)


def test_parse_comments_and_blanks():
    rs = parse_rayset("# leading comment\n\ndim 2\nray 1 1 0  # trailing\n")
    assert rs.ids() == (1,)


@pytest.mark.parametrize(
    "text",
    [
        "ray 1 1 0\n",  # ray before dim
        "dim 2\nray 1 1\n",  # wrong component count
        "dim 2\nray 1 1 x\n",  # bad component
        "dim 0\nray 1 1\n",  # bad dim
        "dim 2\nray 1 1 0\nray 1 0 1\n",  # duplicate id
        "dim 2\nray 1 1 0\nray 2 2 0\n",  # duplicate direction
        "dim 2\nwhat 1 1 0\n",  # unknown directive
        "",  # missing dim
    ],
)
def test_parse_errors(text):
    with pytest.raises(RayFormatError):
        parse_rayset(text)
