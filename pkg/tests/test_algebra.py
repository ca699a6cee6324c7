import random
from fractions import Fraction

import numpy as np
import pytest

from ksgks import algebra
from ksgks.algebra import (
    dot,
    identity_matrix,
    is_identity,
    is_idempotent,
    is_symmetric,
    matrix,
    projector,
    trace,
    vector,
    weighted_sum,
    zero_matrix,
)

F = Fraction


def test_projector_axis_vector():
    p = projector(vector([2, 0, 0, 0]))
    assert p == matrix([[1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]])


def test_projector_all_ones():
    p = projector(vector([1, 1, 1, 1]))
    assert all(x == F(1, 4) for row in p for x in row)


def test_projector_half_pattern():
    p = projector(vector([1, 0, 1, 0]))
    expected = {(0, 0), (0, 2), (2, 0), (2, 2)}
    for i in range(4):
        for j in range(4):
            assert p[i][j] == (F(1, 2) if (i, j) in expected else 0)


def test_projector_rejects_zero_vector():
    with pytest.raises(ValueError):
        projector(vector([0, 0, 0]))


def test_projector_properties_random():
    rng = random.Random(20240)
    for _ in range(50):
        d = rng.randint(2, 5)
        v = vector([F(rng.randint(-6, 6), rng.randint(1, 5)) for _ in range(d)])
        if algebra.is_zero_vector(v):
            continue
        p = projector(v)
        assert is_idempotent(p)
        assert is_symmetric(p)
        assert trace(p) == 1


def test_projector_scale_and_antipodal_invariance():
    rng = random.Random(99)
    for _ in range(30):
        v = vector([F(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(4)])
        if algebra.is_zero_vector(v):
            continue
        c = F(rng.randint(1, 7), rng.randint(1, 7))
        assert projector(v) == projector(algebra.vector([c * x for x in v]))
        assert projector(v) == projector(algebra.vector([-x for x in v]))


def test_weighted_sum_basis_completeness():
    mats = [projector(vector(row)) for row in identity_matrix(4)]
    assert is_identity(weighted_sum(mats, 1))


def test_weighted_sum_empty_is_zero():
    assert weighted_sum([], F(1, 2), dim=4) == zero_matrix(4)
    assert weighted_sum([], F(1, 2)) == ()


def test_weighted_sum_dimension_mismatch():
    with pytest.raises(ValueError):
        weighted_sum([identity_matrix(2), identity_matrix(3)], 1)


def test_weighted_sum_tetrad_pair_povm():
    # elements of two orthogonal tetrads of the 24-cell at weight 1/2
    from ksgks.rays import build_24cell_rays

    rs = build_24cell_rays()
    mats = [projector(rs.ray(i).coords) for i in range(1, 9)]
    assert is_identity(weighted_sum(mats, F(1, 2)))


def test_is_identity():
    assert is_identity(identity_matrix(4))
    assert not is_identity(matrix([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 0]]))


def test_is_identity_third_weight_povm():
    # tetrads T1, T5, T7 of the 18-ray set at weight 1/3
    from ksgks.rays import build_18ray

    rs = build_18ray()
    ids = (2, 3, 21, 23, 6, 8, 17, 19, 9, 11, 14, 15)
    mats = [projector(rs.ray(i).coords) for i in ids]
    assert is_identity(weighted_sum(mats, F(1, 3)))


def test_dot_examples():
    assert dot(vector([1, 1, 1, 1]), vector([1, -1, 1, -1])) == 0
    assert dot(vector([2, 0, 0, 0]), vector([1, 1, 1, 1])) == 2
    assert dot(vector([1, 0, 0, 1]), vector([1, 0, 0, -1])) == 0


def test_dot_dimension_mismatch():
    with pytest.raises(ValueError):
        dot(vector([1, 2]), vector([1, 2, 3]))


def test_rational_round_trips():
    rng = random.Random(7)
    for _ in range(200):
        a = F(rng.randint(-50, 50), rng.randint(1, 30))
        b = F(rng.randint(-50, 50), rng.randint(1, 30))
        assert (a + b) - b == a
        if b != 0:
            assert (a * b) / b == a


def test_rational_refuses_floats():
    with pytest.raises(TypeError):
        algebra.rational(0.5)


def test_matrix_must_be_square():
    with pytest.raises(ValueError):
        matrix([[1, 2, 3], [4, 5, 6]])


def test_floating_layer():
    state = np.array([1.0, 1.0j], dtype=np.complex128) / np.sqrt(2)
    p = algebra.cprojector(state)
    assert algebra.is_hermitian(p)
    assert abs(np.trace(p) - 1.0) < 1e-12
    # complement state (1, -i) spans the orthogonal ray
    q = algebra.cprojector(np.array([1.0, -1.0j], dtype=np.complex128))
    assert algebra.is_identity_c(p + q)
    assert not algebra.is_identity_c(p + p)


def test_cdot_conjugates_first_argument():
    u = np.array([1.0j, 0.0], dtype=np.complex128)
    v = np.array([1.0, 0.0], dtype=np.complex128)
    assert algebra.cdot(u, v) == pytest.approx(-1.0j)
