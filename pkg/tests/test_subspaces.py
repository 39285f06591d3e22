import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eplab import (
    DimensionMismatchError,
    InputError,
    Subspace,
    TrivialSubspaceError,
    bouldin_angle,
    equals,
    includes,
    intersect,
    kernel_basis,
    minimal_angle,
    numerical_rank,
    pinv,
    projector,
    range_basis,
    subspace_sum,
    tilted_projection_pair,
)


def span(*columns):
    basis = np.column_stack([np.asarray(c, dtype=complex) for c in columns])
    norms = np.linalg.norm(basis, axis=0)
    return Subspace(basis.shape[0], basis / norms)


def e(n, i):
    v = np.zeros(n, dtype=complex)
    v[i] = 1.0
    return v


def random_subspace(rng, n, k):
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, _ = np.linalg.qr(g)
    return Subspace(n, q[:, :k])


class TestBases:
    def test_range_of_identity_is_full(self):
        s = range_basis(np.eye(2, dtype=complex))
        assert s.dim == 2

    def test_range_single_nonzero_row(self):
        s = range_basis(np.array([[1.0, 1.0], [0.0, 0.0]], dtype=complex))
        assert equals(s, span(e(2, 0)))

    def test_range_of_singular_complex_symmetric(self):
        # columns (1, i) and (i, -1) = i*(1, i): a one-dimensional range
        a = np.array([[1.0, 1.0j], [1.0j, -1.0]])
        s = range_basis(a)
        assert s.dim == 1
        assert equals(s, span([1.0, 1.0j]))

    def test_kernel_trivial_for_identity(self):
        assert kernel_basis(np.eye(2)).dim == 0

    def test_kernel_of_diagonal_projection(self):
        assert equals(kernel_basis(np.diag([1.0, 0.0])), span(e(2, 1)))

    def test_kernel_of_nilpotent_block(self):
        assert equals(kernel_basis(np.array([[0.0, 1.0], [0.0, 0.0]])), span(e(2, 0)))

    def test_kernel_orthogonal_to_adjoint_range(self):
        rng = np.random.default_rng(31)
        for _ in range(10):
            m = rng.standard_normal((5, 7)) + 1j * rng.standard_normal((5, 7))
            m = m @ np.diag(rng.integers(0, 2, size=7).astype(float))
            ker = kernel_basis(m)
            corange = range_basis(m.conj().T)
            assert ker.dim + corange.dim == 7
            if ker.dim and corange.dim:
                cross = ker.basis.conj().T @ corange.basis
                assert np.linalg.norm(cross) <= 1e-8

    def test_range_stable_under_pinv_smoothing(self):
        rng = np.random.default_rng(77)
        for _ in range(8):
            m = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
            m[:, :3] = 0
            assert equals(range_basis(m), range_basis(m @ pinv(m) @ m))


class TestProjector:
    def test_coordinate_span(self):
        np.testing.assert_allclose(projector(span(e(2, 0))), np.diag([1.0, 0.0]))

    def test_zero_subspace(self):
        np.testing.assert_allclose(projector(Subspace.trivial(2)), np.zeros((2, 2)))

    def test_rank_one_diagonal_line(self):
        p = projector(span([1.0, 1.0]))
        np.testing.assert_allclose(p, 0.5 * np.ones((2, 2)), atol=1e-15)

    def test_hermitian_idempotent_trace(self):
        rng = np.random.default_rng(3)
        s = random_subspace(rng, 6, 4)
        p = projector(s)
        assert np.linalg.norm(p - p.conj().T) <= 1e-12
        assert np.linalg.norm(p @ p - p) <= 1e-12
        assert np.trace(p).real == pytest.approx(4.0)

    def test_rejects_non_orthonormal(self):
        bad = Subspace.__new__(Subspace)
        object.__setattr__(bad, "ambient_dim", 2)
        object.__setattr__(bad, "basis", np.array([[1.0], [1.0]], dtype=complex))
        with pytest.raises(InputError):
            projector(bad)


class TestIncludesEquals:
    def test_coordinate_inclusion(self):
        assert includes(span(e(2, 0)), span(e(2, 0), e(2, 1)))

    def test_disjoint_lines(self):
        assert not includes(span(e(2, 0)), span(e(2, 1)))

    def test_projection_product_range_inside_invertible_range(self):
        g = np.array([[1.0, 1.0], [0.0, 1.0]], dtype=complex)
        p = np.diag([1.0, 0.0]).astype(complex)
        assert includes(range_basis(p @ g), range_basis(g))

    def test_scaling_invariance(self):
        assert equals(span(e(2, 0)), span(2 * e(2, 0)))

    def test_range_differs_from_adjoint_range(self):
        a = np.array([[1.0, 1.0j], [1.0j, -1.0]])
        assert not equals(range_basis(a), range_basis(a.conj().T))

    def test_trivial_equals_trivial(self):
        assert equals(Subspace.trivial(3), Subspace.trivial(3))

    def test_ambient_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            includes(Subspace.trivial(2), Subspace.trivial(3))


class TestIntersectSum:
    def test_plane_intersection(self):
        s1 = span(e(3, 0), e(3, 1))
        s2 = span(e(3, 1), e(3, 2))
        assert equals(intersect(s1, s2), span(e(3, 1)))

    def test_idempotent(self):
        rng = np.random.default_rng(8)
        s = random_subspace(rng, 5, 3)
        assert equals(intersect(s, s), s)

    def test_tilted_spaces_meet_only_at_zero(self):
        for n in (0, 1, 4):
            pair = tilted_projection_pair(n)
            assert intersect(pair.m1, pair.m2).dim == 0

    def test_sum_of_coordinate_lines(self):
        assert equals(subspace_sum(span(e(2, 0)), span(e(2, 1))), span(e(2, 0), e(2, 1)))

    def test_sum_with_trivial(self):
        s = span(e(3, 1))
        assert equals(subspace_sum(s, Subspace.trivial(3)), s)


@settings(max_examples=40, deadline=None)
@given(
    n=st.integers(min_value=1, max_value=9),
    d1=st.integers(min_value=0, max_value=9),
    d2=st.integers(min_value=0, max_value=9),
    seed=st.integers(min_value=0, max_value=2**31),
)
def test_dimension_formula(n, d1, d2, seed):
    # oracle: dim(S1 + S2) computed directly as the rank of the stacked bases
    d1, d2 = min(d1, n), min(d2, n)
    rng = np.random.default_rng(seed)
    s1 = random_subspace(rng, n, d1)
    s2 = random_subspace(rng, n, d2)
    stacked_rank = numerical_rank(np.hstack([s1.basis, s2.basis])).rank
    total = subspace_sum(s1, s2)
    meet = intersect(s1, s2)
    assert total.dim == stacked_rank
    assert total.dim == d1 + d2 - meet.dim


@settings(max_examples=40, deadline=None)
@given(
    n=st.integers(min_value=1, max_value=9),
    d1=st.integers(min_value=1, max_value=9),
    d2=st.integers(min_value=1, max_value=9),
    seed=st.integers(min_value=0, max_value=2**31),
)
def test_minimal_angle_symmetric(n, d1, d2, seed):
    d1, d2 = min(d1, n), min(d2, n)
    rng = np.random.default_rng(seed)
    s1 = random_subspace(rng, n, d1)
    s2 = random_subspace(rng, n, d2)
    left = minimal_angle(s1, s2).cos_min_angle
    right = minimal_angle(s2, s1).cos_min_angle
    assert abs(left - right) <= 1e-12


class TestMinimalAngle:
    def test_same_line(self):
        r = minimal_angle(span(e(2, 0)), span(e(2, 0)))
        assert r.cos_min_angle == pytest.approx(1.0)
        assert r.angle_radians == pytest.approx(0.0)

    def test_diagonal_line(self):
        r = minimal_angle(span(e(2, 0)), span([1.0, 1.0]))
        assert r.cos_min_angle == pytest.approx(1 / math.sqrt(2))

    def test_closed_form_for_tilted_family(self):
        for n in (0, 3, 10):
            pair = tilted_projection_pair(n)
            cos = minimal_angle(pair.m1, pair.m2).cos_min_angle
            assert cos == pytest.approx(1 / math.sqrt(1 + 1 / (2 * n + 1) ** 2), abs=1e-12)

    def test_trivial_raises(self):
        with pytest.raises(TrivialSubspaceError):
            minimal_angle(Subspace.trivial(2), span(e(2, 0)))


class TestBouldinAngle:
    def test_zero_times_identity_uses_trivial_convention(self):
        # kernel(S) is everything, so the deflated kernel piece is {0}:
        # the report falls back to cos 0 / angle pi/2
        r = bouldin_angle(np.zeros((3, 3)), np.eye(3))
        assert r.cos_min_angle == 0.0
        assert r.angle_radians == pytest.approx(math.pi / 2)
        assert r.bouldin_components.dim_kernel_range_intersection == 3
        assert r.bouldin_components.dim_deflated_kernel == 0

    def test_invertible_first_factor(self):
        r = bouldin_angle(np.eye(3), np.diag([1.0, 1.0, 0.0]))
        assert r.cos_min_angle == 0.0
        assert r.angle_radians == pytest.approx(math.pi / 2)

    def test_matches_minimal_angle_for_tilted_family(self):
        pair = tilted_projection_pair(6)
        direct = minimal_angle(pair.m1, pair.m2).cos_min_angle
        report = bouldin_angle(pair.a, pair.b)
        assert report.cos_min_angle == pytest.approx(direct, abs=1e-12)
        assert report.bouldin_components.dim_kernel_range_intersection == 0

    def test_size_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            bouldin_angle(np.eye(2), np.eye(3))
