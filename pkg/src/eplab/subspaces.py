"""Subspace algebra of C^n: ranges, kernels, lattice operations, angles.

Subspaces are carried as matrices with orthonormal columns.  Inclusion and
equality tests use one-sided projector residuals (the sine of the largest
principal angle), never dimension comparison, so they stay meaningful when
two spaces share a dimension but differ.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .config import resolve
from .errors import DimensionMismatchError, InputError, TrivialSubspaceError
from .kernel import as_matrix, require_square, svd_with_rank

_ORTHONORMALITY_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class Subspace:
    """A linear subspace of C^n, represented by an orthonormal basis.

    ``basis`` has shape ``(ambient_dim, dim)``; a zero-column basis is the
    zero subspace.
    """

    ambient_dim: int
    basis: np.ndarray

    def __post_init__(self):
        basis = as_matrix(self.basis)
        object.__setattr__(self, "basis", basis)
        n, k = basis.shape
        if n != self.ambient_dim:
            raise InputError(
                f"basis has {n} rows but ambient dimension is {self.ambient_dim}"
            )
        if k > n:
            raise InputError(f"basis has more columns ({k}) than ambient rows ({n})")
        if k:
            gram = basis.conj().T @ basis
            if np.linalg.norm(gram - np.eye(k)) > _ORTHONORMALITY_TOL:
                raise InputError("basis columns are not orthonormal")

    @property
    def dim(self):
        return self.basis.shape[1]

    @classmethod
    def trivial(cls, ambient_dim):
        return cls(ambient_dim, np.zeros((ambient_dim, 0), dtype=np.complex128))


@dataclass(frozen=True)
class BouldinComponents:
    """Dimensions entering the deflated-kernel angle computation."""

    dim_kernel_range_intersection: int
    dim_deflated_kernel: int


@dataclass(frozen=True)
class AngleReport:
    cos_min_angle: float
    angle_radians: float
    bouldin_components: Optional[BouldinComponents] = None


def projector(s, cfg=None):
    """Orthogonal projector onto ``s`` as a dense matrix (Q Q*)."""
    cfg = resolve(cfg)
    q = s.basis
    k = q.shape[1]
    if k:
        gram = q.conj().T @ q
        if np.linalg.norm(gram - np.eye(k)) > cfg.subspace_tol:
            raise InputError("subspace basis is not orthonormal within tolerance")
        return q @ q.conj().T
    return np.zeros((s.ambient_dim, s.ambient_dim), dtype=np.complex128)


def range_basis(m, cfg=None):
    """Orthonormal basis of the column space; dimension = numerical rank."""
    m = as_matrix(m)
    u, _, _, decision = svd_with_rank(m, cfg)
    return Subspace(m.shape[0], u[:, : decision.rank])


def kernel_basis(m, cfg=None):
    """Orthonormal basis of the null space; dimension = cols - rank."""
    m = as_matrix(m)
    _, _, vh, decision = svd_with_rank(m, cfg)
    return Subspace(m.shape[1], vh[decision.rank :].conj().T)


def _check_same_ambient(s1, s2):
    if s1.ambient_dim != s2.ambient_dim:
        raise DimensionMismatchError(
            f"ambient dimensions differ: {s1.ambient_dim} vs {s2.ambient_dim}"
        )


def inclusion_residual(s1, s2):
    """sin of the largest principal angle of s1 against s2; 0 when s1 = {0}."""
    _check_same_ambient(s1, s2)
    if s1.dim == 0:
        return 0.0
    q1, q2 = s1.basis, s2.basis
    if s2.dim == 0:
        return float(np.linalg.norm(q1, 2))
    residual = q1 - q2 @ (q2.conj().T @ q1)
    return float(np.linalg.norm(residual, 2))


def includes(s1, s2, cfg=None):
    """True iff s1 is contained in s2 within ``subspace_tol``."""
    cfg = resolve(cfg)
    return inclusion_residual(s1, s2) <= cfg.subspace_tol


def equality_residual(s1, s2):
    return max(inclusion_residual(s1, s2), inclusion_residual(s2, s1))


def equals(s1, s2, cfg=None):
    cfg = resolve(cfg)
    return equality_residual(s1, s2) <= cfg.subspace_tol


def intersect(s1, s2, cfg=None):
    """Intersection, via the null space of the stacked basis [Q1 | -Q2].

    A kernel vector (u, v) satisfies Q1 u = Q2 v; mapping it back through Q1
    and re-orthonormalizing yields an explicit basis with a clean rank
    decision.
    """
    _check_same_ambient(s1, s2)
    if s1.dim == 0 or s2.dim == 0:
        return Subspace.trivial(s1.ambient_dim)
    stacked = np.hstack([s1.basis, -s2.basis])
    null = kernel_basis(stacked, cfg)
    if null.dim == 0:
        return Subspace.trivial(s1.ambient_dim)
    mapped = s1.basis @ null.basis[: s1.dim, :]
    return range_basis(mapped, cfg)


def subspace_sum(s1, s2, cfg=None):
    """Span of the union, by rank-revealing orthonormalization of [Q1 | Q2]."""
    _check_same_ambient(s1, s2)
    stacked = np.hstack([s1.basis, s2.basis])
    if stacked.shape[1] == 0:
        return Subspace.trivial(s1.ambient_dim)
    return range_basis(stacked, cfg)


def complement_within(inner, outer, cfg=None):
    """Orthogonal complement of ``inner`` inside ``outer`` (inner ⊆ outer)."""
    _check_same_ambient(inner, outer)
    if outer.dim == 0:
        return Subspace.trivial(outer.ambient_dim)
    if inner.dim == 0:
        return outer
    coords = inner.basis.conj().T @ outer.basis  # inner expressed in outer's frame
    free = kernel_basis(coords, cfg)
    return Subspace(outer.ambient_dim, outer.basis @ free.basis)


def minimal_angle(s1, s2):
    """Minimal angle between two nontrivial subspaces.

    The cosine is the largest singular value of Q1* Q2, clamped to [0, 1].
    """
    _check_same_ambient(s1, s2)
    if s1.dim == 0 or s2.dim == 0:
        raise TrivialSubspaceError("minimal angle requires two nontrivial subspaces")
    sigma = np.linalg.svd(s1.basis.conj().T @ s2.basis, compute_uv=False)
    cos = float(min(1.0, max(0.0, sigma[0])))
    return AngleReport(cos_min_angle=cos, angle_radians=math.acos(cos))


def bouldin_angle(s, t, cfg=None):
    """Angle controlling closedness of the product range of ``s @ t``.

    Computes V = N(s) ∩ R(t) and W, the complement of V inside N(s), then
    reports the minimal angle between R(t) and W.  When W or R(t) is the
    zero space there is no direction along which the product can degenerate,
    and the report uses the convention cos 0 / angle π/2 instead of erroring.
    """
    s = require_square(s)
    t = require_square(t)
    if s.shape != t.shape:
        raise DimensionMismatchError(f"size mismatch: {s.shape} vs {t.shape}")
    ns = kernel_basis(s, cfg)
    rt = range_basis(t, cfg)
    v = intersect(ns, rt, cfg)
    w = complement_within(v, ns, cfg)
    components = BouldinComponents(
        dim_kernel_range_intersection=v.dim, dim_deflated_kernel=w.dim
    )
    if w.dim == 0 or rt.dim == 0:
        return AngleReport(0.0, math.pi / 2.0, components)
    report = minimal_angle(rt, w)
    return AngleReport(report.cos_min_angle, report.angle_radians, components)
