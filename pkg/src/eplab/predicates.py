"""One-matrix predicates: normal, hyponormal, posinormal family, EP family.

Each predicate is decided two independent ways where possible (subspace
route vs projector route); disagreements beyond tolerance are surfaced in
``ClassificationReport.conflicts`` instead of being silently resolved.
Residuals are normalized by powers of the spectral norm, so classify(c*M)
agrees with classify(M) for any nonzero scalar c.
"""

from dataclasses import dataclass, field

import numpy as np

from .config import ToleranceConfig, resolve
from .kernel import (
    RankDecision,
    decide_rank,
    min_symmetric_eigenvalue,
    psd_check,
    require_square,
)
from .subspaces import Subspace, equality_residual, inclusion_residual


@dataclass(frozen=True, eq=False)
class ClassificationReport:
    normal: bool
    hyponormal: bool
    quasiposinormal: bool
    posinormal: bool
    coposinormal: bool
    ep: bool
    hypo_ep: bool
    ep_r: bool
    residuals: dict
    rank: RankDecision
    tolerances: ToleranceConfig
    conflicts: list = field(default_factory=list)


def _svd_parts(m, cfg):
    """One SVD feeding every subspace attached to ``m``.

    Returns (range, corange, kernel, cokernel, decision, pinv) where corange
    spans R(m*) and cokernel spans N(m*); the shared decision keeps all six
    objects rank-consistent.
    """
    u, s, vh = np.linalg.svd(m, full_matrices=True)
    decision = decide_rank(s, m.shape, cfg)
    r = decision.rank
    rng = Subspace(m.shape[0], u[:, :r])
    corng = Subspace(m.shape[1], vh[:r].conj().T)
    ker = Subspace(m.shape[1], vh[r:].conj().T)
    coker = Subspace(m.shape[0], u[:, r:])
    if r:
        mp = (vh[:r].conj().T / s[:r]) @ u[:, :r].conj().T
    else:
        mp = np.zeros((m.shape[1], m.shape[0]), dtype=np.complex128)
    return rng, corng, ker, coker, decision, mp


def ep_via_projectors(m, cfg=None):
    """Projector route for the EP test: does m commute with its pseudoinverse?

    Returns ``(flag, residual)`` with residual = ||m_pinv m - m m_pinv||.
    """
    cfg = resolve(cfg)
    m = require_square(m)
    _, _, _, _, _, mp = _svd_parts(m, cfg)
    residual = float(np.linalg.norm(mp @ m - m @ mp))
    return residual <= cfg.subspace_tol, residual


def hypo_ep_check(m, cfg=None):
    """PSD route: m_pinv m - m m_pinv positive semidefinite."""
    cfg = resolve(cfg)
    m = require_square(m)
    _, _, _, _, _, mp = _svd_parts(m, cfg)
    d = mp @ m - m @ mp
    d = 0.5 * (d + d.conj().T)  # absorb matmul roundoff before the eigen test
    return psd_check(d, cfg)


def classify(m, cfg=None):
    """Full predicate battery for one square matrix."""
    cfg = resolve(cfg)
    m = require_square(m)

    rng, corng, ker, coker, decision, mp = _svd_parts(m, cfg)
    scale = float(decision.singular_values[0]) if decision.singular_values.size else 0.0

    if scale == 0.0:
        residuals = {
            "commutator": 0.0,
            "posinormal_inclusion": 0.0,
            "coposinormal_inclusion": 0.0,
            "quasiposinormal_inclusion": 0.0,
            "ep_equality": 0.0,
            "projector_commutator": 0.0,
            "ep_r_equality": 0.0,
            "hypo_ep_min_eigenvalue": 0.0,
        }
        return ClassificationReport(
            normal=True, hyponormal=True, quasiposinormal=True, posinormal=True,
            coposinormal=True, ep=True, hypo_ep=True, ep_r=True,
            residuals=residuals, rank=decision, tolerances=cfg,
        )

    mn = m / scale
    commutator = mn @ mn.conj().T - mn.conj().T @ mn
    r_commutator = float(np.linalg.norm(commutator))
    normal = r_commutator <= cfg.subspace_tol
    hyponormal = psd_check(-commutator, cfg)  # m*m - m m* up to sign convention

    r_pos = inclusion_residual(rng, corng)
    r_copos = inclusion_residual(corng, rng)
    r_quasi = inclusion_residual(ker, coker)
    posinormal = r_pos <= cfg.subspace_tol
    coposinormal = r_copos <= cfg.subspace_tol
    quasiposinormal = r_quasi <= cfg.subspace_tol
    ep = posinormal and coposinormal

    d = mp @ m - m @ mp
    r_proj = float(np.linalg.norm(d))
    ep_proj = r_proj <= cfg.subspace_tol
    dh = 0.5 * (d + d.conj().T)
    hypo_ep = psd_check(dh, cfg)
    min_eig = min_symmetric_eigenvalue(dh)

    # EP_r uses the plain transpose, not the adjoint
    _, _, ker_t, _, _, _ = _svd_parts(m.T, cfg)
    r_ep_r = equality_residual(ker, ker_t)
    ep_r = r_ep_r <= cfg.subspace_tol

    conflicts = []
    if ep != ep_proj:
        conflicts.append(
            f"ep: subspace route {ep} vs projector route {ep_proj} "
            f"(residuals {max(r_pos, r_copos):.3e} / {r_proj:.3e})"
        )
    if posinormal != hypo_ep:
        conflicts.append(
            f"posinormal {posinormal} vs hypo_ep {hypo_ep} "
            f"(inclusion {r_pos:.3e}, min eigenvalue {min_eig:.3e})"
        )

    residuals = {
        "commutator": r_commutator,
        "posinormal_inclusion": r_pos,
        "coposinormal_inclusion": r_copos,
        "quasiposinormal_inclusion": r_quasi,
        "ep_equality": max(r_pos, r_copos),
        "projector_commutator": r_proj,
        "ep_r_equality": r_ep_r,
        "hypo_ep_min_eigenvalue": min_eig,
    }
    return ClassificationReport(
        normal=normal,
        hyponormal=hyponormal,
        quasiposinormal=quasiposinormal,
        posinormal=posinormal,
        coposinormal=coposinormal,
        ep=ep,
        hypo_ep=hypo_ep,
        ep_r=ep_r,
        residuals=residuals,
        rank=decision,
        tolerances=cfg,
        conflicts=conflicts,
    )


def is_ep(m, cfg=None):
    """Fast EP test from a single SVD: R(m) equals R(m*).

    Returns ``(flag, residual)``; used by the product procedures where the
    full report would be wasteful.
    """
    cfg = resolve(cfg)
    m = require_square(m)
    rng, corng, _, _, _, _ = _svd_parts(m, cfg)
    residual = equality_residual(rng, corng)
    return residual <= cfg.subspace_tol, residual
