"""Block decomposition of a pair (A, B) relative to C^n = N(A)^perp + N(A).

The unitary [Q | K] comes from the right singular vectors of A: Q spans
N(A)^perp = R(A*), K spans N(A).  A and B are compressed to

    A ~ [[A', 0], [0, 0]]      B ~ [[B', X], [Y, Z]]

with A' = Q*AQ, B' = Q*BQ, X = Q*BK, Y = K*BQ, Z = K*BK.  Decomposition
never fails on "bad" inputs; residuals let callers decide applicability.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .config import resolve
from .errors import DimensionMismatchError, InapplicableError
from .kernel import require_square, svd_with_rank
from .predicates import classify
from .subspaces import (
    equality_residual,
    inclusion_residual,
    intersect,
    kernel_basis,
)


@dataclass(frozen=True, eq=False)
class BlockDecomposition:
    """Compression of (A, B) to the splitting N(A)^perp + N(A).

    ``basis_u`` is the unitary [Q | K].  ``residuals`` carries
    ``reducing`` = ||K*AQ|| + ||Q*AK|| + ||K*AK|| (zero exactly when N(A)
    reduces A), ``commutation`` = ||AB - BA||, and ``ya`` = ||Y A'||.
    """

    basis_u: np.ndarray
    block_a_prime: np.ndarray
    block_b_prime: np.ndarray
    block_x: np.ndarray
    block_y: np.ndarray
    block_z: np.ndarray
    residuals: dict

    @property
    def core_dim(self):
        return self.block_a_prime.shape[0]

    @property
    def kernel_dim(self):
        return self.block_z.shape[0]

    def b_compressed(self):
        """The full compression [[B', X], [Y, Z]] (unitarily equivalent to B)."""
        top = np.hstack([self.block_b_prime, self.block_x])
        bottom = np.hstack([self.block_y, self.block_z])
        return np.vstack([top, bottom])


@dataclass(frozen=True)
class InclusionReport:
    """Kernel inclusions of the compressed blocks.

    ``kernel_z_included``: N(Z) contained in N(Z*) ∩ N(Y*).
    ``kernel_bprime_included``: N(B') ∩ N(Y) contained in N(B'*).
    The ``*_equal`` fields hold the equality versions, populated only when
    the compressed operator is also coposinormal, else None.
    """

    kernel_z_included: bool
    kernel_z_residual: float
    kernel_bprime_included: bool
    kernel_bprime_residual: float
    kernel_z_equal: Optional[bool] = None
    kernel_z_equal_residual: Optional[float] = None
    kernel_bprime_equal: Optional[bool] = None
    kernel_bprime_equal_residual: Optional[float] = None


@dataclass(frozen=True)
class PosinormalProductConditions:
    """Sufficient conditions for a commuting product to stay posinormal
    with closed range: B' posinormal, Z coposinormal; y_zero records whether
    N(A) reduces B."""

    b_prime_posinormal: bool
    z_coposinormal: bool
    y_zero: bool
    y_norm: float


def decompose_pair(a, b, cfg=None):
    a = require_square(a, "first operand")
    b = require_square(b, "second operand")
    if a.shape != b.shape:
        raise DimensionMismatchError(f"size mismatch: {a.shape} vs {b.shape}")

    _, _, vh, decision = svd_with_rank(a, cfg)
    r = decision.rank
    q = vh[:r].conj().T
    k = vh[r:].conj().T
    basis_u = np.hstack([q, k])

    a_prime = q.conj().T @ a @ q
    b_prime = q.conj().T @ b @ q
    x = q.conj().T @ b @ k
    y = k.conj().T @ b @ q
    z = k.conj().T @ b @ k

    reducing = (
        float(np.linalg.norm(k.conj().T @ a @ q))
        + float(np.linalg.norm(q.conj().T @ a @ k))
        + float(np.linalg.norm(k.conj().T @ a @ k))
    )
    commutation = float(np.linalg.norm(a @ b - b @ a))
    ya = float(np.linalg.norm(y @ a_prime))

    return BlockDecomposition(
        basis_u=basis_u,
        block_a_prime=a_prime,
        block_b_prime=b_prime,
        block_x=x,
        block_y=y,
        block_z=z,
        residuals={"reducing": reducing, "commutation": commutation, "ya": ya},
    )


def _block_scales(dec):
    a_norm = float(
        np.sqrt(np.linalg.norm(dec.block_a_prime) ** 2 + dec.residuals["reducing"] ** 2)
    )
    b_norm = float(np.linalg.norm(dec.b_compressed()))
    return a_norm, b_norm


def _snap_block(block, scale, cfg):
    """Zero out a block that is numerically zero relative to its parent.

    Rank decisions inside a block are scaled by the block's own largest
    singular value, so a pure-roundoff block would otherwise masquerade as
    full rank and poison kernel computations."""
    if block.size and np.linalg.norm(block) <= cfg.subspace_tol * (1.0 + scale):
        return np.zeros_like(block)
    return block


def block_kernel_inclusions(dec, cfg=None):
    """Kernel inclusions implied by a commuting quasiposinormal pair.

    Raises InapplicableError when the recorded commutation or reducing
    residual shows the pair was not actually commuting / reducing.
    """
    cfg = resolve(cfg)
    a_norm, b_norm = _block_scales(dec)
    if dec.residuals["commutation"] > cfg.subspace_tol * (1.0 + a_norm * b_norm):
        raise InapplicableError(
            f"operands do not commute (residual {dec.residuals['commutation']:.3e})"
        )
    if dec.residuals["reducing"] > cfg.subspace_tol * (1.0 + a_norm):
        raise InapplicableError(
            f"kernel does not reduce the first operand "
            f"(residual {dec.residuals['reducing']:.3e})"
        )

    z = _snap_block(dec.block_z, b_norm, cfg)
    y = _snap_block(dec.block_y, b_norm, cfg)
    bp = _snap_block(dec.block_b_prime, b_norm, cfg)
    n_z = kernel_basis(z, cfg)
    n_z_star = kernel_basis(z.conj().T, cfg)
    n_y_star = kernel_basis(y.conj().T, cfg)
    z_target = intersect(n_z_star, n_y_star, cfg)
    r_z = inclusion_residual(n_z, z_target)

    n_bp = kernel_basis(bp, cfg)
    n_y = kernel_basis(y, cfg)
    n_bp_star = kernel_basis(bp.conj().T, cfg)
    bp_source = intersect(n_bp, n_y, cfg)
    r_bp = inclusion_residual(bp_source, n_bp_star)

    z_equal = z_equal_res = bp_equal = bp_equal_res = None
    b_full = dec.b_compressed()
    if b_full.size == 0 or classify(b_full, cfg).coposinormal:
        z_equal_res = equality_residual(n_z, z_target)
        z_equal = z_equal_res <= cfg.subspace_tol
        bp_equal_res = equality_residual(bp_source, n_bp_star)
        bp_equal = bp_equal_res <= cfg.subspace_tol

    return InclusionReport(
        kernel_z_included=r_z <= cfg.subspace_tol,
        kernel_z_residual=r_z,
        kernel_bprime_included=r_bp <= cfg.subspace_tol,
        kernel_bprime_residual=r_bp,
        kernel_z_equal=z_equal,
        kernel_z_equal_residual=z_equal_res,
        kernel_bprime_equal=bp_equal,
        kernel_bprime_equal_residual=bp_equal_res,
    )


def posinormal_product_conditions(dec, cfg=None):
    cfg = resolve(cfg)
    _, b_norm = _block_scales(dec)
    bp = _snap_block(dec.block_b_prime, b_norm, cfg)
    z = _snap_block(dec.block_z, b_norm, cfg)
    b_prime_posinormal = bp.size == 0 or classify(bp, cfg).posinormal
    z_coposinormal = z.size == 0 or classify(z, cfg).coposinormal
    y_norm = float(np.linalg.norm(dec.block_y))
    return PosinormalProductConditions(
        b_prime_posinormal=bool(b_prime_posinormal),
        z_coposinormal=bool(z_coposinormal),
        y_zero=y_norm <= cfg.subspace_tol * (1.0 + b_norm),
        y_norm=y_norm,
    )


def embed_core(dec, core):
    """Map an r x r core block back to the full space: U (core ⊕ 0) U*."""
    n = dec.basis_u.shape[0]
    r = core.shape[0]
    padded = np.zeros((n, n), dtype=np.complex128)
    padded[:r, :r] = core
    return dec.basis_u @ padded @ dec.basis_u.conj().T


__all__ = [
    "BlockDecomposition",
    "InclusionReport",
    "PosinormalProductConditions",
    "decompose_pair",
    "block_kernel_inclusions",
    "posinormal_product_conditions",
    "embed_core",
]
