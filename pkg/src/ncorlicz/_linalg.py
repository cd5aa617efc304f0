"""Deterministic dense linear algebra for small complex Hermitian blocks.

Eigendecompositions use a cyclic Jacobi iteration with a fixed sweep order
instead of LAPACK, so results do not depend on the BLAS build.  Block
dimensions are tiny here, which makes the O(n^3-per-sweep) cost irrelevant
and lets Jacobi deliver its usual high relative accuracy.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import ConvergenceError

# Convergence threshold for the Jacobi sweep: off-diagonal Frobenius mass
# relative to the Frobenius norm of the input.
JACOBI_REL_OFF = 1e-13
MAX_SWEEPS = 64

# Eigenvalues closer than this (relative) are merged into one spectral
# projection, which stabilizes projections under degeneracy.
CLUSTER_RTOL = 1e-9

# Below this (relative to the largest eigenvalue) an eigenvalue counts as
# zero: it is excluded from supports, ranks and pseudo-inverses.
RANK_RTOL = 1e-11


def frobenius(a: np.ndarray) -> float:
    return float(np.linalg.norm(a))


def _offdiag_mass(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def hermitian_eigh(a: np.ndarray, rel_off: float = JACOBI_REL_OFF,
                   max_sweeps: int = MAX_SWEEPS) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and orthonormal eigenvectors of a Hermitian matrix.

    Cyclic Jacobi: sweeps run over pairs (p, q), p < q, in row-major order,
    each rotation being a phase times a real plane rotation that zeroes the
    (p, q) entry.  Convergence is declared once the off-diagonal Frobenius
    mass drops below ``rel_off`` times the input norm.
    """
    n = a.shape[0]
    work = np.array(a, dtype=np.complex128)
    vecs = np.eye(n, dtype=np.complex128)
    scale = frobenius(work)
    if n <= 1 or scale == 0.0:
        vals = np.real(np.diag(work)).astype(np.float64)
        order = np.argsort(-vals, kind="stable")
        return vals[order], vecs[:, order]

    thresh = rel_off * scale
    converged = False
    for _ in range(max_sweeps):
        if _offdiag_mass(work) <= thresh:
            converged = True
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = work[p, q]
                absa = abs(apq)
                if absa == 0.0:
                    continue
                app = work[p, p].real
                aqq = work[q, q].real
                u = apq / absa
                tau = (aqq - app) / (2.0 * absa)
                t = (1.0 if tau >= 0.0 else -1.0) / (abs(tau) + math.hypot(1.0, tau))
                c = 1.0 / math.hypot(1.0, t)
                s = t * c
                # Unitary in the (p, q) plane: [[c, s], [-conj(u) s, conj(u) c]].
                ub = np.conj(u)
                colp = work[:, p].copy()
                colq = work[:, q].copy()
                work[:, p] = c * colp - (ub * s) * colq
                work[:, q] = s * colp + (ub * c) * colq
                rowp = work[p, :].copy()
                rowq = work[q, :].copy()
                work[p, :] = c * rowp - (u * s) * rowq
                work[q, :] = s * rowp + (u * c) * rowq
                work[p, q] = 0.0
                work[q, p] = 0.0
                work[p, p] = work[p, p].real
                work[q, q] = work[q, q].real
                vp = vecs[:, p].copy()
                vq = vecs[:, q].copy()
                vecs[:, p] = c * vp - (ub * s) * vq
                vecs[:, q] = s * vp + (ub * c) * vq
    else:
        converged = _offdiag_mass(work) <= thresh
    if not converged:
        raise ConvergenceError(
            f"Jacobi eigensolver did not reach off-diagonal mass {thresh:.3e} "
            f"in {max_sweeps} sweeps (residual {_offdiag_mass(work):.3e})")

    vals = np.real(np.diag(work)).astype(np.float64)
    order = np.argsort(-vals, kind="stable")
    return vals[order], vecs[:, order]


def cluster_indices(vals_desc: np.ndarray, rtol: float = CLUSTER_RTOL) -> list[list[int]]:
    """Group indices of a descending eigenvalue array into near-degenerate clusters.

    Adjacent values join a cluster when their gap is at most ``rtol`` times
    the larger magnitude of the two.
    """
    groups: list[list[int]] = []
    for k, v in enumerate(vals_desc):
        if groups:
            prev = vals_desc[groups[-1][-1]]
            if abs(prev - v) <= rtol * max(abs(prev), abs(v)):
                groups[-1].append(k)
                continue
        groups.append([k])
    return groups


def rank_from_eigenvalues(vals: np.ndarray, rtol: float = RANK_RTOL) -> int:
    """Numerical rank of a positive semidefinite matrix from its eigenvalues."""
    if vals.size == 0:
        return 0
    top = float(np.max(vals))
    if top <= 0.0:
        return 0
    return int(np.sum(vals > rtol * top))


def gram_schmidt(vectors: list[np.ndarray], pivot_tol: float) -> tuple[np.ndarray, list[int]]:
    """Orthonormalize ``vectors`` by modified Gram-Schmidt with one reorthogonalization.

    Candidates whose residual norm falls at or below ``pivot_tol`` are treated
    as linearly dependent and dropped.  Returns the orthonormal basis as
    columns plus the indices of the kept candidates.
    """
    basis: list[np.ndarray] = []
    kept: list[int] = []
    for idx, vec in enumerate(vectors):
        w = np.array(vec, dtype=np.complex128)
        for _ in range(2):
            for b in basis:
                w = w - np.vdot(b, w) * b
        nrm = float(np.linalg.norm(w))
        if nrm > pivot_tol:
            basis.append(w / nrm)
            kept.append(idx)
    if basis:
        mat = np.column_stack(basis)
    else:
        mat = np.zeros((vectors[0].shape[0] if vectors else 0, 0), dtype=np.complex128)
    return mat, kept
