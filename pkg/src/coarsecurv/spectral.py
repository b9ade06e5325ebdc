"""Walk Laplacian spectra and curvature-eigenvalue consistency.

The Laplacian of a walk kernel M is I - M: it annihilates constants,
and row-stochasticity keeps every real eigenvalue inside [0, 2].  With
a positive curvature infimum the sharper two-sided bracket

    kappa_inf <= lambda <= 2 - kappa_inf

holds for eigenvalues attached to nonconstant eigenfunctions, and
harmonic functions (eigenvalue 0) are constants only, so the kernel of
the Laplacian is one-dimensional.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import scipy.linalg

from .errors import InvalidParameterError, SolverError
from .spaces import RandomWalkKernel

# an eigenvector counts as constant when its deviation from its mean
# is below this relative threshold
CONSTANT_MODE_RTOL = 1e-8


def laplacian(kernel: RandomWalkKernel) -> np.ndarray:
    """I - M for the kernel's transition matrix M."""
    return np.eye(kernel.rows.shape[0]) - kernel.rows


@dataclass(frozen=True)
class SpectrumReport:
    """Full spectrum of a walk Laplacian.

    eigenvalues are sorted by (real, imaginary) part; vectors holds
    the matching right eigenvectors as columns.  real_eigenvalues
    collects the real parts of eigenvalues with |imag| <= imag_tol.
    """

    eigenvalues: np.ndarray
    vectors: np.ndarray
    real_eigenvalues: np.ndarray
    real_indices: np.ndarray
    residual_max: float
    imag_tol: float


def spectrum(operator: np.ndarray, imag_tol: float = 1e-9) -> SpectrumReport:
    """Dense nonsymmetric eigendecomposition with residual certification.

    Every returned pair satisfies ||A v - lambda v|| <= 1e-8 ||A||
    (Frobenius norm); a failure raises with diagnostics rather than
    returning unchecked values.
    """
    A = np.asarray(operator, dtype=np.float64)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise InvalidParameterError(f"operator must be square, got {A.shape}")
    try:
        vals, vecs = scipy.linalg.eig(A)
    except scipy.linalg.LinAlgError as e:  # pragma: no cover - rare
        raise SolverError(f"eigenvalue iteration failed: {e}") from e

    order = np.lexsort((vals.imag, vals.real))
    vals = vals[order]
    vecs = vecs[:, order]

    norm_a = float(np.linalg.norm(A))
    res = np.linalg.norm(A @ vecs - vecs * vals[None, :], axis=0)
    vec_norms = np.linalg.norm(vecs, axis=0)
    res = res / np.where(vec_norms > 0, vec_norms, 1.0)
    res_max = float(res.max()) if len(res) else 0.0
    if res_max > 1e-8 * max(norm_a, 1e-300):
        k = int(res.argmax())
        raise SolverError(
            f"eigenpair residual {res_max:.3e} exceeds 1e-8*||A|| "
            f"({norm_a:.3e}) at eigenvalue {vals[k]!r}")

    real_mask = np.abs(vals.imag) <= imag_tol
    return SpectrumReport(
        eigenvalues=vals, vectors=vecs,
        real_eigenvalues=vals.real[real_mask],
        real_indices=np.flatnonzero(real_mask),
        residual_max=res_max, imag_tol=imag_tol)


def _is_constant_mode(vec: np.ndarray) -> bool:
    nrm = np.linalg.norm(vec)
    if nrm == 0:
        return True
    return np.linalg.norm(vec - vec.mean()) <= CONSTANT_MODE_RTOL * nrm


@dataclass(frozen=True)
class BracketVerdict:
    """Outcome of the eigenvalue bracket check.

    violations: real eigenvalues of nonconstant eigenfunctions outside
    [kappa_inf - tol, 2 - kappa_inf + tol].  constant_indices: modes
    excluded because their eigenfunctions are constant (the bracket
    concerns nonconstant ones).  envelope_violations: real eigenvalues
    outside the unconditional [0, 2] band.  disk_notes: informational
    only - complex eigenvalues violating |1 - lambda| <= 1 - kappa_inf
    are listed but never fail the verdict.
    """

    passed: bool
    bracket: tuple
    violations: list
    constant_indices: list
    envelope_violations: list
    disk_notes: list
    tol: float


def check_bracket(report: SpectrumReport, kappa_inf: float,
                  tol: float = 1e-7) -> BracketVerdict:
    """Check kappa_inf <= lambda <= 2 - kappa_inf on real eigenvalues
    of nonconstant eigenfunctions."""
    if kappa_inf > 1 + 1e-12:
        raise InvalidParameterError(
            f"kappa_inf must not exceed 1, got {kappa_inf}")
    lo, hi = kappa_inf, 2.0 - kappa_inf
    violations = []
    constant_indices = []
    envelope_violations = []
    disk_notes = []
    for k, lam in enumerate(report.eigenvalues):
        if abs(lam.imag) <= report.imag_tol:
            lam_r = float(lam.real)
            if lam_r < -tol or lam_r > 2.0 + tol:
                envelope_violations.append((k, lam_r))
            if _is_constant_mode(report.vectors[:, k]):
                constant_indices.append(k)
                continue
            if lam_r < lo - tol or lam_r > hi + tol:
                violations.append((k, lam_r))
        else:
            if abs(1.0 - lam) > 1.0 - kappa_inf + tol:
                disk_notes.append((k, complex(lam)))
    return BracketVerdict(
        passed=not violations, bracket=(lo, hi), violations=violations,
        constant_indices=constant_indices,
        envelope_violations=envelope_violations,
        disk_notes=disk_notes, tol=tol)


@dataclass(frozen=True)
class LiouvilleVerdict:
    """Dimension of the harmonic space under positive curvature.

    applicable is False when kappa_inf <= 0 (the statement assumes
    positivity); then passed is None and kernel_dimension is still
    reported for context.
    """

    applicable: bool
    kernel_dimension: int
    passed: Optional[bool]
    kappa_inf: float
    note: str = ""


def liouville_check(operator: np.ndarray, kappa_inf: float) -> LiouvilleVerdict:
    """With kappa_inf > 0, the 0-eigenspace must be constants only."""
    A = np.asarray(operator, dtype=np.float64)
    n = A.shape[0]
    dim = n - int(np.linalg.matrix_rank(A))
    if kappa_inf <= 0:
        return LiouvilleVerdict(
            applicable=False, kernel_dimension=dim, passed=None,
            kappa_inf=float(kappa_inf),
            note="not applicable: requires a positive curvature infimum")
    return LiouvilleVerdict(
        applicable=True, kernel_dimension=dim, passed=(dim == 1),
        kappa_inf=float(kappa_inf))
