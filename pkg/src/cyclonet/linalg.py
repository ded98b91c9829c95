"""Dense complex linear algebra for small unitary systems.

Everything operates on plain numpy arrays: unitaries are (d, d) complex
matrices over the lexicographic binary basis (leftmost digit = topmost
qubit line), states are (d,) complex vectors.  The dense eigendecomposition
here is the brute-force oracle that all closed-form spectral results are
validated against.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

UNITARY_TOL = 1e-10
STATE_TOL = 1e-10


def as_matrix(u) -> np.ndarray:
    """Coerce to a square complex matrix."""
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {u.shape}")
    return u


def as_state(v) -> np.ndarray:
    """Coerce to a complex state vector."""
    v = np.asarray(v, dtype=complex)
    if v.ndim != 1:
        raise ValueError(f"expected a vector, got shape {v.shape}")
    return v


def unitarity_defect(u) -> float:
    """Largest absolute entry of U†U − I."""
    u = as_matrix(u)
    return float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))))


def check_unitary(u, tol: float = UNITARY_TOL) -> np.ndarray:
    """Return U as an ndarray, raising ValueError if it is not unitary."""
    u = as_matrix(u)
    defect = unitarity_defect(u)
    if not np.isfinite(u).all():
        raise ValueError("matrix contains non-finite entries")
    if defect > tol:
        raise ValueError(f"matrix is not unitary (defect {defect:.3e} > {tol:.1e})")
    return u


def check_state(v, tol: float = STATE_TOL) -> np.ndarray:
    """Return v as an ndarray, raising ValueError if it is not normalized."""
    v = as_state(v)
    if not np.isfinite(v).all():
        raise ValueError("state contains non-finite amplitudes")
    norm = np.linalg.norm(v)
    if abs(norm - 1.0) > tol:
        raise ValueError(f"state is not normalized (|norm - 1| = {abs(norm - 1):.3e})")
    return v


def basis_state(dim: int, index: int) -> np.ndarray:
    """Computational basis vector |index> of the given dimension."""
    if not 0 <= index < dim:
        raise ValueError(f"basis index {index} out of range for dimension {dim}")
    v = np.zeros(dim, dtype=complex)
    v[index] = 1.0
    return v


def apply(u, v) -> np.ndarray:
    """Apply a unitary to a state vector: U·v."""
    u = as_matrix(u)
    v = as_state(v)
    if u.shape[0] != v.shape[0]:
        raise ValueError(f"dimension mismatch: matrix {u.shape[0]}, state {v.shape[0]}")
    return u @ v


def matrix_power_direct(u, n: int) -> np.ndarray:
    """U^n by repeated multiplication (binary exponentiation), n >= 0.

    Serves as the order-n oracle for the spectral power route.
    """
    u = as_matrix(u)
    if n < 0:
        raise ValueError("matrix_power_direct requires n >= 0")
    return np.linalg.matrix_power(u, n)


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eigenphases and eigenvectors of a unitary.

    phases[k] in (-pi, pi] and vectors[:, k] satisfy U·v = exp(i·phase)·v.
    normalizations carries the 1/norm factors of formula-built eigenvectors
    when the spectrum came from a closed-form construction, else None.
    """

    phases: np.ndarray
    vectors: np.ndarray
    normalizations: np.ndarray | None = None

    @property
    def dim(self) -> int:
        return self.vectors.shape[0]

    def eigenvalues(self) -> np.ndarray:
        return np.exp(1j * self.phases)


def _canonical_vector_phase(v: np.ndarray) -> np.ndarray:
    """Rotate a vector's global phase so its largest-magnitude entry is real positive."""
    k = int(np.argmax(np.abs(v)))
    mag = abs(v[k])
    if mag < 1e-15:
        return v
    return v * (v[k].conjugate() / mag)


def dense_eigendecomposition(u, tol: float = UNITARY_TOL) -> Spectrum:
    """Full eigendecomposition of a unitary via the complex Schur form.

    Eigenphases are returned ascending in (-pi, pi]; ties are broken by the
    phase of each (canonicalized) eigenvector's leading nonzero entry.  The
    Schur route keeps eigenvectors orthonormal even for degenerate spectra.
    """
    u = check_unitary(u, tol)
    t, z = scipy.linalg.schur(u, output="complex")
    phases = np.angle(np.diag(t))
    vectors = np.array([_canonical_vector_phase(z[:, k]) for k in range(u.shape[0])]).T

    def leading_phase(k: int) -> float:
        col = vectors[:, k]
        nonzero = np.flatnonzero(np.abs(col) > 1e-12)
        return float(np.angle(col[nonzero[0]])) if nonzero.size else 0.0

    order = sorted(range(u.shape[0]), key=lambda k: (phases[k], leading_phase(k)))
    return Spectrum(phases=phases[order], vectors=vectors[:, order])


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed random unitary via QR of a complex Gaussian matrix."""
    x = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(x)
    d = np.diag(r)
    return q * (d / np.abs(d))
