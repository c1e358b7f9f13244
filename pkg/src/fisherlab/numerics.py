"""Dense complex linear algebra for small Hilbert spaces.

Everything here assumes Hermitian operators on spaces of dimension up to
a few dozen, stored as dense ``numpy`` arrays. The eigensolver is the
single primitive; the matrix exponential and the seminorm are derived
from it so that unitarity and spectrum ordering hold by construction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimMismatchError, NonHermitianError

__all__ = [
    "HERMITICITY_RTOL",
    "EigenDecomposition",
    "as_state_vector",
    "require_hermitian",
    "hermitian_eig",
    "unitary_exp",
    "seminorm",
    "inner",
]

# Relative tolerance for the Hermiticity check. Matrices entered by hand or
# read from config may carry rounding in their symmetric entries; only
# genuine asymmetry is rejected.
HERMITICITY_RTOL = 1e-12


def as_state_vector(entries) -> np.ndarray:
    """Coerce ``entries`` to a complex 1-d array of dimension >= 1."""
    vec = np.asarray(entries, dtype=complex)
    if vec.ndim != 1 or vec.size < 1:
        raise DimMismatchError(
            f"state vector must be one-dimensional and non-empty, got shape {vec.shape}"
        )
    return vec


def require_hermitian(matrix) -> np.ndarray:
    """Validate and return ``matrix`` as a dense complex Hermitian array.

    The deviation ``max|M - M^H|`` must not exceed
    ``HERMITICITY_RTOL * max|M|``.

    Raises
    ------
    NonHermitianError
        If the matrix is not square or fails the Hermiticity bound.
    """
    mat = np.asarray(matrix, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1] or mat.shape[0] < 1:
        raise NonHermitianError(f"operator must be a square matrix, got shape {mat.shape}")
    deviation = np.max(np.abs(mat - mat.conj().T))
    if deviation > HERMITICITY_RTOL * np.max(np.abs(mat)):
        raise NonHermitianError(
            f"matrix is not Hermitian: max|M - M^H| = {deviation:.3e} exceeds "
            f"{HERMITICITY_RTOL:g} * max|M|"
        )
    return mat


@dataclass(frozen=True)
class EigenDecomposition:
    """Spectral data of a Hermitian operator.

    ``eigenvalues`` are real and ascending; column ``i`` of
    ``eigenvectors`` is the unit eigenvector paired with
    ``eigenvalues[i]``, with its first nonzero component made real
    positive so repeated runs give identical vectors.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return self.eigenvalues.size


def _fix_phases(vectors: np.ndarray) -> np.ndarray:
    """Rotate each column so its first nonzero component is real positive."""
    fixed = np.array(vectors, dtype=complex, copy=True)
    for i in range(fixed.shape[1]):
        col = fixed[:, i]
        nonzero = np.flatnonzero(np.abs(col) > 1e-12)
        pivot = col[nonzero[0]] if nonzero.size else 0.0
        if abs(pivot) > 0.0:
            fixed[:, i] = col * (pivot.conjugate() / abs(pivot))
    return fixed


def hermitian_eig(op) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian operator.

    Eigenvalues come back ascending and the eigenvector phases follow the
    first-nonzero-component-real-positive convention, so the result is
    deterministic for non-degenerate spectra.
    """
    mat = require_hermitian(op)
    eigenvalues, eigenvectors = np.linalg.eigh(mat)
    return EigenDecomposition(eigenvalues, _fix_phases(eigenvectors))


def unitary_exp(gen, lam: float) -> np.ndarray:
    """Return ``exp(-i * lam * gen)`` for a Hermitian generator.

    Computed through the eigendecomposition rather than a generic matrix
    exponential: the dimensions are small and the result is unitary to
    rounding by construction.
    """
    dec = hermitian_eig(gen)
    phases = np.exp(-1j * lam * dec.eigenvalues)
    return (dec.eigenvectors * phases) @ dec.eigenvectors.conj().T


def seminorm(op) -> float:
    """Spread of the spectrum, ``e_max - e_min``, of a Hermitian operator."""
    mat = require_hermitian(op)
    eigenvalues = np.linalg.eigvalsh(mat)
    return float(eigenvalues[-1] - eigenvalues[0])


def inner(a, b) -> complex:
    """Inner product ``<a|b>``, conjugate-linear in the first argument."""
    va = as_state_vector(a)
    vb = as_state_vector(b)
    if va.size != vb.size:
        raise DimMismatchError(f"inner product of dims {va.size} and {vb.size}")
    return complex(np.vdot(va, vb))
