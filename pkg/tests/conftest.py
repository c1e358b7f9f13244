"""Shared builders for randomized metrology tests.

Random generators are scaled to unit spectral radius so finite-difference
truncation constants stay O(1) and tolerances hold uniformly across dims.
"""

import numpy as np
import pytest

from fisherlab import StateFamily, derivative, qfi

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)


def paper_qubit_family() -> StateFamily:
    """Phase family exp(-i lam sigma_z/2) on the equal superposition."""
    return StateFamily(
        generator=SIGMA_Z / 2.0,
        input_state=np.array([1.0, 1.0], dtype=complex) / np.sqrt(2.0),
    )


def random_hermitian(dim: int, rng: np.random.Generator, spectral_radius: float = 1.0) -> np.ndarray:
    raw = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    herm = (raw + raw.conj().T) / 2.0
    scale = np.max(np.abs(np.linalg.eigvalsh(herm)))
    return herm * (spectral_radius / scale) if scale > 0 else herm


def random_state(dim: int, rng: np.random.Generator) -> np.ndarray:
    vec = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return vec / np.linalg.norm(vec)


def random_family(dim: int, rng: np.random.Generator, min_qfi: float = 1e-6) -> StateFamily:
    """Random unit-spectral-radius family, resampled until QFI > min_qfi."""
    while True:
        family = StateFamily(
            generator=random_hermitian(dim, rng),
            input_state=random_state(dim, rng),
        )
        if qfi(derivative(family, 0.0)) > min_qfi:
            return family


def haar_qubit_basis(rng: np.random.Generator) -> np.ndarray:
    """Haar-random orthonormal qubit basis as unitary columns."""
    raw = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    q, r = np.linalg.qr(raw)
    phases = np.diagonal(r)
    return q * (phases / np.abs(phases))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260811)
