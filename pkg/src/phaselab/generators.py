"""Deterministic random problem instances.

Everything takes an explicit Generator so that suites and CLI shortcuts
expand reproducibly from a single seed.
"""

from __future__ import annotations

import numpy as np

from .gaussian import GaussianState, from_complex_covariance
from .phase import BlockOperator
from .variables import PolynomialVariable

__all__ = [
    "random_symmetric_matrix",
    "random_antisymmetric_matrix",
    "random_s_commuting_symmetric",
    "random_symmetric_operator",
    "random_phase_point",
    "random_unit_complex",
    "random_hermitian",
    "random_hermitian_psd",
    "random_density_matrix",
    "random_invariant_state",
    "random_covariance_state",
    "random_quadratic_variable",
]


def random_symmetric_matrix(rng: np.random.Generator, m: int, scale: float = 1.0) -> np.ndarray:
    X = rng.standard_normal((m, m))
    return scale * (X + X.T) / 2.0


def random_antisymmetric_matrix(rng: np.random.Generator, m: int, scale: float = 1.0) -> np.ndarray:
    X = rng.standard_normal((m, m))
    return scale * (X - X.T) / 2.0


def random_s_commuting_symmetric(rng: np.random.Generator, n: int, scale: float = 1.0) -> BlockOperator:
    """Symmetric s-commuting operator: D symmetric, S antisymmetric."""
    return BlockOperator.s_commuting(
        random_symmetric_matrix(rng, n, scale), random_antisymmetric_matrix(rng, n, scale)
    )


def random_symmetric_operator(rng: np.random.Generator, n: int, scale: float = 1.0) -> BlockOperator:
    """Generic symmetric operator; almost surely not s-commuting."""
    return BlockOperator.from_matrix(random_symmetric_matrix(rng, 2 * n, scale))


def random_phase_point(rng: np.random.Generator, n: int, scale: float = 1.0):
    from .phase import PhaseVector

    return PhaseVector(scale * rng.standard_normal(n), scale * rng.standard_normal(n))


def random_unit_complex(rng: np.random.Generator, n: int) -> np.ndarray:
    z = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return z / np.linalg.norm(z)


def random_hermitian(rng: np.random.Generator, n: int, scale: float = 1.0) -> np.ndarray:
    X = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return scale * (X + X.conj().T) / 2.0


def random_hermitian_psd(rng: np.random.Generator, n: int, scale: float = 1.0) -> np.ndarray:
    X = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    P = scale * (X @ X.conj().T) / n
    return (P + P.conj().T) / 2.0  # blocked matmul leaves ~1e-17 asymmetry


def random_density_matrix(rng: np.random.Generator, n: int) -> np.ndarray:
    P = random_hermitian_psd(rng, n)
    return P / np.trace(P).real


def random_invariant_state(
    rng: np.random.Generator, n: int, dispersion: float | None = None
) -> GaussianState:
    """Symplectically invariant state, optionally rescaled to a target dispersion."""
    Bc = random_hermitian_psd(rng, n)
    if dispersion is not None:
        Bc *= dispersion / np.trace(Bc).real
    return from_complex_covariance(Bc)


def random_covariance_state(
    rng: np.random.Generator, n: int, dispersion: float | None = None
) -> GaussianState:
    """Generic PSD covariance; almost surely not symplectically invariant."""
    X = rng.standard_normal((2 * n, 2 * n))
    B = X @ X.T / (2 * n)
    if dispersion is not None:
        B *= dispersion / np.trace(B)
    return GaussianState(B)


def random_quadratic_variable(
    rng: np.random.Generator, n: int, scale: float = 1.0
) -> PolynomialVariable:
    return PolynomialVariable.quadratic(random_s_commuting_symmetric(rng, n, scale))
