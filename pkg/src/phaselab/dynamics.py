"""Linear Hamiltonian flows and their liftings.

The flow of a quadratic Hamilton function with symmetric generator H is
U_t = exp(J H t / h) (h = 1 recovers the unscaled dynamics).  It lifts to
variables by pullback (Heisenberg, A_t = U^T A U) and to Gaussian states
by pushforward (von Neumann, B_t = U B U^T).  For s-commuting generators
U_t is orthogonal, all norms and dispersions are conserved, and the whole
picture complexifies to the unitary flow exp(-i M t / h).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .gaussian import GaussianState
from .phase import (
    BlockOperator,
    PhaseVector,
    default_tol,
    symmetry_residual,
    symplectic_form,
    symplectic_matrix,
)
from .streams import spawn_streams
from .variables import PolynomialVariable

__all__ = [
    "FlowOperator",
    "make_flow",
    "evolve_point",
    "complex_flow",
    "heisenberg_lift",
    "vonneumann_lift",
    "poisson_bracket",
    "ensemble_evolve",
    "rk4_flow",
]

ENSEMBLE_CHUNK = 16384  # fixed partition size keeps stream layout parallelism-independent


@dataclass(frozen=True, eq=False)
class FlowOperator:
    """Propagator U = exp(J H t / h) for a symmetric generator H."""

    U: np.ndarray
    t: float
    h: float
    H: BlockOperator

    def __post_init__(self):
        U = np.array(self.U, dtype=float)
        U.flags.writeable = False
        object.__setattr__(self, "U", U)

    @property
    def n(self) -> int:
        return self.U.shape[0] // 2

    def inverse_matrix(self) -> np.ndarray:
        return scipy.linalg.expm(
            symplectic_matrix(self.n) @ self.H.matrix * (-self.t / self.h)
        )


def make_flow(H: BlockOperator, t: float, h: float = 1.0) -> FlowOperator:
    """Matrix exponential of (J H) t / h via scaling-and-squaring.

    Any symmetric H admits a flow; h must be positive.  The group law
    U_{t+s} = U_t U_s holds to roundoff.
    """
    if h <= 0:
        raise ValueError("h must be positive")
    if symmetry_residual(H) > default_tol(H.matrix):
        raise ValueError("generator must be symmetric")
    U = scipy.linalg.expm(symplectic_matrix(H.n) @ H.matrix * (t / h))
    return FlowOperator(U=U, t=float(t), h=float(h), H=H)


def evolve_point(flow: FlowOperator, omega: PhaseVector) -> PhaseVector:
    if omega.n != flow.n:
        raise ValueError(f"dimension mismatch: point n={omega.n}, flow n={flow.n}")
    return PhaseVector.from_vector(flow.U @ omega.vector)


def complex_flow(M: np.ndarray, t: float, h: float = 1.0) -> np.ndarray:
    """Unitary exp(-i M t / h) for Hermitian M."""
    M = np.atleast_2d(np.asarray(M, dtype=complex))
    if h <= 0:
        raise ValueError("h must be positive")
    if float(np.max(np.abs(M - M.conj().T))) > default_tol(np.abs(M)):
        raise ValueError("generator must be Hermitian")
    return scipy.linalg.expm(-1j * M * (t / h))


def heisenberg_lift(A: BlockOperator, flow: FlowOperator) -> BlockOperator:
    """Pullback of the variable f_A along the flow: A_t = U^T A U."""
    if symmetry_residual(A) > default_tol(A.matrix):
        raise ValueError("observable operator must be symmetric")
    return BlockOperator.from_matrix(flow.U.T @ A.matrix @ flow.U)


def vonneumann_lift(rho: GaussianState, flow: FlowOperator) -> GaussianState:
    """Pushforward of the Gaussian state along the flow: B_t = U B U^T."""
    return GaussianState(flow.U @ rho.B @ flow.U.T)


def poisson_bracket(
    f: PolynomialVariable, g: PolynomialVariable, omega: PhaseVector
) -> float:
    """{f, g}(omega) = w(grad f(omega), grad g(omega)) with analytic gradients."""
    return symplectic_form(f.gradient(omega), g.gradient(omega))


def ensemble_evolve(
    rho0: GaussianState,
    M: np.ndarray,
    t: float,
    h: float,
    N: int,
    seed: int,
) -> np.ndarray:
    """Empirical complex covariance of N evolved field samples.

    Draws N initial fields from rho0, evolves each complexified sample by
    exp(-i M t / h), and returns sum z z^+ / N.  Samples are drawn in
    fixed-size chunks with one spawned stream per chunk, so the result is
    reproducible from the seed alone regardless of how chunks are scheduled.
    Converges to the complex covariance of the pushforward state.
    """
    if N < 2:
        raise ValueError("need at least 2 samples")
    V = complex_flow(M, t, h)
    n = rho0.n
    n_chunks = -(-N // ENSEMBLE_CHUNK)
    streams = spawn_streams(seed, n_chunks)
    acc = np.zeros((n, n), dtype=complex)
    remaining = N
    for rng in streams:
        size = min(ENSEMBLE_CHUNK, remaining)
        remaining -= size
        W = rho0.sample_array(rng, size)
        Z = (W[:, :n] + 1j * W[:, n:]) @ V.T
        acc += Z.T @ Z.conj()
    return acc / N


def rk4_flow(H: BlockOperator, t: float, h: float = 1.0, steps: int = 2000) -> np.ndarray:
    """Fundamental matrix of d omega/dt = (J H / h) omega by classical RK4.

    Independent cross-check for :func:`make_flow`; not the production path.
    """
    G = symplectic_matrix(H.n) @ H.matrix / h
    dt = t / steps
    Y = np.eye(2 * H.n)
    for _ in range(steps):
        k1 = G @ Y
        k2 = G @ (Y + 0.5 * dt * k1)
        k3 = G @ (Y + 0.5 * dt * k2)
        k4 = G @ (Y + dt * k3)
        Y = Y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return Y
