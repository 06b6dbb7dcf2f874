"""Zero-mean Gaussian measures on phase space.

A state is determined by its real 2n x 2n covariance B (symmetric, positive
semidefinite); the mean is identically zero.  The complex covariance is the
n x n Hermitian matrix Bc = E[z z^+] of the complexified field z = q + ip,
with blocks D = B11 + B22 and S = B12 - B21 so that Bc = D - iS.  States
invariant under the symplectic pushforward are exactly those with an
s-commuting B, and for them Bc determines B uniquely.
"""

from __future__ import annotations

import numpy as np

from .phase import (
    BlockOperator,
    PhaseVector,
    default_tol,
    s_commutation_residual,
)

__all__ = [
    "GaussianState",
    "complex_covariance",
    "from_complex_covariance",
    "pure_state_covariance",
    "maximally_mixed_state",
    "is_symplectically_invariant",
]


class GaussianState:
    """Zero-mean Gaussian measure with real covariance ``B``.

    The covariance is validated (symmetric, eigenvalues >= -tol) at
    construction and an eigenfactorization is cached for sampling.
    Eigenvalues in [-tol, 0) are clamped to zero so that rank-deficient
    covariances (pure states) sample exactly on their support; anything
    below -tol is a hard error.  Instances are immutable.
    """

    def __init__(self, B: np.ndarray, tol: float | None = None):
        B = np.array(np.atleast_2d(B), dtype=float)
        if B.ndim != 2 or B.shape[0] != B.shape[1] or B.shape[0] % 2:
            raise ValueError(f"covariance must be 2n x 2n, got {B.shape}")
        if tol is None:
            tol = default_tol(B)
        if float(np.max(np.abs(B - B.T))) > tol:
            raise ValueError("covariance is not symmetric")
        B = (B + B.T) / 2.0
        eigvals, eigvecs = np.linalg.eigh(B)  # ascending
        if eigvals[0] < -tol:
            raise ValueError(
                f"covariance is not positive semidefinite "
                f"(min eigenvalue {eigvals[0]:.3e} < -{tol:.3e})"
            )
        eigvals = np.clip(eigvals, 0.0, None)
        B.flags.writeable = False
        self._B = B
        self._factor = eigvecs * np.sqrt(eigvals)  # L with L L^T = B
        self._factor.flags.writeable = False

    @property
    def B(self) -> np.ndarray:
        return self._B

    @property
    def n(self) -> int:
        return self._B.shape[0] // 2

    @property
    def dispersion(self) -> float:
        """Total variance E||omega||^2 = trace(B)."""
        return float(np.trace(self._B))

    def block(self, i: int, j: int) -> np.ndarray:
        """Covariance block Bij (i, j in {1, 2})."""
        n = self.n
        return self._B[(i - 1) * n:i * n, (j - 1) * n:j * n]

    def as_operator(self) -> BlockOperator:
        return BlockOperator.from_matrix(self._B)

    def sample(self, rng: np.random.Generator) -> PhaseVector:
        """Draw one point with law N(0, B) from the given stream."""
        return PhaseVector.from_vector(self._factor @ rng.standard_normal(2 * self.n))

    def sample_array(self, rng: np.random.Generator, size: int) -> np.ndarray:
        """Draw ``size`` points as a (size, 2n) array."""
        return rng.standard_normal((size, 2 * self.n)) @ self._factor.T

    def to_dict(self) -> dict:
        return {"n": self.n, "B": self._B.tolist()}

    @classmethod
    def from_dict(cls, d: dict) -> "GaussianState":
        """Build a state from one of the three accepted JSON forms.

        {"n": int, "B": [[...]]}                      real covariance
        {"Bc": {"re": [[...]], "im": [[...]]}}        complex covariance
        {"pure": {"psi_re": [...], "psi_im": [...], "h": float}}
        """
        if "B" in d:
            state = cls(np.asarray(d["B"], dtype=float))
        elif "Bc" in d:
            bc = d["Bc"]
            state = from_complex_covariance(
                np.asarray(bc["re"], dtype=float) + 1j * np.asarray(bc["im"], dtype=float)
            )
        elif "pure" in d:
            pure = d["pure"]
            psi = np.asarray(pure["psi_re"], dtype=float) + 1j * np.asarray(
                pure["psi_im"], dtype=float
            )
            state = pure_state_covariance(psi, float(pure["h"]))
        else:
            raise ValueError("state dict must contain one of 'B', 'Bc', 'pure'")
        if "n" in d and int(d["n"]) != state.n:
            raise ValueError(f"declared n={d['n']} does not match covariance size {state.n}")
        return state

    def __repr__(self) -> str:
        return f"GaussianState(n={self.n}, dispersion={self.dispersion:.6g})"


def complex_covariance(rho: GaussianState) -> np.ndarray:
    """Hermitian n x n covariance Bc = (B11 + B22) - i (B12 - B21)."""
    D = rho.block(1, 1) + rho.block(2, 2)
    S = rho.block(1, 2) - rho.block(2, 1)
    return D - 1j * S


def is_symplectically_invariant(rho: GaussianState, tol: float | None = None) -> bool:
    """True iff the covariance commutes with J (pushforward under J fixes the law)."""
    if tol is None:
        tol = default_tol(rho.B)
    elif tol <= 0:
        raise ValueError("tol must be positive")
    return s_commutation_residual(rho.as_operator()) <= tol


def from_complex_covariance(Bc: np.ndarray, tol: float | None = None) -> GaussianState:
    """The unique symplectically invariant state with complex covariance Bc.

    Blocks: B11 = B22 = Re(Bc)/2 and B12 = -B21 = -Im(Bc)/2.  The round
    trip with :func:`complex_covariance` is exact.  Rejects non-Hermitian
    or indefinite input.
    """
    Bc = np.atleast_2d(np.asarray(Bc, dtype=complex))
    if Bc.shape[0] != Bc.shape[1]:
        raise ValueError(f"expected a square matrix, got {Bc.shape}")
    if tol is None:
        tol = default_tol(np.abs(Bc))
    if float(np.max(np.abs(Bc - Bc.conj().T))) > tol:
        raise ValueError("complex covariance is not Hermitian")
    Bc = (Bc + Bc.conj().T) / 2.0  # exact no-op for Hermitian input
    half_D = Bc.real / 2.0
    half_S = -Bc.imag / 2.0
    B = np.block([[half_D, half_S], [-half_S, half_D]])
    return GaussianState(B, tol=tol)


def pure_state_covariance(psi: np.ndarray, h: float) -> GaussianState:
    """Rank-2 invariant state with complex covariance 2h psi psi^+.

    ``psi`` must be a unit complex vector and h > 0.  The real covariance
    has exactly two nonzero eigenvalues, both equal to h, so the dispersion
    is 2h; the overall phase of psi is immaterial.
    """
    psi = np.atleast_1d(np.asarray(psi, dtype=complex))
    if h <= 0:
        raise ValueError("h must be positive")
    nrm = float(np.linalg.norm(psi))
    if abs(nrm - 1.0) > 1e-10:
        raise ValueError(f"psi must be normalized, got ||psi|| = {nrm!r}")
    return from_complex_covariance(2.0 * h * np.outer(psi, psi.conj()))


def maximally_mixed_state(n: int, h: float) -> GaussianState:
    """Isotropic covariance (h/n) I_2n; maps to the density matrix I/n."""
    if h <= 0:
        raise ValueError("h must be positive")
    return GaussianState((h / n) * np.eye(2 * n))
