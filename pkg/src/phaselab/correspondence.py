"""Classical -> quantum correspondence for Gaussian field statistics.

States map to density operators by normalizing the complex covariance,
T(rho) = Bc / 2h, and variables map to observables through their second
derivative at the origin, T(f) = h * f''(0) (as a complex matrix).  For
quadratic variables the classical Gaussian average equals the quantum
trace average exactly; for higher-degree polynomial variables the two
agree up to terms of order h^2 and the map on variables is many-to-one.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gaussian import (
    GaussianState,
    complex_covariance,
    from_complex_covariance,
    is_symplectically_invariant,
)
from .moments import product_of_quadratics_mean
from .phase import to_complex_operator
from .streams import spawn_streams
from .variables import PolynomialVariable

__all__ = [
    "DensityOperator",
    "T_state",
    "T_variable",
    "classical_average_exact",
    "classical_average_mc",
    "quantum_average",
    "ScalingStudy",
    "h_scaling_study",
]

MC_CHUNK = 16384
DISPERSION_RTOL = 1e-10
SLOPE_FLOOR = 1e-13  # errors below this are numerical noise, excluded from slope fits


class DensityOperator:
    """Hermitian positive semidefinite complex matrix with unit trace.

    Construct with ``check_trace=False`` to admit the near-normalized
    operators produced by tolerant-mode state mapping; ``trace_defect``
    reports the deviation from unit trace either way.
    """

    def __init__(self, matrix: np.ndarray, check_trace: bool = True, tol: float = 1e-10):
        matrix = np.array(np.atleast_2d(matrix), dtype=complex)
        if matrix.shape[0] != matrix.shape[1]:
            raise ValueError(f"expected a square matrix, got {matrix.shape}")
        if float(np.max(np.abs(matrix - matrix.conj().T))) > tol * max(
            1.0, float(np.max(np.abs(matrix)))
        ):
            raise ValueError("density operator must be Hermitian")
        eigvals = np.linalg.eigvalsh(matrix)
        if eigvals[0] < -tol:
            raise ValueError(f"density operator must be PSD (min eigenvalue {eigvals[0]:.3e})")
        if check_trace and abs(np.trace(matrix).real - 1.0) > tol:
            raise ValueError(f"trace must be 1, got {np.trace(matrix).real!r}")
        matrix.flags.writeable = False
        self._matrix = matrix

    @property
    def matrix(self) -> np.ndarray:
        return self._matrix

    @property
    def n(self) -> int:
        return self._matrix.shape[0]

    @property
    def trace_defect(self) -> float:
        return float(np.trace(self._matrix).real - 1.0)

    def __repr__(self) -> str:
        return f"DensityOperator(n={self.n}, trace_defect={self.trace_defect:.3e})"


def T_state(rho: GaussianState, h: float, strict: bool = True) -> DensityOperator:
    """Map a Gaussian state to the density operator Bc / 2h.

    Strict mode requires a symplectically invariant state of dispersion 2h
    (within relative tolerance) so that the result has unit trace and the
    map is invertible via ``from_complex_covariance(2h * D)``.  With
    ``strict=False`` the checks are skipped and the (possibly unnormalized)
    positive operator is returned with its trace defect available.
    """
    if h <= 0:
        raise ValueError("h must be positive")
    if strict:
        if not is_symplectically_invariant(rho):
            raise ValueError("state is not symplectically invariant")
        if abs(rho.dispersion - 2.0 * h) > DISPERSION_RTOL * 2.0 * h:
            raise ValueError(
                f"state dispersion {rho.dispersion!r} != 2h = {2.0 * h!r}; "
                "pass strict=False to map anyway"
            )
    return DensityOperator(complex_covariance(rho) / (2.0 * h), check_trace=strict)


def T_variable(f: PolynomialVariable, h: float) -> np.ndarray:
    """Map a variable to the Hermitian observable h * f''(0) (complex form)."""
    return h * to_complex_operator(f.hessian_at_zero())


def classical_average_exact(f: PolynomialVariable, rho: GaussianState) -> float:
    """Exact Gaussian expectation of f under rho via Isserlis moments.

    Implemented through terms with three quadratic factors (6th moments);
    higher degrees raise ValueError - use :func:`classical_average_mc`.
    """
    total = 0.0
    for coeff, factors in f.terms:
        if len(factors) > 3:
            raise ValueError(
                f"exact averages support at most 3 factors per term, got {len(factors)}"
            )
        mats = [A.matrix for A in factors]
        total += coeff * 0.5 ** len(mats) * product_of_quadratics_mean(mats, rho.B)
    return total


def classical_average_mc(
    f: PolynomialVariable, rho: GaussianState, N: int, seed: int
) -> tuple[float, float]:
    """Monte Carlo mean of f under rho: (estimate, standard error)."""
    if N < 2:
        raise ValueError("need at least 2 samples")
    n_chunks = -(-N // MC_CHUNK)
    streams = spawn_streams(seed, n_chunks)
    total = 0.0
    total_sq = 0.0
    remaining = N
    for rng in streams:
        size = min(MC_CHUNK, remaining)
        remaining -= size
        vals = f.value_batch(rho.sample_array(rng, size))
        total += float(vals.sum())
        total_sq += float((vals * vals).sum())
    mean = total / N
    var = max(total_sq / N - mean * mean, 0.0)
    return mean, float(np.sqrt(var / N))


def quantum_average(D: DensityOperator, M: np.ndarray) -> float:
    """Trace average tr(D M) of a Hermitian observable; returns the real part."""
    M = np.atleast_2d(np.asarray(M, dtype=complex))
    if M.shape != D.matrix.shape:
        raise ValueError(f"dimension mismatch: {D.matrix.shape} vs {M.shape}")
    tr = complex(np.trace(D.matrix @ M))
    if abs(tr.imag) > 1e-12 * max(1.0, abs(tr.real)):
        raise ValueError(f"trace has non-negligible imaginary part {tr.imag!r}")
    return tr.real


@dataclass(frozen=True)
class ScalingStudy:
    """Classical-vs-quantum error table over an h grid with a log-log fit."""

    rows: tuple[tuple[float, float, float, float], ...]  # (h, classical, quantum, abs_error)
    slope: float | None
    r2: float | None

    @property
    def status(self) -> str:
        return "fitted" if self.slope is not None else "exact"

    def summary_dict(self) -> dict:
        return {"slope": self.slope, "r2": self.r2, "status": self.status}


def h_scaling_study(
    f: PolynomialVariable, D0: DensityOperator, h_values
) -> ScalingStudy:
    """Compare classical and quantum averages of f across dispersions 2h.

    For each h the state is the invariant Gaussian with complex covariance
    2h * D0; the quantum value is h * tr(D0 f''(0)).  Quadratic terms agree
    exactly, a term with k >= 2 factors contributes error scaling as h^k.
    The slope of log|error| vs log h is fit by least squares over grid
    points whose error exceeds the numerical floor; fewer than three such
    points leave the fit undefined (exact regime).
    """
    h_values = [float(h) for h in h_values]
    if any(h <= 0 for h in h_values):
        raise ValueError("h grid must be positive")
    if any(b >= a for a, b in zip(h_values, h_values[1:])):
        raise ValueError("h grid must be strictly descending")

    obs0 = to_complex_operator(f.hessian_at_zero())
    rows = []
    for h in h_values:
        rho_h = from_complex_covariance(2.0 * h * D0.matrix)
        classical = classical_average_exact(f, rho_h)
        quantum = h * float(np.trace(D0.matrix @ obs0).real)
        rows.append((h, classical, quantum, abs(classical - quantum)))

    pts = [(np.log(h), np.log(err)) for h, _, _, err in rows if err > SLOPE_FLOOR]
    slope = r2 = None
    if len(pts) >= 3:
        x = np.array([p[0] for p in pts])
        y = np.array([p[1] for p in pts])
        slope_val, intercept = np.polyfit(x, y, 1)
        resid = y - (slope_val * x + intercept)
        ss_tot = float(np.sum((y - y.mean()) ** 2))
        r2 = 1.0 - float(np.sum(resid**2)) / ss_tot if ss_tot > 0 else 1.0
        slope = float(slope_val)
    return ScalingStudy(rows=tuple(rows), slope=slope, r2=r2)
