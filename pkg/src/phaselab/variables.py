"""Symplectically invariant polynomial variables.

A variable is a finite sum f(omega) = sum_k c_k prod_j f_{A_kj}(omega) of
products of quadratic forms f_A(omega) = (A omega, omega)/2, where every
factor A_kj is symmetric and s-commuting.  Such f vanish at the origin,
satisfy f(J omega) = f(omega), and have an s-commuting second derivative
at zero given by the degree-one terms alone.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .phase import (
    BlockOperator,
    PhaseVector,
    default_tol,
    is_s_commuting,
    symmetry_residual,
)

__all__ = ["PolynomialVariable"]


def _check_factor(A: BlockOperator) -> BlockOperator:
    tol = default_tol(A.matrix)
    if symmetry_residual(A) > tol:
        raise ValueError("factor operators must be symmetric")
    if not is_s_commuting(A):
        raise ValueError("factor operators must be s-commuting")
    return A


@dataclass(frozen=True, eq=False)
class PolynomialVariable:
    """Variable f(omega) = sum_k coeff_k * prod_j (A_kj omega, omega)/2."""

    terms: tuple[tuple[float, tuple[BlockOperator, ...]], ...]

    def __post_init__(self):
        checked = []
        for coeff, factors in self.terms:
            if not factors:
                raise ValueError("every term needs at least one quadratic factor")
            checked.append((float(coeff), tuple(_check_factor(A) for A in factors)))
        object.__setattr__(self, "terms", tuple(checked))
        ns = {A.n for _, factors in self.terms for A in factors}
        if len(ns) > 1:
            raise ValueError(f"factors have mixed dimensions: {sorted(ns)}")
        object.__setattr__(self, "_n", ns.pop() if ns else None)

    @classmethod
    def quadratic(cls, A: BlockOperator, coeff: float = 1.0) -> "PolynomialVariable":
        """The single quadratic form coeff * (A omega, omega)/2."""
        return cls(((coeff, (A,)),))

    @classmethod
    def product(cls, coeff: float, factors) -> "PolynomialVariable":
        """A single product term coeff * prod_j (A_j omega, omega)/2."""
        return cls(((coeff, tuple(factors)),))

    @classmethod
    def zero(cls, n: int | None = None) -> "PolynomialVariable":
        """The identically-zero variable, optionally pinned to a dimension."""
        f = cls(())
        if n is not None:
            object.__setattr__(f, "_n", int(n))
        return f

    @property
    def n(self) -> int | None:
        """Phase-space dimension parameter, or None for the empty variable."""
        return self._n

    @property
    def degree(self) -> int:
        """Largest number of quadratic factors in any term (0 if empty)."""
        return max((len(factors) for _, factors in self.terms), default=0)

    def value(self, omega: PhaseVector) -> float:
        return float(self.value_batch(omega.vector[np.newaxis, :])[0])

    def value_batch(self, W: np.ndarray) -> np.ndarray:
        """Evaluate on rows of a (size, 2n) array of phase points."""
        W = np.atleast_2d(np.asarray(W, dtype=float))
        total = np.zeros(W.shape[0])
        for coeff, factors in self.terms:
            term = np.full(W.shape[0], coeff)
            for A in factors:
                term *= 0.5 * np.einsum("si,ij,sj->s", W, A.matrix, W)
            total += term
        return total

    def gradient(self, omega: PhaseVector) -> PhaseVector:
        """Analytic gradient; each factor contributes A omega by the product rule."""
        v = omega.vector
        grad = np.zeros_like(v)
        for coeff, factors in self.terms:
            vals = [0.5 * float(v @ A.matrix @ v) for A in factors]
            for j, A in enumerate(factors):
                rest = coeff
                for l, val in enumerate(vals):
                    if l != j:
                        rest *= val
                grad += rest * (A.matrix @ v)
        return PhaseVector.from_vector(grad)

    def hessian_at_zero(self) -> BlockOperator:
        """Second derivative at the origin: sum of coeff * A over degree-one terms.

        Terms with two or more factors are O(||omega||^4) near zero and
        contribute nothing.
        """
        n = self._n
        if n is None:
            raise ValueError(
                "variable has no defined dimension; build PolynomialVariable.zero(n)"
            )
        H = np.zeros((2 * n, 2 * n))
        for coeff, factors in self.terms:
            if len(factors) == 1:
                H = H + coeff * factors[0].matrix
        return BlockOperator.from_matrix(H)

    def __add__(self, other: "PolynomialVariable") -> "PolynomialVariable":
        return PolynomialVariable(self.terms + other.terms)

    def __rmul__(self, c: float) -> "PolynomialVariable":
        return PolynomialVariable(
            tuple((c * coeff, factors) for coeff, factors in self.terms)
        )

    def to_dict(self) -> dict:
        return {
            "terms": [
                {"coeff": coeff, "factors": [A.to_dict() for A in factors]}
                for coeff, factors in self.terms
            ]
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PolynomialVariable":
        return cls(
            tuple(
                (
                    float(t["coeff"]),
                    tuple(BlockOperator.from_dict(f) for f in t["factors"]),
                )
                for t in d["terms"]
            )
        )

    def __repr__(self) -> str:
        return f"PolynomialVariable(terms={len(self.terms)}, degree={self.degree})"
