"""Real 2n-dimensional phase space with symplectic structure.

Points are pairs (q, p) of real n-vectors.  The symplectic operator J maps
(q, p) to (p, -q); under the identification z = q + ip it acts as
multiplication by -i.  Operators on phase space are stored as four n x n
blocks.  Operators commuting with J ("s-commuting") have the block form
[[D, S], [-S, D]] and correspond one-to-one to complex n x n matrices
M = D - iS.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

__all__ = [
    "PhaseVector",
    "BlockOperator",
    "symplectic_matrix",
    "apply_J",
    "symplectic_form",
    "complexify",
    "realify",
    "complex_scalar_product",
    "is_s_commuting",
    "s_commutation_residual",
    "symmetry_residual",
    "to_complex_operator",
    "from_complex_operator",
    "quadratic_form_eval",
    "default_tol",
]

STRUCTURAL_RTOL = 1e-10  # default relative tolerance for structure predicates


def default_tol(*arrays: np.ndarray) -> float:
    """Default structural tolerance: 1e-10 times the largest entry magnitude."""
    scale = max((float(np.max(np.abs(a))) if a.size else 0.0) for a in arrays)
    return STRUCTURAL_RTOL * scale


def _readonly(a: np.ndarray, dtype=float) -> np.ndarray:
    out = np.array(a, dtype=dtype)
    out.flags.writeable = False
    return out


@dataclass(frozen=True, eq=False)
class PhaseVector:
    """Point omega = (q, p) of the 2n-dimensional phase space."""

    q: np.ndarray
    p: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "q", _readonly(np.atleast_1d(self.q)))
        object.__setattr__(self, "p", _readonly(np.atleast_1d(self.p)))
        if self.q.ndim != 1 or self.q.shape != self.p.shape:
            raise ValueError(
                f"q and p must be 1-d arrays of equal length, "
                f"got {self.q.shape} and {self.p.shape}"
            )

    @property
    def n(self) -> int:
        return self.q.shape[0]

    @cached_property
    def vector(self) -> np.ndarray:
        """The point as a single read-only 2n-vector (q stacked over p)."""
        return _readonly(np.concatenate([self.q, self.p]))

    @classmethod
    def from_vector(cls, v: np.ndarray) -> "PhaseVector":
        v = np.asarray(v, dtype=float)
        if v.ndim != 1 or v.shape[0] % 2:
            raise ValueError(f"expected a flat 2n-vector, got shape {v.shape}")
        n = v.shape[0] // 2
        return cls(v[:n], v[n:])

    def norm(self) -> float:
        return float(np.sqrt(np.dot(self.q, self.q) + np.dot(self.p, self.p)))

    def to_dict(self) -> dict:
        return {"q": self.q.tolist(), "p": self.p.tolist()}

    @classmethod
    def from_dict(cls, d: dict) -> "PhaseVector":
        return cls(np.asarray(d["q"], dtype=float), np.asarray(d["p"], dtype=float))

    def __repr__(self) -> str:
        return f"PhaseVector(n={self.n}, q={self.q!r}, p={self.p!r})"


def symplectic_matrix(n: int) -> np.ndarray:
    """The 2n x 2n symplectic operator J = [[0, I], [-I, 0]]."""
    J = np.zeros((2 * n, 2 * n))
    J[:n, n:] = np.eye(n)
    J[n:, :n] = -np.eye(n)
    return J


@dataclass(frozen=True, eq=False)
class BlockOperator:
    """Real linear operator on phase space stored as blocks.

    A11: Q -> Q, A12: P -> Q, A21: Q -> P, A22: P -> P.
    """

    A11: np.ndarray
    A12: np.ndarray
    A21: np.ndarray
    A22: np.ndarray

    def __post_init__(self):
        for name in ("A11", "A12", "A21", "A22"):
            block = _readonly(np.atleast_2d(getattr(self, name)))
            object.__setattr__(self, name, block)
        n = self.A11.shape[0]
        for name in ("A11", "A12", "A21", "A22"):
            if getattr(self, name).shape != (n, n):
                raise ValueError(f"block {name} is not {n} x {n}")

    @property
    def n(self) -> int:
        return self.A11.shape[0]

    @cached_property
    def matrix(self) -> np.ndarray:
        """The full 2n x 2n matrix (read-only)."""
        return _readonly(np.block([[self.A11, self.A12], [self.A21, self.A22]]))

    @classmethod
    def from_matrix(cls, m: np.ndarray) -> "BlockOperator":
        m = np.asarray(m, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] % 2:
            raise ValueError(f"expected a square 2n x 2n matrix, got {m.shape}")
        n = m.shape[0] // 2
        return cls(m[:n, :n], m[:n, n:], m[n:, :n], m[n:, n:])

    @classmethod
    def s_commuting(cls, D: np.ndarray, S: np.ndarray) -> "BlockOperator":
        """Build the s-commuting operator [[D, S], [-S, D]]."""
        D = np.asarray(D, dtype=float)
        S = np.asarray(S, dtype=float)
        return cls(D, S, -S, D)

    @classmethod
    def identity(cls, n: int) -> "BlockOperator":
        return cls.from_matrix(np.eye(2 * n))

    def is_symmetric(self, tol: float | None = None) -> bool:
        return symmetry_residual(self) <= (default_tol(self.matrix) if tol is None else tol)

    def __add__(self, other: "BlockOperator") -> "BlockOperator":
        return BlockOperator(
            self.A11 + other.A11, self.A12 + other.A12,
            self.A21 + other.A21, self.A22 + other.A22,
        )

    def __sub__(self, other: "BlockOperator") -> "BlockOperator":
        return BlockOperator(
            self.A11 - other.A11, self.A12 - other.A12,
            self.A21 - other.A21, self.A22 - other.A22,
        )

    def __matmul__(self, other: "BlockOperator") -> "BlockOperator":
        return BlockOperator.from_matrix(self.matrix @ other.matrix)

    def __rmul__(self, c: float) -> "BlockOperator":
        c = float(c)
        return BlockOperator(c * self.A11, c * self.A12, c * self.A21, c * self.A22)

    def apply(self, omega: PhaseVector) -> PhaseVector:
        return PhaseVector(
            self.A11 @ omega.q + self.A12 @ omega.p,
            self.A21 @ omega.q + self.A22 @ omega.p,
        )

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "blocks": {
                "A11": self.A11.tolist(),
                "A12": self.A12.tolist(),
                "A21": self.A21.tolist(),
                "A22": self.A22.tolist(),
            },
        }

    @classmethod
    def from_dict(cls, d: dict) -> "BlockOperator":
        blocks = d["blocks"]
        op = cls(*(np.asarray(blocks[k], dtype=float) for k in ("A11", "A12", "A21", "A22")))
        if "n" in d and int(d["n"]) != op.n:
            raise ValueError(f"declared n={d['n']} does not match blocks of size {op.n}")
        return op

    def __repr__(self) -> str:
        return f"BlockOperator(n={self.n})"


def apply_J(omega: PhaseVector) -> PhaseVector:
    """Apply the symplectic operator: (q, p) -> (p, -q)."""
    return PhaseVector(omega.p, -omega.q)


def symplectic_form(omega1: PhaseVector, omega2: PhaseVector) -> float:
    """Skew form w(omega1, omega2) = (omega1, J omega2) = (p2, q1) - (p1, q2)."""
    if omega1.n != omega2.n:
        raise ValueError(f"dimension mismatch: {omega1.n} != {omega2.n}")
    return float(np.dot(omega2.p, omega1.q) - np.dot(omega1.p, omega2.q))


def complexify(omega: PhaseVector) -> np.ndarray:
    """Identify (q, p) with the complex n-vector z = q + ip."""
    return omega.q + 1j * omega.p


def realify(z: np.ndarray) -> PhaseVector:
    """Inverse of :func:`complexify`."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    return PhaseVector(z.real, z.imag)


def complex_scalar_product(omega1: PhaseVector, omega2: PhaseVector) -> complex:
    """Complex scalar product (omega1, omega2) - i w(omega1, omega2).

    Linear in the first argument, conjugate-linear in the second; coincides
    with sum_j z1_j * conj(z2_j) for the complexified vectors.
    """
    if omega1.n != omega2.n:
        raise ValueError(f"dimension mismatch: {omega1.n} != {omega2.n}")
    real = float(np.dot(omega1.q, omega2.q) + np.dot(omega1.p, omega2.p))
    return complex(real, -symplectic_form(omega1, omega2))


def s_commutation_residual(A: BlockOperator) -> float:
    """Largest entry of |AJ - JA|, computed from the block conditions."""
    return max(
        float(np.max(np.abs(A.A11 - A.A22))),
        float(np.max(np.abs(A.A12 + A.A21))),
    )


def symmetry_residual(A: BlockOperator) -> float:
    m = A.matrix
    return float(np.max(np.abs(m - m.T)))


def is_s_commuting(A: BlockOperator, tol: float | None = None) -> bool:
    """True iff A commutes with J (equivalently A11 = A22 and A12 = -A21)."""
    if tol is None:
        tol = default_tol(A.matrix)
    elif tol <= 0:
        raise ValueError("tol must be positive")
    return s_commutation_residual(A) <= tol


def to_complex_operator(A: BlockOperator, tol: float | None = None) -> np.ndarray:
    """Complex n x n matrix M = D - iS of an s-commuting operator.

    The action commutes with complexification: complexify(A omega) equals
    M @ complexify(omega).  Symmetric input gives a Hermitian M.  Raises
    ValueError for operators that do not commute with J, since those admit
    no complex-linear representation.
    """
    if not is_s_commuting(A, tol):
        raise ValueError(
            f"operator is not s-commuting (residual {s_commutation_residual(A):.3e}); "
            "no complex representation exists"
        )
    D = (A.A11 + A.A22) / 2.0
    S = (A.A12 - A.A21) / 2.0
    return D - 1j * S


def from_complex_operator(M: np.ndarray) -> BlockOperator:
    """The s-commuting operator with blocks D = Re M, S = -Im M."""
    M = np.atleast_2d(np.asarray(M, dtype=complex))
    if M.shape[0] != M.shape[1]:
        raise ValueError(f"expected a square matrix, got {M.shape}")
    return BlockOperator.s_commuting(M.real, -M.imag)


def quadratic_form_eval(A: BlockOperator, omega: PhaseVector) -> float:
    """Evaluate f_A(omega) = (A omega, omega) / 2 for symmetric A."""
    v = omega.vector
    return 0.5 * float(v @ A.matrix @ v)
