"""Exact Gaussian moments of products of quadratic forms.

For omega ~ N(0, B) and symmetric A_i, with T_i = tr(A_i B) and
G_ij = tr(A_i B A_j B):

    E[(A1 w, w)]                      = T1
    E[(A1 w, w)(A2 w, w)]             = T1 T2 + 2 G12
    E[(A1 w, w)(A2 w, w)(A3 w, w)]    = T1 T2 T3
                                        + 2 (T1 G23 + T2 G13 + T3 G12)
                                        + 8 tr(A1 B A2 B A3 B)

These are the Isserlis pairings of the 2nd, 4th and 6th moments; the
coefficients count pairings in each class (1 / 2 / 8 of 3 / 15 total).
Higher degrees are not implemented; estimate those by Monte Carlo.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "quadratic_mean",
    "quadratic_pair_mean",
    "quadratic_triple_mean",
    "product_of_quadratics_mean",
]


def quadratic_mean(A: np.ndarray, B: np.ndarray) -> float:
    return float(np.trace(A @ B))


def quadratic_pair_mean(A1: np.ndarray, A2: np.ndarray, B: np.ndarray) -> float:
    A1B = A1 @ B
    A2B = A2 @ B
    return float(np.trace(A1B) * np.trace(A2B) + 2.0 * np.trace(A1B @ A2B))


def quadratic_triple_mean(
    A1: np.ndarray, A2: np.ndarray, A3: np.ndarray, B: np.ndarray
) -> float:
    A1B = A1 @ B
    A2B = A2 @ B
    A3B = A3 @ B
    t1, t2, t3 = np.trace(A1B), np.trace(A2B), np.trace(A3B)
    g12 = np.trace(A1B @ A2B)
    g13 = np.trace(A1B @ A3B)
    g23 = np.trace(A2B @ A3B)
    return float(
        t1 * t2 * t3
        + 2.0 * (t1 * g23 + t2 * g13 + t3 * g12)
        + 8.0 * np.trace(A1B @ A2B @ A3B)
    )


def product_of_quadratics_mean(mats: list[np.ndarray], B: np.ndarray) -> float:
    """E[prod_i (A_i w, w)] for up to three symmetric factors."""
    if len(mats) == 1:
        return quadratic_mean(mats[0], B)
    if len(mats) == 2:
        return quadratic_pair_mean(mats[0], mats[1], B)
    if len(mats) == 3:
        return quadratic_triple_mean(mats[0], mats[1], mats[2], B)
    raise ValueError(
        f"closed-form moments implemented through degree 3, got {len(mats)} factors"
    )
