"""The closed-form Gaussian moment formulas against independent oracles.

Oracles: brute-force Isserlis pairing enumeration, tensor-product
Gauss-Hermite quadrature (exact for polynomials), and Monte Carlo.
"""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from phaselab.moments import (
    product_of_quadratics_mean,
    quadratic_mean,
    quadratic_pair_mean,
    quadratic_triple_mean,
)
from phaselab.streams import stream

from helpers import gauss_hermite_expectation, isserlis_product_expectation


def _sym(rng, d):
    X = rng.standard_normal((d, d))
    return (X + X.T) / 2


def _cov(rng, d):
    X = rng.standard_normal((d, d))
    return X @ X.T / d


@pytest.mark.parametrize("degree", [1, 2, 3])
def test_against_pairing_enumeration(degree):
    rng = np.random.default_rng(degree)
    d = 4
    mats = [_sym(rng, d) for _ in range(degree)]
    B = _cov(rng, d)
    closed = product_of_quadratics_mean(mats, B)
    assert_allclose(closed, isserlis_product_expectation(mats, B), rtol=1e-12)


@pytest.mark.parametrize("degree", [1, 2, 3])
def test_against_gauss_hermite_quadrature(degree):
    rng = np.random.default_rng(10 + degree)
    d = 4
    mats = [_sym(rng, d) for _ in range(degree)]
    B = _cov(rng, d)

    def integrand(W):
        out = np.ones(W.shape[0])
        for A in mats:
            out *= np.einsum("si,ij,sj->s", W, A, W)
        return out

    closed = product_of_quadratics_mean(mats, B)
    assert_allclose(closed, gauss_hermite_expectation(integrand, B, nodes=8), rtol=1e-10)


def test_norm_fourth_moment_isotropic():
    # E[||w||^4] for B = s I_d is (d^2 + 2d) s^2; frozen from the oracles below
    d, s = 4, 0.7
    B = s * np.eye(d)
    closed = quadratic_pair_mean(np.eye(d), np.eye(d), B)
    assert_allclose(closed, (d * d + 2 * d) * s * s, rtol=1e-14)
    assert_allclose(closed, isserlis_product_expectation([np.eye(d), np.eye(d)], B), rtol=1e-13)
    # Monte Carlo confirmation at 4 standard errors
    N = 200_000
    W = stream(0).standard_normal((N, d)) * np.sqrt(s)
    vals = np.sum(W * W, axis=1) ** 2
    se = vals.std(ddof=1) / np.sqrt(N)
    assert abs(vals.mean() - closed) < 4 * se


def test_monte_carlo_triple():
    rng = np.random.default_rng(42)
    d = 6
    mats = [_sym(rng, d) for _ in range(3)]
    B = _cov(rng, d)
    closed = quadratic_triple_mean(*mats, B)
    L = np.linalg.cholesky(B)
    N = 400_000
    W = stream(1).standard_normal((N, d)) @ L.T
    vals = np.ones(N)
    for A in mats:
        vals *= np.einsum("si,ij,sj->s", W, A, W)
    se = vals.std(ddof=1) / np.sqrt(N)
    assert abs(vals.mean() - closed) < 4 * se


def test_mean_is_trace():
    rng = np.random.default_rng(5)
    d = 5
    A, B = _sym(rng, d), _cov(rng, d)
    assert_allclose(quadratic_mean(A, B), np.trace(A @ B), rtol=1e-14)


def test_degree_above_three_rejected():
    d = 2
    mats = [np.eye(d)] * 4
    with pytest.raises(ValueError, match="degree 3"):
        product_of_quadratics_mean(mats, np.eye(d))
