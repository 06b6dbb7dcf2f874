"""Independent oracles shared by the test modules.

These deliberately avoid the library's production formulas: Gaussian
expectations come from tensor-product Gauss-Hermite quadrature (exact for
polynomials) or from brute-force Isserlis pairing enumeration, so they can
referee the closed-form trace expressions.
"""

import itertools

import numpy as np


def gauss_hermite_expectation(func, B, nodes=8):
    """E[func(w)] for w ~ N(0, B) by tensor-product Gauss-Hermite quadrature.

    Exact for polynomial integrands of degree <= 2*nodes - 1 per coordinate.
    func maps a (size, d) array of points to a (size,) array.  Feasible only
    for small d; intended for d = 4 (n = 2).
    """
    d = B.shape[0]
    x, w = np.polynomial.hermite_e.hermegauss(nodes)
    w = w / np.sqrt(2 * np.pi)
    eigvals, eigvecs = np.linalg.eigh(B)
    L = eigvecs * np.sqrt(np.clip(eigvals, 0, None))
    grids = np.meshgrid(*([x] * d), indexing="ij")
    pts = np.stack([g.ravel() for g in grids], axis=1) @ L.T
    weights = np.ones(pts.shape[0])
    for axis in range(d):
        weights *= np.meshgrid(*([w] * d), indexing="ij")[axis].ravel()
    return float(np.sum(weights * func(pts)))


def isserlis_product_expectation(mats, B):
    """E[prod_i (A_i w, w)] by explicit pairing enumeration over indices.

    Sums E[w_{i1} w_{j1} ... ] = sum over pairings of covariance products.
    Exponential in the number of factors; fine for <= 3 factors and small d.
    """
    d = B.shape[0]
    order = 2 * len(mats)

    def pairings(items):
        if not items:
            yield []
            return
        first, rest = items[0], items[1:]
        for k, other in enumerate(rest):
            for sub in pairings(rest[:k] + rest[k + 1:]):
                yield [(first, other)] + sub

    all_pairings = list(pairings(list(range(order))))
    total = 0.0
    for idx in itertools.product(range(d), repeat=order):
        coeff = 1.0
        for m, A in enumerate(mats):
            coeff *= A[idx[2 * m], idx[2 * m + 1]]
        if coeff == 0.0:
            continue
        moment = 0.0
        for pairing in all_pairings:
            term = 1.0
            for a, b in pairing:
                term *= B[idx[a], idx[b]]
            moment += term
        total += coeff * moment
    return total


def central_difference(func, t0, step=1e-5):
    """Central finite difference d func/dt at t0."""
    return (func(t0 + step) - func(t0 - step)) / (2 * step)
