"""Independent oracles used across the test modules.

Everything here is deliberately written against numpy.polynomial.hermite_e
and dense ndarray manipulation rather than the package's own sparse code
paths, so agreement is meaningful.
"""

import itertools
import math

import numpy as np
from numpy.polynomial import hermite_e


def hermite_sum(n, x):
    """H_n(x) from the explicit alternating sum, no recurrence."""
    total = 0.0
    for k in range(n // 2 + 1):
        coeff = ((-1) ** k * math.factorial(n)
                 / (2 ** k * math.factorial(k) * math.factorial(n - 2 * k)))
        total += coeff * x ** (n - 2 * k)
    return total


def hermite_np(n, x):
    """H_n(x) through numpy's He-series evaluator."""
    c = np.zeros(n + 1)
    c[n] = 1.0
    return hermite_e.hermeval(x, c)


def gauss_rule(n_nodes):
    """Nodes and probability weights for E[f(Z)], Z standard normal."""
    x, w = hermite_e.hermegauss(n_nodes)
    return x, w / math.sqrt(2.0 * math.pi)


def expect_1d(fn, n_nodes=64):
    x, w = gauss_rule(n_nodes)
    return float(np.dot(w, fn(x)))


def expect_nd(fn, dim, n_nodes=24):
    """E[fn(z)] for z in R^dim by tensorized Gauss-Hermite quadrature.

    fn takes an (m, dim) array and returns m values.
    """
    x, w = gauss_rule(n_nodes)
    grids = np.meshgrid(*([x] * dim), indexing="ij")
    pts = np.stack([g.ravel() for g in grids], axis=1)
    wgrids = np.meshgrid(*([w] * dim), indexing="ij")
    wts = np.ones(pts.shape[0])
    for g in wgrids:
        wts = wts * g.ravel()
    return float(np.dot(wts, fn(pts)))


def gaussian_moment(n):
    """E[Z^n], the double factorial for even n."""
    if n % 2:
        return 0.0
    out = 1.0
    for k in range(n - 1, 0, -2):
        out *= k
    return out


def dense_tensor(f):
    """SymTensor to a full (dim,)*order ndarray over ordered tuples."""
    arr = np.zeros((f.dim,) * f.order)
    for t, v in f.values.items():
        for p in set(itertools.permutations(t)):
            arr[p] = v
    return arr


def dense_symmetrize(arr):
    order = arr.ndim
    out = np.zeros_like(arr)
    perms = list(itertools.permutations(range(order)))
    for p in perms:
        out += np.transpose(arr, p)
    return out / len(perms)


def dense_sym_outer(a, b):
    """Symmetrized tensor product of two dense symmetric tensors."""
    prod = np.multiply.outer(a, b)
    return dense_symmetrize(prod)


def dense_contract_last(a, b):
    """One-index contraction of dense symmetric tensors, symmetrized."""
    raw = np.tensordot(a, b, axes=([a.ndim - 1], [b.ndim - 1]))
    return dense_symmetrize(raw)


def dense_trace(a):
    """Contract the last two axes against the identity."""
    return np.einsum("...ii->...", a)


def eval_chaos_ref(F, x):
    """Evaluate a ChaosVector at one point via hermeval only."""
    total = 0.0
    for alpha, c in F.items():
        term = c
        for idx, mult in alpha.entries:
            term *= hermite_np(mult, x[idx])
        total += term
    return total


def chaos_to_callable(F):
    """Vectorized pointwise evaluator built on numpy's hermeval."""

    def fn(pts):
        pts = np.asarray(pts, dtype=float)
        out = np.zeros(pts.shape[0])
        for alpha, c in F.items():
            term = np.full(pts.shape[0], c)
            for idx, mult in alpha.entries:
                coeffs = np.zeros(mult + 1)
                coeffs[mult] = 1.0
                term = term * hermite_e.hermeval(pts[:, idx], coeffs)
            out += term
        return out

    return fn
