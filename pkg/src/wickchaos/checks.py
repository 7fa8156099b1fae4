"""Self-check battery: exact identities and statistical cross-checks.

Every row compares two independent routes to the same quantity.  Exact
rows report the worst coefficient or value gap over a random corpus and
pass when it is below the tolerance; Monte Carlo rows report an estimate
with standard error and pass when the z-score against the exact value is
at most 3.  Rows are deterministic functions of (seed, n_samples), so a
report can be reproduced bit for bit from its seed column.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .chaos import (ChaosVector, add, coeff_distance, evaluate_at, expectation,
                    exponential_vector, from_tensor, gamma_norm, inner_product,
                    l2_norm, ordinary_product, scale, second_quantization,
                    wick_product)
from .errors import MismatchError
from .malliavin import (HValuedChaos, derivative_dir, directional_derivative,
                        divergence, product_via_wick_gradients,
                        wick_via_malliavin, wick_with_gaussian)
from .montecarlo import (ZSCORE_THRESHOLD, Estimate, estimate_lp_norm,
                         estimate_pair_expectation, estimate_expectation,
                         zscore_check)
from .multiindex import MultiIndex
from .renormalization import (PolySeries, poly_mul, series_condition,
                              wick_exp_square, wick_order_icopy_exact,
                              wick_order_icopy_mc, wick_order_poly,
                              renorm_product_check)
from .stransform import s_transform, s_transform_mc, translate
from .stratonovich import (ito_from_stratonovich, stratonovich_integral,
                           stratonovich_partial_sum)
from .tensors import SymTensor, basis_tensor, independent


@dataclass(frozen=True)
class CheckRow:
    identity: str
    exact: float
    estimate: float
    std_error: float
    zscore: float
    seed: int
    passed: bool

    def report_obj(self) -> dict:
        return {"identity": self.identity, "exact": self.exact,
                "estimate": self.estimate, "std_error": self.std_error,
                "zscore": self.zscore, "seed": self.seed}


def _exact_row(name: str, gap: float, seed: int, tol: float) -> CheckRow:
    return CheckRow(name, 0.0, gap, 0.0, 0.0, seed, gap <= tol)


def _mc_row(name: str, est: Estimate, exact: float) -> CheckRow:
    try:
        z = zscore_check(est, exact)
    except MismatchError:
        return CheckRow(name, exact, est.value, 0.0, math.inf, est.seed, False)
    return CheckRow(name, exact, est.value, est.std_error, z, est.seed,
                    z <= ZSCORE_THRESHOLD)


def _rel_gap(a: float, b: float) -> float:
    return abs(a - b) / max(1.0, abs(a), abs(b))


# -- random instances -------------------------------------------------------


def random_chaos(rng: np.random.Generator, dim: int, degree: int,
                 max_order: int, n_terms: int) -> ChaosVector:
    terms: dict[MultiIndex, float] = {}
    for _ in range(n_terms):
        deg = int(rng.integers(0, degree + 1))
        alpha = MultiIndex.from_indices(int(i) for i in rng.integers(0, dim, size=deg))
        terms[alpha] = terms.get(alpha, 0.0) + float(rng.uniform(-1.0, 1.0))
    return ChaosVector(dim, max_order, terms, prune=0.0)


def random_tensor(rng: np.random.Generator, dim: int, order: int,
                  n_entries: int) -> SymTensor:
    vals: dict[tuple[int, ...], float] = {}
    for _ in range(n_entries):
        t = tuple(sorted(int(i) for i in rng.integers(0, dim, size=order)))
        vals[t] = float(rng.uniform(-1.0, 1.0))
    return SymTensor(dim, order, vals, prune=0.0)


def random_poly(rng: np.random.Generator, dim: int, degree: int,
                n_terms: int, truncation: int) -> PolySeries:
    terms: dict[MultiIndex, float] = {}
    for _ in range(n_terms):
        deg = int(rng.integers(0, degree + 1))
        alpha = MultiIndex.from_indices(int(i) for i in rng.integers(0, dim, size=deg))
        terms[alpha] = terms.get(alpha, 0.0) + float(rng.uniform(-1.0, 1.0))
    return PolySeries(dim, terms, truncation)


def random_variances(rng: np.random.Generator, dim: int) -> list[float]:
    return [float(rng.uniform(0.3, 2.0)) for _ in range(dim)]


# -- exact identities --------------------------------------------------------


def _check_wick_vs_malliavin(seed, n, tol):
    rng = np.random.default_rng(seed)
    gap = 0.0
    for _ in range(20):
        dim = int(rng.integers(1, 4))
        F = random_chaos(rng, dim, 4, 8, 4)
        G = random_chaos(rng, dim, 4, 8, 4)
        gap = max(gap, coeff_distance(wick_product(F, G), wick_via_malliavin(F, G)))
    return _exact_row("wick_convolution_vs_malliavin", gap, seed, tol)


def _check_product_vs_wick_gradients(seed, n, tol):
    rng = np.random.default_rng(seed)
    gap = 0.0
    for _ in range(20):
        dim = int(rng.integers(1, 4))
        F = random_chaos(rng, dim, 4, 8, 4)
        G = random_chaos(rng, dim, 4, 8, 4)
        gap = max(gap, coeff_distance(ordinary_product(F, G),
                                      product_via_wick_gradients(F, G)))
    return _exact_row("product_vs_wick_gradients", gap, seed, tol)


def _check_product_pointwise(seed, n, tol):
    rng = np.random.default_rng(seed)
    gap = 0.0
    for _ in range(10):
        dim = int(rng.integers(1, 4))
        F = random_chaos(rng, dim, 4, 8, 4)
        G = random_chaos(rng, dim, 4, 8, 4)
        P = ordinary_product(F, G)
        for _ in range(10):
            x = [float(v) for v in rng.normal(size=dim)]
            lhs = evaluate_at(P, x)
            rhs = evaluate_at(F, x) * evaluate_at(G, x)
            gap = max(gap, _rel_gap(lhs, rhs))
    return _exact_row("product_pointwise", gap, seed, tol)


def _check_isometry(seed, n, tol):
    rng = np.random.default_rng(seed)
    gap = 0.0
    for _ in range(20):
        dim = int(rng.integers(1, 4))
        F = random_chaos(rng, dim, 4, 8, 5)
        via_square = expectation(ordinary_product(F, F))
        via_weights = inner_product(F, F)
        gap = max(gap, _rel_gap(via_square, via_weights))
    return _exact_row("chaos_isometry", gap, seed, tol)


def _check_exponential_vector_law(seed, n, tol):
    rng = np.random.default_rng(seed)
    gap = 0.0
    for _ in range(10):
        dim = int(rng.integers(1, 4))
        f = [float(v) for v in rng.uniform(-0.8, 0.8, size=dim)]
        g = [float(v) for v in rng.uniform(-0.8, 0.8, size=dim)]
        left = wick_product(exponential_vector(f, 8), exponential_vector(g, 8),
                            clip=True)
        right = exponential_vector([a + b for a, b in zip(f, g)], 8)
        gap = max(gap, coeff_distance(left, right))
    return _exact_row("exponential_vector_law", gap, seed, tol)


def _check_stransform_multiplicative(seed, n, tol):
    rng = np.random.default_rng(seed)
    gap = 0.0
    for _ in range(20):
        dim = int(rng.integers(1, 4))
        F = random_chaos(rng, dim, 3, 8, 4)
        G = random_chaos(rng, dim, 3, 8, 4)
        xi = [float(v) for v in rng.uniform(-1.0, 1.0, size=dim)]
        lhs = s_transform(wick_product(F, G), xi)
        rhs = s_transform(F, xi) * s_transform(G, xi)
        gap = max(gap, _rel_gap(lhs, rhs))
    return _exact_row("stransform_multiplicative", gap, seed, tol)


def _check_gaussian_wick_chain(seed, n, tol):
    rng = np.random.default_rng(seed)
    gap = 0.0
    for _ in range(20):
        dim = int(rng.integers(1, 4))
        F = random_chaos(rng, dim, 4, 6, 4)
        g = [float(v) for v in rng.uniform(-1.0, 1.0, size=dim)]
        via_conv = wick_product(F, ChaosVector.linear(g, max_order=F.max_order))
        via_deriv = wick_with_gaussian(F, g)
        via_div = divergence(HValuedChaos(tuple(scale(F, gj) for gj in g)))
        gap = max(gap, coeff_distance(via_conv, via_deriv))
        gap = max(gap, coeff_distance(via_conv, via_div))
    return _exact_row("gaussian_wick_chain", gap, seed, tol)


def _check_wick_gaussian_pairing(seed, n, tol):
    rng = np.random.default_rng(seed)
    gap = 0.0
    for _ in range(20):
        dim = int(rng.integers(1, 4))
        F = random_chaos(rng, dim, 3, 5, 4)
        G = random_chaos(rng, dim, 3, 5, 4)
        f = [float(v) for v in rng.uniform(-1.0, 1.0, size=dim)]
        g = [float(v) for v in rng.uniform(-1.0, 1.0, size=dim)]
        A = wick_product(F, ChaosVector.linear(f, max_order=F.max_order))
        B = wick_product(G, ChaosVector.linear(g, max_order=G.max_order))
        lhs = inner_product(A, B)
        fg = sum(a * b for a, b in zip(f, g))
        rhs = inner_product(F, G) * fg + inner_product(
            directional_derivative(F, g), directional_derivative(G, f))
        gap = max(gap, _rel_gap(lhs, rhs))
    return _exact_row("wick_gaussian_pairing", gap, seed, tol)


def _check_hu_meyer_roundtrip(seed, n, tol):
    rng = np.random.default_rng(seed)
    gap = 0.0
    for _ in range(15):
        dim = int(rng.integers(1, 4))
        order = int(rng.integers(1, 5))
        f = random_tensor(rng, dim, order, 4)
        gap = max(gap, coeff_distance(ito_from_stratonovich(f), from_tensor(f)))
    return _exact_row("hu_meyer_roundtrip", gap, seed, tol)


def _check_stratonovich_product_sum(seed, n, tol):
    rng = np.random.default_rng(seed)
    gap = 0.0
    for _ in range(15):
        dim = int(rng.integers(1, 4))
        order = int(rng.integers(1, 5))
        f = random_tensor(rng, dim, order, 4)
        gap = max(gap, coeff_distance(stratonovich_partial_sum(f, dim),
                                      stratonovich_integral(f)))
    return _exact_row("stratonovich_product_sum", gap, seed, tol)


def _check_stratonovich_pointwise(seed, n, tol):
    rng = np.random.default_rng(seed)
    S4 = stratonovich_integral(basis_tensor(1, (0, 0, 0, 0)))
    gap = 0.0
    for _ in range(20):
        x = float(rng.uniform(-2.0, 2.0))
        gap = max(gap, _rel_gap(evaluate_at(S4, [x]), x ** 4))
    return _exact_row("stratonovich_pointwise", gap, seed, tol)


def _check_moment_identity(seed, n, tol):
    rng = np.random.default_rng(seed)
    gap = 0.0
    for _ in range(20):
        dim = int(rng.integers(1, 4))
        p = random_poly(rng, dim, 4, 5, 8)
        v = random_variances(rng, dim)
        lhs = l2_norm(wick_order_poly(p, v)) ** 2
        rhs = series_condition(p, v)
        gap = max(gap, _rel_gap(lhs, rhs))
    return _exact_row("moment_identity", gap, seed, tol)


def _check_icopy_exact(seed, n, tol):
    rng = np.random.default_rng(seed)
    gap = 0.0
    for _ in range(20):
        dim = int(rng.integers(1, 4))
        p = random_poly(rng, dim, 6, 5, 8)
        v = random_variances(rng, dim)
        W = wick_order_poly(p, v)
        x = [float(u) for u in rng.uniform(-2.0, 2.0, size=dim)]
        z = [xi / math.sqrt(vi) for xi, vi in zip(x, v)]
        gap = max(gap, _rel_gap(wick_order_icopy_exact(p, v, x), evaluate_at(W, z)))
    return _exact_row("icopy_exact", gap, seed, tol)


def _check_hypercontractivity(seed, n, tol):
    rng = np.random.default_rng(seed)
    alpha = 1.0 / math.sqrt(3.0)
    worst = 0.0
    for _ in range(20):
        dim = int(rng.integers(1, 3))
        F = random_chaos(rng, dim, 3, 6, 4)
        if F.n_terms() == 0:
            continue
        G = second_quantization(F, alpha)
        G2 = ordinary_product(G, G)
        lhs = inner_product(G2, G2) ** 0.25
        rhs = l2_norm(F)
        worst = max(worst, (lhs - rhs) / max(1.0, rhs))
    return _exact_row("hypercontractivity", max(0.0, worst), seed, tol)


def _check_independence(seed, n, tol):
    rng = np.random.default_rng(seed)
    gap = 0.0
    for _ in range(10):
        order_f = int(rng.integers(1, 3))
        order_g = int(rng.integers(1, 3))
        # disjoint coordinate blocks of a 4-d space
        f_vals = {tuple(sorted(int(i) for i in rng.integers(0, 2, size=order_f))):
                  float(rng.uniform(-1, 1)) for _ in range(3)}
        g_vals = {tuple(sorted(int(i) for i in rng.integers(2, 4, size=order_g))):
                  float(rng.uniform(-1, 1)) for _ in range(3)}
        f = SymTensor(4, order_f, f_vals, prune=0.0)
        g = SymTensor(4, order_g, g_vals, prune=0.0)
        if f.is_zero() or g.is_zero():
            continue
        if not independent(f, g):
            return _exact_row("independence_factorization", math.inf, seed, tol)
        F = from_tensor(f, max_order=8)
        G = from_tensor(g, max_order=8)
        F2 = ordinary_product(F, F)
        G2 = ordinary_product(G, G)
        gap = max(gap, _rel_gap(inner_product(F2, G2),
                                expectation(F2) * expectation(G2)))
    return _exact_row("independence_factorization", gap, seed, tol)


def _check_norm_inequality(seed, n, tol):
    rng = np.random.default_rng(seed)
    r2 = math.sqrt(2.0)
    worst = 0.0
    for _ in range(20):
        dim = int(rng.integers(1, 4))
        F = random_chaos(rng, dim, 3, 8, 4)
        G = random_chaos(rng, dim, 3, 8, 4)
        lhs = gamma_norm(wick_product(F, G), 1.0)
        rhs = gamma_norm(F, r2) * gamma_norm(G, r2)
        worst = max(worst, (lhs - rhs) / max(1.0, rhs))
    return _exact_row("wick_norm_inequality", max(0.0, worst), seed, tol)


def _check_translation_laws(seed, n, tol):
    rng = np.random.default_rng(seed)
    gap = 0.0
    for _ in range(10):
        dim = int(rng.integers(1, 4))
        F = random_chaos(rng, dim, 3, 8, 4)
        G = random_chaos(rng, dim, 3, 8, 4)
        y = [float(v) for v in rng.uniform(-1.0, 1.0, size=dim)]
        eta = [float(v) for v in rng.uniform(-1.0, 1.0, size=dim)]
        FG = wick_product(F, G)
        gap = max(gap, coeff_distance(translate(FG, y),
                                      wick_product(translate(F, y), translate(G, y))))
        j = int(rng.integers(0, dim))
        gap = max(gap, coeff_distance(
            derivative_dir(FG, j),
            add(wick_product(derivative_dir(F, j), G),
                wick_product(F, derivative_dir(G, j)))))
        gap = max(gap, _rel_gap(s_transform(translate(F, y), eta),
                                s_transform(F, [a + b for a, b in zip(y, eta)])))
    return _exact_row("translation_laws", gap, seed, tol)


def _check_renorm_product_law(seed, n, tol):
    rng = np.random.default_rng(seed)
    gap = 0.0
    for _ in range(20):
        dim = int(rng.integers(1, 4))
        p = random_poly(rng, dim, 4, 4, 8)
        q = random_poly(rng, dim, 4, 4, 8)
        v = random_variances(rng, dim)
        gap = max(gap, renorm_product_check(p, q, v))
    return _exact_row("renorm_product_law", gap, seed, tol)


def _check_wick_exp_series(seed, n, tol):
    gap = 0.0
    for lam in (0.2, -0.2, 0.5, -0.5, 0.8, -0.8):
        we = wick_exp_square(lam, K=120)
        for x in np.linspace(-2.0, 2.0, 9):
            gap = max(gap, abs(evaluate_at(we.series, [float(x)]) - we.closed(float(x))))
    return _exact_row("wick_exp_series_closed", gap, seed, tol)


# -- Monte Carlo cross-checks -------------------------------------------------


def _check_mean_zero_mc(seed, n, tol):
    F = ChaosVector(1, 2, {MultiIndex(((0, 2),)): 1.0})
    return _mc_row("mean_zero_mc", estimate_expectation(F, n, seed), 0.0)


def _check_second_moment_mc(seed, n, tol):
    e1 = ChaosVector.coordinate(0, 1, 2)
    return _mc_row("second_moment_mc", estimate_pair_expectation(e1, e1, n, seed), 1.0)


def _check_stransform_pairing_mc(seed, n, tol):
    rng = np.random.default_rng(seed)
    F = random_chaos(rng, 2, 3, 6, 4)
    xi = [0.4, -0.3]
    return _mc_row("stransform_pairing_mc", s_transform_mc(F, xi, n, seed),
                   s_transform(F, xi))


def _check_quartic_norm_mc(seed, n, tol):
    e1 = ChaosVector.coordinate(0, 1, 2)
    return _mc_row("quartic_norm_mc", estimate_lp_norm(e1, 4.0, n, seed), 3.0 ** 0.25)


def _check_icopy_poly_mc(seed, n, tol):
    p = PolySeries(1, {MultiIndex(((0, 3),)): 1.0, MultiIndex(((0, 1),)): -2.0}, 8)
    v = [1.5]
    x = [1.2]
    est = wick_order_icopy_mc(p, v, [x], n, seed)[0]
    return _mc_row("icopy_poly_mc", est, wick_order_icopy_exact(p, v, x))


def _check_wick_pairing_mc(seed, n, tol):
    rng = np.random.default_rng(seed)
    F = random_chaos(rng, 2, 2, 4, 3)
    G = random_chaos(rng, 2, 2, 4, 3)
    f = [0.8, -0.5]
    g = [0.3, 0.9]
    A = wick_product(F, ChaosVector.linear(f, max_order=F.max_order))
    B = wick_product(G, ChaosVector.linear(g, max_order=G.max_order))
    return _mc_row("wick_pairing_mc", estimate_pair_expectation(A, B, n, seed),
                   inner_product(A, B))


CHECKS: dict[str, Callable[[int, int, float], CheckRow]] = {
    "wick_convolution_vs_malliavin": _check_wick_vs_malliavin,
    "product_vs_wick_gradients": _check_product_vs_wick_gradients,
    "product_pointwise": _check_product_pointwise,
    "chaos_isometry": _check_isometry,
    "exponential_vector_law": _check_exponential_vector_law,
    "stransform_multiplicative": _check_stransform_multiplicative,
    "gaussian_wick_chain": _check_gaussian_wick_chain,
    "wick_gaussian_pairing": _check_wick_gaussian_pairing,
    "hu_meyer_roundtrip": _check_hu_meyer_roundtrip,
    "stratonovich_product_sum": _check_stratonovich_product_sum,
    "stratonovich_pointwise": _check_stratonovich_pointwise,
    "moment_identity": _check_moment_identity,
    "icopy_exact": _check_icopy_exact,
    "hypercontractivity": _check_hypercontractivity,
    "independence_factorization": _check_independence,
    "wick_norm_inequality": _check_norm_inequality,
    "translation_laws": _check_translation_laws,
    "renorm_product_law": _check_renorm_product_law,
    "wick_exp_series_closed": _check_wick_exp_series,
    "mean_zero_mc": _check_mean_zero_mc,
    "second_moment_mc": _check_second_moment_mc,
    "stransform_pairing_mc": _check_stransform_pairing_mc,
    "quartic_norm_mc": _check_quartic_norm_mc,
    "icopy_poly_mc": _check_icopy_poly_mc,
    "wick_pairing_mc": _check_wick_pairing_mc,
}


def run_checks(names: Sequence[str] | None = None, seed: int = 0,
               n_samples: int = 10 ** 6, tolerance: float = 1e-9) -> list[CheckRow]:
    """Run the named identities (all by default) and return their rows.

    Each row derives its own seed from the base seed and its position, so
    single-identity runs reproduce the corresponding row of a full run.
    """
    selected = list(CHECKS) if names is None else list(names)
    rows = []
    for name in selected:
        if name not in CHECKS:
            raise KeyError(f"unknown identity {name!r}")
        idx = list(CHECKS).index(name)
        rows.append(CHECKS[name](seed + 101 * idx, n_samples, tolerance))
    return rows
