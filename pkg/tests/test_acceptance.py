"""Acceptance suite: sixteen exact-oracle and statistical gates.

Each test prints a single [PASS]/[FAIL] line so the run doubles as a
readable report. Exact identities compare coefficient maps from two
independently coded routes; statistical gates use seeded Monte Carlo with
z-scores against exact values.
"""

import itertools
import json
import math
import subprocess
import sys

import numpy as np

from wickchaos.chaos import (ChaosVector, add, coeff_distance, evaluate,
                             evaluate_at, expectation, exponential_vector,
                             from_tensor, gamma_norm, inner_product, l2_norm,
                             ordinary_product, scale, second_quantization,
                             wick_product)
from wickchaos.dsl import BinOp, Pow, Var, parse_expr, pretty
from wickchaos.errors import DivergenceError
from wickchaos.malliavin import (HValuedChaos, derivative_dir,
                                 directional_derivative, divergence,
                                 product_via_wick_gradients,
                                 wick_via_malliavin, wick_with_gaussian)
from wickchaos.multiindex import MultiIndex
from wickchaos.renormalization import (PolySeries,
                                       series_condition, wick_exp_square,
                                       wick_order_icopy_exact,
                                       wick_order_icopy_mc, wick_order_poly,
                                       renorm_product_check)
from wickchaos.serialization import dumps, loads_chaos, loads_poly, loads_tensor
from wickchaos.stransform import s_transform, s_transform_mc, translate
from wickchaos.stratonovich import ito_from_stratonovich, stratonovich_integral
from wickchaos.tensors import SymTensor, basis_tensor, independent


def report(ok, label, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] {label}: {detail}"
    print(line, file=sys.__stdout__, flush=True)
    assert ok, line


def random_chaos(rng, dim, degree, max_order, n_terms=5):
    terms = {}
    for _ in range(n_terms):
        d = int(rng.integers(0, degree + 1))
        alpha = MultiIndex.from_indices(tuple(rng.integers(0, dim, size=d)))
        terms[alpha] = terms.get(alpha, 0.0) + float(rng.normal())
    return ChaosVector(dim, max_order, terms)


def random_tensor(rng, dim, order, n_terms=4):
    vals = {}
    for _ in range(n_terms):
        t = tuple(sorted(rng.integers(0, dim, size=order)))
        vals[t] = float(rng.normal())
    return SymTensor(dim, order, vals, prune=0.0)


def random_poly(rng, dim, degree, n_terms=5, truncation=None):
    terms = {}
    for _ in range(n_terms):
        d = int(rng.integers(0, degree + 1))
        alpha = MultiIndex.from_indices(tuple(rng.integers(0, dim, size=d)))
        terms[alpha] = terms.get(alpha, 0.0) + float(rng.normal())
    return PolySeries(dim, terms, truncation if truncation else degree)


def pair_corpus(seed, count, max_dim=4, half_degree=3):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        dim = int(rng.integers(1, max_dim + 1))
        F = random_chaos(rng, dim, half_degree, 2 * half_degree)
        G = random_chaos(rng, dim, half_degree, 2 * half_degree)
        yield rng, dim, F, G


def test_01_wick_product_two_routes():
    gap = 0.0
    for rng, dim, F, G in pair_corpus(101, 200):
        gap = max(gap, coeff_distance(wick_product(F, G),
                                      wick_via_malliavin(F, G)))
    report(gap <= 1e-9, "01 wick product: convolution vs derivative sum",
           f"200 pairs, max coefficient gap {gap:.3e}")


def test_02_ordinary_product_two_routes_and_pointwise():
    gap = 0.0
    point_gap = 0.0
    for k, (rng, dim, F, G) in enumerate(pair_corpus(102, 200)):
        P = ordinary_product(F, G)
        gap = max(gap, coeff_distance(P, product_via_wick_gradients(F, G)))
        if k < 20:  # 100 points split over the first 20 corpora
            pts = rng.normal(size=(5, dim))
            want = evaluate(F, pts) * evaluate(G, pts)
            got = evaluate(P, pts)
            denom = np.maximum(1.0, np.abs(want))
            point_gap = max(point_gap, float(np.max(np.abs(got - want) / denom)))
    ok = gap <= 1e-9 and point_gap <= 1e-8
    report(ok, "02 ordinary product: linearization vs wick-gradient routes",
           f"coefficient gap {gap:.3e}, pointwise relative gap {point_gap:.3e}")


def test_03_isometry():
    rng = np.random.default_rng(103)
    gap = 0.0
    for _ in range(100):
        dim = int(rng.integers(1, 4))
        F = random_chaos(rng, dim, 3, 6)
        via_square = expectation(ordinary_product(F, F))
        via_weights = sum(alpha.factorial() * c * c for alpha, c in F.items())
        gap = max(gap, abs(via_square - via_weights)
                  / max(1.0, abs(via_weights)))
    report(gap <= 1e-9, "03 chaos isometry: E[F^2] vs weighted coefficients",
           f"100 functionals, max relative gap {gap:.3e}")


def test_04_exponential_vector_law():
    rng = np.random.default_rng(104)
    gap = 0.0
    for _ in range(50):
        dim = int(rng.integers(1, 5))
        f = rng.uniform(-1, 1, size=dim)
        g = rng.uniform(-1, 1, size=dim)
        lhs = wick_product(exponential_vector(f.tolist(), 8),
                           exponential_vector(g.tolist(), 8), clip=True)
        rhs = exponential_vector((f + g).tolist(), 8)
        gap = max(gap, coeff_distance(lhs, rhs))
    report(gap <= 1e-9, "04 exponential vectors: eps(f) <> eps(g) = eps(f+g)",
           f"50 pairs at truncation 8, max gap {gap:.3e}")


def test_05_s_transform():
    rng = np.random.default_rng(105)
    gap = 0.0
    for _ in range(100):
        dim = int(rng.integers(1, 4))
        F = random_chaos(rng, dim, 3, 6)
        G = random_chaos(rng, dim, 3, 6)
        xi = rng.uniform(-0.8, 0.8, size=dim)
        lhs = s_transform(wick_product(F, G), xi)
        rhs = s_transform(F, xi) * s_transform(G, xi)
        gap = max(gap, abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs)))
    worst_z = 0.0
    for trial in range(3):
        F = random_chaos(rng, 2, 3, 3)
        xi = rng.uniform(-0.5, 0.5, size=2)
        est = s_transform_mc(F, xi, n=10 ** 6, seed=500 + trial)
        z = abs(est.zscore(s_transform(F, xi)))
        worst_z = max(worst_z, z)
    ok = gap <= 1e-9 and worst_z <= 3.0
    report(ok, "05 s-transform: multiplicative, Monte Carlo consistent",
           f"relative gap {gap:.3e}, worst |z| {worst_z:.2f} at 1e6 samples")


def test_06_gaussian_wick_chain():
    rng = np.random.default_rng(106)
    gap = 0.0
    for _ in range(100):
        dim = int(rng.integers(1, 4))
        F = random_chaos(rng, dim, 3, 8)
        g = rng.uniform(-1, 1, size=dim)
        lin = ChaosVector.linear(g.tolist(), max_order=8)
        routes = [
            wick_product(F, lin),
            add(ordinary_product(F, lin),
                scale(directional_derivative(F, g), -1.0)),
            divergence(HValuedChaos(tuple(scale(F, float(gj)) for gj in g))),
            wick_with_gaussian(F, g),
        ]
        for a, b in itertools.combinations(routes, 2):
            gap = max(gap, coeff_distance(a, b))
    report(gap <= 1e-9, "06 gaussian wick chain: four routes agree",
           f"100 instances, max pairwise gap {gap:.3e}")


def test_07_hu_meyer_roundtrip():
    rng = np.random.default_rng(107)
    gap = 0.0
    for _ in range(100):
        dim = int(rng.integers(1, 4))
        order = int(rng.integers(0, 6))
        f = random_tensor(rng, dim, order)
        gap = max(gap, coeff_distance(ito_from_stratonovich(f), from_tensor(f)))
    S4 = stratonovich_integral(basis_tensor(1, (0, 0, 0, 0)))
    point_gap = 0.0
    for x in np.linspace(-2.5, 2.5, 20):
        want = x ** 4
        got = evaluate_at(S4, [x])
        point_gap = max(point_gap, abs(got - want) / max(1.0, abs(want)))
    ok = gap <= 1e-9 and point_gap <= 1e-8
    report(ok, "07 hu-meyer: trace expansion inverts, quartic product sum",
           f"roundtrip gap {gap:.3e}, pointwise x^4 gap {point_gap:.3e}")


def taylor_exp_half_square(lam, K=40):
    terms = {}
    for k in range(K + 1):
        terms[MultiIndex([(0, 2 * k)])] = (lam / 2.0) ** k / math.factorial(k)
    return PolySeries(1, terms, truncation=2 * K)


def test_08_wick_exponential():
    series_gap = 0.0
    for lam in (-0.8, -0.5, -0.2, 0.2, 0.5, 0.8):
        K = 40 if abs(lam) <= 0.5 else 80  # tail rule: residual below 1e-8
        W = wick_exp_square(lam, K=K)
        for x in np.linspace(-2.0, 2.0, 17):
            series_gap = max(series_gap,
                             abs(evaluate_at(W.series, [float(x)]) - W.closed(float(x))))
    worst_z = 0.0
    pts = [[-1.4], [0.3], [1.1]]
    for i, lam in enumerate((-0.5, 0.5)):
        p = taylor_exp_half_square(lam)
        ests = wick_order_icopy_mc(p, [1.0], pts, n=10 ** 6, seed=800 + i)
        for est, x in zip(ests, pts):
            exact = wick_order_icopy_exact(p, [1.0], x)
            worst_z = max(worst_z, abs(est.zscore(exact)))
    raised = 0
    for lam in (1.0, -1.0, 1.7):
        try:
            wick_exp_square(lam)
        except DivergenceError:
            raised += 1
    ok = series_gap <= 1e-6 and worst_z <= 3.0 and raised == 3
    report(ok, "08 wick exponential: series vs closed form, imaginary-copy MC",
           f"series gap {series_gap:.3e}, worst |z| {worst_z:.2f}, "
           f"{raised}/3 divergence errors")


def test_09_moment_identity():
    rng = np.random.default_rng(109)
    gap = 0.0
    for _ in range(100):
        dim = int(rng.integers(1, 4))
        p = random_poly(rng, dim, 4)
        v = rng.uniform(0.3, 2.0, size=dim)
        lhs = l2_norm(wick_order_poly(p, v)) ** 2
        rhs = series_condition(p, v)
        gap = max(gap, abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs)))
    report(gap <= 1e-12, "09 moment identity: squared norm vs series condition",
           f"100 polynomials, max relative gap {gap:.3e}")


def test_10_imaginary_copy_exact():
    rng = np.random.default_rng(110)
    gap = 0.0
    for _ in range(100):
        dim = int(rng.integers(1, 4))
        p = random_poly(rng, dim, 6)
        v = rng.uniform(0.3, 2.0, size=dim)
        x = rng.normal(size=dim)
        via_moments = wick_order_icopy_exact(p, v, x)
        via_hermite = evaluate_at(wick_order_poly(p, v), x / np.sqrt(v))
        gap = max(gap, abs(via_moments - via_hermite)
                  / max(1.0, abs(via_hermite)))
    report(gap <= 1e-9, "10 imaginary copy: moment route vs hermite route",
           f"100 polynomials to degree 6, max relative gap {gap:.3e}")


def test_11_hypercontractivity():
    rng = np.random.default_rng(111)
    alpha = 1.0 / math.sqrt(3.0)
    violation = 0.0
    for _ in range(100):
        dim = int(rng.integers(1, 4))
        F = random_chaos(rng, dim, 3, 6)
        if F.n_terms() == 0:
            continue
        G = second_quantization(F, alpha)
        G2 = ordinary_product(G, G)
        lhs = inner_product(G2, G2) ** 0.25  # ||Gamma(alpha) F||_4
        rhs = l2_norm(F)
        violation = max(violation, (lhs - rhs) / max(1.0, rhs))
    e1 = ChaosVector.coordinate(0, 1, 4)
    Ge = second_quantization(e1, alpha)
    Ge2 = ordinary_product(Ge, Ge)
    ratio = inner_product(Ge2, Ge2) ** 0.25 / l2_norm(e1)
    want = 3.0 ** 0.25 / math.sqrt(3.0)
    probe_gap = abs(ratio - want)
    ok = violation <= 1e-12 and probe_gap <= 1e-12
    report(ok, "11 hypercontractivity at (2, 4, 3^-1/2)",
           f"worst violation {violation:.3e}, probe ratio {ratio:.10f} "
           f"vs {want:.10f}")


def test_12_independence_factorization():
    rng = np.random.default_rng(112)
    exact_gap = 0.0
    for _ in range(50):
        order_f = int(rng.integers(1, 3))
        order_g = int(rng.integers(1, 3))
        f = SymTensor(4, order_f,
                      {tuple(sorted(rng.integers(0, 2, size=order_f))):
                       float(rng.uniform(0.5, 1.5)) for _ in range(2)}, prune=0.0)
        g = SymTensor(4, order_g,
                      {tuple(sorted(rng.integers(2, 4, size=order_g))):
                       float(rng.uniform(0.5, 1.5)) for _ in range(2)}, prune=0.0)
        assert independent(f, g)
        F, G = from_tensor(f, max_order=8), from_tensor(g, max_order=8)
        F2, G2 = ordinary_product(F, F), ordinary_product(G, G)
        lhs = inner_product(F2, G2)  # E[F^2 G^2]
        rhs = expectation(F2) * expectation(G2)
        exact_gap = max(exact_gap, abs(lhs - rhs) / max(1.0, abs(rhs)))
    min_fail = math.inf
    for _ in range(50):
        order = int(rng.integers(1, 3))
        shared = tuple(sorted(rng.integers(0, 2, size=order)))
        f = SymTensor(4, order, {shared: float(rng.uniform(1.0, 2.0))}, prune=0.0)
        g = SymTensor(4, order, {shared: float(rng.uniform(1.0, 2.0))}, prune=0.0)
        assert not independent(f, g)
        F, G = from_tensor(f, max_order=8), from_tensor(g, max_order=8)
        F2, G2 = ordinary_product(F, F), ordinary_product(G, G)
        min_fail = min(min_fail, abs(inner_product(F2, G2)
                                     - expectation(F2) * expectation(G2)))
    ok = exact_gap <= 1e-9 and min_fail > 1e-6
    report(ok, "12 independence: zero contraction factorizes, overlap does not",
           f"factorization gap {exact_gap:.3e}, smallest overlap defect "
           f"{min_fail:.3e}")


def test_13_wick_norm_inequality():
    rng = np.random.default_rng(113)
    r2 = math.sqrt(2.0)
    min_slack = math.inf
    for _ in range(100):
        dim = int(rng.integers(1, 4))
        F = random_chaos(rng, dim, 3, 8)
        G = random_chaos(rng, dim, 3, 8)
        lhs = gamma_norm(wick_product(F, G), 1.0)
        rhs = gamma_norm(F, r2) * gamma_norm(G, r2)
        min_slack = min(min_slack, rhs - lhs)
    report(min_slack >= 0.0, "13 wick norm inequality at (sqrt2, sqrt2, 1)",
           f"100 pairs, smallest slack {min_slack:.3e}")


def test_14_translation_laws():
    rng = np.random.default_rng(114)
    gap = 0.0
    for _ in range(50):
        dim = int(rng.integers(1, 4))
        F = random_chaos(rng, dim, 3, 8)
        G = random_chaos(rng, dim, 3, 8)
        y = rng.uniform(-1, 1, size=dim)
        eta = rng.uniform(-1, 1, size=dim)
        FG = wick_product(F, G)
        gap = max(gap, coeff_distance(
            translate(FG, y),
            wick_product(translate(F, y), translate(G, y))))
        j = int(rng.integers(0, dim))
        gap = max(gap, coeff_distance(
            derivative_dir(FG, j),
            add(wick_product(derivative_dir(F, j), G),
                wick_product(F, derivative_dir(G, j)))))
        lhs = s_transform(translate(F, y), eta)
        rhs = s_transform(F, y + eta)
        gap = max(gap, abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs)))
    report(gap <= 1e-9, "14 translation: product law, leibniz rule, shift law",
           f"50 instances, max gap {gap:.3e}")


def test_15_renormalized_product_law():
    rng = np.random.default_rng(115)
    gap = 0.0
    for _ in range(100):
        dim = int(rng.integers(1, 4))
        p = random_poly(rng, dim, 4, n_terms=4, truncation=8)
        q = random_poly(rng, dim, 4, n_terms=4, truncation=8)
        v = rng.uniform(0.3, 2.0, size=dim)
        gap = max(gap, renorm_product_check(p, q, v))
    report(gap <= 1e-9, "15 renormalized products: :pq: = :p: <> :q:",
           f"100 pairs to degree 4, max gap {gap:.3e}")


def test_16_cli_dsl_and_serialization():
    node = parse_expr("a + b <> c ^ 2")
    golden = node == BinOp(op="+", left=Var(name="a"),
                           right=BinOp(op="<>", left=Var(name="b"),
                                       right=Pow(base=Var(name="c"), exponent=2)))
    golden = golden and pretty(node) == "a + b <> c^2"
    golden = golden and parse_expr(pretty(node)) == node

    rng = np.random.default_rng(116)
    bitwise = True
    for _ in range(50):
        F = random_chaos(rng, 3, 4, 4)
        text = dumps(F)
        bitwise = bitwise and loads_chaos(text) == F and dumps(loads_chaos(text)) == text
        f = random_tensor(rng, 3, 3)
        text = dumps(f)
        bitwise = bitwise and loads_tensor(text) == f and dumps(loads_tensor(text)) == text
        p = random_poly(rng, 2, 4)
        text = dumps(p)
        bitwise = bitwise and loads_poly(text) == p and dumps(loads_poly(text)) == text

    proc = subprocess.run([sys.executable, "-m", "wickchaos.cli", "-c",
                           "check all"], capture_output=True, text=True,
                          timeout=600)
    rows = [json.loads(l) for l in proc.stdout.splitlines() if l]
    complete = (proc.returncode == 0 and len(rows) >= 16
                and all(set(r) == {"identity", "exact", "estimate",
                                   "std_error", "zscore", "seed"} for r in rows)
                and all(abs(r["zscore"]) <= 3.0 for r in rows))
    ok = golden and bitwise and complete
    report(ok, "16 interface: grammar golden, bitwise JSON, check battery",
           f"golden {golden}, bitwise {bitwise}, check-all exit "
           f"{proc.returncode} with {len(rows)} rows")
