"""Probabilists' Hermite basis, pinned against independent formulas."""

import numpy as np
import pytest

from wickchaos.errors import OrderOverflowError
from wickchaos.hermite import (ORDER_LIMIT, factorial, hermite_eval,
                               hermite_linearize, hermite_rows, hermite_shift,
                               hermite_to_power, power_to_hermite)

from helpers import expect_1d, gauss_rule, hermite_np, hermite_sum


def test_small_orders_closed_forms():
    for x in np.linspace(-3, 3, 13):
        assert hermite_eval(0, x) == 1.0
        assert hermite_eval(1, x) == x
        assert abs(hermite_eval(2, x) - (x * x - 1)) < 1e-12
        assert abs(hermite_eval(3, x) - (x ** 3 - 3 * x)) < 1e-12
        assert abs(hermite_eval(4, x) - (x ** 4 - 6 * x * x + 3)) < 1e-12


def test_recurrence_matches_explicit_sum():
    rng = np.random.default_rng(11)
    for _ in range(200):
        n = int(rng.integers(0, 13))
        x = float(rng.normal(scale=2.0))
        ref = hermite_sum(n, x)
        got = hermite_eval(n, x)
        assert abs(got - ref) <= 1e-9 * max(1.0, abs(ref))


def test_recurrence_matches_numpy_series():
    rng = np.random.default_rng(12)
    for _ in range(200):
        n = int(rng.integers(0, 21))
        x = float(rng.normal(scale=1.5))
        ref = hermite_np(n, x)
        got = hermite_eval(n, x)
        assert abs(got - ref) <= 1e-9 * max(1.0, abs(ref))


def test_rows_agree_with_scalar_eval():
    rng = np.random.default_rng(13)
    x = rng.normal(size=40)
    rows = hermite_rows(x, 10)
    assert rows.shape == (11, 40)
    for n in range(11):
        for j in range(40):
            assert abs(rows[n, j] - hermite_eval(n, x[j])) < 1e-11


def test_orthogonality_under_gaussian_weight():
    # E[H_m H_n] = delta_{mn} n!, checked by quadrature
    x, w = gauss_rule(40)
    for m in range(7):
        for n in range(7):
            val = float(np.dot(w, hermite_np(m, x) * hermite_np(n, x)))
            want = factorial(n) if m == n else 0.0
            assert abs(val - want) < 1e-8


def test_linearize_pointwise():
    rng = np.random.default_rng(14)
    for _ in range(100):
        a = int(rng.integers(0, 8))
        b = int(rng.integers(0, 8))
        x = float(rng.normal())
        coeffs = hermite_linearize(a, b)
        rebuilt = sum(c * hermite_eval(k, x) for k, c in coeffs.items())
        direct = hermite_eval(a, x) * hermite_eval(b, x)
        assert abs(rebuilt - direct) <= 1e-9 * max(1.0, abs(direct))


def test_linearize_known_cases():
    assert hermite_linearize(1, 1) == {2: 1.0, 0: 1.0}
    assert hermite_linearize(0, 5) == {5: 1.0}
    # H_2 H_1 = H_3 + 2 H_1
    assert hermite_linearize(2, 1) == {3: 1.0, 1: 2.0}


def test_shift_formula_pointwise():
    rng = np.random.default_rng(15)
    for _ in range(100):
        n = int(rng.integers(0, 9))
        a = float(rng.normal())
        x = float(rng.normal())
        coeffs = hermite_shift(n, a)
        rebuilt = sum(c * hermite_eval(k, x) for k, c in coeffs.items())
        direct = hermite_eval(n, x + a)
        assert abs(rebuilt - direct) <= 1e-9 * max(1.0, abs(direct))


def test_power_hermite_conversions():
    assert power_to_hermite(2) == {2: 1.0, 0: 1.0}
    assert power_to_hermite(3) == {3: 1.0, 1: 3.0}
    assert power_to_hermite(4) == {4: 1.0, 2: 6.0, 0: 3.0}
    assert hermite_to_power(3) == {3: 1.0, 1: -3.0}
    rng = np.random.default_rng(16)
    for n in range(10):
        # roundtrip through the other basis is the identity
        acc = {}
        for k, c in power_to_hermite(n).items():
            for j, d in hermite_to_power(k).items():
                acc[j] = acc.get(j, 0.0) + c * d
        acc = {j: v for j, v in acc.items() if abs(v) > 1e-9}
        assert acc == {n: pytest.approx(1.0)}
        x = float(rng.normal())
        val = sum(c * hermite_eval(k, x) for k, c in power_to_hermite(n).items())
        assert abs(val - x ** n) <= 1e-9 * max(1.0, abs(x) ** n)


def test_mean_of_hermite_is_zero():
    for n in range(1, 9):
        assert abs(expect_1d(lambda x, n=n: hermite_np(n, x))) < 1e-9


def test_factorial_table_and_caps():
    assert factorial(0) == 1.0
    assert factorial(5) == 120.0
    assert factorial(ORDER_LIMIT) > 0
    with pytest.raises(OrderOverflowError):
        factorial(ORDER_LIMIT + 1)
    with pytest.raises(ValueError):
        factorial(-1)


def test_eval_order_cap():
    with pytest.raises(OrderOverflowError):
        hermite_eval(65, 0.5)
    assert hermite_eval(65, 0.5, max_order=70) == hermite_eval(65, 0.5, max_order=65)
    with pytest.raises(ValueError):
        hermite_eval(-2, 0.0)
