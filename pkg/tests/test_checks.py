"""The named identity battery behind the check command."""

import pytest

from wickchaos.checks import CHECKS, CheckRow, run_checks

EXACT_ROWS = [name for name in CHECKS if not name.endswith("_mc")]


def test_registry_names_are_dsl_safe():
    # every name must lex as a single identifier in `check <name>`
    for name in CHECKS:
        assert name.replace("_", "a").isalnum(), name
        assert not name[0].isdigit()


def test_run_all_returns_ordered_rows():
    rows = run_checks(seed=0, n_samples=500)
    assert [r.identity for r in rows] == list(CHECKS)
    assert all(isinstance(r, CheckRow) for r in rows)
    # per-row seeds are distinct so MC rows draw independent streams
    seeds = [r.seed for r in rows]
    assert len(set(seeds)) == len(seeds)


def test_exact_rows_pass_at_tiny_sample_counts():
    rows = run_checks(EXACT_ROWS, seed=3, n_samples=500)
    for row in rows:
        assert row.passed, row.identity
        assert row.std_error == 0.0
        assert row.zscore == 0.0
        assert row.estimate <= 1e-9


def test_report_obj_shape():
    row = run_checks(["chaos_isometry"], seed=0, n_samples=500)[0]
    obj = row.report_obj()
    assert list(obj) == ["identity", "exact", "estimate", "std_error",
                         "zscore", "seed"]
    assert obj["identity"] == "chaos_isometry"
    assert obj["exact"] == 0.0


def test_selected_subset_and_unknown_name():
    rows = run_checks(["moment_identity", "translation_laws"], seed=1,
                      n_samples=500)
    assert [r.identity for r in rows] == ["moment_identity", "translation_laws"]
    with pytest.raises(KeyError):
        run_checks(["no_such_identity"], seed=0, n_samples=500)


def test_mc_rows_report_positive_se():
    rows = run_checks(["mean_zero_mc", "second_moment_mc"], seed=0,
                      n_samples=20000)
    for row in rows:
        assert row.std_error > 0
        assert row.passed
        assert abs(row.zscore) <= 3.0


def test_tolerance_is_enforced():
    # an impossible tolerance flips exact rows to failed
    rows = run_checks(["wick_exp_series_closed"], seed=0, n_samples=500,
                      tolerance=1e-30)
    assert not rows[0].passed


def test_deterministic_given_seed():
    a = run_checks(["stransform_pairing_mc"], seed=5, n_samples=5000)[0]
    b = run_checks(["stransform_pairing_mc"], seed=5, n_samples=5000)[0]
    assert a.estimate == b.estimate and a.std_error == b.std_error


@pytest.mark.heavy
def test_full_battery_default_samples():
    rows = run_checks(seed=0, n_samples=10 ** 6)
    assert all(r.passed for r in rows)
