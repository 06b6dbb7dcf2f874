import numpy as np

from phaselab.gaussian import GaussianState
from phaselab.generators import random_covariance_state, random_invariant_state
from phaselab.verify import run_verify


def test_all_checks_pass_at_default_plan():
    results = run_verify(n=4, h=0.01, seed=42)
    assert results, "suite must not be empty"
    for r in results:
        assert r.passed, f"{r.check} failed with residual {r.max_residual}"


def test_row_schema():
    row = run_verify(n=2, h=0.5, seed=0, trials=5)[0].to_row()
    assert set(row) == {"check", "status", "max_residual"}
    assert row["status"] in ("pass", "fail")


def test_expected_checks_present():
    names = {r.check for r in run_verify(n=2, h=0.5, seed=1, trials=5)}
    for required in (
        "prop_2_1_block_structure",
        "prop_2_3_symplectic_symmetry",
        "prop_5_1_norm_preservation",
        "theorem_7_1_trace_formula",
        "prop_7_1_invariance_criterion",
        "corollary_7_2_round_trip",
        "theorem_8_1_average_equality",
        "theorem_8_2_degeneracy_and_slope",
        "prop_8_1_hessian_s_commuting",
    ):
        assert required in names


def test_state_check_follows_expectation():
    rng = np.random.default_rng(0)
    good = random_invariant_state(rng, 2)
    bad = random_covariance_state(rng, 2)

    def status(state, expect):
        rows = run_verify(n=2, h=0.5, seed=2, state=state, expect_state_invariant=expect, trials=5)
        return {r.check: r.passed for r in rows}["state_symplectic_invariance"]

    assert status(good, True)
    assert not status(good, False)
    assert status(bad, False)
    assert not status(bad, True)


def test_deterministic_given_seed():
    a = run_verify(n=3, h=0.02, seed=11, trials=8)
    b = run_verify(n=3, h=0.02, seed=11, trials=8)
    assert [(r.check, r.passed, r.max_residual) for r in a] == [
        (r.check, r.passed, r.max_residual) for r in b
    ]


def test_passes_across_dimensions_and_scales():
    for n, h, seed in [(2, 1.0, 5), (6, 0.001, 6)]:
        state = GaussianState((h / n) * np.eye(2 * n))
        for r in run_verify(n=n, h=h, seed=seed, state=state, trials=8):
            assert r.passed, f"n={n} h={h}: {r.check} residual {r.max_residual}"
