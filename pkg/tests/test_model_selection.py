from __future__ import annotations

import csv
import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import toy
from skewgarch.distributions import Mechanism, SkewMechanism
from skewgarch.garch import GarchParams, simulate
from skewgarch.inference import SamplerConfig, rwm_sample
from skewgarch.model_selection import (
    EstimatorError,
    ModelEvidence,
    bridge_sampling,
    comparison_report,
    estimate_log_marginal,
    importance_sampling,
    posterior_model_probs,
    write_report,
)

# Published decimal-log evidence and probability rows, in report column order
# (skewed models first, symmetric last).
PUBLISHED_IDS = ("M1", "M2", "M3", "M4", "M5", "M6", "M0")
PUBLISHED_LOG10 = (-1559.45, -1558.50, -1558.78, -1558.41, -1560.82, -1560.10, -1559.06)
PUBLISHED_ALL = (0.0353, 0.3152, 0.1654, 0.3878, 0.0015, 0.0079, 0.0868)
PUBLISHED_SKEWED = (0.0387, 0.3452, 0.1811, 0.4246, 0.0017, 0.0087)


def _evidence(values, ids=None):
    ids = ids or [f"M{i}" for i in range(len(values))]
    assert len(ids) == len(values)
    return [ModelEvidence(m, float(v), "fixture") for m, v in zip(ids, values)]


def test_published_probability_rows():
    full = posterior_model_probs(_evidence(PUBLISHED_LOG10, PUBLISHED_IDS))
    np.testing.assert_allclose(full.posterior_probs, PUBLISHED_ALL, atol=5e-4)
    skewed = posterior_model_probs(_evidence(PUBLISHED_LOG10[:6], PUBLISHED_IDS[:6]))
    np.testing.assert_allclose(skewed.posterior_probs, PUBLISHED_SKEWED, atol=5e-4)


def test_dropping_symmetric_row_renormalises():
    full = np.array(PUBLISHED_ALL)
    np.testing.assert_allclose(full[:6] / full[:6].sum(), PUBLISHED_SKEWED, atol=5e-4)


def test_equal_evidence_and_priors():
    comp = posterior_model_probs(_evidence([-3.0, -3.0]))
    assert comp.posterior_probs == (0.5, 0.5)
    assert sum(comp.prior_probs) == 1.0
    comp = posterior_model_probs(_evidence([-3.0, -3.0]), [0.2, 0.8])
    assert comp.posterior_probs == pytest.approx((0.2, 0.8), abs=1e-15)
    assert comp.probability("M1") == pytest.approx(0.8)


def test_input_validation():
    with pytest.raises(ValueError):
        posterior_model_probs([])
    with pytest.raises(ValueError):
        posterior_model_probs(_evidence([1.0, 2.0]), [1.0])
    with pytest.raises(ValueError):
        posterior_model_probs(_evidence([1.0, 2.0]), [0.7, 0.7])
    with pytest.raises(ValueError):
        posterior_model_probs(_evidence([1.0, 2.0]), [1.5, -0.5])
    with pytest.raises(ValueError):
        ModelEvidence("M0", math.inf, "x")
    with pytest.raises(ValueError):
        ModelEvidence("M0", 1.0, "x", mc_se=-1.0)


# Multiples of 2**-20: adding two of them is exact in float, so shifting the
# inputs is a true translation rather than a rounding of each value.
def _grid(limit: float):
    return st.integers(-int(limit * 2**20), int(limit * 2**20)).map(lambda k: k / 2**20)


log10_lists = st.lists(_grid(5000.0), min_size=1, max_size=8)


@given(values=log10_lists, shift=_grid(1000.0))
@settings(max_examples=200, deadline=None)
def test_translation_invariance(values, shift):
    a = posterior_model_probs(_evidence(values)).posterior_probs
    b = posterior_model_probs(_evidence([v + shift for v in values])).posterior_probs
    np.testing.assert_allclose(a, b, rtol=0, atol=1e-14)
    assert abs(sum(a) - 1.0) < 1e-12


@given(values=st.lists(st.floats(-20.0, 20.0), min_size=2, max_size=8), bump=st.floats(0.01, 5.0), data=st.data())
@settings(max_examples=200, deadline=None)
def test_monotonicity(values, bump, data):
    i = data.draw(st.integers(0, len(values) - 1))
    before = posterior_model_probs(_evidence(values)).posterior_probs
    raised = list(values)
    raised[i] += bump
    after = posterior_model_probs(_evidence(raised)).posterior_probs
    assert after[i] >= before[i]
    if before[i] < 0.99:  # near 1 the gain can be below float resolution
        assert after[i] > before[i]
    for j in range(len(values)):
        if j != i:
            assert after[j] <= before[j] + 1e-16


def test_report_layout(tmp_path):
    ev = _evidence(PUBLISHED_LOG10, PUBLISHED_IDS)
    report = comparison_report(ev, {"M4": 0.9972})
    assert report["models"] == ["M1", "M2", "M3", "M4", "M5", "M6", "M0"]
    rows = report["rows"]
    assert rows["posterior_prob_all"]["M4"] == pytest.approx(0.3878, abs=5e-4)
    assert rows["posterior_prob_skewed"]["M4"] == pytest.approx(0.4246, abs=5e-4)
    assert rows["posterior_prob_skewed"]["M0"] is None
    assert rows["prob_positive"]["M4"] == 0.9972 and rows["prob_positive"]["M1"] is None
    write_report(report, tmp_path, {"note": "fixture"})
    payload = json.loads((tmp_path / "comparison.json").read_text())
    assert payload["note"] == "fixture"
    with open(tmp_path / "comparison.csv") as fh:
        table = list(csv.reader(fh))
    assert table[0] == ["quantity", "M1", "M2", "M3", "M4", "M5", "M6", "M0"]
    assert [r[0] for r in table[1:]] == [
        "log10_marginal", "log10_marginal_mc_se", "posterior_prob_all", "posterior_prob_skewed", "prob_positive",
    ]


def test_report_single_model_and_priors():
    report = comparison_report(_evidence([-10.0], ["M3"]))
    assert report["rows"]["posterior_prob_all"] == {"M3": 1.0}
    # priors follow their models through the reordering
    report = comparison_report(_evidence([-1.0, -1.0], ["M0", "M2"]), prior_probs=[0.25, 0.75])
    assert report["prior_probs"] == {"M2": 0.75, "M0": 0.25}
    assert report["rows"]["posterior_prob_all"]["M2"] == pytest.approx(0.75)


# --- estimators on the conjugate toy ----------------------------------------------


def test_bridge_covers_exact_value_and_is_unbiased():
    errors, ses, hits = [], [], 0
    for rep in range(50):
        y = toy.data(rep)
        draws = toy.posterior_draws(y, rep)
        est = bridge_sampling(toy.log_kernel(y), draws.samples, seed=rep, log_kernel_samples=draws.log_kernel)
        err = est.log_marginal - toy.exact_log_marginal(y)
        errors.append(err)
        ses.append(est.mc_se)
        hits += abs(err) < 3 * est.mc_se
    assert hits >= 48
    assert abs(np.mean(errors)) < math.sqrt(np.mean(np.square(ses)))


def test_bridge_matches_without_precomputed_kernel():
    y = toy.data(3)
    draws = toy.posterior_draws(y, 3)
    a = bridge_sampling(toy.log_kernel(y), draws.samples, seed=1)
    b = bridge_sampling(toy.log_kernel(y), draws.samples, seed=1, log_kernel_samples=draws.log_kernel)
    assert a.log_marginal == pytest.approx(b.log_marginal, abs=1e-12)


def test_identical_models_identical_estimates():
    y = toy.data(4)
    draws = toy.posterior_draws(y, 4)
    a = bridge_sampling(toy.log_kernel(y), draws.samples, seed=2)
    b = bridge_sampling(toy.log_kernel(y), draws.samples, seed=2)
    assert a == b


def test_importance_sampling_fallback():
    y = toy.data(5)
    draws = toy.posterior_draws(y, 5)
    est = importance_sampling(toy.log_kernel(y), draws.samples, seed=0, n_proposal=20000)
    assert abs(est.log_marginal - toy.exact_log_marginal(y)) < 4 * est.mc_se + 1e-3
    assert est.method == "importance"


def test_non_convergence_is_reported():
    y = toy.data(6)
    draws = toy.posterior_draws(y, 6)
    with pytest.raises(EstimatorError, match="did not converge"):
        bridge_sampling(toy.log_kernel(y), draws.samples, seed=0, max_iter=1, tol=0.0)
    with pytest.raises(ValueError):
        bridge_sampling(toy.log_kernel(y), draws.samples[:4], seed=0)


def test_garch_evidence_end_to_end():
    truth = GarchParams(0.1, 0.05, 0.08, 0.88, 8.0)
    y = simulate(truth, SkewMechanism(Mechanism.FERREIRA_STEEL, (1.0,)), 300, 2)
    chain = rwm_sample(y, "M6", config=SamplerConfig(iterations=1500, burn_in=500, seed=1, init="mode"))
    ev = estimate_log_marginal(y, "M6", None, chain, seed=3)
    assert ev.model_id == "M6" and ev.estimator == "bridge"
    assert math.isfinite(ev.log10_marginal) and ev.mc_se > 0
    imp = estimate_log_marginal(y, "M6", None, chain, "importance", seed=3)
    assert abs(imp.log10_marginal - ev.log10_marginal) < 0.5
    with pytest.raises(ValueError):
        estimate_log_marginal(y, "M2", None, chain)
    with pytest.raises(ValueError):
        estimate_log_marginal(y, "M6", None, chain, "harmonic")


def test_invalid_kernel_values_are_reported():
    y = toy.data(7)
    draws = toy.posterior_draws(y, 7)
    kernel = toy.log_kernel(y)

    def broken(x):
        return math.inf if x[0] > 1.2 else kernel(x)

    with pytest.raises(EstimatorError, match="NaN or \\+inf"):
        bridge_sampling(broken, draws.samples, seed=0)
