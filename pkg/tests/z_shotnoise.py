#!/usr/bin/env python
#
#  Tests for the Poisson counting Monte Carlo and the estimator curves.

import math

import numpy as np
import pytest

from qstate import make_state
from backaction import ComponentSet, attenuator, phase
from backaction import exact_postselection_prob, estimate_re_weak_value
from qubitmeter import meter_from_strength, couple_cnot, readout_sigma
from qubitmeter import postselect_meter_probs
from shotnoise import CountingPlan, make_stream, sample_poisson
from shotnoise import Accumulator, summarize, simulate_estimator
from shotnoise import analytic_sigma, fig3_dataset, canonical_states
from shotnoise import trials_table, TrialResult, RE, IM
from wverror import NegativeMean, BadRange, DegenerateBaseline
from wverror import InapplicableParam


def test_streams_are_reproducible():
    a = make_stream(42, 3).poisson(100.0, size=5)
    b = make_stream(42, 3).poisson(100.0, size=5)
    c = make_stream(42, 4).poisson(100.0, size=5)
    assert list(a) == list(b)
    assert list(a) != list(c)


def test_sample_poisson():
    s = make_stream(0, 0)
    assert sample_poisson(0.0, s) == 0
    with pytest.raises(NegativeMean):
        sample_poisson(-1.0, s)
    with pytest.raises(NegativeMean):
        sample_poisson(float('nan'), s)
    draws = [sample_poisson(50.0, make_stream(1, i)) for i in range(2000)]
    assert np.mean(draws) == pytest.approx(50.0, abs=0.8)
    assert np.var(draws, ddof=1) == pytest.approx(50.0, rel=0.15)


@pytest.mark.parametrize('mean', [100.0, 10000.0])
def test_sample_poisson_large_means(mean):
    draws = np.array([sample_poisson(mean, make_stream(2, i))
                      for i in range(2000)])
    assert abs(draws.mean() - mean) <= 5.0 * math.sqrt(mean / 2000)
    assert np.var(draws, ddof=1) == pytest.approx(mean, rel=0.15)


def test_plan_validation():
    with pytest.raises(BadRange):
        CountingPlan(n_ref_mean=0)
    with pytest.raises(BadRange):
        CountingPlan(trials=0)
    with pytest.raises(BadRange):
        CountingPlan(seed=-1)


def test_accumulator_merge_is_associative():
    xs = [0.5, 1.5, -2.0, 3.25, 0.0, 7.5]
    whole = Accumulator()
    for x in xs:
        whole.add(x)
    left, right = Accumulator(), Accumulator()
    for x in xs[:2]:
        left.add(x)
    for x in xs[2:]:
        right.add(x)
    merged = left.merge(right)
    assert merged.count == whole.count
    assert merged.mean == pytest.approx(np.mean(xs))
    assert merged.std == pytest.approx(np.std(xs, ddof=1))


def test_summarize_skips_invalid():
    trials = [TrialResult(0, 10, 9, 0.5, True),
              TrialResult(1, 0, 3, float('nan'), False),
              TrialResult(2, 12, 10, 1.5, True)]
    s = summarize(trials)
    assert (s.count, s.invalid) == (2, 1)
    assert s.mean == pytest.approx(1.0)


def test_analytic_sigma_canonical():
    ratio = abs(2.0 - math.exp(-0.05)) ** 2
    sigma = analytic_sigma(ratio, 10000, 0.05, RE)
    assert sigma == pytest.approx(0.152, abs=1e-3)
    assert analytic_sigma(ratio, 40000, 0.05, IM) == pytest.approx(0.5 * sigma)
    with pytest.raises(BadRange):
        analytic_sigma(0.0, 10000, 0.05)


@pytest.mark.parametrize('alpha', [0.02, 0.05, 0.1])
def test_monte_carlo_matches_analytic_sigma(alpha):
    pre, post = canonical_states()
    plan = CountingPlan(n_ref_mean=10000, seed=0, trials=1000)
    trials = simulate_estimator(pre, post, [attenuator(1, alpha)], plan)
    s = summarize(trials)
    assert s.count == 1000
    ratio = abs(2.0 - math.exp(-alpha)) ** 2
    sigma = analytic_sigma(ratio, 10000, alpha, RE)
    assert abs(s.std - sigma) <= 0.1 * sigma
    assert abs(s.mean + 1.0) <= 4 * sigma / math.sqrt(1000) + 0.01


def test_monte_carlo_mean_follows_exact_estimate():
    # path 0 carries weak value 1; the infinite-count estimate sits near
    # 1 - alpha, well away from the weak value
    pre, post = make_state([1, 1, 1]), make_state([1, 1, -1])
    alpha = 0.1
    r = exact_postselection_prob(pre, post, [attenuator(0, alpha)],
                                 threshold=math.inf)
    limit = estimate_re_weak_value(r.exact, r.baseline, alpha)
    trials = simulate_estimator(pre, post, [attenuator(0, alpha)],
                                CountingPlan(1e5, 9, 1000))
    mean = summarize(trials).mean
    assert abs(mean - limit) <= 0.01
    assert abs(mean - 1.0) >= 0.05


def test_invalid_trial_rate():
    pre, post = canonical_states()
    trials = simulate_estimator(pre, post, [attenuator(1, 0.05)],
                                CountingPlan(1.0, 4, 2000))
    s = summarize(trials)
    assert s.count + s.invalid == 2000
    assert s.invalid / 2000 == pytest.approx(math.exp(-1.0), abs=0.05)
    assert all(math.isnan(t.estimate) for t in trials if not t.valid)


def test_trials_are_independent_of_order():
    pre, post = canonical_states()
    full = simulate_estimator(pre, post, [attenuator(1, 0.05)],
                              CountingPlan(10000, 7, 20))
    short = simulate_estimator(pre, post, [attenuator(1, 0.05)],
                               CountingPlan(10000, 7, 5))
    assert full[:5] == short


def test_phase_estimator_trials():
    pre, post = make_state([1, 1]), make_state([1, 1j])
    trials = simulate_estimator(pre, post, ComponentSet([phase(1, 0.05)]),
                                CountingPlan(1e6, 3, 200))
    assert summarize(trials).mean == pytest.approx(-0.5, abs=0.05)


def test_meter_trials():
    pre, post = canonical_states()
    trials = simulate_estimator(pre, post, meter_from_strength(0.5),
                                CountingPlan(10000, 1, 300))
    assert all(t.n_exp <= t.n_ref for t in trials)
    # G = 0.5 readout is about -0.48
    assert summarize(trials).mean == pytest.approx(-0.477, abs=0.05)


def test_estimator_needs_single_pure_component():
    pre, post = canonical_states()
    plan = CountingPlan(100, 0, 2)
    with pytest.raises(InapplicableParam):
        simulate_estimator(pre, post, [], plan)
    with pytest.raises(InapplicableParam):
        simulate_estimator(pre, post, [phase(1, 0.1), attenuator(1, 0.1)],
                           plan)


def test_degenerate_baseline():
    with pytest.raises(DegenerateBaseline):
        simulate_estimator(make_state([1, 1]), make_state([1, -1]),
                           [attenuator(1, 0.05)], CountingPlan(100, 0, 2))


def test_trials_table():
    pre, post = canonical_states()
    t = trials_table(simulate_estimator(pre, post, [attenuator(1, 0.05)],
                                        CountingPlan(100, 0, 3)))
    assert t.colnames == ['trial', 'n_ref', 'n_exp', 'estimate', 'valid']
    assert list(t['trial']) == ['0', '1', '2']


def test_fig3_limits():
    fig_a, fig_b = fig3_dataset()
    assert len(fig_a) == len(fig_b) == 100
    assert float(fig_a['G'][0]) == pytest.approx(1e-3)
    assert abs(float(fig_a['readout_ideal'][0]) + 1.0) <= 1e-2
    assert float(fig_b['alpha'][0]) == pytest.approx(5e-3)
    assert abs(float(fig_b['n_est_ideal'][0]) + 1.0) <= 1e-2
    g = [float(x) for x in fig_a['G']]
    assert g == sorted(g)


def test_fig3_readout_sigma_is_binomial():
    fig_a, _ = fig3_dataset(n_points=4)
    pre, post = canonical_states()
    for g, sigma in zip(fig_a['G'], fig_a['readout_sigma']):
        m = meter_from_strength(float(g))
        stats = postselect_meter_probs(couple_cnot(pre, m), post)
        n_post = 10000 * stats.prob_phi / 0.1
        assert float(sigma) == pytest.approx(
            readout_sigma(stats.prob_1_given_phi, n_post, m), rel=1e-9)


def test_fig3_sigma_scales_with_counts():
    _, b1 = fig3_dataset(n_ref_mean=10000, n_points=5)
    _, b4 = fig3_dataset(n_ref_mean=40000, n_points=5)
    for s1, s4 in zip(b1['n_est_sigma'], b4['n_est_sigma']):
        assert float(s4) == pytest.approx(0.5 * float(s1), rel=1e-12)


def test_fig3_monte_carlo_columns():
    a, b = fig3_dataset(n_points=3, trials=50, seed=5)
    assert a.colnames[-2:] == ['readout_mc_mean', 'readout_mc_std']
    assert b.colnames[-2:] == ['n_est_mc_mean', 'n_est_mc_std']
    again = fig3_dataset(n_points=3, trials=50, seed=5)
    assert list(b['n_est_mc_mean']) == list(again[1]['n_est_mc_mean'])
    with pytest.raises(BadRange):
        fig3_dataset(n_points=1)
