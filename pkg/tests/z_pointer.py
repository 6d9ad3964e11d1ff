#!/usr/bin/env python
#
#  Tests for the Gaussian pointer model.

import math

import numpy as np
import pytest
from astropy.io import ascii

from qstate import make_state, projector, diagonal, weak_value, inner
from qstate import WeakValueResult
from pointer import make_gaussian, default_pointer, displace, moments
from pointer import evolve_and_postselect, predicted_shifts
from pointer import width_convention_shift, ensemble_distribution
from pointer import dump_density_csv, dump_readout_csv, readout_of
from wverror import BadGrid, GridOverflow, DegenerateOverlap


@pytest.fixture(scope='module')
def pointer():
    return make_gaussian(1.0, 10.0, 4096)


@pytest.fixture
def canonical():
    return make_state([1, 1]), make_state([2, -1])


@pytest.fixture
def complex_pair():
    '''<|1><1|>_w = 0.5 - 0.5i.'''
    return make_state([1, 1]), make_state([1, 1j])


def test_gaussian_moments(pointer):
    mean_q, var_q, mean_p, var_p = moments(pointer)
    assert abs(pointer.norm() - 1.0) <= 1e-9
    assert abs(mean_q) <= 1e-12
    assert abs(var_q - 0.5) <= 1e-6
    assert abs(mean_p) <= 1e-12
    assert abs(var_q * var_p - 0.25) <= 1e-6


def test_gaussian_width_scaling():
    p = make_gaussian(2.0, 10.0, 4096)
    assert abs(moments(p)[1] - 2.0) <= 1e-6


@pytest.mark.parametrize('kw', [
    dict(sigma=1.0, n_points=1000),
    dict(sigma=1.0, n_points=128),
    dict(sigma=0.0),
    dict(sigma=1.0, half_width_sigmas=5.0),
])
def test_bad_grid(kw):
    with pytest.raises(BadGrid):
        make_gaussian(**kw)


def test_displace_moves_mean(pointer):
    shifted = displace(pointer, 1.25)
    mean_q = moments(pointer, shifted)[0]
    assert mean_q == pytest.approx(1.25, abs=1e-9)


def test_zero_coupling(pointer, canonical):
    pre, post = canonical
    out, r = evolve_and_postselect(pre, post, projector(2, 1), 0.0, pointer)
    assert r.postselect_prob == pytest.approx(0.1, abs=1e-12)
    assert abs(r.mean_q) <= 1e-12
    assert abs(r.mean_p) <= 1e-12
    assert abs(out.norm() - 1.0) <= 1e-9


def test_postselect_prob_approaches_overlap(pointer, canonical):
    pre, post = canonical
    base = abs(inner(post, pre)) ** 2
    for g in (0.05, 0.01, 0.001):
        _, r = evolve_and_postselect(pre, post, projector(2, 1), g, pointer)
        assert abs(r.postselect_prob - base) <= g * base


def test_real_weak_value_shift(pointer, canonical):
    pre, post = canonical
    obs = projector(2, 1)
    errs = []
    for g in (0.01, 0.005):
        _, r = evolve_and_postselect(pre, post, obs, g, pointer)
        dq, dp = predicted_shifts(weak_value(pre, post, obs), g, pointer)
        assert dq == pytest.approx(-g)
        assert abs(r.mean_q - dq) <= 0.05 * abs(dq)
        assert abs(dp) <= 1e-15
        errs.append(abs(r.mean_q - dq))
    assert errs[1] <= 0.6 * errs[0]


def test_complex_weak_value_shift(pointer, complex_pair):
    pre, post = complex_pair
    obs = projector(2, 1)
    wv = weak_value(pre, post, obs)
    errs = []
    for g in (0.01, 0.005):
        _, r = evolve_and_postselect(pre, post, obs, g, pointer)
        dq, dp = predicted_shifts(wv, g, pointer)
        assert dq == pytest.approx(0.5 * g)
        assert dp == pytest.approx(-0.5 * g, rel=1e-6)
        assert abs(r.mean_q - dq) <= 0.05 * abs(dq)
        assert abs(r.mean_p - dp) <= 0.05 * abs(dp)
        errs.append(abs(r.mean_p - dp))
    # mean_q is exactly g/2 here; only the momentum error shrinks
    assert errs[1] <= 0.6 * errs[0]


def test_width_convention_is_twice_grid_value(pointer, complex_pair):
    pre, post = complex_pair
    wv = weak_value(pre, post, projector(2, 1))
    g = 0.01
    _, dp = predicted_shifts(wv, g, pointer)
    assert width_convention_shift(wv, g, 1.0) == pytest.approx(2 * dp,
                                                               rel=1e-6)


def test_predicted_shift_examples(pointer):
    dq, dp = predicted_shifts(WeakValueResult(-1 + 0j, 1.0), 0.1, pointer)
    assert dq == pytest.approx(-0.1)
    assert dp == 0.0
    assert predicted_shifts(WeakValueResult(0j, 1.0), 0.3, pointer) \
        == (0.0, 0.0)


def test_degenerate_overlap(pointer):
    with pytest.raises(DegenerateOverlap):
        evolve_and_postselect(make_state([1, 1]), make_state([1, -1]),
                              projector(2, 1), 0.01, pointer)


def test_grid_overflow(pointer, canonical):
    pre, post = canonical
    with pytest.raises(GridOverflow):
        evolve_and_postselect(pre, post, projector(2, 1), 5.0, pointer)


def test_ensemble_weak_regime(pointer):
    pre = make_state([1, 1])
    ens = ensemble_distribution(pre, diagonal([0, 1]), 0.01, pointer)
    assert ens.integral() == pytest.approx(1.0, abs=1e-9)
    assert ens.mean() == pytest.approx(0.005, abs=1e-9)


def test_ensemble_no_coupling(pointer):
    pre = make_state([1, 2])
    ens = ensemble_distribution(pre, diagonal([0, 1]), 0.0, pointer)
    assert np.allclose(ens.density, pointer.density(), atol=1e-15)


def test_ensemble_strong_regime():
    g = 20.0
    pointer = default_pointer(1.0, 4096, g)
    pre = make_state([1, 2])
    ens = ensemble_distribution(pre, diagonal([0, 1]), g, pointer)
    centers, mass = ens.mode_weights()
    assert list(centers) == [0.0, 20.0]
    assert mass[0] == pytest.approx(0.2, abs=1e-6)
    assert mass[1] == pytest.approx(0.8, abs=1e-6)
    assert ens.mean() == pytest.approx(g * 0.8, abs=1e-9)
    # a trough between the two peaks
    mid = np.argmin(np.abs(ens.q - 10.0))
    assert ens.density[mid] < 1e-12


def test_density_and_readout_csv(tmp_path, pointer, canonical):
    pre, post = canonical
    out, r = evolve_and_postselect(pre, post, projector(2, 1), 0.01, pointer)
    dens = tmp_path / 'density.csv'
    dump_density_csv(out.q, out.density(), str(dens))
    t = ascii.read(str(dens), format='csv')
    assert t.colnames == ['Q', 'density']
    assert len(t) == pointer.n_points

    text = dump_readout_csv(readout_of(out, r.postselect_prob),
                            str(tmp_path / 'readout.csv'))
    assert text.splitlines()[0] == 'mean_q,mean_p,var_q,var_p,postselect_prob'
