#!/usr/bin/env python
#
#  Tests for state vectors, observables and weak values.

import math

import numpy as np
import pytest

from qstate import StateVector, make_state, basis_state, inner, tensor
from qstate import composite_index, SpectralObservable, diagonal, projector
from qstate import identity, weak_value, projector_weak_values
from qstate import joint_weak_value, expectation, checked_overlap
from qstate import fmtnum, fmtcomplex
from wverror import ZeroVector, NotNormalized, NotOrthonormal, DimMismatch
from wverror import DegenerateOverlap, PathOutOfRange


@pytest.fixture
def canonical():
    return make_state([1, 1]), make_state([2, -1])


def random_state(rng, dim):
    return make_state(rng.normal(size=dim) + 1j * rng.normal(size=dim))


def test_make_state_normalizes():
    s = make_state([3, 4j])
    assert s.dim == 2
    assert abs(s[0] - 0.6) < 1e-15
    assert abs(s[1] - 0.8j) < 1e-15


def test_make_state_rejects_zero():
    with pytest.raises(ZeroVector):
        make_state([0, 0, 0])


def test_state_vector_needs_unit_norm():
    with pytest.raises(NotNormalized):
        StateVector([1, 1])


def test_amplitudes_are_read_only():
    s = make_state([1, 1])
    with pytest.raises(ValueError):
        s.amplitudes[0] = 0


def test_inner_conjugates_bra():
    a = make_state([1, 1j])
    assert abs(inner(a, a) - 1.0) < 1e-15
    b = basis_state(2, 1)
    assert abs(inner(a, b) - (-1j / math.sqrt(2))) < 1e-15


def test_inner_dim_mismatch():
    with pytest.raises(DimMismatch):
        inner(basis_state(2, 0), basis_state(3, 0))


def test_tensor_index_order():
    a = make_state([1, 2])
    b = make_state([3, 4, 5])
    ab = tensor(a, b)
    assert ab.dim == 6
    k = composite_index((2, 3), (1, 2))
    assert k == 5
    assert abs(ab[k] - a[1] * b[2]) < 1e-15


def test_tensor_labels():
    a = StateVector([1, 0], labels=['0', '1'])
    b = StateVector([0, 1], labels=['a', 'b'])
    assert tensor(a, b).labels == ('0a', '0b', '1a', '1b')


def test_inner_examples():
    bra, ket = make_state([2, -1]), make_state([1, 1])
    assert abs(inner(bra, ket) - 1.0 / math.sqrt(10)) <= 1e-12
    a, b = make_state([1, -1j]), make_state([1, 1])
    assert abs(inner(a, b) - (1 + 1j) / 2) <= 1e-12
    assert abs(inner(b, a) - (1 - 1j) / 2) <= 1e-12


def test_inner_conjugate_symmetry_random():
    rng = np.random.default_rng(11)
    for _ in range(500):
        dim = int(rng.integers(1, 9))
        a, b = random_state(rng, dim), random_state(rng, dim)
        assert abs(inner(a, b) - inner(b, a).conjugate()) <= 1e-12


def test_tensor_examples():
    ab = tensor(basis_state(2, 0), basis_state(2, 1))
    assert np.allclose(ab.amplitudes, [0, 1, 0, 0], atol=1e-15)
    plus = make_state([1, 1])
    assert np.allclose(tensor(plus, basis_state(2, 0)).amplitudes,
                       np.array([1, 0, 1, 0]) / math.sqrt(2), atol=1e-15)
    assert np.allclose(tensor(plus, make_state([1, -1])).amplitudes,
                       [0.5, -0.5, 0.5, -0.5], atol=1e-15)


def test_composite_index_range():
    with pytest.raises(PathOutOfRange):
        composite_index((2, 2), (0, 2))


def test_observable_rejects_non_orthogonal():
    v0 = make_state([1, 0])
    v1 = make_state([1, 1])
    with pytest.raises(NotOrthonormal):
        SpectralObservable([0, 1], [v0, v1])


def test_canonical_projector_weak_values(canonical):
    pre, post = canonical
    w = projector_weak_values(pre, post)
    assert abs(w[0] - 2.0) <= 1e-12
    assert abs(w[1] + 1.0) <= 1e-12


def test_weak_value_matches_projector_form(canonical):
    pre, post = canonical
    wv = weak_value(pre, post, projector(2, 1))
    assert abs(wv.value + 1.0) <= 1e-12
    assert wv.re == wv.value.real
    assert abs(wv.overlap - inner(post, pre)) < 1e-15


def test_weak_value_of_identity(canonical):
    pre, post = canonical
    assert abs(weak_value(pre, post, identity(2)).value - 1.0) <= 1e-12


def test_complex_weak_value():
    pre = make_state([1, 1])
    post = make_state([1, 1j])
    w = projector_weak_values(pre, post)[1]
    assert abs(w - (0.5 - 0.5j)) <= 1e-12


def test_degenerate_overlap():
    with pytest.raises(DegenerateOverlap) as e:
        checked_overlap(make_state([1, 1]), make_state([1, -1]))
    assert 'degenerate overlap' in str(e.value)


def test_sum_rule_random():
    rng = np.random.default_rng(1234)
    for _ in range(1000):
        dim = int(rng.integers(2, 9))
        pre, post = random_state(rng, dim), random_state(rng, dim)
        assert abs(sum(projector_weak_values(pre, post)) - 1.0) <= 1e-12


def test_weak_value_linearity_random():
    rng = np.random.default_rng(99)
    for _ in range(200):
        dim = int(rng.integers(2, 7))
        pre, post = random_state(rng, dim), random_state(rng, dim)
        vals = rng.normal(size=dim)
        w = projector_weak_values(pre, post)
        expect = sum(v * wk for v, wk in zip(vals, w))
        assert abs(weak_value(pre, post, diagonal(vals)).value - expect) \
            <= 1e-10 * max(1.0, abs(expect))


def test_joint_weak_value():
    rng = np.random.default_rng(7)
    pre, post = random_state(rng, 6), random_state(rng, 6)
    w = projector_weak_values(pre, post)
    assert joint_weak_value(pre, post, (2, 3), (1, 0)) == w[3]
    with pytest.raises(DimMismatch):
        joint_weak_value(pre, post, (2, 2), (1, 0))


def test_expectation():
    s = make_state([1, 1])
    assert abs(expectation(s, diagonal([0, 1])) - 0.5) < 1e-15


def random_observable(rng, dim):
    q, _ = np.linalg.qr(rng.normal(size=(dim, dim))
                        + 1j * rng.normal(size=(dim, dim)))
    return SpectralObservable(rng.normal(size=dim),
                              [StateVector(q[:, k]) for k in range(dim)])


def test_pre_equals_post_gives_expectation():
    rng = np.random.default_rng(5)
    for _ in range(200):
        dim = int(rng.integers(2, 7))
        psi = random_state(rng, dim)
        obs = random_observable(rng, dim)
        wv = weak_value(psi, psi, obs)
        assert abs(wv.im) <= 1e-12
        assert abs(wv.re - expectation(psi, obs)) <= 1e-12


def test_expectation_examples():
    plus = make_state([1, 1])
    assert abs(expectation(plus, diagonal([1, -1]))) <= 1e-15
    assert abs(expectation(make_state([2, -1]), projector(2, 0)) - 0.8) \
        <= 1e-12


@pytest.mark.parametrize('x, text', [
    (0.0, '0'), (-0.0, '0'), (2.0, '2'), (-1.0, '-1'), (0.1, '0.1'),
    (1e-05, '1e-05'), (0.109992, '0.109992'),
])
def test_fmtnum(x, text):
    assert fmtnum(x) == text


def test_fmtcomplex():
    assert fmtcomplex(0.5 - 0.5j) == '0.5-0.5i'
    assert fmtcomplex(-1) == '-1+0i'
