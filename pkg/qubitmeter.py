#!/usr/bin/env python
#
#  QUBITMETER -- CNOT weak measurement of a signal qubit by a meter qubit.
#

__authors__ = 'wvsim developers'
__version__ = 'v1.0.0'


'''
    The signal a|0>_s + b|1>_s controls a CNOT on the meter
    gamma|0>_m + gamma_bar|1>_m, giving

        (a gamma |0>_s + b gamma_bar |1>_s)|0>_m
      + (a gamma_bar |0>_s + b gamma |1>_s)|1>_m

    with measurement strength G = gamma^2 - gamma_bar^2.  The normalized
    readout (Prob(1|phi) - gamma_bar^2)/G tends to Re<|1><1|>_w as G -> 0.
'''

import math
from collections import namedtuple
from dataclasses import dataclass

import numpy as np

from qstate import StateVector
from wverror import StrengthOutOfRange, DimMismatch, ZeroStrength
from wverror import ImpossiblePostselection


METER_TOL = 1e-12
SWEEP_HEADER = ('G', 'prob_phi', 'prob_1_given_phi', 'readout')

MeterStats = namedtuple('MeterStats', ['prob_phi', 'prob_1_given_phi'])


@dataclass(frozen=True)
class MeterQubit:
    '''Meter prepared in gamma|0> + gamma_bar|1>, gamma >= gamma_bar >= 0.
    '''
    gamma: float
    gamma_bar: float

    def __post_init__(self):
        if abs(self.gamma ** 2 + self.gamma_bar ** 2 - 1.0) > METER_TOL:
            raise StrengthOutOfRange('Meter amplitudes are not normalized: '
                                     'gamma=%r gamma_bar=%r'
                                     % (self.gamma, self.gamma_bar))
        if not self.gamma >= self.gamma_bar >= 0.0:
            raise StrengthOutOfRange('Meter needs gamma >= gamma_bar >= 0, '
                                     'got gamma=%r gamma_bar=%r'
                                     % (self.gamma, self.gamma_bar))

    @property
    def strength(self):
        return self.gamma ** 2 - self.gamma_bar ** 2


def make_meter(gamma, gamma_bar):
    return MeterQubit(float(gamma), float(gamma_bar))


def meter_from_strength(g):
    '''Meter with measurement strength G, 0 <= G <= 1.
    '''
    if not 0.0 <= g <= 1.0:
        raise StrengthOutOfRange('Strength G must lie in [0, 1], got %r' % g)
    return MeterQubit(math.sqrt((1.0 + g) / 2.0), math.sqrt((1.0 - g) / 2.0))


class JointState(object):
    '''Signal (x) meter state over the basis 00, 01, 10, 11 (signal first).
       Built by couple_cnot() only.
    '''
    __slots__ = ('state',)

    def __init__(self, state):
        self.state = state

    @property
    def amplitudes(self):
        return self.state.amplitudes


def couple_cnot(signal, meter):
    '''CNOT from the signal qubit onto the meter.
    '''
    if signal.dim != 2:
        raise DimMismatch('Signal must be a qubit, got dim %d' % signal.dim)
    a, b = signal.amplitudes
    g, gb = meter.gamma, meter.gamma_bar
    return JointState(StateVector([a * g, a * gb, b * gb, b * g]))


def postselect_meter_probs(joint, post):
    '''Post-select the signal on 'post' and read the meter.
    '''
    if post.dim != 2:
        raise DimMismatch('Post-selection must be a qubit, got dim %d'
                          % post.dim)
    amps = joint.amplitudes.reshape(2, 2)        # [signal, meter]
    c0, c1 = post.amplitudes.conj() @ amps
    w0, w1 = abs(c0) ** 2, abs(c1) ** 2
    prob_phi = w0 + w1
    if not prob_phi > 0.0:
        raise ImpossiblePostselection('Post-selection has zero probability')
    return MeterStats(float(prob_phi), float(w1 / prob_phi))


def normalized_readout(prob_1_given_phi, meter):
    '''(Prob(1|phi) - gamma_bar^2) / G.
    '''
    G = meter.strength
    if not G > 0.0:
        raise ZeroStrength('Normalized readout is undefined at G = 0')
    return (prob_1_given_phi - meter.gamma_bar ** 2) / G


def conditional_probability(pre, post):
    '''Projective conditional probability of |1> given the post-selection,
       |<phi|1><1|psi>|^2 / sum_k |<phi|k><k|psi>|^2.
    '''
    branch = np.abs(post.amplitudes.conj() * pre.amplitudes) ** 2
    total = branch.sum()
    if not total > 0.0:
        raise ImpossiblePostselection('No branch reaches the post-selection')
    return float(branch[1] / total)


def readout_sigma(prob_1_given_phi, n_post_mean, meter):
    '''Counting error of the normalized readout when n_post_mean
       post-selected events are split binomially between the meter outcomes.
    '''
    G = meter.strength
    if not G > 0.0:
        raise ZeroStrength('Normalized readout is undefined at G = 0')
    p = prob_1_given_phi
    return math.sqrt(p * (1.0 - p) / n_post_mean) / G


def meter_row(pre, post, g):
    '''One (G, prob_phi, prob_1_given_phi, readout) row.
    '''
    meter = meter_from_strength(g)
    stats = postselect_meter_probs(couple_cnot(pre, meter), post)
    return (g, stats.prob_phi, stats.prob_1_given_phi,
            normalized_readout(stats.prob_1_given_phi, meter))
