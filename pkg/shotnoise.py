#!/usr/bin/env python
#
#  SHOTNOISE -- Poisson photon-counting Monte Carlo and error propagation
#  for the weak-value estimators.
#

__authors__ = 'wvsim developers'
__version__ = 'v1.0.0'


'''
    Two independent runs are counted: a baseline run without components
    (mean n_ref_mean counts) and a run with the component or meter in
    place (mean n_ref_mean * Prob_with / Prob_baseline).  Trial i draws from
    its own counter-based stream, so any trial can be reproduced alone and
    trials may be evaluated in any order.
'''

import math
import logging
from dataclasses import dataclass

import numpy as np

from qstate import make_state, inner, checked_overlap
from backaction import ComponentSet, attenuator, exact_postselection_prob
from backaction import estimate_re_weak_value, estimate_im_weak_value
from qubitmeter import MeterQubit, couple_cnot, postselect_meter_probs
from qubitmeter import meter_from_strength, normalized_readout, readout_sigma
from wverror import NegativeMean, DegenerateBaseline, DegenerateOverlap
from wverror import InapplicableParam, BadRange, ZeroStrength
from wvtable import make_table


log = logging.getLogger(__name__)

FIG3_N_REF = 10000
SEED_MAX = 2 ** 64

FIG3A_HEADER = ('G', 'readout_ideal', 'readout_sigma')
FIG3B_HEADER = ('alpha', 'n_est_ideal', 'n_est_sigma')
FIG3A_MC_HEADER = FIG3A_HEADER + ('readout_mc_mean', 'readout_mc_std')
FIG3B_MC_HEADER = FIG3B_HEADER + ('n_est_mc_mean', 'n_est_mc_std')
TRIALS_HEADER = ('trial', 'n_ref', 'n_exp', 'estimate', 'valid')

RE, IM = 're', 'im'


# ###################################
#  Plans, streams and trials
# ###################################

@dataclass(frozen=True)
class CountingPlan:
    n_ref_mean: float = FIG3_N_REF
    seed: int = 0
    trials: int = 1000

    def __post_init__(self):
        if not self.n_ref_mean > 0.0:
            raise BadRange('n_ref_mean must be > 0, got %r' % self.n_ref_mean)
        if int(self.trials) != self.trials or self.trials < 1:
            raise BadRange('trials must be a positive integer, got %r'
                           % self.trials)
        if int(self.seed) != self.seed or not 0 <= self.seed < SEED_MAX:
            raise BadRange('seed must be an unsigned 64-bit integer, got %r'
                           % self.seed)


@dataclass(frozen=True)
class TrialResult:
    trial: int
    n_ref: int
    n_exp: int
    estimate: float
    valid: bool


def make_stream(seed, *key):
    '''Counter-based random stream for the given seed and key path.  The
       same (seed, key) always yields the same sequence.
    '''
    seq = np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.Philox(seq))


def sample_poisson(mean, stream):
    '''One Poisson(mean) draw from the stream.
    '''
    mean = float(mean)
    if not mean >= 0.0 or not math.isfinite(mean):
        raise NegativeMean('Poisson mean must be finite and >= 0, got %r'
                           % mean)
    if mean == 0.0:
        return 0
    return int(stream.poisson(mean))


# ###################################
#  Aggregation
# ###################################

class Accumulator(object):
    '''Associative (count, sum, sum of squares) accumulator.
    '''
    __slots__ = ('count', 'total', 'total_sq')

    def __init__(self, count=0, total=0.0, total_sq=0.0):
        self.count = count
        self.total = total
        self.total_sq = total_sq

    def add(self, x):
        self.count += 1
        self.total += x
        self.total_sq += x * x
        return self

    def merge(self, other):
        return Accumulator(self.count + other.count,
                           self.total + other.total,
                           self.total_sq + other.total_sq)

    @property
    def mean(self):
        return self.total / self.count if self.count else float('nan')

    @property
    def std(self):
        if self.count < 2:
            return float('nan')
        var = (self.total_sq - self.count * self.mean ** 2) / (self.count - 1)
        return math.sqrt(max(var, 0.0))


@dataclass(frozen=True)
class TrialSummary:
    count: int
    invalid: int
    mean: float
    std: float


def summarize(trials):
    acc, invalid = Accumulator(), 0
    for t in trials:
        if t.valid:
            acc.add(t.estimate)
        else:
            invalid += 1
    return TrialSummary(acc.count, invalid, acc.mean, acc.std)


# ###################################
#  Estimator simulation
# ###################################

def _path_setup(components, kind, param):
    '''Resolve the estimator kind and parameter from a single-component set
       when they are not given explicitly.
    '''
    if kind is None:
        if len(components) != 1:
            raise InapplicableParam('Need exactly one component to pick an '
                                    'estimator, got %d' % len(components))
        comp = list(components)[0]
        if comp.alpha != 0.0 and comp.theta == 0.0:
            kind, param = RE, comp.alpha
        elif comp.theta != 0.0 and comp.alpha == 0.0:
            kind, param = IM, comp.theta
        else:
            raise InapplicableParam('Component on path %d mixes phase and '
                                    'attenuation' % comp.path_index)
    if kind not in (RE, IM):
        raise InapplicableParam('Unknown path estimator: %r' % kind)
    return kind, float(param)


def simulate_estimator(pre, post, config, plan, kind=None, param=None, key=()):
    '''Monte Carlo of an estimator over plan.trials independent trials.

       'config' is a ComponentSet (attenuator -> Re estimator, phase shifter
       -> Im estimator, or explicit kind/param) or a MeterQubit (normalized
       readout from the meter counts).
    '''
    try:
        baseline = abs(checked_overlap(pre, post)) ** 2
    except DegenerateOverlap as e:
        raise DegenerateBaseline('Baseline probability vanishes: %s' % e)

    if isinstance(config, MeterQubit):
        return _simulate_meter(pre, post, config, baseline, plan, key)

    components = config if isinstance(config, ComponentSet) \
        else ComponentSet(config)
    kind, param = _path_setup(components, kind, param)
    ratio = exact_postselection_prob(pre, post, components,
                                     threshold=math.inf).exact / baseline
    estimate = estimate_re_weak_value if kind == RE else estimate_im_weak_value

    results = []
    for i in range(plan.trials):
        stream = make_stream(plan.seed, *key, i)
        n_ref = sample_poisson(plan.n_ref_mean, stream)
        n_exp = sample_poisson(plan.n_ref_mean * ratio, stream)
        if n_ref > 0:
            est = estimate(float(n_exp), float(n_ref), param)
            results.append(TrialResult(i, n_ref, n_exp, est, True))
        else:
            results.append(TrialResult(i, n_ref, n_exp, float('nan'), False))
    log.debug('Simulated %d %s trials, n_ref_mean=%g ratio=%g'
              % (plan.trials, kind, plan.n_ref_mean, ratio))
    return results


def _simulate_meter(pre, post, meter, baseline, plan, key):
    '''Meter trials: the post-selected events split between meter |0> and
       |1>; n_ref counts all of them and n_exp the |1> outcomes.
    '''
    if not meter.strength > 0.0:
        raise ZeroStrength('Normalized readout is undefined at G = 0')
    stats = postselect_meter_probs(couple_cnot(pre, meter), post)
    n_post = plan.n_ref_mean * stats.prob_phi / baseline
    p1 = stats.prob_1_given_phi

    results = []
    for i in range(plan.trials):
        stream = make_stream(plan.seed, *key, i)
        n_one = sample_poisson(n_post * p1, stream)
        n_zero = sample_poisson(n_post * (1.0 - p1), stream)
        n_ref = n_one + n_zero
        if n_ref > 0:
            est = normalized_readout(n_one / n_ref, meter)
            results.append(TrialResult(i, n_ref, n_one, est, True))
        else:
            results.append(TrialResult(i, n_ref, n_one, float('nan'), False))
    return results


def trials_table(trials):
    return make_table(TRIALS_HEADER, [(t.trial, t.n_ref, t.n_exp, t.estimate,
                                       t.valid) for t in trials])


# ###################################
#  Error propagation
# ###################################

def analytic_sigma(prob_ratio, n_ref_mean, alpha_or_theta, kind=RE):
    '''First-order standard deviation of the ratio estimator,
       (1/2a) r sqrt(1/(n r) + 1/n), for independent Poisson counts.
    '''
    if kind not in (RE, IM):
        raise InapplicableParam('Unknown estimator kind: %r' % kind)
    if not prob_ratio > 0.0 or not n_ref_mean > 0.0 or alpha_or_theta == 0.0:
        raise BadRange('analytic_sigma needs positive ratio, counts and '
                       'parameter')
    r, n = float(prob_ratio), float(n_ref_mean)
    return r * math.sqrt(1.0 / (n * r) + 1.0 / n) / (2.0 * abs(alpha_or_theta))


# ###################################
#  Estimator curves
# ###################################

def canonical_states():
    '''pre = (1,1)/sqrt2, post = (2,-1)/sqrt5; <|1><1|>_w = -1.'''
    return make_state([1, 1]), make_state([2, -1])


def fig3_dataset(n_ref_mean=FIG3_N_REF, n_points=100, g_min=1e-3,
                 alpha_min=5e-3, alpha_max=0.5, trials=0, seed=0):
    '''Normalized-readout and attenuation-estimator curves on the canonical
       instance.  Returns the (G, readout) and (alpha, n_est) tables.

       The n_est sigma column is analytic_sigma.  The readout sigma column is
       the binomial readout_sigma over the post-selected events, since the
       readout is estimated from the split between meter outcomes and not
       from a ratio of two runs.
    '''
    if n_points < 2 or not 0.0 < g_min < 1.0 \
            or not 0.0 < alpha_min < alpha_max:
        raise BadRange('Bad curve range')
    pre, post = canonical_states()
    baseline = abs(inner(post, pre)) ** 2

    rows_a = []
    for i, g in enumerate(np.geomspace(g_min, 1.0, n_points)):
        g = float(g)
        meter = meter_from_strength(g)
        stats = postselect_meter_probs(couple_cnot(pre, meter), post)
        n_post = n_ref_mean * stats.prob_phi / baseline
        row = (g, normalized_readout(stats.prob_1_given_phi, meter),
               readout_sigma(stats.prob_1_given_phi, n_post, meter))
        if trials > 0:
            s = summarize(simulate_estimator(
                pre, post, meter, CountingPlan(n_ref_mean, seed, trials),
                key=(0, i)))
            row = row + (s.mean, s.std)
        rows_a.append(row)

    rows_b = []
    for i, alpha in enumerate(np.linspace(alpha_min, alpha_max, n_points)):
        alpha = float(alpha)
        comps = ComponentSet([attenuator(1, alpha)])
        exact = exact_postselection_prob(pre, post, comps,
                                         threshold=math.inf).exact
        row = (alpha, estimate_re_weak_value(exact, baseline, alpha),
               analytic_sigma(exact / baseline, n_ref_mean, alpha, RE))
        if trials > 0:
            s = summarize(simulate_estimator(
                pre, post, comps, CountingPlan(n_ref_mean, seed, trials),
                key=(1, i)))
            row = row + (s.mean, s.std)
        rows_b.append(row)

    head_a = FIG3A_MC_HEADER if trials > 0 else FIG3A_HEADER
    head_b = FIG3B_MC_HEADER if trials > 0 else FIG3B_HEADER
    return make_table(head_a, rows_a), make_table(head_b, rows_b)
