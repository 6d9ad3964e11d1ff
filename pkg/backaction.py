#!/usr/bin/env python
#
#  BACKACTION -- Post-selection probabilities under per-path c-number
#  components, and the estimators that read weak values back out of them.
#

__authors__ = 'wvsim developers'
__version__ = 'v1.0.0'


'''
    A c-number component multiplies the amplitude of one path, |k> -> C|k>.
    A phase shifter has C = exp(-i theta), an attenuator C = exp(-alpha) =
    sqrt(T), and a general component an arbitrary nonzero C.  Paths without
    a component keep C = 1.

    Exact probability:

        Prob(phi) = |<phi|psi>|^2 |sum_k C_k <|k><k|>_w|^2

    First order (theta, alpha << 1):

        Prob(phi) ~ |<phi|psi>|^2 (1 + sum_k [2 theta_k Im w_k - 2 alpha_k Re w_k])
'''

import cmath
import math
import logging
from dataclasses import dataclass, field

import numpy as np

from qstate import inner, checked_overlap, projector_weak_values
from wverror import wvError, PathOutOfRange, NonpositiveAlpha, ZeroTheta
from wverror import ZeroBaseline, NotWeak, RouteMismatch, DimMismatch


log = logging.getLogger(__name__)

PHASE = 'phase'
ATTEN = 'atten'
GENERAL = 'general'
KINDS = (PHASE, ATTEN, GENERAL)

WEAK_THRESHOLD = 0.1            # warn when |theta| or |alpha| exceeds this
WEAK_LIMIT = 1.0                # first order refused at or beyond this
ROUTE_TOL = 1e-12


# ###################################
#  Path components
# ###################################

@dataclass(frozen=True)
class PathComponent:
    '''A c-number on one path.  theta and alpha always satisfy
       c = exp(-alpha - i theta); composed components accumulate them
       additively.
    '''
    path_index: int
    kind: str
    theta: float
    alpha: float
    c: complex

    @property
    def transmittance(self):
        return abs(self.c) ** 2

    @property
    def reflectance(self):
        return 1.0 - self.transmittance

    @property
    def nonphysical(self):
        return abs(self.c) > 1.0

    def compose(self, other):
        '''Multiply two components stacked on the same path.
        '''
        if other.path_index != self.path_index:
            raise PathOutOfRange('Cannot compose components on paths %d and %d'
                                 % (self.path_index, other.path_index))
        kind = self.kind if self.kind == other.kind else GENERAL
        return PathComponent(self.path_index, kind,
                             self.theta + other.theta,
                             self.alpha + other.alpha,
                             self.c * other.c)

    def scaled(self, s):
        '''Same kind with theta and alpha multiplied by s.
        '''
        theta, alpha = s * self.theta, s * self.alpha
        return PathComponent(self.path_index, self.kind, theta, alpha,
                             cmath.exp(complex(-alpha, -theta)))


def _check_path(k):
    if int(k) != k or k < 0:
        raise PathOutOfRange('Bad path index: %r' % (k,))
    return int(k)


def phase(k, theta):
    '''Phase shifter, C = exp(-i theta).'''
    theta = float(theta)
    return PathComponent(_check_path(k), PHASE, theta, 0.0,
                         cmath.exp(complex(0.0, -theta)))


def attenuator(k, alpha):
    '''Attenuator, C = exp(-alpha) = sqrt(T), alpha >= 0.'''
    alpha = float(alpha)
    if not alpha >= 0.0 or math.isinf(alpha):
        raise NonpositiveAlpha('Attenuation exponent must be finite and >= 0,'
                               ' got %r' % alpha)
    return PathComponent(_check_path(k), ATTEN, 0.0, alpha,
                         complex(math.exp(-alpha), 0.0))


def from_transmittance(k, T):
    '''Attenuator with transmittance 0 < T <= 1.'''
    if not 0.0 < T <= 1.0:
        raise NonpositiveAlpha('Transmittance must lie in (0, 1], got %r' % T)
    return attenuator(k, -0.5 * math.log(T))


def general(k, c):
    '''General c-number; a gain |c| > 1 is allowed but flagged.'''
    c = complex(c)
    if c == 0 or not cmath.isfinite(c):
        raise wvError('Component multiplier must be finite and nonzero')
    comp = PathComponent(_check_path(k), GENERAL, -cmath.phase(c),
                         -math.log(abs(c)), c)
    if comp.nonphysical:
        log.warning('Component on path %d has gain |c| = %g (nonphysical)'
                    % (comp.path_index, abs(c)))
    return comp


class ComponentSet(object):
    '''Immutable set of path components, at most one per path.  Components
       added on an occupied path are composed by multiplication.
    '''
    __slots__ = ('_by_path',)

    def __init__(self, components=()):
        by_path = {}
        for comp in components:
            k = comp.path_index
            by_path[k] = by_path[k].compose(comp) if k in by_path else comp
        self._by_path = dict(sorted(by_path.items()))

    def __iter__(self):
        return iter(self._by_path.values())

    def __len__(self):
        return len(self._by_path)

    def __contains__(self, k):
        return k in self._by_path

    def __getitem__(self, k):
        return self._by_path[k]

    def __repr__(self):
        return 'ComponentSet(%r)' % list(self._by_path.values())

    def paths(self):
        return tuple(self._by_path.keys())

    def scaled(self, s):
        return ComponentSet([c.scaled(s) for c in self])

    def check(self, dim):
        for k in self._by_path:
            if k >= dim:
                raise PathOutOfRange('Component on path %d outside dim %d'
                                     % (k, dim))

    def multipliers(self, dim):
        '''C_k for every path, 1 where no component sits.'''
        self.check(dim)
        mult = np.ones(dim, dtype=np.complex128)
        for k, comp in self._by_path.items():
            mult[k] = comp.c
        return mult


def _as_set(components):
    if isinstance(components, ComponentSet):
        return components
    return ComponentSet(components)


# ###################################
#  Probabilities
# ###################################

@dataclass(frozen=True)
class ProbabilityReport:
    '''Exact and first-order post-selection probabilities.
    '''
    exact: float
    first_order: float
    baseline: float
    weak_values_used: tuple = field(default=())
    weak_condition: bool = True


def _first_order_terms(components, wvs, threshold):
    total, weak = 0.0, True
    for comp in components:
        if abs(comp.theta) >= WEAK_LIMIT or abs(comp.alpha) >= WEAK_LIMIT:
            raise NotWeak('First order needs |theta|, |alpha| < 1 on path %d'
                          ' (theta=%r, alpha=%r)'
                          % (comp.path_index, comp.theta, comp.alpha))
        if abs(comp.theta) > threshold or abs(comp.alpha) > threshold:
            weak = False
            log.warning('Weak condition violated on path %d: theta=%g alpha=%g'
                        % (comp.path_index, comp.theta, comp.alpha))
        w = wvs[comp.path_index]
        total += 2.0 * comp.theta * w.imag - 2.0 * comp.alpha * w.real
    return total, weak


def first_order_prob(pre, post, components, threshold=WEAK_THRESHOLD):
    '''Linear back-action approximation of the post-selection probability.
    '''
    components = _as_set(components)
    components.check(pre.dim)
    wvs = projector_weak_values(pre, post)
    baseline = abs(inner(post, pre)) ** 2
    total, _ = _first_order_terms(components, wvs, threshold)
    return baseline * (1.0 + total)


def reflectance_form_prob(pre, post, components):
    '''First order written with the attenuator loss R = 1 - T in place of
       2 alpha.
    '''
    components = _as_set(components)
    components.check(pre.dim)
    wvs = projector_weak_values(pre, post)
    baseline = abs(inner(post, pre)) ** 2
    total = 0.0
    for comp in components:
        w = wvs[comp.path_index]
        total += 2.0 * comp.theta * w.imag - comp.reflectance * w.real
    return baseline * (1.0 + total)


def exact_postselection_prob(pre, post, components, threshold=WEAK_THRESHOLD):
    '''Exact post-selection probability, evaluated both as
       |<phi|diag(C)|psi>|^2 and through the weighted sum of projector weak
       values.  The weak-value route is reported.
    '''
    if pre.dim != post.dim:
        raise DimMismatch('Dimension mismatch: %d vs %d' % (pre.dim, post.dim))
    components = _as_set(components)
    mult = components.multipliers(pre.dim)
    overlap = checked_overlap(pre, post)
    wvs = projector_weak_values(pre, post)
    baseline = abs(overlap) ** 2

    direct = abs(np.vdot(post.amplitudes, mult * pre.amplitudes)) ** 2
    exact = baseline * abs(np.dot(mult, np.array(wvs))) ** 2
    if abs(direct - exact) > ROUTE_TOL * max(1.0, exact):
        raise RouteMismatch('Probability routes disagree: %r vs %r'
                            % (direct, exact))

    try:
        total, weak = _first_order_terms(components, wvs, threshold)
        first = baseline * (1.0 + total)
    except NotWeak:
        first, weak = float('nan'), False
    return ProbabilityReport(exact=float(exact), first_order=float(first),
                             baseline=float(baseline),
                             weak_values_used=tuple(wvs[k]
                                                    for k in components.paths()),
                             weak_condition=weak)


def unitary_kick_prob(pre, post, obs, theta):
    '''|<phi|exp(-i theta O)|psi>|^2.
    '''
    if obs.dim != pre.dim or pre.dim != post.dim:
        raise DimMismatch('Dimension mismatch among pre, post and observable')
    checked_overlap(pre, post)
    U = obs.function(lambda v: np.exp(-1j * theta * v))
    return float(abs(np.vdot(post.amplitudes, U @ pre.amplitudes)) ** 2)


# ###################################
#  Estimators
# ###################################

def _check_baseline(prob_baseline):
    if not prob_baseline > 0.0:
        raise ZeroBaseline('Baseline probability must be > 0, got %r'
                           % prob_baseline)


def estimate_re_weak_value(prob_with, prob_baseline, alpha):
    '''Real part from an attenuated run: (1/2 alpha)(1 - P/P0).
    '''
    if not alpha > 0.0:
        raise NonpositiveAlpha('alpha must be > 0, got %r' % alpha)
    _check_baseline(prob_baseline)
    return (1.0 - prob_with / prob_baseline) / (2.0 * alpha)


def estimate_im_weak_value(prob_with, prob_baseline, theta):
    '''Imaginary part from a phase-shifted run: (1/2 theta)(P/P0 - 1).
    '''
    if theta == 0.0:
        raise ZeroTheta('theta must be nonzero')
    _check_baseline(prob_baseline)
    return (prob_with / prob_baseline - 1.0) / (2.0 * theta)


def estimate_re_from_reflectance(prob_with, prob_baseline, R):
    '''Real part from an attenuated run with loss R: (1 - P/P0)/R.
    '''
    if not R > 0.0:
        raise NonpositiveAlpha('Reflectance loss must be > 0, got %r' % R)
    _check_baseline(prob_baseline)
    return (1.0 - prob_with / prob_baseline) / R
