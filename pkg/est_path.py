#!/usr/bin/env python

#  EST_PATH -- Attenuator and phase-shifter estimators on a single path.

__authors__ = 'wvsim developers'
__version__ = 'v1.0.0'


import math
import logging

from est_base import Estimator
from backaction import ComponentSet, attenuator, phase, ATTEN, PHASE
from backaction import exact_postselection_prob
from backaction import estimate_re_weak_value, estimate_im_weak_value
from shotnoise import simulate_estimator, RE, IM
from shotnoise import analytic_sigma as _analytic_sigma
from wverror import InapplicableParam, NonpositiveAlpha, ZeroTheta


log = logging.getLogger(__name__)


# Single-path estimator sub-class.
class pathEstimator(Estimator):
    '''Estimator driven by one c-number component on the experiment's only
       component path.  Sub-classes fix the component kind.
    '''
    kind = None                 # RE or IM
    component_kind = None       # ATTEN or PHASE
    make_component = None

    # ----------------
    # SubClass Methods
    # ----------------
    def path(self, spec):
        '''Path index of the experiment's single component.
        '''
        if len(spec.components) != 1:
            raise InapplicableParam('%s sweeps need exactly one component '
                                    'path, file has %d'
                                    % (self.param, len(spec.components)))
        return spec.components.paths()[0]

    def components(self, spec, value):
        return ComponentSet([type(self).make_component(self.path(spec),
                                                       value)])

    def default_value(self, spec):
        comp = list(spec.components)[0] if len(spec.components) == 1 else None
        if comp is None or comp.kind != self.component_kind:
            raise InapplicableParam('Need a single %s component for %s'
                                    % (self.component_kind, self.param))
        return comp.alpha if self.kind == RE else comp.theta

    def sweep_row(self, spec, value, n_ref_mean):
        pre, post = spec.states()
        report = exact_postselection_prob(pre, post,
                                          self.components(spec, value),
                                          threshold=math.inf)
        est = self.estimate(report.exact, report.baseline, value)
        return (value, report.exact, report.first_order, est,
                self._sigma(report.exact / report.baseline, n_ref_mean, value))

    def shots(self, spec, value, plan):
        pre, post = spec.states()
        return simulate_estimator(pre, post, self.components(spec, value),
                                  plan, kind=self.kind, param=value)

    def analytic_sigma(self, spec, value, n_ref_mean):
        pre, post = spec.states()
        report = exact_postselection_prob(pre, post,
                                          self.components(spec, value),
                                          threshold=math.inf)
        return self._sigma(report.exact / report.baseline, n_ref_mean, value)

    # ----------------
    # Private Methods
    # ----------------
    def _sigma(self, ratio, n_ref_mean, value):
        if not ratio > 0.0:
            return float('nan')             # nothing reaches the detector
        return _analytic_sigma(ratio, n_ref_mean, value, self.kind)


# Attenuator (Re) estimator.
class attenEstimator(pathEstimator):
    '''Re<|k><k|>_w from an attenuator exp(-alpha) on path k.
    '''
    param = 'alpha'
    kind = RE
    component_kind = ATTEN
    make_component = attenuator
    sweep_header = ('alpha', 'exact', 'first_order', 'n_est', 'sigma')

    def validate(self, value):
        if not value > 0.0 or not math.isfinite(value):
            raise NonpositiveAlpha('alpha must be finite and > 0, got %r'
                                   % value)

    def estimate(self, exact, baseline, value):
        return estimate_re_weak_value(exact, baseline, value)


# Phase-shifter (Im) estimator.
class phaseEstimator(pathEstimator):
    '''Im<|k><k|>_w from a phase shifter exp(-i theta) on path k.
    '''
    param = 'theta'
    kind = IM
    component_kind = PHASE
    make_component = phase
    sweep_header = ('theta', 'exact', 'first_order', 'im_est', 'sigma')

    def validate(self, value):
        if value == 0.0 or not math.isfinite(value):
            raise ZeroTheta('theta must be finite and nonzero, got %r' % value)

    def estimate(self, exact, baseline, value):
        return estimate_im_weak_value(exact, baseline, value)
