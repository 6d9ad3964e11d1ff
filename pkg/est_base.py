#!/usr/bin/env python

#  EST_BASE -- Base class for the weak-value estimator plug-ins.

__authors__ = 'wvsim developers'
__version__ = 'v1.0.0'


import logging

import numpy as np

from backaction import WEAK_THRESHOLD
from shotnoise import summarize
from wverror import BadRange
from wvtable import make_table


log = logging.getLogger(__name__)


# Base estimator class.
class Estimator(object):
    '''Base estimator class.  A plug-in owns one sweep/shots parameter and
       knows how to turn an experiment into CSV rows for it.
    '''
    param = None                # name of the swept parameter
    sweep_header = ()

    def __init__(self, threshold=WEAK_THRESHOLD):
        self.threshold = threshold

    def validate(self, value):
        '''Raise if 'value' is not a legal parameter value.
        '''
        pass

    def sweep_row(self, spec, value, n_ref_mean):
        '''Return one sweep row for the parameter value.
        '''
        pass

    def default_value(self, spec):
        '''Parameter value taken from the experiment itself, if any.
        '''
        pass

    def shots(self, spec, value, plan):
        '''Return the list of TrialResults for 'plan'.
        '''
        pass

    def analytic_sigma(self, spec, value, n_ref_mean):
        '''Predicted standard deviation of one trial's estimate.
        '''
        pass

    def grid(self, start, stop, steps):
        '''Evenly spaced parameter values, validated.
        '''
        if int(steps) != steps or steps < 2:
            raise BadRange('steps must be an integer >= 2, got %r' % steps)
        if not start < stop:
            raise BadRange('sweep needs from < to, got %r .. %r'
                           % (start, stop))
        values = [float(v) for v in np.linspace(start, stop, int(steps))]
        for v in values:
            self.validate(v)
        return values

    def sweep(self, spec, values, n_ref_mean):
        '''Table of sweep rows in parameter order.
        '''
        top = max(abs(v) for v in values)
        if self.param != 'G' and top > self.threshold:
            log.warning('Sweep reaches %s = %g, beyond the weak threshold %g'
                        % (self.param, top, self.threshold))
        return make_table(self.sweep_header,
                          [self.sweep_row(spec, v, n_ref_mean)
                           for v in values])

    def summary(self, spec, value, trials, n_ref_mean):
        '''(TrialSummary, analytic sigma) for a shots run.
        '''
        return summarize(trials), self.analytic_sigma(spec, value, n_ref_mean)
