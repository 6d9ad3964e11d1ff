#!/usr/bin/env python

#  EST_METER -- Normalized-readout estimator for the CNOT meter qubit.

__authors__ = 'wvsim developers'
__version__ = 'v1.0.0'


from est_base import Estimator
from qstate import checked_overlap
from qubitmeter import meter_from_strength, couple_cnot, postselect_meter_probs
from qubitmeter import normalized_readout, readout_sigma
from shotnoise import simulate_estimator
from wverror import StrengthOutOfRange, ZeroStrength, InapplicableParam


# Meter qubit estimator sub-class.
class meterEstimator(Estimator):
    '''Re<|1><1|>_w from the meter readout (Prob(1|phi) - gamma_bar^2)/G.
    '''
    param = 'G'
    sweep_header = ('G', 'prob_phi', 'prob_1_given_phi', 'readout',
                    'readout_sigma')

    def validate(self, value):
        if not 0.0 <= value <= 1.0:
            raise StrengthOutOfRange('G must lie in [0, 1], got %r' % value)
        if value == 0.0:
            raise ZeroStrength('Normalized readout is undefined at G = 0')

    def default_value(self, spec):
        raise InapplicableParam('The meter estimator needs --G')

    def sweep_row(self, spec, value, n_ref_mean):
        pre, post = spec.states()
        meter = meter_from_strength(value)
        stats = postselect_meter_probs(couple_cnot(pre, meter), post)
        p1 = stats.prob_1_given_phi
        return (value, stats.prob_phi, p1, normalized_readout(p1, meter),
                readout_sigma(p1, self._n_post(pre, post, stats, n_ref_mean),
                              meter))

    def shots(self, spec, value, plan):
        pre, post = spec.states()
        return simulate_estimator(pre, post, meter_from_strength(value), plan)

    def analytic_sigma(self, spec, value, n_ref_mean):
        return self.sweep_row(spec, value, n_ref_mean)[4]

    # ----------------
    # Private Methods
    # ----------------
    def _n_post(self, pre, post, stats, n_ref_mean):
        baseline = abs(checked_overlap(pre, post)) ** 2
        return n_ref_mean * stats.prob_phi / baseline
