from est_path import attenEstimator, phaseEstimator
from est_meter import meterEstimator
from backaction import ATTEN, PHASE

# Plug-in estimator registry, keyed by the swept parameter name
estimators = {
    'alpha': attenEstimator(),
    'theta': phaseEstimator(),
    'G': meterEstimator(),
    }

# Estimator used by 'shots' for a file's single component kind
by_component = {
    ATTEN: 'alpha',
    PHASE: 'theta',
    }
