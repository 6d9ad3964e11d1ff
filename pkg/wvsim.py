#!/usr/bin/env python
#
#  WVSIM -- Command-line driver for the weak-value simulator.

__authors__ = 'wvsim developers'
__version__ = 'v1.0.0'


#  Usage:
#       wvsim <command> [options]
#
#  Commands:
#
#       compute  FILE       Weak values, probabilities and estimators
#       sweep    FILE       Sweep alpha, theta or G (--param --from --to --steps)
#       pointer  FILE       Gaussian pointer readout for |k><k| (--G --path)
#       meter    FILE       CNOT meter probabilities and readout (--G)
#       shots    FILE       Poisson shot-noise trials of an estimator
#       fig3                Readout and attenuation-estimator curves
#
#  CSV goes to stdout or --out; the summary goes to stderr.  Exit codes:
#  0 success, 2 input error, 3 physics-domain error, 4 IO error.


import os
import sys
import json
import time
import socket
import argparse
import logging

from __version__ import version
from qstate import projector, projector_weak_values, weak_value
from qstate import checked_overlap, fmtcomplex
from backaction import exact_postselection_prob, reflectance_form_prob
from backaction import estimate_re_weak_value, estimate_im_weak_value, ATTEN
from backaction import PHASE
from pointer import make_gaussian, evolve_and_postselect, predicted_shifts
from pointer import width_convention_shift, moments, readout_table
from pointer import dump_density_csv
from qubitmeter import meter_row, SWEEP_HEADER as METER_HEADER
from shotnoise import CountingPlan, trials_table, fig3_dataset
from wvxfmt import load_experiment
from wvtable import make_table, write_csv
from wverror import wvError, wvIOError, BadConfig, BadRange, InapplicableParam
from Registry import estimators, by_component


log = logging.getLogger('wvsim')

# Default config file, looked for in the current directory
DEF_CONFIG = 'wvsim.conf'

# Built-in profile used when no config file is found
DEF_PROFILE = {
    'sigma': 1.0,
    'grid': 4096,
    'half_width': 10.0,
    'n_ref': 10000,
    'trials': 1000,
    'seed': 0,
    'weak_threshold': 0.1,
    'fig3_points': 100,
    'fig3_g_min': 1e-3,
    'fig3_alpha_min': 5e-3,
    'fig3_alpha_max': 0.5,
}

COMPUTE_HEADER = ('quantity', 'path', 're', 'im')
NO_PATH = '-'


#  PARSECONFIG -- Parse the configuration file.
#
def parseConfig(file, profile=None):
    '''Parse the configuration file and return the resolved profile.  A
       profile named after this host is merged over 'default', then the
       explicitly requested profile.
    '''
    log.debug('Opening config file: ' + file)
    if not os.path.exists(file):
        raise wvIOError('No such config file: ' + file)
    try:
        with open(file) as fd:
            config = json.load(fd)
        profiles = config['profiles']
    except OSError as e:
        raise wvIOError('Cannot read %s: %s' % (file, e.strerror or str(e)))
    except (ValueError, KeyError, TypeError) as e:
        raise BadConfig('Malformed config file %s: %s' % (file, e))

    cfg = dict(DEF_PROFILE)
    this_host = socket.gethostname().split('.')[0]     # simple host name
    for name in ('default', this_host, profile):
        if name is None or name not in profiles:
            if name == profile and profile is not None:
                raise BadConfig('No such profile: %s' % profile)
            continue
        cfg.update(_checkProfile(name, profiles[name]))
    return cfg


def _checkProfile(name, values):
    if not isinstance(values, dict):
        raise BadConfig('Profile %s is not an object' % name)
    for key, val in values.items():
        if key not in DEF_PROFILE:
            raise BadConfig('Unknown key "%s" in profile %s' % (key, name))
        if isinstance(val, bool) or not isinstance(val, (int, float)):
            raise BadConfig('Key "%s" in profile %s must be a number'
                            % (key, name))
    return values


def loadConfig(parsed):
    '''Resolve the profile from --config, ./wvsim.conf or the built-in
       defaults.
    '''
    if parsed.config is not None:
        return parseConfig(parsed.config, parsed.profile)
    if os.path.exists(DEF_CONFIG):
        return parseConfig(DEF_CONFIG, parsed.profile)
    if parsed.profile not in (None, 'default'):
        raise BadConfig('No config file for profile %s' % parsed.profile)
    return dict(DEF_PROFILE)


def _opt(parsed, name, cfg, key):
    value = getattr(parsed, name, None)
    return cfg[key] if value is None else value


#  CREATE_PARSER -- Commandline argument parser.
#
def create_parser():
    '''Commandline argument parser.
    '''
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=None, type=str)
    common.add_argument("--profile", default=None, type=str)
    common.add_argument("--out", default=None, type=str)
    common.add_argument("-v", "--verbose", action="store_true")
    common.add_argument("--debug", action="store_true")

    counting = argparse.ArgumentParser(add_help=False)
    counting.add_argument("--n-ref", dest="n_ref", default=None, type=int)
    counting.add_argument("--seed", default=None, type=int)
    counting.add_argument("--trials", default=None, type=int)

    parser = argparse.ArgumentParser(
        prog='wvsim',
        description="Weak-value, back-action and shot-noise simulator")
    parser.add_argument("--version", action="version",
                        version='%(prog)s ' + version)
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    p = sub.add_parser("compute", parents=[common],
                       help="weak values and post-selection probabilities")
    p.add_argument("input")

    p = sub.add_parser("sweep", parents=[common, counting],
                       help="sweep alpha, theta or G")
    p.add_argument("input")
    p.add_argument("--param", required=True, choices=sorted(estimators))
    p.add_argument("--from", dest="start", required=True, type=float)
    p.add_argument("--to", dest="stop", required=True, type=float)
    p.add_argument("--steps", required=True, type=int)

    p = sub.add_parser("pointer", parents=[common],
                       help="Gaussian pointer readout")
    p.add_argument("input")
    p.add_argument("--G", dest="G", required=True, type=float)
    p.add_argument("--sigma", default=None, type=float)
    p.add_argument("--grid", default=None, type=int)
    p.add_argument("--path", default=None, type=int)
    p.add_argument("--density", default=None, type=str)

    p = sub.add_parser("meter", parents=[common],
                       help="CNOT meter qubit readout")
    p.add_argument("input")
    p.add_argument("--G", dest="G", required=True, type=float)

    p = sub.add_parser("shots", parents=[common, counting],
                       help="Poisson shot-noise trials")
    p.add_argument("input")
    p.add_argument("--G", dest="G", default=None, type=float)

    p = sub.add_parser("fig3", parents=[common, counting],
                       help="readout and attenuation-estimator curves")

    return parser


# ###################################
#  Commands
# ###################################

def run_compute(parsed, cfg):
    '''Weak values, overlap, probabilities and estimators for one file.
    '''
    spec = load_experiment(parsed.input)
    pre, post = spec.states()
    overlap = checked_overlap(pre, post)
    wvs = projector_weak_values(pre, post)
    report = exact_postselection_prob(pre, post, spec.components,
                                      threshold=cfg['weak_threshold'])

    rows = [('wv', k, w.real, w.imag) for k, w in enumerate(wvs)]
    rows.append(('overlap', NO_PATH, overlap.real, overlap.imag))
    rows.append(('baseline', NO_PATH, report.baseline, 0.0))
    rows.append(('exact', NO_PATH, report.exact, 0.0))
    rows.append(('first_order', NO_PATH, report.first_order, 0.0))

    if len(spec.components) == 0:
        sys.stderr.write('No components: estimators skipped\n')
    else:
        rows.append(('reflectance_form', NO_PATH,
                     reflectance_form_prob(pre, post, spec.components), 0.0))
        rows.extend(_estimator_rows(spec, report))

    write_csv(make_table(COMPUTE_HEADER, rows), parsed.out)
    sys.stderr.write('%s: <phi|psi> = %s  baseline = %s  exact = %s\n'
                     % (spec.name or parsed.input, fmtcomplex(overlap),
                        repr(report.baseline), repr(report.exact)))
    return len(rows)


def _estimator_rows(spec, report):
    '''Apply the Re and Im estimators to the exact probability.
    '''
    if len(spec.components) != 1:
        log.warning('%d component paths: estimators skipped'
                    % len(spec.components))
        sys.stderr.write('Estimators need a single component path\n')
        return []
    comp = list(spec.components)[0]
    if comp.kind == ATTEN and comp.alpha > 0.0:
        return [('n_est', comp.path_index,
                 estimate_re_weak_value(report.exact, report.baseline,
                                        comp.alpha), 0.0)]
    if comp.kind == PHASE and comp.theta != 0.0:
        return [('im_est', comp.path_index,
                 estimate_im_weak_value(report.exact, report.baseline,
                                        comp.theta), 0.0)]
    sys.stderr.write('Component on path %d has no estimator\n'
                     % comp.path_index)
    return []


def _estimator(name, cfg):
    return type(estimators[name])(threshold=cfg['weak_threshold'])


def run_sweep(parsed, cfg):
    '''One CSV row per grid point of the swept parameter.
    '''
    spec = load_experiment(parsed.input)
    est = _estimator(parsed.param, cfg)
    values = est.grid(parsed.start, parsed.stop, parsed.steps)
    table = est.sweep(spec, values, _opt(parsed, 'n_ref', cfg, 'n_ref'))
    write_csv(table, parsed.out)
    return len(values)


def run_pointer(parsed, cfg):
    '''Post-selected Gaussian pointer readout for the projector on --path.
    '''
    spec = load_experiment(parsed.input)
    pre, post = spec.states()
    k = spec.dim - 1 if parsed.path is None else parsed.path
    if not 0 <= k < spec.dim:
        raise InapplicableParam('--path %d is out of range for dim %d'
                                % (k, spec.dim))
    g = parsed.G
    sigma = _opt(parsed, 'sigma', cfg, 'sigma')
    obs = projector(spec.dim, k)

    pointer = make_gaussian(sigma, cfg['half_width'],
                            _opt(parsed, 'grid', cfg, 'grid'), abs(g))
    out, readout = evolve_and_postselect(pre, post, obs, g, pointer)
    if parsed.density is not None:
        dump_density_csv(out.q, out.density(), parsed.density)
    write_csv(readout_table(readout), parsed.out)

    wv = weak_value(pre, post, obs)
    q0, _, p0, _ = moments(pointer)
    dq, dp = predicted_shifts(wv, g, pointer)
    sys.stderr.write('wv = %s  shift_q = %r (predicted %r)  '
                     'shift_p = %r (predicted %r, width form %r)\n'
                     % (fmtcomplex(wv.value), readout.mean_q - q0, dq,
                        readout.mean_p - p0, dp,
                        width_convention_shift(wv, g, sigma)))
    return pointer.n_points


def run_meter(parsed, cfg):
    '''Meter probabilities and normalized readout at strength --G.
    '''
    spec = load_experiment(parsed.input)
    pre, post = spec.states()
    write_csv(make_table(METER_HEADER, [meter_row(pre, post, parsed.G)]),
              parsed.out)
    return 1


def run_shots(parsed, cfg):
    '''Shot-noise trials of the meter (--G) or the file's component.
    '''
    spec = load_experiment(parsed.input)
    if parsed.G is not None:
        name, value = 'G', parsed.G
    else:
        if len(spec.components) != 1:
            raise InapplicableParam('shots needs --G or a single component')
        kind = list(spec.components)[0].kind
        if kind not in by_component:
            raise InapplicableParam('No estimator for a %s component' % kind)
        name = by_component[kind]
        value = None

    est = _estimator(name, cfg)
    if value is None:
        value = est.default_value(spec)
    est.validate(value)

    plan = CountingPlan(n_ref_mean=_opt(parsed, 'n_ref', cfg, 'n_ref'),
                        seed=_opt(parsed, 'seed', cfg, 'seed'),
                        trials=_opt(parsed, 'trials', cfg, 'trials'))
    trials = est.shots(spec, value, plan)
    write_csv(trials_table(trials), parsed.out)

    summary, sigma = est.summary(spec, value, trials, plan.n_ref_mean)
    sys.stderr.write('%s = %r: mean = %r  std = %r  analytic sigma = %r  '
                     'invalid = %d\n' % (name, value, summary.mean,
                                         summary.std, sigma, summary.invalid))
    return plan.trials


def run_fig3(parsed, cfg):
    '''Write fig3a.csv (G sweep) and fig3b.csv (alpha sweep) into --out.
       Monte Carlo columns are added when --trials is given.
    '''
    outdir = '.' if parsed.out in (None, '') else parsed.out
    if not os.path.isdir(outdir):
        raise wvIOError('No such output directory: %s' % outdir)
    trials = 0 if parsed.trials is None else parsed.trials
    if trials < 0:
        raise BadRange('trials must be >= 0, got %r' % trials)

    fig_a, fig_b = fig3_dataset(n_ref_mean=_opt(parsed, 'n_ref', cfg, 'n_ref'),
                                n_points=int(cfg['fig3_points']),
                                g_min=cfg['fig3_g_min'],
                                alpha_min=cfg['fig3_alpha_min'],
                                alpha_max=cfg['fig3_alpha_max'],
                                trials=trials,
                                seed=_opt(parsed, 'seed', cfg, 'seed'))
    write_csv(fig_a, os.path.join(outdir, 'fig3a.csv'))
    write_csv(fig_b, os.path.join(outdir, 'fig3b.csv'))
    return len(fig_a) + len(fig_b)


commands = {
    'compute': run_compute,
    'sweep': run_sweep,
    'pointer': run_pointer,
    'meter': run_meter,
    'shots': run_shots,
    'fig3': run_fig3,
}


#  Application MAIN
#
def main(argv=None):
    parsed = create_parser().parse_args(argv)

    level = logging.WARNING
    if parsed.verbose:
        level = logging.INFO
    if parsed.debug:
        level = logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr,
                        format='%(levelname)s %(name)s: %(message)s')
    log.setLevel(level)

    try:
        cfg = loadConfig(parsed)
        stime = time.time()
        npts = commands[parsed.command](parsed, cfg)
        log.info('%s time: %g  NPoints: %d'
                 % (parsed.command, time.time() - stime, npts))
    except wvError as e:
        sys.stderr.write('wvsim: %s\n' % e)
        return e.exit_code
    return 0


if __name__ == '__main__':
    sys.exit(main())
