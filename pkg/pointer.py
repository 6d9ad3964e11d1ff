#!/usr/bin/env python
#
#  POINTER -- Von Neumann Gaussian pointer on a periodic position grid.
#

__authors__ = 'wvsim developers'
__version__ = 'v1.0.0'


'''
    The pointer Psi(Q) ~ exp(-Q^2 / 2 sigma^2) is coupled to the system by
    exp(-i G O P), hbar = 1.  Each eigenvalue o_k displaces the pointer by
    G o_k; displacements are applied in the momentum representation,

        Psi(Q - d) = ifft( fft(Psi) * exp(-i p d) ),

    which is exact on the periodic grid as long as nothing wraps around.
    Momentum moments are taken from |fft(Psi)|^2 (Parseval), not from
    finite differences.
'''

import math
import logging
from dataclasses import dataclass

import numpy as np

from qstate import checked_overlap
from wverror import BadGrid, GridOverflow, DimMismatch, ImpossiblePostselection
from wvtable import make_table, write_csv


log = logging.getLogger(__name__)

DEF_POINTS = 4096
DEF_HALF_WIDTH = 10.0           # grid half-width in units of sigma
MIN_HALF_WIDTH = 8.0
MIN_POINTS = 256
ROOM_SIGMAS = 8.0               # clearance kept between a packet and the edge
BOUNDARY_TOL = 1e-12            # largest amplitude allowed on the edge points

DENSITY_HEADER = ('Q', 'density')
READOUT_HEADER = ('mean_q', 'mean_p', 'var_q', 'var_p', 'postselect_prob')


# ###################################
#  Pointer and readout types
# ###################################

@dataclass(frozen=True, eq=False)
class GaussianPointer:
    '''Pointer wavefunction sampled on the uniform periodic grid
       Q_i = grid_min + i*dq, dq = (grid_max - grid_min)/n_points.
    '''
    sigma: float
    grid_min: float
    grid_max: float
    n_points: int
    amplitudes: np.ndarray

    @property
    def dq(self):
        return (self.grid_max - self.grid_min) / self.n_points

    @property
    def q(self):
        return self.grid_min + self.dq * np.arange(self.n_points)

    @property
    def p(self):
        return 2.0 * np.pi * np.fft.fftfreq(self.n_points, d=self.dq)

    def density(self):
        return np.abs(self.amplitudes) ** 2

    def norm(self):
        return float(self.density().sum() * self.dq)

    def with_amplitudes(self, amps):
        amps = np.array(amps, dtype=np.complex128)
        amps.flags.writeable = False
        return GaussianPointer(self.sigma, self.grid_min, self.grid_max,
                               self.n_points, amps)


@dataclass(frozen=True)
class PointerReadout:
    mean_q: float
    mean_p: float
    var_q: float
    var_p: float
    postselect_prob: float


def _is_pow2(n):
    return n >= 1 and (n & (n - 1)) == 0


def make_gaussian(sigma, half_width_sigmas=DEF_HALF_WIDTH,
                  n_points=DEF_POINTS, margin=0.0):
    '''Normalized Gaussian pointer centered at Q = 0.  The grid spans
       +/-(half_width_sigmas * sigma + margin).
    '''
    if not sigma > 0.0 or not math.isfinite(sigma):
        raise BadGrid('sigma must be finite and > 0, got %r' % sigma)
    if int(n_points) != n_points or not _is_pow2(int(n_points)) \
            or n_points < MIN_POINTS:
        raise BadGrid('n_points must be a power of two >= %d, got %r'
                      % (MIN_POINTS, n_points))
    if not half_width_sigmas >= MIN_HALF_WIDTH:
        raise BadGrid('half_width_sigmas must be >= %g, got %r'
                      % (MIN_HALF_WIDTH, half_width_sigmas))
    if not margin >= 0.0:
        raise BadGrid('margin must be >= 0, got %r' % margin)

    n_points = int(n_points)
    half = half_width_sigmas * sigma + margin
    dq = 2.0 * half / n_points
    q = -half + dq * np.arange(n_points)
    amps = np.exp(-q ** 2 / (2.0 * sigma ** 2)).astype(np.complex128)
    amps /= math.sqrt(float(np.sum(np.abs(amps) ** 2) * dq))
    amps.flags.writeable = False
    return GaussianPointer(float(sigma), -half, half, n_points, amps)


def default_pointer(sigma=1.0, n_points=DEF_POINTS, displacement=0.0):
    '''Pointer on the default grid: 10 sigma plus the largest displacement.
    '''
    return make_gaussian(sigma, DEF_HALF_WIDTH, n_points, abs(displacement))


# ###################################
#  Grid operations
# ###################################

def displace(pointer, d):
    '''Amplitudes of Psi(Q - d).
    '''
    if d == 0.0:
        return np.array(pointer.amplitudes)
    kernel = np.exp(-1j * pointer.p * d)
    return np.fft.ifft(np.fft.fft(pointer.amplitudes) * kernel)


def _check_room(pointer, shifts):
    '''Refuse displacements that would push a packet within ROOM_SIGMAS of
       the grid edge.
    '''
    center = moments(pointer)[0]
    room = min(center - pointer.grid_min, pointer.grid_max - center)
    need = ROOM_SIGMAS * pointer.sigma + max(abs(d) for d in shifts)
    if need > room:
        raise GridOverflow('Displacement %g needs %g of room, grid has %g'
                           % (max(abs(d) for d in shifts), need, room))


def _check_edges(amps):
    edge = max(abs(amps[0]), abs(amps[-1]))
    if edge > BOUNDARY_TOL:
        raise GridOverflow('Pointer amplitude %g on the grid boundary' % edge)


def moments(pointer, amps=None):
    '''(mean_q, var_q, mean_p, var_p) of the normalized amplitudes.
    '''
    amps = pointer.amplitudes if amps is None else amps
    dens = np.abs(amps) ** 2
    total = dens.sum()
    q = pointer.q
    mean_q = float(np.sum(q * dens) / total)
    var_q = float(np.sum((q - mean_q) ** 2 * dens) / total)

    spec = np.abs(np.fft.fft(amps)) ** 2
    p = pointer.p
    mean_p = float(np.sum(p * spec) / spec.sum())
    var_p = float(np.sum((p - mean_p) ** 2 * spec) / spec.sum())
    return mean_q, var_q, mean_p, var_p


def readout_of(pointer, postselect_prob=1.0):
    mean_q, var_q, mean_p, var_p = moments(pointer)
    return PointerReadout(mean_q=mean_q, mean_p=mean_p, var_q=var_q,
                          var_p=var_p, postselect_prob=float(postselect_prob))


# ###################################
#  Measurement model
# ###################################

def evolve_and_postselect(pre, post, obs, g, pointer):
    '''Couple the pointer by exp(-i g O P), post-select on 'post', and
       return the renormalized pointer with its readout.
    '''
    if pre.dim != post.dim or obs.dim != pre.dim:
        raise DimMismatch('Dimension mismatch among pre, post and observable')
    checked_overlap(pre, post)

    shifts = [g * o for o in obs.eigenvalues]
    _check_room(pointer, shifts)

    coeff = np.conj(obs.coefficients(post)) * obs.coefficients(pre)
    phi = np.zeros(pointer.n_points, dtype=np.complex128)
    for c, d in zip(coeff, shifts):
        if c == 0:
            continue
        shifted = displace(pointer, d)
        _check_edges(shifted)
        phi += c * shifted

    prob = float(np.sum(np.abs(phi) ** 2) * pointer.dq)
    if not prob > 0.0:
        raise ImpossiblePostselection('Post-selected pointer has zero norm')

    out = pointer.with_amplitudes(phi / math.sqrt(prob))
    return out, readout_of(out, prob)


def predicted_shifts(wv, g, pointer):
    '''First-order pointer shifts (dq, dp) for weak value 'wv'.  The
       momentum shift uses the pointer's own momentum variance,
       dp = 2 g Im(wv) <P^2>, which is g Im(wv) / sigma^2 for the Gaussian.
    '''
    if abs(g * wv.value) > 0.1 * pointer.sigma:
        log.warning('Coupling g*|wv| = %g is not small against sigma = %g'
                    % (abs(g * wv.value), pointer.sigma))
    var_p = moments(pointer)[3]
    return g * wv.re, 2.0 * g * wv.im * var_p


def width_convention_shift(wv, g, sigma):
    '''Momentum shift in the 2 G Im(wv) / sigma^2 form often quoted for
       this pointer; twice the grid-confirmed value.
    '''
    return 2.0 * g * wv.im / sigma ** 2


@dataclass(frozen=True, eq=False)
class EnsembleDensity:
    '''Pointer position density without post-selection.'''
    q: np.ndarray
    density: np.ndarray
    weights: np.ndarray
    centers: np.ndarray
    dq: float

    def integral(self):
        return float(self.density.sum() * self.dq)

    def mean(self):
        return float(np.sum(self.q * self.density) / self.density.sum())

    def mode_weights(self):
        '''Probability mass nearest to each distinct center.'''
        centers = np.unique(self.centers)
        nearest = np.argmin(np.abs(self.q[:, None] - centers[None, :]), axis=1)
        mass = np.array([self.density[nearest == i].sum() * self.dq
                         for i in range(centers.size)])
        return centers, mass


def ensemble_distribution(pre, obs, g, pointer):
    '''sum_k |<o_k|pre>|^2 |Psi(Q - g o_k)|^2.
    '''
    if obs.dim != pre.dim:
        raise DimMismatch('Dimension mismatch: %d vs %d' % (obs.dim, pre.dim))
    weights = np.abs(obs.coefficients(pre)) ** 2
    shifts = [g * o for o in obs.eigenvalues]
    _check_room(pointer, shifts)

    dens = np.zeros(pointer.n_points)
    for w, d in zip(weights, shifts):
        if w == 0:
            continue
        shifted = displace(pointer, d)
        _check_edges(shifted)
        dens += w * np.abs(shifted) ** 2
    return EnsembleDensity(q=pointer.q, density=dens, weights=weights,
                           centers=np.array(shifts), dq=pointer.dq)


# ###################################
#  CSV dumps
# ###################################

def density_table(q, density):
    return make_table(DENSITY_HEADER, list(zip(q, density)))


def readout_table(readout):
    return make_table(READOUT_HEADER, [(readout.mean_q, readout.mean_p,
                                        readout.var_q, readout.var_p,
                                        readout.postselect_prob)])


def dump_density_csv(q, density, out=None):
    return write_csv(density_table(q, density), out)


def dump_readout_csv(readout, out=None):
    return write_csv(readout_table(readout), out)
