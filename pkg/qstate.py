#!/usr/bin/env python
#
#  QSTATE -- State vectors, spectral observables and weak values over a
#  finite (path) basis.
#

__authors__ = 'wvsim developers'
__version__ = 'v1.0.0'


'''
    State vectors, observables and weak values.

    Interface
    ---------

          psi = make_state  (raw_amplitudes, labels=None)
        psi = basis_state  (dim, k)
             z = inner      (bra, ket)
           psi = tensor     (a, b)
     obs = projector        (dim, k)
     obs = diagonal         (eigenvalues)
      wv = weak_value       (pre, post, obs)
   wvs = projector_weak_values  (pre, post)
      wv = joint_weak_value (pre, post, dims, digits)
        x = expectation     (state, obs)

    All values are immutable after construction.
'''

import math
from dataclasses import dataclass

import numpy as np

from wverror import ZeroVector, DimMismatch, NotNormalized, NotOrthonormal
from wverror import DegenerateOverlap, PathOutOfRange


NORM_TOL = 1e-9                 # validation tolerance on unit norm
ZERO_TOL = 1e-12                # amplitudes at or below this are zero
DEGENERATE_OVERLAP = 1e-9       # |<phi|psi>| at or below this is degenerate


def _frozen(arr):
    arr = np.array(arr, dtype=np.complex128)
    arr.flags.writeable = False
    return arr


# ###################################
#  State vectors
# ###################################

class StateVector(object):
    '''Normalized complex amplitude vector over a finite basis.  Basis
       labels are cosmetic; every operation is index based.
    '''
    __slots__ = ('_amps', '_labels')

    def __init__(self, amplitudes, labels=None):
        amps = _frozen(amplitudes).reshape(-1)
        if amps.size < 1:
            raise DimMismatch('State vector must have dim >= 1')
        norm2 = float(np.vdot(amps, amps).real)
        if abs(norm2 - 1.0) > NORM_TOL:
            raise NotNormalized('State is not normalized: sum |a|^2 = %r'
                                % norm2)
        if labels is not None:
            labels = tuple(str(l) for l in labels)
            if len(labels) != amps.size:
                raise DimMismatch('Got %d labels for a dim %d state'
                                  % (len(labels), amps.size))
        self._amps = amps
        self._labels = labels

    @property
    def dim(self):
        return self._amps.size

    @property
    def amplitudes(self):
        return self._amps

    @property
    def labels(self):
        return self._labels

    def __len__(self):
        return self._amps.size

    def __getitem__(self, k):
        return complex(self._amps[k])

    def __repr__(self):
        return 'StateVector(%s)' % ', '.join(fmtcomplex(a) for a in self._amps)


def make_state(raw_amplitudes, labels=None):
    '''Normalize a raw amplitude sequence into a StateVector.
    '''
    raw = np.asarray(raw_amplitudes, dtype=np.complex128).reshape(-1)
    if raw.size < 1 or not np.any(np.abs(raw) > ZERO_TOL):
        raise ZeroVector('Cannot normalize a zero vector')
    return StateVector(raw / np.linalg.norm(raw), labels=labels)


def basis_state(dim, k):
    '''The computational basis state |k> in dimension dim.
    '''
    if not 0 <= k < dim:
        raise PathOutOfRange('Basis index %d outside dim %d' % (k, dim))
    amps = np.zeros(dim, dtype=np.complex128)
    amps[k] = 1.0
    return StateVector(amps)


def _check_dims(a, b):
    if a.dim != b.dim:
        raise DimMismatch('Dimension mismatch: %d vs %d' % (a.dim, b.dim))


def inner(bra, ket):
    '''<bra|ket>, conjugating the bra.
    '''
    _check_dims(bra, ket)
    return complex(np.vdot(bra.amplitudes, ket.amplitudes))


def tensor(a, b):
    '''Tensor product a (x) b; index i*dim_b + j holds a_i * b_j.
    '''
    labels = None
    if a.labels is not None and b.labels is not None:
        labels = [la + lb for la in a.labels for lb in b.labels]
    return StateVector(np.kron(a.amplitudes, b.amplitudes), labels=labels)


def composite_index(dims, digits):
    '''Mixed-radix index of the product basis state |k l ...>.
    '''
    if len(dims) != len(digits):
        raise DimMismatch('Got %d digits for %d factors'
                          % (len(digits), len(dims)))
    index = 0
    for d, k in zip(dims, digits):
        if not 0 <= k < d:
            raise PathOutOfRange('Digit %d outside factor dim %d' % (k, d))
        index = index * d + k
    return index


# ###################################
#  Observables
# ###################################

class SpectralObservable(object):
    '''Observable given by eigenvalues and orthonormal eigenvectors.  The
       eigenvectors are held as the columns of a unitary matrix.
    '''
    __slots__ = ('_vals', '_vecs')

    def __init__(self, eigenvalues, eigenvectors):
        vals = np.array(eigenvalues, dtype=float).reshape(-1)
        vecs = list(eigenvectors)
        if vals.size < 1:
            raise DimMismatch('Observable needs at least one eigenvalue')
        if len(vecs) != vals.size:
            raise DimMismatch('Got %d eigenvalues for %d eigenvectors'
                              % (vals.size, len(vecs)))
        dim = vecs[0].dim if vecs else 0
        if dim != vals.size:
            raise DimMismatch('Observable needs %d eigenvectors, got %d'
                              % (dim, vals.size))
        for v in vecs:
            if v.dim != dim:
                raise DimMismatch('Eigenvector dim %d, expected %d'
                                  % (v.dim, dim))

        mat = np.column_stack([v.amplitudes for v in vecs])
        gram = mat.conj().T @ mat
        if np.max(np.abs(gram - np.eye(dim))) > NORM_TOL:
            raise NotOrthonormal('Eigenvectors are not orthonormal')
        if np.max(np.abs(mat @ mat.conj().T - np.eye(dim))) > NORM_TOL:
            raise NotOrthonormal('Eigenvectors do not resolve the identity')

        vals.flags.writeable = False
        mat.flags.writeable = False
        self._vals = vals
        self._vecs = mat

    @property
    def dim(self):
        return self._vals.size

    @property
    def eigenvalues(self):
        return self._vals

    def coefficients(self, state):
        '''<o_k|state> for every k.'''
        if state.dim != self.dim:
            raise DimMismatch('Dimension mismatch: %d vs %d'
                              % (self.dim, state.dim))
        return self._vecs.conj().T @ state.amplitudes

    def apply(self, state):
        '''Unnormalized amplitudes of O|state>.'''
        return self._vecs @ (self._vals * self.coefficients(state))

    def function(self, f):
        '''Matrix of f(O) = sum_k f(o_k) |o_k><o_k|.'''
        return (self._vecs * f(self._vals)) @ self._vecs.conj().T


def diagonal(eigenvalues):
    '''Observable diagonal in the computational basis.
    '''
    vals = list(eigenvalues)
    dim = len(vals)
    return SpectralObservable(vals, [basis_state(dim, k) for k in range(dim)])


def projector(dim, k):
    '''|k><k| on the computational basis.
    '''
    if not 0 <= k < dim:
        raise PathOutOfRange('Projector index %d outside dim %d' % (k, dim))
    return diagonal([1.0 if i == k else 0.0 for i in range(dim)])


def identity(dim):
    return diagonal([1.0] * dim)


# ###################################
#  Weak values
# ###################################

@dataclass(frozen=True)
class WeakValueResult:
    '''Weak value <O>_w together with the overlap <phi|psi> it divides by.
    '''
    value: complex
    overlap: complex

    @property
    def re(self):
        return self.value.real

    @property
    def im(self):
        return self.value.imag


def checked_overlap(pre, post):
    '''<post|pre>, raising DegenerateOverlap when the weak value would be
       undefined.
    '''
    overlap = inner(post, pre)
    if abs(overlap) <= DEGENERATE_OVERLAP:
        raise DegenerateOverlap('degenerate overlap: |<phi|psi>| = %r'
                                % abs(overlap))
    return overlap


def weak_value(pre, post, obs):
    '''<post|O|pre> / <post|pre>.
    '''
    _check_dims(pre, post)
    overlap = checked_overlap(pre, post)
    num = complex(np.vdot(post.amplitudes, obs.apply(pre)))
    return WeakValueResult(value=num / overlap, overlap=overlap)


def projector_weak_values(pre, post):
    '''Weak values of every computational-basis projector |k><k|.  They sum
       to one.
    '''
    _check_dims(pre, post)
    overlap = checked_overlap(pre, post)
    wvs = post.amplitudes.conj() * pre.amplitudes / overlap
    return tuple(complex(w) for w in wvs)


def joint_weak_value(pre, post, dims, digits):
    '''Weak value of |k l ...><k l ...| on a composite basis.
    '''
    if int(np.prod(dims)) != pre.dim:
        raise DimMismatch('Factor dims %s do not multiply to %d'
                          % (list(dims), pre.dim))
    index = composite_index(dims, digits)
    return projector_weak_values(pre, post)[index]


def expectation(state, obs):
    '''<state|O|state> = sum_k o_k |<o_k|state>|^2.
    '''
    weights = np.abs(obs.coefficients(state)) ** 2
    return float(np.dot(obs.eigenvalues, weights))


# ###################################
#  Text forms
# ###################################

def fmtnum(x):
    '''Shortest round-trip decimal text of a real number.
    '''
    x = float(x)
    if x == 0.0:
        return '0'
    text = repr(x)
    return text[:-2] if text.endswith('.0') else text


def fmtcomplex(z):
    '''Text form 'a+bi' of a complex number.
    '''
    z = complex(z)
    sign = '-' if math.copysign(1.0, z.imag) < 0 and z.imag != 0 else '+'
    return '%s%s%si' % (fmtnum(z.real), sign, fmtnum(abs(z.imag)))
