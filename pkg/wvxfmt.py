#!/usr/bin/env python
#
#  WVXFMT -- Reader and writer for .wvx experiment descriptions.
#

__authors__ = 'wvsim developers'
__version__ = 'v1.0.0'


'''
    Line-oriented experiment format.  One directive per line, fields
    separated by blanks, '#' starts a comment:

        # wvx v1
        dim <positive-int>              # required, once
        name <string-to-eol>            # optional
        pre  <index> <re> <im>          # repeatable
        post <index> <re> <im>          # repeatable
        component <index> phase <theta>
        component <index> atten <alpha>
        component <index> cnum <re> <im>

    Amplitudes are normalized when the file is loaded.  Several component
    lines on one path compose into a single c-number.
'''

import re
import math
import logging
from dataclasses import dataclass, field

import numpy as np

from qstate import StateVector, fmtnum
from backaction import ComponentSet, phase, attenuator, general
from backaction import PHASE, ATTEN, GENERAL
from wverror import WvxSyntaxError, IndexOutOfRange, ZeroState
from wverror import DuplicateDirective, wvIOError, wvError


log = logging.getLogger(__name__)

HEADER = '# wvx v1'
ZERO_TOL = 1e-12

NUMBER = re.compile(r'[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$')
INTEGER = re.compile(r'\d+$')
FIELD = re.compile(r'\S+')

COMPONENT_KINDS = {'phase': PHASE, 'atten': ATTEN, 'cnum': GENERAL}
KIND_ORDER = {PHASE: 0, ATTEN: 1, GENERAL: 2}


# ###################################
#  Experiment description
# ###################################

@dataclass(frozen=True, eq=False)
class ExperimentSpec:
    '''Parsed experiment: sparse normalized amplitudes and components.'''
    dim: int
    pre_amplitudes: dict
    post_amplitudes: dict
    components: ComponentSet = field(default_factory=ComponentSet)
    name: str = None

    def _dense(self, sparse):
        amps = np.zeros(self.dim, dtype=np.complex128)
        for k, a in sparse.items():
            amps[k] = a
        return amps

    def states(self):
        '''(pre, post) as StateVectors.'''
        return (StateVector(self._dense(self.pre_amplitudes)),
                StateVector(self._dense(self.post_amplitudes)))

    def equivalent(self, other, tol=1e-12):
        '''Structural equality, amplitudes and multipliers within tol.'''
        if self.dim != other.dim or self.name != other.name:
            return False
        for mine, theirs in ((self.pre_amplitudes, other.pre_amplitudes),
                             (self.post_amplitudes, other.post_amplitudes)):
            if np.max(np.abs(self._dense(mine) - self._dense(theirs))) > tol:
                return False
        if self.components.paths() != other.components.paths():
            return False
        for a, b in zip(self.components, other.components):
            if a.kind != b.kind or abs(a.c - b.c) > tol:
                return False
        return True


def normalized(sparse):
    keys = sorted(sparse)
    amps = np.array([sparse[k] for k in keys], dtype=np.complex128)
    # largest real or imaginary part first, so huge amplitudes stay finite
    amps = amps / np.max(np.maximum(np.abs(amps.real), np.abs(amps.imag)))
    amps = amps / np.linalg.norm(amps)
    return {k: complex(a) for k, a in zip(keys, amps) if a != 0}


# ###################################
#  Parser
# ###################################

class _Line(object):
    '''One source line split into (text, column) fields.'''

    def __init__(self, lineno, text):
        self.lineno = lineno
        self.text = text
        body = text.split('#', 1)[0]
        self.fields = [(m.group(0), m.start() + 1) for m in FIELD.finditer(body)]

    def fail(self, message, i=0, cls=WvxSyntaxError):
        col = self.fields[i][1] if i < len(self.fields) else len(self.text) + 1
        raise cls(message, self.lineno, col)

    def arity(self, n, usage):
        if len(self.fields) != n:
            self.fail('expected "%s"' % usage,
                      min(len(self.fields), n) if len(self.fields) > n else 0)

    def integer(self, i, what):
        text = self.fields[i][0]
        if not INTEGER.match(text):
            self.fail('%s must be a nonnegative integer, got "%s"'
                      % (what, text), i)
        return int(text)

    def number(self, i, what):
        text = self.fields[i][0]
        if not NUMBER.match(text):
            self.fail('%s must be a decimal number, got "%s"' % (what, text), i)
        value = float(text)
        if not math.isfinite(value):
            self.fail('%s is out of range, got "%s"' % (what, text), i)
        return value


def parse_experiment(text):
    '''Parse .wvx text into an ExperimentSpec.
    '''
    if text.startswith('\ufeff'):
        text = text[1:]
    lines = [ln[:-1] if ln.endswith('\r') else ln for ln in text.split('\n')]
    if lines and lines[-1] == '':
        lines.pop()

    dim = None
    name = None
    amps = {'pre': {}, 'post': {}}
    last_line = {'pre': None, 'post': None}
    refs = []                   # (index, line, field) checked once dim is known
    comps = {}                  # (path, kind) -> component

    for lineno, raw in enumerate(lines, 1):
        ln = _Line(lineno, raw)
        if not ln.fields:
            continue
        directive = ln.fields[0][0]

        if directive == 'dim':
            ln.arity(2, 'dim <positive-int>')
            if dim is not None:
                ln.fail('dim declared twice', 0, DuplicateDirective)
            dim = ln.integer(1, 'dim')
            if dim < 1:
                ln.fail('dim must be positive', 1)

        elif directive == 'name':
            if name is not None:
                ln.fail('name declared twice', 0, DuplicateDirective)
            m = re.match(r'\s*name\s+(.*?)\s*$', raw.split('#', 1)[0])
            if m is None or m.group(1) == '':
                ln.fail('expected "name <string>"')
            name = m.group(1)

        elif directive in ('pre', 'post'):
            ln.arity(4, '%s <index> <re> <im>' % directive)
            k = ln.integer(1, 'index')
            if k in amps[directive]:
                ln.fail('%s amplitude %d given twice' % (directive, k), 1,
                        DuplicateDirective)
            amps[directive][k] = complex(ln.number(2, 're'),
                                         ln.number(3, 'im'))
            refs.append((k, ln, 1))
            last_line[directive] = lineno

        elif directive == 'component':
            if len(ln.fields) < 3:
                ln.fail('expected "component <index> <kind> <value...>"')
            k = ln.integer(1, 'index')
            word = ln.fields[2][0]
            if word not in COMPONENT_KINDS:
                ln.fail('unknown component kind "%s"' % word, 2)
            kind = COMPONENT_KINDS[word]
            if kind == GENERAL:
                ln.arity(5, 'component <index> cnum <re> <im>')
                c = complex(ln.number(3, 're'), ln.number(4, 'im'))
                if c == 0:
                    ln.fail('cnum multiplier must be nonzero', 3)
                make, value = general, c
            else:
                ln.arity(4, 'component <index> %s <value>' % word)
                value = ln.number(3, word)
                if kind == ATTEN and value < 0.0:
                    ln.fail('attenuation must be >= 0', 3)
                make = attenuator if kind == ATTEN else phase
            try:
                comp = make(k, value)
            except (wvError, ValueError, OverflowError) as e:
                ln.fail('bad %s component: %s' % (word, e), 3)
            if (k, kind) in comps:
                ln.fail('component %s on path %d given twice' % (word, k), 0,
                        DuplicateDirective)
            comps[(k, kind)] = comp
            refs.append((k, ln, 1))

        else:
            ln.fail('unknown directive "%s"' % directive)

    eof = len(lines) if lines else 1
    if dim is None:
        raise WvxSyntaxError('missing dim', eof if lines else 1, 1)
    for k, ln, i in refs:
        if k >= dim:
            ln.fail('index %d out of range for dim %d' % (k, dim), i,
                    IndexOutOfRange)
    for which in ('pre', 'post'):
        if not any(max(abs(a.real), abs(a.imag)) > ZERO_TOL
                   for a in amps[which].values()):
            raise ZeroState('%s state has no nonzero amplitude' % which,
                            last_line[which] or eof, 1)

    ordered = sorted(comps.items(), key=lambda kv: (kv[0][0],
                                                     KIND_ORDER[kv[0][1]]))
    return ExperimentSpec(dim=dim,
                          pre_amplitudes=normalized(amps['pre']),
                          post_amplitudes=normalized(amps['post']),
                          components=ComponentSet([c for _, c in ordered]),
                          name=name)


def load_experiment(path):
    '''Read and parse a .wvx file.
    '''
    try:
        with open(path, 'rb') as fd:
            raw = fd.read()
    except OSError as e:
        raise wvIOError('Cannot read %s: %s' % (path, e.strerror or str(e)))
    try:
        text = raw.decode('utf-8')
    except UnicodeDecodeError as e:
        head = raw[:e.start]
        line = head.count(b'\n') + 1
        col = len(head) - (head.rfind(b'\n') + 1) + 1
        raise WvxSyntaxError('file is not UTF-8 (%s)' % e.reason, line, col)
    log.debug('Read %d bytes from %s' % (len(raw), path))
    return parse_experiment(text)


# ###################################
#  Serializer
# ###################################

def _component_line(comp):
    if comp.kind == PHASE:
        return 'component %d phase %s' % (comp.path_index, fmtnum(comp.theta))
    if comp.kind == ATTEN:
        return 'component %d atten %s' % (comp.path_index, fmtnum(comp.alpha))
    return 'component %d cnum %s %s' % (comp.path_index, fmtnum(comp.c.real),
                                        fmtnum(comp.c.imag))


def serialize_experiment(spec):
    '''Canonical text: dim, name, pre and post by index, components by path.
    '''
    out = [HEADER, 'dim %d' % spec.dim]
    if spec.name is not None:
        out.append('name %s' % spec.name)
    for which, sparse in (('pre', spec.pre_amplitudes),
                          ('post', spec.post_amplitudes)):
        for k in sorted(sparse):
            a = sparse[k]
            out.append('%s %d %s %s' % (which, k, fmtnum(a.real),
                                        fmtnum(a.imag)))
    for comp in spec.components:
        out.append(_component_line(comp))
    return '\n'.join(out) + '\n'


def save_experiment(spec, path):
    try:
        with open(path, 'w', encoding='utf-8', newline='\n') as fd:
            fd.write(serialize_experiment(spec))
    except OSError as e:
        raise wvIOError('Cannot write %s: %s' % (path, e.strerror or str(e)))
