#!/usr/bin/env python
#
#  WVERROR -- Error classes for the weak-value simulator.
#

__authors__ = 'wvsim developers'
__version__ = 'v1.0.0'


# ###################################
#  Base error class
# ###################################

class wvError(Exception):
    '''A throwable error class.  The 'exit_code' is the process status the
       command-line driver returns when the error reaches it.
    '''
    exit_code = 2

    def __init__(self, message, exit_code=None):
        Exception.__init__(self, message)
        self.message = message
        if exit_code is not None:
            self.exit_code = exit_code

    def __str__(self):
        return self.message


class wvPhysicsError(wvError):
    '''Physics-domain failures (undefined weak values, impossible selections).
    '''
    exit_code = 3


class wvIOError(wvError):
    '''File and stream failures.
    '''
    exit_code = 4


# -----------------------------
#  Input errors
# -----------------------------

class ZeroVector(wvError):
    pass

class DimMismatch(wvError):
    pass

class NotNormalized(wvError):
    pass

class NotOrthonormal(wvError):
    pass

class PathOutOfRange(wvError):
    pass

class NonpositiveAlpha(wvError):
    pass

class ZeroTheta(wvError):
    pass

class ZeroBaseline(wvError):
    pass

class NotWeak(wvError):
    pass

class NegativeMean(wvError):
    pass

class StrengthOutOfRange(wvError):
    pass

class BadGrid(wvError):
    pass

class BadRange(wvError):
    pass

class InapplicableParam(wvError):
    pass

class BadConfig(wvError):
    pass


# -----------------------------
#  Physics-domain errors
# -----------------------------

class DegenerateOverlap(wvPhysicsError):
    pass

class ZeroStrength(wvPhysicsError):
    pass

class ImpossiblePostselection(wvPhysicsError):
    pass

class DegenerateBaseline(wvPhysicsError):
    pass

class GridOverflow(wvPhysicsError):
    pass

class RouteMismatch(wvPhysicsError):
    pass


# -----------------------------
#  Experiment-file errors
# -----------------------------

class WvxError(wvError):
    '''Experiment-file error carrying a 1-based line and column.
    '''
    def __init__(self, message, line, col=1):
        self.line = line
        self.col = col
        self.reason = message
        wvError.__init__(self, 'line %d, col %d: %s' % (line, col, message))


class WvxSyntaxError(WvxError):
    pass

class IndexOutOfRange(WvxError):
    pass

class ZeroState(WvxError):
    pass

class DuplicateDirective(WvxError):
    pass
