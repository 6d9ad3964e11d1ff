#!/usr/bin/env python
#
#  WVTABLE -- CSV output through astropy tables.
#

__authors__ = 'wvsim developers'
__version__ = 'v1.0.0'


import sys
from io import StringIO

import numpy as np

from astropy.table import Table
from astropy.io import ascii

from qstate import fmtnum, fmtcomplex
from wverror import wvIOError


def cell(value):
    '''Text of one CSV cell.  Numbers use the shortest round-trip form so
       output is byte-stable.
    '''
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return 'true' if value else 'false'
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (complex, np.complexfloating)):
        return fmtcomplex(value)
    return fmtnum(value)


def make_table(names, rows):
    '''Build a string-valued Table from row tuples.
    '''
    cols = [[] for _ in names]
    for row in rows:
        if len(row) != len(names):
            raise ValueError('Row has %d cells, header has %d'
                             % (len(row), len(names)))
        for col, value in zip(cols, row):
            col.append(cell(value))
    if not rows:
        return Table(names=names, dtype=[str] * len(names))
    return Table(cols, names=names)


def table_to_csv(table):
    '''Return the table as a CSV string.
    '''
    ret = StringIO()
    ascii.write(table, ret, format='csv')
    return ret.getvalue()


def write_csv(table, out=None):
    '''Write the table to the named file, or to stdout when 'out' is None
       or '-'.
    '''
    text = table_to_csv(table)
    if out in [None, '', '-']:
        sys.stdout.write(text)
        return text
    try:
        with open(out, 'w', encoding='utf-8', newline='') as fd:
            fd.write(text)
    except OSError as e:
        raise wvIOError('Cannot write %s: %s' % (out, e.strerror or str(e)))
    return text
