# encoding: utf-8
import os
import re
from glob import glob
from itertools import product

from stripcodec import ParamError

__all__ = ('grid', 'parse_axis', 'files', 'adict')

### Utilities ###

def files(path="*"):
    """Returns a sorted list of files.

    You can use wildcards to specify which files to pick, e.g.
        f = files('~/signals/*.f32')
    """
    path = re.sub(r'^~(?=/|$)', os.getenv('HOME', '~'), path)
    return sorted(glob(path))

re_range = re.compile(r'^\s*([^:]+):([^:]+)(?::([^:]+))?\s*$')

def parse_axis(spec, cast=int):
    """Expands a sweep axis like '4,8,16' or '8:32:8' (inclusive) into a list of values"""
    values = []
    for term in str(spec).split(','):
        if not term.strip():
            continue
        try:
            m = re_range.match(term)
            if not m:
                values.append(cast(term))
                continue
            start, stop = cast(m.group(1)), cast(m.group(2))
            step = cast(m.group(3)) if m.group(3) else cast(1)
            if step <= 0 or stop < start:
                raise ValueError('empty range')
            val = start
            while val <= stop + (1e-9 if cast is float else 0):
                values.append(val)
                val = cast(val + step)
        except ValueError:
            raise ParamError('Bad sweep range %r (use a comma list or start:stop[:step])' % term.strip())
    if not values:
        raise ParamError('Sweep axis %r is empty' % (spec,))
    # drop repeats but keep the order they were given in
    return list(dict.fromkeys(values))

def grid(**axes):
    """Returns an iterator over every combination of the axes' values as dicts.

    The grid can be used to quickly sweep a parameter space. e.g.,
        for combo in grid(N=[16,32], E=[4,8]):
            CodecParams(**combo)
    """
    names = list(axes)
    for values in product(*[axes[n] for n in names]):
        yield adict(zip(names, values))

### the not very pythonic but often convenient dot-notation dict ###

class adict(dict):
    """A dictionary object whose items may also be accessed with dot notation.

    Items can be assigned using dot notation even if a dictionary method of the
    same name exists. Subsequently, dot notation will still reference the method,
    but the assigned value can be read out using traditional `d["name"]` syntax.
    """
    def __init__(self, *args, **kw):
        super(adict, self).__init__(*args, **kw)
        self.__initialised = True

    def __getattr__(self, key):
        try:
            return self[key]
        except KeyError as k:
            raise AttributeError(k)

    def __setattr__(self, key, value):
        # this test allows attributes to be set in the __init__ method
        if '_adict__initialised' not in self.__dict__:
            return dict.__setattr__(self, key, value)
        self[key] = value

    def __delattr__(self, key):
        try:
            del self[key]
        except KeyError as k:
            raise AttributeError(k)
