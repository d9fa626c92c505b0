# encoding: utf-8
import os
import re
import csv
import json
import logging
from os.path import splitext

import numpy as np

from stripcodec import CodecError, InputError

__all__ = ('read_signal', 'write_signal', 'read_bytes', 'write_bytes',
           'read_profile', 'write_profile', 'profile_dict', 'CsvExportSession')

logger = logging.getLogger(__name__)

PROFILE_FORMAT = 'stripcodec-profile'
PROFILE_VERSION = 1

re_textual = re.compile(r'\.(csv|txt)$', re.I)

### signal strips ###

def read_signal(path):
    """Load a strip from raw little-endian float32 samples (or one value per line for .csv/.txt)"""
    try:
        if re_textual.search(path):
            strip = np.loadtxt(path, dtype=np.float32, delimiter=',', ndmin=1, usecols=0)
        else:
            size = os.path.getsize(path)
            if size % 4:
                raise InputError('%s holds %i bytes (not a whole number of float32 samples)' % (path, size))
            strip = np.fromfile(path, dtype='<f4').astype(np.float32)
    except (OSError, ValueError) as e:
        raise InputError('Couldn\'t read signal from %s: %s' % (path, e))
    if not strip.size:
        raise InputError('%s doesn\'t contain any samples' % path)
    if not np.all(np.isfinite(strip)):
        raise InputError('%s contains non-finite samples' % path)
    logger.debug('read %i samples from %s', strip.size, path)
    return strip

def write_signal(path, strip):
    strip = np.ravel(np.asarray(strip, dtype=np.float32))
    if re_textual.search(path):
        np.savetxt(path, strip, fmt='%.9g')
    else:
        strip.astype('<f4').tofile(path)

def read_bytes(path):
    try:
        with open(path, 'rb') as f:
            return f.read()
    except OSError as e:
        raise InputError('Couldn\'t read %s: %s' % (path, e))

def write_bytes(path, data):
    with open(path, 'wb') as f:
        f.write(data)

### domain profiles ###

def profile_dict(profile):
    params = profile.params._asdict()
    return {
        'format': PROFILE_FORMAT,
        'version': PROFILE_VERSION,
        'params': params,
        'table': dict(A0=profile.table.A0, A1=profile.table.A1),
        'codebook': dict(lmax=profile.codebook.lmax, lengths=[int(l) for l in profile.codebook.lengths]),
        'stats': profile.stats,
    }

def write_profile(path, profile):
    """Serialize a trained profile as json (sorted keys, so identical training gives identical files)"""
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(profile_dict(profile), f, sort_keys=True, indent=2)
        f.write('\n')

def read_profile(path):
    from stripcodec.codec import CodecParams, QuantTable, canonize
    from stripcodec.context import Profile

    try:
        with open(path, encoding='utf-8') as f:
            doc = json.load(f)
    except (OSError, ValueError) as e:
        raise InputError('Couldn\'t load profile from %s: %s' % (path, e))
    if not isinstance(doc, dict) or doc.get('format') != PROFILE_FORMAT:
        raise InputError('%s isn\'t a stripcodec profile' % path)
    if doc.get('version') != PROFILE_VERSION:
        raise InputError('%s has unsupported profile version %r' % (path, doc.get('version')))

    try:
        params = CodecParams(**doc['params'])
        table = QuantTable(doc['table']['A0'], doc['table']['A1'], params)
        codebook = canonize(doc['codebook']['lengths'], doc['codebook']['lmax'])
        return Profile(params, table, codebook, doc.get('stats'))
    except (KeyError, TypeError) as e:
        raise InputError('Malformed profile %s: missing or bad field %s' % (path, e))
    except CodecError as e:
        raise InputError('Inconsistent profile %s: %s' % (path, e))

### Session object which streams result rows to disk ###

class CsvExportSession(object):
    """Writes one row per call to add(), notifying any `progress` handler as it goes"""

    def __init__(self, fname, fieldnames, total=None):
        self.fname = fname
        self.fieldnames = list(fieldnames)
        self.total = total
        self.added = 0
        self.running = True

        # callbacks
        self._progress = None
        self._complete = None

        self._file = open(fname, 'w', newline='', encoding='utf-8')
        self.writer = csv.DictWriter(self._file, fieldnames=self.fieldnames, extrasaction='ignore')
        self.writer.writeheader()

    def add(self, row):
        self.writer.writerow(row)
        self.added += 1
        if self._progress:
            self._progress(self.added, self.total)

    def done(self):
        if self.running:
            self.running = False
            self._file.close()
        self._progress = None
        if self._complete:
            self._complete()
            self._complete = None

    def on(self, **handlers):
        for event, cb in handlers.items():
            setattr(self, '_'+event, cb)
        if 'complete' in handlers and not self.running:
            self.done() # call the handler immediately

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.done()
