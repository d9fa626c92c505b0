# encoding: utf-8
import time
import logging
from collections import namedtuple

import numpy as np

from . import MetricError, ParamError

__all__ = ('RdPoint', 'Throughput', 'DOMAIN_PRD_LIMITS',
           'compression_ratio', 'prd', 'measure_throughput', 'pareto_front',
           'within_fidelity', 'prd_bins')

logger = logging.getLogger(__name__)

# the PRD (%) below which each signal domain still counts as high fidelity
DOMAIN_PRD_LIMITS = dict(ecg=5.0, eeg=5.0, seismic=2.0, power=5.0, meteorological=5.0)

# throughput is summarized per fidelity band: [0,2], (2,4], (4,6]
PRD_BINS = ((0.0, 2.0), (2.0, 4.0), (4.0, 6.0))

class RdPoint(namedtuple('RdPoint', ['prd', 'cr', 'params', 'throughput_gbps'])):
    """One configuration's spot on the rate-distortion plane"""
    def __new__(cls, prd, cr, params=None, throughput_gbps=None):
        prd, cr = float(prd), float(cr)
        if prd < 0 or not cr > 0:
            raise MetricError('Rate-distortion points need prd ≥ 0 and cr > 0 (got %r, %r)' % (prd, cr))
        return super(RdPoint, cls).__new__(cls, prd, cr, params, throughput_gbps)

    @property
    def coords(self):
        return (self.prd, self.cr)

    def row(self):
        """Flat dict for csv emission (params expanded into their own columns)"""
        row = dict(prd=self.prd, cr=self.cr, throughput_gbps=self.throughput_gbps)
        if self.params is not None:
            row.update(self.params._asdict())
        return row

### ratios & distortion ###

def compression_ratio(orig_bytes, comp_bytes):
    if comp_bytes <= 0:
        raise MetricError('Compressed size must be positive (got %r)' % comp_bytes)
    return float(orig_bytes) / comp_bytes

def _samples(strip):
    if isinstance(strip, (list, tuple)):
        # multi-strip datasets are scored over their concatenated samples
        return np.concatenate([np.ravel(np.asarray(s, dtype=np.float64)) for s in strip])
    return np.ravel(np.asarray(strip, dtype=np.float64))

def prd(x, x_hat):
    """Percent root-mean-square difference: 100·sqrt(Σ(x−x̂)² / Σx²)"""
    x, x_hat = _samples(x), _samples(x_hat)
    if x.shape != x_hat.shape:
        raise ParamError('Can\'t compare strips of %i and %i samples' % (x.size, x_hat.size))
    energy = float(np.dot(x, x))
    if not energy > 0:
        raise MetricError('PRD is undefined for an all-zero reference signal')
    diff = x - x_hat
    return 100.0 * float(np.sqrt(np.dot(diff, diff) / energy))

### decode throughput ###

class Throughput(namedtuple('Throughput', ['trials', 'mean', 'timings'])):
    """Decompressed bytes per second for each trial, plus their average (and each trial's stage timings)"""
    def __new__(cls, trials, mean, timings=()):
        return super(Throughput, cls).__new__(cls, list(trials), mean, list(timings))

    @property
    def gbps(self):
        return self.mean / 1e9

    def rows(self):
        rows = [('trial %i' % (i+1), t / 1e9) for i, t in enumerate(self.trials)]
        return rows + [('mean', self.gbps)]

def measure_throughput(blob, repetitions=5, workers=None):
    """Time in-memory decompression of `blob` over several sequential trials"""
    from .context import Codec
    if repetitions < 1:
        raise ParamError('Need at least one repetition (not %r)' % repetitions)
    codec = Codec(workers=workers)
    trials, timings = [], []
    for i in range(repetitions):
        start = time.perf_counter_ns()
        strip = codec.decompress(blob)
        elapsed = max(time.perf_counter_ns() - start, 1)
        trials.append(strip.nbytes * 1e9 / elapsed)
        timings.append(codec.timings)
    logger.debug('decoded %i bytes in %i trials using %i workers', strip.nbytes, repetitions, codec.workers)
    return Throughput(trials, sum(trials) / len(trials), timings)

### pareto analysis ###

def pareto_front(points):
    """The points no other point beats with lower-or-equal PRD and strictly higher CR.

    Duplicate (prd, cr) coordinates collapse to their first occurrence; the front is
    returned in order of increasing PRD.
    """
    seen, unique = set(), []
    for pt in points:
        if pt.coords not in seen:
            seen.add(pt.coords)
            unique.append(pt)
    if not unique:
        return []

    front = []
    best = float('-inf')
    ordered = sorted(unique, key=lambda pt: (pt.prd, -pt.cr))
    i = 0
    while i < len(ordered):
        # every point sharing a PRD competes with its whole group
        j = i
        while j < len(ordered) and ordered[j].prd == ordered[i].prd:
            j += 1
        best = max(best, ordered[i].cr)
        front.extend(pt for pt in ordered[i:j] if pt.cr >= best)
        i = j
    return front

def within_fidelity(prd_value, domain):
    try:
        return prd_value <= DOMAIN_PRD_LIMITS[domain.lower()]
    except KeyError:
        unknown = 'Unknown signal domain %r (try one of: %s)' % (domain, ', '.join(sorted(DOMAIN_PRD_LIMITS)))
        raise ParamError(unknown)

def prd_bins(points):
    """Group points into fidelity bands. Returns (lo, hi, count, mean throughput or None) per band"""
    summary = []
    for lo, hi in PRD_BINS:
        member = (lambda p: lo <= p <= hi) if lo == 0 else (lambda p: lo < p <= hi)
        inside = [pt for pt in points if member(pt.prd)]
        speeds = [pt.throughput_gbps for pt in inside if pt.throughput_gbps is not None]
        mean = sum(speeds) / len(speeds) if speeds else None
        summary.append((lo, hi, len(inside), mean))
    return summary
