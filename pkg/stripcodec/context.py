# encoding: utf-8
import os
import time
import logging
from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .codec import *
from .codec.transform import inverse_block
from .lib import kernels
from . import TrainingError, CorruptionError, ParamError

__all__ = ('Codec', 'Profile', 'StageTimings', 'train', 'compress', 'decompress',
           'offsets_from_symlens', 'parallel_decode', 'reconstruct')

logger = logging.getLogger(__name__)

# words per decode task and windows per reconstruction task
CHUNK = 16384
WINDOW_CHUNK = 65536

def default_workers():
    return os.cpu_count() or 1

### domain profile (the offline-trained structures shared by encoder & decoder) ###

class Profile(namedtuple('Profile', ['params', 'table', 'codebook', 'stats'])):
    def __new__(cls, params, table, codebook, stats=None):
        if table.params.wire() != params.wire():
            raise ParamError('Quantization table was trained under different params')
        if codebook.lmax != params.lmax:
            mismatch = 'Codebook length limit %i doesn\'t match lmax=%i' % (codebook.lmax, params.lmax)
            raise ParamError(mismatch)
        return super(Profile, cls).__new__(cls, params, table, codebook, dict(stats or {}))

def train(strips, params=None):
    """Precompute the quantization table and codebook from representative strips"""
    params = params or CodecParams()
    if isinstance(strips, np.ndarray) and strips.ndim == 1:
        strips = [strips]
    blocks = [forward_block(partition_strip(strip, params.N).windows, params.E) for strip in strips]
    if not blocks:
        raise TrainingError('Need at least one signal strip to train on')
    block = np.vstack(blocks)

    table = train_quant_table(block, params)
    hist = build_histogram(quantize(block, table))
    codebook = train_codebook(hist, params.lmax)
    stats = dict(windows=len(block), symbols=hist.total,
                 entropy_bits=round(entropy_bits(hist), 6), mean_bits=round(mean_bits(codebook, hist), 6))
    logger.info('trained profile on %i windows: %.3f bits/symbol', len(block), stats['mean_bits'])
    return Profile(params, table, codebook, stats)

### decoder stages ###

def offsets_from_symlens(symlens):
    """Exclusive prefix sum over the per-word symbol counts. Returns (offsets, total)"""
    counts = np.asarray(symlens, dtype=np.int64)
    if not counts.size:
        return np.zeros(0, dtype=np.int64), 0
    ends = np.cumsum(counts)
    offsets = np.empty_like(ends)
    offsets[0] = 0
    offsets[1:] = ends[:-1]
    return offsets, int(ends[-1])

def _spans(count, workers, chunk):
    step = max(1, min(chunk, -(-count // max(workers, 1))))
    return [(start, min(start + step, count)) for start in range(0, count, step)]

def _fan_out(task, spans, workers):
    if workers <= 1 or len(spans) <= 1:
        return [task(*span) for span in spans]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda span: task(*span), spans))

def parallel_decode(stream, codebook, workers=None, chunk=CHUNK, offsets=None):
    """Decode every word independently into its slice of one compacted level array.

    Workers claim contiguous word ranges; the exclusive scan gives each word a disjoint
    output range so the result doesn't depend on the worker count.
    """
    workers = workers or default_workers()
    lut = codebook if isinstance(codebook, DecodeLUT) else build_lut(codebook)
    if offsets is None:
        offsets, total = offsets_from_symlens(stream.symlens)
    else:
        total = int(offsets[-1]) + int(stream.symlens[-1]) if len(offsets) else 0

    out = np.empty(total, dtype=np.uint8)
    words = stream.words.view(np.int64)
    symlens = stream.symlens.astype(np.int64)
    packed = lut.packed

    def task(start, stop):
        return kernels.unpack_words(words, symlens, offsets, packed, lut.lmax, start, stop, out)

    failed = [w for w in _fan_out(task, _spans(stream.word_count, workers, chunk), workers) if w >= 0]
    if failed:
        raise CorruptionError('Codeword overran its packed word', word=int(min(failed)))
    return out

def reconstruct(levels, table, sample_count, workers=None, chunk=WINDOW_CHUNK):
    """Dequantize and inverse-transform each window of E levels back to N samples"""
    workers = workers or default_workers()
    params = table.params
    levels = np.asarray(levels, dtype=np.uint8)
    windows = -(-int(sample_count) // params.N)
    if levels.size != windows * params.E:
        mismatch = '%i levels can\'t fill %i windows of %i coefficients' % (levels.size, windows, params.E)
        raise CorruptionError(mismatch)

    levels = levels.reshape(windows, params.E)
    out = np.empty((windows, params.N), dtype=np.float32)

    def task(start, stop):
        out[start:stop] = inverse_block(dequantize(levels[start:stop], table), params.N)

    _fan_out(task, _spans(windows, workers, chunk), workers)
    return join_windows(out, sample_count)

### stage timing ###

class StageTimings(object):
    """Monotonic nanosecond timings for each decode stage"""
    def __init__(self, stages, total_ns):
        self.stages = list(stages)
        self.total_ns = total_ns

    def fractions(self):
        spent = float(sum(ns for _, ns in self.stages)) or 1.0
        return [(stage, ns / spent) for stage, ns in self.stages]

    def rows(self):
        return [(stage, ns, frac) for (stage, ns), (_, frac) in zip(self.stages, self.fractions())]

    @classmethod
    def average(cls, timings):
        """Per-stage mean over several runs (the total stays the sum of the stages)"""
        timings = list(timings)
        if not timings:
            raise ParamError('Nothing to average')
        names = [stage for stage, _ in timings[0].stages]
        means = [int(round(sum(t.stages[i][1] for t in timings) / len(timings))) for i in range(len(names))]
        return cls(zip(names, means), sum(means))

    def __repr__(self):
        parts = ', '.join('%s=%.3fms' % (stage, ns / 1e6) for stage, ns in self.stages)
        return 'StageTimings(%s, total=%.3fms)' % (parts, self.total_ns / 1e6)

### the codec (whose methods are the business-end of the api) ###

class Codec(object):

    def __init__(self, profile=None, workers=None, chunk=CHUNK):
        self.profile = profile
        self.workers = workers or default_workers()
        self.chunk = chunk
        self.timings = None
        self._decoder = None  # (codebook, lut) of the last blob decoded

    def lut(self, codebook):
        """The decode table for `codebook`, rebuilt only when the codebook changes"""
        if self._decoder is None or self._decoder[0] != codebook:
            self._decoder = (codebook, build_lut(codebook))
        return self._decoder[1]

    def _require_profile(self):
        if self.profile is None:
            raise ParamError('Encoding needs a trained profile')
        return self.profile

    def _levels(self, strip):
        params = self._require_profile().params
        part = partition_strip(strip, params.N)
        coeffs = forward_block(part.windows, params.E)
        return quantize(coeffs, self.profile.table), part.sample_count

    def compress(self, strip):
        """Transform, quantize and pack a strip into a self-describing blob"""
        levels, sample_count = self._levels(strip)
        profile = self.profile
        stream = encode_symlen(levels, profile.codebook)
        return write_blob(stream, profile.params, profile.table, profile.codebook, sample_count)

    def decompress(self, data):
        """Parse, scan, entropy-decode and reconstruct a blob (timings land in self.timings)"""
        clock = time.perf_counter_ns
        t0 = clock()
        blob = read_blob(data)
        t1 = clock()
        offsets, total = offsets_from_symlens(blob.stream.symlens)
        t2 = clock()
        levels = parallel_decode(blob.stream, self.lut(blob.codebook), self.workers, self.chunk, offsets)
        t3 = clock()
        strip = reconstruct(levels, blob.table, blob.sample_count, self.workers)
        t4 = clock()
        self.timings = StageTimings([('parse', t1-t0), ('scan', t2-t1), ('entropy', t3-t2), ('reconstruct', t4-t3)], t4-t0)
        return strip

    def quantize_only(self, strip):
        """The uint8 level stream before entropy coding (one byte per retained coefficient)"""
        levels, _ = self._levels(strip)
        return np.ravel(levels)

    def lossy_roundtrip(self, strip):
        """Reconstruction through the lossy stages alone (no entropy coding)"""
        levels, sample_count = self._levels(strip)
        return reconstruct(levels, self.profile.table, sample_count, self.workers)

def compress(strip, profile):
    return Codec(profile).compress(strip)

def decompress(data, workers=None):
    return Codec(workers=workers).decompress(data)
