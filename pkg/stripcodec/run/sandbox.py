# encoding: utf-8
import logging
from collections import namedtuple

import numpy as np

from ..run import stacktrace
from .. import util, context, metrics, CodecError, InputError
from ..codec import CodecParams

__all__ = ['Sandbox', 'Outcome']

logger = logging.getLogger(__name__)

Outcome = namedtuple('Outcome', ['ok', 'output'])

class Delegate(object):
    """No-op sandbox delegate that will be used by default if a delegate isn't specified"""
    def sweepPoint(self, params, outcome):
        pass
    def sweepProgress(self, done, total):
        pass

class Sandbox(object):
    """Runs parameter configurations against a fixed set of strips, one boxed trial at a time.

    Each trial trains a profile on the strips (unless a fixed profile was supplied),
    compresses & decompresses every strip and reports its rate-distortion point.
    Trials run sequentially so the throughput timings don't step on each other.
    """

    # a B2 axis value meaning "whatever E is in this combination"
    SAME_AS_E = 'E'

    def __init__(self, strips, profile=None, workers=None, repetitions=1, delegate=None):
        if isinstance(strips, np.ndarray):
            strips = [strips]
        self.strips = [np.ravel(np.asarray(s, dtype=np.float32)) for s in strips]
        if not self.strips:
            raise InputError('A sweep needs at least one signal strip')
        self.profile = profile      # fixed profile (or None to train per configuration)
        self.workers = workers
        self.repetitions = repetitions
        self.delegate = delegate or Delegate()
        self.crashed = False        # flag whether the last trial exited abnormally

    @property
    def orig_bytes(self):
        return sum(s.nbytes for s in self.strips)

    def configurations(self, **axes):
        """Valid CodecParams for every combination of the axes (invalid ones are logged & skipped)"""
        if self.profile is not None:
            return [self.profile.params]
        configs = []
        for combo in util.grid(**axes):
            if combo.get('B2') == self.SAME_AS_E:
                combo.B2 = combo.E
            try:
                configs.append(CodecParams(**combo))
            except CodecError as e:
                logger.info('skipping %s: %s', ', '.join('%s=%s' % kv for kv in combo.items()), e)
        return configs

    def trial(self, params):
        """The rate-distortion point for a single configuration"""
        profile = self.profile or context.train(self.strips, params)
        codec = context.Codec(profile, workers=self.workers)
        blobs = [codec.compress(strip) for strip in self.strips]
        decoded = [codec.decompress(blob) for blob in blobs]

        # aggregate decode speed is total bytes over the summed per-blob decode time
        seconds = 0.0
        for blob, strip in zip(blobs, decoded):
            speed = metrics.measure_throughput(blob, self.repetitions, self.workers).mean
            seconds += strip.nbytes / speed
        gbps = self.orig_bytes / seconds / 1e9 if seconds else None

        cr = metrics.compression_ratio(self.orig_bytes, sum(len(b) for b in blobs))
        prd = metrics.prd(self.strips, decoded)
        return metrics.RdPoint(prd, cr, params, gbps)

    def call(self, method, *args):
        """
        Runs the given method in a boxed environment.

        Returns:
           A namedtuple containing two fields:
             - "ok": A boolean indicating whether the run was successful
             - "output": The method's return value (or the error message if it failed)
        """
        self.crashed = False
        try:
            return Outcome(True, method(*args))
        except CodecError as e:
            # bad configurations are expected during a sweep
            return Outcome(False, str(e))
        except Exception:
            self.crashed = True
            return Outcome(False, stacktrace())

    def run(self, **axes):
        """Sweep the grid of parameter values, returning the successful RdPoints"""
        configs = self.configurations(**axes)
        points = []
        for i, params in enumerate(configs):
            outcome = self.call(self.trial, params)
            self.delegate.sweepPoint(params, outcome)
            self.delegate.sweepProgress(i+1, len(configs))
            if outcome.ok:
                points.append(outcome.output)
            else:
                logger.info('%r failed: %s', params, outcome.output)
        return points
