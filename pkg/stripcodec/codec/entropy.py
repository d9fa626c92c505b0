# encoding: utf-8
import math
import logging
from collections import namedtuple

import numpy as np

from stripcodec import ParamError, TrainingError, InternalError

__all__ = [
        "ALPHABET", "DEFAULT_LMAX",
        "SymbolHistogram", "Codebook", "DecodeLUT",
        "build_histogram", "smooth", "package_merge", "canonize", "build_lut",
        "train_codebook", "entropy_bits", "mean_bits",
        ]

logger = logging.getLogger(__name__)

ALPHABET = 256
DEFAULT_LMAX = 12

### histograms ###

class SymbolHistogram(namedtuple('SymbolHistogram', ['counts'])):
    def __new__(cls, counts):
        counts = np.asarray(counts, dtype=np.int64)
        if counts.shape != (ALPHABET,) or np.any(counts < 0):
            raise ParamError('A histogram needs %i non-negative counts' % ALPHABET)
        if not counts.any():
            raise TrainingError('A histogram needs at least one nonzero count')
        return super(SymbolHistogram, cls).__new__(cls, counts)

    @property
    def total(self):
        return int(self.counts.sum())

def build_histogram(symbols):
    symbols = np.ravel(np.asarray(symbols, dtype=np.uint8))
    if not symbols.size:
        raise TrainingError('Can\'t build a histogram from an empty symbol stream')
    return SymbolHistogram(np.bincount(symbols, minlength=ALPHABET))

def smooth(hist):
    """Give every symbol at least one count so out-of-training data stays encodable"""
    counts = hist.counts if isinstance(hist, SymbolHistogram) else np.asarray(hist)
    return np.maximum(counts, 1)

def entropy_bits(hist):
    """Shannon bound in bits/symbol"""
    counts = hist.counts if isinstance(hist, SymbolHistogram) else np.asarray(hist)
    p = counts[counts > 0] / float(counts.sum())
    return float(-(p * np.log2(p)).sum())

def mean_bits(codebook, hist):
    """Average codeword length (bits/symbol) over a histogram"""
    counts = hist.counts if isinstance(hist, SymbolHistogram) else np.asarray(hist)
    return float((counts * codebook.lengths).sum()) / counts.sum()

### length-limited code lengths ###

def package_merge(weights, lmax):
    """Optimal code lengths no longer than `lmax` bits for the given symbol weights.

    Symbols with zero weight are left uncoded (length 0). Ties are broken leaves-first,
    then by symbol value, so the result is deterministic.
    """
    if isinstance(weights, SymbolHistogram):
        weights = weights.counts
    weights = [int(w) for w in weights]
    coded = [(w, sym) for sym, w in enumerate(weights) if w > 0]
    n = len(coded)
    if n < 2:
        raise ParamError('Need at least two coded symbols to build a prefix code (got %i)' % n)
    if lmax < 1 or (1 << lmax) < n:
        toosmall = 'A %i-bit length limit can\'t code %i symbols' % (lmax, n)
        raise ParamError(toosmall)

    # items are (weight, kind, seq, symbols); kind 0 is a leaf, 1 a package
    leaves = [(w, 0, sym, (sym,)) for w, sym in sorted(coded)]
    items = list(leaves)
    for depth in range(1, lmax):
        packages = []
        for i in range(0, len(items) - 1, 2):
            a, b = items[i], items[i+1]
            packages.append((a[0] + b[0], 1, len(packages), a[3] + b[3]))
        items = sorted(leaves + packages, key=lambda it: it[:3])

    lengths = np.zeros(len(weights), dtype=np.int64)
    for item in items[:2*n - 2]:
        for sym in item[3]:
            lengths[sym] += 1
    return lengths

### canonical codes ###

class Codebook(namedtuple('Codebook', ['lengths', 'codes', 'lmax'])):
    """Canonical prefix code: codeword bits are derived purely from the lengths"""

    @property
    def kraft(self):
        live = self.lengths[self.lengths > 0]
        return float(np.sum(np.ldexp(1.0, -live.astype(np.int64))))

    def codeword(self, sym):
        """The codeword of `sym` as a string of 0s and 1s"""
        length = int(self.lengths[sym])
        if not length:
            return None
        return format(int(self.codes[sym]), '0%ib' % length)

    def __eq__(self, other):
        return isinstance(other, Codebook) and self.lmax == other.lmax \
               and np.array_equal(self.lengths, other.lengths)

    def __ne__(self, other):
        return not self.__eq__(other)

    __hash__ = None

def canonize(lengths, lmax=None):
    """Assign codewords by (length, symbol) order using the first-code recurrence"""
    lengths = np.asarray(lengths, dtype=np.int64)
    if np.any(lengths < 0):
        raise InternalError('Negative code length')
    longest = int(lengths.max()) if lengths.size else 0
    lmax = longest if lmax is None else int(lmax)
    if longest > lmax or lmax > 32:
        raise InternalError('Code lengths exceed the %i-bit limit' % lmax)

    # integer kraft sum scaled by 2**lmax
    live = lengths[lengths > 0]
    if int(np.sum(np.left_shift(1, lmax - live))) > (1 << lmax):
        raise InternalError('Code lengths violate the Kraft inequality')

    codes = np.zeros(len(lengths), dtype=np.int64)
    code, prev = 0, 0
    for sym in sorted(np.flatnonzero(lengths), key=lambda s: (lengths[s], s)):
        length = int(lengths[sym])
        code <<= length - prev
        codes[sym] = code
        code += 1
        prev = length
    return Codebook(lengths.astype(np.uint8), codes, lmax)

### decode table ###

class DecodeLUT(namedtuple('DecodeLUT', ['symbols', 'lengths', 'lmax'])):
    """2**lmax entries mapping every lmax-bit prefix to (symbol, code length)"""

    @property
    def packed(self):
        # symbol in the low byte, length above it (length 0 marks an unused prefix)
        return self.symbols.astype(np.int64) | (self.lengths.astype(np.int64) << 8)

    def lookup(self, prefix):
        return int(self.symbols[prefix]), int(self.lengths[prefix])

def build_lut(codebook):
    lmax = codebook.lmax
    size = 1 << lmax
    symbols = np.zeros(size, dtype=np.uint8)
    lengths = np.zeros(size, dtype=np.uint8)
    for sym in np.flatnonzero(codebook.lengths):
        length = int(codebook.lengths[sym])
        span = 1 << (lmax - length)
        start = int(codebook.codes[sym]) << (lmax - length)
        symbols[start:start + span] = sym
        lengths[start:start + span] = length
    return DecodeLUT(symbols, lengths, lmax)

### offline training ###

def train_codebook(symbols, lmax=DEFAULT_LMAX):
    """Smoothed, length-limited canonical codebook for a symbol stream or histogram"""
    hist = symbols if isinstance(symbols, SymbolHistogram) else build_histogram(symbols)
    lengths = package_merge(smooth(hist), lmax)
    codebook = canonize(lengths, lmax)
    logger.debug('codebook: %.3f bits/symbol (entropy %.3f) over %i symbols',
                 mean_bits(codebook, hist), entropy_bits(hist), hist.total)
    return codebook
