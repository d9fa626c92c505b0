# encoding: utf-8
import math
from collections import namedtuple
from functools import lru_cache

import numpy as np

from stripcodec import ParamError, InputError

__all__ = [
        "MIN_WINDOW", "MAX_WINDOW",
        "Window", "SpectralWindow", "Partition",
        "basis", "forward_dct", "inverse_dct", "forward_block", "inverse_block",
        "partition_strip", "join_windows",
        ]

# bounds on the window length
MIN_WINDOW = 4
MAX_WINDOW = 128

### single-window value types ###

class Window(namedtuple('Window', ['samples', 'N'])):
    def __new__(cls, samples, N=None):
        samples = np.asarray(samples, dtype=np.float32)
        N = len(samples) if N is None else int(N)
        check_window(N)
        if samples.shape != (N,):
            badlen = 'Window of length %i can\'t hold %i samples' % (N, samples.size)
            raise ParamError(badlen)
        return super(Window, cls).__new__(cls, samples, N)

class SpectralWindow(namedtuple('SpectralWindow', ['coeffs', 'E', 'N'])):
    def __new__(cls, coeffs, N):
        coeffs = np.asarray(coeffs, dtype=np.float32)
        check_window(N)
        check_retained(len(coeffs), N)
        return super(SpectralWindow, cls).__new__(cls, coeffs, len(coeffs), int(N))

# a strip cut into uniform windows, remembering how long it was before padding
Partition = namedtuple('Partition', ['windows', 'sample_count'])

def check_window(N):
    if not MIN_WINDOW <= N <= MAX_WINDOW:
        badsize = 'Window length must be within [%i, %i] (not %r)' % (MIN_WINDOW, MAX_WINDOW, N)
        raise ParamError(badsize)

def check_retained(E, N):
    if not 1 <= E <= N:
        badcount = 'Retained coefficient count must be within [1, %i] (not %r)' % (N, E)
        raise ParamError(badcount)

### cosine basis ###

@lru_cache(maxsize=None)
def basis(N):
    """Returns the read-only N×N table cos(π/N·(n+½)·k) indexed as [k, n]."""
    check_window(N)
    k = np.arange(N, dtype=np.float64)[:, None]
    n = np.arange(N, dtype=np.float64)[None, :]
    table = np.cos(math.pi / N * (n + 0.5) * k)
    table.setflags(write=False)
    return table

### batched transforms (one window per row) ###

def forward_block(block, E):
    """Forward DCT-II of every row of `block`, keeping only the first E bins.

    C[k] = 2/N · Σ x[n]·cos(π/N·(n+½)·k)
    """
    block = np.asarray(block)
    N = block.shape[-1]
    check_window(N)
    check_retained(E, N)
    cos = basis(N)[:E]
    coeffs = block.astype(np.float64) @ cos.T
    coeffs *= 2.0 / N
    return coeffs.astype(np.float32)

def inverse_block(coeffs, N):
    """Inverse of forward_block(): rows of E coefficients back to N samples (missing bins are zero).

    x[n] = C[0]/2 + Σ_{k≥1} C[k]·cos(π/N·(n+½)·k)
    """
    coeffs = np.asarray(coeffs, dtype=np.float64)
    E = coeffs.shape[-1]
    check_window(N)
    check_retained(E, N)
    samples = coeffs @ basis(N)[:E]
    samples -= coeffs[..., :1] / 2.0
    return samples.astype(np.float32)

### single windows ###

def forward_dct(window, E):
    if not isinstance(window, Window):
        window = Window(window)
    coeffs = forward_block(window.samples[None, :], E)[0]
    return SpectralWindow(coeffs, window.N)

def inverse_dct(spectral):
    samples = inverse_block(spectral.coeffs[None, :], spectral.N)[0]
    return Window(samples, spectral.N)

### strips ###

def partition_strip(strip, N):
    """Cut a strip into ceil(S/N) windows, zero-padding the final one."""
    check_window(N)
    strip = np.ravel(np.asarray(strip, dtype=np.float32))
    S = strip.size
    if not S:
        raise InputError('Can\'t partition an empty signal strip')
    count = -(-S // N)
    padded = np.zeros(count * N, dtype=np.float32)
    padded[:S] = strip
    return Partition(padded.reshape(count, N), S)

def join_windows(block, sample_count):
    """Flatten a stack of reconstructed windows and trim the zero padding."""
    flat = np.ravel(np.asarray(block, dtype=np.float32))
    if sample_count > flat.size:
        short = 'Only %i samples available to fill a strip of %i' % (flat.size, sample_count)
        raise ParamError(short)
    return flat[:sample_count]
