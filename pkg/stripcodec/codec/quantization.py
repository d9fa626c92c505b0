# encoding: utf-8
import math
import logging
from collections import namedtuple

import numpy as np

from stripcodec import ParamError, TrainingError
from .transform import SpectralWindow, check_window, check_retained

__all__ = [
        "ZERO_LEVEL", "CodecParams", "QuantTable", "QuantizedWindow",
        "percentile", "train_quant_table",
        "quantize", "dequantize", "quantize_window", "dequantize_window",
        ]

logger = logging.getLogger(__name__)

# the level every zeroed coefficient maps to
ZERO_LEVEL = 128

# level grid on either side of the zero bin: 129..255 and 0..127
POS_STEPS = 126
NEG_STEPS = 127

def f32(val):
    """Round a python float to the nearest float32 (the precision the container stores)"""
    return float(np.float32(val))

### parameters ###

_param_fields = ['N', 'E', 'B1', 'B2', 'mu', 'alpha1', 'zone_percentile', 'lmax']
class CodecParams(namedtuple('CodecParams', _param_fields)):
    """The lossy-stage knobs (plus the codebook's length limit) with their typical values.

    N:                window length                       [4, 128]    32
    E:                retained coefficients               [1, N]      16
    B1:               zone 0/1 boundary bin               [0, E]      2
    B2:               zone 1/2 boundary bin               [B1, E]     16
    mu:               companding strength                 [1, 500]    50
    alpha1:           zone-1 deadzone ratio               [0, 1]      0.004
    zone_percentile:  amplitude clip percentile           [90, 100]   99.9
    lmax:             longest permitted codeword (bits)   [8, 16]     12
    """
    def __new__(cls, N=32, E=16, B1=2, B2=16, mu=50.0, alpha1=0.004, zone_percentile=99.9, lmax=12):
        this = super(CodecParams, cls).__new__(cls, int(N), int(E), int(B1), int(B2),
                                               f32(mu), f32(alpha1), float(zone_percentile), int(lmax))
        this.validate()
        return this

    def validate(self):
        check_window(self.N)
        check_retained(self.E, self.N)
        if not 0 <= self.B1 <= self.B2 <= self.E:
            badzones = 'Zone boundaries must satisfy 0 ≤ B1 ≤ B2 ≤ E (got B1=%i, B2=%i, E=%i)' % (self.B1, self.B2, self.E)
            raise ParamError(badzones)
        if not 1 <= self.mu <= 500:
            raise ParamError('Companding strength mu must be within [1, 500] (not %r)' % self.mu)
        if not 0 <= self.alpha1 <= 1:
            raise ParamError('Deadzone ratio alpha1 must be within [0, 1] (not %r)' % self.alpha1)
        if not 90 <= self.zone_percentile <= 100:
            raise ParamError('Zone percentile must be within [90, 100] (not %r)' % self.zone_percentile)
        if not 8 <= self.lmax <= 16:
            # every one of the 256 levels gets a codeword
            raise ParamError('Codeword length limit must be within [8, 16] (not %r)' % self.lmax)
        return self

    def wire(self):
        """The fields carried by a compressed blob's header (the percentile only matters for training)"""
        return (self.N, self.E, self.B1, self.B2, self.mu, self.alpha1, self.lmax)

    @property
    def zones(self):
        return slice(0, self.B1), slice(self.B1, self.B2), slice(self.B2, self.E)

    def __repr__(self):
        return 'CodecParams(N=%i, E=%i, B1=%i, B2=%i, mu=%g, alpha1=%g, zone_percentile=%g, lmax=%i)' % self

### trained table ###

class QuantTable(namedtuple('QuantTable', ['A0', 'A1', 'params'])):
    """Per-zone amplitude maxima plus the params they were trained under.

    Inactive zones (no bins, or nothing but zeros in the pool) carry the sentinel 1.0.
    """
    def __new__(cls, A0, A1, params):
        A0, A1 = f32(A0), f32(A1)
        if not (math.isfinite(A0) and math.isfinite(A1) and A0 > 0 and A1 > 0):
            raise ParamError('Zone maxima must be finite and positive (got A0=%r, A1=%r)' % (A0, A1))
        return super(QuantTable, cls).__new__(cls, A0, A1, params)

    @property
    def d1(self):
        return self.params.alpha1 * self.A1

    @property
    def zone0(self):
        return self.params.B1 > 0

    @property
    def zone1(self):
        return self.params.B2 > self.params.B1

class QuantizedWindow(namedtuple('QuantizedWindow', ['levels'])):
    def __new__(cls, levels):
        return super(QuantizedWindow, cls).__new__(cls, np.asarray(levels, dtype=np.uint8))

def percentile(values, pct):
    """Nearest-rank percentile of the absolute values"""
    pool = np.sort(np.abs(np.ravel(values)))
    if not pool.size:
        raise TrainingError('Can\'t take the percentile of an empty pool')
    rank = int(math.ceil(round(pct * pool.size / 100.0, 9)))
    rank = min(max(rank, 1), pool.size)
    return float(pool[rank - 1])

def _as_block(windows, E=None):
    if isinstance(windows, np.ndarray):
        block = windows
    else:
        windows = list(windows)
        block = np.array([w.coeffs if isinstance(w, SpectralWindow) else w for w in windows])
    block = np.asarray(block, dtype=np.float32)
    if block.ndim == 1:
        block = block[None, :]
    if E is not None and block.shape[-1] != E:
        mismatch = 'Expected %i coefficients per window (got %i)' % (E, block.shape[-1])
        raise ParamError(mismatch)
    return block

def train_quant_table(windows, params):
    """Derive the zone maxima from a representative stack of spectral windows"""
    block = _as_block(windows)
    if not block.size:
        raise TrainingError('Can\'t train a quantization table without any windows')
    if block.shape[-1] < params.E:
        short = 'Training windows hold %i coefficients but E=%i' % (block.shape[-1], params.E)
        raise TrainingError(short)

    # anything below float32 resolution of the largest coefficient is transform rounding noise
    floor = float(np.finfo(np.float32).eps) * float(np.abs(block[:, :params.E]).max())

    maxima = []
    for zone in params.zones[:2]:
        pool = block[:, zone]
        if not pool.size:
            maxima.append(1.0) # inactive zone
            continue
        top = percentile(pool, params.zone_percentile)
        maxima.append(top if top > floor else 1.0)

    table = QuantTable(maxima[0], maxima[1], params)
    logger.debug('trained %r on %i windows (A0=%g, A1=%g, d1=%g)', params, len(block), table.A0, table.A1, table.d1)
    return table

### float → level ###

def _compand(block, A0, mu):
    mag = np.minimum(np.abs(block), A0) / A0
    q = np.log1p(mu * mag) / math.log1p(mu)
    return _levels(block, q)

def _deadzone(block, A1, d1):
    span = A1 - d1
    if span <= 0:
        # the deadzone swallowed the whole range
        return np.full(block.shape, ZERO_LEVEL, dtype=np.uint8)
    mag = np.minimum(np.abs(block), A1)
    q = np.clip((mag - d1) / span, 0.0, 1.0)
    live = np.abs(block) > d1
    return np.where(live, _levels(block, q), ZERO_LEVEL).astype(np.uint8)

def _levels(block, q):
    pos = 129 + np.floor(q * POS_STEPS + 0.5)
    neg = 127 - np.floor(q * NEG_STEPS + 0.5)
    levels = np.where(block > 0, pos, np.where(block < 0, neg, ZERO_LEVEL))
    return np.clip(levels, 0, 255).astype(np.uint8)

def quantize(block, table):
    """Map a (windows × E) coefficient block to uint8 levels"""
    params = table.params
    block = _as_block(block, params.E).astype(np.float64)
    z0, z1, z2 = params.zones
    levels = np.full(block.shape, ZERO_LEVEL, dtype=np.uint8)
    if table.zone0:
        levels[:, z0] = _compand(block[:, z0], table.A0, params.mu)
    if table.zone1:
        levels[:, z1] = _deadzone(block[:, z1], table.A1, table.d1)
    return levels

### level → float ###

def _expand(levels, A0, mu):
    lv = levels.astype(np.float64)
    q = np.where(lv >= 129, (lv - 129) / POS_STEPS, (127 - lv) / NEG_STEPS)
    mag = A0 * np.expm1(q * math.log1p(mu)) / mu
    return np.where(lv > ZERO_LEVEL, mag, np.where(lv < ZERO_LEVEL, -mag, 0.0))

def _undeadzone(levels, A1, d1):
    span = A1 - d1
    lv = levels.astype(np.float64)
    steps = np.where(lv >= 129, POS_STEPS, NEG_STEPS)
    k = np.where(lv >= 129, lv - 129, 127 - lv)
    # midpoint of the level's cell, clipped to the zone's range
    lo = np.maximum(k - 0.5, 0.0) / steps
    hi = np.minimum(k + 0.5, steps) / steps
    mag = d1 + max(span, 0.0) * (lo + hi) / 2.0
    return np.where(lv > ZERO_LEVEL, mag, np.where(lv < ZERO_LEVEL, -mag, 0.0))

def dequantize(levels, table):
    """Map a (windows × E) level block back to spectral coefficients"""
    params = table.params
    levels = np.asarray(levels, dtype=np.uint8)
    if levels.ndim == 1:
        levels = levels[None, :]
    if levels.shape[-1] != params.E:
        mismatch = 'Expected %i levels per window (got %i)' % (params.E, levels.shape[-1])
        raise ParamError(mismatch)
    z0, z1, z2 = params.zones
    coeffs = np.zeros(levels.shape, dtype=np.float64)
    if table.zone0:
        coeffs[:, z0] = _expand(levels[:, z0], table.A0, params.mu)
    if table.zone1:
        coeffs[:, z1] = _undeadzone(levels[:, z1], table.A1, table.d1)
    return coeffs.astype(np.float32)

### single windows ###

def quantize_window(spectral, table):
    if spectral.E != table.params.E:
        mismatch = 'Window holds %i coefficients but the table expects %i' % (spectral.E, table.params.E)
        raise ParamError(mismatch)
    return QuantizedWindow(quantize(spectral.coeffs[None, :], table)[0])

def dequantize_window(q, table):
    coeffs = dequantize(q.levels[None, :], table)[0]
    return SpectralWindow(coeffs, table.params.N)
