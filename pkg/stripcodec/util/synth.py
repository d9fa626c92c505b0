# encoding: utf-8
"""Seeded synthetic signal strips (sums of slow sinusoids plus optional noise)"""
import numpy as np

from stripcodec import ParamError

__all__ = ('sinusoids', 'corpus')

# frequency band in cycles per sample; slow enough that a 32-sample window sees under a cycle
LOW_BAND = (0.001, 0.02)

def sinusoids(samples, components=3, noise=0.0, seed=0, band=LOW_BAND):
    """Returns a float32 strip summing up to `components` random sinusoids.

    Amplitudes fall within [0.5, 2], phases are uniform and frequencies are drawn
    from `band`. A nonzero `noise` adds gaussian noise with that standard deviation.
    """
    if samples < 1:
        raise ParamError('Need at least one sample (not %r)' % samples)
    if not 1 <= components <= 3:
        raise ParamError('Synthetic strips mix 1 to 3 sinusoids (not %r)' % components)
    rng = np.random.default_rng(seed)
    t = np.arange(samples, dtype=np.float64)
    freqs = rng.uniform(band[0], band[1], components)
    amps = rng.uniform(0.5, 2.0, components)
    phases = rng.uniform(0, 2*np.pi, components)
    strip = (amps[:, None] * np.sin(2*np.pi * freqs[:, None] * t + phases[:, None])).sum(axis=0)
    if noise:
        strip += rng.normal(0.0, noise, samples)
    return strip.astype(np.float32)

def corpus(count, samples, components=3, noise=0.0, seed=0):
    """A list of independent strips (each seeded off of the first seed)"""
    seeds = np.random.SeedSequence(seed).spawn(count)
    return [sinusoids(samples, components, noise, np.random.default_rng(s)) for s in seeds]
