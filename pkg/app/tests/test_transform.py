import unittest
import sys
from os.path import abspath, dirname, join

# run against the source distribution rather than any installed copy
sys.path.insert(0, abspath(join(dirname(__file__), '../..')))

import numpy as np

from stripcodec import ParamError, InputError
from stripcodec.codec.transform import *
from stripcodec.codec.transform import check_window, check_retained

def brute_dct(x, E):
    N = len(x)
    return np.array([2.0/N * sum(x[n] * np.cos(np.pi/N * (n + 0.5) * k) for n in range(N)) for k in range(E)])

def brute_idct(C, N):
    return np.array([C[0]/2.0 + sum(C[k] * np.cos(np.pi/N * (n + 0.5) * k) for k in range(1, len(C))) for n in range(N)])

class BasisTestCase(unittest.TestCase):

    def test_cached_and_read_only(self):
        self.assertIs(basis(16), basis(16))
        self.assertFalse(basis(16).flags.writeable)
        with self.assertRaises(ValueError):
            basis(16)[0, 0] = 2.0

    def test_orientation(self):
        table = basis(8)
        self.assertTrue(np.allclose(table[0], 1.0))
        self.assertAlmostEqual(table[1, 0], np.cos(np.pi / 16))

    def test_window_bounds(self):
        for N in (3, 129, 0):
            self.assertRaises(ParamError, check_window, N)
        for N in (4, 32, 128):
            check_window(N)

    def test_retained_bounds(self):
        self.assertRaises(ParamError, check_retained, 0, 8)
        self.assertRaises(ParamError, check_retained, 9, 8)
        check_retained(1, 8)
        check_retained(8, 8)

class DctTestCase(unittest.TestCase):

    def setUp(self):
        self.rng = np.random.default_rng(1234)

    def test_matches_direct_summation(self):
        for N in (4, 8, 16):
            x = self.rng.normal(0, 3, N).astype(np.float32)
            for E in (1, N // 2, N):
                got = forward_block(x[None, :], E)[0]
                want = brute_dct(x.astype(np.float64), E)
                self.assertTrue(np.allclose(got, want, atol=1e-5 * max(1, np.abs(x).max())), (N, E))

    def test_inverse_matches_direct_summation(self):
        for N in (4, 8, 16):
            C = self.rng.normal(0, 1, N // 2)
            got = inverse_block(C[None, :], N)[0]
            self.assertTrue(np.allclose(got, brute_idct(C, N), atol=1e-5))

    def test_roundtrip(self):
        for N in (4, 8, 32, 128):
            block = (self.rng.normal(0, 1, (100, N)) * self.rng.uniform(0.01, 100, (100, 1))).astype(np.float32)
            back = inverse_block(forward_block(block, N), N)
            err = np.abs(back.astype(np.float64) - block).max(axis=1)
            bound = 1e-4 * np.maximum(1.0, np.abs(block).max(axis=1))
            self.assertTrue(np.all(err <= bound), N)

    def test_constant_window(self):
        window = np.full(32, 1.5, dtype=np.float32)
        coeffs = forward_block(window[None, :], 32)[0]
        self.assertAlmostEqual(float(coeffs[0]), 3.0, places=5)
        self.assertTrue(np.allclose(coeffs[1:], 0, atol=1e-6))
        back = inverse_block(coeffs[:1][None, :], 32)[0]
        self.assertTrue(np.allclose(back, 1.5, atol=1e-6))

    def test_truncation_keeps_leading_bins(self):
        x = self.rng.normal(0, 1, (5, 32)).astype(np.float32)
        full = forward_block(x, 32)
        self.assertTrue(np.allclose(forward_block(x, 8), full[:, :8], atol=1e-6))

    def test_linear(self):
        for N in (4, 32, 128):
            x = self.rng.normal(0, 1, (20, N))
            y = self.rng.normal(0, 1, (20, N))
            a, b = self.rng.uniform(-3, 3, 2)
            both = forward_block(a * x + b * y, N).astype(np.float64)
            apart = a * forward_block(x, N).astype(np.float64) + b * forward_block(y, N).astype(np.float64)
            self.assertTrue(np.allclose(both, apart, atol=1e-4 * max(abs(a), abs(b), 1)), N)

    def test_truncation_error_shrinks_with_E(self):
        for N in (8, 32):
            x = self.rng.normal(0, 1, (50, N)).astype(np.float32)
            ref = x.astype(np.float64)
            errors = []
            for E in range(1, N + 1):
                back = inverse_block(forward_block(x, E), N).astype(np.float64)
                errors.append(100 * np.sqrt(np.sum((ref - back) ** 2) / np.sum(ref ** 2)))
            self.assertTrue(all(b <= a + 1e-4 for a, b in zip(errors, errors[1:])), errors)
            self.assertLess(errors[-1], 1e-3)

    def test_dtypes(self):
        x = self.rng.normal(0, 1, (3, 8))
        self.assertEqual(forward_block(x, 4).dtype, np.float32)
        self.assertEqual(inverse_block(forward_block(x, 4), 8).dtype, np.float32)
        self.assertEqual(inverse_block(forward_block(x, 4), 8).shape, (3, 8))

    def test_single_windows(self):
        x = self.rng.normal(0, 1, 16).astype(np.float32)
        spec = forward_dct(Window(x), 16)
        self.assertEqual((spec.E, spec.N), (16, 16))
        back = inverse_dct(spec)
        self.assertIsInstance(back, Window)
        self.assertTrue(np.allclose(back.samples, x, atol=1e-5))

    def test_window_validation(self):
        self.assertRaises(ParamError, Window, np.zeros(8), 16)
        self.assertRaises(ParamError, Window, np.zeros(2))
        self.assertRaises(ParamError, SpectralWindow, np.zeros(9), 8)
        self.assertRaises(ParamError, forward_block, np.zeros((2, 8)), 9)

class PartitionTestCase(unittest.TestCase):

    def test_padding(self):
        strip = np.arange(1, 71, dtype=np.float32)
        part = partition_strip(strip, 32)
        self.assertEqual(part.windows.shape, (3, 32))
        self.assertEqual(part.sample_count, 70)
        self.assertTrue(np.array_equal(part.windows.ravel()[:70], strip))
        self.assertTrue(np.all(part.windows.ravel()[70:] == 0))

    def test_exact_multiple(self):
        part = partition_strip(np.ones(64), 32)
        self.assertEqual(part.windows.shape, (2, 32))

    def test_short_strip(self):
        part = partition_strip([5.0], 8)
        self.assertEqual(part.windows.shape, (1, 8))
        self.assertEqual(part.windows[0, 0], 5.0)

    def test_empty_strip(self):
        self.assertRaises(InputError, partition_strip, [], 8)

    def test_join_trims_padding(self):
        strip = np.arange(70, dtype=np.float32)
        part = partition_strip(strip, 32)
        self.assertTrue(np.array_equal(join_windows(part.windows, part.sample_count), strip))
        self.assertRaises(ParamError, join_windows, part.windows, 97)

if __name__=='__main__':
    unittest.main()
