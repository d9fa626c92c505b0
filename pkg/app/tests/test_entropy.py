import unittest
import sys
import heapq
from itertools import combinations_with_replacement
from os.path import abspath, dirname, join

# run against the source distribution rather than any installed copy
sys.path.insert(0, abspath(join(dirname(__file__), '../..')))

import numpy as np

from stripcodec import ParamError, TrainingError, InternalError
from stripcodec.codec.entropy import *

def cost(weights, lengths):
    return int(sum(w * l for w, l in zip(weights, lengths)))

def brute_limited(weights, lmax):
    """Cheapest Kraft-valid assignment of lengths ≤ lmax (heaviest symbols get the shortest codes)"""
    heavy = sorted(weights, reverse=True)
    best = None
    for lengths in combinations_with_replacement(range(1, lmax + 1), len(weights)):
        if sum(1 << (lmax - l) for l in lengths) > (1 << lmax):
            continue
        total = cost(heavy, lengths)
        best = total if best is None else min(best, total)
    return best

def heap_huffman(weights):
    """Weighted length of an unconstrained huffman code (the sum of every merge)"""
    heap = list(weights)
    heapq.heapify(heap)
    total = 0
    while len(heap) > 1:
        merged = heapq.heappop(heap) + heapq.heappop(heap)
        total += merged
        heapq.heappush(heap, merged)
    return total

class HistogramTestCase(unittest.TestCase):

    def test_counts(self):
        hist = build_histogram(np.array([0, 0, 5, 255], dtype=np.uint8))
        self.assertEqual(hist.counts.shape, (256,))
        self.assertEqual((hist.counts[0], hist.counts[5], hist.counts[255]), (2, 1, 1))
        self.assertEqual(hist.total, 4)

    def test_empty(self):
        self.assertRaises(TrainingError, build_histogram, [])
        self.assertRaises(TrainingError, SymbolHistogram, np.zeros(256))
        self.assertRaises(ParamError, SymbolHistogram, np.ones(10))

    def test_smoothing(self):
        counts = np.zeros(256, dtype=np.int64)
        counts[7] = 10
        smoothed = smooth(counts)
        self.assertTrue(np.all(smoothed >= 1))
        self.assertEqual(smoothed[7], 10)

    def test_entropy_bits(self):
        self.assertAlmostEqual(entropy_bits(np.ones(256)), 8.0)
        counts = np.zeros(256)
        counts[:2] = 1
        self.assertAlmostEqual(entropy_bits(counts), 1.0)

class PackageMergeTestCase(unittest.TestCase):

    def setUp(self):
        self.rng = np.random.default_rng(2024)

    def test_limited_lengths_are_optimal(self):
        cases = 0
        for n in range(2, 9):
            for lmax in (2, 3, 4):
                if (1 << lmax) < n:
                    continue
                for _ in range(30):
                    weights = [int(w) for w in self.rng.integers(1, 100, n)]
                    lengths = package_merge(weights, lmax)
                    self.assertLessEqual(int(lengths.max()), lmax)
                    self.assertLessEqual(sum(2.0 ** -int(l) for l in lengths), 1.0)
                    self.assertEqual(cost(weights, lengths), brute_limited(weights, lmax), (weights, lmax))
                    cases += 1
        self.assertGreaterEqual(cases, 500)

    def test_loose_limit_matches_huffman(self):
        for _ in range(100):
            n = int(self.rng.integers(2, 40))
            weights = [int(w) for w in self.rng.integers(1, 1000, n)]
            self.assertEqual(cost(weights, package_merge(weights, 16)), heap_huffman(weights))

    def test_zero_weights_stay_uncoded(self):
        lengths = package_merge([5, 0, 3, 0, 1], 4)
        self.assertEqual(list(lengths), [1, 0, 2, 0, 2])

    def test_tight_limit_flattens(self):
        # 256 symbols under an 8-bit limit leave only the flat code
        lengths = package_merge(np.arange(1, 257) ** 2, 8)
        self.assertTrue(np.all(lengths == 8))

    def test_deterministic_ties(self):
        weights = [1] * 6
        self.assertEqual(list(package_merge(weights, 3)), list(package_merge(weights, 3)))
        self.assertEqual(sorted(package_merge(weights, 3)), [2, 2, 3, 3, 3, 3])

    def test_bad_inputs(self):
        self.assertRaises(ParamError, package_merge, [5], 4)
        self.assertRaises(ParamError, package_merge, [0, 0, 3], 4)
        self.assertRaises(ParamError, package_merge, [1] * 5, 2)

class CanonicalTestCase(unittest.TestCase):

    def test_codewords(self):
        book = canonize([2, 1, 3, 3])
        self.assertEqual([book.codeword(s) for s in range(4)], ['10', '0', '110', '111'])
        self.assertEqual(book.lmax, 3)
        self.assertEqual(book.kraft, 1.0)

    def test_kraft_sum(self):
        self.assertEqual(canonize([1, 2, 2]).kraft, 1.0)
        self.assertEqual(canonize([2, 2, 2, 0]).kraft, 0.75)
        self.assertEqual(canonize([8] * 256).kraft, 1.0)
        self.assertEqual(canonize([16] * 4 + [0] * 252, 16).kraft, 4 * 2.0 ** -16)

    def test_uncoded_symbols(self):
        book = canonize([0, 1, 0, 1], 4)
        self.assertIsNone(book.codeword(0))
        self.assertEqual((book.codeword(1), book.codeword(3)), ('0', '1'))

    def test_prefix_free(self):
        lengths = package_merge(np.random.default_rng(5).integers(1, 500, 256), 12)
        book = canonize(lengths, 12)
        words = sorted(book.codeword(s) for s in range(256))
        for a, b in zip(words, words[1:]):
            self.assertFalse(b.startswith(a))

    def test_rejects_bad_lengths(self):
        self.assertRaises(InternalError, canonize, [1, 1, 1])
        self.assertRaises(InternalError, canonize, [5, 5], 4)
        self.assertRaises(InternalError, canonize, [-1, 1])

    def test_equality(self):
        self.assertEqual(canonize([1, 2, 2], 4), canonize([1, 2, 2], 4))
        self.assertNotEqual(canonize([1, 2, 2], 4), canonize([1, 2, 2], 5))
        self.assertNotEqual(canonize([1, 2, 2], 4), canonize([2, 2, 1], 4))

class LookupTestCase(unittest.TestCase):

    def test_every_prefix_decodes(self):
        book = canonize([2, 1, 3, 3], 4)
        lut = build_lut(book)
        self.assertEqual(len(lut.symbols), 16)
        for prefix in range(16):
            bits = format(prefix, '04b')
            sym, size = lut.lookup(prefix)
            self.assertEqual(book.codeword(sym), bits[:size])

    def test_unused_prefixes(self):
        lut = build_lut(canonize([1, 0, 0], 3))
        self.assertEqual(lut.lookup(0b000), (0, 1))
        self.assertEqual(lut.lookup(0b100)[1], 0)

    def test_packed(self):
        lut = build_lut(canonize([2, 1, 3, 3], 4))
        packed = lut.packed
        self.assertEqual(packed.dtype, np.int64)
        self.assertEqual(int(packed[0]), 1 | (1 << 8))
        self.assertEqual(int(packed[0b1111]), 3 | (3 << 8))

class TrainingTestCase(unittest.TestCase):

    def test_smoothed_codebook(self):
        rng = np.random.default_rng(11)
        symbols = np.clip(rng.normal(128, 3, 10000), 0, 255).astype(np.uint8)
        book = train_codebook(symbols, 12)
        self.assertTrue(np.all(book.lengths > 0))
        self.assertLessEqual(int(book.lengths.max()), 12)
        self.assertLessEqual(book.kraft, 1.0)
        hist = build_histogram(symbols)
        self.assertGreaterEqual(mean_bits(book, hist), entropy_bits(hist) - 1e-9)
        self.assertLess(mean_bits(book, hist), 8.0)

    def test_deterministic(self):
        symbols = np.random.default_rng(3).integers(0, 256, 5000).astype(np.uint8)
        self.assertEqual(train_codebook(symbols), train_codebook(symbols))
        self.assertTrue(np.array_equal(train_codebook(symbols).codes, train_codebook(symbols).codes))

if __name__=='__main__':
    unittest.main()
