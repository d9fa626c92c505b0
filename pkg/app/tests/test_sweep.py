import unittest
import sys
from os.path import abspath, dirname, join

# run against the source distribution rather than any installed copy
sys.path.insert(0, abspath(join(dirname(__file__), '../..')))

import numpy as np

from stripcodec import ParamError, InputError
from stripcodec.codec import CodecParams
from stripcodec.context import train
from stripcodec.run import Sandbox
from stripcodec.run.sandbox import Outcome
from stripcodec.util import parse_axis, grid, adict, synth

class AxisTestCase(unittest.TestCase):

    def test_lists_and_ranges(self):
        self.assertEqual(parse_axis('4,8,16'), [4, 8, 16])
        self.assertEqual(parse_axis('8:32:8'), [8, 16, 24, 32])
        self.assertEqual(parse_axis('1:3,10'), [1, 2, 3, 10])
        self.assertEqual(parse_axis('0:0.01:0.005', float), [0.0, 0.005, 0.01])

    def test_repeats_collapse(self):
        self.assertEqual(parse_axis('8,4,8,4:5'), [8, 4, 5])

    def test_bad_axes(self):
        for spec in ('', 'x', '8:4', '1:4:0', '1:2:3:4'):
            self.assertRaises(ParamError, parse_axis, spec)

    def test_grid(self):
        combos = list(grid(N=[16, 32], E=[4, 8]))
        self.assertEqual(len(combos), 4)
        self.assertEqual((combos[0].N, combos[0].E), (16, 4))
        self.assertEqual((combos[-1].N, combos[-1].E), (32, 8))

    def test_adict(self):
        d = adict(a=1)
        d.b = 2
        self.assertEqual(d, dict(a=1, b=2))
        self.assertRaises(AttributeError, getattr, d, 'c')

class SynthTestCase(unittest.TestCase):

    def test_seeded(self):
        a = synth.sinusoids(500, seed=3)
        self.assertEqual(a.dtype, np.float32)
        self.assertTrue(np.array_equal(a, synth.sinusoids(500, seed=3)))
        self.assertFalse(np.array_equal(a, synth.sinusoids(500, seed=4)))
        self.assertLessEqual(float(np.abs(a).max()), 6.0)

    def test_corpus(self):
        strips = synth.corpus(3, 100, seed=2)
        self.assertEqual(len(strips), 3)
        self.assertFalse(np.array_equal(strips[0], strips[1]))
        self.assertTrue(np.array_equal(strips[2], synth.corpus(3, 100, seed=2)[2]))

    def test_bounds(self):
        self.assertRaises(ParamError, synth.sinusoids, 0)
        self.assertRaises(ParamError, synth.sinusoids, 10, components=4)

class Recorder(object):
    def __init__(self):
        self.points, self.progress = [], []
    def sweepPoint(self, params, outcome):
        self.points.append((params, outcome.ok))
    def sweepProgress(self, done, total):
        self.progress.append((done, total))

class SandboxTestCase(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.strips = synth.corpus(2, 4096, seed=11)

    def test_configurations(self):
        box = Sandbox(self.strips)
        configs = box.configurations(E=[4, 8, 64], B2=[Sandbox.SAME_AS_E])
        # E=64 exceeds the default window
        self.assertEqual([(p.E, p.B2) for p in configs], [(4, 4), (8, 8)])

    def test_fixed_profile(self):
        profile = train(self.strips, CodecParams(E=8, B2=8))
        box = Sandbox(self.strips, profile)
        self.assertEqual(box.configurations(E=[4, 16]), [profile.params])
        pt = box.trial(profile.params)
        self.assertGreater(pt.cr, 1.0)

    def test_run(self):
        delegate = Recorder()
        box = Sandbox(self.strips, repetitions=1, workers=2, delegate=delegate)
        points = box.run(E=[8, 16], B2=[Sandbox.SAME_AS_E])
        self.assertEqual(len(points), 2)
        self.assertEqual(delegate.progress, [(1, 2), (2, 2)])
        self.assertTrue(all(ok for _, ok in delegate.points))
        for pt in points:
            self.assertGreater(pt.throughput_gbps, 0)
            self.assertLess(pt.prd, 5.0)
        self.assertGreater(points[0].cr, points[1].cr)
        self.assertEqual(box.orig_bytes, 2 * 4096 * 4)

    def test_boxed_calls(self):
        box = Sandbox(self.strips)
        self.assertEqual(box.call(lambda: 3), Outcome(True, 3))
        def bad_params():
            raise ParamError('nope')
        outcome = box.call(bad_params)
        self.assertEqual(outcome, Outcome(False, 'nope'))
        self.assertFalse(box.crashed)
        outcome = box.call(lambda: 1 / 0)
        self.assertFalse(outcome.ok)
        self.assertIn('ZeroDivisionError', outcome.output)
        self.assertTrue(box.crashed)

    def test_needs_strips(self):
        self.assertRaises(InputError, Sandbox, [])

if __name__=='__main__':
    unittest.main()
