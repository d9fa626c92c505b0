# encoding:utf-8

# This is your standard setup.py, so to install the module & command line tool, use:
#     python setup.py install
#
# In addition to the `install' command, there are a few other variants:
#
#    test:   runs the unittest suite in app/tests against the source distribution
#    clean:  discard anything already built and start fresh
#    sdist:  bundles every git-tracked file into a source tarball
#
# We require some dependencies:
# - Python 3.7+
# - numpy (array math for the transform, quantizer & container)
# - numba (jit-compiled packing and decoding kernels)

import sys,os
from setuptools import setup, find_packages
from os.path import dirname, abspath
import stripcodec


## Metadata ##

# PyPI fields
APP_NAME = 'StripCodec'
MODULE = APP_NAME.lower()
VERSION = stripcodec.__version__
AUTHOR = stripcodec.__author__
AUTHOR_EMAIL = stripcodec.__email__
LICENSE = stripcodec.__license__
CLASSIFIERS = (
    "Development Status :: 4 - Beta",
    "Environment :: Console",
    "Intended Audience :: Science/Research",
    "License :: OSI Approved :: MIT License",
    "Operating System :: OS Independent",
    "Programming Language :: Python :: 3",
    "Topic :: Scientific/Engineering",
    "Topic :: System :: Archiving :: Compression",
)
DESCRIPTION = "Asymmetric lossy compression for floating-point signal strips"
LONG_DESCRIPTION = """StripCodec compresses sampled float32 signals (ECG, EEG, seismic traces,
power-grid and weather sensor streams) with a transform codec whose decoder is built to
fan out across every available core.

Encoding is a single sequential pass:

* A windowed DCT-II keeps only the first E of every N coefficients.
* A three-zone quantizer maps each coefficient to a byte: mu-law companding for the
  low bins, a deadzone quantizer for the middle band and zero for the rest.
* A length-limited canonical Huffman code packs the bytes into 64-bit words that never
  split a codeword, alongside a one-byte count of the symbols each word holds.

Decoding turns those counts into output offsets with a prefix sum and then decodes every
word independently, so the entropy stage parallelizes without any synchronization.

The quantization table and codebook are trained offline from representative strips of a
signal domain and saved as a reusable json profile. The ``stripcodec`` command line tool
trains profiles, compresses & decompresses files, benchmarks decode throughput, and runs
rate-distortion sweeps that emit a Pareto front as csv.
"""

## Build Commands ##

def gosub(cmd, on_err=True):
    """Run a shell command and return the output"""
    from subprocess import Popen, PIPE
    shell = isinstance(cmd, str)
    proc = Popen(cmd, stdout=PIPE, stderr=PIPE, shell=shell, universal_newlines=True)
    out, err = proc.communicate()
    ret = proc.returncode
    if on_err:
        msg = '%s:\n' % on_err if isinstance(on_err, str) else ''
        assert ret==0, msg + (err or out)

    return out, err, ret

from setuptools import Command
class CleanCommand(Command):
    description = "wipe out the ./build ./dist and egg-info dirs (plus any cached numba kernels)"
    user_options = []
    def initialize_options(self):
        pass
    def finalize_options(self):
        pass
    def run(self):
        os.system('rm -rf ./build ./dist')
        os.system('rm -rf stripcodec.egg-info MANIFEST.in PKG')
        os.system('find stripcodec -name __pycache__ -prune -exec rm -rf {} +')

class TestCommand(Command):
    description = "run the unittest suite in app/tests"
    user_options = []
    def initialize_options(self):
        pass
    def finalize_options(self):
        pass
    def run(self):
        import unittest
        suite = unittest.defaultTestLoader.discover('app/tests', pattern='test_*.py', top_level_dir='app/tests')
        result = unittest.TextTestRunner(verbosity=2).run(suite)
        if not result.wasSuccessful():
            sys.exit(1)

from setuptools.command.sdist import sdist
class BuildDistCommand(sdist):
    def finalize_options(self):
        with open('MANIFEST.in','w') as f:
            tracked, _, _ = gosub('git ls-tree --full-tree --name-only -r HEAD')
            for line in tracked.splitlines():
                f.write("include %s\n"%line)
        sdist.finalize_options(self)

    def run(self):
        sdist.run(self)
        os.unlink('MANIFEST.in')

## Run Build ##

if __name__=='__main__':
    # make sure we're at the project root regardless of the cwd
    # (this means the various commands don't have to play path games)
    os.chdir(dirname(abspath(__file__)))

    setup(
        name = MODULE,
        version = VERSION,
        description = DESCRIPTION,
        long_description = LONG_DESCRIPTION,
        author = AUTHOR,
        author_email = AUTHOR_EMAIL,
        license = LICENSE,
        classifiers = CLASSIFIERS,
        packages = find_packages(exclude=['app', 'app.*', 'examples', 'examples.*']),
        scripts = ["app/stripcodec"],
        python_requires = '>=3.7',
        install_requires = ['numpy>=1.17', 'numba>=0.50'],
        zip_safe=False,
        cmdclass={
            'clean': CleanCommand,
            'test': TestCommand,
            'sdist': BuildDistCommand,
        },
    )
