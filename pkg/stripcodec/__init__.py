# encoding: utf-8

"""Asymmetric lossy codec for sampled signal strips

A windowed DCT-II front end, a three-zone quantizer and a length-limited canonical
Huffman coder that packs its codewords into self-contained 64-bit words. Encoding is
a single sequential pass; every packed word can be decoded on its own so the decoder
fans out over as many workers as are available.

MIT Licensed
"""

__version__ = '0.3.1'
__author__  = 'Christian Swinehart'
__email__   = "drafting@samizdat.cc"
__license__ = 'MIT'

# exit codes used by the command line tool
EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USER = 2
EXIT_CORRUPT = 3

# please excuse our technical difficulties
class CodecError(Exception):
    exit_code = EXIT_INTERNAL

class InternalError(CodecError):
    pass

### user errors ###

class ParamError(CodecError):
    exit_code = EXIT_USER

class InputError(CodecError):
    exit_code = EXIT_USER

class TrainingError(CodecError):
    exit_code = EXIT_USER

class MetricError(CodecError):
    exit_code = EXIT_USER

### damaged or malformed streams ###

class CorruptionError(CodecError):
    exit_code = EXIT_CORRUPT

    def __init__(self, msg, word=None):
        if word is not None:
            msg = '%s (word %i)' % (msg, word)
        super(CorruptionError, self).__init__(msg)
        self.word = word

class ParseError(CorruptionError):
    pass

class TruncatedError(ParseError):
    pass

class MagicError(ParseError):
    pass

class VersionError(ParseError):
    pass

class LengthError(ParseError):
    pass
