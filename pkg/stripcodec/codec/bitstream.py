# encoding: utf-8
import struct
from collections import namedtuple

import numpy as np

from stripcodec import CodecError, ParamError, CorruptionError, ParseError, TruncatedError, \
                       MagicError, VersionError, LengthError
from stripcodec.lib import kernels
from .entropy import ALPHABET, canonize
from .quantization import CodecParams, QuantTable

__all__ = [
        "MAGIC", "VERSION", "HEADER_SIZE",
        "SymLenStream", "Blob",
        "encode_symlen", "decode_word", "decode_stream", "write_blob", "read_blob",
        ]

MAGIC = b'FPTC'
VERSION = 1
WORD_BITS = kernels.WORD_BITS

# magic, version, N, E, B1, B2, mu, alpha1, A0, A1, lmax, code lengths, sample & word counts
HEADER = struct.Struct('<4sBBBBBffffB%isQQ' % ALPHABET)
HEADER_SIZE = HEADER.size

### packed words ###

class SymLenStream(namedtuple('SymLenStream', ['words', 'symlens'])):
    """64-bit words of MSB-first codewords plus the number of symbols held by each"""
    def __new__(cls, words=(), symlens=()):
        words = np.asarray(words, dtype=np.uint64)
        symlens = np.asarray(symlens, dtype=np.uint8)
        if words.shape != symlens.shape:
            mismatch = '%i words but %i symbol counts' % (words.size, symlens.size)
            raise ParamError(mismatch)
        return super(SymLenStream, cls).__new__(cls, words, symlens)

    @property
    def word_count(self):
        return self.words.size

    @property
    def symbol_count(self):
        return int(self.symlens.sum(dtype=np.int64))

    @property
    def nbytes(self):
        return self.words.nbytes + self.symlens.nbytes

    def __eq__(self, other):
        return isinstance(other, SymLenStream) and np.array_equal(self.words, other.words) \
               and np.array_equal(self.symlens, other.symlens)

    def __ne__(self, other):
        return not self.__eq__(other)

    __hash__ = None

def encode_symlen(symbols, codebook):
    """Single sequential pass packing each symbol's codeword into the current word,
    starting a fresh word whenever the next codeword wouldn't fit."""
    symbols = np.ravel(np.asarray(symbols, dtype=np.uint8))
    if not symbols.size:
        return SymLenStream()
    lengths = codebook.lengths.astype(np.int64)
    uncoded = np.flatnonzero(lengths[np.unique(symbols)] == 0)
    if uncoded.size:
        missing = 'Symbol %i has no codeword in this codebook' % np.unique(symbols)[uncoded[0]]
        raise ParamError(missing)

    words = np.zeros(symbols.size, dtype=np.int64)
    symlens = np.zeros(symbols.size, dtype=np.uint8)
    count = kernels.pack_words(symbols, codebook.codes.astype(np.int64), lengths, words, symlens)
    return SymLenStream(words[:count].view(np.uint64), symlens[:count])

def decode_word(word, symlen, lut):
    """Decode exactly `symlen` symbols from one packed word using only the LUT"""
    word, lmax = int(word), lut.lmax
    mask = (1 << lmax) - 1
    out = np.zeros(int(symlen), dtype=np.uint8)
    pos = 0
    for i in range(int(symlen)):
        # zero-fill past the end of the word
        prefix = ((word << lmax) >> (WORD_BITS - pos)) & mask
        sym, size = lut.lookup(prefix)
        if not size or pos + size > WORD_BITS:
            raise CorruptionError('Word overran its %i bits after %i of %i symbols' % (WORD_BITS, i, symlen))
        out[i] = sym
        pos += size
    return out

def decode_stream(stream, lut):
    """Sequential reference decoder: every word in order, one after the other"""
    chunks = []
    for w, (word, symlen) in enumerate(zip(stream.words, stream.symlens)):
        try:
            chunks.append(decode_word(word, symlen, lut))
        except CorruptionError as e:
            raise CorruptionError(str(e), word=w)
    if not chunks:
        return np.zeros(0, dtype=np.uint8)
    return np.concatenate(chunks)

### container ###

Blob = namedtuple('Blob', ['stream', 'params', 'table', 'codebook', 'sample_count'])

def write_blob(stream, params, table, codebook, sample_count):
    header = HEADER.pack(MAGIC, VERSION, params.N, params.E, params.B1, params.B2,
                         params.mu, params.alpha1, table.A0, table.A1, codebook.lmax,
                         codebook.lengths.astype(np.uint8).tobytes(), int(sample_count), stream.word_count)
    words = stream.words.astype('<u8').tobytes()
    return b''.join([header, stream.symlens.tobytes(), words])

def read_blob(data):
    data = memoryview(data).cast("B")
    if len(data) < len(MAGIC):
        raise TruncatedError('Blob is only %i bytes long' % len(data))
    if bytes(data[:len(MAGIC)]) != MAGIC:
        raise MagicError('Not a compressed strip (bad magic %r)' % bytes(data[:len(MAGIC)]))
    if len(data) < HEADER_SIZE:
        raise TruncatedError('Header needs %i bytes (got %i)' % (HEADER_SIZE, len(data)))

    (magic, version, N, E, B1, B2, mu, alpha1, A0, A1, lmax,
     lengths, sample_count, word_count) = HEADER.unpack_from(data)
    if version != VERSION:
        raise VersionError('Unsupported container version %i (expected %i)' % (version, VERSION))

    expected = HEADER_SIZE + word_count * 9
    if len(data) != expected:
        inconsistent = 'Header promises %i words (%i bytes) but the blob holds %i bytes' % (word_count, expected, len(data))
        if len(data) < expected and len(data) < HEADER_SIZE + word_count:
            raise TruncatedError(inconsistent)
        raise LengthError(inconsistent)

    try:
        params = CodecParams(N=N, E=E, B1=B1, B2=B2, mu=mu, alpha1=alpha1, lmax=lmax)
        table = QuantTable(A0, A1, params)
        codebook = canonize(np.frombuffer(lengths, dtype=np.uint8), lmax)
    except CodecError as e:
        raise ParseError('Inconsistent header: %s' % e)

    if word_count:
        symlens = np.frombuffer(data, dtype=np.uint8, count=word_count, offset=HEADER_SIZE)
        words = np.frombuffer(data, dtype="<u8", count=word_count, offset=HEADER_SIZE + word_count)
    else:
        symlens, words = np.zeros(0, dtype=np.uint8), np.zeros(0, dtype="<u8")
    if not symlens.all():
        raise LengthError('Word %i claims to hold no symbols' % int(np.argmin(symlens)))
    windows = -(-sample_count // N)
    if int(symlens.sum(dtype=np.int64)) != windows * E:
        mismatch = 'Symbol counts add up to %i but %i samples need %i' % (symlens.sum(dtype=np.int64), sample_count, windows * E)
        raise LengthError(mismatch)

    stream = SymLenStream(words.astype(np.uint64), symlens.copy())
    return Blob(stream, params, table, codebook, sample_count)
