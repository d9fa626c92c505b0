# encoding: utf-8
"""Compiled inner loops for the entropy stage.

All bit twiddling happens on int64 so numba never promotes a mixed signed/unsigned
expression to float; callers view the packed words as uint64 once the loop is done.
"""
import numpy as np
from numba import jit

WORD_BITS = 64

@jit(nopython=True, nogil=True, cache=True)
def pack_words(symbols, codes, lengths, words, symlens):
    """Greedily pack codewords MSB-first into 64-bit words, never splitting one.

    `words` and `symlens` must have room for len(symbols) entries (one symbol per word
    is the worst case). Returns the number of words written.
    """
    w = 0
    count = 0
    bits = 0
    buf = np.int64(0)
    i = 0
    n = symbols.shape[0]
    while i < n:
        sym = np.int64(symbols[i])
        code = codes[sym]
        size = lengths[sym]
        if bits + size > WORD_BITS:
            words[w] = buf
            symlens[w] = count
            w += 1
            buf = np.int64(0)
            bits = 0
            count = 0
        else:
            buf = buf | (code << (WORD_BITS - bits - size))
            bits += size
            count += 1
            i += 1
    if count > 0:
        words[w] = buf
        symlens[w] = count
        w += 1
    return w

@jit(nopython=True, nogil=True, cache=True)
def unpack_words(words, symlens, offsets, lut, lmax, start, stop, out):
    """Decode words[start:stop] into out[offsets[w]:offsets[w]+symlens[w]].

    `lut` holds symbol | length<<8 per lmax-bit prefix. Returns -1 on success or the
    index of the first word whose symbols overran its 64 bits.
    """
    mask = (np.int64(1) << lmax) - 1
    for w in range(start, stop):
        word = words[w]
        pos = 0
        o = offsets[w]
        for _ in range(symlens[w]):
            if pos >= WORD_BITS:
                return w
            if pos + lmax <= WORD_BITS:
                prefix = (word >> (WORD_BITS - pos - lmax)) & mask
            else:
                # past bit 63 the window is zero-filled
                prefix = (word << (pos + lmax - WORD_BITS)) & mask
            entry = lut[prefix]
            size = entry >> 8
            if size == 0 or pos + size > WORD_BITS:
                return w
            out[o] = entry & 255
            o += 1
            pos += size
    return -1
