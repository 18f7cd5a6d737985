"""Conversions between index arrays, boolean masks and integer bit vectors.

Bit ``i`` of the integer is element ``i`` of the group.
"""
import numpy as np


def mask_to_int(mask):
    if not len(mask):
        return 0
    packed = np.packbits(np.asarray(mask, dtype=bool), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def indices_to_int(indices, n):
    mask = np.zeros(n, dtype=bool)
    mask[np.asarray(indices, dtype=np.int64)] = True
    return mask_to_int(mask)


def int_to_mask(bits, n):
    nbytes = (n + 7) // 8
    raw = np.frombuffer(bits.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:n].astype(bool)


def int_to_indices(bits, n):
    return np.flatnonzero(int_to_mask(bits, n))


def rows_to_ints(matrix):
    """Pack each row of a boolean matrix into an integer."""
    matrix = np.asarray(matrix, dtype=bool)
    packed = np.packbits(matrix, axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


def iter_bits(bits):
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low
