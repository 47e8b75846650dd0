"""Bit-packed function tables and popcount coincidence counting.

A table over {0..n-1} with L entries is packed into ``ceil(L / s)`` uint64
words, ``s = 64 // b`` slots per word, ``b = max(1, ceil(log2 n))`` bits per
slot.  Two packed tables disagree at a slot iff any bit of that slot
differs, so the mismatch count is the popcount of the XOR folded onto the
low bit of every slot.
"""

from __future__ import annotations

import numpy as np


def slot_bits(n: int) -> int:
    return max(1, (n - 1).bit_length())


class Packer:
    def __init__(self, n: int, length: int):
        self.n = n
        self.length = length
        self.bits = slot_bits(n)
        self.slots = 64 // self.bits
        self.words = -(-length // self.slots)
        low = 0
        for s in range(self.slots):
            low |= 1 << (s * self.bits)
        self.low_mask = np.uint64(low)
        self.shifts = [np.uint64(s) for s in range(1, self.bits)]

    def pack(self, rows: np.ndarray) -> np.ndarray:
        """rows: (N, L) integer array -> (N, W) uint64."""
        rows = np.asarray(rows)
        if rows.ndim == 1:
            rows = rows[None, :]
        N = rows.shape[0]
        padded = np.zeros((N, self.words * self.slots), dtype=np.uint64)
        padded[:, :self.length] = rows
        padded = padded.reshape(N, self.words, self.slots)
        weights = (np.uint64(1) << (np.arange(self.slots, dtype=np.uint64)
                                    * np.uint64(self.bits)))
        # slots never overlap, so the sum is an OR
        return (padded * weights).sum(axis=2, dtype=np.uint64)

    def mismatches(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Number of differing entries between broadcastable packed arrays."""
        x = np.bitwise_xor(a, b)
        if self.bits > 1:
            y = x.copy()
            for s in self.shifts:
                y |= x >> s
            x = y & self.low_mask
        return np.bitwise_count(x).sum(axis=-1, dtype=np.int64)

    def agreements(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.length - self.mismatches(a, b)
