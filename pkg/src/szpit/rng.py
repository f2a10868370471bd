"""Seeded, splittable randomness.

The generator is named: SHA-256 label derivation over Python's Mersenne
Twister (``random.Random``).  A root seed plus a path of string labels
determines every stream, so fixed seeds give byte-identical outputs
regardless of call interleaving or thread count, and independent subsystems
can split off their own streams without coordinating.
"""

from __future__ import annotations

import hashlib
import random


def derive_seed(seed: int, *labels: str) -> int:
    """Derive a 64-bit child seed from a root seed and a label path."""
    h = hashlib.sha256()
    h.update(str(seed).encode())
    for label in labels:
        h.update(b"/")
        h.update(label.encode())
    return int.from_bytes(h.digest()[:8], "big")


class Rng:
    """A seedable stream that can split off independent child streams."""

    def __init__(self, seed: int, *labels: str):
        self.seed = seed
        self.labels = labels
        self._random = random.Random(derive_seed(seed, *labels))

    def split(self, label: str) -> "Rng":
        return Rng(self.seed, *self.labels, label)

    def randrange(self, stop: int) -> int:
        return self._random.randrange(stop)

    def randint(self, lo: int, hi: int) -> int:
        return self._random.randint(lo, hi)

    def choice(self, seq):
        return seq[self._random.randrange(len(seq))]

    def point(self, n: int, q: int) -> tuple:
        """A uniform point of S_q^n."""
        return tuple(self._random.randrange(q) for _ in range(n))

    def bits(self, m: int) -> str:
        return "".join("01"[self._random.randrange(2)] for _ in range(m))
