"""Counter-based random streams.

Every stream is addressed by (root_seed, label) and every draw by a counter,
so draw i is the pure function

    out(i) = mix64(stream_key + (i + 1) * 0x9E3779B97F4A7C15)

where mix64 is the SplitMix64 finalizer (xor-shift 30, multiply
0xBF58476D1CE4E5B9, xor-shift 27, multiply 0x94D049BB133111EB, xor-shift 31)
and stream_key = mix64(root_seed XOR first-8-bytes(SHA-256(label))).

Any position in any stream can be reconstructed from the triple alone; replay
logs depend on this and carry the STREAM_FORMAT tag.
"""

from __future__ import annotations

import hashlib
from typing import Sequence, TypeVar

STREAM_FORMAT = "splitmix64/1"

_MASK64 = (1 << 64) - 1
_GOLDEN_GAMMA = 0x9E3779B97F4A7C15
_MIX_MUL_1 = 0xBF58476D1CE4E5B9
_MIX_MUL_2 = 0x94D049BB133111EB

T = TypeVar("T")


def mix64(z: int) -> int:
    """SplitMix64 finalizer over 64-bit integers."""
    z &= _MASK64
    z = ((z ^ (z >> 30)) * _MIX_MUL_1) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX_MUL_2) & _MASK64
    return z ^ (z >> 31)


def stream_key(root_seed: int, label: str) -> int:
    digest = hashlib.sha256(label.encode("utf-8")).digest()
    return mix64((root_seed & _MASK64) ^ int.from_bytes(digest[:8], "big"))


class RngStream:
    """A single random stream; one owner, sequential draws.

    Each bounded draw consumes exactly one 64-bit output, so the counter
    advances by one per call regardless of the bound.
    """

    __slots__ = ("root_seed", "label", "counter", "_key")

    def __init__(self, root_seed: int, label: str, counter: int = 0):
        self.root_seed = root_seed & _MASK64
        self.label = label
        self.counter = counter
        self._key = stream_key(root_seed, label)

    def __repr__(self) -> str:
        return f"RngStream(root_seed={self.root_seed}, label={self.label!r}, counter={self.counter})"

    def state(self) -> tuple[int, str, int]:
        return (self.root_seed, self.label, self.counter)

    def clone(self) -> "RngStream":
        return RngStream(self.root_seed, self.label, self.counter)

    def next_u64(self) -> int:
        self.counter += 1
        return mix64((self._key + self.counter * _GOLDEN_GAMMA) & _MASK64)

    def random(self) -> float:
        """Uniform float in [0, 1) with 53 significant bits."""
        return (self.next_u64() >> 11) * (2.0**-53)

    def randrange(self, n: int) -> int:
        """Uniform int in [0, n). Multiply-shift reduction, one draw."""
        if n <= 0:
            raise ValueError(f"randrange bound must be positive, got {n}")
        return (self.next_u64() * n) >> 64

    def randint(self, a: int, b: int) -> int:
        """Uniform int in [a, b] inclusive."""
        if b < a:
            raise ValueError(f"empty range [{a}, {b}]")
        return a + self.randrange(b - a + 1)

    def chance(self, p: float) -> bool:
        """True with probability p. Always consumes exactly one draw."""
        return self.random() < p

    def choice(self, seq: Sequence[T]) -> T:
        if not seq:
            raise ValueError("choice from empty sequence")
        return seq[self.randrange(len(seq))]

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates; consumes len(items) - 1 draws."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randrange(i + 1)
            items[i], items[j] = items[j], items[i]


def derive_stream(root_seed: int, label: str, counter: int = 0) -> RngStream:
    """Stream addressed by (root_seed, label), positioned at counter."""
    return RngStream(root_seed, label, counter)
