"""splitmix64 pseudo-random stream.

Every randomized component of the package (permutation draws, threshold
accepting moves) consumes draws from this generator so that runs are
bit-reproducible from a single 64-bit seed, independent of Python/numpy
RNG versions.

State transition and output scrambler:

    state  = (state + 0x9E3779B97F4A7C15) mod 2^64
    z      = state
    z      = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9   mod 2^64
    z      = (z ^ (z >> 27)) * 0x94D049BB133111EB   mod 2^64
    output = z ^ (z >> 31)
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB

# Per-dimension substreams are derived as seed XOR (dim_index * SUBSTREAM_SALT);
# the salt is odd so distinct dimensions never collide.
SUBSTREAM_SALT = 0x9E3779B97F4A7C15


def splitmix64_next(state: int) -> tuple[int, int]:
    """Advance one step; returns (new_state, output)."""
    state = (state + GOLDEN_GAMMA) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * MIX1) & MASK64
    z = ((z ^ (z >> 27)) * MIX2) & MASK64
    return state, z ^ (z >> 31)


class SplitMix64:
    """Stateful wrapper around the splitmix64 transition."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state, out = splitmix64_next(self.state)
        return out

    def next_below(self, bound: int) -> int:
        """Draw in [0, bound) as draw mod bound (modulo bias accepted, documented)."""
        return self.next_u64() % bound

    def substream(self, index: int) -> "SplitMix64":
        """Independent stream for dimension/restart `index` (XOR-salted seed)."""
        return SplitMix64(self.state ^ ((index * SUBSTREAM_SALT) & MASK64))


def substream_seed(seed: int, index: int) -> int:
    return (seed ^ ((index * SUBSTREAM_SALT) & MASK64)) & MASK64
