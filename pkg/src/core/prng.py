"""SplitMix64, the documented generator behind every random choice.

One 64-bit state advanced by the golden-ratio increment; each call to
:meth:`SplitMix64.next` mixes the new state into an output word. Bounded draws
use rejection sampling so every value in range is equally likely.
"""

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    def __init__(self, seed: int = 0):
        self._state = seed & MASK64

    @property
    def state(self) -> int:
        return self._state

    def next(self) -> int:
        self._state = (self._state + GOLDEN_GAMMA) & MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound)."""
        if bound < 1:
            raise ValueError(f"bound must be positive, got {bound}")
        # largest multiple of bound that fits in 64 bits; draws above it are rejected
        limit = ((1 << 64) // bound) * bound
        while True:
            x = self.next()
            if x < limit:
                return x % bound

    def randint(self, low: int, high: int) -> int:
        """Uniform integer in [low, high], both ends inclusive."""
        if low > high:
            raise ValueError(f"empty range [{low}, {high}]")
        return low + self.below(high - low + 1)
