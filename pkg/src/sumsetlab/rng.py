"""Counter-based 64-bit generator used for every randomized sweep.

This is SplitMix64: output(i) = mix(seed + (i+1)*GAMMA).  It is stateless
(a pure function of seed and counter), which makes sharded sweeps
reproducible regardless of worker count, and it is trivial to reimplement
in any language.  The first outputs for seed 0 are pinned in
tests/test_rng.py as cross-implementation vectors.
"""

MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def splitmix64(seed: int, counter: int) -> int:
    """Return the counter-th 64-bit output of the stream for this seed."""
    z = (seed + (counter + 1) * _GAMMA) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def bits(seed: int, counter: int, nbits: int) -> tuple[int, int]:
    """Draw nbits random bits as an int; returns (value, next counter)."""
    words = (nbits + 63) // 64
    value = 0
    for w in range(words):
        value |= splitmix64(seed, counter + w) << (64 * w)
    return value & ((1 << nbits) - 1), counter + words


def nonzero_bits(seed: int, counter: int, nbits: int) -> tuple[int, int]:
    """Like bits() but redraws (advancing the counter) until nonzero."""
    while True:
        value, counter = bits(seed, counter, nbits)
        if value:
            return value, counter


def randrange(seed: int, counter: int, n: int) -> tuple[int, int]:
    """Uniform draw from range(n) by rejection; returns (value, next counter)."""
    if n <= 0:
        raise ValueError("randrange needs n >= 1")
    limit = (1 << 64) - ((1 << 64) % n)
    while True:
        z = splitmix64(seed, counter)
        counter += 1
        if z < limit:
            return z % n, counter
