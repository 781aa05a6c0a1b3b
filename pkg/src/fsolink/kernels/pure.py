"""Pure numpy implementations of the hot kernels.

These are the reference versions of the three inner loops the simulator
spends its time in. ``fsolink.kernels`` re-exports either these or the
compiled Cython equivalents from ``_fast``; both implement the same
algorithms, so results agree to within a last-ulp difference in the
transcendental calls (the integer paths are bit-identical).

Noise stream
------------
Gaussian variates come from a counter-based generator: output ``i`` of
splitmix64 seeded with ``seed`` is ``mix64(seed + (i+1)*GOLDEN)``, a pure
function of (seed, i). Sample ``n`` consumes outputs ``2n`` and ``2n+1``
and applies the Box-Muller transform

    u1 = ((a >> 11) + 1) * 2^-53          in (0, 1]
    u2 = (b >> 11) * 2^-53                in [0, 1)
    z  = sqrt(-2 ln u1) * cos(2 pi u2)

Counter addressing keeps every sample independent of generation order,
which is what makes sweep results independent of parallel scheduling.
"""

import numpy as np

GOLDEN = 0x9E3779B97F4A7C15
_MIX_A = 0xBF58476D1CE4E5B9
_MIX_B = 0x94D049BB133111EB
_MASK64 = 0xFFFFFFFFFFFFFFFF
_TWO_NEG53 = 2.0 ** -53
_TWO_PI = 2.0 * np.pi


def mix64(z: int) -> int:
    """splitmix64 finalizer on a 64-bit integer (scalar)."""
    z &= _MASK64
    z = ((z ^ (z >> 30)) * _MIX_A) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX_B) & _MASK64
    return z ^ (z >> 31)


def _mix64_u64(z: np.ndarray) -> np.ndarray:
    # uint64 arithmetic wraps mod 2^64, matching the scalar mix64
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX_A)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX_B)
    return z ^ (z >> np.uint64(31))


def normal_stream(seed: int, n: int) -> np.ndarray:
    """Return n standard-normal float64 samples, fully determined by seed."""
    if n == 0:
        return np.zeros(0)
    idx = np.arange(1, 2 * n + 1, dtype=np.uint64)
    z = _mix64_u64(np.uint64(seed & _MASK64) + idx * np.uint64(GOLDEN))
    u1 = ((z[0::2] >> np.uint64(11)) + np.uint64(1)).astype(np.float64) * _TWO_NEG53
    u2 = (z[1::2] >> np.uint64(11)).astype(np.float64) * _TWO_NEG53
    return np.sqrt(-2.0 * np.log(u1)) * np.cos(_TWO_PI * u2)


def lfsr_bits(order: int, taps_mask: int, state: int, n: int) -> np.ndarray:
    """Clock a Fibonacci LFSR n times and return the output bits.

    State bit k holds stage k+1; the output is the top stage (bit
    order-1) and the feedback parity of the tapped stages enters stage 1.
    """
    mask = (1 << order) - 1
    top = order - 1
    out = np.empty(n, dtype=np.uint8)
    for i in range(n):
        out[i] = (state >> top) & 1
        fb = bin(state & taps_mask).count("1") & 1
        state = ((state << 1) & mask) | fb
    return out


def eye_phase_stats(x, bits, sps: int, lo: int, hi: int):
    """Mark/space statistics at every sampling phase in [lo, hi).

    x is the photocurrent (len(bits)*sps samples), bits the transmitted
    pattern. Returns (mu1, mu0, sigma1, sigma0) arrays of length hi-lo,
    population standard deviations.
    """
    cols = np.asarray(x).reshape(len(bits), sps)[:, lo:hi]
    ones = np.asarray(bits, dtype=bool)
    marks = cols[ones]
    spaces = cols[~ones]
    return (
        marks.mean(axis=0),
        spaces.mean(axis=0),
        marks.std(axis=0),
        spaces.std(axis=0),
    )
