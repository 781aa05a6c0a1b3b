# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: counter-based Gaussian stream, LFSR, eye statistics.

Same algorithms as fsolink.kernels.pure; see that module for the definition
of the noise stream. Integer paths are bit-identical to the pure versions,
the float path can differ from numpy's vectorized transcendentals in the
last ulp.
"""

from libc.math cimport cos, log, sqrt
from libc.stdint cimport uint8_t, uint64_t

import numpy as np

cdef uint64_t GOLDEN_C = 0x9E3779B97F4A7C15ULL
cdef double TWO_NEG53 = 2.0 ** -53
cdef double TWO_PI = 2.0 * 3.141592653589793


cdef inline uint64_t mix64_c(uint64_t z) nogil:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL
    return z ^ (z >> 31)


def normal_stream(seed, n):
    """Return n standard-normal float64 samples, fully determined by seed."""
    cdef uint64_t s = <uint64_t>(seed & 0xFFFFFFFFFFFFFFFF)
    cdef Py_ssize_t count = n
    out_arr = np.empty(count, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i
    cdef uint64_t a, b
    cdef double u1, u2
    with nogil:
        for i in range(count):
            a = mix64_c(s + (2 * <uint64_t>i + 1) * GOLDEN_C)
            b = mix64_c(s + (2 * <uint64_t>i + 2) * GOLDEN_C)
            u1 = <double>((a >> 11) + 1) * TWO_NEG53
            u2 = <double>(b >> 11) * TWO_NEG53
            out[i] = sqrt(-2.0 * log(u1)) * cos(TWO_PI * u2)
    return out_arr


def lfsr_bits(order, taps_mask, state, n):
    """Clock a Fibonacci LFSR n times and return the output bits."""
    cdef uint64_t mask = (<uint64_t>1 << <int>order) - 1
    cdef int top = <int>order - 1
    cdef uint64_t taps = <uint64_t>taps_mask
    cdef uint64_t st = <uint64_t>state
    cdef Py_ssize_t count = n
    out_arr = np.empty(count, dtype=np.uint8)
    cdef uint8_t[::1] out = out_arr
    cdef Py_ssize_t i
    cdef uint64_t fb, t
    with nogil:
        for i in range(count):
            out[i] = <uint8_t>((st >> top) & 1)
            t = st & taps
            fb = 0
            while t:
                fb ^= t & 1
                t >>= 1
            st = ((st << 1) & mask) | fb
    return out_arr


def eye_phase_stats(x, bits, sps, lo, hi):
    """Mark/space mean and population stddev per sampling phase in [lo, hi)."""
    x_arr = np.ascontiguousarray(x, dtype=np.float64)
    bits_arr = np.ascontiguousarray(bits, dtype=np.uint8)
    cdef const double[::1] xv = x_arr
    cdef const uint8_t[::1] bv = bits_arr
    cdef Py_ssize_t nb = bits_arr.shape[0]
    cdef Py_ssize_t step = sps
    cdef Py_ssize_t p0 = lo, p1 = hi, nph = hi - lo
    mu1_arr = np.empty(nph, dtype=np.float64)
    mu0_arr = np.empty(nph, dtype=np.float64)
    s1_arr = np.empty(nph, dtype=np.float64)
    s0_arr = np.empty(nph, dtype=np.float64)
    cdef double[::1] mu1 = mu1_arr, mu0 = mu0_arr, s1 = s1_arr, s0 = s0_arr
    cdef Py_ssize_t j, k, n1 = 0, n0 = 0
    cdef double acc1, acc0, d, v
    for k in range(nb):
        if bv[k]:
            n1 += 1
        else:
            n0 += 1
    with nogil:
        for j in range(nph):
            acc1 = 0.0
            acc0 = 0.0
            for k in range(nb):
                v = xv[k * step + p0 + j]
                if bv[k]:
                    acc1 += v
                else:
                    acc0 += v
            mu1[j] = acc1 / n1
            mu0[j] = acc0 / n0
            acc1 = 0.0
            acc0 = 0.0
            for k in range(nb):
                v = xv[k * step + p0 + j]
                if bv[k]:
                    d = v - mu1[j]
                    acc1 += d * d
                else:
                    d = v - mu0[j]
                    acc0 += d * d
            s1[j] = sqrt(acc1 / n1)
            s0[j] = sqrt(acc0 / n0)
    return mu1_arr, mu0_arr, s1_arr, s0_arr
