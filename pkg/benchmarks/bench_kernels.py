"""Benchmark the compiled kernels against the pure-numpy fallback.

Times the three hot kernels at the sizes a real run uses (128 bits x 64
samples/bit = 8192 samples) and at a larger size that shows scaling,
then a full end-to-end link simulation under each backend. Run:

    python benchmarks/bench_kernels.py [--repeat 7] [--number 200]
"""

import argparse
import statistics
import subprocess
import sys
import timeit

import numpy as np

from fsolink.kernels import pure

try:
    from fsolink.kernels import _fast
except ImportError:
    _fast = None


def best_time(fn, number, repeat):
    """Best-of-N mean time per call, seconds."""
    times = timeit.repeat(fn, number=number, repeat=repeat)
    return min(times) / number


def bench_kernels(number, repeat):
    rng = np.random.default_rng(42)
    bits_small = rng.integers(0, 2, 128).astype(np.uint8)
    bits_small[:2] = [1, 0]
    x_small = rng.normal(size=128 * 64)
    bits_big = rng.integers(0, 2, 4096).astype(np.uint8)
    bits_big[:2] = [1, 0]
    x_big = rng.normal(size=4096 * 64)

    cases = [
        ("normal_stream n=8192", lambda m: m.normal_stream(7, 8192)),
        ("normal_stream n=1e6", lambda m: m.normal_stream(7, 1_000_000)),
        ("lfsr_bits 128 bits", lambda m: m.lfsr_bits(7, 0b1100000, 0x7F, 128)),
        ("lfsr_bits 65535 bits", lambda m: m.lfsr_bits(16, 0b1011010000000000, 0xACE1, 65535)),
        ("eye_phase_stats 128x64", lambda m: m.eye_phase_stats(x_small, bits_small, 64, 12, 52)),
        ("eye_phase_stats 4096x64", lambda m: m.eye_phase_stats(x_big, bits_big, 64, 12, 52)),
    ]

    print(f"{'kernel':<26} {'pure':>12} {'cython':>12} {'speedup':>9}")
    for name, call in cases:
        # scale the repeat count down for the expensive cases
        n = max(1, number // (100 if "1e6" in name or "4096" in name or "65535" in name else 1))
        t_pure = best_time(lambda: call(pure), n, repeat)
        if _fast is None:
            print(f"{name:<26} {t_pure * 1e6:>10.1f}us {'-':>12} {'-':>9}")
            continue
        t_fast = best_time(lambda: call(_fast), n, repeat)
        print(
            f"{name:<26} {t_pure * 1e6:>10.1f}us {t_fast * 1e6:>10.1f}us "
            f"{t_pure / t_fast:>8.2f}x"
        )


def bench_end_to_end(repeat):
    """Full simulation timing under each backend (separate interpreters)."""
    code = (
        "import time, statistics\n"
        "from fsolink.runner import preset, run_single\n"
        "spec = preset('A').base\n"
        "run_single(spec)\n"
        "ts = []\n"
        f"for _ in range({repeat}):\n"
        "    t0 = time.perf_counter()\n"
        "    for _ in range(50):\n"
        "        run_single(spec)\n"
        "    ts.append((time.perf_counter() - t0) / 50)\n"
        "print(min(ts))\n"
    )
    import os

    results = {}
    backends = ["py"] + (["c"] if _fast is not None else [])
    for backend in backends:
        env = dict(os.environ, FSOLINK_BACKEND=backend)
        proc = subprocess.run(
            [sys.executable, "-c", code], capture_output=True, text=True, env=env
        )
        if proc.returncode != 0:
            print(f"backend {backend} failed: {proc.stderr}", file=sys.stderr)
            return
        results[backend] = float(proc.stdout)
    line = f"{'run_single (8192 samples)':<26} {results['py'] * 1e6:>10.1f}us"
    if "c" in results:
        line += f" {results['c'] * 1e6:>10.1f}us {results['py'] / results['c']:>8.2f}x"
    print(line)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=7, help="timing repeats (best kept)")
    parser.add_argument("--number", type=int, default=200, help="calls per repeat")
    parser.add_argument(
        "--skip-end-to-end", action="store_true", help="only benchmark the raw kernels"
    )
    args = parser.parse_args(argv)

    if _fast is None:
        print("note: compiled extension not importable; pure-numpy timings only\n")
    bench_kernels(args.number, args.repeat)
    if not args.skip_end_to_end:
        bench_end_to_end(args.repeat)
    return 0


if __name__ == "__main__":
    sys.exit(main())
