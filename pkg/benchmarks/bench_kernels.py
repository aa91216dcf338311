#!/usr/bin/env python3
"""Benchmark the numba and numpy kernel backends on channel-sweep workloads.

Runs both implementations of the hot bit kernels (Hamming(7,4) encode and
decode, CRC-16) on the same payloads and prints a timing table, plus an
end-to-end coded BER pass at 3 dB. ``UAVSIM_NO_NUMBA=1`` changes which
backend the package dispatches to, but this script always times both
(when numba is importable).

Usage: python benchmarks/bench_kernels.py [--bits N] [--repeats R]
"""

import argparse
import time

import numpy as np

from uavsim import kernels
from uavsim.semcom import ChannelSpec, transmit
from uavsim.semcom.coding import ModulatedFrame, demodulate, modulate


def timeit(fn, *args, repeats=5, warmup=1):
    for _ in range(warmup):
        fn(*args)
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--bits", type=int, default=1_000_000)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    bits = rng.integers(0, 2, args.bits).astype(np.uint8)
    coded_np = kernels._hamming74_encode_np(bits)

    cases = [
        ("hamming74 encode", kernels._hamming74_encode_np, (bits,)),
        ("hamming74 decode", kernels._hamming74_decode_np, (coded_np,)),
        ("crc16", kernels._crc16_np, (bits,)),
    ]
    numba_cases = {}
    if kernels.HAVE_NUMBA:
        numba_cases = {
            "hamming74 encode": (kernels._hamming74_encode_nb, (bits,)),
            "hamming74 decode": (
                kernels._hamming74_decode_nb,
                (coded_np, kernels._SYNDROME_TO_POS),
            ),
            "crc16": (kernels._crc16_nb, (bits,)),
        }
    else:
        print("numba not importable: timing the numpy backend only")

    print(f"payload: {args.bits:,} bits   active dispatch backend: {kernels.BACKEND}")
    print(f"{'kernel':<18} {'numpy':>12} {'numba':>12} {'speedup':>9}")
    for name, np_fn, np_args in cases:
        t_np = timeit(np_fn, *np_args, repeats=args.repeats)
        if name in numba_cases:
            nb_fn, nb_args = numba_cases[name]
            t_nb = timeit(nb_fn, *nb_args, repeats=args.repeats)
            print(f"{name:<18} {t_np*1e3:>10.2f}ms {t_nb*1e3:>10.2f}ms {t_np/t_nb:>8.1f}x")
        else:
            print(f"{name:<18} {t_np*1e3:>10.2f}ms {'-':>12} {'-':>9}")

    # end-to-end coded pass through a 3 dB channel with the active backend
    start = time.perf_counter()
    coded = kernels.hamming74_encode(bits)
    rx = transmit(ModulatedFrame(modulate(coded)), ChannelSpec("awgn", 3.0), 1)
    decoded = kernels.hamming74_decode(demodulate(rx.symbols))[: args.bits]
    elapsed = time.perf_counter() - start
    ber = float(np.mean(decoded != bits))
    print(
        f"\nend-to-end coded pass ({kernels.BACKEND} dispatch): "
        f"{elapsed*1e3:.1f}ms, post-correction BER {ber:.2e}"
    )


if __name__ == "__main__":
    main()
