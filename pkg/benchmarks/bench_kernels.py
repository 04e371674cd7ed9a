"""Compare the compiled and pure-Python kernels on clone closure and
subalgebra closure.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import time

from twistlab import kernels
from twistlab.algebra import subalgebra_masks
from twistlab.definability import binary_clone
from twistlab.factors import factor
from twistlab.matrices import named_matrix
from twistlab.twist import TwistSpec, twist_build

CASES = [
    ("clone CN3 full signature", lambda: binary_clone(named_matrix("CN3"), ["neg", "and", "or", "imp", "top"])),
    ("clone OL3 full signature", lambda: binary_clone(named_matrix("OL3"), ["neg", "and", "or", "imp"])),
    ("clone CNg4 to depth 3", lambda: binary_clone(named_matrix("CNg4"), list(named_matrix("CNg4").algebra.signature),
                                                  max_depth=3)),
    ("clone DFg4 to depth 4", lambda: binary_clone(named_matrix("DFg4"), list(named_matrix("DFg4").algebra.signature),
                                                  max_depth=4)),
    ("subalgebras DFf-twist(M4,K4)",
     lambda: subalgebra_masks(twist_build(TwistSpec("DFf", factor("M4"), factor("K4"))).algebra)),
]


def timed(fn, repeat: int) -> tuple[float, object]:
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def fingerprint(out) -> tuple:
    if hasattr(out, "level_sizes"):
        return tuple(out.level_sizes())
    return (len(out),)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    names = kernels.available()
    if "cython" not in names:
        print("compiled extension not built; only the pure-Python backend is available")
    print(f"{'case':34s} " + " ".join(f"{n:>10s}" for n in names) + ("   speedup" if len(names) > 1 else ""))
    original = kernels.BACKEND
    try:
        for label, fn in CASES:
            times, prints = [], []
            for name in names:
                kernels.set_backend(name)
                t, out = timed(fn, args.repeat)
                times.append(t)
                prints.append(fingerprint(out))
            assert all(p == prints[0] for p in prints), f"{label}: backends disagree {prints}"
            row = f"{label:34s} " + " ".join(f"{t:9.3f}s" for t in times)
            if len(times) > 1:
                row += f"   {times[1] / times[0]:6.1f}x"
            print(row)
    finally:
        kernels.set_backend(original)


if __name__ == "__main__":
    main()
