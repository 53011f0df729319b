"""Benchmark the compiled Monte Carlo kernel against the NumPy fallback.

Both backends implement the identical counter-based sampling scheme, so
this compares raw throughput only.  Run as:

    python3 benchmarks/bench_mc.py [--samples N]
"""

from __future__ import annotations

import argparse
import math
import time

from partarget import _mcsim_py
from partarget._backend import BACKEND

try:
    from partarget import _mcsim
except ImportError:
    _mcsim = None


def _time(fn, *args) -> tuple[float, tuple[float, float]]:
    start = time.perf_counter()
    out = fn(*args)
    return time.perf_counter() - start, out


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--samples", type=int, default=5_000_000)
    args = parser.parse_args()
    n = args.samples
    seed = 12345
    thr = 1.6448536269514722  # upper 5% cutoff

    print(f"active backend: {BACKEND}; samples per call: {n:,}")
    rows = []
    for name, mod in (("numpy", _mcsim_py), ("compiled", _mcsim)):
        if mod is None:
            print("compiled kernel not built; skipping")
            continue
        t_lin, lin = _time(mod.linear_sums, seed, n, 1.0, 3.0, math.sqrt(91.0), thr)
        t_pro, pro = _time(mod.probit_sums, seed, n, -1.2815515655446004, 0.3,
                           math.sqrt(0.91), thr)
        rows.append((name, t_lin, t_pro, lin, pro))
        print(f"{name:>9}: linear {n / t_lin / 1e6:7.1f} Msamples/s ({t_lin:6.3f} s)   "
              f"probit {n / t_pro / 1e6:7.1f} Msamples/s ({t_pro:6.3f} s)")

    if len(rows) == 2:
        (_, t_lin0, t_pro0, lin0, pro0), (_, t_lin1, t_pro1, lin1, pro1) = rows
        print(f"speedup (compiled over numpy): linear {t_lin0 / t_lin1:.2f}x, "
              f"probit {t_pro0 / t_pro1:.2f}x")
        rel = abs(lin0[0] - lin1[0]) / max(1.0, abs(lin0[0]))
        print(f"cross-backend agreement: linear sum rel diff {rel:.2e}, "
              f"probit sums {'identical' if pro0 == pro1 else 'DIFFER'}")


if __name__ == "__main__":
    main()
