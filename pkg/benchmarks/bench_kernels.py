"""Benchmark the exhaustive O(n^5) axiom scans: compiled extension vs the
NumPy fallback.

Both backends share one contract (flattened int32 tables in, first witness
or None out), so this script times the same inputs through each and reports
the speedup.  Run from the repository root:

    python3 benchmarks/bench_kernels.py            # carriers 8, 16, 32
    python3 benchmarks/bench_kernels.py --big      # adds carrier 64
"""

import argparse
import statistics
import time

import numpy as np

from ternfield import odd_residue_field
from ternfield import _axioms_py

try:
    from ternfield import _axioms
except ImportError:
    _axioms = None


def _inputs(carrier):
    """nu and the derived ternary product for the odd residues mod
    2 * carrier, flattened the way the checkers feed the backends."""
    field = odd_residue_field(2 * carrier, check="light")
    nu = field.carrier.nu
    tmu = field.carrier.derived_ternary_mu()
    return (np.ascontiguousarray(nu, dtype=np.int32).reshape(-1),
            np.ascontiguousarray(tmu, dtype=np.int32).reshape(-1))


def _time(fn, *args, repeats=3):
    samples = []
    for _ in range(repeats):
        start = time.perf_counter()
        result = fn(*args)
        samples.append(time.perf_counter() - start)
        assert result is None, "benchmark tables must satisfy the axioms"
    return statistics.median(samples)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--big", action="store_true",
                        help="include the 64-element carrier")
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    sizes = [8, 16, 32] + ([64] if args.big else [])
    backends = [("numpy", _axioms_py)]
    if _axioms is not None:
        backends.insert(0, ("compiled", _axioms))
    else:
        print("compiled extension not built; timing the fallback only\n")

    header = f"{'scan':<10} {'n':>4} " + "".join(
        f"{name + ' (s)':>14}" for name, _ in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))

    for n in sizes:
        nu, tmu = _inputs(n)
        for scan, arg_lists in (("assoc3", (nu, n)),
                                ("distrib3", (nu, tmu, n))):
            row = f"{scan:<10} {n:>4} "
            times = []
            for name, mod in backends:
                t = _time(getattr(mod, scan), *arg_lists,
                          repeats=args.repeats)
                times.append(t)
                row += f"{t:>14.4f}"
            if len(times) == 2 and times[0] > 0:
                row += f"{times[1] / times[0]:>9.1f}x"
            print(row)


if __name__ == "__main__":
    main()
