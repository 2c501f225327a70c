"""Compare the compiled and pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Prints one line per kernel with the best-of-``repeat`` wall time for each
backend and the speed-up.  The compiled backend must be built
(``pip install -e . --no-build-isolation``).
"""

import argparse
import random
import sys
import timeit

import numpy as np

from gammatype import _pykernels

try:
    from gammatype import _ckernels
except ImportError:
    _ckernels = None


def _cases(n=200, seed=1):
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        rho = rng.uniform(0.3, 2.0)
        mu = rng.uniform(0.2, 4.0)
        gam = rng.uniform(0.2, 3.0)
        out.append((rho, mu, gam, rng.uniform(-40.0, 20.0), rng.uniform(50.0, 500.0)))
    return out


def _workloads(mod):
    cases = _cases()
    t = np.geomspace(1e-4, 50.0, 20000)
    A, a, B, b = [1.0, 2.0], [0.7, 1.5], [1.0, 3.0], [1.2, 2.0]

    def series():
        for rho, mu, gam, z, _ in cases:
            mod.ml_series(rho, mu, gam, z, 5000)

    def asym():
        for rho, mu, gam, _, x in cases:
            mod.ml_asym_algebraic(rho, mu, gam, x, 400, False)

    def wright():
        for rho, mu, _, z, _ in cases:
            mod.wright_series(rho - 0.2, mu, z, 20000)

    def kernel():
        mod.malmsten_kernel(A, a, B, b, t)

    return {"ml_series": series, "ml_asym_algebraic": asym, "wright_series": wright,
            "malmsten_kernel": kernel}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if _ckernels is None:
        print("compiled kernels are not built; nothing to compare", file=sys.stderr)
        return 1
    py, cy = _workloads(_pykernels), _workloads(_ckernels)
    print(f"{'kernel':<20}{'python [ms]':>14}{'cython [ms]':>14}{'speed-up':>10}")
    for name in py:
        tp = min(timeit.repeat(py[name], number=1, repeat=args.repeat)) * 1e3
        tc = min(timeit.repeat(cy[name], number=1, repeat=args.repeat)) * 1e3
        print(f"{name:<20}{tp:>14.2f}{tc:>14.2f}{tp / tc:>10.1f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
