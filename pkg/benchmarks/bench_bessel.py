"""Compare the numba and pure-numpy K_{it}(x) kernels.

The backend is fixed at import time by HYPERDELTA_DISABLE_NUMBA, so each one
runs in its own subprocess.  Compilation is excluded by a warm-up call.

    python benchmarks/bench_bessel.py [--repeat 7]
"""
from __future__ import annotations

import argparse
import json
import os
import statistics
import subprocess
import sys
import time


def _time(fn, repeat):
    fn()  # warm-up (and JIT compilation)
    samples = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples)


def worker(repeat: int) -> dict:
    import math

    import numpy as np

    import hyperdelta
    from hyperdelta import geometry as geo
    from hyperdelta import scattering as sc
    from hyperdelta import specfun as sf
    from hyperdelta import wavefunction as wf

    t_grid = np.linspace(0.0, 40.0, 640)
    xs = (0.05, 1.0, 20.0)
    params = hyperdelta.ModelParams(-1.0)
    energy, sol = sc.channel_energy(0.3, params), sc.solve(0.3, params)
    points = [geo.HyperPoint(R, th, 0) for R in (0.5, 2.0, 5.0) for th in (-0.08, 0.0, 0.08)]

    def grid():
        return [sf.bessel_k_imag_order(t_grid, x) for x in xs]

    def scalar():
        return [sf.bessel_recurrence_residual(t, 0.7) for t in np.linspace(0.1, 10, 100)]

    def kl():
        return [wf.kl_integral(p, energy, sol, params) for p in points]

    check = float(np.sum([np.sum(v) for v in grid()]))
    return {
        "backend": hyperdelta.backend(),
        "grid_640x3": _time(grid, repeat),
        "scalar_recurrence_x100": _time(scalar, repeat),
        "kl_integral_x9": _time(kl, repeat),
        "checksum": check if math.isfinite(check) else None,
    }


def run_backend(disable: bool, repeat: int) -> dict:
    env = dict(os.environ)
    env.pop("HYPERDELTA_DISABLE_NUMBA", None)
    if disable:
        env["HYPERDELTA_DISABLE_NUMBA"] = "1"
    cmd = [sys.executable, __file__, "--worker", "--repeat", str(repeat)]
    out = subprocess.run(cmd, env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=7)
    ap.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args(argv)
    if args.worker:
        print(json.dumps(worker(args.repeat)))
        return 0

    jit = run_backend(False, args.repeat)
    ref = run_backend(True, args.repeat)
    if jit["backend"] != "numba":
        print("numba unavailable: both runs used the numpy kernel")
    rel = abs(jit["checksum"] - ref["checksum"]) / abs(ref["checksum"])
    print(f"{'workload':<26}{'numba [ms]':>12}{'numpy [ms]':>12}{'speedup':>10}")
    for key in ("grid_640x3", "scalar_recurrence_x100", "kl_integral_x9"):
        a, b = jit[key] * 1e3, ref[key] * 1e3
        print(f"{key:<26}{a:>12.2f}{b:>12.2f}{b / a:>9.2f}x")
    print(f"checksum relative difference: {rel:.1e}")
    return 0 if rel < 1e-12 else 1


if __name__ == "__main__":
    sys.exit(main())
