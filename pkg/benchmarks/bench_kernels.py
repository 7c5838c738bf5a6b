"""Compare the compiled and numpy band-inertia kernels on guide pencils.

    python benchmarks/bench_kernels.py [--modes 9] [--nx 2000] [--repeat 5]
"""

import argparse
import math
import time

from twistguide import _backend, cross_section as cs, eigen, solver, twist as tw


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--modes", type=int, nargs="+", default=[1, 4, 9])
    ap.add_argument("--nx", type=int, default=2000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    kernels = {"python": _backend.band_inertia_python}
    if _backend.band_inertia_compiled is not None:
        kernels["cython"] = _backend.band_inertia_compiled
    square = cs.Rectangle(math.pi, math.pi)
    print(f"{'modes':>5} {'n':>7} {'bw':>3} " + " ".join(f"{k + ' [ms]':>14}" for k in kernels) + "  speedup")
    for N in args.modes:
        pencil, _ = solver.build_pencil(square, 1.5, tw.Tanh(0.5), 20.0, args.nx, N)
        counts, times = set(), {}
        for name, kern in kernels.items():
            t, c = best_of(lambda: eigen.inertia(pencil, 4.2, kern), args.repeat)
            times[name] = t
            counts.add(c)
        assert len(counts) == 1, "kernels disagree"
        speed = times["python"] / times["cython"] if "cython" in times else float("nan")
        print(f"{N:>5} {pencil.n:>7} {pencil.bandwidth:>3} "
              + " ".join(f"{1e3 * times[k]:>14.2f}" for k in kernels) + f"  {speed:7.1f}x")

    pencil, _ = solver.build_pencil(square, 1.5, tw.Tanh(0.5), 20.0, args.nx, 9)
    for name, kern in kernels.items():
        t, res = best_of(lambda: eigen.eigs_below(pencil, kernel=kern), 1)
        print(f"eigs_below, 9 modes, {name}: {t:.2f}s, {res.diagnostics['factorizations']} factorizations, "
              f"count {res.count}")


if __name__ == "__main__":
    main()
