"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_backends.py [--repeat 3] [--quick]

Each case runs on both backends, checks that the results agree and prints the
best wall time of ``--repeat`` runs.
"""

import argparse
import time

import numpy as np

from sigkit import IA, KAPPA, backend
from sigkit.exact import count_below
from sigkit.montecarlo import confusion_values, probability_values


def cases(quick):
    scale = 10 if quick else 1
    cs = np.linspace(-1, 1, 101)
    return [
        (f"exact kappa n=2 m={100 // scale}", lambda: count_below(KAPPA, 2, 100 // scale, cs)[0]),
        ("exact ia n=3 m=6", lambda: count_below(IA, 3, 6, cs)[0]),
        (f"mc confusion kappa n=2 m=1000 N={10**5 // scale}",
         lambda: confusion_values(KAPPA, 2, 1000, 10**5 // scale, seed=1)),
        (f"mc probability ia n=2 N={10**6 // scale}", lambda: probability_values(IA, 2, 10**6 // scale, seed=1)),
        (f"mc probability kappa n=4 N={10**5 // scale}", lambda: probability_values(KAPPA, 4, 10**5 // scale, seed=1)),
    ]


def best_time(fn, repeat):
    best, result = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--quick", action="store_true", help="tenfold smaller workloads")
    args = parser.parse_args()

    names = backend.available()
    print(f"{'case':<42}" + "".join(f"{n:>12}" for n in names) + f"{'speedup':>10}  agree")
    for label, fn in cases(args.quick):
        times, results = {}, {}
        for name in names:
            with backend.using(name):
                times[name], results[name] = best_time(fn, args.repeat)
        values = [np.asarray(results[n], dtype=float) for n in names]
        agree = all(np.allclose(values[0], v, rtol=0, atol=1e-12) for v in values[1:])
        speedup = times["python"] / times["compiled"] if "compiled" in times else float("nan")
        row = f"{label:<42}" + "".join(f"{times[n]:>11.4f}s" for n in names)
        print(row + f"{speedup:>9.1f}x  {'yes' if agree else 'NO'}")


if __name__ == "__main__":
    main()
