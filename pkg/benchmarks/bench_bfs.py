"""Compare the compiled and pure-Python BFS kernels on orbit-window workloads.

    python benchmarks/bench_bfs.py [--repeat 3]
"""

import argparse
import time

from e2orbits import _bfs
from e2orbits.explorer import SearchParams, _form_code, _generators
from e2orbits.linalg2 import UniPair
from e2orbits.ring import gaussian_order, make_ring

WORKLOADS = [
    ("Z[2i] special (3+2i,3-2i)", gaussian_order(2), ((3, 1), (3, -1)), SearchParams(800, 16, 50_000, 12)),
    ("Z[i] (2+i,1) dense window", gaussian_order(1), ((2, 1), (1, 0)), SearchParams(200, 16, 200_000, 30)),
    ("half:3 (1,0)", make_ring("half", 3), ((1, 0), (0, 0)), SearchParams(400, 16, 200_000, 30)),
    ("sqrt:5 (1,0)", make_ring("sqrt", 5), ((1, 0), (0, 0)), SearchParams(600, 20, 200_000, 30)),
]


def run(backend, R, start, params):
    p = UniPair.of(R, *start)
    gens = _generators(R, params.gen_norm_cap)
    t0 = time.perf_counter()
    states, *_ = _bfs.bfs(_form_code(R), R.D, p.key, gens, params.state_norm_cap, params.max_states,
                          params.max_depth, backend=backend)
    return time.perf_counter() - t0, len(states)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = ["python"] + (["compiled"] if _bfs.BACKEND == "compiled" else [])
    print(f"{'workload':32} {'states':>8} " + " ".join(f"{b:>10}" for b in backends) + "  speedup")
    for name, R, start, params in WORKLOADS:
        best = {}
        for b in backends:
            times = []
            for _ in range(args.repeat):
                dt, n = run(b, R, start, params)
                times.append(dt)
            best[b] = min(times)
        speed = f"{best['python'] / best['compiled']:7.1f}x" if "compiled" in best else "    n/a"
        print(f"{name:32} {n:8d} " + " ".join(f"{best[b]:9.3f}s" for b in backends) + "  " + speed)


if __name__ == "__main__":
    main()
