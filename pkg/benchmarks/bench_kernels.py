"""Time the hot kernels with numba on and off.

Each configuration runs in a fresh interpreter because the switch is read
at import time.  Compilation is excluded by a warm-up call.

    python benchmarks/bench_kernels.py [--repeat 5]
"""
from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys

CHILD = r"""
import json, sys, time
import numpy as np
from linchrom._accel import NUMBA_ENABLED
from linchrom.exact import find_uncentred_path, path_sets, random_graph, treedepth, grid_graph
from linchrom.gridcore import GridGraph
from linchrom.witness.packing import census_array, object_cells, random_maximal_packing

repeat = int(sys.argv[1])
rng = np.random.default_rng(0)
g14 = random_graph(14, 0.3, rng)
td_graph = grid_graph(3, 5)
phi = [int(x) for x in rng.integers(0, 4, size=14)]
grid = GridGraph(200, 200)
cells = object_cells(grid)
pack = random_maximal_packing(grid, 10, np.random.default_rng(1), cells)

cases = {
    "path_reach (14 vertices)": lambda: path_sets(g14),
    "uncentred path (14 vertices)": lambda: find_uncentred_path(g14, phi),
    "treedepth (3x5 grid)": lambda: treedepth(td_graph),
    "greedy packing (k=200, r=10)": lambda: random_maximal_packing(grid, 10, np.random.default_rng(2), cells),
    "census (k=200, r=10)": lambda: census_array(pack, 10, grid),
}
out = {}
for name, fn in cases.items():
    fn()  # warm-up / compile
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    out[name] = best
print(json.dumps({"numba": NUMBA_ENABLED, "times": out}))
"""


def run(disable: bool, repeat: int) -> dict:
    env = dict(os.environ)
    env.pop("LINCHROM_DISABLE_NUMBA", None)
    if disable:
        env["LINCHROM_DISABLE_NUMBA"] = "1"
    res = subprocess.run([sys.executable, "-c", CHILD, str(repeat)], env=env, capture_output=True, text=True, check=True)
    return json.loads(res.stdout.strip().splitlines()[-1])


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", help="also write the raw timings here")
    args = ap.parse_args()
    fast, slow = run(False, args.repeat), run(True, args.repeat)
    if not fast["numba"]:
        print("numba is not available; both columns use the fallback")
    print(f"{'kernel':32s} {'numba ms':>10s} {'fallback ms':>12s} {'speed-up':>9s}")
    for name, t_fast in fast["times"].items():
        t_slow = slow["times"][name]
        print(f"{name:32s} {1e3 * t_fast:10.2f} {1e3 * t_slow:12.2f} {t_slow / t_fast:8.1f}x")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump({"numba": fast, "fallback": slow}, fh, indent=2)


if __name__ == "__main__":
    main()
