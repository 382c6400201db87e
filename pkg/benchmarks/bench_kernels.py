"""Time the compiled and pure-Python kernels on the same inputs.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""
from __future__ import annotations

import argparse
import random
import time

from elbowcover import kernels
from elbowcover.graph import complete_graph, cycle_graph, mycielski_iterate
from elbowcover.orientations import _pair_spec


def _timeit(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def cases():
    for name, g in (("K5", complete_graph(5)), ("C8", cycle_graph(8)), ("grotzsch", mycielski_iterate(4))):
        pe, pf, fe, ff = _pair_spec(g)
        m = min(g.m, 11)
        if len(pe) > 64:
            continue
        yield f"orientation_masks {name} ({2 ** (m - 1)} codes)", \
            lambda mod, a=(pe, pf, fe, ff, kernels.ELBOW, 0, 1 << (m - 1)): mod.orientation_masks(*a)

    pe, pf, fe, ff = _pair_spec(complete_graph(5))
    masks = kernels.orientation_masks(pe, pf, fe, ff, kernels.ELBOW, 0, 1 << 9)
    yield "min_cover K5 elbow", lambda mod: mod.min_cover(masks, (1 << len(pe)) - 1, 4)

    rng = random.Random(1)
    fam = [rng.sample(range(40), 40) for _ in range(5)]
    yield "family_cost C=40 k=5", lambda mod: mod.family_cost(fam, False)

    start = [list(range(12))] + [rng.sample(range(12), 12) for _ in range(3)]
    yield "local_search C=12 k=4 (20k steps)", lambda mod: mod.local_search(start, False, 5, 20_000, 256)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    backends = kernels.available_backends()
    print(f"backends: {', '.join(backends)} (active: {kernels.BACKEND})")
    header = f"{'kernel':45s}" + "".join(f"{b:>12s}" for b in backends) + f"{'speedup':>10s}"
    print(header)
    for label, fn in cases():
        times = {b: _timeit(lambda m=mod: fn(m), args.repeat) for b, mod in backends.items()}
        row = f"{label:45s}" + "".join(f"{t * 1000:10.2f}ms" for t in times.values())
        if "cython" in times:
            row += f"{times['python'] / times['cython']:9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
