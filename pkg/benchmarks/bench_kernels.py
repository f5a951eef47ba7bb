"""Benchmark the compiled similarity kernels against the pure-Python ones.

Scores every pair of a batch of random trees with each kernel under both
backends, checks that the two backends agree, and reports the speedup.

    python3 benchmarks/bench_kernels.py --trees 60 --max-nodes 120
"""

from __future__ import annotations

import argparse
import random
import time
from dataclasses import dataclass

from tsmin.similarity import _pykernels
from tsmin.similarity.flatten import flatten
from tsmin.tree import AstTree

try:
    from tsmin import _simcore
except ImportError:
    _simcore = None

LABEL_POOL = [
    ("Block", None),
    ("ExpressionStatement", None),
    ("IfStatement", None),
    ("SimpleName", "a"),
    ("SimpleName", "b"),
    ("MethodInvocation", "f"),
    ("MethodInvocation", "g"),
    ("NumberLiteral", "1"),
    ("StringLiteral", "s"),
]


def random_nested(rnd: random.Random, budget: int):
    kind, text = rnd.choice(LABEL_POOL)
    budget -= 1
    kids = []
    while budget > 0:
        take = rnd.randint(1, budget)
        kids.append(random_nested(rnd, take))
        budget -= take
    return (kind, text, kids)


def make_flats(count: int, max_nodes: int, seed: int):
    """Random bodies under a shared root, like real per-method ASTs."""
    rnd = random.Random(seed)
    flats = []
    for _ in range(count):
        body = random_nested(rnd, rnd.randint(1, max_nodes - 1))
        flats.append(flatten(AstTree.from_nested(("MethodDeclaration", None, [body]))))
    return flats


def kernel_calls(backend, flats):
    """One closure per kernel; each scores every tree pair."""
    pairs = [
        (flats[i], flats[j])
        for i in range(len(flats))
        for j in range(i + 1, len(flats))
    ]

    def topdown():
        return [backend.top_down_size(a, b) for a, b in pairs]

    def bottomup():
        return [backend.bottom_up_best(a, b)[0] for a, b in pairs]

    def ted():
        return [backend.ted_distance(a, b) for a, b in pairs]

    return {"topdown": topdown, "bottomup": bottomup, "ted": ted}, len(pairs)


@dataclass
class Timing:
    seconds: float
    results: list


def best_of(fn, repeat: int) -> Timing:
    best = None
    results = None
    for _ in range(repeat):
        started = time.perf_counter()
        results = fn()
        elapsed = time.perf_counter() - started
        best = elapsed if best is None else min(best, elapsed)
    return Timing(best, results)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--trees", type=int, default=60)
    parser.add_argument("--max-nodes", type=int, default=120)
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    flats = make_flats(args.trees, args.max_nodes, args.seed)
    nodes = sum(f.n for f in flats)
    py_calls, pairs = kernel_calls(_pykernels, flats)
    print(
        f"{args.trees} trees ({nodes} nodes total), {pairs} pairs, "
        f"best of {args.repeat} runs"
    )

    if _simcore is None:
        print("compiled backend not built; timing pure Python only")
        for name, fn in py_calls.items():
            timing = best_of(fn, args.repeat)
            print(f"{name:>8}: python {timing.seconds:10.4f}s")
        return 0

    c_calls, _ = kernel_calls(_simcore, flats)
    print(f"{'kernel':>8}  {'compiled':>11}  {'python':>11}  {'speedup':>8}")
    for name in py_calls:
        compiled = best_of(c_calls[name], args.repeat)
        python = best_of(py_calls[name], args.repeat)
        if compiled.results != python.results:
            raise SystemExit(f"{name}: backends disagree")
        print(
            f"{name:>8}  {compiled.seconds:10.4f}s  {python.seconds:10.4f}s  "
            f"{python.seconds / compiled.seconds:7.1f}x"
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
