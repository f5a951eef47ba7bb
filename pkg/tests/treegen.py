"""Deterministic random tree generator for cross-checking the kernels."""

from __future__ import annotations

import random

from tsmin.tree import AstTree

# Small pools on purpose: collisions are what exercise the measures.
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


def random_nested(rnd: random.Random, budget: int, pool=LABEL_POOL):
    """Nested (kind, text, children) tuple with exactly `budget` nodes."""
    kind, text = rnd.choice(pool)
    budget -= 1
    kids = []
    while budget > 0:
        take = rnd.randint(1, budget)
        kids.append(random_nested(rnd, take, pool))
        budget -= take
    return (kind, text, kids)


def random_tree(rnd: random.Random, max_nodes: int, pool=LABEL_POOL) -> AstTree:
    size = rnd.randint(1, max_nodes)
    return AstTree.from_nested(random_nested(rnd, size, pool))
