from __future__ import annotations

from pathlib import Path

import numpy as np

from smpswap.formats import parse_instance, parse_subgraph

DATA = Path(__file__).parent / "data"


def e(i, j):
    """1-based edge label to the 0-based pair used by the library."""
    return (i - 1, j - 1)


def edges(*pairs):
    return frozenset(e(i, j) for i, j in pairs)


def load_instance(name):
    return parse_instance((DATA / name).read_text())


def load_subgraph(name):
    return parse_subgraph((DATA / name).read_text())


def random_submodular(rng, m):
    """Sum of concave-of-cardinality terms over random subsets, plus modular noise.

    Returns ``(f, ground)`` with integer values.
    """
    terms = []
    for _ in range(int(rng.integers(1, 4))):
        members = frozenset(int(x) for x in np.flatnonzero(rng.random(m) < 0.6))
        steps = np.sort(rng.integers(0, 6, size=m + 1))[::-1]
        concave = np.concatenate([[0], np.cumsum(steps)])
        terms.append((members, concave))
    weights = rng.integers(-8, 9, size=m)

    def f(subset):
        subset = frozenset(subset)
        return int(sum(g[len(subset & members)] for members, g in terms) + sum(weights[x] for x in subset))

    return f, list(range(m))
