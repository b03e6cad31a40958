"""Instance generators: the six-vertex worked example, the path family and random instances."""

from __future__ import annotations

import numpy as np

from .instance import Instance

FIG1_PREFS_A = ((1, 3, 2), (2, 1, 3), (1, 2))
FIG1_PREFS_B = ((1, 3, 2), (2, 1, 3), (2, 1))
FIG1_MATCHING = frozenset({(0, 1), (1, 0)})  # a1-b2, a2-b1


class InvalidParameter(ValueError):
    pass


def gen_fig1() -> Instance:
    """The 3+3 vertex example with eight edges (lists given 1-based above)."""
    return Instance(
        [[u - 1 for u in p] for p in FIG1_PREFS_A],
        [[u - 1 for u in p] for p in FIG1_PREFS_B],
    )


def path_vertex(v: int) -> tuple[str, int]:
    """Map path vertex ``v_k`` to its side and index: even ``k`` lie on side A."""
    return ("a", v // 2) if v % 2 == 0 else ("b", v // 2)


def gen_path(n: int) -> Instance:
    """Path ``v_0 .. v_{2n+1}`` whose unique stable matching leaves both ends single.

    For every ``i`` in ``1..n``, ``v_{2i}`` prefers ``v_{2i-1}`` to
    ``v_{2i+1}`` and ``v_{2i-1}`` prefers ``v_{2i}`` to ``v_{2i-2}``.
    """
    if n < 1:
        raise InvalidParameter("path family needs n >= 1")
    # v_{2i} = a_i ; v_{2i+1} = b_i
    prefs_a = [[0]] + [[i - 1, i] for i in range(1, n + 1)]
    prefs_b = [[i + 1, i] for i in range(n)] + [[n]]
    return Instance(prefs_a, prefs_b)


def path_perfect_matching(n: int) -> frozenset[tuple[int, int]]:
    """``{v_0 v_1, v_2 v_3, ...}`` as (a, b) pairs."""
    return frozenset((i, i) for i in range(n + 1))


def path_stable_matching(n: int) -> frozenset[tuple[int, int]]:
    """``{v_1 v_2, v_3 v_4, ...}`` as (a, b) pairs."""
    return frozenset((i + 1, i) for i in range(n))


def gen_random(n_a: int, n_b: int, edge_density: float, cap_max: int = 1, seed: int = 0) -> Instance:
    """Seeded random instance.

    Each of the ``n_a * n_b`` possible edges is kept with probability
    ``edge_density``; every list is a uniform shuffle of its neighbours and
    capacities are uniform on ``1..cap_max``.
    """
    if n_a < 0 or n_b < 0 or not 0.0 <= edge_density <= 1.0 or cap_max < 1:
        raise InvalidParameter("bad generator parameters")
    rng = np.random.default_rng(seed)
    keep = rng.random((n_a, n_b)) < edge_density
    prefs_a = [[int(j) for j in rng.permutation(np.flatnonzero(keep[i]))] for i in range(n_a)]
    prefs_b = [[int(i) for i in rng.permutation(np.flatnonzero(keep[:, j]))] for j in range(n_b)]
    cap_a = [int(c) for c in rng.integers(1, cap_max + 1, size=n_a)]
    cap_b = [int(c) for c in rng.integers(1, cap_max + 1, size=n_b)]
    return Instance(prefs_a, prefs_b, cap_a, cap_b)


def random_subgraph(instance: Instance, rng: np.random.Generator, density: float = 1.0) -> frozenset:
    """Random capacity-respecting subgraph: edges in shuffled order, kept greedily.

    With ``density=1`` the result is maximal.
    """
    deg_a = [0] * instance.n_a
    deg_b = [0] * instance.n_b
    edges = sorted(instance.edges)
    out = set()
    for k in rng.permutation(len(edges)):
        i, j = edges[k]
        if rng.random() < density and deg_a[i] < instance.cap_a[i] and deg_b[j] < instance.cap_b[j]:
            out.add((i, j))
            deg_a[i] += 1
            deg_b[j] += 1
    return frozenset(out)
