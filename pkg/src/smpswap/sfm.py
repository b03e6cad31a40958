"""Submodular function minimisation over a small finite ground set.

Two routes: exhaustive enumeration for ``m <= 20`` and the Fujishige-Wolfe
minimum-norm-point method on the base polytope.  Set functions are
integer valued here, so the minimum-norm route finishes with a combinatorial
toggle check that makes its answer exact in practice.
"""

from __future__ import annotations

import itertools
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

MAX_BRUTE = 20


class GroundTooLarge(ValueError):
    pass


class NonConvergence(RuntimeError):
    pass


class SetFunction:
    """Wrap ``f(frozenset) -> int`` with memoisation and a call counter."""

    def __init__(self, fn: Callable[[frozenset], int]):
        self.fn = fn
        self.calls = 0
        self._memo: dict[frozenset, int] = {}

    def __call__(self, subset: Iterable[Hashable]) -> int:
        key = frozenset(subset)
        if key not in self._memo:
            self.calls += 1
            self._memo[key] = self.fn(key)
        return self._memo[key]


def _as_oracle(f) -> SetFunction:
    return f if isinstance(f, SetFunction) else SetFunction(f)


def _tie_key(subset: frozenset, index: dict) -> tuple:
    return (len(subset), sorted(index[e] for e in subset))


def minimize_brute(f, ground: Sequence[Hashable]) -> tuple[int, frozenset]:
    """Exact minimum over all ``2^m`` subsets.

    Subsets are visited by cardinality, then lexicographically in ground
    order; the first minimiser met is returned.
    """
    m = len(ground)
    if m > MAX_BRUTE:
        raise GroundTooLarge(f"ground set of size {m} exceeds {MAX_BRUTE}")
    f = _as_oracle(f)
    best_val, best_set = None, frozenset()
    for r in range(m + 1):
        for combo in itertools.combinations(ground, r):
            val = f(combo)
            if best_val is None or val < best_val:
                best_val, best_set = val, frozenset(combo)
    return best_val, best_set


def greedy_base_vertex(f, ground: Sequence[Hashable], order: Sequence[int]) -> np.ndarray:
    """Edmonds' greedy vertex of the base polytope for the given order.

    ``order`` is a permutation of ``range(m)``; coordinate ``order[t]`` gets
    the marginal value of adding that element after ``order[:t]``.  The
    coordinates telescope to ``f(ground) - f(empty)``.
    """
    f = _as_oracle(f)
    x = np.zeros(len(ground), dtype=np.int64)
    prefix: list = []
    prev = f(prefix)
    for t in order:
        prefix.append(ground[t])
        cur = f(prefix)
        x[t] = cur - prev
        prev = cur
    return x


def _affine_minimizer(points: np.ndarray) -> np.ndarray:
    """Barycentric weights of the min-norm point of the affine hull of rows."""
    k = points.shape[0]
    gram = points @ points.T
    kkt = np.zeros((k + 1, k + 1))
    kkt[0, 1:] = 1.0
    kkt[1:, 0] = 1.0
    kkt[1:, 1:] = gram
    rhs = np.zeros(k + 1)
    rhs[0] = 1.0
    try:
        if np.linalg.cond(kkt) > 1e12:
            raise np.linalg.LinAlgError
        sol = np.linalg.solve(kkt, rhs)
    except np.linalg.LinAlgError:
        sol = np.linalg.lstsq(kkt, rhs, rcond=None)[0]
    w = sol[1:]
    return w / w.sum()


def min_norm_point(f, ground: Sequence[Hashable], tolerance: float = 1e-9, max_major: int | None = None):
    """Wolfe's algorithm on the base polytope of the normalised ``f``.

    Returns ``(x, majors)`` with ``x`` the (approximate) minimum-norm point.
    """
    f = _as_oracle(f)
    m = len(ground)
    if max_major is None:
        max_major = max(10 * m * m, 10)

    def vertex(weights):
        order = np.argsort(weights, kind="stable")
        return greedy_base_vertex(f, ground, order).astype(float)

    corral = [vertex(np.zeros(m))]
    lam = np.array([1.0])
    x = corral[0].copy()

    for major in range(1, max_major + 1):
        q = vertex(x)
        xx = float(x @ x)
        scale = max(float(q @ q), max(float(p @ p) for p in corral), 1.0)
        if xx - float(x @ q) <= tolerance * scale:
            return x, major
        if any(np.array_equal(q, p) for p in corral):
            return x, major
        corral.append(q)
        lam = np.append(lam, 0.0)

        while True:
            pts = np.array(corral)
            w = _affine_minimizer(pts)
            if np.all(w > 1e-12):
                lam = w
                x = w @ pts
                break
            # Step from x towards y until the first weight hits zero.
            mask = (w <= 1e-12) & (lam - w > 0)
            theta = float(np.min(lam[mask] / (lam - w)[mask])) if mask.any() else 0.0
            lam = theta * w + (1 - theta) * lam
            keep = lam > 1e-12
            if keep.all():
                keep[int(np.argmin(lam))] = False
            corral = [p for p, k in zip(corral, keep) if k]
            lam = lam[keep]
            lam = lam / lam.sum()
            x = lam @ np.array(corral)
    raise NonConvergence(f"no convergence after {max_major} major cycles")


def minimize_mnp(f, ground: Sequence[Hashable], tolerance: float = 1e-9, max_major: int | None = None):
    """Minimise a submodular ``f`` via its minimum-norm base.

    The sets ``{x < -tol}`` and ``{x <= tol}`` are candidate minimisers; the
    better one is then improved by single-element toggles until none helps.
    Ties go to the smaller set, then the lexicographically first in ground
    order.  Returns ``(value, set)``.
    """
    f = _as_oracle(f)
    ground = list(ground)
    if not ground:
        return f(()), frozenset()
    index = {e: k for k, e in enumerate(ground)}
    x, _ = min_norm_point(f, ground, tolerance, max_major)

    candidates = [
        frozenset(e for e, v in zip(ground, x) if v < -tolerance),
        frozenset(e for e, v in zip(ground, x) if v <= tolerance),
    ]
    best = min(candidates, key=lambda s: (f(s), _tie_key(s, index)))
    best_val = f(best)

    improved = True
    while improved:
        improved = False
        for e in ground:
            cand = best ^ {e}
            val = f(cand)
            if val < best_val or (val == best_val and _tie_key(cand, index) < _tie_key(best, index)):
                best, best_val, improved = cand, val, True
    return best_val, best


def minimize(f, ground: Sequence[Hashable], method: str = "mnp") -> tuple[int, frozenset]:
    """Dispatch to ``mnp`` or ``brute``; ``mnp`` falls back to brute force on failure."""
    if method == "brute":
        return minimize_brute(f, ground)
    if method != "mnp":
        raise ValueError(f"unknown method {method!r}")
    try:
        return minimize_mnp(f, ground)
    except NonConvergence:
        if len(ground) <= MAX_BRUTE:
            return minimize_brute(f, ground)
        raise
