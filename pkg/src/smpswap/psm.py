"""Swap distance to a perfect stable matching, solved exactly for small instances.

Two independent routes: breadth-first search over preference profiles, and
minimum repair cost over every perfect matching of the graph.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, field

from .instance import Edge, Instance, Side, Swap, apply_sequence, apply_swap, enumerate_swaps
from .repair import Infeasible, min_repair
from .stability import deferred_acceptance

DEFAULT_BUDGET_STATES = 5_000_000
DEFAULT_BUDGET_MATCHINGS = 100_000


class CapacitatedUnsupported(ValueError):
    pass


class StateBudgetExceeded(RuntimeError):
    def __init__(self, message: str, stats: dict):
        super().__init__(message)
        self.stats = stats


class TooManyMatchings(RuntimeError):
    def __init__(self, cap: int):
        super().__init__(f"more than {cap} matchings")
        self.cap = cap


@dataclass
class PsmResult:
    decision: bool
    k: int
    cost: int | None = None
    sequence: list[Swap] = field(default_factory=list)
    matching: frozenset[Edge] | None = None
    stats: dict = field(default_factory=dict)


def _require_uncapacitated(instance: Instance):
    if not instance.uncapacitated:
        raise CapacitatedUnsupported("perfect stable matching search needs all capacities equal to 1")


def _is_perfect(instance: Instance, m) -> bool:
    return instance.n_a == instance.n_b == len(m)


def has_perfect_stable(instance: Instance) -> bool:
    """One run of deferred acceptance decides it: all stable matchings cover the same vertices."""
    _require_uncapacitated(instance)
    return _is_perfect(instance, deferred_acceptance(instance, Side.A))


def default_budget_states() -> int:
    return int(os.environ.get("SMPSWAP_BUDGET_STATES", DEFAULT_BUDGET_STATES))


def psm_bfs(instance: Instance, k: int, budget_states: int | None = None) -> PsmResult:
    """Level-order search over profiles reachable by at most ``k`` swaps."""
    _require_uncapacitated(instance)
    if budget_states is None:
        budget_states = default_budget_states()
    swaps = enumerate_swaps(instance)
    parent: dict[tuple, tuple[tuple, Swap] | None] = {instance.key: None}
    frontier = deque([instance])
    stats = {"states": 1, "expanded": 0}

    def witness(inst: Instance, depth: int) -> PsmResult:
        seq = []
        key = inst.key
        while parent[key] is not None:
            key, sw = parent[key]
            seq.append(sw)
        seq.reverse()
        m = deferred_acceptance(inst, Side.A)
        return PsmResult(True, k, depth, seq, m, stats)

    if has_perfect_stable(instance):
        return witness(instance, 0)

    for depth in range(1, k + 1):
        nxt = deque()
        while frontier:
            inst = frontier.popleft()
            stats["expanded"] += 1
            for sw in swaps:
                child = apply_swap(inst, sw)
                key = child.key
                if key in parent:
                    continue
                parent[key] = (inst.key, sw)
                stats["states"] += 1
                if has_perfect_stable(child):
                    return witness(child, depth)
                if stats["states"] > budget_states:
                    raise StateBudgetExceeded(f"state budget {budget_states} exceeded at depth {depth}", stats)
                nxt.append(child)
        frontier = nxt
    return PsmResult(False, k, None, [], None, stats)


def maximum_matching_size(instance: Instance) -> int:
    """Augmenting-path maximum matching (uncapacitated)."""
    match_b = [-1] * instance.n_b

    def augment(i, seen):
        for j in instance.prefs_a[i]:
            if j in seen:
                continue
            seen.add(j)
            if match_b[j] < 0 or augment(match_b[j], seen):
                match_b[j] = i
                return True
        return False

    return sum(augment(i, set()) for i in range(instance.n_a))


def enumerate_matchings(instance: Instance, size: int, cap: int = DEFAULT_BUDGET_MATCHINGS) -> list[frozenset[Edge]]:
    """All matchings with exactly ``size`` edges, sorted.

    Backtracks over A vertices in index order; an A vertex may stay single
    only while enough A vertices remain to reach ``size``.
    """
    _require_uncapacitated(instance)
    out: list[frozenset[Edge]] = []
    used_b: set[int] = set()
    chosen: list[Edge] = []

    def rec(i: int):
        if len(chosen) == size:
            out.append(frozenset(chosen))
            if len(out) > cap:
                raise TooManyMatchings(cap)
            return
        if instance.n_a - i < size - len(chosen):
            return
        for j in instance.prefs_a[i]:
            if j not in used_b:
                used_b.add(j)
                chosen.append((i, j))
                rec(i + 1)
                chosen.pop()
                used_b.discard(j)
        rec(i + 1)

    rec(0)
    return sorted(out, key=sorted)


def enumerate_perfect_matchings(instance: Instance, cap: int = DEFAULT_BUDGET_MATCHINGS) -> list[frozenset[Edge]]:
    """All perfect matchings, by backtracking with forced-choice propagation.

    The branching vertex (on either side) is always the free one with the
    fewest available partners, so degree-one vertices are settled first and
    dead ends are detected as soon as some vertex runs out of partners.
    """
    _require_uncapacitated(instance)
    if instance.n_a != instance.n_b:
        return []
    out: list[frozenset[Edge]] = []
    free_a = set(range(instance.n_a))
    free_b = set(range(instance.n_b))
    chosen: list[Edge] = []

    def options(side, v):
        prefs = instance.prefs_a[v] if side is Side.A else instance.prefs_b[v]
        pool = free_b if side is Side.A else free_a
        return [u for u in prefs if u in pool]

    def rec():
        if not free_a:
            out.append(frozenset(chosen))
            if len(out) > cap:
                raise TooManyMatchings(cap)
            return
        best = None
        for side, pool in ((Side.A, free_a), (Side.B, free_b)):
            for v in sorted(pool):
                opts = options(side, v)
                if best is None or len(opts) < len(best[2]):
                    best = (side, v, opts)
                if not opts:
                    return
        side, v, opts = best
        for u in sorted(opts):
            i, j = (v, u) if side is Side.A else (u, v)
            free_a.discard(i)
            free_b.discard(j)
            chosen.append((i, j))
            rec()
            chosen.pop()
            free_a.add(i)
            free_b.add(j)

    rec()
    return sorted(out, key=sorted)


def psm_via_matchings(
    instance: Instance,
    k: int,
    cap: int = DEFAULT_BUDGET_MATCHINGS,
    target: str = "perfect",
) -> PsmResult:
    """Cheapest repair over all perfect (or all maximum) matchings.

    With ``target="maximum"`` the candidates are every maximum matching; that
    variant is a convenience and need not coincide with the perfect problem
    when the graph has no perfect matching.
    """
    _require_uncapacitated(instance)
    if target == "perfect":
        candidates = enumerate_perfect_matchings(instance, cap)
    elif target == "maximum":
        candidates = enumerate_matchings(instance, maximum_matching_size(instance), cap)
    else:
        raise ValueError(f"unknown target {target!r}")

    best = None
    for m in candidates:
        try:
            r = min_repair(instance, m)
        except Infeasible:
            continue
        if best is None or r.cost < best[0].cost:
            best = (r, m)
    stats = {"matchings": len(candidates)}
    if best is None:
        return PsmResult(False, k, None, [], None, stats)
    r, m = best
    if r.cost > k:
        return PsmResult(False, k, r.cost, [], None, stats)
    return PsmResult(True, k, r.cost, r.sequence, m, stats)


def check_witness(instance: Instance, result: PsmResult) -> bool:
    if not result.decision:
        return True
    return len(result.sequence) <= result.k and has_perfect_stable(apply_sequence(instance, result.sequence))
