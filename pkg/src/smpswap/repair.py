"""Minimum number of preference swaps that make a given subgraph stable.

Every blocking edge must be unblocked on one side: its endpoint is moved
below all matched positions in that vertex's list.  Edges whose A endpoint
is at capacity may be fixed on the A side, and symmetrically for B.  For a
choice ``F`` of edges fixed on the A side, the cost of one list is a closed
form over a red/blue/black colouring of its positions, and the total cost is
submodular in ``F``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .instance import (
    Edge,
    Instance,
    Side,
    Swap,
    apply_swap,
    check_subgraph,
    degrees,
    enumerate_swaps,
    partners,
)
from .sfm import SetFunction, minimize, minimize_brute
from .stability import blocking_edges


class Infeasible(ValueError):
    pass


class InvalidAssignment(ValueError):
    pass


class Color(enum.IntEnum):
    BLACK = 0
    RED = 1
    BLUE = 2


RED, BLUE, BLACK = Color.RED, Color.BLUE, Color.BLACK
GroupColoring = tuple[Color, ...]


@dataclass(frozen=True)
class BlockingAnalysis:
    instance: Instance
    subgraph: frozenset[Edge]
    e_b: frozenset[Edge]
    e_b_a: frozenset[Edge]
    e_b_b: frozenset[Edge]
    j_free_b: frozenset[int]

    @property
    def feasible(self) -> bool:
        return self.e_b_a | self.e_b_b == self.e_b

    @property
    def forced_a(self) -> frozenset[Edge]:
        return self.e_b - self.e_b_b

    @property
    def forced_b(self) -> frozenset[Edge]:
        return self.e_b - self.e_b_a

    @property
    def free(self) -> frozenset[Edge]:
        return self.e_b_a & self.e_b_b

    @property
    def penalty(self) -> int:
        return (self.instance.n_a * self.instance.n_b) ** 2


def analyze(instance: Instance, s: Iterable[Edge]) -> BlockingAnalysis:
    s = check_subgraph(instance, s)
    e_b = blocking_edges(instance, s)
    deg_a = degrees(s, Side.A, instance.n_a)
    deg_b = degrees(s, Side.B, instance.n_b)
    return BlockingAnalysis(
        instance=instance,
        subgraph=s,
        e_b=e_b,
        e_b_a=frozenset(e for e in e_b if deg_a[e[0]] == instance.cap_a[e[0]]),
        e_b_b=frozenset(e for e in e_b if deg_b[e[1]] == instance.cap_b[e[1]]),
        j_free_b=frozenset(j for j in range(instance.n_b) if deg_b[j] < instance.cap_b[j]),
    )


# -- one preference list ------------------------------------------------------


def _blue_below(col: Sequence[Color]) -> list[int]:
    out, count = [0] * len(col), 0
    for p in range(len(col) - 1, -1, -1):
        out[p] = count
        count += col[p] is BLUE
    return out


def _red_above(col: Sequence[Color]) -> list[int]:
    out, count = [0] * len(col), 0
    for p, c in enumerate(col):
        out[p] = count
        count += c is RED
    return out


def group_cost(coloring: Sequence[Color]) -> int:
    """Fewest adjacent swaps leaving every red position below every blue one.

    Each red pays for the blues below it; each black pays the cheaper of
    letting the blues below pass it or passing the reds above it.
    """
    col = [Color(c) for c in coloring]
    below = _blue_below(col)
    above = _red_above(col)
    total = 0
    for p, c in enumerate(col):
        if c is RED:
            total += below[p]
        elif c is BLACK:
            total += min(below[p], above[p])
    return total


def build_group_sequence(coloring: Sequence[Color]) -> list[int]:
    """Optimal swap positions (``p`` swaps ``p`` and ``p+1``) for one list.

    Repeatedly applies the first applicable rule, scanning top to bottom:
    (1) a red directly above a blue swaps with it; (2) a black directly above
    a blue moves down if it has no more blues below than reds above;
    (3) a black directly below a red moves up if it has fewer reds above
    than blues below.
    """
    col = [Color(c) for c in coloring]
    out: list[int] = []
    while True:
        below, above = _blue_below(col), _red_above(col)
        p = _first_rule(col, below, above)
        if p is None:
            return out
        col[p], col[p + 1] = col[p + 1], col[p]
        out.append(p)


def _first_rule(col, below, above):
    d = len(col)
    for p in range(d - 1):
        if col[p] is RED and col[p + 1] is BLUE:
            return p
    for p in range(d - 1):
        if col[p] is BLACK and col[p + 1] is BLUE and below[p] <= above[p]:
            return p
    for p in range(1, d):
        if col[p] is BLACK and col[p - 1] is RED and above[p] < below[p]:
            return p - 1
    return None


def coloring_for(instance: Instance, s: frozenset[Edge], side: Side, v: int, fixed_here: Iterable[Edge]) -> GroupColoring:
    """Colour the list of vertex ``v``: reds are endpoints of ``fixed_here``."""
    rank = instance.rank(side)[v]
    col = [BLACK] * len(instance.prefs(side)[v])
    k = 0 if side is Side.A else 1
    for e in s:
        if e[k] == v:
            col[rank[e[1 - k]]] = BLUE
    for e in fixed_here:
        if e[k] == v:
            col[rank[e[1 - k]]] = RED
    return tuple(col)


# -- whole instance -------------------------------------------------------------


def _side_cost(analysis: BlockingAnalysis, side: Side, fixed: frozenset[Edge]) -> dict[int, int]:
    inst, s = analysis.instance, analysis.subgraph
    k = 0 if side is Side.A else 1
    touched = sorted({e[k] for e in fixed})
    return {v: group_cost(coloring_for(inst, s, side, v, fixed)) for v in touched}


def _h(analysis: BlockingAnalysis, F: frozenset[Edge]) -> int:
    return sum(_side_cost(analysis, Side.A, F).values()) + sum(
        _side_cost(analysis, Side.B, analysis.e_b - F).values()
    )


def assignment_cost(analysis: BlockingAnalysis, F: Iterable[Edge]) -> int:
    """Swaps needed to fix ``F`` on the A side and the other blocking edges on the B side."""
    F = frozenset(F)
    if not (analysis.forced_a <= F <= analysis.e_b_a):
        raise InvalidAssignment("assignment must contain forced_a and lie within e_b_a")
    return _h(analysis, F)


def penalized_cost(analysis: BlockingAnalysis, F: Iterable[Edge]) -> int:
    """Unconstrained form over subsets of ``e_b_a``.

    Each B vertex below capacity that would have to fix a blocking edge adds
    the penalty ``(n_a * n_b) ** 2`` instead of an infinite cost.
    """
    F = frozenset(F)
    if not F <= analysis.e_b_a:
        raise InvalidAssignment("assignment must lie within e_b_a")
    rest = analysis.e_b - F
    hit = {j for _, j in rest if j in analysis.j_free_b}
    return _h(analysis, F) + analysis.penalty * len(hit)


@dataclass
class RepairResult:
    cost: int
    fixed_a: frozenset[Edge]
    sequence: list[Swap]
    costs_a: dict[int, int] = field(default_factory=dict)
    costs_b: dict[int, int] = field(default_factory=dict)
    oracle_calls: int = 0


def contracted_cost(analysis: BlockingAnalysis) -> SetFunction:
    """``X -> h(forced_a | X)`` over subsets of the free edges."""
    forced = analysis.forced_a
    return SetFunction(lambda X: _h(analysis, forced | X))


def min_repair(instance: Instance, s: Iterable[Edge], method: str = "sfm") -> RepairResult:
    analysis = analyze(instance, s)
    if not analysis.feasible:
        bad = sorted(analysis.e_b - analysis.e_b_a - analysis.e_b_b)
        i, j = bad[0]
        raise Infeasible(f"S cannot be made stable: edge ({i + 1},{j + 1}) blocks with both endpoints below capacity")

    ground = sorted(analysis.free)
    f = contracted_cost(analysis)
    if method == "brute":
        cost, X = minimize_brute(f, ground)
    elif method == "sfm":
        cost, X = minimize(f, ground, "mnp")
    else:
        raise ValueError(f"unknown method {method!r}")

    F = analysis.forced_a | X
    seq: list[Swap] = []
    costs = {}
    for side, fixed in ((Side.A, F), (Side.B, analysis.e_b - F)):
        k = 0 if side is Side.A else 1
        per = {}
        for v in sorted({e[k] for e in fixed}):
            col = coloring_for(instance, analysis.subgraph, side, v, fixed)
            moves = build_group_sequence(col)
            seq.extend(Swap(side, v, p) for p in moves)
            per[v] = len(moves)
        costs[side] = per
    assert len(seq) == cost
    return RepairResult(cost, F, seq, costs[Side.A], costs[Side.B], f.calls)


def brute_force_sequence_repair(instance: Instance, s: Iterable[Edge], k_max: int) -> list[Swap] | None:
    """Shortest raw swap sequence of length ``<= k_max`` making ``s`` stable.

    Iterative deepening over all swaps, independent of the colouring
    argument.  A single swap unblocks at most one edge, so a branch is cut
    when fewer swaps remain than there are blocking edges.  Profiles already
    explored with at least as much remaining depth are skipped.
    """
    s = check_subgraph(instance, s)
    swaps = enumerate_swaps(instance)  # the set of valid swaps never changes

    for depth in range(k_max + 1):
        seen: dict[tuple, int] = {}
        path: list[Swap] = []

        def dfs(inst: Instance, left: int) -> bool:
            nb = len(blocking_edges(inst, s))
            if nb == 0:
                return True
            if nb > left:
                return False
            key = inst.key
            if seen.get(key, -1) >= left:
                return False
            seen[key] = left
            for sw in swaps:
                path.append(sw)
                if dfs(apply_swap(inst, sw), left - 1):
                    return True
                path.pop()
            return False

        if dfs(instance, depth):
            return list(path)
    return None
