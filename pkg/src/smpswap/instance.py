"""Stable-matching instances, preference swaps and the extended bipartite graph.

Vertices are ``a_0 .. a_{n_a-1}`` and ``b_0 .. b_{n_b-1}``.  Everything in the
Python API is 0-based; the file formats and the CLI convert to 1-based.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

Edge = tuple[int, int]
Position = tuple[int, int]  # (vertex index, rank in its list)
ExtEdge = tuple[Position, Position]


class Side(str, enum.Enum):
    A = "a"
    B = "b"

    @property
    def other(self) -> "Side":
        return Side.B if self is Side.A else Side.A


class InvalidSwap(ValueError):
    """Raised when a swap does not address two adjacent entries of a list."""

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


class InvalidSubgraph(ValueError):
    pass


class Swap(NamedTuple):
    """Transpose entries ``position`` and ``position + 1`` of one list."""

    side: Side
    vertex: int
    position: int


@dataclass(frozen=True)
class Instance:
    """Bipartite graph with strict preference lists and vertex capacities.

    ``prefs_a[i]`` lists B-indices in decreasing preference and
    ``prefs_b[j]`` lists A-indices.  Instances are immutable values; use
    :func:`apply_swap` to derive a modified copy.
    """

    prefs_a: tuple[tuple[int, ...], ...]
    prefs_b: tuple[tuple[int, ...], ...]
    cap_a: tuple[int, ...] = field(default=())
    cap_b: tuple[int, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "prefs_a", tuple(tuple(p) for p in self.prefs_a))
        object.__setattr__(self, "prefs_b", tuple(tuple(p) for p in self.prefs_b))
        cap_a = tuple(self.cap_a) if self.cap_a else (1,) * len(self.prefs_a)
        cap_b = tuple(self.cap_b) if self.cap_b else (1,) * len(self.prefs_b)
        if len(cap_a) != len(self.prefs_a) or len(cap_b) != len(self.prefs_b):
            raise ValueError("capacity vectors must match the number of vertices")
        object.__setattr__(self, "cap_a", cap_a)
        object.__setattr__(self, "cap_b", cap_b)

    @property
    def n_a(self) -> int:
        return len(self.prefs_a)

    @property
    def n_b(self) -> int:
        return len(self.prefs_b)

    def prefs(self, side: Side) -> tuple[tuple[int, ...], ...]:
        return self.prefs_a if side is Side.A else self.prefs_b

    def caps(self, side: Side) -> tuple[int, ...]:
        return self.cap_a if side is Side.A else self.cap_b

    @property
    def uncapacitated(self) -> bool:
        return all(c == 1 for c in self.cap_a) and all(c == 1 for c in self.cap_b)

    @cached_property
    def edges(self) -> frozenset[Edge]:
        """Edge set, read off the A-side lists."""
        return frozenset((i, j) for i, pref in enumerate(self.prefs_a) for j in pref)

    @cached_property
    def rank_a(self) -> tuple[dict[int, int], ...]:
        return tuple({j: r for r, j in enumerate(pref)} for pref in self.prefs_a)

    @cached_property
    def rank_b(self) -> tuple[dict[int, int], ...]:
        return tuple({i: r for r, i in enumerate(pref)} for pref in self.prefs_b)

    def rank(self, side: Side) -> tuple[dict[int, int], ...]:
        return self.rank_a if side is Side.A else self.rank_b

    @property
    def key(self) -> tuple:
        """Hashable preference profile, used for search deduplication."""
        return (self.prefs_a, self.prefs_b)


def validate(instance: Instance) -> list[str]:
    """Return every invariant violation found; an empty list means valid."""
    problems = []
    for side, prefs, n_other in (
        (Side.A, instance.prefs_a, instance.n_b),
        (Side.B, instance.prefs_b, instance.n_a),
    ):
        for v, pref in enumerate(prefs):
            seen = set()
            for u in pref:
                if not 0 <= u < n_other:
                    problems.append(f"index out of range in list of {side.value}{v + 1}: {u + 1}")
                elif u in seen:
                    problems.append(f"duplicate entry in list of {side.value}{v + 1}: {u + 1}")
                seen.add(u)
        for v, c in enumerate(instance.caps(side)):
            if c < 1:
                problems.append(f"capacity < 1 at {side.value}{v + 1}")

    listed_b = {(i, j) for j, pref in enumerate(instance.prefs_b) for i in pref}
    for i, j in sorted(instance.edges ^ listed_b):
        problems.append(f"asymmetric edge ({i + 1},{j + 1})")
    return problems


def check_subgraph(instance: Instance, edges: Iterable[Edge]) -> frozenset[Edge]:
    """Normalise ``edges`` to a frozenset, raising if it is not a valid subgraph."""
    s = frozenset((int(i), int(j)) for i, j in edges)
    missing = s - instance.edges
    if missing:
        i, j = min(missing)
        raise InvalidSubgraph(f"edge ({i + 1},{j + 1}) is not in the graph")
    for side, caps in ((Side.A, instance.cap_a), (Side.B, instance.cap_b)):
        deg = degrees(s, side, len(caps))
        for v, (d, c) in enumerate(zip(deg, caps)):
            if d > c:
                raise InvalidSubgraph(f"degree {d} exceeds capacity {c} at {side.value}{v + 1}")
    return s


def degrees(edges: Iterable[Edge], side: Side, n: int) -> list[int]:
    deg = [0] * n
    k = 0 if side is Side.A else 1
    for e in edges:
        deg[e[k]] += 1
    return deg


def partners(edges: Iterable[Edge], side: Side, n: int) -> list[list[int]]:
    out: list[list[int]] = [[] for _ in range(n)]
    for i, j in edges:
        if side is Side.A:
            out[i].append(j)
        else:
            out[j].append(i)
    return out


def apply_swap(instance: Instance, s: Swap) -> Instance:
    prefs = instance.prefs(s.side)
    if not 0 <= s.vertex < len(prefs):
        raise InvalidSwap(f"no vertex {s.side.value}{s.vertex + 1}")
    lst = prefs[s.vertex]
    p = s.position
    if not 0 <= p < len(lst) - 1:
        raise InvalidSwap(
            f"position {p + 1} out of range for list of {s.side.value}{s.vertex + 1} (length {len(lst)})"
        )
    new = lst[:p] + (lst[p + 1], lst[p]) + lst[p + 2 :]
    changed = prefs[: s.vertex] + (new,) + prefs[s.vertex + 1 :]
    if s.side is Side.A:
        return Instance(changed, instance.prefs_b, instance.cap_a, instance.cap_b)
    return Instance(instance.prefs_a, changed, instance.cap_a, instance.cap_b)


def apply_sequence(instance: Instance, seq: Sequence[Swap]) -> Instance:
    for k, s in enumerate(seq):
        try:
            instance = apply_swap(instance, s)
        except InvalidSwap as exc:
            raise InvalidSwap(f"swap #{k + 1}: {exc}", index=k) from None
    return instance


def enumerate_swaps(instance: Instance) -> list[Swap]:
    """All valid swaps: A side by (vertex, position), then B side."""
    return [
        Swap(side, v, p)
        for side in (Side.A, Side.B)
        for v, pref in enumerate(instance.prefs(side))
        for p in range(len(pref) - 1)
    ]


@dataclass(frozen=True)
class ExtendedGraph:
    """Position-expanded graph: vertex ``a_i`` becomes the group A_i of its ranks.

    Each extended vertex ``(i, p)`` is incident to exactly one edge, so the
    graph has maximum degree one.  Edge identity stays with the original pair
    ``(i, j)``; ``by_edge`` maps it to its extended image.
    """

    sizes_a: tuple[int, ...]
    sizes_b: tuple[int, ...]
    cap_a: tuple[int, ...]
    cap_b: tuple[int, ...]
    by_edge: dict[Edge, ExtEdge]

    @property
    def edges(self) -> frozenset[ExtEdge]:
        return frozenset(self.by_edge.values())

    @cached_property
    def to_original(self) -> dict[ExtEdge, Edge]:
        return {ext: e for e, ext in self.by_edge.items()}

    def __hash__(self):
        return hash((self.sizes_a, self.sizes_b, self.edges))


def build_extended(instance: Instance) -> ExtendedGraph:
    by_edge = {
        (i, j): ((i, instance.rank_a[i][j]), (j, instance.rank_b[j][i]))
        for i, j in sorted(instance.edges)
    }
    return ExtendedGraph(
        sizes_a=tuple(len(p) for p in instance.prefs_a),
        sizes_b=tuple(len(p) for p in instance.prefs_b),
        cap_a=instance.cap_a,
        cap_b=instance.cap_b,
        by_edge=by_edge,
    )


def project_subgraph(ext: ExtendedGraph, s: Iterable[Edge]) -> frozenset[ExtEdge]:
    return frozenset(ext.by_edge[e] for e in s)
