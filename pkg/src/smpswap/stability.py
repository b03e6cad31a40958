"""Blocking edges, stability reports and (capacitated) deferred acceptance."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .instance import Edge, ExtEdge, ExtendedGraph, Instance, Side, degrees, partners


def _side_wants(instance: Instance, side: Side, s: frozenset[Edge]) -> list:
    """Per vertex of ``side``: None if below capacity, else the worst rank held."""
    n = instance.n_a if side is Side.A else instance.n_b
    rank = instance.rank(side)
    caps = instance.caps(side)
    out = []
    for v, held in enumerate(partners(s, side, n)):
        if len(held) < caps[v]:
            out.append(None)
        else:
            out.append(max(rank[v][u] for u in held))
    return out


def blocking_reasons(instance: Instance, s: Iterable[Edge]) -> dict[Edge, tuple[str, str]]:
    """Map each blocking edge to the reason each endpoint wants it.

    A reason is ``"slack"`` when the endpoint is below capacity and
    ``"prefers"`` when it ranks the edge above one of its current partners.
    """
    s = frozenset(s)
    worst_a = _side_wants(instance, Side.A, s)
    worst_b = _side_wants(instance, Side.B, s)
    out = {}
    for i, j in sorted(instance.edges - s):
        wa, wb = worst_a[i], worst_b[j]
        if wa is not None and instance.rank_a[i][j] > wa:
            continue
        if wb is not None and instance.rank_b[j][i] > wb:
            continue
        out[(i, j)] = ("slack" if wa is None else "prefers", "slack" if wb is None else "prefers")
    return out


def blocking_edges(instance: Instance, s: Iterable[Edge]) -> frozenset[Edge]:
    return frozenset(blocking_reasons(instance, s))


def blocking_edges_extended(ext: ExtendedGraph, m: Iterable[ExtEdge]) -> frozenset[Edge]:
    """Blocking edges computed purely on positions of the extended graph.

    An extended edge ``a^i_p b^j_q`` outside ``m`` blocks when on both sides
    its position lies above a threshold: one past the group's end if the
    vertex has spare capacity, otherwise the lowest matched position of the
    group (so unblocking means moving below every matched position).
    """
    m = frozenset(m)
    matched_a: dict[int, list[int]] = {}
    matched_b: dict[int, list[int]] = {}
    for (i, p), (j, q) in m:
        matched_a.setdefault(i, []).append(p)
        matched_b.setdefault(j, []).append(q)

    def threshold(matched, sizes, caps, v):
        pos = matched.get(v, [])
        return sizes[v] + 1 if len(pos) < caps[v] else max(pos)

    out = set()
    for ext_edge, e in ext.to_original.items():
        if ext_edge in m:
            continue
        (i, p), (j, q) = ext_edge
        if p < threshold(matched_a, ext.sizes_a, ext.cap_a, i) and q < threshold(
            matched_b, ext.sizes_b, ext.cap_b, j
        ):
            out.add(e)
    return frozenset(out)


@dataclass(frozen=True)
class StabilityReport:
    stable: bool
    blocking: frozenset[Edge]
    reasons: dict[Edge, tuple[str, str]]


def stability_report(instance: Instance, s: Iterable[Edge]) -> StabilityReport:
    reasons = blocking_reasons(instance, s)
    return StabilityReport(not reasons, frozenset(reasons), reasons)


def is_stable(instance: Instance, s: Iterable[Edge]) -> bool:
    return not blocking_reasons(instance, s)


def deferred_acceptance(instance: Instance, proposing_side: Side = Side.A) -> frozenset[Edge]:
    """Gale-Shapley with capacities on both sides.

    Each round, proposers in ascending index fill their free slots by
    proposing down their lists; every receiver then keeps its best
    ``c(v)`` proposals and rejects the rest.
    """
    side = Side(proposing_side)
    other = side.other
    prop_prefs = instance.prefs(side)
    prop_caps = instance.caps(side)
    recv_rank = instance.rank(other)
    recv_caps = instance.caps(other)

    nxt = [0] * len(prop_prefs)
    accepted = [0] * len(prop_prefs)
    held: list[list[int]] = [[] for _ in recv_caps]

    while True:
        proposals: dict[int, list[int]] = {}
        for p, pref in enumerate(prop_prefs):
            while accepted[p] < prop_caps[p] and nxt[p] < len(pref):
                proposals.setdefault(pref[nxt[p]], []).append(p)
                nxt[p] += 1
                accepted[p] += 1  # tentatively; undone on rejection
        if not proposals:
            break
        for r in sorted(proposals):
            pool = sorted(held[r] + proposals[r], key=recv_rank[r].__getitem__)
            held[r] = pool[: recv_caps[r]]
            for p in pool[recv_caps[r] :]:
                accepted[p] -= 1

    if side is Side.A:
        return frozenset((p, r) for r, ps in enumerate(held) for p in ps)
    return frozenset((r, p) for r, ps in enumerate(held) for p in ps)


def unmatched_vertices(instance: Instance, s: Iterable[Edge]) -> tuple[frozenset[int], frozenset[int]]:
    """Vertices strictly below capacity in ``s``, per side."""
    s = list(s)
    deg_a = degrees(s, Side.A, instance.n_a)
    deg_b = degrees(s, Side.B, instance.n_b)
    return (
        frozenset(i for i, d in enumerate(deg_a) if d < instance.cap_a[i]),
        frozenset(j for j, d in enumerate(deg_b) if d < instance.cap_b[j]),
    )


def n_unmatched(instance: Instance, s: Iterable[Edge]) -> int:
    ua, ub = unmatched_vertices(instance, s)
    return len(ua) + len(ub)
