"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest -m acceptance -s`` to see the report lines.
"""

import itertools
import time

import numpy as np
import pytest

from helpers import edges, random_submodular
from oracles import blocking_by_definition, min_swaps_reds_below_blues
from smpswap.generators import gen_fig1, gen_path, gen_random, path_stable_matching, random_subgraph
from smpswap.instance import Instance, Side, apply_sequence, apply_swap, build_extended, enumerate_swaps, project_subgraph
from smpswap.psm import enumerate_perfect_matchings, psm_bfs, psm_via_matchings
from smpswap.repair import (
    BLACK,
    BLUE,
    RED,
    Infeasible,
    analyze,
    brute_force_sequence_repair,
    build_group_sequence,
    contracted_cost,
    group_cost,
    min_repair,
    penalized_cost,
)
from smpswap.sfm import minimize_brute, minimize_mnp
from smpswap.stability import (
    blocking_edges,
    blocking_edges_extended,
    deferred_acceptance,
    n_unmatched,
    unmatched_vertices,
)

pytestmark = pytest.mark.acceptance


def report(number, ok, detail, elapsed=None, limit=None):
    timing = ""
    if elapsed is not None:
        timing = f" [{elapsed:.2f}s" + (f" / limit {limit}s]" if limit else "]")
    print(f"\n{'PASS' if ok else 'FAIL'} criterion {number}: {detail}{timing}")
    assert ok, detail
    if limit is not None:
        assert elapsed < limit, f"criterion {number} took {elapsed:.2f}s, limit {limit}s"


def repair_battery():
    """Seeded capacitated instances with a non-empty free set of at most 12 edges.

    E_b^A is also kept to at most 14 edges so the penalty-form check can
    enumerate all of its subsets.
    """
    rng = np.random.default_rng(2024)
    out = []
    while len(out) < 100:
        inst = gen_random(
            int(rng.integers(3, 9)), int(rng.integers(3, 9)), float(rng.uniform(0.5, 1.0)), 3, int(rng.integers(2**31))
        )
        s = random_subgraph(inst, rng, 1.0)
        an = analyze(inst, s)
        if an.feasible and an.free and len(an.free) <= 12 and len(an.e_b_a) <= 14:
            out.append((inst, s, an))
    return out


def test_criterion_01_fig1_fidelity():
    t0 = time.perf_counter()
    inst, s = gen_fig1(), edges((1, 2), (2, 1))
    want = edges((1, 1), (1, 3), (2, 2), (3, 1))
    direct = blocking_edges(inst, s)
    ext = build_extended(inst)
    via_ext = blocking_edges_extended(ext, project_subgraph(ext, s))
    images = {ext.by_edge[e] for e in via_ext}
    # ((a, position in a's list), (b, position in b's list)), all 0-based
    dashed = {((0, 0), (0, 0)), ((0, 1), (2, 1)), ((1, 0), (1, 0)), ((2, 0), (0, 1))}
    ok = direct == want == via_ext and images == dashed
    report(1, ok, f"blocking {sorted(direct)}, extended images {sorted(images)}", time.perf_counter() - t0, 1)


def test_criterion_02_group_cost_exhaustive():
    t0 = time.perf_counter()
    letter = {RED: "r", BLUE: "u", BLACK: "k"}
    checked = bad = 0
    for d in range(1, 7):
        for labels in itertools.product((RED, BLUE, BLACK), repeat=d):
            want = min_swaps_reds_below_blues([letter[c] for c in labels])
            moves = build_group_sequence(labels)
            col = list(labels)
            for p in moves:
                col[p], col[p + 1] = col[p + 1], col[p]
            reds = [p for p, c in enumerate(col) if c == RED]
            blues = [p for p, c in enumerate(col) if c == BLUE]
            sorted_ok = not reds or not blues or min(reds) > max(blues)
            if not (group_cost(labels) == want == len(moves) and sorted_ok):
                bad += 1
            checked += 1
    report(2, bad == 0, f"{checked} labelings, {bad} mismatches", time.perf_counter() - t0, 60)


def test_criterion_03_sfm_matches_subset_oracle():
    battery = repair_battery()
    t0 = time.perf_counter()
    bad = [i for i, (inst, s, _) in enumerate(battery) if min_repair(inst, s, "sfm").cost != min_repair(inst, s, "brute").cost]
    biggest = max(len(an.free) for *_, an in battery)
    report(3, not bad, f"100 instances (largest free set {biggest}), mismatches at {bad}", time.perf_counter() - t0, 120)


def test_criterion_04_sequence_oracle():
    rng = np.random.default_rng(404)
    t0 = time.perf_counter()
    compared = bad = beyond = top = 0
    while compared < 50:
        inst = gen_random(int(rng.integers(1, 4)), int(rng.integers(1, 4)), float(rng.uniform(0.5, 1.0)), 1, int(rng.integers(2**31)))
        s = random_subgraph(inst, rng, float(rng.uniform(0.3, 1.0)))
        an = analyze(inst, s)
        if not an.feasible or not an.e_b:
            continue
        res = min_repair(inst, s)
        seq = brute_force_sequence_repair(inst, s, 6)
        if res.cost > 6:
            beyond += 1
            bad += seq is not None
            continue
        residual = blocking_edges(apply_sequence(inst, res.sequence), s)
        if seq is None or len(seq) != res.cost or residual or len(res.sequence) != res.cost:
            bad += 1
        compared += 1
        top = max(top, res.cost)
    report(4, bad == 0, f"{compared} compared (costs up to {top}), {beyond} beyond depth 6, {bad} mismatches", time.perf_counter() - t0, 300)


def test_criterion_05_mnp_matches_brute():
    rng = np.random.default_rng(505)
    t0 = time.perf_counter()
    bad = 0
    for _ in range(200):
        f, ground = random_submodular(rng, int(rng.integers(1, 13)))
        v_mnp, _ = minimize_mnp(f, ground)
        v_brute, _ = minimize_brute(f, ground)
        bad += v_mnp != v_brute
    report(5, bad == 0, f"200 functions, {bad} value mismatches", time.perf_counter() - t0, 60)


def test_criterion_06_one_swap_one_edge():
    rng = np.random.default_rng(606)
    t0 = time.perf_counter()
    done = violations = 0
    while done < 1000:
        inst = gen_random(int(rng.integers(1, 6)), int(rng.integers(1, 6)), float(rng.uniform(0.3, 1.0)), int(rng.integers(1, 3)), int(rng.integers(2**31)))
        swaps = enumerate_swaps(inst)
        if not swaps:
            continue
        s = random_subgraph(inst, rng, float(rng.uniform(0.2, 1.0)))
        sw = swaps[int(rng.integers(len(swaps)))]
        violations += len(blocking_edges(apply_swap(inst, sw), s)) < len(blocking_edges(inst, s)) - 1
        done += 1
    report(6, violations == 0, f"{done} triples, {violations} violations", time.perf_counter() - t0, 30)


def psm_battery():
    rng = np.random.default_rng(707)
    out = [gen_fig1()] + [gen_path(n) for n in range(1, 4)]
    while len(out) < 80:
        n = int(rng.integers(2, 5))
        out.append(gen_random(n, n, float(rng.uniform(0.4, 1.0)), 1, int(rng.integers(2**31))))
    return out


def test_criterion_07_unmatched_bound():
    t0 = time.perf_counter()
    solved = violations = 0
    for inst in psm_battery():
        res = psm_via_matchings(inst, 4)
        if not res.decision:
            continue
        solved += 1
        violations += n_unmatched(inst, deferred_acceptance(inst)) > 2 * res.cost
    report(7, violations == 0, f"{solved} instances with k* <= 4, {violations} violations", time.perf_counter() - t0)


def test_criterion_08_path_family():
    t0 = time.perf_counter()
    details, ok = [], True
    for n in range(1, 6):
        inst = gen_path(n)
        cost = psm_via_matchings(inst, n).cost
        ok &= cost == n and not psm_via_matchings(inst, n - 1).decision
        if n <= 3:
            ok &= psm_bfs(inst, n).cost == n and not psm_bfs(inst, n - 1).decision
        m = path_stable_matching(n)
        ok &= deferred_acceptance(inst, Side.A) == deferred_acceptance(inst, Side.B) == m and len(m) == n
        ok &= n_unmatched(inst, m) == 2 and not blocking_edges(inst, m)
        ok &= len(enumerate_perfect_matchings(inst)) == 1
        details.append(f"n={n}:{cost}")
    report(8, ok, "optimal costs " + " ".join(details), time.perf_counter() - t0, 120)


def test_criterion_09_rural_hospitals():
    rng = np.random.default_rng(909)
    t0 = time.perf_counter()
    bad = 0
    for _ in range(200):
        inst = gen_random(int(rng.integers(1, 9)), int(rng.integers(1, 9)), float(rng.uniform(0.2, 1.0)), 1, int(rng.integers(2**31)))
        ma, mb = deferred_acceptance(inst, Side.A), deferred_acceptance(inst, Side.B)
        stable = not blocking_by_definition(inst, ma) and not blocking_by_definition(inst, mb)
        bad += not (stable and unmatched_vertices(inst, ma) == unmatched_vertices(inst, mb))
    report(9, bad == 0, f"200 instances, {bad} failures", time.perf_counter() - t0, 30)


def test_criterion_10_contracted_submodular():
    rng = np.random.default_rng(1010)
    pool = []
    while len(pool) < 40:
        inst = gen_random(int(rng.integers(2, 7)), int(rng.integers(2, 7)), float(rng.uniform(0.5, 1.0)), 3, int(rng.integers(2**31)))
        an = analyze(inst, random_subgraph(inst, rng, 1.0))
        if len(an.free) >= 2:
            pool.append((contracted_cost(an), sorted(an.free)))
    t0 = time.perf_counter()
    violations = 0
    for _ in range(1000):
        f, ground = pool[int(rng.integers(len(pool)))]
        X = frozenset(x for x in ground if rng.random() < 0.5)
        Y = frozenset(x for x in ground if rng.random() < 0.5)
        violations += f(X) + f(Y) < f(X | Y) + f(X & Y)
    report(10, violations == 0, f"1000 samples over {len(pool)} instances, {violations} violations", time.perf_counter() - t0, 60)


def test_criterion_11_penalty_form():
    t0 = time.perf_counter()
    bad = 0
    for inst, s, an in repair_battery():
        ea = sorted(an.e_b_a)
        penal = min(penalized_cost(an, c) for r in range(len(ea) + 1) for c in itertools.combinations(ea, r))
        contracted, _ = minimize_brute(contracted_cost(an), sorted(an.free))
        bad += penal != contracted
    report(11, bad == 0, f"100 instances, {bad} mismatches", time.perf_counter() - t0)


def test_criterion_12_infeasible():
    rng = np.random.default_rng(1212)
    t0 = time.perf_counter()
    built = bad = 0
    while built < 30:
        n_a, n_b = int(rng.integers(1, 4)), int(rng.integers(1, 4))
        inst = gen_random(n_a, n_b, float(rng.uniform(0.5, 1.0)), int(rng.integers(1, 3)), int(rng.integers(2**31)))
        if not inst.edges:
            continue
        i, j = sorted(inst.edges)[int(rng.integers(len(inst.edges)))]
        # keep i and j below capacity by matching only among the other vertices
        others = Instance(
            [[b for b in p if b != j] if a != i else [] for a, p in enumerate(inst.prefs_a)],
            [[a for a in p if a != i] if b != j else [] for b, p in enumerate(inst.prefs_b)],
            inst.cap_a,
            inst.cap_b,
        )
        s = random_subgraph(others, rng, float(rng.uniform(0.0, 1.0)))
        assert (i, j) in blocking_by_definition(inst, s)
        try:
            min_repair(inst, s)
            bad += 1
        except Infeasible:
            pass
        bad += any(brute_force_sequence_repair(inst, s, k) is not None for k in range(4))
        built += 1
    report(12, bad == 0, f"{built} constructed instances, depths 0..3, {bad} failures", time.perf_counter() - t0)
