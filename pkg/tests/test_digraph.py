"""Grid digraph structure, cycle search, and DOT export."""

from __future__ import annotations

import pytest

from conftest import SEVEN_IDENTITY_MARKETS, make_instance
from oracles import alternating_cycle_exists, brute_arc_count, brute_out_degree, nx_has_cycle
from stable_core import (
    PreferenceCycle,
    Vertex,
    VertexDeletedError,
    all_instances,
    build_digraph,
    export_dot,
    find_preference_cycle,
    has_directed_cycle,
    normal_form,
    random_instance,
)


def test_full_digraph_shape(unique_cyclic_market):
    dg = build_digraph(unique_cyclic_market)
    assert dg.alive_count() == 9
    # w1 tops f1's list, so the cell below it points up the column.
    assert dg.has_arc(Vertex(1, 0), Vertex(0, 0))
    assert not dg.has_arc(Vertex(0, 0), Vertex(1, 0))


def test_smallest_digraph():
    dg = build_digraph(make_instance([(0,)], [(0,)]))
    assert dg.alive_count() == 1
    assert dg.arc_count() == 0
    assert dg.out_degree_split(Vertex(0, 0)) == (0, 0)


def test_full_arc_count_matches_oracle(two_stable_market):
    dg = build_digraph(two_stable_market)
    assert dg.arc_count() == 18  # n * C(n,2) per direction class
    assert dg.arc_count() == brute_arc_count(dg)


def test_arc_count_matches_oracle_after_deletions():
    for seed in range(20):
        inst = random_instance(4, seed)
        dg = build_digraph(inst)
        doomed = [Vertex(w, f) for w in range(4) for f in range(4) if (w * 7 + f + seed) % 3 == 0]
        dg.delete(doomed)
        assert dg.arc_count() == brute_arc_count(dg)


def test_arc_antisymmetry():
    inst = random_instance(4, 99)
    dg = build_digraph(inst)
    for u in dg.alive_vertices():
        for v in dg.alive_vertices():
            if u != v:
                assert not (dg.has_arc(u, v) and dg.has_arc(v, u))


def test_out_degree_split_examples(two_stable_market, unique_cyclic_market):
    dg = build_digraph(unique_cyclic_market)
    assert dg.out_degree_split(Vertex(1, 0)) == (0, 1)  # f1 is w2's favourite
    for w in range(3):
        favourite = unique_cyclic_market.worker_prefs[w][0]
        assert dg.out_degree_split(Vertex(w, favourite))[0] == 0
    other = build_digraph(two_stable_market)
    assert other.out_degree_split(Vertex(2, 1)) == brute_out_degree(other, 2, 1) == (1, 2)


def test_out_degree_split_matches_oracle_random():
    for seed in range(10):
        inst = random_instance(5, seed)
        dg = build_digraph(inst)
        dg.delete([Vertex((seed + i) % 5, (2 * i) % 5) for i in range(4)])
        for v in dg.alive_vertices():
            assert dg.out_degree_split(v) == brute_out_degree(dg, *v)


def test_out_degree_split_requires_survivor(two_stable_market):
    dg = build_digraph(two_stable_market)
    dg.delete([Vertex(1, 1)])
    with pytest.raises(VertexDeletedError):
        dg.out_degree_split(Vertex(1, 1))


def test_directed_cycle_on_reduced_two_stable_market(two_stable_market):
    nf = normal_form(two_stable_market)
    cycle = has_directed_cycle(nf.digraph)
    assert cycle == (Vertex(1, 0), Vertex(1, 2), Vertex(2, 2), Vertex(2, 0))


def test_single_row_digraph_is_acyclic(two_stable_market):
    dg = build_digraph(two_stable_market)
    dg.delete([Vertex(w, f) for w in (1, 2) for f in range(3)])
    assert has_directed_cycle(dg) is None


def test_full_unique_cyclic_market_has_cycle(unique_cyclic_market):
    cycle = has_directed_cycle(build_digraph(unique_cyclic_market))
    assert cycle is not None
    assert len(cycle) >= 4


def test_cycle_witness_arcs_are_real():
    for seed in range(200):
        inst = random_instance(4, seed)
        dg = build_digraph(inst)
        cycle = has_directed_cycle(dg)
        if cycle is None:
            continue
        assert len(cycle) >= 4
        assert len(set(cycle)) == len(cycle)
        for u, v in zip(cycle, cycle[1:] + cycle[:1]):
            assert dg.has_arc(u, v)


def test_directed_cycle_matches_networkx_exhaustive_size_two():
    for inst in all_instances(2):
        dg = build_digraph(inst)
        assert (has_directed_cycle(dg) is not None) == nx_has_cycle(dg)
        nf = normal_form(inst)
        assert (has_directed_cycle(nf.digraph) is not None) == nx_has_cycle(nf.digraph)


def test_directed_cycle_matches_networkx_sampled_size_three():
    for i, inst in enumerate(all_instances(3)):
        if i % 31:  # ~1500 markets, deterministic slice
            continue
        dg = build_digraph(inst)
        assert (has_directed_cycle(dg) is not None) == nx_has_cycle(dg)
        nf = normal_form(inst)
        assert (has_directed_cycle(nf.digraph) is not None) == nx_has_cycle(nf.digraph)


def test_preference_cycle_on_full_unique_cyclic_market(unique_cyclic_market):
    cycle = find_preference_cycle(build_digraph(unique_cyclic_market))
    assert cycle == PreferenceCycle(workers=(0, 1), firms=(0, 2))
    assert cycle.holds_in(unique_cyclic_market)


def test_preference_cycle_on_reduced_two_stable_market(two_stable_market):
    nf = normal_form(two_stable_market)
    cycle = find_preference_cycle(nf.digraph)
    assert cycle == PreferenceCycle(workers=(1, 2), firms=(0, 2))
    assert cycle.holds_in(two_stable_market)


def test_preference_cycle_none_for_acyclic_market():
    worker_rows, firm_rows = SEVEN_IDENTITY_MARKETS[0]
    dg = build_digraph(make_instance(worker_rows, firm_rows))
    assert find_preference_cycle(dg) is None


def test_preference_cycle_relations_hold_random():
    found = 0
    for seed in range(300):
        inst = random_instance(5, seed)
        cycle = find_preference_cycle(build_digraph(inst))
        if cycle is not None:
            found += 1
            assert cycle.holds_in(inst)
            assert len(cycle.workers) == len(set(cycle.workers))
            assert len(cycle.firms) == len(set(cycle.firms))
    assert found > 0


def test_preference_cycle_found_iff_directed_cycle_and_on_survivors():
    # The alternating form must exist exactly when a directed cycle does, and
    # every cell it mentions must have survived the reduction.
    for seed in range(200):
        inst = random_instance(6, seed)
        dg = normal_form(inst).digraph
        cycle = find_preference_cycle(dg)
        assert (cycle is None) == (has_directed_cycle(dg) is None)
        if cycle is None:
            continue
        k = len(cycle.workers)
        for j in range(k):
            w, f = cycle.workers[j], cycle.firms[j]
            assert dg.is_alive(w, f)
            assert dg.is_alive(w, cycle.firms[(j + 1) % k])
            assert dg.is_alive(cycle.workers[(j - 1) % k], f)


def test_alternating_cycle_oracle_agrees_on_size_two():
    for inst in all_instances(2):
        dg = build_digraph(inst)
        assert (find_preference_cycle(dg) is not None) == alternating_cycle_exists(dg)


def test_dot_export_full(unique_cyclic_market):
    dot = export_dot(build_digraph(unique_cyclic_market))
    lines = dot.splitlines()
    assert lines[0] == "digraph matching_market {"
    assert sum(1 for ln in lines if ln.endswith('";') and '->' not in ln) == 9
    arcs = [ln for ln in lines if "->" in ln]
    assert len(arcs) == 18
    assert sum(1 for ln in arcs if "dashed" in ln) == 9
    assert '  "w2_f1" -> "w1_f1" [style=dashed];' in lines


def test_dot_export_suppress_transitive(unique_cyclic_market):
    dot = export_dot(build_digraph(unique_cyclic_market), suppress_transitive=True)
    arcs = [ln for ln in dot.splitlines() if "->" in ln]
    assert len(arcs) == 12  # two per row plus two per column
    assert all('"w1_f2" -> "w1_f3"' not in ln for ln in arcs)  # implied by transitivity


def test_dot_export_reduced(unique_cyclic_market):
    nf = normal_form(unique_cyclic_market)
    dot = export_dot(nf.digraph)
    assert sum(1 for ln in dot.splitlines() if ln.endswith('";') and '->' not in ln) == 3
    assert "->" not in dot


def test_vertex_labels():
    assert Vertex(0, 2).label == "w1_f3"
