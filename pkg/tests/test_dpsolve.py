import random

import pytest

from lhomdel import analysis, dpsolve, oracle
from lhomdel.graphs import Infeasible, Instance, max_incomparable
from lhomdel.treewidth import build_td

import families


def test_vd_dp_vs_oracle():
    rng = random.Random(61)
    for _ in range(120):
        h = families.random_target(rng, rng.randint(1, 5))
        inst = families.random_instance(rng, h, rng.randint(1, 8))
        want = oracle.oracle_vd(h, inst).cost
        assert dpsolve.solve_vd_dp(h, inst).cost == want
        assert dpsolve.solve_vd_auto(h, inst).cost == want


def test_ed_dp_vs_oracle():
    rng = random.Random(62)
    for _ in range(120):
        h = families.random_target(rng, rng.randint(1, 5))
        inst = families.random_instance(rng, h, rng.randint(1, 8))
        want = oracle.oracle_ed(h, inst).cost
        assert dpsolve.solve_ed_dp(h, inst).cost == want
        assert dpsolve.solve_ed_auto(h, inst).cost == want


def test_explicit_td_accepted():
    rng = random.Random(63)
    h = families.reflexive_cycle(5)
    inst = families.random_instance(rng, h, 7)
    td = build_td(inst)
    assert dpsolve.solve_vd_dp(h, inst, td).cost == \
        dpsolve.solve_vd_dp(h, inst).cost
    assert dpsolve.solve_ed_dp(h, inst, td).cost == \
        dpsolve.solve_ed_dp(h, inst).cost


def test_ed_infeasible_on_empty_list():
    h = families.reflexive_clique(2)
    inst = Instance(2, [(0, 1)], [frozenset(), frozenset({0})])
    with pytest.raises(Infeasible):
        dpsolve.solve_ed_dp(h, inst)
    with pytest.raises(Infeasible):
        dpsolve.solve_ed_auto(h, inst)
    # VD handles the same instance by deleting the listless vertex
    assert dpsolve.solve_vd_dp(h, inst).cost == 1


def test_split_matches_direct_dp():
    rng = random.Random(64)
    done = 0
    while done < 60:
        h = families.random_target(rng, rng.randint(2, 6))
        dec = analysis.find_decomposition(h)
        if dec is None:
            continue
        inst = families.random_instance(rng, h, rng.randint(1, 7))
        sp = dpsolve.split_by_decomposition(h, dec, inst)
        cost_a = dpsolve.solve_ed_dp(h.induced(sp.target_a), sp.sub_a).cost
        cost_bc = dpsolve.solve_ed_dp(h.induced(sp.target_bc), sp.sub_bc).cost
        total = cost_a + cost_bc + len(sp.forced)
        assert total == dpsolve.solve_ed_dp(h, inst).cost
        done += 1


def test_state_bounds_in_stats():
    rng = random.Random(65)
    for _ in range(60):
        h = families.random_target(rng, rng.randint(1, 5))
        inst = families.random_instance(rng, h, rng.randint(1, 8))
        i = max_incomparable(h)[0]
        sol = dpsolve.solve_vd_dp(h, inst)
        assert sol.stats["max_bag_states"] <= (i + 1) ** (sol.stats["width"] + 1)
        sol = dpsolve.solve_ed_dp(h, inst)
        assert sol.stats["max_bag_states"] <= i ** (sol.stats["width"] + 1)
