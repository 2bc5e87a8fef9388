import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lhomdel.graphs import (Instance, ParseError, TargetGraph, dominates,
                            format_instance, format_target, incomparable,
                            is_incomparable_set, max_incomparable,
                            parse_instance, parse_target, reduce_list,
                            reduce_lists)

import families


def small_target(draw_n, seed):
    rng = random.Random(seed)
    return families.random_target(rng, draw_n)


targets = st.builds(small_target, st.integers(1, 6), st.integers(0, 10 ** 6))


def test_domination_basics():
    # 0 - 1 - 2 path, loop on 1: Gamma(0) = {1} is inside Gamma(2) = {1}
    h = TargetGraph.from_edges(3, [(0, 1), (1, 1), (1, 2)])
    assert dominates(h, 0, 2) and dominates(h, 2, 0)
    assert not incomparable(h, 0, 2)
    assert dominates(h, 0, 1) and not dominates(h, 1, 0)
    assert reduce_list(h, frozenset({0, 2})) == frozenset({0})
    assert reduce_list(h, frozenset({0, 1})) == frozenset({1})


@given(targets, st.integers(0, 10 ** 6))
@settings(max_examples=100, deadline=None)
def test_reduce_list_properties(h, seed):
    rng = random.Random(seed)
    lst = frozenset(rng.sample(range(h.n), rng.randint(1, h.n)))
    red = reduce_list(h, lst)
    assert red <= lst and red
    assert is_incomparable_set(h, red)
    assert reduce_list(h, red) == red  # idempotent
    # every dropped vertex is dominated by a kept one
    for u in lst - red:
        assert any(dominates(h, u, v) for v in red)


@given(targets)
@settings(max_examples=60, deadline=None)
def test_max_incomparable_vs_bruteforce(h):
    size, wit = max_incomparable(h)
    assert is_incomparable_set(h, wit) and len(wit) == size
    best = max(len(sub) for r in range(h.n + 1)
               for sub in combinations(range(h.n), r)
               if is_incomparable_set(h, sub))
    assert size == best


def test_target_roundtrip():
    rng = random.Random(7)
    for _ in range(25):
        h = families.random_target(rng, rng.randint(1, 7))
        assert parse_target(format_target(h)).nbhd == h.nbhd


def test_instance_roundtrip():
    rng = random.Random(8)
    for _ in range(25):
        h = families.random_target(rng, rng.randint(1, 5))
        inst = families.random_instance(rng, h, rng.randint(1, 7))
        inst.budget = rng.choice([None, rng.randint(0, 5)])
        back = parse_instance(format_instance(inst), h)
        assert (back.n, back.edges, back.lists, back.budget) == \
            (inst.n, sorted(inst.edges), inst.lists, inst.budget)


def test_reduce_lists_keeps_structure():
    h = families.reflexive_path(3)
    inst = Instance(2, [(0, 1)], [frozenset({0, 1, 2})] * 2)
    red = reduce_lists(h, inst)
    assert red.edges == inst.edges and red.n == inst.n
    assert all(is_incomparable_set(h, lst) for lst in red.lists)


@pytest.mark.parametrize("text", [
    "",                      # missing header
    "h 0",                   # bad count
    "e 1 2\nh 3",            # edge before header
    "h 2\ne 1 3",            # out of range
    "h 2\ne 1 2\ne 2 1",     # duplicate edge
    "h 2\nx 1",              # unknown line
])
def test_target_parse_errors(text):
    with pytest.raises(ParseError):
        parse_target(text)


@pytest.mark.parametrize("text", [
    "",                          # missing header
    "p lhom 2 1",                # edge count mismatch
    "e 1 2\np lhom 2 1",         # edge before header
    "p lhom 2 1\ne 1 1",         # loop
    "p lhom 2 2\ne 1 2\ne 2 1",  # parallel edge
    "p lhom 1 0\nl 1 2 1",       # list length mismatch
    "p lhom 1 0\nl 1 1 9",       # list element out of range
    "p lhom 1 0\nk -1",          # negative budget
])
def test_instance_parse_errors(text):
    h = families.reflexive_clique(2)
    with pytest.raises(ParseError):
        parse_instance(text, h)


def test_instance_validation():
    with pytest.raises(ValueError):
        Instance(2, [(0, 0)], [frozenset({0})] * 2)
    with pytest.raises(ValueError):
        Instance(2, [(0, 1), (1, 0)], [frozenset({0})] * 2)
    with pytest.raises(ValueError):
        Instance(2, [], [frozenset({0})])
