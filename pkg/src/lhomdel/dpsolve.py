"""Dynamic programming over nice tree decompositions for both deletion
modes, the decomposition-splitting recursion for ED, and the auto
dispatchers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import analysis, polysolve
from .graphs import (Infeasible, Instance, Solution, TargetGraph,
                     max_incomparable, reduce_lists)
from .treewidth import TreeDecomposition, build_td, make_nice, validate_td

DELETED = -1  # vertex-deletion state symbol
INF = 1 << 60


def _run_dp(h: TargetGraph, inst: Instance, td: TreeDecomposition, mode: str):
    """Bottom-up DP; returns (cost, hom) with hom omitting deleted vertices.

    States are tuples of images aligned with sorted(bag); VD adds the
    DELETED symbol.  Each G edge is charged at its unique introduce-edge
    node: VD kills states whose kept images are non-adjacent, ED pays 1.
    """
    nodes = make_nice(td, inst.edges)
    base = max_incomparable(h)[0] + (1 if mode == "vd" else 0)
    tables = []  # per node: {state: cost}
    backs = []   # per node: {state: back info}
    max_states = 0
    for idx, nd in enumerate(nodes):
        bag = sorted(nd.bag)
        if nd.kind == "leaf":
            table, back = {(): 0}, {(): None}
        elif nd.kind == "introduce":
            v = nd.payload
            ci = nd.children[0]
            at = bag.index(v)
            choices = sorted(inst.lists[v])
            if mode == "vd":
                choices = choices + [DELETED]
            elif not choices:
                raise Infeasible(f"vertex {v} has an empty list")
            table, back = {}, {}
            for cstate, ccost in tables[ci].items():
                for img in choices:
                    st = cstate[:at] + (img,) + cstate[at:]
                    cost = ccost + (1 if img == DELETED else 0)
                    if cost < table.get(st, INF):
                        table[st] = cost
                        back[st] = cstate
        elif nd.kind == "introduce_edge":
            u, v = nd.payload
            iu, iv = bag.index(u), bag.index(v)
            ci = nd.children[0]
            table, back = {}, {}
            for cstate, ccost in tables[ci].items():
                a, b = cstate[iu], cstate[iv]
                if a == DELETED or b == DELETED or h.has_edge(a, b):
                    table[cstate] = ccost
                elif mode == "ed":
                    table[cstate] = ccost + 1
                else:
                    continue  # kept non-adjacent images: infeasible in VD
                back[cstate] = cstate
        elif nd.kind == "forget":
            v = nd.payload
            ci = nd.children[0]
            at = sorted(nodes[ci].bag).index(v)
            table, back = {}, {}
            for cstate, ccost in tables[ci].items():
                st = cstate[:at] + cstate[at + 1:]
                if ccost < table.get(st, INF):
                    table[st] = ccost
                    back[st] = cstate
        else:  # join
            c1, c2 = nd.children
            table, back = {}, {}
            for st, cost1 in tables[c1].items():
                cost2 = tables[c2].get(st)
                if cost2 is None:
                    continue
                shared_del = sum(1 for x in st if x == DELETED)
                cost = cost1 + cost2 - shared_del
                if cost < table.get(st, INF):
                    table[st] = cost
                    back[st] = st
        assert len(table) <= base ** len(bag)
        max_states = max(max_states, len(table))
        tables.append(table)
        backs.append(back)
    root = len(nodes) - 1
    if () not in tables[root]:
        raise Infeasible("no feasible assignment")
    # top-down traceback; a vertex's image is read off when it is forgotten
    hom = {}
    chosen = {root: ()}
    order = list(range(root, -1, -1))
    for idx in order:
        nd = nodes[idx]
        if idx not in chosen:
            continue
        st = chosen[idx]
        prev = backs[idx][st]
        if nd.kind == "forget":
            cstate = prev
            v = nd.payload
            at = sorted(nodes[nd.children[0]].bag).index(v)
            if cstate[at] != DELETED:
                hom[v] = cstate[at]
            chosen[nd.children[0]] = cstate
        elif nd.kind in ("introduce", "introduce_edge"):
            cb = prev
            if nd.kind == "introduce_edge":
                chosen[nd.children[0]] = cb
            else:
                chosen[nd.children[0]] = cb
        elif nd.kind == "join":
            chosen[nd.children[0]] = st
            chosen[nd.children[1]] = st
        # leaf: nothing below
    return tables[root][()], hom, max_states


def solve_vd_dp(h: TargetGraph, inst: Instance,
                td: Optional[TreeDecomposition] = None) -> Solution:
    red = reduce_lists(h, inst)
    if td is None:
        td = build_td(red)
    width = validate_td(red, td)
    cost, hom, max_states = _run_dp(h, red, td, "vd")
    deleted = sorted(v for v in range(inst.n) if v not in hom)
    sol = Solution("vd", cost, deleted, hom, "dp",
                   {"width": width, "max_bag_states": max_states})
    sol.check(h, inst)
    return sol


def solve_ed_dp(h: TargetGraph, inst: Instance,
                td: Optional[TreeDecomposition] = None) -> Solution:
    if any(not lst for lst in inst.lists):
        raise Infeasible("vertex with an empty list")
    red = reduce_lists(h, inst)
    if td is None:
        td = build_td(red)
    width = validate_td(red, td)
    cost, hom, max_states = _run_dp(h, red, td, "ed")
    deleted = sorted((u, v) for u, v in inst.edges
                     if not h.has_edge(hom[u], hom[v]))
    assert len(deleted) == cost
    sol = Solution("ed", cost, deleted, hom, "dp",
                   {"width": width, "max_bag_states": max_states})
    sol.check(h, inst)
    return sol


# ---------------------------------------------------------------------------
# decomposition splitting


@dataclass(frozen=True)
class Split:
    forced: tuple           # G edges always deleted (A–C pairs)
    sub_a: Instance         # over H[A]
    sub_bc: Instance        # over H[B∪C]
    verts_a: tuple          # sub_a index -> G vertex
    verts_bc: tuple
    target_a: tuple         # H[A] index -> H vertex
    target_bc: tuple


def split_by_decomposition(h: TargetGraph, dec: analysis.Decomposition,
                           inst: Instance) -> Split:
    """A–B edges of G are discarded, A–C edges forced-deleted; the two
    sides become independent subinstances over H[A] and H[B∪C]."""
    red = reduce_lists(h, inst)
    a, b, c = set(dec.a), set(dec.b), set(dec.c)
    side = []
    for v in range(red.n):
        lst = red.lists[v]
        assert lst <= a or lst <= b or lst <= c, \
            f"reduced list of vertex {v} straddles the partition"
        side.append("a" if lst <= a else "bc")
    verts_a = tuple(v for v in range(red.n) if side[v] == "a")
    verts_bc = tuple(v for v in range(red.n) if side[v] == "bc")
    pos_a = {v: i for i, v in enumerate(verts_a)}
    pos_bc = {v: i for i, v in enumerate(verts_bc)}
    target_a = tuple(sorted(a))
    target_bc = tuple(sorted(b | c))
    tpos_a = {x: i for i, x in enumerate(target_a)}
    tpos_bc = {x: i for i, x in enumerate(target_bc)}
    ea, ebc, forced = [], [], []
    for u, v in red.edges:
        if side[u] == side[v]:
            (ea if side[u] == "a" else ebc).append(
                (pos_a[u], pos_a[v]) if side[u] == "a"
                else (pos_bc[u], pos_bc[v]))
        else:
            x = u if side[u] == "a" else v  # A-side endpoint
            y = v if x == u else u
            if red.lists[y] <= c:
                forced.append(tuple(sorted((u, v))))
            # A–B pairs are always compatible (full join): drop the edge
    sub_a = Instance(len(verts_a),
                     sorted(tuple(sorted(e)) for e in ea),
                     [frozenset(tpos_a[x] for x in red.lists[v])
                      for v in verts_a], None)
    sub_bc = Instance(len(verts_bc),
                      sorted(tuple(sorted(e)) for e in ebc),
                      [frozenset(tpos_bc[x] for x in red.lists[v])
                       for v in verts_bc], None)
    return Split(tuple(sorted(forced)), sub_a, sub_bc,
                 verts_a, verts_bc, target_a, target_bc)


def solve_vd_auto(h: TargetGraph, inst: Instance,
                  td: Optional[TreeDecomposition] = None) -> Solution:
    if polysolve.classify_is_poly_vd(h):
        sol = polysolve.solve_vd_poly(h, inst)
    else:
        sol = solve_vd_dp(h, inst, td)
    return Solution("vd", sol.cost, sol.deleted, sol.hom, "auto", sol.stats)


def solve_ed_auto(h: TargetGraph, inst: Instance,
                  td: Optional[TreeDecomposition] = None) -> Solution:
    """Poly solver when obstruction-free; otherwise split along a target
    decomposition and recurse; DP only on undecomposable subtargets."""
    if analysis.classify_ed(h)[0] == "poly":
        inner = polysolve.solve_ed_poly(h, inst)
        sol = Solution("ed", inner.cost, inner.deleted, inner.hom, "auto",
                       inner.stats)
        sol.check(h, inst)
        return sol
    dec = analysis.find_decomposition(h)
    if dec is None:
        inner = solve_ed_dp(h, inst, td)
        sol = Solution("ed", inner.cost, inner.deleted, inner.hom, "auto",
                       inner.stats)
        sol.check(h, inst)
        return sol
    if any(not lst for lst in inst.lists):
        raise Infeasible("vertex with an empty list")
    sp = split_by_decomposition(h, dec, inst)
    sol_a = solve_ed_auto(h.induced(sp.target_a), sp.sub_a)
    sol_bc = solve_ed_auto(h.induced(sp.target_bc), sp.sub_bc)
    hom = {}
    for i, v in enumerate(sp.verts_a):
        hom[v] = sp.target_a[sol_a.hom[i]]
    for i, v in enumerate(sp.verts_bc):
        hom[v] = sp.target_bc[sol_bc.hom[i]]
    cost = sol_a.cost + sol_bc.cost + len(sp.forced)
    deleted = sorted(tuple(sorted((u, v))) for u, v in inst.edges
                     if not h.has_edge(hom[u], hom[v]))
    assert len(deleted) == cost
    sol = Solution("ed", cost, deleted, hom, "auto",
                   {"parts": 2, "forced": len(sp.forced)})
    sol.check(h, inst)
    return sol
