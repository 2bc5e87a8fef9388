"""Gadget data model and the two construction calculi.

VD family: splitter / matcher / translator paths assembled into
(v,S)-prohibitors and S-prohibitors.  ED family: moves between
incomparable pairs, pendant cost shifts, normalization, composition,
Aux-graph routing, indicators, and bounded synthesis of NEQ realizers.

Small gadgets get exact cost tables by assignment enumeration; composed
gadgets carry tables computed compositionally (min-plus at serial glue
points, pointwise sums at parallel ones), cross-checked against
enumeration in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import prod
from typing import Optional

import networkx as nx

from . import _kernels, analysis
from .graphs import (Instance, ParseError, TargetGraph, bits,
                     format_instance, incomparable, is_incomparable_set,
                     parse_instance)

X = -1  # deletion symbol in VD cost tables
INF = int(_kernels.INF)
ENUM_BOUND = 10 ** 7


class GadgetError(ValueError):
    """Construction precondition or verification failure."""


@dataclass
class Gadget:
    n: int
    edges: tuple
    lists: tuple      # frozensets over V(H)
    portals: tuple    # distinct vertex indices
    tables: dict = field(default_factory=dict)  # mode -> {tuple: cost}
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(set(self.portals)) != len(self.portals):
            raise GadgetError("portals must be distinct")
        for p in self.portals:
            if not 0 <= p < self.n:
                raise GadgetError("portal out of range")
        if any(not lst for lst in self.lists):
            raise GadgetError("every gadget list must be nonempty")

    def portal_lists(self):
        return tuple(self.lists[p] for p in self.portals)

    def to_instance(self) -> Instance:
        return Instance(self.n, sorted(tuple(sorted(e)) for e in self.edges),
                        list(self.lists), None)


@dataclass
class CostTable:
    mode: str
    portal_lists: tuple
    table: dict  # portal-value tuple (X allowed in vd) -> cost

    @property
    def base(self) -> int:
        return min(c for c in self.table.values() if c < INF)


@dataclass
class Realization:
    relation: frozenset
    k: int
    omega: Optional[int] = None


@dataclass
class MoveReport:
    gadget: Gadget
    jmap: dict          # input value -> frozenset of min-cost outputs
    forced: dict        # input value -> output, where forced


def path_gadget(lists) -> Gadget:
    lists = tuple(frozenset(s) for s in lists)
    edges = tuple((i, i + 1) for i in range(len(lists) - 1))
    return Gadget(len(lists), edges, lists, (0, len(lists) - 1))


# ---------------------------------------------------------------------------
# cost tables


def enumerate_cost_table(h: TargetGraph, gadget: Gadget, mode: str,
                         bound: int = ENUM_BOUND) -> dict:
    """Exact table by assignment enumeration (portals first, then the rest)."""
    order = list(gadget.portals) + [v for v in range(gadget.n)
                                    if v not in gadget.portals]
    pos = {v: i for i, v in enumerate(order)}
    inst = Instance(gadget.n,
                    sorted(tuple(sorted((pos[u], pos[v])))
                           for u, v in gadget.edges),
                    [gadget.lists[v] for v in order], None)
    from .oracle import _scan_arrays
    radix, val, base, eu, ev, adj = _scan_arrays(h, inst, mode,
                                                 len(gadget.portals))
    if prod(int(r) for r in radix) > bound:
        raise GadgetError("gadget too large for exhaustive enumeration")
    flat = _kernels.scan_table(radix, val, base, eu, ev, adj,
                               mode == "ed", len(gadget.portals))
    axes = []
    for p in gadget.portals:
        vals = sorted(gadget.lists[p])
        axes.append(vals + [X] if mode == "vd" else vals)
    table = {}
    for i, key in enumerate(product(*axes)):
        table[key] = int(flat[i])
    return table


def cost_table(h: TargetGraph, gadget: Gadget, mode: str,
               bound: int = ENUM_BOUND) -> CostTable:
    if mode not in ("vd", "ed"):
        raise ValueError("mode must be 'vd' or 'ed'")
    if mode not in gadget.tables:
        gadget.tables[mode] = enumerate_cost_table(h, gadget, mode, bound)
    return CostTable(mode, gadget.portal_lists(), dict(gadget.tables[mode]))


def verify_realizes(h: TargetGraph, gadget: Gadget, relation,
                    omega: Optional[int] = None, mode: str = "ed") -> bool:
    """True iff cost is constant k on the relation, > k (resp. = k+omega)
    off it, over tuples drawn from the portal lists."""
    ct = cost_table(h, gadget, mode)
    domain = list(product(*(sorted(lst) for lst in gadget.portal_lists())))
    rel = {tuple(t) for t in relation}
    if not rel:
        return False
    on = [ct.table[t] for t in domain if t in rel]
    off = [ct.table[t] for t in domain if t not in rel]
    k = on[0]
    if any(c != k for c in on):
        return False
    if omega is None:
        return all(c > k for c in off)
    return all(c == k + omega for c in off)


def move_report(h: TargetGraph, gadget: Gadget) -> MoveReport:
    """Per-input minimum-cost reachable sets of a binary ED gadget."""
    ct = cost_table(h, gadget, "ed")
    lin, lout = gadget.portal_lists()
    jmap, forced = {}, {}
    for u in sorted(lin):
        row = {v: ct.table[(u, v)] for v in sorted(lout)}
        m = min(row.values())
        jmap[u] = frozenset(v for v, c in row.items() if c == m)
        if len(jmap[u]) == 1:
            (forced[u],) = jmap[u]
    return MoveReport(gadget, jmap, forced)


# ---------------------------------------------------------------------------
# gluing


def _glue(g1: Gadget, g2: Gadget, ident: dict) -> tuple:
    """Union of g1 and g2 with g2-vertex -> g1-vertex identifications;
    returns (n, edges, lists, map2) with map2 taking g2 ids to new ids."""
    for b, a in ident.items():
        if g1.lists[a] != g2.lists[b]:
            raise GadgetError("glued vertices must carry equal lists")
    map2 = {}
    lists = list(g1.lists)
    nxt = g1.n
    for v in range(g2.n):
        if v in ident:
            map2[v] = ident[v]
        else:
            map2[v] = nxt
            lists.append(g2.lists[v])
            nxt += 1
    edges = {tuple(sorted(e)) for e in g1.edges}
    for u, v in g2.edges:
        e = tuple(sorted((map2[u], map2[v])))
        if e in edges:
            raise GadgetError("gluing would create a parallel edge")
        edges.add(e)
    return nxt, tuple(sorted(edges)), tuple(lists), map2


def serial_glue(g1: Gadget, g2: Gadget) -> Gadget:
    """Identify g1's second portal with g2's first."""
    n, edges, lists, map2 = _glue(g1, g2, {g2.portals[0]: g1.portals[1]})
    return Gadget(n, edges, lists, (g1.portals[0], map2[g2.portals[1]]))


def parallel_glue(g1: Gadget, g2: Gadget) -> Gadget:
    """Identify both portal pairs."""
    n, edges, lists, _ = _glue(g1, g2, {g2.portals[0]: g1.portals[0],
                                        g2.portals[1]: g1.portals[1]})
    return Gadget(n, edges, lists, g1.portals)


def serial_table(t1: dict, t2: dict, junction, mode: str) -> dict:
    """Min-plus composition at one shared junction vertex; in VD mode a
    deleted junction vertex costs 1 (it is interior to the composition)."""
    keys1 = sorted({k[0] for k in t1})
    keys2 = sorted({k[1] for k in t2})
    out = {}
    for a in keys1:
        for b in keys2:
            best = INF
            for c in junction:
                cost = t1[(a, c)] + t2[(c, b)]
                if mode == "vd" and c == X:
                    cost += 1
                best = min(best, cost)
            out[(a, b)] = min(best, INF)
    return out


def parallel_table(t1: dict, t2: dict) -> dict:
    return {k: min(t1[k] + t2[k], INF) for k in t1}


# ---------------------------------------------------------------------------
# VD family: splitter, matcher, translator, prohibitors


def _gamma(h: TargetGraph, v: int) -> set:
    return set(bits(h.nbhd[v]))


def _check_incomparable(h: TargetGraph, s) -> None:
    if not is_incomparable_set(h, s):
        raise GadgetError(f"{sorted(s)} is not an incomparable set")


def build_splitter(h: TargetGraph, s, v: int,
                   w: Optional[int] = None,
                   vp: Optional[int] = None,
                   wp: Optional[int] = None) -> Gadget:
    """Path S − (V(H)∖Γ(v)) − {v} − {v',w'}; base cost 1; minimum met
    exactly on (v,v') and (u,v'), (u,w') for u in S∖{v}.

    The free choices (w in S∖{v} and the private neighbors v', w') default
    to the lowest-index candidates but can be pinned by the caller.
    """
    s = frozenset(s)
    if v not in s or len(s) < 2:
        raise GadgetError("need v in S and |S| >= 2")
    _check_incomparable(h, s)
    if w is None:
        w = min(s - {v})
    if vp is None:
        vp = min(_gamma(h, v) - _gamma(h, w))
    if wp is None:
        wp = min(_gamma(h, w) - _gamma(h, v))
    mid = frozenset(range(h.n)) - _gamma(h, v)
    g = path_gadget([s, mid, {v}, {vp, wp}])
    g.meta = {"v": v, "w": w, "vp": vp, "wp": wp, "alpha": 1}
    ct = cost_table(h, g, "vd")
    hits = {(v, vp)} | {(u, p) for u in s - {v} for p in (vp, wp)}
    for a in sorted(s):
        for b in (vp, wp):
            want = 1 if (a, b) in hits else 2
            if ct.table[(a, b)] < want or ((a, b) in hits
                                           and ct.table[(a, b)] != 1):
                raise GadgetError("splitter verification failed")
    if ct.base != 1:
        raise GadgetError("splitter base cost is not 1")
    return g


def _pair_context(h: TargetGraph, vp: int, wp: int,
                  v: Optional[int], w: Optional[int]) -> tuple:
    """Find (v, w) with vp in Γ(v)∖Γ(w) and wp in Γ(w)∖Γ(v)."""
    if v is not None and w is not None:
        return v, w
    for cv in range(h.n):
        for cw in range(h.n):
            if (vp in _gamma(h, cv) and vp not in _gamma(h, cw)
                    and wp in _gamma(h, cw) and wp not in _gamma(h, cv)):
                return cv, cw
    raise GadgetError("no generating pair for the given private neighbors")


def _verify_matcher(h: TargetGraph, g: Gadget, p: int, q: int,
                    alpha: int) -> None:
    ct = cost_table(h, g, "vd")
    for a, b in product((p, q, X), repeat=2):
        c = ct.table[(a, b)]
        if (a, b) == (p, p):
            if c <= alpha:
                raise GadgetError("matcher fails to penalize (p,p)")
        elif (a, b) == (q, q):
            if c < alpha:
                raise GadgetError("matcher base violated at (q,q)")
        elif c != alpha:
            raise GadgetError("matcher cost off the diagonal is not alpha")


def _cycle_as(cycle, first: int, second: int):
    """Rotation/reflection of a cyclic order putting `first` at position 0
    and `second` at position 2."""
    k = len(cycle)
    seqs = [tuple(cycle[(cycle.index(first) + d * i) % k] for i in range(k))
            for d in (1, -1)]
    for seq in seqs:
        if seq[2] == second:
            return seq
    raise GadgetError("vertices are not at distance two on the cycle")


def _ab_matcher(h: TargetGraph, witness, p: int, q: int) -> Gadget:
    """(p,q)-matcher over a reflexive hardness witness; penalizes (p,p)."""
    kind, verts = witness.kind, witness.vertices
    if kind == "three_independent":
        third = min(set(verts) - {p, q})
        g = path_gadget([{p, q}, {q}, {third}, {p}, {q}, {p, q}])
        alpha = 2
    elif kind == "induced_c4":
        a, x, b, y = _cycle_as(list(verts), p, q)
        g = path_gadget([{a, b}, {x, b}, {x, y}, {b, y}, {a, b}])
        alpha = 0
    elif kind == "induced_c5":
        a, x, b, y, z = _cycle_as(list(verts), p, q)
        g = path_gadget([{a, b}, {x, y}, {b, z}, {a, b}])
        alpha = 0
    else:
        raise GadgetError(f"no (p,q)-matcher for witness kind {kind}")
    g.meta = {"alpha": alpha, "p": p, "q": q, "witness": kind}
    _verify_matcher(h, g, p, q, alpha)
    return g


def build_translator(h: TargetGraph, vp: int, wp: int, a: int, b: int,
                     v: Optional[int] = None,
                     w: Optional[int] = None) -> tuple:
    """Move {vp,wp} -> {a,b} penalizing one diagonal; returns the gadget
    and its orientation (c,d), meaning vp -> c is the cheap transition.

    Only valid on reflexive targets: the case analysis leans on loops.
    """
    if not h.is_reflexive():
        raise GadgetError("translator requires a reflexive target")
    if h.has_edge(a, b):
        raise GadgetError("translator destination pair must be non-adjacent")
    v, w = _pair_context(h, vp, wp, v, w)
    ga, gb = _gamma(h, a), _gamma(h, b)
    if vp in ga:
        if w in gb:
            g = path_gadget([{vp, wp}, {a, w}, {a, b}])
            orient, alpha, case = (a, b), 0, "a"
        else:
            g = path_gadget([{vp, wp}, {w}, {b}, {a, b}])
            orient, alpha, case = (b, a), 1, "d"
    else:
        if vp in gb:
            g = path_gadget([{vp, wp}, {w}, {vp}, {a, b}])
            orient, alpha, case = (b, a), 1, "b"
        else:
            g = path_gadget([{vp, wp}, {w}, {vp}, {b}, {a}, {a, b}])
            orient, alpha, case = (a, b), 2, "c"
    c, d = orient
    ct = cost_table(h, g, "vd")
    for x in (vp, wp, X):
        for y in (a, b, X):
            cost = ct.table[(x, y)]
            if (x, y) == (vp, d):
                if cost <= alpha:
                    raise GadgetError("translator fails to penalize (vp,d)")
            elif (x, y) == (wp, c):
                if cost < alpha:
                    raise GadgetError("translator base violated")
            elif cost != alpha:
                raise GadgetError("translator cost is not alpha")
    g.meta = {"alpha": alpha, "orientation": orient, "case": case}
    return g, orient


def build_matcher(h: TargetGraph, vp: int, wp: int,
                  v: Optional[int] = None,
                  w: Optional[int] = None) -> Gadget:
    """(vp,wp)-matcher: minimum cost everywhere except both portals at vp.

    With an irreflexive vertex available, each candidate picks the path
    shape from its adjacencies to the portals and is verified outright;
    the first verified candidate wins.
    """
    irr = [i for i in range(h.n) if not h.has_loop(i)]
    last_err = None
    for i in irr:
        gi = _gamma(h, i)
        try:
            if vp in gi and wp in gi:
                _, wv = _pair_context(h, vp, wp, v, w)
                g = path_gadget([{vp, wp}, {wv, i}, {i}, {i},
                                 {wv, i}, {vp, wp}])
                alpha = 1
            elif wp in gi:
                g = path_gadget([{vp, wp}, {i}, {i}, {vp, wp}])
                alpha = 1
            else:
                vv, wv = _pair_context(h, vp, wp, v, w)
                g = path_gadget([{vp, wp}, {vv, wv}, {wp}, {i}, {i},
                                 {wp}, {vv, wv}, {vp, wp}])
                alpha = 2
            g.meta = {"alpha": alpha, "p": vp, "q": wp}
            _verify_matcher(h, g, vp, wp, alpha)
            return g
        except GadgetError as exc:
            last_err = exc
    if irr:
        raise last_err
    # reflexive H: translator + (a,b)-matcher + reversed translator
    cls, witness = analysis.classify_vd(h)
    if cls != "np-hard":
        raise GadgetError("matcher needs an NP-hard target")
    verts = witness.vertices
    if witness.kind == "three_independent":
        a, b = sorted(verts)[:2]
    else:
        a, b = verts[0], verts[2]
    tr, (c, d) = build_translator(h, vp, wp, a, b, v, w)
    mat = _ab_matcher(h, witness, c, d)
    tr2 = Gadget(tr.n, tr.edges, tr.lists, tr.portals,
                 {m: dict(t) for m, t in tr.tables.items()}, dict(tr.meta))
    left = serial_glue(tr, mat)
    rev2 = Gadget(tr2.n, tr2.edges, tr2.lists,
                  (tr2.portals[1], tr2.portals[0]))
    g = serial_glue(left, rev2)
    t_tr = cost_table(h, tr, "vd").table
    t_mat = cost_table(h, mat, "vd").table
    t_rev = {(y, x): cst for (x, y), cst in t_tr.items()}
    junction = (c, d, X)
    t = serial_table(serial_table(t_tr, t_mat, junction, "vd"),
                     t_rev, junction, "vd")
    g.tables["vd"] = t
    alpha = 2 * tr.meta["alpha"] + mat.meta["alpha"]
    g.meta = {"alpha": alpha, "p": vp, "q": wp}
    _verify_matcher_table(t, vp, wp, alpha)
    return g


def _verify_matcher_table(t: dict, p: int, q: int, alpha: int) -> None:
    for a, b in product((p, q, X), repeat=2):
        c = t[(a, b)]
        if (a, b) == (p, p):
            if c <= alpha:
                raise GadgetError("matcher fails to penalize (p,p)")
        elif (a, b) == (q, q):
            if c < alpha:
                raise GadgetError("matcher base violated at (q,q)")
        elif c != alpha:
            raise GadgetError("matcher cost off the diagonal is not alpha")


def build_prohibitor(h: TargetGraph, s, v: int) -> Gadget:
    """(v,S)-prohibitor: cost alpha on every portal behavior over
    (S ∪ {x})² except (v,v), which costs more.

    Searches the free choices (w and the private neighbors) for a
    combination whose matcher verifies.
    """
    s = frozenset(s)
    spl = mat = None
    last_err = GadgetError("no candidate choices")
    for w in sorted(s - {v}):
        for vp in sorted(_gamma(h, v) - _gamma(h, w)):
            for wp in sorted(_gamma(h, w) - _gamma(h, v)):
                try:
                    spl = build_splitter(h, s, v, w, vp, wp)
                    mat = build_matcher(h, vp, wp, v, w)
                except GadgetError as exc:
                    spl = mat = None
                    last_err = exc
                    continue
                break
            if mat is not None:
                break
        if mat is not None:
            break
    if mat is None:
        raise last_err
    vp, wp = spl.meta["vp"], spl.meta["wp"]
    spl2 = Gadget(spl.n, spl.edges, spl.lists, spl.portals)
    left = serial_glue(spl, mat)
    g = serial_glue(left, Gadget(spl2.n, spl2.edges, spl2.lists,
                                 (spl2.portals[1], spl2.portals[0])))
    t_spl = cost_table(h, spl, "vd").table
    t_mat = mat.tables["vd"]
    t_rev = {(y, x): c for (x, y), c in t_spl.items()}
    junction = (vp, wp, X) if vp < wp else (wp, vp, X)
    t = serial_table(serial_table(t_spl, t_mat, junction, "vd"),
                     t_rev, junction, "vd")
    g.tables["vd"] = t
    alpha = 2 * spl.meta["alpha"] + mat.meta["alpha"]
    s = frozenset(s)
    for a, b in product(sorted(s) + [X], repeat=2):
        c = t[(a, b)]
        if (a, b) == (v, v):
            if c <= alpha:
                raise GadgetError("prohibitor fails to penalize (v,v)")
        elif c != alpha:
            raise GadgetError("prohibitor cost is not alpha")
    g.meta = {"alpha": alpha, "v": v, "s": s}
    return g


def build_s_prohibitor(h: TargetGraph, s) -> Gadget:
    """All (v,S)-prohibitors glued at shared portals; cost alpha = sum of
    base costs off the diagonal, more on every (v,v)."""
    s = frozenset(s)
    parts = [build_prohibitor(h, s, v) for v in sorted(s)]
    g = parts[0]
    t = dict(g.tables["vd"])
    for other in parts[1:]:
        g = parallel_glue(g, other)
        t = parallel_table(t, other.tables["vd"])
    g.tables["vd"] = t
    alpha = sum(p.meta["alpha"] for p in parts)
    for a, b in product(sorted(s) + [X], repeat=2):
        c = t[(a, b)]
        if a == b and a != X:
            if c <= alpha:
                raise GadgetError("S-prohibitor fails to penalize (v,v)")
        elif c != alpha:
            raise GadgetError("S-prohibitor cost is not alpha")
    g.meta = {"alpha": alpha, "s": s}
    return g


# ---------------------------------------------------------------------------
# ED calculus: pendants, normalization, composition


def _ed_table(h: TargetGraph, g: Gadget) -> dict:
    if "ed" not in g.tables:
        g.tables["ed"] = enumerate_cost_table(h, g, "ed")
    return g.tables["ed"]


def add_cost_pendants(h: TargetGraph, gadget: Gadget, portal_index: int,
                      a: int, k: int) -> Gadget:
    """k pendant vertices with list V(H)∖Γ(a) on one portal: +k exactly on
    table entries where that portal takes value a."""
    p = gadget.portals[portal_index]
    if a not in gadget.lists[p]:
        raise GadgetError("a must be in the portal's list")
    _check_incomparable(h, gadget.lists[p])
    pend = frozenset(range(h.n)) - _gamma(h, a)
    if not pend:
        raise GadgetError("no pendant list available: Γ(a) = V(H)")
    t = dict(_ed_table(h, gadget))
    lists = list(gadget.lists)
    edges = list(gadget.edges)
    n = gadget.n
    for _ in range(k):
        lists.append(pend)
        edges.append((p, n))
        n += 1
    g = Gadget(n, tuple(edges), tuple(lists), gadget.portals,
               meta=dict(gadget.meta))
    g.tables["ed"] = {key: c + (k if key[portal_index] == a else 0)
                      for key, c in t.items()}
    return g


def normalize_move(h: TargetGraph, move: Gadget) -> Gadget:
    """Equalize row minima so the move realizes {(u,v): v in J(u)}."""
    t = _ed_table(h, move)
    lin = sorted(move.lists[move.portals[0]])
    lout = sorted(move.lists[move.portals[1]])
    mins = {u: min(t[(u, v)] for v in lout) for u in lin}
    kstar = max(mins.values())
    g = move
    for u in lin:
        if mins[u] < kstar:
            g = add_cost_pendants(h, g, 0, u, kstar - mins[u])
    rel = {(u, v) for u in lin for v in lout
           if t[(u, v)] == mins[u]}
    tn = g.tables["ed"]
    k = min(tn.values())
    for u in lin:
        for v in lout:
            ok = tn[(u, v)] == k if (u, v) in rel else tn[(u, v)] > k
            if not ok:
                raise GadgetError("normalization failed to realize the move")
    g.meta = dict(move.meta)
    g.meta["normalized"] = True
    return g


def compose_moves(h: TargetGraph, m1: Gadget, m2: Gadget) -> Gadget:
    """Serial gluing of two normalized moves; tables compose by min-plus."""
    if m1.lists[m1.portals[1]] != m2.lists[m2.portals[0]]:
        raise GadgetError("junction lists differ")
    t1, t2 = _ed_table(h, m1), _ed_table(h, m2)
    g = serial_glue(m1, m2)
    junction = sorted(m1.lists[m1.portals[1]])
    g.tables["ed"] = serial_table(t1, t2, junction, "ed")
    return g


def force_from_allow(h: TargetGraph, move: Gadget) -> Gadget:
    """Turn a move that forces a->c and allows b->d into one forcing both:
    parallel doubling (detouring a portal edge if present) plus +1 pendants
    on input b and output c."""
    rep = move_report(h, move)
    lin = sorted(move.lists[move.portals[0]])
    lout = sorted(move.lists[move.portals[1]])
    if len(lin) != 2 or len(lout) != 2:
        raise GadgetError("force_from_allow expects a pair-to-pair move")
    forced = [u for u in lin if len(rep.jmap[u]) == 1]
    if len(forced) == 2 and rep.forced[lin[0]] != rep.forced[lin[1]]:
        return move
    if len(forced) != 1:
        raise GadgetError("move must force exactly one input")
    a = forced[0]
    (c,) = rep.jmap[a]
    b = next(u for u in lin if u != a)
    d = next(v for v in lout if v != c)
    if rep.jmap[b] != frozenset(lout):
        raise GadgetError("move does not allow b->d")
    _check_incomparable(h, frozenset(lin))
    _check_incomparable(h, frozenset(lout))
    g = move
    x, y = g.portals
    pe = tuple(sorted((x, y)))
    if pe in {tuple(sorted(e)) for e in g.edges}:
        ap = min(_gamma(h, a) - _gamma(h, b))
        bp = min(_gamma(h, b) - _gamma(h, a))
        edges = [e for e in g.edges if tuple(sorted(e)) != pe]
        lists = list(g.lists) + [frozenset({ap, bp}), frozenset(lin)]
        edges += [(x, g.n), (g.n, g.n + 1), (g.n + 1, y)]
        g = Gadget(g.n + 2, tuple(edges), tuple(lists), g.portals)
    t = _ed_table(h, g)
    mirror = Gadget(g.n, g.edges, g.lists, g.portals)
    doubled = parallel_glue(g, mirror)
    doubled.tables["ed"] = parallel_table(t, t)
    out = add_cost_pendants(h, doubled, 0, b, 1)
    out = add_cost_pendants(h, out, 1, c, 1)
    rep2 = move_report(h, out)
    if rep2.forced.get(a) != c or rep2.forced.get(b) != d:
        raise GadgetError("force_from_allow verification failed")
    return out


def adjacent_pair_move(h: TargetGraph, pair1, pair2) -> Gadget:
    """Forcing move between intersecting (or equal) incomparable pairs."""
    p1, p2 = frozenset(pair1), frozenset(pair2)
    _check_incomparable(h, p1)
    _check_incomparable(h, p2)
    shared = sorted(p1 & p2)
    if not shared:
        raise GadgetError("pairs must intersect")
    a = shared[0]
    b = min(p1 - {a}) if p1 != {a} else a
    c = min(p2 - {a}) if p2 != {a} else a
    if len(p1) != 2 or len(p2) != 2:
        raise GadgetError("need 2-vertex pairs")
    bp = min(_gamma(h, b) - _gamma(h, a))
    cp = min(_gamma(h, c) - _gamma(h, a))
    free = _gamma(h, a) - (_gamma(h, b) | _gamma(h, c))
    if free:
        ap = min(free)
        g = path_gadget([p1, {ap, bp}, p2])
        g = _ensure_forced(h, g, {a: a, b: c})
    else:
        ap = min(_gamma(h, a) - _gamma(h, b))
        app = min(_gamma(h, a) - _gamma(h, c))
        g = path_gadget([p1, {ap, bp}, {c, b}, {cp, app}, p2])
        g = _ensure_forced(h, g, {a: c, b: a})
    return g


def _ensure_forced(h: TargetGraph, g: Gadget, want: dict) -> Gadget:
    rep = move_report(h, g)
    if all(rep.forced.get(u) == v for u, v in want.items()):
        return g
    g2 = force_from_allow(h, g)
    rep2 = move_report(h, g2)
    if not all(rep2.forced.get(u) == v for u, v in want.items()):
        raise GadgetError("pair move fails to force the intended bijection")
    return g2


# ---------------------------------------------------------------------------
# Aux graphs and moving between arbitrary pairs


def incomparable_pairs(h: TargetGraph):
    return [frozenset((u, v)) for u in range(h.n) for v in range(u + 1, h.n)
            if incomparable(h, u, v)]


def _is_bad_pair(h: TargetGraph, pair) -> bool:
    a, b = sorted(pair)
    if h.has_loop(a) or h.has_loop(b) or h.has_edge(a, b):
        return False
    pa = _gamma(h, a) - _gamma(h, b)
    pb = _gamma(h, b) - _gamma(h, a)
    return all(h.has_loop(x) for x in pa | pb)


def build_aux(h: TargetGraph, variant: str = "full") -> nx.Graph:
    """Graph over incomparable pairs; edges join intersecting pairs.
    Variants: full; star (reflexive-only pairs); good (non-bad pairs)."""
    pairs = incomparable_pairs(h)
    if variant == "star":
        pairs = [p for p in pairs if all(h.has_loop(v) for v in p)]
    elif variant == "good":
        pairs = [p for p in pairs if not _is_bad_pair(h, p)]
    elif variant != "full":
        raise ValueError("variant must be full, star, or good")
    g = nx.Graph()
    g.add_nodes_from(pairs)
    for i, p in enumerate(pairs):
        for q in pairs[i + 1:]:
            if p & q:
                g.add_edge(p, q)
    return g


def _shift_gadget(h: TargetGraph, pair, reflexive_private: bool) -> tuple:
    """Path {a,b} - {a',b'} forcing each element to a private neighbor;
    returns (gadget, new pair)."""
    a, b = sorted(pair)
    pa = _gamma(h, a) - _gamma(h, b)
    pb = _gamma(h, b) - _gamma(h, a)
    if reflexive_private:
        pa = {x for x in pa if h.has_loop(x)}
    ap, bp = min(pa), min(pb)
    g = path_gadget([{a, b}, {ap, bp}])
    rep = move_report(h, g)
    if rep.forced.get(a) != ap or rep.forced.get(b) != bp:
        raise GadgetError("pair shift fails to force private neighbors")
    return g, frozenset((ap, bp))


def _move_chain(h: TargetGraph, pair1, pair2) -> list:
    """Primitive forcing moves composing to a move from pair1 to pair2."""
    p1, p2 = frozenset(pair1), frozenset(pair2)
    _check_incomparable(h, p1)
    _check_incomparable(h, p2)
    strong = analysis.is_strong_split(h)
    variant = "star" if strong else "good"
    aux = build_aux(h, variant)

    def in_variant(p):
        if variant == "star":
            return all(h.has_loop(v) for v in p)
        return not _is_bad_pair(h, p)

    chain = []
    start = p1
    if not in_variant(p1):
        g, start = _shift_gadget(h, p1, reflexive_private=not strong)
        chain.append(g)
    endchain = []
    end = p2
    if not in_variant(p2):
        g, end = _shift_gadget(h, p2, reflexive_private=not strong)
        rev = Gadget(g.n, g.edges, g.lists, (g.portals[1], g.portals[0]))
        rep = move_report(h, rev)
        if any(len(rep.jmap[u]) != 1 for u in rep.jmap):
            rev = force_from_allow(h, rev)
        endchain.append(rev)
    try:
        nodes = nx.shortest_path(aux, start, end)
    except (nx.NetworkXNoPath, nx.NodeNotFound) as exc:
        raise GadgetError(
            f"pairs not connected in Aux-{variant}: is H undecomposable?"
        ) from exc
    if len(nodes) == 1:
        chain.append(adjacent_pair_move(h, nodes[0], nodes[0]))
    for u, v in zip(nodes, nodes[1:]):
        chain.append(adjacent_pair_move(h, u, v))
    return chain + endchain


def move_between_pairs(h: TargetGraph, pair1, pair2) -> Gadget:
    """Composed move forcing a bijection from pair1 onto pair2."""
    chain = [normalize_move(h, m) for m in _move_chain(h, pair1, pair2)]
    g = chain[0]
    for m in chain[1:]:
        g = compose_moves(h, g, m)
    rep = move_report(h, g)
    vals = [rep.jmap[u] for u in sorted(frozenset(pair1))]
    if (any(len(s) != 1 for s in vals) or vals[0] == vals[1]
            or not set().union(*vals) <= set(pair2)):
        raise GadgetError("composed move is not a forced bijection")
    return g


def relax_input_list(h: TargetGraph, move: Gadget, s) -> Gadget:
    """Widen the input portal's list to S; re-verify the original forcing."""
    s = frozenset(s)
    old = move.lists[move.portals[0]]
    if not old <= s:
        raise GadgetError("S must contain the input list")
    _check_incomparable(h, s)
    rep_before = move_report(h, move)
    lists = list(move.lists)
    lists[move.portals[0]] = s
    g = Gadget(move.n, move.edges, tuple(lists), move.portals)
    rep_after = move_report(h, g)
    for u in sorted(old):
        if rep_after.jmap[u] != rep_before.jmap[u]:
            raise GadgetError("list relaxation changed the forcing")
    return g


def build_indicator(h: TargetGraph, s, a: int, b: int) -> tuple:
    """Indicator of S over {a,b}: one normalized forcing move per ordered
    pair of S, glued at a shared input portal.  Returns (gadget, I)."""
    s = sorted(frozenset(s))
    if len(s) < 2:
        raise GadgetError("need |S| >= 2")
    moves = []
    for x in s:
        for y in s:
            if x == y:
                continue
            chain = _move_chain(h, frozenset((x, y)), frozenset((a, b)))
            first = chain[0]
            if first.lists[first.portals[0]] != frozenset(s):
                first = relax_input_list(h, first, frozenset(s))
            parts = [normalize_move(h, m) for m in [first] + chain[1:]]
            m = parts[0]
            for nxt in parts[1:]:
                m = compose_moves(h, m, nxt)
            m = normalize_move(h, m)
            rep = move_report(h, m)
            if (len(rep.jmap[x]) != 1 or len(rep.jmap[y]) != 1
                    or rep.jmap[x] == rep.jmap[y]):
                raise GadgetError("indicator submove is not forcing")
            moves.append(((x, y), m))
    # glue all submoves at the shared input portal
    base_g = moves[0][1]
    g = Gadget(base_g.n, base_g.edges, base_g.lists,
               (base_g.portals[0], base_g.portals[1]))
    out_portals = [g.portals[1]]
    for _, m in moves[1:]:
        n, edges, lists, map2 = _glue(g, m, {m.portals[0]: g.portals[0]})
        out_portals.append(map2[m.portals[1]])
        g = Gadget(n, edges, lists, (g.portals[0],) + tuple(out_portals))
    portals = (g.portals[0],) + tuple(out_portals)
    g = Gadget(g.n, g.edges, g.lists, portals)
    # joint table: submoves are independent given the shared input
    tabs = [_ed_table(h, m) for _, m in moves]
    joint = {}
    for u in s:
        for outs in product((a, b), repeat=len(moves)):
            joint[(u,) + outs] = sum(t[(u, o)] for t, o in zip(tabs, outs))
    g.tables["ed"] = joint
    reps = [move_report(h, m) for _, m in moves]
    relation = set()
    for u in s:
        for outs in product((a, b), repeat=len(moves)):
            if all(o in r.jmap[u] for r, o in zip(reps, outs)):
                relation.add((u,) + outs)
    k = min(joint.values())
    for key, c in joint.items():
        ok = c == k if key in relation else c > k
        if not ok:
            raise GadgetError("indicator joint table does not realize I")
    for i, u in enumerate(s):
        iu = {key[1:] for key in relation if key[0] == u}
        if not iu:
            raise GadgetError("indicator axiom: I(u) empty")
        for v in s[i + 1:]:
            iv = {key[1:] for key in relation if key[0] == v}
            if iu & iv:
                raise GadgetError("indicator axiom: I(u), I(v) intersect")
    g.meta = {"s": tuple(s), "pair": (a, b)}
    return g, frozenset(relation)


# ---------------------------------------------------------------------------
# NEQ synthesis


def _path_close(state, lst, adj, cap):
    out = []
    for vec in state:
        new = [cap] * len(adj)
        for v in sorted(lst):
            best = cap
            for u, cu in enumerate(vec):
                if cu >= cap:
                    continue
                cand = cu + (0 if adj[u][v] else 1)
                best = min(best, cand)
            new[v] = min(best, cap)
        out.append(tuple(new))
    return tuple(out)


def synthesize_neq(h: TargetGraph, a: int, b: int,
                   budget: int = 6) -> Optional[Gadget]:
    """Bounded search for a path gadget (possibly mirror-doubled) that
    1-realizes NEQ(a,b).  Lists are drawn from the obstruction and its
    witnesses; deterministic first find."""
    obs = analysis.find_obstruction(h)
    if obs is None or not {a, b} <= set(obs.vertices):
        raise GadgetError("{a,b} must lie inside an obstruction")
    adj = [[h.has_edge(u, v) for v in range(h.n)] for u in range(h.n)]
    if h.has_edge(a, b) and not h.has_loop(a) and not h.has_loop(b):
        g = path_gadget([{a, b}, {a, b}])
        if verify_realizes(h, g, {(a, b), (b, a)}, omega=1):
            return g
    pool = sorted(set(obs.vertices) | set(obs.witnesses))
    cands = [frozenset({u}) for u in pool] + \
            [frozenset({u, v}) for i, u in enumerate(pool)
             for v in pool[i + 1:]]
    cap = 8

    def neq_ok(t):
        k = min(t.values())
        return (t[(a, b)] == k and t[(b, a)] == k
                and t[(a, a)] == k + 1 and t[(b, b)] == k + 1)

    start_a = tuple(0 if v == a else cap for v in range(h.n))
    start_b = tuple(0 if v == b else cap for v in range(h.n))
    frontier = {(start_a, start_b): []}
    for _ in range(budget):
        nxt = {}
        for state in sorted(frontier):
            path = frontier[state]
            for lst in cands:
                ns = _path_close(state, lst, adj, cap)
                if ns not in nxt:
                    nxt[ns] = path + [lst]
        frontier = nxt
        for state in sorted(frontier):
            closed = _path_close(state, frozenset({a, b}), adj, cap)
            t = {(a, x): closed[0][x] for x in (a, b)}
            t.update({(b, x): closed[1][x] for x in (a, b)})
            if max(t.values()) >= cap:
                continue
            lists = [frozenset({a, b})] + frontier[state] + \
                    [frozenset({a, b})]
            if neq_ok(t):
                g = path_gadget(lists)
                if verify_realizes(h, g, {(a, b), (b, a)}, omega=1):
                    return g
            ts = {k2: t[k2] + t[(k2[1], k2[0])] for k2 in t}
            if neq_ok(ts):
                g1 = path_gadget(lists)
                g2 = Gadget(g1.n, g1.edges, g1.lists,
                            (g1.portals[1], g1.portals[0]))
                g = parallel_glue(g1, g2)
                if verify_realizes(h, g, {(a, b), (b, a)}, omega=1):
                    return g
    return None


# ---------------------------------------------------------------------------
# file format


def format_gadget(g: Gadget) -> str:
    body = format_instance(g.to_instance())
    return body + "portal " + " ".join(str(p + 1) for p in g.portals) + "\n"


def parse_gadget(text: str, h: TargetGraph) -> Gadget:
    lines = text.splitlines()
    portal_lines = [ln for ln in lines if ln.strip().startswith("portal")]
    if len(portal_lines) != 1:
        raise ParseError("gadget needs exactly one portal line")
    rest = "\n".join(ln for ln in lines if not ln.strip().startswith("portal"))
    inst = parse_instance(rest, h)
    portals = tuple(int(t) - 1 for t in portal_lines[0].split()[1:])
    return Gadget(inst.n, tuple(inst.edges), tuple(inst.lists), portals)
