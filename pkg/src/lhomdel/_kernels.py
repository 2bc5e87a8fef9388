"""Hot enumeration kernels.

Three workloads dominate runtime: exhaustive assignment scans (the oracles),
per-portal-tuple assignment scans (gadget cost tables), and the scan over all
induced subgraphs behind the i* invariant.  Each kernel has a numba @njit
build and a fallback (vectorized numpy for the assignment scans, plain Python
for the subset scan).  Set LHOM_NO_NUMBA=1 to force the fallbacks.
"""

from __future__ import annotations

import os

import numpy as np

INF = np.int64(1) << 60

_DISABLED = os.environ.get("LHOM_NO_NUMBA", "") not in ("", "0")

if not _DISABLED:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover
        _DISABLED = True

if _DISABLED:
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


def using_numba() -> bool:
    return not _DISABLED


# ---------------------------------------------------------------------------
# assignment scans
#
# Variables 0..nv-1 each pick a digit < radix[j]; val[j, d] is the H-vertex
# (or nh = deleted) for that digit.  base[j, d] is the digit's own cost.
# adj is (nh+1) x (nh+1) with the deletion row/column all-True, so a deleted
# endpoint never violates an edge.  In vd mode a violated edge kills the
# assignment; in ed mode it costs 1.


def _scan_best_loop(radix, val, base, eu, ev, adj, ed_mode):
    nv = radix.shape[0]
    m = eu.shape[0]
    digits = np.zeros(nv, dtype=np.int64)
    best = INF
    best_digits = np.zeros(nv, dtype=np.int64)
    total = np.int64(1)
    for j in range(nv):
        total *= radix[j]
    count = np.int64(0)
    while count < total:
        cost = np.int64(0)
        ok = True
        for j in range(nv):
            cost += base[j, digits[j]]
        for e in range(m):
            x = val[eu[e], digits[eu[e]]]
            y = val[ev[e], digits[ev[e]]]
            if not adj[x, y]:
                if ed_mode:
                    cost += 1
                else:
                    ok = False
                    break
        if ok and cost < best:
            best = cost
            for j in range(nv):
                best_digits[j] = digits[j]
        # odometer, rightmost digit fastest (leftmost most significant)
        count += 1
        for j in range(nv - 1, -1, -1):
            digits[j] += 1
            if digits[j] < radix[j]:
                break
            digits[j] = 0
    return best, best_digits


def _scan_table_loop(radix, val, base, eu, ev, adj, ed_mode, nportal):
    nv = radix.shape[0]
    m = eu.shape[0]
    tsize = np.int64(1)
    for j in range(nportal):
        tsize *= radix[j]
    out = np.full(tsize, INF, dtype=np.int64)
    digits = np.zeros(nv, dtype=np.int64)
    total = np.int64(1)
    for j in range(nv):
        total *= radix[j]
    count = np.int64(0)
    cell_stride = total // tsize if tsize > 0 else np.int64(1)
    while count < total:
        cost = np.int64(0)
        ok = True
        for j in range(nv):
            cost += base[j, digits[j]]
        for e in range(m):
            x = val[eu[e], digits[eu[e]]]
            y = val[ev[e], digits[ev[e]]]
            if not adj[x, y]:
                if ed_mode:
                    cost += 1
                else:
                    ok = False
                    break
        if ok:
            cell = count // cell_stride
            if cost < out[cell]:
                out[cell] = cost
        count += 1
        for j in range(nv - 1, -1, -1):
            digits[j] += 1
            if digits[j] < radix[j]:
                break
            digits[j] = 0
    return out


_scan_best_nb = njit(cache=True)(_scan_best_loop)
_scan_table_nb = njit(cache=True)(_scan_table_loop)


def _chunk_costs(idx, radix, val, base, eu, ev, adj, ed_mode, place):
    """Vectorized cost of a chunk of assignment indices (numpy fallback)."""
    nv = radix.shape[0]
    digits = (idx[:, None] // place[None, :]) % radix[None, :]
    cost = base[np.arange(nv)[None, :], digits].sum(axis=1)
    if eu.shape[0]:
        hs = val[np.arange(nv)[None, :], digits]
        viol = ~adj[hs[:, eu], hs[:, ev]]
        if ed_mode:
            cost = cost + viol.sum(axis=1)
        else:
            cost = np.where(viol.any(axis=1), INF, cost)
    return cost


def _places(radix):
    nv = radix.shape[0]
    place = np.ones(nv, dtype=np.int64)
    for j in range(nv - 2, -1, -1):
        place[j] = place[j + 1] * radix[j + 1]
    return place


def _scan_best_np(radix, val, base, eu, ev, adj, ed_mode, chunk=1 << 18):
    total = int(np.prod(radix, dtype=np.int64)) if radix.size else 1
    place = _places(radix)
    best = INF
    best_idx = -1
    for lo in range(0, total, chunk):
        idx = np.arange(lo, min(lo + chunk, total), dtype=np.int64)
        cost = _chunk_costs(idx, radix, val, base, eu, ev, adj, ed_mode,
                            place)
        j = int(np.argmin(cost))
        if cost[j] < best:
            best = np.int64(cost[j])
            best_idx = lo + j
    if best_idx < 0:
        return INF, np.zeros(radix.shape[0], dtype=np.int64)
    return best, (best_idx // place) % radix


def _scan_table_np(radix, val, base, eu, ev, adj, ed_mode, nportal,
                   chunk=1 << 18):
    total = int(np.prod(radix, dtype=np.int64)) if radix.size else 1
    tsize = int(np.prod(radix[:nportal], dtype=np.int64)) if nportal else 1
    stride = total // tsize
    place = _places(radix)
    out = np.full(tsize, INF, dtype=np.int64)
    for lo in range(0, total, chunk):
        idx = np.arange(lo, min(lo + chunk, total), dtype=np.int64)
        cost = _chunk_costs(idx, radix, val, base, eu, ev, adj, ed_mode,
                            place)
        np.minimum.at(out, idx // stride, cost)
    return out


def scan_best(radix, val, base, eu, ev, adj, ed_mode):
    """Min-cost assignment over the full mixed-radix space.

    Returns (cost, digits); digits is the lexicographically first minimizer
    (leftmost variable most significant).  cost == INF means no feasible
    assignment (vd mode with every assignment violating some edge, or an
    empty radix).
    """
    args = (np.ascontiguousarray(radix, dtype=np.int64),
            np.ascontiguousarray(val, dtype=np.int64),
            np.ascontiguousarray(base, dtype=np.int64),
            np.ascontiguousarray(eu, dtype=np.int64),
            np.ascontiguousarray(ev, dtype=np.int64),
            np.ascontiguousarray(adj, dtype=np.bool_),
            ed_mode)
    if _DISABLED:
        return _scan_best_np(*args)
    return _scan_best_nb(*args)


def scan_table(radix, val, base, eu, ev, adj, ed_mode, nportal):
    """Min cost per portal digit tuple; portals are variables 0..nportal-1."""
    args = (np.ascontiguousarray(radix, dtype=np.int64),
            np.ascontiguousarray(val, dtype=np.int64),
            np.ascontiguousarray(base, dtype=np.int64),
            np.ascontiguousarray(eu, dtype=np.int64),
            np.ascontiguousarray(ev, dtype=np.int64),
            np.ascontiguousarray(adj, dtype=np.bool_),
            ed_mode, nportal)
    if _DISABLED:
        return _scan_table_np(*args)
    return _scan_table_nb(*args)


# ---------------------------------------------------------------------------
# induced-subgraph scan for i*
#
# Neighborhoods are int64 bitmasks; all of it is written against plain
# integer ops so the same source compiles under numba and runs as the
# fallback when numba is off.


def _pop(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


def _low(x):
    i = 0
    while not (x >> i) & 1:
        i += 1
    return i


_pop_nb = njit(cache=True)(_pop)
_low_nb = njit(cache=True)(_low)


def _make_decomposable(_pop, _low):
    def decomposable(nb, refl, n, S):
        R = refl & S
        I = S & ~refl
        # strong split = reflexive part is a clique, irreflexive part is
        # an independent set
        ss = True
        t = R
        while t:
            v = _low(t)
            t &= t - 1
            if (nb[v] & S) & R != R:
                ss = False
        t = I
        while t:
            v = _low(t)
            t &= t - 1
            if nb[v] & S & I:
                ss = False
        if not ss:
            # grow A from irreflexive edges and reflexive non-edges
            A = 0
            t = I
            while t:
                v = _low(t)
                t &= t - 1
                if nb[v] & S & I:
                    A |= 1 << v
            t = R
            while t:
                v = _low(t)
                t &= t - 1
                miss = R & ~(nb[v] & S)
                if miss:
                    A |= miss | (1 << v)
            changed = True
            while changed:
                changed = False
                t = I & ~A
                while t:
                    v = _low(t)
                    t &= t - 1
                    if nb[v] & S & A:
                        A |= 1 << v
                        changed = True
                t = R & ~A
                while t:
                    v = _low(t)
                    t &= t - 1
                    if A & ~(nb[v] & S):
                        A |= 1 << v
                        changed = True
            return A != S
        # strong split case
        if _pop(S) < 2:
            return False
        t = S
        while t:
            v = _low(t)
            t &= t - 1
            if nb[v] & S == S:   # universal: ({rest}, {v}, {})
                return True
            if nb[v] & S == 0:   # isolated: ({rest}, {}, {v})
                return True
        # B starts from the maximal vertices, then alternate the two rules
        B = 0
        t = S
        while t:
            v = _low(t)
            t &= t - 1
            mx = True
            t2 = S & ~(1 << v)
            while t2:
                u = _low(t2)
                t2 &= t2 - 1
                gv = nb[v] & S
                gu = nb[u] & S
                if gv & ~gu == 0 and gv != gu:
                    mx = False
            if mx:
                B |= 1 << v
        C = 0
        changed = True
        while changed:
            changed = False
            t = I & ~B & ~C
            while t:
                v = _low(t)
                t &= t - 1
                if B & ~(nb[v] & S):
                    C |= 1 << v
                    changed = True
            t = R & ~B
            while t:
                v = _low(t)
                t &= t - 1
                if nb[v] & S & C:
                    B |= 1 << v
                    changed = True
        return (B | C) != S

    return decomposable


def _make_has_obstruction(_pop, _low):
    def has_obstruction(nb, refl, n, S):
        I = S & ~refl
        t = I
        while t:
            v = _low(t)
            t &= t - 1
            if nb[v] & S & I:
                return True      # irreflexive edge
        # incomparable pairs under the induced neighborhoods
        inc = np.zeros(n, dtype=np.int64)
        t = S
        while t:
            v = _low(t)
            t &= t - 1
            t2 = t
            while t2:
                u = _low(t2)
                t2 &= t2 - 1
                gv = nb[v] & S
                gu = nb[u] & S
                if gv & ~gu != 0 and gu & ~gv != 0:
                    inc[v] |= 1 << u
                    inc[u] |= 1 << v
        t = S
        while t:
            a = _low(t)
            t &= t - 1
            t2 = t & inc[a]
            while t2:
                b = _low(t2)
                t2 &= t2 - 1
                t3 = t2 & inc[a] & inc[b]
                while t3:
                    c = _low(t3)
                    t3 &= t3 - 1
                    ga = nb[a] & S
                    gb = nb[b] & S
                    gc = nb[c] & S
                    if (ga & ~gb & ~gc and gb & ~ga & ~gc
                            and gc & ~ga & ~gb):
                        return True   # private neighbors
                    if (ga & gb & ~gc and ga & gc & ~gb
                            and gb & gc & ~ga):
                        return True   # co-private neighbors
        return False

    return has_obstruction


def _make_max_inc(_pop, _low):
    def max_incomparable_masked(nb, n, S):
        inc = np.zeros(n, dtype=np.int64)
        t = S
        while t:
            v = _low(t)
            t &= t - 1
            t2 = t
            while t2:
                u = _low(t2)
                t2 &= t2 - 1
                gv = nb[v] & S
                gu = nb[u] & S
                if gv & ~gu != 0 and gu & ~gv != 0:
                    inc[v] |= 1 << u
                    inc[u] |= 1 << v
        # branch and bound max clique in the incomparability graph
        best = 1
        cap = n * n + 2
        st_cand = np.zeros(cap, dtype=np.int64)
        st_size = np.zeros(cap, dtype=np.int64)
        st_cand[0] = S
        st_size[0] = 0
        top = 1
        while top > 0:
            top -= 1
            cand = st_cand[top]
            size = st_size[top]
            if size > best:
                best = size
            while cand:
                if size + _pop(cand) <= best:
                    break
                v = _low(cand)
                cand &= cand - 1
                st_cand[top] = inc[v] & cand
                st_size[top] = size + 1
                top += 1
        return best

    return max_incomparable_masked


def _make_scan(_pop, has_obstruction, decomposable, max_incomparable_masked):
    def scan(nb, refl, n):
        best = 0
        best_mask = 0
        full = (1 << n) - 1
        for S in range(1, full + 1):
            if _pop(S) <= best:
                continue
            if not has_obstruction(nb, refl, n, S):
                continue
            if decomposable(nb, refl, n, S):
                continue
            i = max_incomparable_masked(nb, n, S)
            if i > best:
                best = i
                best_mask = S
        return best, best_mask

    return scan


_decomposable_py = _make_decomposable(_pop, _low)
_has_obstruction_py = _make_has_obstruction(_pop, _low)
_max_inc_py = _make_max_inc(_pop, _low)
_scan_py = _make_scan(_pop, _has_obstruction_py, _decomposable_py, _max_inc_py)

if not _DISABLED:
    _decomposable_nb = njit(cache=True)(_make_decomposable(_pop_nb, _low_nb))
    _has_obstruction_nb = njit(cache=True)(_make_has_obstruction(_pop_nb, _low_nb))
    _max_inc_nb = njit(cache=True)(_make_max_inc(_pop_nb, _low_nb))
    _scan_nb = njit(cache=True)(_make_scan(
        _pop_nb, _has_obstruction_nb, _decomposable_nb, _max_inc_nb))


def subset_scan(nb, refl, n):
    """Max i(H[S]) over undecomposable S containing an obstruction.

    Returns (best, subset_mask); (0, 0) if no subset qualifies.  The witness
    is the first qualifying subset (ascending mask order) at the max.
    """
    nb = np.ascontiguousarray(nb, dtype=np.int64)
    if _DISABLED:
        return _scan_py(nb, refl, n)
    return _scan_nb(nb, np.int64(refl), np.int64(n))


def fast_decomposable(nb, refl, n, S) -> bool:
    """Algorithmic decomposability test on the induced subgraph S."""
    nb = np.ascontiguousarray(nb, dtype=np.int64)
    if _DISABLED:
        return _decomposable_py(nb, refl, n, S)
    return bool(_decomposable_nb(nb, np.int64(refl), np.int64(n), np.int64(S)))
