"""Tree decompositions: validation, nice form with explicit introduce-edge
nodes, PACE-format I/O, hub cores, and elimination-order builders (min-fill
heuristic, exact by subset DP for small graphs)."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .graphs import Instance, ParseError


@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple  # tuple of frozensets of G vertices
    edges: tuple  # tree edges over bag indices

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=1) - 1


@dataclass
class NiceNode:
    kind: str  # "leaf" | "introduce" | "introduce_edge" | "forget" | "join"
    bag: frozenset
    payload: object  # vertex, edge, or None
    children: list = field(default_factory=list)


@dataclass(frozen=True)
class HubCore:
    q: frozenset
    sigma: int
    delta: int


def validate_td(g: Instance, td: TreeDecomposition) -> int:
    """Return the width, or raise ValueError naming a violating vertex/edge."""
    nb = len(td.bags)
    for a, b in td.edges:
        if not (0 <= a < nb and 0 <= b < nb):
            raise ValueError(f"tree edge ({a}, {b}) out of range")
    # tree shape: connected and acyclic
    adj = {i: [] for i in range(nb)}
    for a, b in td.edges:
        adj[a].append(b)
        adj[b].append(a)
    if nb:
        seen = {0}
        stack = [0]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != nb or len(td.edges) != nb - 1:
            raise ValueError("bag graph is not a tree")
    occ = {v: [i for i, bag in enumerate(td.bags) if v in bag]
           for v in range(g.n)}
    for v in range(g.n):
        if not occ[v]:
            raise ValueError(f"vertex {v} is in no bag")
        inside = set(occ[v])
        seen = {occ[v][0]}
        stack = [occ[v][0]]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y in inside and y not in seen:
                    seen.add(y)
                    stack.append(y)
        if seen != inside:
            raise ValueError(f"bags containing vertex {v} are disconnected")
    for u, v in g.edges:
        if not any(u in bag and v in bag for bag in td.bags):
            raise ValueError(f"edge ({u}, {v}) is in no bag")
    return td.width


def make_nice(td: TreeDecomposition, edges) -> list[NiceNode]:
    """Rooted nice form: list of NiceNode in bottom-up (post-) order, root
    last with an empty bag.  Each edge of `edges` gets exactly one
    introduce-edge node, placed above the first node whose bag holds both
    endpoints."""
    nodes: list[NiceNode] = []

    def emit(kind, bag, payload, children):
        nodes.append(NiceNode(kind, frozenset(bag), payload, list(children)))
        return len(nodes) - 1

    def chain_to(top, have, want):
        """Forget have∖want then introduce want∖have, one vertex per node."""
        cur = set(have)
        for v in sorted(have - want):
            cur.discard(v)
            top = emit("forget", cur, v, [top])
        for v in sorted(want - have):
            cur.add(v)
            top = emit("introduce", cur, v, [top])
        return top

    nb = len(td.bags)
    adj = {i: [] for i in range(nb)}
    for a, b in td.edges:
        adj[a].append(b)
        adj[b].append(a)

    def build(i, parent) -> int:
        kids = [c for c in sorted(adj[i]) if c != parent]
        bag = td.bags[i]
        if not kids:
            top = emit("leaf", frozenset(), None, [])
            return chain_to(top, frozenset(), bag)
        tops = [chain_to(build(c, i), td.bags[c], bag) for c in kids]
        top = tops[0]
        for other in tops[1:]:
            top = emit("join", bag, None, [top, other])
        return top

    if nb == 0:
        emit("leaf", frozenset(), None, [])
    else:
        root = build(0, -1)
        chain_to(root, td.bags[0], frozenset())

    # attach one introduce-edge node per G edge, above the first (post-order)
    # node whose bag contains both endpoints
    parent = {}
    for i, nd in enumerate(nodes):
        for c in nd.children:
            parent[c] = i
    for u, v in sorted(tuple(sorted(e)) for e in edges):
        spot = next((i for i, nd in enumerate(nodes)
                     if u in nd.bag and v in nd.bag), None)
        if spot is None:
            raise ValueError(f"edge ({u}, {v}) is in no bag")
        j = emit("introduce_edge", nodes[spot].bag, (u, v), [spot])
        if spot in parent:
            p = parent[spot]
            nodes[p].children[nodes[p].children.index(spot)] = j
            parent[j] = p
        parent[spot] = j

    # re-serialize in post-order so children always precede parents
    roots = [i for i in range(len(nodes)) if i not in parent]
    assert len(roots) == 1
    order = []
    stack = [(roots[0], False)]
    while stack:
        i, done = stack.pop()
        if done:
            order.append(i)
        else:
            stack.append((i, True))
            for c in nodes[i].children:
                stack.append((c, False))
    renum = {old: new for new, old in enumerate(order)}
    out = []
    for old in order:
        nd = nodes[old]
        out.append(NiceNode(nd.kind, nd.bag, nd.payload,
                            [renum[c] for c in nd.children]))
    assert out[-1].bag == frozenset()
    return out


# ---------------------------------------------------------------------------
# builders: elimination orders -> tree decompositions


def _td_from_order(n, edges, order) -> TreeDecomposition:
    nbhd = {v: set() for v in range(n)}
    for u, v in edges:
        if u != v:
            nbhd[u].add(v)
            nbhd[v].add(u)
    pos = {v: i for i, v in enumerate(order)}
    bags = []
    link = {}  # eliminated vertex -> its bag index
    for v in order:
        later = {w for w in nbhd[v] if pos[w] > pos[v]}
        bags.append(frozenset({v} | later))
        link[v] = len(bags) - 1
        for a in later:  # fill-in
            nbhd[a].update(later - {a})
            nbhd[a].discard(a)
    tedges = []
    for v in order:
        later = sorted(bags[link[v]] - {v}, key=lambda w: pos[w])
        if later:
            tedges.append((link[v], link[later[0]]))
        elif link[v] + 1 < len(bags):
            tedges.append((link[v], link[v] + 1))
    if not bags:
        bags = [frozenset()]
    return TreeDecomposition(tuple(bags), tuple(tedges))


def _min_fill_order(n, edges):
    nbhd = {v: set() for v in range(n)}
    for u, v in edges:
        if u != v:
            nbhd[u].add(v)
            nbhd[v].add(u)
    alive = set(range(n))
    order = []
    while alive:
        best, best_fill = None, None
        for v in sorted(alive):
            ns = nbhd[v] & alive
            fill = sum(1 for a in ns for b in ns
                       if a < b and b not in nbhd[a])
            if best_fill is None or fill < best_fill:
                best, best_fill = v, fill
        ns = nbhd[best] & alive
        for a in ns:
            nbhd[a].update(ns - {a})
        alive.discard(best)
        order.append(best)
    return order


def _exact_order(n, edges):
    """Optimal elimination order by DP over vertex subsets (n <= ~13)."""
    nbhd = [0] * n
    for u, v in edges:
        if u != v:
            nbhd[u] |= 1 << v
            nbhd[v] |= 1 << u

    def q(s, v):
        # neighbors of v outside s reachable through s (component closure)
        comp = 1 << v
        frontier = nbhd[v] & s
        while frontier:
            comp |= frontier
            nxt = 0
            m = frontier
            while m:
                w = (m & -m).bit_length() - 1
                m &= m - 1
                nxt |= nbhd[w]
            frontier = nxt & s & ~comp
        reach = 0
        m = comp
        while m:
            w = (m & -m).bit_length() - 1
            m &= m - 1
            reach |= nbhd[w]
        return bin(reach & ~s & ~(1 << v)).count("1")

    full = (1 << n) - 1
    best = {0: 0}
    pick = {}
    for s in range(1, full + 1):
        b, ch = None, None
        m = s
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            rest = s & ~(1 << v)
            cand = max(best[rest], q(rest, v))
            if b is None or cand < b or (cand == b and v < ch):
                b, ch = cand, v
        best[s] = b
        pick[s] = ch
    order = []
    s = full
    while s:
        v = pick[s]
        order.append(v)
        s &= ~(1 << v)
    order.reverse()
    return order


def build_td(g: Instance) -> TreeDecomposition:
    """Heuristic min-fill order; exact elimination order for small graphs."""
    order = (_exact_order(g.n, g.edges) if 0 < g.n <= 12
             else _min_fill_order(g.n, g.edges))
    td = _td_from_order(g.n, g.edges, order)
    validate_td(g, td)
    return td


# ---------------------------------------------------------------------------
# hub cores


def validate_core(g: Instance, core: HubCore) -> None:
    if not core.q <= set(range(g.n)):
        raise ValueError("core vertices out of range")
    adj = {v: set() for v in range(g.n)}
    for u, v in g.edges:
        adj[u].add(v)
        adj[v].add(u)
    seen = set(core.q)
    for root in range(g.n):
        if root in seen:
            continue
        comp = [root]
        seen.add(root)
        stack = [root]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen and y not in core.q:
                    seen.add(y)
                    comp.append(y)
                    stack.append(y)
        if len(comp) > core.sigma:
            raise ValueError(f"component of size {len(comp)} exceeds sigma")
        touched = set().union(*(adj[x] for x in comp)) & core.q
        if len(touched) > core.delta:
            raise ValueError(
                f"component with {len(touched)} core neighbors exceeds delta")


def core_to_td(g: Instance, core: HubCore) -> TreeDecomposition:
    """Star of bags: center Q, one leaf Q ∪ C_i per component of G−Q."""
    validate_core(g, core)
    adj = {v: set() for v in range(g.n)}
    for u, v in g.edges:
        adj[u].add(v)
        adj[v].add(u)
    bags = [frozenset(core.q)]
    seen = set(core.q)
    for root in range(g.n):
        if root in seen:
            continue
        comp = {root}
        seen.add(root)
        stack = [root]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen and y not in core.q:
                    seen.add(y)
                    comp.add(y)
                    stack.append(y)
        bags.append(frozenset(core.q | comp))
    tedges = tuple((0, i) for i in range(1, len(bags)))
    td = TreeDecomposition(tuple(bags), tedges)
    if g.n:
        validate_td(g, td)
        assert td.width < len(core.q) + max(core.sigma, 1)
    return td


# ---------------------------------------------------------------------------
# file formats


def parse_td(text: str) -> TreeDecomposition:
    """PACE format: `s td <#bags> <width+1> <n>`, `b <i> <v...>`, edges."""
    nbags = None
    bags = {}
    tedges = []
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        toks = line.split()
        if toks[0] == "s":
            if nbags is not None or toks[1] != "td" or len(toks) != 5:
                raise ParseError(f"line {ln}: bad solution line")
            nbags = int(toks[2])
        elif toks[0] == "b":
            if nbags is None:
                raise ParseError(f"line {ln}: bag before solution line")
            i = int(toks[1])
            if not 1 <= i <= nbags or i in bags:
                raise ParseError(f"line {ln}: bad bag index {i}")
            bags[i] = frozenset(int(t) - 1 for t in toks[2:])
        else:
            if len(toks) != 2:
                raise ParseError(f"line {ln}: bad tree edge")
            tedges.append((int(toks[0]) - 1, int(toks[1]) - 1))
    if nbags is None:
        raise ParseError("missing solution line")
    return TreeDecomposition(
        tuple(bags.get(i, frozenset()) for i in range(1, nbags + 1)),
        tuple(tedges))


def format_td(td: TreeDecomposition, n: int) -> str:
    lines = [f"s td {len(td.bags)} {td.width + 1} {n}"]
    for i, bag in enumerate(td.bags, 1):
        lines.append(" ".join(["b", str(i)] + [str(v + 1)
                                               for v in sorted(bag)]))
    for a, b in td.edges:
        lines.append(f"{a + 1} {b + 1}")
    return "\n".join(lines) + "\n"


def parse_core(text: str) -> HubCore:
    """`q <p> <sigma> <delta>` followed by p vertex ids (1-indexed)."""
    toks = []
    header = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if header is None:
            if parts[0] != "q" or len(parts) != 4:
                raise ParseError("bad core header")
            header = tuple(int(t) for t in parts[1:])
        else:
            toks.extend(int(t) - 1 for t in parts)
    if header is None:
        raise ParseError("missing core header")
    p, sigma, delta = header
    if len(toks) != p:
        raise ParseError(f"expected {p} core vertices, got {len(toks)}")
    return HubCore(frozenset(toks), sigma, delta)


def format_core(core: HubCore) -> str:
    body = " ".join(str(v + 1) for v in sorted(core.q))
    out = f"q {len(core.q)} {core.sigma} {core.delta}\n"
    return out + (body + "\n" if body else "")
