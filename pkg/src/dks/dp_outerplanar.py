"""Exact densest-k-subgraph DP for outerplanar graphs.

Per 2-connected block, the unique outer (Hamiltonian) cycle is found by
degree-2 elimination, chords are arranged into a laminar span tree, and
tables indexed by (endpoint bits, exact subgraph size) are folded from
the leaves up.  Blocks hanging off cutpoints are collapsed into
per-cutpoint vectors and attached at the leaf where the cutpoint sits.

A note on the closing merge (the one that reunites the two ends of the
cycle, producing a table whose two labels coincide): the size arithmetic
must treat the coincident endpoint as shared whenever both bits are set
— not only when the middle vertex is also included — and the label edge
of the two operands is then a single physical edge that both operand
tables have already counted, so one copy must be subtracted.  Both
corrections are exercised by unit tests against hand-computed tables;
`variant="pseudocode"` keeps the weaker size rule for comparison (it can
leave individual cells undefined but never changes the extracted
optimum).
"""

from __future__ import annotations

import heapq
from collections import defaultdict
from dataclasses import dataclass, field

from dks.errors import BoundaryMismatch, NotOuterplanar
from dks.graph import Graph
from dks.tables import convolve_max_plus, convolve_shared_vertex, vector_max


@dataclass
class EdgeTable:
    """DP table for a contiguous span of a block's outer cycle.

    rows[(bx << 1) | by][kp] is the best real-edge count over subsets of
    the span's vertices with exactly kp vertices where bx/by fix whether
    the two span endpoints are included; None marks impossible cells.
    counts_label_edge is True when row values already include the edge
    (x, y) itself.
    """

    x: int
    y: int
    vcount: int
    rows: list[list[int | None]]
    counts_label_edge: bool


def leaf_table(x: int, y: int, k: int) -> EdgeTable:
    cap = min(k, 2)
    rows: list[list[int | None]] = [[None] * (cap + 1) for _ in range(4)]
    rows[0][0] = 0
    if cap >= 1:
        rows[1][1] = 0
        rows[2][1] = 0
    if cap >= 2:
        rows[3][2] = 1
    return EdgeTable(x, y, 2, rows, True)


def merge_tables(t1: EdgeTable, t2: EdgeTable, g: Graph, k: int,
                 variant: str = "prose") -> EdgeTable:
    """Combine span tables T_(x,y) and T_(y,z) into T_(x,z).

    The spans share vertex y; when x == z the cycle has closed and they
    share x as well.  A real edge (x, z) is credited here, exactly once,
    in the rows where both bits are set.
    """
    if t1.y != t2.x:
        raise BoundaryMismatch(f"cannot merge T_({t1.x},{t1.y}) with T_({t2.x},{t2.y})")
    x, z = t1.x, t2.y
    closing = x == z
    vcount = t1.vcount + t2.vcount - 1 - (1 if closing else 0)
    cap = min(k, vcount)
    rows: list[list[int | None]] = [[None] * (cap + 1) for _ in range(4)]
    chord_real = (not closing) and g.has_edge(x, z)

    for bx in (0, 1):
        for bz in (0, 1):
            if closing and bx != bz:
                continue
            out = rows[(bx << 1) | bz]
            for by in (0, 1):
                r1 = t1.rows[(bx << 1) | by]
                r2 = t2.rows[(by << 1) | bz]
                if variant == "prose":
                    shared = 1 if (closing and bx) else 0
                else:  # the weaker size rule; see module docstring
                    shared = 1 if (closing and bx and by) else 0
                bonus = 1 if (chord_real and bx and bz) else 0
                if (closing and bx and by
                        and t1.counts_label_edge and t2.counts_label_edge):
                    bonus -= 1  # both operands counted the same label edge
                base = -by - shared
                pairs2 = [(kz, v2) for kz, v2 in enumerate(r2) if v2 is not None]
                for kx, v1 in enumerate(r1):
                    if v1 is None:
                        continue
                    for kz, v2 in pairs2:
                        kp = kx + kz + base
                        if kp < 0 or kp > cap:
                            continue
                        val = v1 + v2 + bonus
                        cur = out[kp]
                        if cur is None or val > cur:
                            out[kp] = val
    return EdgeTable(x, z, vcount, rows, chord_real)


def attach_hang(t: EdgeTable, side: int, hang: tuple, k: int) -> EdgeTable:
    """Fold a cutpoint's hanging vector pair into a leaf table.

    hang = (D0, D1, dcount): best-value vectors over the subtrees hanging
    off the cutpoint, without/with the cutpoint itself, and their total
    vertex count.  side 0 attaches at label x, side 1 at label y.
    """
    d0, d1, dcount = hang
    vcount = t.vcount + dcount - 1
    cap = min(k, vcount)
    rows: list[list[int | None]] = [[None] * (cap + 1) for _ in range(4)]
    for bx in (0, 1):
        for by in (0, 1):
            r = t.rows[(bx << 1) | by]
            out = rows[(bx << 1) | by]
            b_side = bx if side == 0 else by
            d = d1 if b_side else d0
            for k1, v1 in enumerate(r):
                if v1 is None:
                    continue
                for k2, v2 in enumerate(d):
                    if v2 is None:
                        continue
                    kp = k1 + k2 - b_side
                    if kp < 0 or kp > cap:
                        continue
                    cur = out[kp]
                    if cur is None or v1 + v2 > cur:
                        out[kp] = v1 + v2
    return EdgeTable(t.x, t.y, vcount, rows, t.counts_label_edge)


# ------------------------------------------------------------ outer cycle


def block_outer_cycle(vertices: list[int], edges: list[tuple[int, int]]) -> list[int]:
    """Hamiltonian outer cycle of a 2-connected outerplanar block.

    Repeatedly strips the smallest degree-2 vertex (patching its two
    neighbours with a virtual edge), then rebuilds the cycle by
    reinserting vertices in reverse; a reinsertion whose neighbours are
    not adjacent on the current cycle certifies non-outerplanarity.
    """
    n = len(vertices)
    if len(edges) > 2 * n - 3:
        raise NotOuterplanar(f"block has {len(edges)} edges on {n} vertices")
    adj: dict[int, set[int]] = {v: set() for v in vertices}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)

    heap = [v for v in vertices if len(adj[v]) == 2]
    heapq.heapify(heap)
    alive = set(vertices)
    removed: list[tuple[int, int, int]] = []
    while len(alive) > 3:
        while heap and (heap[0] not in alive or len(adj[heap[0]]) != 2):
            heapq.heappop(heap)
        if not heap:
            raise NotOuterplanar("no degree-2 vertex to strip")
        v = heapq.heappop(heap)
        a, b = sorted(adj[v])
        alive.discard(v)
        adj[a].discard(v)
        adj[b].discard(v)
        if b not in adj[a]:
            adj[a].add(b)
            adj[b].add(a)
        for w in (a, b):
            if len(adj[w]) == 2:
                heapq.heappush(heap, w)
        if len(adj[a]) < 2 or len(adj[b]) < 2:
            raise NotOuterplanar("block is not 2-connected")
        removed.append((v, a, b))

    tri = sorted(alive)
    for i in range(3):
        if tri[(i + 1) % 3] not in adj[tri[i]]:
            raise NotOuterplanar("reduction did not end in a triangle")

    # cycle as a doubly linked ring, for O(1) insertion
    nxt = {tri[0]: tri[1], tri[1]: tri[2], tri[2]: tri[0]}
    prv = {v: u for u, v in nxt.items()}
    for v, a, b in reversed(removed):
        if nxt[a] == b:
            u, w = a, b
        elif nxt[b] == a:
            u, w = b, a
        else:
            raise NotOuterplanar(f"vertex {v} cannot sit on the outer face")
        nxt[u] = v
        nxt[v] = w
        prv[w] = v
        prv[v] = u

    start = min(vertices)
    cycle = [start]
    cur = nxt[start]
    while cur != start:
        cycle.append(cur)
        cur = nxt[cur]
    if len(cycle) != n:
        raise NotOuterplanar("outer cycle does not span the block")
    return cycle


def is_outerplanar(g: Graph) -> bool:
    if g.m > max(0, 2 * g.n - 3):
        return False
    blocks, _ = g.blocks_and_cutpoints()
    try:
        for b in blocks:
            if len(b) > 1:
                vs = sorted({u for e in b for u in e})
                block_outer_cycle(vs, b)
    except NotOuterplanar:
        return False
    return True


# -------------------------------------------------------------- span tree


@dataclass
class SpanNode:
    start: int
    end: int  # covers exterior edges start .. end-1 (cycle positions)
    children: list["SpanNode"] = field(default_factory=list)
    leaf: bool = False
    table: EdgeTable | None = None


def build_span_tree(m: int, intervals: list[tuple[int, int]]) -> SpanNode:
    """Laminar tree over cycle positions; intervals are chord spans with
    0 < start < end <= m (a chord through position 0 is flipped to the
    complementary arc first)."""
    root = SpanNode(0, m)
    stack = [root]
    for s, e in sorted(intervals, key=lambda se: (se[0], se[0] - se[1])):
        while stack[-1].end <= s:
            stack.pop()
        top = stack[-1]
        if not (top.start <= s and e <= top.end):
            raise NotOuterplanar(f"crossing chords at span [{s},{e})")
        node = SpanNode(s, e)
        top.children.append(node)
        stack.append(node)
    # second sweep drops each exterior edge into its innermost span
    def place_leaves(node: SpanNode) -> None:
        merged: list[SpanNode] = []
        pos = node.start
        for ch in node.children:
            while pos < ch.start:
                merged.append(SpanNode(pos, pos + 1, leaf=True))
                pos += 1
            merged.append(ch)
            pos = ch.end
        while pos < node.end:
            merged.append(SpanNode(pos, pos + 1, leaf=True))
            pos += 1
        node.children = merged

    stack = [root]
    while stack:
        nd = stack.pop()
        kids = nd.children[:]
        place_leaves(nd)
        stack.extend(kids)
    return root


def fold_block(g: Graph, cycle: list[int], edges: list[tuple[int, int]],
               k: int, attach: dict[int, tuple] | None = None,
               trace=None, variant: str = "prose",
               stats: dict | None = None) -> EdgeTable:
    """Fold a whole block (outer cycle + chords) into T_(cycle[0], cycle[0])."""
    attach = attach or {}
    m = len(cycle)
    pos = {v: i for i, v in enumerate(cycle)}
    on_cycle = {(cycle[i], cycle[(i + 1) % m]) for i in range(m)}
    on_cycle |= {(b, a) for a, b in on_cycle}
    intervals = []
    for u, v in edges:
        if (u, v) in on_cycle:
            continue
        pa, pb = sorted((pos[u], pos[v]))
        intervals.append((pa, pb) if pa > 0 else (pb, m))
    root = build_span_tree(m, intervals)

    def leaf_of(i: int) -> EdgeTable:
        x, y = cycle[i], cycle[(i + 1) % m]
        t = leaf_table(x, y, k)
        if trace:
            trace("leaf", t)
        if x in attach:
            t = attach_hang(t, 0, attach[x], k)
        return t

    # bottom-up over a pre-order listing (parents precede children)
    order: list[SpanNode] = []
    stk = [root]
    while stk:
        nd = stk.pop()
        order.append(nd)
        stk.extend(nd.children)
    for nd in reversed(order):
        if nd.leaf:
            nd.table = leaf_of(nd.start)
            continue
        t = nd.children[0].table
        for ch in nd.children[1:]:
            t = merge_tables(t, ch.table, g, k, variant)
            ch.table = None
            if stats is not None:
                stats["merges"] = stats.get("merges", 0) + 1
            if trace:
                trace("merge", t)
        nd.children[0].table = None
        nd.table = t
    return root.table


# ------------------------------------------------------------- block-cut


def _combine_hang(parts: list[tuple], k: int) -> tuple:
    """Join sibling subtrees that share only their common cutpoint."""
    d0, d1, cnt = parts[0]
    for u0, u1, c2 in parts[1:]:
        cnt = cnt + c2 - 1
        cap = min(k, cnt)
        d0 = convolve_max_plus(d0, u0, cap)
        d1 = convolve_shared_vertex(d1, u1, cap)
    return d0, d1, cnt


def solve_outerplanar_values(g: Graph, k: int, *, root: int | None = None,
                             first: int | None = None, trace=None,
                             variant: str = "prose",
                             stats: dict | None = None) -> list[int | None]:
    """Optimum edge counts for every k' = 0..min(k, n) on a connected
    outerplanar graph."""
    cap = min(k, g.n)
    if g.n <= 1 or g.m == 0:
        return [0] * (cap + 1)

    blocks, cuts = g.blocks_and_cutpoints()
    bverts = [sorted({u for e in b for u in e}) for b in blocks]
    at_vertex: dict[int, list[int]] = defaultdict(list)
    for i, vs in enumerate(bverts):
        for v in vs:
            at_vertex[v].append(i)

    rootv = root if root is not None else 0
    if rootv not in at_vertex:
        raise ValueError(f"root vertex {rootv} has no incident edge")
    root_bid = at_vertex[rootv][0]

    # BFS the block-cut tree from the root block
    key_of = {root_bid: rootv}
    order = [root_bid]
    seen = {root_bid}
    kids_at: dict[int, dict[int, list[int]]] = defaultdict(lambda: defaultdict(list))
    qi = 0
    while qi < len(order):
        bid = order[qi]
        qi += 1
        for v in bverts[bid]:
            if v not in cuts and v != rootv:
                continue
            for nb in at_vertex[v]:
                if nb in seen:
                    continue
                seen.add(nb)
                key_of[nb] = v
                kids_at[bid][v].append(nb)
                order.append(nb)

    if stats is not None:
        stats["blocks"] = len(blocks)

    uvec: dict[int, tuple] = {}
    for bid in reversed(order):
        key = key_of[bid]
        attach = {v: _combine_hang([uvec[c] for c in kids], k)
                  for v, kids in kids_at[bid].items()}
        b_edges = blocks[bid]
        if len(b_edges) == 1:
            (u, v) = b_edges[0]
            x, y = (u, v) if u == key else (v, u)
            t = leaf_table(x, y, k)
            if trace:
                trace("leaf", t)
            if x in attach:
                t = attach_hang(t, 0, attach[x], k)
            if y in attach:
                t = attach_hang(t, 1, attach[y], k)
            if bid == root_bid:
                values = vector_max(vector_max(t.rows[0], t.rows[1]),
                                    vector_max(t.rows[2], t.rows[3]))
            else:
                u0 = vector_max(t.rows[0], t.rows[1])
                u1 = vector_max(t.rows[2], t.rows[3])
                uvec[bid] = (u0, u1, t.vcount)
        else:
            cycle = block_outer_cycle(bverts[bid], b_edges)
            i = cycle.index(key)
            cycle = cycle[i:] + cycle[:i]
            want = first if (bid == root_bid and first is not None) else None
            if want is not None and cycle[-1] == want:
                cycle = [cycle[0]] + cycle[:0:-1]
            elif want is not None and cycle[1] != want:
                raise ValueError(f"vertex {want} is not on the outer cycle "
                                 f"next to {key}")
            elif want is None and cycle[-1] < cycle[1]:
                cycle = [cycle[0]] + cycle[:0:-1]
            t = fold_block(g, cycle, b_edges, k, attach, trace, variant, stats)
            if bid == root_bid:
                values = vector_max(t.rows[0], t.rows[3])
            else:
                uvec[bid] = (t.rows[0], t.rows[3], t.vcount)

    if len(values) < cap + 1:  # k exceeds this component's size upstream
        values = values + [None] * (cap + 1 - len(values))
    return values
