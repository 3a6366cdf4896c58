"""Decomposition trees for level components of a plane graph.

Each level component gets a tree whose leaves are exactly the half-edges of
its ccw outer walk, in walk order.  Internal nodes are the bounded faces of
the component's own plane subgraph, entered either by crossing a chord
(face child) or by stepping into a face that hangs off a cut vertex while
the walk detours (region child); maximal detours over bridges become
bridge nodes whose two leaf children are the two traversals.  Labels chain:
a node (x, y) covers a contiguous stretch of the walk from x to y, and the
children of any node chain x -> ... -> y left to right.

Trees of nested components are linked through faces: a face that encloses
a deeper component keeps a pointer to it, and every node of a deeper tree
carries *window numbers* (lbn, rbn) locating its walk stretch between two
of the enclosing face node's children, plus *boundary vectors* (lbound,
rbound) listing one vertex per level from itself outward.  Window numbers
are found by scanning for a dividing vertex of the enclosing window that
is drawn inside the wedge between two consecutive walk edges; the fill
triangulation exists precisely to make such a vertex available.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from itertools import combinations, count

from dks.embedding import LevelComponent, LeveledEmbedding
from dks.errors import DksError, NoDividingPoint, TriangulationIncomplete
from dks.graph import Graph
from dks.plane import HalfEdge


@dataclass
class TreeNode:
    x: int
    y: int
    comp: int
    kind: str                     # leaf | face | region | bridge | root | single
    face: int | None = None       # index into the component's sub_faces
    children: list["TreeNode"] = field(default_factory=list)
    countable: bool = True        # leaves: does this traversal count the edge?
    uid: int = -1
    lbn: int = 0                  # window numbers (levels >= 2 only)
    rbn: int = 0
    pivot: int = 0                # handover slot for childless nodes
    lbound: tuple[int, ...] = ()
    rbound: tuple[int, ...] = ()

    def __repr__(self):  # keep hypothesis/pytest output readable
        return (f"TreeNode#{self.uid}({self.x},{self.y},{self.kind},"
                f"c{self.comp},w[{self.lbn},{self.rbn}))")


@dataclass
class ComponentTree:
    comp: int
    root: TreeNode
    nodes: list[TreeNode]
    leaves: list[TreeNode]                 # walk order
    face_to_node: dict[int, TreeNode]
    parent_node: TreeNode | None = None    # enclosing face node, levels >= 2
    zlabels: list[int | None] | None = None  # 1-indexed window vertex labels


@dataclass
class Forest:
    le: LeveledEmbedding
    trees: list[ComponentTree]
    nodes: list[TreeNode]                  # uid-indexed, across components

    def enclosed_component(self, node: TreeNode) -> int | None:
        if node.face is None:
            return None
        return self.le.components[node.comp].enclosures.get(node.face)


def build_forest(le: LeveledEmbedding, root: int | None = None) -> Forest:
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * le.graph.n + 1000))
    uid_gen = count()
    trees: list[ComponentTree] = []
    all_nodes: list[TreeNode] = []
    for comp in le.components:
        if comp.level == 1:
            tree = _build_tree(le, comp, _orient_outermost(le, comp, root),
                               None, uid_gen)
            for leaf in tree.leaves:
                assert le.graph.has_edge(leaf.x, leaf.y)
            for node in tree.nodes:
                node.lbound, node.rbound = (node.x,), (node.y,)
        else:
            pcid, pface = comp.parent
            vf = trees[pcid].face_to_node[pface]
            tree = _build_tree(le, comp, _orient_deeper(le, comp, vf),
                               vf, uid_gen)
            _assign_windows(le, tree)
            _assign_boundaries(le, tree)
        trees.append(tree)
        all_nodes.extend(tree.nodes)
    return Forest(le, trees, all_nodes)


# -- walk orientation ------------------------------------------------------


def _orient_outermost(le: LeveledEmbedding, comp: LevelComponent,
                      root: int | None) -> list[HalfEdge]:
    if not comp.walk:
        return []
    sources = {h[0] for h in comp.walk}
    if root is None:
        z = min(sources)
    elif root in sources:
        z = root
    else:
        raise DksError(f"root vertex {root} is not on the outermost boundary")
    occ = min((v, i) for i, (u, v) in enumerate(comp.walk) if u == z)[1]
    return comp.walk[occ:] + comp.walk[:occ]


def _deep_root_vertex(le: LeveledEmbedding, comp: LevelComponent,
                      vf: TreeNode) -> int:
    cset = set(comp.vertices)
    if len(cset) == 1:
        return comp.vertices[0]
    plane, x, y = le.plane, vf.x, vf.y
    if x == y:
        cands = [w for w in plane.rot[x] if w in cset]
        if not cands:
            raise TriangulationIncomplete(
                f"no inner vertex attached at corner {x}")
        return min(cands)
    # the enclosing face lies left of (y, x); after filling, that side is a
    # triangle whose third corner is the canonical deeper root
    orbit = plane.faces[plane.face_of[(y, x)]]
    third = {u for u, _ in orbit} - {x, y}
    if len(third) == 1 and (z := third.pop()) in cset:
        return z
    cands = [w for w in cset if plane.has_edge(w, x) and plane.has_edge(w, y)]
    if not cands:
        raise TriangulationIncomplete(
            f"no inner vertex spans the closing edge ({x},{y})")
    return min(cands)


def _orient_deeper(le: LeveledEmbedding, comp: LevelComponent,
                   vf: TreeNode) -> list[HalfEdge]:
    if not comp.walk:
        return []
    z = _deep_root_vertex(le, comp, vf)
    sources = {h[0] for h in comp.walk}
    assert z in sources, "deeper root fell off its component's walk"
    wedge = set(comp.walk)
    u = le.plane.first_ccw(z, vf.x, lambda w: (z, w) in wedge)
    assert u is not None
    occ = comp.walk.index((z, u))
    return comp.walk[occ:] + comp.walk[:occ]


# -- walk parsing ----------------------------------------------------------


def _build_tree(le: LeveledEmbedding, comp: LevelComponent,
                walk: list[HalfEdge], vf: TreeNode | None,
                uid_gen) -> ComponentTree:
    side_face = {h: i for i, orbit in enumerate(comp.sub_faces) for h in orbit}
    nodes: list[TreeNode] = []
    leaves: list[TreeNode] = []
    face_to_node: dict[int, TreeNode] = {}
    seen_pairs: set[frozenset] = set()
    cursor = 0

    def new_node(x: int, y: int, kind: str, face: int | None = None) -> TreeNode:
        node = TreeNode(x=x, y=y, comp=comp.cid, kind=kind, face=face,
                        uid=next(uid_gen))
        nodes.append(node)
        if face is not None:
            assert face not in face_to_node
            face_to_node[face] = node
        return node

    def take_leaf(exp: HalfEdge) -> TreeNode:
        nonlocal cursor
        assert walk[cursor] == exp
        cursor += 1
        leaf = new_node(exp[0], exp[1], "leaf")
        pair = frozenset(exp)
        leaf.countable = pair not in seen_pairs
        seen_pairs.add(pair)
        leaves.append(leaf)
        return leaf

    def fill(sides, out: list[TreeNode]) -> None:
        for s in sides:
            back = (s[1], s[0])
            if back in side_face:
                child = new_node(s[0], s[1], "face", face=side_face[back])
                orbit = comp.sub_faces[side_face[back]]
                k = orbit.index(back)
                fill(orbit[k + 1:] + orbit[:k], child.children)
                out.append(child)
            else:
                while walk[cursor] != s:
                    out.append(parse_hang(s[0]))
                out.append(take_leaf(s))

    def parse_hang(v: int) -> TreeNode:
        h = walk[cursor]
        assert h[0] == v, "walk detour does not start at the expected corner"
        if h in side_face:
            node = new_node(v, v, "region", face=side_face[h])
            orbit = comp.sub_faces[side_face[h]]
            k = orbit.index(h)
            fill(orbit[k:] + orbit[:k], node.children)
            return node
        node = new_node(v, v, "bridge")
        node.children.append(take_leaf(h))
        w = h[1]
        while walk[cursor] != (w, v):
            node.children.append(parse_hang(w))
        node.children.append(take_leaf((w, v)))
        return node

    if not walk:
        root = new_node(comp.vertices[0], comp.vertices[0], "single")
    else:
        z = walk[0][0]
        kids = []
        while cursor < len(walk):
            kids.append(parse_hang(z))
        if len(kids) == 1:
            root = kids[0]
        else:
            root = new_node(z, z, "root")
            root.children = kids
    assert cursor == len(walk)
    assert [(lf.x, lf.y) for lf in leaves] == walk
    assert len(face_to_node) == len(comp.sub_faces), \
        "parser failed to reach every bounded face"
    return ComponentTree(comp.cid, root, nodes, leaves, face_to_node,
                         parent_node=vf)


# -- window numbers --------------------------------------------------------


def is_dividing(le: LeveledEmbedding, apex: int, prev: int, nxt: int,
                cand: int) -> bool:
    """Is `cand` drawn strictly inside the outward wedge at `apex`?

    The wedge opens ccw from the walk edge into `prev` around to the walk
    edge out to `nxt`; a full turn when the apex is a spike tip.
    """
    pos = le.plane._pos[apex]
    if cand not in pos:
        return False
    pa, pc, py = pos[prev], pos[nxt], pos[cand]
    d = len(le.plane.rot[apex])
    if pa == pc:
        return py != pa
    return 0 < (py - pa) % d < (pc - pa) % d


def _strip_arcs(le: LeveledEmbedding, tree: ComponentTree
                ) -> list[tuple[int, int]]:
    """Window-index arc [a_i, b_i] of each walk visit's fan of labels.

    The triangulated region between the component's walk and the parent
    windows is a ladder: every triangle advances either the outer label
    index or the inner walk position, so one sweep around it recovers, for
    each visit of the walk, which stretch of window slots that vertex is
    actually drawn against.  Working by slot index is the whole point --
    the same label vertex can legally occupy several slots (pinched parent
    walks, and the wrap at the cut), so testing adjacency by vertex name
    may resolve to the wrong occurrence and strand real edges outside any
    stretch.

    Three non-ladder shapes appear in the wild and are folded into the
    sweep.  Zero-extent stub windows (a hang of the parent walk pinched
    between two slots with the same label) advance the index for free.
    A same-level filler chord cuts a pocket off the region: the inner
    boundary shortcuts across it, and the walk visits shielded behind the
    chord get empty arcs (they touch no window; their real walk edges are
    still scored by the leaf columns).  A shallow filler chord likewise
    pockets a run of window slots away from the component; the fan scan
    swallows those slots into the current stretch, which is sound because
    a shielded label has no drawn -- hence no real -- edge into this level.
    """
    vf = tree.parent_node
    u, zl = vf.children, tree.zlabels
    s = len(u)
    plane, lev = le.plane, le.level
    walk = [tree.root.x] + [lf.y for lf in tree.leaves]
    v = zl[1]
    if v not in plane._pos[walk[0]]:
        raise NoDividingPoint(
            f"root {walk[0]} is not drawn against its anchor label {v}")
    arcs: list[tuple[int, int]] = [(0, 0)] * len(walk)
    i, a, r = 0, 1, 1
    while True:
        if r <= s and u[r - 1].x == u[r - 1].y:
            r += 1                        # stub window, nothing to cross
            continue
        if i == len(walk) - 1 and r == s + 1:
            arcs[i] = (a, r)
            break
        w = walk[i]
        rot = plane.rot[w]
        nxt = rot[(plane._pos[w][v] + 1) % len(rot)]
        if lev[nxt] == lev[w] - 1:
            rr = next((q for q in range(r + 1, s + 2) if zl[q] == nxt), None)
            if rr is None:
                raise NoDividingPoint(
                    f"window strip desynced at vertex {w}: drawn against "
                    f"{nxt}, which labels no remaining window slot")
            r, v = rr, nxt
            continue
        j = next((q for q in range(i + 1, len(walk)) if walk[q] == nxt), None)
        if j is None or v not in plane._pos[nxt]:
            raise NoDividingPoint(
                f"window strip desynced at vertex {w}: the region side "
                f"continues into {nxt}, which is not a later walk visit")
        arcs[i] = (a, r)
        for q in range(i + 1, j):
            arcs[q] = (r, r)              # shielded behind a pocket chord
        i, a = j, r
    return arcs


def _assign_windows(le: LeveledEmbedding, tree: ComponentTree) -> None:
    vf = tree.parent_node
    u = vf.children
    s = len(u)
    assert u, "enclosing face node has no children"
    tree.zlabels = [None] + [c.x for c in u] + [u[-1].y]
    zl = tree.zlabels
    leaves = tree.leaves
    arcs = _strip_arcs(le, tree)
    if leaves:
        for i, leaf in enumerate(leaves):
            leaf.lbn, leaf.pivot = arcs[i]
            leaf.rbn = arcs[i + 1][0] if i + 1 < len(leaves) else s + 1
    else:
        tree.root.pivot = arcs[0][1]

    def post(node: TreeNode) -> None:
        for c in node.children:
            post(c)
        if node.children:
            node.lbn = node.children[0].lbn
            node.rbn = node.children[-1].rbn

    post(tree.root)
    if not tree.root.children:
        tree.root.lbn, tree.root.rbn = 1, s + 1
    assert (tree.root.lbn, tree.root.rbn) == (1, s + 1)
    for node in tree.nodes:
        assert 1 <= node.lbn <= node.rbn <= s + 1
        if not node.children:
            assert node.lbn <= node.pivot <= node.rbn


# -- boundary vectors ------------------------------------------------------


def _assign_boundaries(le: LeveledEmbedding, tree: ComponentTree) -> None:
    vf = tree.parent_node
    u = vf.children
    s = len(u)
    lev = le.components[tree.comp].level
    for node in tree.nodes:
        left = u[node.lbn - 1].lbound if node.lbn <= s else u[s - 1].rbound
        right = u[node.rbn - 2].rbound if node.rbn >= 2 else u[0].lbound
        node.lbound = (node.x,) + left
        node.rbound = (node.y,) + right
        assert len(node.lbound) == len(node.rbound) == lev
    for a, b in zip(tree.leaves, tree.leaves[1:]):
        assert a.rbound == b.lbound, "adjacent windows disagree on a seam"
    assert tree.root.lbound == (tree.root.x,) + vf.lbound
    assert tree.root.rbound == (tree.root.y,) + vf.rbound


# -- shared window helpers -------------------------------------------------


# -- slice materialization -------------------------------------------------


def materialize_slice(forest: Forest, node: TreeNode
                      ) -> tuple[frozenset, frozenset]:
    """Vertices and countable edges of the subgraph a node's table ranges over.

    Mirrors the dispatch structurally (it must: the table is a function of
    exactly this subgraph) but uses plain set arithmetic, so a brute-force
    pass over the result independently checks every table entry.
    """
    memo: dict[int, tuple[frozenset, frozenset]] = forest.__dict__.setdefault(
        "_slice_memo", {})

    def norm(a: int, b: int) -> tuple[int, int]:
        return (a, b) if a < b else (b, a)

    def go(v: TreeNode) -> tuple[frozenset, frozenset]:
        if v.uid in memo:
            return memo[v.uid]
        g = forest.le.graph
        lev = forest.le.components[v.comp].level
        deeper = forest.enclosed_component(v)
        verts: set[int] = {v.x, v.y}
        edges: set[tuple[int, int]] = set()
        if deeper is not None:
            dv, de = go(forest.trees[deeper].root)
            verts |= dv
            edges |= de
            if v.x != v.y and g.has_edge(v.x, v.y):
                edges.add(norm(v.x, v.y))
        elif v.children:
            for c in v.children:
                cv, ce = go(c)
                verts |= cv
                edges |= ce
            if v.x != v.y and g.has_edge(v.x, v.y):
                edges.add(norm(v.x, v.y))
        elif lev == 1:
            if v.countable:
                assert g.has_edge(v.x, v.y)
                edges.add(norm(v.x, v.y))
        else:
            tree = forest.trees[v.comp]
            u = tree.parent_node.children
            s = len(u)
            p = v.pivot
            bnd = u[p - 1].lbound if p <= s else u[s - 1].rbound
            verts |= set(bnd)
            if v.x != v.y and v.countable and g.has_edge(v.x, v.y):
                edges.add(norm(v.x, v.y))
            for a, b in combinations(sorted(set(bnd)), 2):
                if g.has_edge(a, b):
                    edges.add(norm(a, b))
            for end in (v.x, v.y):
                if end != bnd[0] and g.has_edge(end, bnd[0]):
                    edges.add(norm(end, bnd[0]))
            for j in range(v.lbn, v.rbn):
                ext = v.x if j < p else v.y
                uv, ue = go(u[j - 1])
                verts |= uv
                edges |= ue
                for w in set(u[j - 1].lbound) | set(u[j - 1].rbound):
                    if ext != w and g.has_edge(ext, w):
                        edges.add(norm(ext, w))
        out = (frozenset(verts), frozenset(edges))
        memo[v.uid] = out
        return out

    return go(node)


def trees_to_dot(forest: Forest) -> str:
    g = forest.le.graph
    lines = ["digraph walktrees {", "  node [shape=box, fontsize=9];"]
    for tree in forest.trees:
        for n in tree.nodes:
            lab = f"{g.name_of(n.x)},{g.name_of(n.y)} {n.kind}"
            if n.lbn or n.rbn:
                lab += f" [{n.lbn},{n.rbn})"
            shape = ', style=filled' if forest.enclosed_component(n) is not None else ''
            lines.append(f'  n{n.uid} [label="{lab}"{shape}];')
            for c in n.children:
                lines.append(f"  n{n.uid} -> n{c.uid};")
        deep = {fi: cid for fi, cid in
                forest.le.components[tree.comp].enclosures.items()}
        for fi, cid in deep.items():
            lines.append(f"  n{tree.face_to_node[fi].uid} -> "
                         f"n{forest.trees[cid].root.uid} [style=dashed];")
    lines.append("}")
    return "\n".join(lines)
