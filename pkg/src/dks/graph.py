"""Simple undirected graphs with dense integer ids.

The solvers never mutate a Graph after construction; all heavy lifting
happens on embedding-side structures.  Vertices are 0..n-1 internally,
with optional human-readable names kept for I/O round-trips.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from dks.errors import FormatError


@dataclass
class Graph:
    n: int
    edges: list[tuple[int, int]] = field(default_factory=list)
    names: list[str] | None = None
    # Optional embedding hints carried through from JSON input: rotation is
    # the full ccw neighbor order per vertex, indexed by vertex id.
    rotation: list[list[int]] | None = None
    outer_face: list[int] | None = None

    def __post_init__(self) -> None:
        self.adj: list[set[int]] = [set() for _ in range(self.n)]
        seen: set[tuple[int, int]] = set()
        dedup: list[tuple[int, int]] = []
        for u, v in self.edges:
            if u == v:
                raise FormatError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise FormatError(f"edge ({u},{v}) out of range for n={self.n}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                continue
            seen.add(key)
            dedup.append(key)
            self.adj[u].add(v)
            self.adj[v].add(u)
        self.edges = dedup

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def name_of(self, v: int) -> str:
        if self.names is not None:
            return self.names[v]
        return str(v)

    # ---------------------------------------------------------- bitmasks

    def adj_masks(self) -> list[int]:
        """Adjacency as bitmasks; used by the exponential oracles."""
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return masks

    def induced_edge_count(self, mask: int) -> int:
        """Number of edges with both endpoints in the vertex bitmask."""
        total = 0
        for u, v in self.edges:
            if (mask >> u) & 1 and (mask >> v) & 1:
                total += 1
        return total

    # -------------------------------------------------------- components

    def connected_components(self) -> list[int]:
        """Vertex bitmask per component (isolated vertices included)."""
        seen = [False] * self.n
        out: list[int] = []
        for s in range(self.n):
            if seen[s]:
                continue
            mask = 0
            stack = [s]
            seen[s] = True
            while stack:
                v = stack.pop()
                mask |= 1 << v
                for w in self.adj[v]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            out.append(mask)
        return out

    def is_connected(self) -> bool:
        return self.n == 0 or len(self.connected_components()) == 1

    # ------------------------------------------------ blocks / cutpoints

    def blocks_and_cutpoints(self) -> tuple[list[list[tuple[int, int]]], set[int]]:
        """Biconnected components (as edge lists) and cut vertices.

        Iterative Hopcroft–Tarjan; safe on 10^5-vertex paths.
        """
        disc = [-1] * self.n
        low = [0] * self.n
        parent = [-1] * self.n
        cutpoints: set[int] = set()
        blocks: list[list[tuple[int, int]]] = []
        edge_stack: list[tuple[int, int]] = []
        timer = 0

        for root in range(self.n):
            if disc[root] != -1:
                continue
            root_children = 0
            # (vertex, iterator over neighbours)
            stack = [(root, iter(sorted(self.adj[root])))]
            disc[root] = low[root] = timer
            timer += 1
            while stack:
                v, it = stack[-1]
                advanced = False
                for w in it:
                    if disc[w] == -1:
                        parent[w] = v
                        edge_stack.append((v, w))
                        disc[w] = low[w] = timer
                        timer += 1
                        if v == root:
                            root_children += 1
                        stack.append((w, iter(sorted(self.adj[w]))))
                        advanced = True
                        break
                    elif w != parent[v] and disc[w] < disc[v]:
                        edge_stack.append((v, w))
                        if disc[w] < low[v]:
                            low[v] = disc[w]
                if advanced:
                    continue
                stack.pop()
                if stack:
                    u = stack[-1][0]
                    if low[v] < low[u]:
                        low[u] = low[v]
                    if low[v] >= disc[u]:
                        # u separates v's subtree: pop one block.
                        block: list[tuple[int, int]] = []
                        while edge_stack:
                            e = edge_stack.pop()
                            block.append(e)
                            if e == (u, v):
                                break
                        blocks.append(block)
                        if u != root or root_children > 1:
                            cutpoints.add(u)
            if edge_stack:  # pragma: no cover - drained at block pops
                blocks.append(edge_stack[:])
                edge_stack.clear()
        return blocks, cutpoints

    def bridges(self) -> set[tuple[int, int]]:
        blocks, _ = self.blocks_and_cutpoints()
        return {b[0] if b[0][0] < b[0][1] else (b[0][1], b[0][0])
                for b in blocks if len(b) == 1}


def induced_subgraph(g: Graph, keep: list[int]) -> Graph:
    """Induced subgraph on `keep`, densely relabelled in list order.

    Embedding hints survive when they still make sense: a rotation system
    restricts cleanly to any vertex subset, the outer face only when all
    of its vertices remain.
    """
    ind = {v: i for i, v in enumerate(keep)}
    edges = [(ind[u], ind[v]) for u, v in g.edges if u in ind and v in ind]
    rot = None
    if g.rotation is not None:
        rot = [[ind[w] for w in g.rotation[v] if w in ind] for v in keep]
    outer = None
    if g.outer_face is not None and all(v in ind for v in g.outer_face):
        outer = [ind[v] for v in g.outer_face]
    return Graph(n=len(keep), edges=edges,
                 names=[g.name_of(v) for v in keep],
                 rotation=rot, outer_face=outer)


# ------------------------------------------------------------------ I/O


def parse_edge_list(text: str) -> Graph:
    """Whitespace edge list, one "u v" pair per line, '#' comments.

    Vertex names are arbitrary tokens; ids are assigned in order of first
    appearance, which keeps fixtures deterministic.
    """
    names: list[str] = []
    index: dict[str, int] = {}
    edges: list[tuple[int, int]] = []

    def vid(tok: str) -> int:
        if tok not in index:
            index[tok] = len(names)
            names.append(tok)
        return index[tok]

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) == 1:
            vid(parts[0])  # isolated vertex declaration
            continue
        if len(parts) != 2:
            raise FormatError(f"line {lineno}: expected 'u v', got {raw!r}")
        u, v = vid(parts[0]), vid(parts[1])
        if u == v:
            raise FormatError(f"line {lineno}: self-loop {parts[0]!r}")
        edges.append((u, v))
    return Graph(n=len(names), edges=edges, names=names)


def parse_json(text: str) -> Graph:
    """JSON graph: {"vertices": [...], "edges": [[u,v],...],
    "rotation"?: {...}, "outer_face"?: [...]}.

    Vertices may be names or ints; edges refer to them.  Rotation maps a
    vertex to the cyclic order of its neighbours (counterclockwise).
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"bad JSON: {exc}") from exc
    if not isinstance(data, dict) or "vertices" not in data or "edges" not in data:
        raise FormatError("JSON graph needs 'vertices' and 'edges' keys")

    raw_vs = data["vertices"]
    names = [str(v) for v in raw_vs]
    if len(set(names)) != len(names):
        raise FormatError("duplicate vertex names")
    index = {nm: i for i, nm in enumerate(names)}

    def vid(tok) -> int:
        s = str(tok)
        if s not in index:
            raise FormatError(f"unknown vertex {tok!r}")
        return index[s]

    edges = []
    for e in data["edges"]:
        if len(e) != 2:
            raise FormatError(f"bad edge {e!r}")
        edges.append((vid(e[0]), vid(e[1])))

    rotation = None
    if "rotation" in data and data["rotation"] is not None:
        rotation = [[] for _ in names]
        for key, ws in data["rotation"].items():
            rotation[vid(key)] = [vid(w) for w in ws]
    outer = None
    if "outer_face" in data and data["outer_face"] is not None:
        outer = [vid(v) for v in data["outer_face"]]
    return Graph(n=len(names), edges=edges, names=names,
                 rotation=rotation, outer_face=outer)


def load_graph(path: str) -> Graph:
    with open(path) as fh:
        text = fh.read()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return parse_json(text)
    return parse_edge_list(text)


def dump_json(g: Graph) -> str:
    data: dict = {
        "vertices": [g.name_of(v) for v in range(g.n)],
        "edges": [[g.name_of(u), g.name_of(v)] for u, v in g.edges],
    }
    if g.rotation is not None:
        data["rotation"] = {g.name_of(v): [g.name_of(w) for w in ws]
                            for v, ws in enumerate(g.rotation)}
    if g.outer_face is not None:
        data["outer_face"] = [g.name_of(v) for v in g.outer_face]
    return json.dumps(data, indent=1)
