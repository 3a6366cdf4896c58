"""Combinatorial plane graphs as rotation systems.

A plane graph is stored as one counterclockwise neighbor list per vertex.
Faces are traced with the left-face rule: the half-edge following (u, v)
is (v, w) where w immediately precedes u in the ccw order around v.  Under
this rule every interior face comes out as a ccw orbit and the unbounded
face as the single cw orbit, which is how the rest of the package tells
them apart.

Edges are inserted only as *corner chords*: a new edge between two corners
of one existing face.  That is the only mutation the leveling and
triangulation passes need, and it keeps the rotation system planar by
construction.
"""

from __future__ import annotations

from dks.errors import EmbeddingInconsistent

HalfEdge = tuple[int, int]


class PlaneGraph:
    def __init__(self, rotations: list[list[int]]):
        self.rot: list[list[int]] = [list(ns) for ns in rotations]
        self.n = len(self.rot)
        self._pos: list[dict[int, int]] = [{} for _ in range(self.n)]
        for v, ns in enumerate(self.rot):
            for i, w in enumerate(ns):
                if w == v or w in self._pos[v]:
                    raise EmbeddingInconsistent(
                        f"rotation at vertex {v} repeats neighbor {w}")
                self._pos[v][w] = i
        for v in range(self.n):
            for w in self.rot[v]:
                if not (0 <= w < self.n) or v not in self._pos[w]:
                    raise EmbeddingInconsistent(
                        f"half-edge ({v},{w}) has no twin")
        self.faces: list[tuple[HalfEdge, ...]] = []
        self.face_of: dict[HalfEdge, int] = {}
        self.retrace()

    # -- static structure ------------------------------------------------

    def degree(self, v: int) -> int:
        return len(self.rot[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._pos[u]

    def edge_count(self) -> int:
        return sum(len(ns) for ns in self.rot) // 2

    def succ(self, v: int, u: int) -> int:
        """Neighbor immediately after u in ccw order around v."""
        ns = self.rot[v]
        return ns[(self._pos[v][u] + 1) % len(ns)]

    def pred(self, v: int, u: int) -> int:
        """Neighbor immediately before u in ccw order around v."""
        ns = self.rot[v]
        return ns[(self._pos[v][u] - 1) % len(ns)]

    def next_half_edge(self, h: HalfEdge) -> HalfEdge:
        u, v = h
        return (v, self.pred(v, u))

    def first_cw(self, v: int, start: int, allowed) -> int | None:
        """First neighbor of v strictly cw of `start` satisfying `allowed`.

        Scans the full rotation once; `start` itself is inspected last, so
        with no other hit a qualifying start vertex is returned (useful for
        tracing walks of subgraphs where the edge to `start` is absent).
        """
        ns = self.rot[v]
        i = self._pos[v][start]
        d = len(ns)
        for step in range(1, d + 1):
            w = ns[(i - step) % d]
            if allowed(w):
                return w
        return None

    def first_ccw(self, v: int, start: int, allowed) -> int | None:
        ns = self.rot[v]
        i = self._pos[v][start]
        d = len(ns)
        for step in range(1, d + 1):
            w = ns[(i + step) % d]
            if allowed(w):
                return w
        return None

    # -- face tracing ----------------------------------------------------

    def retrace(self) -> None:
        faces: list[tuple[HalfEdge, ...]] = []
        face_of: dict[HalfEdge, int] = {}
        for v in range(self.n):
            for w in self.rot[v]:
                h = (v, w)
                if h in face_of:
                    continue
                orbit = []
                cur = h
                while cur not in face_of:
                    face_of[cur] = len(faces)
                    orbit.append(cur)
                    cur = self.next_half_edge(cur)
                if cur != h:
                    raise EmbeddingInconsistent("face orbit is not closed")
                faces.append(tuple(orbit))
        self.faces = faces
        self.face_of = face_of

    def euler_check(self, components: int = 1) -> None:
        if self.n - self.edge_count() + len(self.faces) != 1 + components:
            raise EmbeddingInconsistent(
                f"Euler check failed: V={self.n} E={self.edge_count()} "
                f"F={len(self.faces)}")

    def subgraph_faces(self, keep) -> list[tuple[HalfEdge, ...]]:
        """Face orbits of the plane subgraph on vertices with keep(v) true.

        The subgraph inherits the rotation system; orbits are traced with
        the same left-face rule, skipping non-kept neighbors.
        """
        seen: set[HalfEdge] = set()
        orbits = []
        for v in range(self.n):
            if not keep(v):
                continue
            for w in self.rot[v]:
                if not keep(w) or (v, w) in seen:
                    continue
                orbit = []
                cur = (v, w)
                while cur not in seen:
                    seen.add(cur)
                    orbit.append(cur)
                    a, b = cur
                    nxt = self.first_cw(b, a, keep)
                    assert nxt is not None
                    cur = (b, nxt)
                assert cur == (v, w), "subgraph orbit is not closed"
                orbits.append(tuple(orbit))
        return orbits

    # -- mutation ---------------------------------------------------------

    def insert_chords(self, orbit: tuple[HalfEdge, ...],
                      chords: list[tuple[int, int]]) -> None:
        """Add pairwise non-crossing chords between corners of one face.

        `orbit` must be a current face orbit; each chord is a pair of
        corner indices into it (corner i sits between orbit[i-1] and
        orbit[i], at the source vertex of orbit[i]).  Chords are placed in
        each corner's angular wedge ordered by cyclic distance to the far
        corner, which is exactly the order a straight-line drawing would
        give for non-crossing chords.
        """
        m = len(orbit)
        per_corner: dict[int, list[tuple[int, int]]] = {}
        batch: set[frozenset[int]] = set()
        for a, b in chords:
            va, vb = orbit[a][0], orbit[b][0]
            if va == vb:
                raise EmbeddingInconsistent("chord endpoints coincide")
            pair = frozenset((va, vb))
            if self.has_edge(va, vb) or pair in batch:
                raise EmbeddingInconsistent(
                    f"chord ({va},{vb}) duplicates an existing edge")
            batch.add(pair)
            per_corner.setdefault(a, []).append(((b - a) % m, vb))
            per_corner.setdefault(b, []).append(((a - b) % m, va))
        for c, targets in per_corner.items():
            v, q = orbit[c]
            targets.sort()
            i = self._pos[v][q]
            self.rot[v][i + 1:i + 1] = [w for _, w in targets]
            self._pos[v] = {w: j for j, w in enumerate(self.rot[v])}


def rotations_from_coordinates(coords: list[tuple[float, float]],
                               edges) -> list[list[int]]:
    """CCW rotation system of a straight-line drawing (test/gen helper)."""
    import math

    adj: list[list[int]] = [[] for _ in coords]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    rot = []
    for v, ns in enumerate(adj):
        x0, y0 = coords[v]
        rot.append(sorted(set(ns), key=lambda w: math.atan2(
            coords[w][1] - y0, coords[w][0] - x0)))
    return rot
