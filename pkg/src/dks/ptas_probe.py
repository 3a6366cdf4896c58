"""Empirical probe of Baker-style layering for densest-k-subgraph.

Baker's technique (1994) turns a dynamic program for b-outerplanar graphs
into a PTAS for maximization problems that lose little when a 1/b fraction
of the graph is deleted.  Densest k-subgraph is not obviously such a
problem: the edges of an optimal solution can straddle BFS levels, and
restricting to level classes may destroy most of them.  This module runs
the layering pipeline end to end on small instances where the exact
optimum is computable and records how far the layered answer falls short.

Two decompositions are offered.  The *keep* variant induces G_i on the
levels congruent to i mod b, so every surviving edge lies within a single
BFS level and each component is outerplanar; it discards all cross-level
edges, which is exactly the suspected failure mode.  The *classic* variant
is Baker's own: delete levels congruent to i mod b, keeping chunks of at
most b-1 consecutive levels.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

import networkx as nx

from dks.dp_outerplanar import is_outerplanar
from dks.embedding import embed_and_level
from dks.errors import CapExceeded, DksError, NotPlanar
from dks.graph import Graph, induced_subgraph
from dks.oracle import brute_force_all_k
from dks.tables import convolve_max_plus

__all__ = ["ProbeEntry", "ProbeReport", "baker_decompose",
           "combine_components", "probe", "bfs_levels"]

_ORACLE_CAP = 20


def bfs_levels(g: Graph, root: int = 0) -> list[int]:
    """BFS level of every vertex, root at level 0.

    Extra components (the input is supposed to be connected, but corpus
    files are not always tidy) are swept from their smallest vertex, each
    restarting at level 0.
    """
    if g.n == 0:
        return []
    if not 0 <= root < g.n:
        raise DksError(f"BFS root {root} out of range for n={g.n}")
    lev = [-1] * g.n
    for start in [root] + [v for v in range(g.n) if v != root]:
        if lev[start] >= 0:
            continue
        lev[start] = 0
        q = deque([start])
        while q:
            u = q.popleft()
            for w in g.adj[u]:
                if lev[w] < 0:
                    lev[w] = lev[u] + 1
                    q.append(w)
    return lev


def _as_nx(g: Graph) -> "nx.Graph":
    h = nx.Graph(g.edges)
    h.add_nodes_from(range(g.n))
    return h


def _certify(comp: Graph, budget: int) -> tuple[int, bool]:
    """(realized peeling depth, within budget?) for one component.

    Outerplanarity is decided exactly; deeper claims are checked against
    the depth our embedder realizes, which only upper-bounds the true
    outerplanarity index -- a failed check here is a flag, not a proof.
    A nonplanar component (possible only for nonplanar inputs) fails with
    an effectively infinite depth.
    """
    if comp.n <= 2 or is_outerplanar(comp):
        return 1, True
    try:
        depth = embed_and_level(comp).depth
    except NotPlanar:
        return comp.n, False
    return depth, depth <= budget


def baker_decompose(g: Graph, b: int, *, root: int = 0,
                    classic: bool = False
                    ) -> list[tuple[int, list[Graph]]]:
    """Split g into b level-class subgraphs, each as connected components.

    The keep variant induces class i on BFS levels congruent to i mod b;
    since b >= 2, no edge of g joins two kept levels of the same class,
    so for planar g every component sits inside one BFS level and must be
    outerplanar (contract the levels above it to a point: all the level's
    vertices end up on one face).  That is asserted when the hypothesis
    holds, not assumed.  The classic variant deletes the congruent levels
    instead and checks the pigeonhole count: some class keeps at least a
    (1 - 1/b) fraction of the vertices.
    """
    if b < 2:
        raise DksError(f"need b >= 2 level classes, got {b}")
    lev = bfs_levels(g, root)
    g_planar = nx.check_planarity(_as_nx(g), counterexample=False)[0]
    out: list[tuple[int, list[Graph]]] = []
    for i in range(b):
        if classic:
            keep = [v for v in range(g.n) if lev[v] % b != i]
        else:
            keep = [v for v in range(g.n) if lev[v] % b == i]
        gi = induced_subgraph(g, keep)
        comps = []
        for mask in gi.connected_components():
            comps.append(induced_subgraph(
                gi, [v for v in range(gi.n) if mask >> v & 1]))
        if not classic and g_planar:
            for c in comps:
                assert is_outerplanar(c), \
                    "a single-BFS-level component of a planar graph is " \
                    "not outerplanar; either the BFS or the recognizer " \
                    "is broken"
        out.append((i, comps))
    if classic and g.n:
        dropped = min(g.n - sum(c.n for c in comps)
                      for _, comps in out)
        assert dropped * b <= g.n, "pigeonhole failed: every class drops " \
                                   "more than n/b vertices"
    return out


def combine_components(vectors: list[list[int]], k: int) -> list[int]:
    """Best edge totals for 0..k vertices split across disjoint pieces."""
    acc: list[int] = [0]
    for vec in vectors:
        acc = convolve_max_plus(acc, vec, min(k, len(acc) + len(vec) - 2))
    return acc


@dataclass
class ProbeEntry:
    """One instance's trip through the layering pipeline."""

    n: int
    m: int
    k: int
    epsilon: float
    b: int
    variant: str                    # "keep" or "classic"
    s: int                          # max_i S_i
    opt: int
    ratio: float
    best_i: int
    s_by_class: list[int]
    cert_max_depth: int             # deepest realized peeling over all parts
    cert_ok: bool                   # every part within the b-1 budget

    def to_dict(self) -> dict:
        return {f: getattr(self, f) for f in (
            "n", "m", "k", "epsilon", "b", "variant", "s", "opt",
            "ratio", "best_i", "cert_max_depth", "cert_ok")}


@dataclass
class ProbeReport:
    """A corpus worth of probe entries plus ratio aggregation."""

    entries: list[ProbeEntry] = field(default_factory=list)

    def ratios(self) -> list[float]:
        return [e.ratio for e in self.entries]

    def histogram(self, bins: int = 10) -> list[int]:
        counts = [0] * bins
        for r in self.ratios():
            counts[min(int(r * bins), bins - 1)] += 1
        return counts

    def worst(self) -> ProbeEntry:
        return min(self.entries, key=lambda e: e.ratio)


def _b_of(epsilon: float) -> int:
    if not 0 < epsilon:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    return max(2, math.ceil(1 / epsilon))


def _exact_reference(g: Graph, k: int) -> int:
    from dks.solve import solve
    try:
        return solve(g, k).values[k]
    except NotPlanar:
        if g.n > _ORACLE_CAP:
            raise CapExceeded(
                f"no exact reference: not planar and n={g.n} exceeds the "
                f"brute-force cap of {_ORACLE_CAP}") from None
        return brute_force_all_k(g)[k]


def probe(g: Graph, k: int, epsilon: float, *, root: int = 0,
          classic: bool = False) -> ProbeEntry:
    """Run the layering heuristic and score it against the exact optimum.

    The heuristic solves each class subgraph exactly (components through
    the b-outerplanar program, joined by max-plus convolution) and keeps
    the best class.  A class with fewer than k vertices is scored at its
    full size: padding its solution with vertices from other levels never
    removes edges, so the score is a lower bound on what the padded
    heuristic would return and the ratio stays conservative.  Nonplanar
    components (only seen when the input itself is nonplanar but small
    enough for a brute-force reference) are scored by brute force, so
    the measured quantity is always the exact optimum over the class.
    """
    from dks.solve import solve

    b = _b_of(epsilon)
    opt = _exact_reference(g, k)
    s_by_class: list[int] = []
    max_depth, all_ok = 1, True
    for _, comps in baker_decompose(g, b, root=root, classic=classic):
        vecs = []
        for c in comps:
            depth, ok = _certify(c, b - 1)
            max_depth, all_ok = max(max_depth, depth), all_ok and ok
            try:
                vecs.append(solve(c, min(k, c.n)).values)
            except NotPlanar:
                vecs.append(brute_force_all_k(c)[:min(k, c.n) + 1])
        vec = combine_components(vecs, k)
        s_by_class.append(vec[min(k, len(vec) - 1)])
    s = max(s_by_class)
    assert s <= opt, "an induced-subgraph solution beat the exact optimum"
    ratio = 1.0 if opt == 0 else s / opt
    return ProbeEntry(n=g.n, m=g.m, k=k, epsilon=epsilon, b=b,
                      variant="classic" if classic else "keep",
                      s=s, opt=opt, ratio=ratio,
                      best_i=s_by_class.index(s), s_by_class=s_by_class,
                      cert_max_depth=max_depth, cert_ok=all_ok)
