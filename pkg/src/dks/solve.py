"""Front door: pick the right exact solver for whatever graph arrives.

The two dynamic programs are written for connected inputs of their own
class.  This module owns the boring reality around them: class detection,
disconnected inputs, size guards, timing, and optional witness recovery.
"""

from __future__ import annotations

import time

from dks.dp_bouterplanar import solve_bouterplanar_values
from dks.dp_outerplanar import is_outerplanar, solve_outerplanar_values
from dks.errors import KTooLarge
from dks.graph import Graph, induced_subgraph
from dks.report import SolveReport
from dks.tables import convolve_max_plus

__all__ = ["solve", "solve_outerplanar", "solve_bouterplanar"]


def _meter(stats: dict, trace: list | None):
    """Table-size accounting (and coarse trace rows) for the flat solver."""

    def cb(kind, t):
        stats["tables"] = stats.get("tables", 0) + 1
        stats["cells"] = stats.get("cells", 0) + sum(len(r) for r in t.rows)
        if trace is not None:
            trace.append({"branch": kind, "label": f"({t.x},{t.y})",
                          "pivot": None})

    return cb


def _connected_values(g: Graph, k: int, *, force: str, triangulation: str,
                      root: int | None, trace: list | None, stats: dict):
    flat = is_outerplanar(g) if force == "auto" else force == "outerplanar"
    if flat:
        vals = solve_outerplanar_values(g, k, root=root,
                                        trace=_meter(stats, trace), stats=stats)
        return "outerplanar", vals
    vals = solve_bouterplanar_values(g, k, root=root,
                                     triangulation=triangulation,
                                     trace=trace, stats=stats)
    return "bouterplanar", vals


def _values(g: Graph, k: int, *, force: str = "auto",
            triangulation: str = "zigzag", root: int | None = None,
            trace: list | None = None, stats: dict | None = None):
    """(solver name, exact optimum vector for k' = 0..min(k, n)).

    Any vertex count, any number of components; per-component vectors are
    joined by max-plus convolution, which preserves exactness.
    """
    if stats is None:
        stats = {}
    cap = min(k, g.n)
    if g.n == 0:
        return (force if force != "auto" else "outerplanar"), [0]
    masks = g.connected_components()
    if len(masks) == 1:
        return _connected_values(g, cap, force=force,
                                 triangulation=triangulation, root=root,
                                 trace=trace, stats=stats)
    stats["pieces"] = len(masks)
    acc: list[int | None] = [0]
    names = set()
    for mask in masks:
        keep = [v for v in range(g.n) if (mask >> v) & 1]
        sub = induced_subgraph(g, keep)
        sk = min(cap, sub.n)
        sub_root = keep.index(root) if root in keep else None
        part: dict = {}
        name, vec = _connected_values(sub, sk, force=force,
                                      triangulation=triangulation,
                                      root=sub_root, trace=trace, stats=part)
        names.add(name)
        for key, val in part.items():
            if isinstance(val, int):
                stats[key] = stats.get(key, 0) + val
        acc = convolve_max_plus(acc, vec, min(cap, len(acc) - 1 + sk))
    assert len(acc) == cap + 1 and all(v is not None for v in acc)
    return ("outerplanar" if names == {"outerplanar"} else "bouterplanar"), acc


def solve(g: Graph, k: int, *, force_solver: str = "auto",
          triangulation: str = "zigzag", root: int | None = None,
          witness: bool = False, trace: list | None = None) -> SolveReport:
    """Exact densest-k-subgraph values for every k' = 0..k.

    Auto-detection tries the flat outerplanar program first and falls back
    to the leveled one; `force_solver` pins either path.  Raises KTooLarge
    for k > n and lets NotPlanar/NotOuterplanar bubble up from below.
    """
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    if k > g.n:
        raise KTooLarge(f"k={k} but the graph has only {g.n} vertices")
    t0 = time.perf_counter()
    stats: dict = {}
    name, values = _values(g, k, force=force_solver,
                           triangulation=triangulation, root=root,
                           trace=trace, stats=stats)
    rep = SolveReport(k=k, values=values, solver=name,
                      seconds=time.perf_counter() - t0, stats=stats)
    if witness:
        rep.witness = _witness(g, k, values[k], force_solver, triangulation)
    return rep


def solve_outerplanar(g: Graph, k: int, **kwargs) -> SolveReport:
    """solve() pinned to the flat outerplanar program."""
    return solve(g, k, force_solver="outerplanar", **kwargs)


def solve_bouterplanar(g: Graph, k: int, **kwargs) -> SolveReport:
    """solve() pinned to the leveled program (works on any planar input)."""
    return solve(g, k, force_solver="bouterplanar", **kwargs)


def _witness(g: Graph, k: int, target: int, force: str,
             triangulation: str) -> list[int]:
    """A vertex set achieving the optimum, by greedy self-reduction.

    While more than k vertices remain, some vertex lies outside at least
    one optimal set, so deleting it leaves the optimum intact; scan for
    such a vertex and recurse on the smaller graph.  Costs O(n^2) extra
    solves, which is why it is opt-in.
    """
    keep = list(range(g.n))
    while len(keep) > k:
        for i in range(len(keep)):
            rest = keep[:i] + keep[i + 1:]
            _, vals = _values(induced_subgraph(g, rest), k, force=force,
                              triangulation=triangulation)
            if vals[k] == target:
                keep = rest
                break
        else:
            raise AssertionError("witness reduction is stuck; no vertex is "
                                 "removable, which contradicts exactness")
    return keep
