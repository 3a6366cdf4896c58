"""Shared hand-drawn fixtures for the leveling and table tests.

The main fixture is a three-level plane graph: a pentagon with one chord,
a square with one chord nested inside it, and a single vertex inside the
square.  Coordinates are kept so tests can derive the rotation system of
the intended drawing instead of trusting whatever embedding a planarity
checker picks.
"""

from __future__ import annotations

from dks.graph import Graph
from dks.plane import rotations_from_coordinates

FIG_NAMES = ["A", "B", "C", "D", "E", "a", "b", "c", "d", "1"]
FIG_ID = {s: i for i, s in enumerate(FIG_NAMES)}

FIG_COORDS = [
    (0.0, 0.0),    # A
    (10.0, 0.0),   # B
    (12.0, 8.0),   # C
    (6.0, 13.0),   # D
    (0.0, 8.0),    # E
    (3.0, 2.0),    # a
    (8.0, 2.0),    # b
    (8.0, 6.0),    # c
    (3.0, 6.0),    # d
    (5.5, 4.5),    # 1
]

FIG_EDGES_BY_NAME = [
    ("A", "B"), ("B", "C"), ("C", "D"), ("D", "E"), ("E", "A"), ("C", "E"),
    ("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"), ("b", "d"),
    ("a", "A"), ("b", "B"), ("c", "B"), ("c", "C"), ("c", "E"), ("d", "E"),
    ("1", "b"), ("1", "d"),
]


def fig_edges() -> list[tuple[int, int]]:
    return [(FIG_ID[u], FIG_ID[v]) for u, v in FIG_EDGES_BY_NAME]


def figure_graph(with_rotation: bool = True) -> Graph:
    edges = fig_edges()
    if not with_rotation:
        return Graph(10, edges, names=list(FIG_NAMES))
    rot = rotations_from_coordinates(FIG_COORDS, edges)
    outer = [FIG_ID[s] for s in ("A", "B", "C", "D", "E")]
    return Graph(10, edges, names=list(FIG_NAMES), rotation=rot,
                 outer_face=outer)


def nm(*names: str) -> frozenset[int]:
    """Vertex-id set from fixture names."""
    return frozenset(FIG_ID[s] for s in names)


def wheel(rim: int) -> Graph:
    """Rim cycle 0..rim-1 plus a hub (vertex `rim`) joined to every rim vertex."""
    edges = [(i, (i + 1) % rim) for i in range(rim)]
    edges += [(i, rim) for i in range(rim)]
    return Graph(rim + 1, edges)


def hex_two_pendants() -> Graph:
    """Hexagon with two separate interior pendants hanging off it.

    Both pendants end up enclosed by the same face, so leveling has to
    stitch them into one second-level component with a connector.
    """
    coords = [(0.0, 2.0), (-2.0, 1.0), (-2.0, -1.0), (0.0, -2.0),
              (2.0, -1.0), (2.0, 1.0), (0.0, 1.0), (0.0, -1.0)]
    edges = [(i, (i + 1) % 6) for i in range(6)] + [(0, 6), (3, 7)]
    rot = rotations_from_coordinates(coords, edges)
    return Graph(8, edges, rotation=rot, outer_face=list(range(6)))


def run_cli(capsys, *argv):
    """Invoke the command line in-process; -> (exit code, stdout, stderr)."""
    from dks.cli import main
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def parse_tables(text: str) -> dict:
    """TSV dump -> {header: {row label: [cells]}} with ∅ -> None."""
    tables: dict = {}
    current = None
    for line in text.splitlines():
        if line.startswith("# "):
            current = {}
            tables[line[2:]] = current
        elif line and current is not None and not line.startswith(("bx", "subset")):
            cells = line.split("\t")
            label_width = 2 if cells[0] in "01" else 1
            key = " ".join(cells[:label_width])
            current[key] = [None if c == "∅" else int(c)
                            for c in cells[label_width:]]
    return tables
