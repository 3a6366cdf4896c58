"""Unit and golden tests for the outerplanar DP.

The seven-vertex fixture below (outer cycle c-b-a-e-f-g-d plus chords
b-e, b-g, c-g) has every intermediate table hand-computed; the fold is
checked bit-for-bit against those tables, None (= no subgraph of that
size with that endpoint trace) included.
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dks.errors import NotOuterplanar
from dks.graph import Graph, parse_edge_list
from dks.oracle import brute_force_all_k, brute_force_slice_table
from dks.dp_outerplanar import (
    block_outer_cycle,
    is_outerplanar,
    leaf_table,
    merge_tables,
    solve_outerplanar_values,
)

FIXTURE = "c b\nb a\na e\ne f\nf g\ng d\nd c\nb e\nb g\nc g\n"

N = None
LEAF = [[0, N, N], [N, 0, N], [N, 0, N], [N, N, 1]]

# Hand-computed and oracle-verified (see the slice-oracle crosscheck
# below, which re-derives every cell by exhaustive enumeration).
EXPECTED_MERGES = {
    # (x, y): rows (0,0), (0,1), (1,0), (1,1); columns k' = 0..min(k, span size)
    ("b", "e"): [[0, 0, N, N], [N, 0, 1, N], [N, 0, 1, N], [N, N, 1, 3]],
    ("b", "f"): [[0, 0, 1, N, N], [N, 0, 1, 2, N], [N, 0, 1, 3, N], [N, N, 0, 2, 4]],
    ("b", "g"): [[0, 0, 1, 2, N, N], [N, 0, 1, 2, 3, N],
                 [N, 0, 1, 3, 4, N], [N, N, 1, 2, 4, 6]],
    ("g", "c"): [[0, 0, N, N], [N, 0, 1, N], [N, 0, 1, N], [N, N, 1, 3]],
    # (0,1) k=4 is 4 via {b,e,f,g}: edges b-e, e-f, f-g, b-g
    ("c", "g"): [[0, 0, 1, 3, 4, N, N], [N, 0, 1, 2, 4, 6, N],
                 [N, 0, 1, 2, 4, 5, N], [N, N, 1, 3, 4, 6, 8]],
    # (1,1) k=4 is 5 via {b,c,d,g}: edges c-b, b-g, c-g, g-d, d-c
    ("c", "c"): [[0, 0, 1, 3, 4, 6, 7, N], [N] * 8, [N] * 8,
                 [N, 0, 1, 3, 5, 6, 8, 10]],
}

EXPECTED_VALUES = [0, 0, 1, 3, 5, 6, 8, 10]


def run_fixture(variant="prose"):
    g = parse_edge_list(FIXTURE)
    leaves, merges = {}, {}

    def tr(event, t):
        key = (g.names[t.x], g.names[t.y])
        rows = [list(r) for r in t.rows]
        if event == "leaf":
            leaves[key] = rows
        elif event == "merge":
            assert key not in merges, f"duplicate merge label {key}"
            merges[key] = rows

    values = solve_outerplanar_values(g, 7, trace=tr, variant=variant)
    return g, leaves, merges, values


def test_fixture_leaf_tables():
    _, leaves, _, _ = run_fixture()
    assert set(leaves) == {("c", "b"), ("b", "a"), ("a", "e"), ("e", "f"),
                           ("f", "g"), ("g", "d"), ("d", "c")}
    for key, rows in leaves.items():
        assert rows == LEAF, key


def test_fixture_merge_tables_bit_exact():
    _, _, merges, _ = run_fixture()
    assert set(merges) == set(EXPECTED_MERGES)
    for key in EXPECTED_MERGES:
        assert merges[key] == EXPECTED_MERGES[key], f"table {key} mismatch"


def test_fixture_extracted_values():
    _, _, _, values = run_fixture()
    assert values == EXPECTED_VALUES
    assert brute_force_all_k(parse_edge_list(FIXTURE)) == EXPECTED_VALUES


def test_golden_tables_against_slice_oracle():
    """Every golden cell re-derived by exhaustive enumeration.

    A merged table with labels (x, y) covers a contiguous arc of the
    outer cycle; its countable edges are exactly the real edges induced
    on the arc (chords close when the arc spans both endpoints).
    """
    g = parse_edge_list(FIXTURE)
    vid = {nm: i for i, nm in enumerate(g.names)}
    cycle = "cbaefgd"
    arcs = {("b", "e"): "bae", ("b", "f"): "baef", ("b", "g"): "baefg",
            ("g", "c"): "gdc", ("c", "g"): "cbaefg", ("c", "c"): cycle}
    for (xn, yn), rows in EXPECTED_MERGES.items():
        span = [vid[c] for c in arcs[(xn, yn)]]
        sset = set(span)
        induced = {(u, v) for u, v in g.edges if u in sset and v in sset}
        boundary = [vid[xn]] if xn == yn else [vid[xn], vid[yn]]
        kmax = len(rows[0]) - 1
        oracle = brute_force_slice_table(g, span, induced, boundary, kmax)
        for bx in (0, 1):
            for by in (0, 1):
                if xn == yn and bx != by:
                    assert all(v is None for v in rows[(bx << 1) | by])
                    continue
                a = frozenset({vid[xn]} if bx else set()) | \
                    frozenset({vid[yn]} if by else set())
                for kp in range(kmax + 1):
                    assert rows[(bx << 1) | by][kp] == oracle[(a, kp)], \
                        (xn, yn, bx, by, kp)


def test_fixture_pseudocode_variant_loses_cells():
    # Under the weaker size rule the closing merge misplaces selections
    # that contain the coincident endpoint but not the middle vertex.
    # On this fixture the damage is confined to one cell of the final
    # table; the extracted optima happen to survive.
    _, _, merges, values = run_fixture(variant="pseudocode")
    assert values == EXPECTED_VALUES
    for key in EXPECTED_MERGES:
        if key == ("c", "c"):
            continue
        assert merges[key] == EXPECTED_MERGES[key], f"table {key} mismatch"
    jrows = merges[("c", "c")]
    expected = [list(r) for r in EXPECTED_MERGES[("c", "c")]]
    expected[3][1] = None  # {c} alone is placed at k'=2, not 1
    assert jrows == expected


def test_pseudocode_size_rule_breaks_cutpoint_attachment():
    # Bowtie: two triangles sharing vertex 0.  Under the weaker rule the
    # hanging triangle's "only the cutpoint" cell goes missing, so the
    # other triangle can no longer be assembled: the answer drops below
    # the true optimum.  This is why the weaker rule is not the default.
    g = Graph(n=5, edges=[(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)])
    assert brute_force_all_k(g)[3] == 3
    assert solve_outerplanar_values(g, 3)[3] == 3
    assert solve_outerplanar_values(g, 3, variant="pseudocode")[3] == 2


def test_fixture_explicit_root_orientation():
    g = parse_edge_list(FIXTURE)
    vid = {nm: i for i, nm in enumerate(g.names)}
    vals = solve_outerplanar_values(g, 7, root=vid["e"], first=vid["f"])
    assert vals == EXPECTED_VALUES
    # reversed orientation
    vals = solve_outerplanar_values(g, 7, root=vid["e"], first=vid["a"])
    assert vals == EXPECTED_VALUES


def test_leaf_table_shape():
    t = leaf_table(4, 9, k=5)
    assert t.rows == [[0, N, N], [N, 0, N], [N, 0, N], [N, N, 1]]
    assert t.vcount == 2 and t.counts_label_edge


def test_merge_empty_cells_are_reset_per_k():
    # two disjoint path edges sharing the middle vertex: row (0,0) has no
    # size-2 subset avoiding both endpoints, so that cell must stay None
    g = Graph(n=3, edges=[(0, 1), (1, 2)])
    t = merge_tables(leaf_table(0, 1, 3), leaf_table(1, 2, 3), g, 3)
    assert t.rows[0] == [0, 0, N, N]


# ------------------------------------------------------------ outer cycle


def test_block_outer_cycle_on_fixture():
    g = parse_edge_list(FIXTURE)
    blocks, _ = g.blocks_and_cutpoints()
    assert len(blocks) == 1
    vs = sorted({u for e in blocks[0] for u in e})
    cycle = block_outer_cycle(vs, blocks[0])
    names = [g.names[v] for v in cycle]
    assert names[0] == "c"
    assert names in (["c", "b", "a", "e", "f", "g", "d"],
                     ["c", "d", "g", "f", "e", "a", "b"])


def test_block_outer_cycle_rejects_k4():
    edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    with pytest.raises(NotOuterplanar):
        block_outer_cycle([0, 1, 2, 3], edges)


def test_rejects_k23():
    # K_{2,3} is planar but not outerplanar
    g = Graph(n=5, edges=[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)])
    assert not is_outerplanar(g)
    blocks, _ = g.blocks_and_cutpoints()
    vs = sorted({u for e in blocks[0] for u in e})
    with pytest.raises(NotOuterplanar):
        block_outer_cycle(vs, blocks[0])


def test_is_outerplanar_accepts_trees_and_cycles():
    assert is_outerplanar(Graph(n=4, edges=[(0, 1), (1, 2), (2, 3)]))
    assert is_outerplanar(Graph(n=5, edges=[(i, (i + 1) % 5) for i in range(5)]))


# ------------------------------------------------- cutpoints and bridges


def check_against_oracle(g, kmax=None):
    kmax = g.n if kmax is None else kmax
    expected = brute_force_all_k(g)
    got = solve_outerplanar_values(g, kmax)
    assert got == expected[:kmax + 1], (got, expected[:kmax + 1])


def test_bowtie():
    g = Graph(n=5, edges=[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
    check_against_oracle(g)


def test_two_triangles_joined_by_bridge():
    g = Graph(n=6, edges=[(0, 1), (1, 2), (0, 2), (2, 3),
                          (3, 4), (4, 5), (3, 5)])
    check_against_oracle(g)


def test_star_and_paths():
    check_against_oracle(Graph(n=5, edges=[(0, i) for i in range(1, 5)]))
    check_against_oracle(Graph(n=6, edges=[(i, i + 1) for i in range(5)]))
    check_against_oracle(Graph(n=2, edges=[(0, 1)]))
    check_against_oracle(Graph(n=1, edges=[]))


def test_small_k_on_larger_graph():
    g = parse_edge_list(FIXTURE)
    vals = solve_outerplanar_values(g, 3)
    assert vals == [0, 0, 1, 3]


def test_long_path_stays_fast():
    n = 20000
    g = Graph(n=n, edges=[(i, i + 1) for i in range(n - 1)])
    vals = solve_outerplanar_values(g, 4)
    assert vals == [0, 0, 1, 2, 3]


# --------------------------------------------------------- random graphs


@st.composite
def outerplanar_gadget(draw, lo=3, hi=8):
    """Cycle plus random non-crossing chords, as local vertex ids."""
    n = draw(st.integers(lo, hi))
    edges = [(i, (i + 1) % n) for i in range(n)]
    tries = draw(st.lists(
        st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=6))
    accepted = []
    for a, b in tries:
        a, b = min(a, b), max(a, b)
        if b - a < 2 or (a == 0 and b == n - 1):
            continue
        if any(x < a < y < b or a < x < b < y for x, y in accepted):
            continue
        if (a, b) not in accepted:
            accepted.append((a, b))
    return n, edges + accepted


@st.composite
def outerplanar_graphs(draw):
    """Several gadgets glued at cutpoints, plus optional pendant edges."""
    count = draw(st.integers(1, 3))
    edges: list[tuple[int, int]] = []
    n = 0
    for _ in range(count):
        gn, gedges = draw(outerplanar_gadget(3, 6))
        if n == 0:
            remap = list(range(gn))
        else:
            share = draw(st.integers(0, n - 1))
            remap = [share] + list(range(n, n + gn - 1))
        edges += [(remap[u], remap[v]) for u, v in gedges]
        n = max(n, max(remap) + 1)
    for _ in range(draw(st.integers(0, 2))):
        v = draw(st.integers(0, n - 1))
        edges.append((v, n))
        n += 1
    return Graph(n=n, edges=edges)


@given(outerplanar_graphs())
@settings(max_examples=80, deadline=None)
def test_matches_oracle_on_random_outerplanar(g):
    if g.n > 18:
        return
    expected = brute_force_all_k(g)
    assert solve_outerplanar_values(g, g.n) == expected


@given(outerplanar_graphs(), st.integers(0, 5))
@settings(max_examples=40, deadline=None)
def test_pseudocode_rule_never_overestimates(g, k):
    # misplaced candidates land at larger k' with values that are
    # feasible there, so the weaker rule can only lose candidates
    if g.n > 18:
        return
    k = min(k, g.n)
    a = solve_outerplanar_values(g, k, variant="prose")
    b = solve_outerplanar_values(g, k, variant="pseudocode")
    for va, vb in zip(a, b):
        assert vb is None or vb <= va
