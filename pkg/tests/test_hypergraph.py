from __future__ import annotations

import pytest

from tesscodes.hypergraph import (
    BuildError, Hypergraph, PlacementInfeasible, build_bombin, build_family1, build_family2,
    build_family3, build_family4, build_sarvepalli_even, check_placement, family1_constraints,
    find_edge_coloring, load_hypergraph, petersen_fixture, place_inner_triangles,
    serialize_hypergraph, validate_hypergraph,
)
from tesscodes.surface_map import dodecahedron, torus_tessellation, truncated_octahedron


def _trivalence(h: Hypergraph) -> bool:
    return 2 * h.E2 + 3 * h.E3 == 3 * h.n


def _faces(col, c):
    return sum(1 for v in col.values() if v == c)


def test_family1_counts(fam1_torus):
    m, col, h, _ = fam1_torus
    p1, p2 = 3, 6
    F_R, F_G = _faces(col, "R"), _faces(col, "G")
    assert h.n == m.V + (p1 + 3) * F_R == 96
    assert h.E2 == 2 * p2 * F_G + (p1 + 3) * F_R == 96
    assert h.E3 == (p1 + 1) * F_R == 32
    assert _trivalence(h)
    assert validate_hypergraph(h).ok


def test_family2_counts(fam2_torus):
    m, col, h, _ = fam2_torus
    p1 = 6
    F_R, F_G = _faces(col, "R"), _faces(col, "G")
    assert h.n == m.V + p1 * F_R == 72
    assert h.E2 == 4 * F_G + p1 * F_R == 72
    assert h.E3 == p1 * F_R == 24
    assert _trivalence(h)
    assert validate_hypergraph(h).ok
    assert h.meta["tripartite"] == "no"


def test_bombin_counts(bombin_torus):
    m, col, h, _ = bombin_torus
    assert h.n == 3 * m.V  # F* = faces of the dual = vertices of the map
    assert _trivalence(h)
    assert validate_hypergraph(h).ok


def test_family4_on_dodecahedron():
    m = dodecahedron()
    h = build_family4(m)
    p, F_P, F_T = 5, m.F, m.V
    assert h.n == (p + 3) * F_P
    assert h.E2 == (p + 3) * F_P
    assert h.E3 == F_T + F_P
    assert validate_hypergraph(h).ok


def test_family4_rejects_even_p():
    m, _ = torus_tessellation((6, 6, 6), 1, 1)
    with pytest.raises(BuildError):
        build_family4(m)


def test_sarvepalli_even_faces():
    m, col = torus_tessellation((12, 4, 6), 2, 2)
    red = [f for f in range(m.F) if col[f] == "R"]
    for attach in ("B", "G"):
        h = build_sarvepalli_even(m, col, red, attach)
        assert h.n == m.V + 6 * len(red)
        assert validate_hypergraph(h).ok
    m2, col2 = torus_tessellation((6, 12, 4), 1, 1)
    hexes = [f for f in range(m2.F) if col2[f] == "R"]
    with pytest.raises(BuildError, match="multiple of 4"):
        build_sarvepalli_even(m2, col2, hexes)


def test_class_mismatch():
    m, col = torus_tessellation((12, 4, 6), 1, 1)
    with pytest.raises(BuildError, match="class mismatch"):
        build_family1(m, col)
    with pytest.raises(BuildError, match="class mismatch"):
        build_family3(m, col)
    m2, col2 = torus_tessellation((6, 12, 4), 1, 1)
    with pytest.raises(BuildError, match="class mismatch"):
        build_family2(m2, col2)


def test_registry_cycles_closed(fam1_torus, fam2_torus, bombin_torus):
    for _, _, h, _ in (fam1_torus, fam2_torus, bombin_torus):
        assert h.registry
        for c in h.registry:
            assert h.is_closed(c.edges), c.tag


def test_serialization_round_trip(fam1_torus):
    h = fam1_torus[2]
    text = serialize_hypergraph(h)
    h2 = load_hypergraph(text)
    assert h2.n == h.n and h2.edges == h.edges and h2.cuts == h.cuts and h2.meta == h.meta
    assert [(c.tag, c.edges, c.generator) for c in h2.registry] == \
        [(c.tag, c.edges, c.generator) for c in h.registry]
    assert serialize_hypergraph(h2) == text


def test_load_rejects_bad_lines():
    with pytest.raises(BuildError):
        load_hypergraph("qubits 3\ne2 0 7 R\n")
    with pytest.raises(BuildError):
        load_hypergraph("qubits 3\nbogus\n")
    with pytest.raises(BuildError):
        load_hypergraph("e2 0 1 R\n")


def test_placement_trivial_face_takes_first_subset():
    choice = place_inner_triangles({0: 5}, [])
    assert choice == {0: (0, 1, 2)}


def test_placement_synthetic_infeasible():
    # one constrained cycle meets a single edge of a 3-edge f': every choice hits it
    with pytest.raises(PlacementInfeasible) as exc:
        place_inner_triangles({0: 3}, [("C0", [(0, 1)])])
    assert exc.value.cycles == ["C0"]


def test_family1_placement_even(fam1_torus):
    m, col, h, _ = fam1_torus
    _, cons = family1_constraints(m, col)
    inner = {int(k): tuple(int(x) for x in v.split("/"))
             for k, v in (item.split(":") for item in h.meta["inner"].split(";"))}
    assert len(inner) == 8
    assert check_placement(inner, cons) == []


def test_truncated_octahedron_placement_infeasible():
    m, col = truncated_octahedron()
    with pytest.raises(PlacementInfeasible) as exc:
        build_family1(m, col)
    assert exc.value.cycles and all(t.startswith("G") for t in exc.value.cycles)


def test_h4_failure_lists_pair():
    h = Hypergraph(6, [((0, 1, 2), "B"), ((2, 3, 4), "B")])
    rep = validate_hypergraph(h)
    assert rep.failures["H4"]
    assert not rep.ok


def test_petersen_fixture():
    h = petersen_fixture()
    rep = validate_hypergraph(h)
    assert not any(rep.failures[k] for k in ("H1", "H2", "H3", "H4"))
    assert rep.failures["H5"]
    assert find_edge_coloring(h) is None
