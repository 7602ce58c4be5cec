from __future__ import annotations

import re

import pytest

from tesscodes.hypergraph import build_bombin, build_family1, build_family2, build_thm5
from tesscodes.pauli import analyze_code, parse_pauli
from tesscodes.surface_map import square_torus, torus_tessellation


@pytest.fixture(scope="session")
def fam1_torus():
    m, col = torus_tessellation((6, 12, 4), 2, 2)
    h = build_family1(m, col)
    return m, col, h, analyze_code(h)


@pytest.fixture(scope="session")
def fam2_torus():
    m, col = torus_tessellation((12, 4, 6), 2, 2)
    h = build_family2(m, col)
    return m, col, h, analyze_code(h)


@pytest.fixture(scope="session")
def bombin_torus():
    m, col = torus_tessellation((6, 6, 6), 2, 2)
    h = build_bombin(m, col)
    return m, col, h, analyze_code(h)


@pytest.fixture(scope="session")
def thm5_torus():
    src = square_torus(2, 2)
    h = build_thm5(src)
    return src, h, analyze_code(h)


# green-face loop in a {10,8,4} family-1 face: no, one and two added vertices
LINKS_20 = ("(Z1Z2)(Z4Z5)(Z7Z8)(Z10Z11)(Z13Z14)(Z16Z17)(Z19Z20)(Z22Z23)(X1X23)(X5X7)(X11X13)"
            "(X17X19)(Y2Y4)(Y8Y10)(Y14Y16)(Y20Y22)(X3X24)(X6X9)(X12X15)(X18X21)")
LINKS_21 = LINKS_20.replace("(X1X23)", "(X23X25)(Y1Y25)")
LINKS_22 = ("(Z1Z2)(Z4Z5)(X7X26)(Y8Y10)(X11X13)(Y14Y16)(X17X19)(Y20Y22)(X23X25)(Y1Y25)(Y2Y4)"
            "(Y5Y26)(Z7Z8)(Z10Z11)(Z13Z14)(Z16Z17)(Z19Z20)(Z22Z23)(X3X24)(X6X9)(X12X15)(X18X21)")


def parse_links(text: str, n: int = 27):
    return [parse_pauli(n, f"{a} {b}") for a, b in re.findall(r"\(([XYZ]\d+)([XYZ]\d+)\)", text)]


def product(ops):
    out = ops[0]
    for o in ops[1:]:
        out = out * o
    return out


def _coloured(n, e2, e3=()):
    from tesscodes.hypergraph import Hypergraph, find_edge_coloring
    raw = Hypergraph(n, [(e, "R") for e in e2] + [(e, "B") for e in e3])
    col = find_edge_coloring(raw)
    assert col is not None
    return Hypergraph(n, [(e, col[i]) for i, (e, _) in enumerate(raw.edges)])


def _prism(k):
    e = [(i, (i + 1) % k) for i in range(k)] + [(k + i, k + (i + 1) % k) for i in range(k)]
    return _coloured(2 * k, e + [(i, k + i) for i in range(k)])


def toy_hypergraphs():
    """Small trivalent, properly edge-coloured hypergraphs (n <= 12)."""
    return {
        "K4": _coloured(4, [(0, 1), (2, 3), (0, 2), (1, 3), (0, 3), (1, 2)]),
        "prism-with-triangles": _coloured(
            6, [(0, 3), (1, 4), (2, 5), (0, 4), (1, 5), (2, 3)], [(0, 1, 2), (3, 4, 5)]),
        "K33": _coloured(6, [(a, b) for a in range(3) for b in range(3, 6)]),
        "prism3": _prism(3),
        "cube": _prism(4),
        "prism5": _prism(5),
        "prism6": _prism(6),
    }


def brute_centralizer(h):
    """Boolean mask over all 4**n phase-free Paulis: commutes with every link."""
    import numpy as np
    from tesscodes.pauli import link_operators, swap
    n = h.n
    allv = np.arange(1 << (2 * n), dtype=np.uint32)
    ok = np.ones(allv.shape, dtype=bool)
    for g in link_operators(h):
        ok &= (np.bitwise_count(allv & np.uint32(swap(g.vec, n))) & 1) == 0
    return ok


# one summary line per acceptance criterion
_ACCEPTANCE: dict[int, tuple[str, str, float]] = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    num, title = int(m.group(1)), m.group(2).replace("_", " ")
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        status = "PASS" if report.outcome == "passed" else "FAIL"
        _ACCEPTANCE[num] = (title, status, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_ACCEPTANCE):
        title, status, dur = _ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num}: {status}  {title}  ({dur:.2f} s)")
