from __future__ import annotations

import csv
from pathlib import Path

import pytest

from tesscodes import census as C

TABLE = Path(__file__).parent / "data" / "table_rows.csv"


def _oracle(family: str) -> list[dict[str, str]]:
    with TABLE.open() as fh:
        return [r for r in csv.DictReader(fh) if r["family"] == family]


@pytest.mark.parametrize("family", ["1", "2", "3", "4"])
def test_tables_reproduced_row_by_row(family):
    want = _oracle(family)
    lo, hi = C.GENUS_RANGE[family]
    got = C.emit_table(family, range(lo, hi + 1))
    assert len(got) == len(want)
    for row, ref in zip(got, want):
        p = row.params
        assert (str(row.g), row.cls) == (ref["g"], ref["class"])
        assert (p.s, p.n, p.k, p.r) == tuple(int(ref[k]) for k in ("s", "n", "k", "r"))
        if family == "2":
            assert (row.alt.s, row.alt.k) == (int(ref["s2"]), int(ref["k2"]))
            assert (row.alt.n, row.alt.r) == (p.n, p.r)


def test_counts_2p2q2r_examples():
    c = C.counts_2p2q2r(3, 7, 2, 2)
    assert (c.N_f, c.N_e, c.N_v, c.F_R, c.F_G, c.F_B) == (82, 252, 168, 28, 12, 42)
    c = C.counts_2p2q2r(5, 5, 2, 2)
    assert (c.N_v, c.N_e, c.F_R, c.F_G) == (40, 60, 4, 4)
    with pytest.raises(C.CensusError, match="nonpositive denominator"):
        C.counts_2p2q2r(3, 3, 3, 2)


@pytest.mark.parametrize("p1,p2,g", [(3, 7, 2), (5, 5, 2), (3, 8, 3), (7, 14, 3), (11, 22, 5)])
def test_count_identities(p1, p2, g):
    c = C.counts_2p2q2r(p1, p2, 2, g)
    assert c.N_f == c.F_R + c.F_G + c.F_B
    assert c.N_v - c.N_e + c.N_f == c.chi == 2 - 2 * g
    assert 3 * c.N_v == 2 * c.N_e
    assert 2 * p1 * c.F_R == 2 * p2 * c.F_G == 4 * c.F_B == c.N_v
    d = C.counts_2p2q2r(p1, p2, 2, 2 * g - 1)  # doubles g - 1
    assert (d.N_v, d.N_e, d.N_f, d.F_R) == (2 * c.N_v, 2 * c.N_e, 2 * c.N_f, 2 * c.F_R)


def test_counts_p3_and_p434():
    assert C.counts_p434(7, 2) == (12, 28, 42)
    assert C.counts_p434(9, 2) == (4, 12, 18)
    assert C.counts_p3(8, 2)[0] == 6
    with pytest.raises(C.CensusError):
        C.counts_p3(6, 2)
    with pytest.raises(C.CensusError):
        C.params_family4(8, 2)


@pytest.mark.parametrize("fn,args,want", [
    (C.params_family1, (3, 7, 2), (79, 336, 17, 240)),
    (C.params_family1, (5, 5, 2), (15, 72, 5, 52)),
    (C.params_family1, (7, 3, 2), (79, 288, 9, 200)),
    (C.params_family2, (8, 2, True), (39, 144, 6, 99)),
    (C.params_family2, (8, 2, False), (41, 144, 4, 99)),
    (C.params_family2, (10, 2, True), (21, 90, 6, 63)),
    (C.params_family3, (7, 2), (77, 288, 10, 201)),
    (C.params_family3, (9, 2), (29, 120, 6, 85)),
    (C.params_family3, (7, 3), (155, 576, 19, 402)),
    (C.params_family4, (7, 2), (24, 120, 8, 88)),
    (C.params_family4, (9, 2), (8, 48, 4, 36)),
    (C.params_family4, (9, 5), (32, 192, 16, 144)),
])
def test_family_examples(fn, args, want):
    p = fn(*args)
    assert (p.s, p.n, p.k, p.r) == want
    assert p.n == p.k + p.r + p.s


def test_bombin_thm5_thm6():
    b = C.params_bombin(12, 24, 0)
    assert (b.n, b.k, b.s, b.r) == (72, 2, 22, 48)
    with pytest.raises(C.CensusError, match="inconsistent accounting"):
        C.params_bombin(16, 24, 0)
    assert C.params_thm6(3, 0, False).key() == (30, 11, 18, 1)
    t = C.params_thm5(4, 2, True)
    assert t.k == 0 and "non-encoding" in t.flags


def test_emit_table_spot_rows():
    f1 = {(r.g, r.cls): r.params for r in C.emit_table("1", range(2, 4))}
    assert f1[(3, "{6,16,4}")].key() == (384, 87, 276, 21)
    f2 = {(r.g, r.cls): r for r in C.emit_table("2", [4])}
    row = f2[(4, "{36,4,6}")]
    assert (row.params.s, row.params.n, row.params.k, row.params.r) == (33, 162, 12, 117)
    assert (row.alt.s, row.alt.k) == (35, 10)
    f4 = {(r.g, r.cls): r.params for r in C.emit_table("4", [6])}
    assert f4[(6, "{21,4,3,4}")].key() == (96, 8, 76, 12)


def test_rows_sorted_by_genus_then_descending_n():
    rows = C.emit_table("1", range(2, 6))
    keys = [(r.g, -r.params.n) for r in rows]
    assert keys == sorted(keys)


def test_all_integral_family1_classes_are_consistent():
    for g in range(2, 6):
        for p1, p2 in C.integral_classes_family1(g, pmax=60):
            p = C.params_family1(p1, p2, g)
            assert p.n == p.k + p.r + p.s and min(p.n, p.k, p.r, p.s) >= 0


def test_formula_params_from_meta():
    meta = {"family": "1", "N_e": "72", "N_v": "48", "F_R": "8", "F_G": "4", "chi": "0"}
    assert C.formula_params(meta).key() == (96, 23, 68, 5)
    assert C.formula_params({"family": "sarvepalli"}) is None
    with pytest.raises(C.CensusError):
        C.formula_params({"family": "1"})
