from __future__ import annotations

import random
from itertools import product

from tesscodes import gf2


def _span(vectors):
    out = {0}
    for v in vectors:
        out |= {x ^ v for x in out}
    return out


def test_popcount_parity_bits():
    assert gf2.popcount(0b1011) == 3
    assert gf2.parity(0b1011) == 1
    assert list(gf2.bits(0b10010)) == [1, 4]
    assert gf2.from_indices([1, 4, 4]) == 0b10  # repeated index cancels


def test_basis_rank_and_membership():
    b = gf2.Basis()
    assert b.add(0b011)
    assert b.add(0b110)
    assert not b.add(0b101)
    assert b.rank == 2
    assert 0b101 in b and 0b001 not in b


def test_rank_matches_span_size():
    rng = random.Random(7)
    for _ in range(50):
        vs = [rng.getrandbits(8) for _ in range(rng.randint(0, 6))]
        assert 1 << gf2.rank(vs) == len(_span(vs))


def test_nullspace_exhaustive():
    rng = random.Random(3)
    for _ in range(30):
        ncols = rng.randint(1, 7)
        rows = [rng.getrandbits(ncols) for _ in range(rng.randint(1, 5))]
        ns = gf2.nullspace(rows, ncols)
        kernel = {x for x in range(1 << ncols) if all(not gf2.parity(r & x) for r in rows)}
        assert _span(ns) == kernel
        assert len(ns) == gf2.rank(ns)


def test_intersect_exhaustive():
    rng = random.Random(11)
    for _ in range(30):
        a = [rng.getrandbits(6) for _ in range(3)]
        b = [rng.getrandbits(6) for _ in range(3)]
        got = _span(gf2.intersect(a, b, 6))
        assert got == _span(a) & _span(b)


def test_solve_and_kernel():
    vs = [0b0011, 0b0110, 0b0101]
    c = gf2.solve(vs, 0b0101)
    acc = 0
    for i in gf2.bits(c):
        acc ^= vs[i]
    assert acc == 0b0101
    assert gf2.solve(vs, 0b1000) is None
    ker = gf2.kernel_combinations(vs)
    assert len(ker) == 1
    acc = 0
    for i in gf2.bits(ker[0]):
        acc ^= vs[i]
    assert acc == 0


def test_kernel_combinations_exhaustive():
    vs = [0b01, 0b10, 0b11, 0b01]
    ker = _span(gf2.kernel_combinations(vs))
    want = set()
    for bits in product((0, 1), repeat=len(vs)):
        acc = 0
        for v, b in zip(vs, bits):
            if b:
                acc ^= v
        if acc == 0:
            want.add(sum(b << i for i, b in enumerate(bits)))
    assert ker == want
