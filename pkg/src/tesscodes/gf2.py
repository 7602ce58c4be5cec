"""Dense GF(2) linear algebra on Python integers used as bit rows.

Bit ``i`` of a row is column ``i``.  Rows of a few thousand bits are cheap
to XOR, which is all Gaussian elimination needs.
"""
from __future__ import annotations

from typing import Iterable, Iterator


def popcount(v: int) -> int:
    return bin(v).count("1")


def parity(v: int) -> int:
    return popcount(v) & 1


def bits(v: int) -> Iterator[int]:
    """Indices of set bits, ascending."""
    while v:
        low = v & -v
        yield low.bit_length() - 1
        v ^= low


def from_indices(idx: Iterable[int]) -> int:
    v = 0
    for i in idx:
        v ^= 1 << i
    return v


class Basis:
    """Incremental echelon basis keyed by leading (highest) bit.

    Rows are kept fully reduced against each other, so the row set is a
    canonical reduced echelon form of the span.
    """

    __slots__ = ("rows",)

    def __init__(self, vectors: Iterable[int] = ()):
        self.rows: dict[int, int] = {}
        for v in vectors:
            self.add(v)

    def reduce(self, v: int) -> int:
        # rows hold no foreign pivot bits, so one pass in any order suffices
        for k, r in self.rows.items():
            if v >> k & 1:
                v ^= r
        return v

    def add(self, v: int) -> bool:
        v = self.reduce(v)
        if not v:
            return False
        top = v.bit_length() - 1
        bit = 1 << top
        for k, r in self.rows.items():
            if r & bit:
                self.rows[k] = r ^ v
        self.rows[top] = v
        return True

    def __contains__(self, v: int) -> bool:
        return self.reduce(v) == 0

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def vectors(self) -> list[int]:
        return [self.rows[k] for k in sorted(self.rows)]

    def copy(self) -> "Basis":
        b = Basis()
        b.rows = dict(self.rows)
        return b


def rank(vectors: Iterable[int]) -> int:
    return Basis(vectors).rank


def nullspace(rows: Iterable[int], ncols: int) -> list[int]:
    """Basis of {x : popcount(r & x) even for every row r}."""
    piv: dict[int, int] = {}  # pivot column (lowest bit) -> row
    for r in rows:
        for c, pr in piv.items():
            if r >> c & 1:
                r ^= pr
        if not r:
            continue
        c = (r & -r).bit_length() - 1
        for k in list(piv):
            if piv[k] >> c & 1:
                piv[k] ^= r
        piv[c] = r
    out = []
    for f in range(ncols):
        if f in piv:
            continue
        v = 1 << f
        for c, pr in piv.items():
            if pr >> f & 1:
                v |= 1 << c
        out.append(v)
    return out


def intersect(a: Iterable[int], b: Iterable[int], width: int) -> list[int]:
    """Basis of span(a) ∩ span(b) (Zassenhaus on stacked rows)."""
    basis = Basis()
    for v in a:
        basis.add((v << width) | v)
    for v in b:
        basis.add(v << width)
    mask = (1 << width) - 1
    return [r & mask for r in basis.vectors() if r >> width == 0 and r & mask]


def solve(vectors: list[int], target: int) -> int | None:
    """Coefficient mask c with XOR_{i in c} vectors[i] == target, or None."""
    rows: dict[int, tuple[int, int]] = {}
    for i, v in enumerate(vectors):
        tag = 1 << i
        while v:
            top = v.bit_length() - 1
            if top in rows:
                rv, rt = rows[top]
                v ^= rv
                tag ^= rt
            else:
                rows[top] = (v, tag)
                break
    t, tag = target, 0
    while t:
        top = t.bit_length() - 1
        if top not in rows:
            return None
        rv, rt = rows[top]
        t ^= rv
        tag ^= rt
    return tag


def kernel_combinations(vectors: list[int]) -> list[int]:
    """Basis of coefficient masks c with XOR_{i in c} vectors[i] == 0."""
    rows: dict[int, tuple[int, int]] = {}
    out = []
    for i, v in enumerate(vectors):
        tag = 1 << i
        while v:
            top = v.bit_length() - 1
            if top in rows:
                rv, rt = rows[top]
                v ^= rv
                tag ^= rt
            else:
                rows[top] = (v, tag)
                break
        if not v:
            out.append(tag)
    return out
