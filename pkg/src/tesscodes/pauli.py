"""Phase-free Pauli algebra on symplectic bit vectors.

A Pauli on n qubits is stored as one integer: bits 0..n-1 are the X part,
bits n..2n-1 the Z part.  Y carries both.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from . import gf2
from .hypergraph import Hypergraph


class PauliError(ValueError):
    pass


@dataclass(frozen=True)
class PauliVector:
    n: int
    x: int
    z: int

    @property
    def vec(self) -> int:
        return self.x | self.z << self.n

    @classmethod
    def from_vec(cls, n: int, v: int) -> "PauliVector":
        return cls(n, v & ((1 << n) - 1), v >> n)

    @property
    def weight(self) -> int:
        return gf2.popcount(self.x | self.z)

    def is_identity(self) -> bool:
        return not (self.x or self.z)

    def __mul__(self, other: "PauliVector") -> "PauliVector":
        _same(self, other)
        return PauliVector(self.n, self.x ^ other.x, self.z ^ other.z)

    def __str__(self) -> str:
        return pauli_string(self)


def _same(a: PauliVector, b: PauliVector) -> None:
    if a.n != b.n:
        raise PauliError(f"size mismatch: {a.n} vs {b.n}")


def pauli(n: int, xs: Iterable[int] = (), zs: Iterable[int] = ()) -> PauliVector:
    return PauliVector(n, gf2.from_indices(xs), gf2.from_indices(zs))


def parse_pauli(n: int, text: str) -> PauliVector:
    """Inverse of :func:`pauli_string`: ``"X0 Y3 Z5"``."""
    x = z = 0
    for tok in text.split():
        p, q = tok[0], int(tok[1:])
        if p not in "XYZ" or not 0 <= q < n:
            raise PauliError(f"bad Pauli token {tok!r}")
        if p in "XY":
            x ^= 1 << q
        if p in "YZ":
            z ^= 1 << q
    return PauliVector(n, x, z)


def pauli_string(p: PauliVector) -> str:
    out = []
    for q in range(p.n):
        a, b = p.x >> q & 1, p.z >> q & 1
        if a or b:
            out.append(("X" if not b else "Y" if a else "Z") + str(q))
    return " ".join(out) or "I"


def swap(v: int, n: int) -> int:
    return (v >> n) | ((v & ((1 << n) - 1)) << n)


def commutes(a: PauliVector, b: PauliVector) -> bool:
    _same(a, b)
    return gf2.parity((a.x & b.z) ^ (a.z & b.x)) == 0


_LINK = {"R": (True, False), "G": (True, True), "B": (False, True)}


def link(n: int, verts: Sequence[int], color: str) -> PauliVector:
    hx, hz = _LINK[color]
    m = gf2.from_indices(verts)
    return PauliVector(n, m if hx else 0, m if hz else 0)


def edge_operator(h: Hypergraph, edge: int) -> PauliVector:
    if not 0 <= edge < len(h.edges):
        raise PauliError(f"unknown edge {edge}")
    verts, color = h.edges[edge]
    return link(h.n, verts, "B" if len(verts) == 3 else color)


def derived_links(h: Hypergraph) -> list[tuple[tuple[int, int], str, int]]:
    """Links of the derived ordinary graph: (pair, colour, source edge)."""
    out = []
    for i, (verts, color) in enumerate(h.edges):
        if len(verts) == 2:
            out.append(((verts[0], verts[1]), color, i))
        else:
            for a, b in combinations(verts, 2):
                out.append(((a, b), "B", i))
    return out


def link_operators(h: Hypergraph) -> list[PauliVector]:
    return [link(h.n, pr, c) for pr, c, _ in derived_links(h)]


# ---------------------------------------------------------------- subspaces


class BinarySubspace:
    """Span of Pauli vectors, held as a reduced echelon basis."""

    def __init__(self, n: int, basis: gf2.Basis | None = None):
        self.n = n
        self.basis = basis or gf2.Basis()

    @property
    def rank(self) -> int:
        return self.basis.rank

    def add(self, v: PauliVector | int) -> bool:
        return self.basis.add(self._vec(v))

    def _vec(self, v: PauliVector | int) -> int:
        if isinstance(v, PauliVector):
            if v.n != self.n:
                raise PauliError(f"size mismatch: {v.n} vs {self.n}")
            return v.vec
        return v

    def __contains__(self, v: PauliVector | int) -> bool:
        return self._vec(v) in self.basis

    def vectors(self) -> list[int]:
        return self.basis.vectors()

    def paulis(self) -> list[PauliVector]:
        return [PauliVector.from_vec(self.n, v) for v in self.vectors()]


def span(gens: Iterable[PauliVector], n: int | None = None) -> BinarySubspace:
    gens = list(gens)
    if n is None:
        if not gens:
            raise PauliError("empty span needs n")
        n = gens[0].n
    sp = BinarySubspace(n)
    for g in gens:
        sp.add(g)
    return sp


def member(space: BinarySubspace, v: PauliVector) -> bool:
    return v in space


def intersect(a: BinarySubspace, b: BinarySubspace) -> BinarySubspace:
    if a.n != b.n:
        raise PauliError("size mismatch")
    return BinarySubspace(a.n, gf2.Basis(gf2.intersect(a.vectors(), b.vectors(), 2 * a.n)))


def centralizer(space: BinarySubspace) -> BinarySubspace:
    n = space.n
    rows = [swap(v, n) for v in space.vectors()]
    return BinarySubspace(n, gf2.Basis(gf2.nullspace(rows, 2 * n)))


# ---------------------------------------------------------------- code analysis


@dataclass
class GroupAnalysis:
    n: int
    dim_gauge: int
    s: int
    r: int
    k: int
    gauge: BinarySubspace
    stabilizer_basis: BinarySubspace
    centralizer_basis: BinarySubspace

    def params(self) -> tuple[int, int, int, int]:
        return (self.n, self.s, self.r, self.k)


def commutation_violations(h: Hypergraph, limit: int = 10) -> list[tuple[int, int]]:
    """Edge pairs whose operators disagree with the shared-vertex parity rule.

    Two distinct edges anticommute exactly when they share an odd number of
    vertices and are not both triangles.
    """
    ops = [edge_operator(h, i) for i in range(len(h.edges))]
    inc = h.incident()
    bad = []
    seen = set()
    for v in range(h.n):
        for i, j in combinations(sorted(set(inc[v])), 2):
            if (i, j) in seen:
                continue
            seen.add((i, j))
            shared = len(set(h.edges[i][0]) & set(h.edges[j][0]))
            both3 = len(h.edges[i][0]) == 3 and len(h.edges[j][0]) == 3
            expect = both3 or shared % 2 == 0
            if commutes(ops[i], ops[j]) != expect:
                bad.append((i, j))
                if len(bad) >= limit:
                    return bad
    return bad


def analyze_code(h: Hypergraph, check_commutation: bool = True) -> GroupAnalysis:
    if check_commutation:
        bad = commutation_violations(h)
        if bad:
            raise PauliError(f"commutation rule violated on edge pairs {bad[:3]}")
    G = span(link_operators(h), h.n)
    C = centralizer(G)
    S = intersect(G, C)
    s = S.rank
    if (G.rank - s) % 2:
        raise PauliError(f"non-integral r: dim G={G.rank}, s={s}")
    r = (G.rank - s) // 2
    return GroupAnalysis(h.n, G.rank, s, r, h.n - r - s, G, S, C)


def loop_operator(h: Hypergraph, edges: Iterable[int]) -> PauliVector:
    edges = list(edges)
    if not h.is_closed(edges):
        raise PauliError("edge set is not a closed hypercycle")
    v = 0
    for e in edges:
        v ^= edge_operator(h, e).vec
    return PauliVector.from_vec(h.n, v)


def verify_gloop_identity(h: Hypergraph, analysis: GroupAnalysis | None = None) -> tuple[bool, str]:
    """Image of the cycle space under W versus the centralizer of G."""
    from .homology import cycle_space
    a = analysis or analyze_code(h)
    image = span((loop_operator(h, gf2.bits(c)) for c in cycle_space(h)), h.n)
    ok = image.rank == a.centralizer_basis.rank and all(v in a.centralizer_basis for v in image.vectors())
    return ok, f"dim W(cycles)={image.rank} dim C(G)={a.centralizer_basis.rank}"


# ---------------------------------------------------------------- syndrome order


@dataclass
class SyndromeOrder:
    feasible: bool
    order: list[int]          # indices into the supplied link list
    reason: str = ""


def _order_subset(vecs: list[int], n: int, budget: list[int]) -> list[int] | None:
    """Order links so each anticommutes with an even number of earlier ones.

    Works backwards on the anticommutation graph: the last link must have
    even degree among all others, so peel such links off one at a time.
    Links in different components commute, so components are solved
    separately and memoised.
    """
    m = len(vecs)
    sw = [swap(v, n) for v in vecs]
    adj = [0] * m
    for i in range(m):
        for j in range(i + 1, m):
            if gf2.parity(vecs[i] & sw[j]):
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    memo: dict[int, list[int] | None] = {}

    def components(mask: int) -> list[int]:
        out = []
        while mask:
            seed = mask & -mask
            comp = seed
            grow = seed
            while grow:
                low = grow & -grow
                grow ^= low
                nb = adj[low.bit_length() - 1] & mask & ~comp
                comp |= nb
                grow |= nb
            out.append(comp)
            mask &= ~comp
        return out

    def solve(mask: int) -> list[int] | None:
        if mask in memo:
            return memo[mask]
        budget[0] -= 1
        if budget[0] < 0:
            return None
        comps = components(mask)
        res: list[int] | None
        if len(comps) > 1:
            res = []
            for c in comps:
                sub = solve(c)
                if sub is None:
                    res = None
                    break
                res += sub
        elif mask & (mask - 1) == 0:
            res = [mask.bit_length() - 1]
        else:
            res = None
            for i in gf2.bits(mask):
                if gf2.popcount(adj[i] & mask) % 2 == 0:
                    sub = solve(mask ^ 1 << i)
                    if sub is not None:
                        res = sub + [i]
                        break
        if budget[0] >= 0:
            memo[mask] = res
        return res

    return solve((1 << m) - 1) if m else []


def syndrome_order(target: PauliVector, links: Sequence[PauliVector],
                   max_decompositions: int = 4096, budget: int = 2_000_000) -> SyndromeOrder:
    """Order links so each commutes with the product of those before it.

    Only the supplied links are used; every subset whose product is the
    target is tried in turn.
    """
    if not links:
        return SyndromeOrder(target.is_identity(), [], "" if target.is_identity() else "no links")
    n = target.n
    vecs = [l.vec for l in links]
    base = gf2.solve(vecs, target.vec)
    if base is None:
        raise PauliError("target is not in the span of the links")
    kern = gf2.kernel_combinations(vecs)
    kdim = len(kern)
    tries = min(1 << kdim, max_decompositions)
    left = [budget]
    for mask in range(tries):
        c = base
        for j in range(kdim):
            if mask >> j & 1:
                c ^= kern[j]
        idx = list(gf2.bits(c))
        if not idx:
            return SyndromeOrder(True, [])
        sub = _order_subset([vecs[i] for i in idx], n, left)
        if sub is not None:
            return SyndromeOrder(True, [idx[i] for i in sub])
        if left[0] < 0:
            return SyndromeOrder(False, [], "search budget exhausted")
    why = "no valid ordering" + ("" if tries == 1 << kdim else " (decomposition cap reached)")
    return SyndromeOrder(False, [], why)


def cycle_links(h: Hypergraph, edges: Iterable[int]) -> list[PauliVector]:
    """Links of the derived graph lying on the given edges."""
    edges = set(edges)
    return [link(h.n, pr, c) for pr, c, src in derived_links(h) if src in edges]


def support_links(h: Hypergraph, edges: Iterable[int]) -> list[PauliVector]:
    """Links of the derived graph with both ends on the cycle's vertices.

    A triangle's Z⊗Z⊗Z is not a product of its own three links, so the
    cycle's loop operator needs the neighbouring links on the same vertices.
    """
    verts = {v for i in edges for v in h.edges[i][0]}
    return [link(h.n, pr, c) for pr, c, _ in derived_links(h) if pr[0] in verts and pr[1] in verts]


def check_order(order: Sequence[PauliVector]) -> bool:
    prod = None
    for op in order:
        if prod is not None and not commutes(op, prod):
            return False
        prod = op if prod is None else prod * op
    return True


# ---------------------------------------------------------------- distance


def brute_min_dressed_weight(a: GroupAnalysis, weight_cap: int) -> int | None:
    """Least weight of an operator commuting with S but outside G."""
    if a.k < 1:
        raise PauliError("no logical qubits")
    n = a.n
    S = [swap(v, n) for v in a.stabilizer_basis.vectors()]
    G = a.gauge.basis
    for w in range(1, weight_cap + 1):
        for sup in combinations(range(n), w):
            for letters in _letters(w):
                x = z = 0
                for q, l in zip(sup, letters):
                    if l & 1:
                        x |= 1 << q
                    if l & 2:
                        z |= 1 << q
                v = x | z << n
                if any(gf2.parity(v & s) for s in S):
                    continue
                if v not in G:
                    return w
    return None


def _letters(w: int):
    if w == 0:
        yield ()
        return
    for rest in _letters(w - 1):
        for l in (1, 2, 3):
            yield rest + (l,)
