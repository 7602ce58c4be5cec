"""Cycle space, homology classes and triangle-minimal nontrivial cycles.

Homology is read off from the builder's cut data.  Regions are open disks
of the surface that avoid every triangle; cut edges are the only rank-2
edges a curve passes when moving between regions.  A closed curve through
regions (a cycle of the region graph) pairs with a hypercycle by the parity
of shared cut edges.  Curves that merely circle a triangle-carrying cluster
pair to zero with every hypercycle, so the pairing only sees surface
homology.  A hypercycle is trivial when every pairing vanishes.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from . import gf2
from .hypergraph import Hypergraph
from .surface_map import CombinatorialMap, dual


class HomologyError(ValueError):
    pass


def _mask(edges: Iterable[int]) -> int:
    return gf2.from_indices(edges)


def cycle_space(h: Hypergraph) -> list[int]:
    """Basis of hypercycles as edge bitmasks."""
    rows = [0] * h.n
    for i, (e, _) in enumerate(h.edges):
        for v in e:
            rows[v] ^= 1 << i
    return gf2.nullspace(rows, len(h.edges))


def connected_components(h: Hypergraph) -> int:
    parent = list(range(h.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e, _ in h.edges:
        for v in e[1:]:
            parent[find(v)] = find(e[0])
    return len({find(v) for v in range(h.n)})


def pairing_functionals(h: Hypergraph) -> list[int]:
    """Cut-edge masks of a basis of closed region curves."""
    if not h.cuts:
        raise HomologyError("hypergraph carries no cut data")
    regions = sorted({r for _, a, b in h.cuts for r in (a, b)})
    pos = {r: i for i, r in enumerate(regions)}
    rows = [0] * len(regions)
    for j, (_, a, b) in enumerate(h.cuts):
        if a != b:
            rows[pos[a]] ^= 1 << j
            rows[pos[b]] ^= 1 << j
    out = []
    for c in gf2.nullspace(rows, len(h.cuts)):
        m = 0
        for j in gf2.bits(c):
            m ^= 1 << h.cuts[j][0]
        out.append(m)
    return out


@dataclass
class HomologyDecomposition:
    cycle_basis: list[int]
    boundary_basis: gf2.Basis
    functionals: list[int]   # independent on the cycle space
    h1_dim: int

    def coords(self, cycle: int) -> tuple[int, ...]:
        return tuple(gf2.parity(cycle & f) for f in self.functionals)


def homology(h: Hypergraph) -> HomologyDecomposition:
    Z = cycle_space(h)
    raw = pairing_functionals(h)
    # restrict each functional to the cycle basis, keep an independent set
    kept: list[int] = []
    seen = gf2.Basis()
    for f in raw:
        sig = gf2.from_indices(i for i, z in enumerate(Z) if gf2.parity(z & f))
        if sig and seen.add(sig):
            kept.append(f)
    # trivial cycles: kernel of the restricted pairing
    sigs = [gf2.from_indices(j for j, f in enumerate(kept) if gf2.parity(z & f)) for z in Z]
    B = gf2.Basis()
    for comb in gf2.kernel_combinations(sigs):
        v = 0
        for i in gf2.bits(comb):
            v ^= Z[i]
        B.add(v)
    if B.rank + len(kept) != len(Z):
        raise HomologyError("inconsistent homology decomposition")
    # hypercycles may reach only part of the surface homology (e.g. the
    # inflated build on a non-bipartite source), never more of it
    chi = h.meta.get("chi")
    if chi is not None and len(kept) > 2 - int(chi):
        raise HomologyError(f"{len(kept)} homology classes exceed 2g = {2 - int(chi)}")
    return HomologyDecomposition(Z, B, kept, len(kept))


def boundary_space(h: Hypergraph) -> gf2.Basis:
    return homology(h).boundary_basis


def h1(h: Hypergraph) -> int:
    return homology(h).h1_dim


def homology_class(h: Hypergraph, cycle: Iterable[int] | int,
                   dec: HomologyDecomposition | None = None) -> tuple[int, ...]:
    m = cycle if isinstance(cycle, int) else _mask(cycle)
    if not h.is_closed(gf2.bits(m)):
        raise HomologyError("not a closed hypercycle")
    return (dec or homology(h)).coords(m)


def is_trivial(h: Hypergraph, cycle: Iterable[int] | int,
               dec: HomologyDecomposition | None = None) -> bool:
    return not any(homology_class(h, cycle, dec))


# ---------------------------------------------------------------- min triangles


@dataclass
class CycleReport:
    triangles: int
    cls: tuple[int, ...]
    edges: list[int]
    optimal: bool = True

    def row(self) -> str:
        c = "".join(map(str, self.cls))
        return f"class={c} triangles={self.triangles} edges={','.join(map(str, self.edges))}"


def min_triangles_nontrivial(h: Hypergraph, budget: int = 2_000_000,
                             dec: HomologyDecomposition | None = None) -> CycleReport:
    """Least number of triangles over nontrivial closed hypercycles.

    A hypercycle is its triangle set plus rank-2 paths pairing the
    triangle vertices inside each component of the rank-2 subgraph.  Once
    rank-2 cycles are known to be trivial, the class depends only on the
    triangle set: each triangle carries a label (component parities, class
    contribution) and the answer is the fewest labels summing to
    (even parities, nonzero class).  A breadth-first search over label sums,
    probed from both ends, finds it exactly.
    """
    dec = dec or homology(h)
    if dec.h1_dim == 0:
        raise HomologyError("trivial homology: no nontrivial cycle exists")
    n = h.n
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for i in h.rank2:
        a, b = h.edges[i][0]
        adj[a].append((b, i))
        adj[b].append((a, i))
    comp = [-1] * n
    path = [0] * n  # rank-2 edge mask from the component root
    roots = []
    for s in range(n):
        if comp[s] >= 0:
            continue
        c = len(roots)
        roots.append(s)
        comp[s] = c
        q = deque([s])
        while q:
            u = q.popleft()
            for v, e in adj[u]:
                if comp[v] < 0:
                    comp[v] = c
                    path[v] = path[u] ^ (1 << e)
                    q.append(v)
    # rank-2 cycles: any nontrivial one means zero triangles suffice
    for i in h.rank2:
        a, b = h.edges[i][0]
        z = path[a] ^ path[b] ^ (1 << i)
        if any(dec.coords(z)):
            return CycleReport(0, dec.coords(z), sorted(gf2.bits(z)))
    H = dec.h1_dim
    label: dict[int, list[int]] = {}
    for t in h.rank3:
        par = 0
        pot = 0
        for v in h.edges[t][0]:
            par ^= 1 << comp[v]
            pot ^= path[v]
        cls = dec.coords(pot)
        key = par << H | gf2.from_indices(j for j, x in enumerate(cls) if x)
        label.setdefault(key, []).append(t)
    keys = sorted(label)
    targets = [c for c in range(1, 1 << H)]
    # Labels are involutions, so an optimal sum of t labels splits into
    # halves reached from 0 and from the target in ceil(t/2) and floor(t/2)
    # steps.  Growing one BFS and probing state ^ target finds every
    # solution of size <= 2i once layer i is complete.
    prev: dict[int, tuple[int, int]] = {0: (0, -1)}
    dist = {0: 0}
    frontier = [0]
    best: tuple[int, int, int] | None = None  # (size, state, target)
    depth = 0
    nodes = 0

    def probe(st: int) -> None:
        nonlocal best
        for c in targets:
            other = dist.get(st ^ c)
            if other is not None and (best is None or dist[st] + other < best[0]):
                best = (dist[st] + other, st, c)

    while frontier and (best is None or best[0] > 2 * depth):
        depth += 1
        nxt = []
        for st in frontier:
            for k in keys:
                ns = st ^ k
                if ns in dist:
                    continue
                dist[ns] = depth
                prev[ns] = (st, k)
                nxt.append(ns)
                probe(ns)
                nodes += 1
                if nodes > budget:
                    raise HomologyError(f"search budget exhausted at {2 * depth} triangles; bound not proven")
        frontier = nxt
    if best is None:
        raise HomologyError("no nontrivial hypercycle found")
    _, st, c = best
    return _witness(h, dec, [*_path(prev, st), *_path(prev, st ^ c)], label, path)


def _path(prev: dict[int, tuple[int, int]], state: int) -> list[int]:
    keys = []
    while state:
        state, k = prev[state]
        keys.append(k)
    return keys


def _witness(h, dec, keys, label, path) -> CycleReport:
    odd: set[int] = set()
    for k in keys:
        odd ^= {k}  # a label used by both halves cancels
    tris = sorted(label[k][0] for k in odd)
    m = 0
    for t in tris:
        m ^= 1 << t
        for v in h.edges[t][0]:
            m ^= path[v]
    if not h.is_closed(gf2.bits(m)):
        raise HomologyError("internal: witness not closed")
    cls = dec.coords(m)
    if not any(cls):
        raise HomologyError("internal: witness is trivial")
    return CycleReport(len(tris), cls, sorted(gf2.bits(m)))


def min_triangles_bruteforce(h: Hypergraph, max_dim: int = 22) -> int:
    """Exhaustive minimum over the whole cycle space (tiny instances only)."""
    dec = homology(h)
    Z = dec.cycle_basis
    if len(Z) > max_dim:
        raise HomologyError(f"cycle space too large for exhaustive search ({len(Z)})")
    tri = _mask(h.rank3)
    best = None
    # Gray-code walk over all combinations
    v = 0
    for i in range(1, 1 << len(Z)):
        v ^= Z[(i & -i).bit_length() - 1]
        if any(dec.coords(v)):
            t = gf2.popcount(v & tri)
            if best is None or t < best:
                best = t
    if best is None:
        raise HomologyError("no nontrivial hypercycle")
    return best


# ---------------------------------------------------------------- Bombín bounds


def map_cycle_is_trivial(m: CombinatorialMap, edge_mask: int, faces: gf2.Basis | None = None) -> bool:
    """Edge set of an ordinary map is a sum of face boundaries."""
    if faces is None:
        faces = face_boundary_basis(m)
    return edge_mask in faces


def face_boundary_basis(m: CombinatorialMap) -> gf2.Basis:
    B = gf2.Basis()
    for cyc in m.face_darts:
        v = 0
        for d in cyc:
            v ^= 1 << m.edge_of[d]
        B.add(v)
    return B


def shortest_noncontractible(m: CombinatorialMap) -> tuple[int, list[int]]:
    """Fewest edges in a homologically nontrivial cycle of the map's graph.

    Every root gets a BFS tree; each non-tree edge closes a cycle with the
    two tree paths.  Vertex ids break ties, so the result is deterministic.
    """
    faces = face_boundary_basis(m)
    nb: list[list[tuple[int, int]]] = [[] for _ in range(m.V)]
    for e, (d, dd) in enumerate(m.edge_darts):
        a, b = m.vertex_of[d], m.vertex_of[dd]
        nb[a].append((b, e))
        nb[b].append((a, e))
    for lst in nb:
        lst.sort()
    best: tuple[int, list[int]] | None = None
    for r in range(m.V):
        dist = [-1] * m.V
        pth = [0] * m.V
        tree_edge = [-1] * m.V
        dist[r] = 0
        q = deque([r])
        while q:
            u = q.popleft()
            for v, e in nb[u]:
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    pth[v] = pth[u] ^ (1 << e)
                    tree_edge[v] = e
                    q.append(v)
        for e, (d, dd) in enumerate(m.edge_darts):
            a, b = m.vertex_of[d], m.vertex_of[dd]
            if tree_edge[a] == e or tree_edge[b] == e:
                continue
            length = dist[a] + dist[b] + 1
            if best is not None and length >= best[0]:
                continue
            z = pth[a] ^ pth[b] ^ (1 << e)
            if z in faces:
                continue
            w = gf2.popcount(z)
            if best is None or w < best[0]:
                best = (w, sorted(gf2.bits(z)))
    if best is None:
        raise HomologyError("every cycle is contractible")
    return best


def bombin_bounds(h: Hypergraph, source: CombinatorialMap) -> tuple[int, int]:
    """(d_T, d_L): triangle bound above, dual-graph loop length below."""
    if h.meta.get("family") != "bombin":
        raise HomologyError("not a Bombín-style build")
    d_T = min_triangles_nontrivial(h).triangles
    d_L, _ = shortest_noncontractible(dual(source))
    return d_T, d_L
