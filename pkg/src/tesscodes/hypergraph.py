"""Hypergraph constructions on coloured maps and their validation.

Every builder returns a :class:`Hypergraph` whose registry holds the
per-face hypercycles that give stabilizer generators, plus the data the
homology module needs: a set of "cut" rank-2 edges, each separating two
regions of the surface that avoid all triangles.  Closed curves drawn
through those regions only ever cross cut edges.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .surface_map import (
    COLORS, CombinatorialMap, check_trivalent_3colorable, class_of,
    is_tripartite, reduced_red_graph,
)


class BuildError(ValueError):
    pass


class PlacementInfeasible(BuildError):
    def __init__(self, msg: str, cycles: Sequence[int]):
        super().__init__(msg)
        self.cycles = list(cycles)


@dataclass(frozen=True)
class RegistryCycle:
    tag: str          # e.g. "R3.sigma2"
    edges: frozenset[int]
    generator: bool = True  # counted among the stabilizer generators


@dataclass
class Hypergraph:
    n: int
    edges: list[tuple[tuple[int, ...], str]]  # rank-2 edges first, then rank-3
    registry: list[RegistryCycle] = field(default_factory=list)
    cuts: list[tuple[int, int, int]] = field(default_factory=list)  # (edge, region, region)
    meta: dict[str, str] = field(default_factory=dict)

    @property
    def rank2(self) -> list[int]:
        return [i for i, (e, _) in enumerate(self.edges) if len(e) == 2]

    @property
    def rank3(self) -> list[int]:
        return [i for i, (e, _) in enumerate(self.edges) if len(e) == 3]

    @property
    def E2(self) -> int:
        return len(self.rank2)

    @property
    def E3(self) -> int:
        return len(self.rank3)

    def incident(self) -> list[list[int]]:
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for i, (e, _) in enumerate(self.edges):
            for v in e:
                inc[v].append(i)
        return inc

    def cycle(self, tag: str) -> RegistryCycle:
        for c in self.registry:
            if c.tag == tag:
                return c
        raise KeyError(tag)

    def is_closed(self, edge_set: Iterable[int]) -> bool:
        deg = [0] * self.n
        for i in edge_set:
            for v in self.edges[i][0]:
                deg[v] ^= 1
        return not any(deg)

    def triangle_count(self, edge_set: Iterable[int]) -> int:
        return sum(1 for i in edge_set if len(self.edges[i][0]) == 3)


# ---------------------------------------------------------------- assembly


class _Assembler:
    """Collects keyed edges, then orders rank-2 before rank-3."""

    def __init__(self, n: int):
        self.n = n
        self.keys: dict[object, int] = {}
        self.items: list[tuple[tuple[int, ...], str]] = []

    def vertex(self) -> int:
        self.n += 1
        return self.n - 1

    def edge(self, key, verts: Sequence[int], color: str) -> None:
        if key in self.keys:
            raise BuildError(f"duplicate edge key {key}")
        self.keys[key] = len(self.items)
        self.items.append((tuple(verts), color))

    def finish(self) -> tuple[list[tuple[tuple[int, ...], str]], dict[object, int]]:
        order = sorted(range(len(self.items)), key=lambda i: (len(self.items[i][0]), i))
        pos = {old: new for new, old in enumerate(order)}
        edges = [self.items[i] for i in order]
        return edges, {k: pos[i] for k, i in self.keys.items()}


def _xor(sets: Iterable[Iterable[object]]) -> set:
    out: set = set()
    for s in sets:
        out ^= set(s)
    return out


def _solve_placement(sizes: dict[int, int], constraints: list[tuple[str, list[tuple[int, int]]]],
                     fixed: dict[int, tuple[int, ...]] | None = None) -> dict[int, tuple[int, ...]]:
    """Pick 3 of the f'-edges of every face so each constraint hits evenly.

    ``sizes`` maps face -> number of f'-edges; a constraint is a list of
    (face, edge index) items.  Faces are assigned in id order with 3-subsets
    in lexicographic order, so the first solution is deterministic.
    """
    faces = sorted(sizes)
    rank = {f: i for i, f in enumerate(faces)}
    items_of: list[dict[int, set[int]]] = []
    last: dict[int, list[int]] = {f: [] for f in faces}
    for ci, (_, items) in enumerate(constraints):
        per: dict[int, set[int]] = {}
        for f, j in items:
            per.setdefault(f, set()).symmetric_difference_update({j})
        items_of.append(per)
        if per:
            last[max(per, key=rank.__getitem__)].append(ci)
        # empty constraint: always even
    cands: dict[int, list[tuple[int, ...]]] = {}
    for f in faces:
        if fixed and f in fixed:
            cands[f] = [tuple(fixed[f])]
        else:
            cands[f] = list(combinations(range(sizes[f]), 3))
    choice: dict[int, tuple[int, ...]] = {}
    budget = [200000]

    def ok(ci: int) -> bool:
        par = 0
        for f, js in items_of[ci].items():
            par ^= len(js.intersection(choice[f])) & 1
        return par == 0

    def go(i: int) -> bool:
        if i == len(faces):
            return True
        budget[0] -= 1
        if budget[0] < 0:
            return False
        f = faces[i]
        for c in cands[f]:
            choice[f] = c
            if all(ok(ci) for ci in last[f]) and go(i + 1):
                return True
        del choice[f]
        return False

    if not go(0):
        # witness: constraints left odd by the first candidate of every face
        choice = {f: cands[f][0] for f in faces}
        bad = [ci for ci in range(len(constraints)) if items_of[ci] and not ok(ci)]
        raise PlacementInfeasible(
            "no inner-triangle placement leaves every constrained hypercycle even"
            + (" (search budget exhausted)" if budget[0] < 0 else ""),
            [constraints[ci][0] for ci in bad])
    return dict(choice)


def place_inner_triangles(sizes: dict[int, int], constraints: list[tuple[str, list[tuple[int, int]]]],
                          fixed: dict[int, tuple[int, ...]] | None = None) -> dict[int, tuple[int, ...]]:
    return _solve_placement(sizes, constraints, fixed)


def check_placement(choice: dict[int, tuple[int, ...]],
                    constraints: list[tuple[str, list[tuple[int, int]]]]) -> list[str]:
    """Tags of constraints left with odd added-vertex parity."""
    bad = []
    for tag, items in constraints:
        par = sum(1 for f, j in items if j in choice.get(f, ())) & 1
        if par:
            bad.append(tag)
    return bad


# ---------------------------------------------------------------- Γ_h on red faces


class _FaceData:
    __slots__ = ("darts", "attach_pos", "corners", "tri", "fp", "kept", "inner", "subdiv")

    def __init__(self):
        self.darts: list[int] = []
        self.attach_pos: list[int] = []
        self.corners: list[int] = []
        self.tri: list[object] = []
        self.fp: list[list[object]] = []   # f'-edge keys per corner gap
        self.kept: list[object] = []       # tessellation edge key per gap
        self.inner: object | None = None
        self.subdiv: list[int] = []


def _edge_class(m: CombinatorialMap, col: dict[int, str], e: int) -> frozenset[str]:
    d, dd = m.edge_darts[e]
    return frozenset((col[m.face_of[d]], col[m.face_of[dd]]))


class _GammaH:
    """Shared machinery for the f'-insertion constructions."""

    def __init__(self, m: CombinatorialMap, col: dict[int, str], red: Sequence[int],
                 attach: str, inner: dict[int, tuple[int, ...]] | None,
                 phase: dict[int, int] | None = None):
        rep = check_trivalent_3colorable(m, col)
        if not rep.ok:
            raise BuildError(f"input map is not trivalent and properly 3-coloured: {rep}")
        if attach not in ("B", "G"):
            raise BuildError("attach colour must be B or G")
        self.m, self.col = m, col
        self.attach = attach
        self.other = "G" if attach == "B" else "B"
        self.red = sorted(red)
        red_set = set(self.red)
        for f in self.red:
            if col[f] != "R":
                raise BuildError(f"face {f} is not red")
        A = _Assembler(m.V)
        self.A = A
        absorbed = set()
        self.face: dict[int, _FaceData] = {}
        for f in self.red:
            fd = _FaceData()
            fd.darts = list(m.face_darts[f])
            fd.attach_pos = [i for i, d in enumerate(fd.darts)
                             if col[m.face_of[m.alpha[d]]] == attach]
            k = len(fd.attach_pos)
            if 2 * k != len(fd.darts):
                raise BuildError(f"red face {f} does not alternate colours")
            fd.corners = [A.vertex() for _ in range(k)]
            for j, i in enumerate(fd.attach_pos):
                d = fd.darts[i]
                absorbed.add(m.edge_of[d])
                key = ("tri", f, j)
                A.edge(key, (m.vertex_of[d], m.vertex_of[m.alpha[d]], fd.corners[j]), "B")
                fd.tri.append(key)
            self.face[f] = fd
        # surviving tessellation edges
        rg = frozenset(("R", self.other))
        rb = frozenset(("R", attach))
        for e in range(m.E):
            if e in absorbed:
                continue
            cls = _edge_class(m, col, e)
            c = "R" if cls == rg else "B" if cls == rb else "G"
            d, dd = m.edge_darts[e]
            A.edge(("t", e), (m.vertex_of[d], m.vertex_of[dd]), c)
        # f' cycles, possibly subdivided, and inner triangles
        inner = inner or {}
        for f in self.red:
            fd = self.face[f]
            k = len(fd.corners)
            chosen = set(inner.get(f, ()))
            if chosen and len(chosen) != 3:
                raise BuildError("inner triangle needs exactly three f' edges")
            seq: list[tuple[object, int, int]] = []
            for j in range(k):
                a, b = fd.corners[j], fd.corners[(j + 1) % k]
                kd = fd.darts[(fd.attach_pos[j] + 1) % len(fd.darts)]
                fd.kept.append(("t", m.edge_of[kd]))
                if j in chosen:
                    t = A.vertex()
                    fd.subdiv.append(t)
                    seq += [(("fp", f, j, 0), a, t), (("fp", f, j, 1), t, b)]
                    fd.fp.append([("fp", f, j, 0), ("fp", f, j, 1)])
                else:
                    seq.append((("fp", f, j), a, b))
                    fd.fp.append([("fp", f, j)])
            if len(seq) % 2:
                raise BuildError(f"f' cycle of face {f} has odd length; an inner triangle is required")
            ph = (phase or {}).get(f, 0)
            for i, (key, a, b) in enumerate(seq):
                A.edge(key, (a, b), "R" if (i + ph) % 2 == 0 else "G")
            if chosen:
                fd.inner = ("in", f)
                A.edge(fd.inner, tuple(fd.subdiv), "B")
        self.edges, self.index = A.finish()
        self.n = A.n
        # lookups
        self.tri_at: dict[int, object] = {}
        self.tri_far: dict[int, int] = {}  # triangle-mate vertex on the tessellation
        for f in self.red:
            fd = self.face[f]
            for j, i in enumerate(fd.attach_pos):
                d = fd.darts[i]
                u, x = m.vertex_of[d], m.vertex_of[m.alpha[d]]
                self.tri_at[u] = self.tri_at[x] = fd.tri[j]
                self.tri_far[u], self.tri_far[x] = x, u
        self.class_edge: dict[tuple[int, frozenset], int] = {}
        for e in range(m.E):
            cls = _edge_class(m, col, e)
            d, dd = m.edge_darts[e]
            for v in (m.vertex_of[d], m.vertex_of[dd]):
                self.class_edge[(v, cls)] = e
        self.gap_of: dict[int, tuple[int, int]] = {}  # tessellation edge -> (red face, gap)
        for f in self.red:
            for j, key in enumerate(self.face[f].kept):
                self.gap_of[key[1]] = (f, j)
        self.red_set = red_set

    def idx(self, keys: Iterable[object]) -> frozenset[int]:
        return frozenset(self.index[k] for k in keys)

    def red_cycles(self, f: int) -> tuple[frozenset[int], frozenset[int]]:
        fd = self.face[f]
        s1 = {k for ks in fd.fp for k in ks}
        s2 = set(fd.tri) | set(fd.kept)
        s2 |= {k for k in s1 if self.edges[self.index[k]][1] == "R"}
        if fd.inner is not None:
            s2.add(fd.inner)
        return self.idx(s1), self.idx(s2)

    def boundary(self, f: int) -> frozenset[int]:
        """Rank-2 boundary of a face that lost no edge to triangles."""
        keys = [("t", self.m.edge_of[d]) for d in self.m.face_darts[f]]
        return self.idx(keys)

    def outer_edge(self, v: int) -> object:
        return ("t", self.class_edge[(v, frozenset((self.attach, self.other)))])

    def cuts(self) -> list[tuple[int, int, int]]:
        m = self.m
        out = []
        for e in range(m.E):
            key = ("t", e)
            if key not in self.index:
                continue
            d, dd = m.edge_darts[e]
            a, b = m.face_of[d], m.face_of[dd]
            if a in self.red_set or b in self.red_set:
                continue
            out.append((self.index[key], a, b))
        return out

    def hypergraph(self, registry: list[RegistryCycle], meta: dict[str, str]) -> Hypergraph:
        h = Hypergraph(self.n, self.edges, registry, self.cuts(), meta)
        for c in registry:
            if not h.is_closed(c.edges):
                raise BuildError(f"registry cycle {c.tag} is not closed")
        return h


def _map_meta(m: CombinatorialMap, col: dict[int, str]) -> dict[str, str]:
    cnt = {c: sum(1 for f in range(m.F) if col[f] == c) for c in COLORS}
    return {"N_v": str(m.V), "N_e": str(m.E), "N_f": str(m.F), "chi": str(m.euler_characteristic),
            "F_R": str(cnt["R"]), "F_G": str(cnt["G"]), "F_B": str(cnt["B"])}


def _require_class(m, col, ok: Callable[[tuple[int, int, int]], bool], what: str) -> tuple[int, int, int]:
    cls = class_of(m, col)
    if cls is None or not ok(cls):
        raise BuildError(f"class mismatch: need {what}, got {cls}")
    return cls


# ---------------------------------------------------------------- families 1-3


def _require_simple_adjacency(m: CombinatorialMap) -> None:
    """Face cycles are only well defined when two faces share at most one edge."""
    seen: dict[tuple[int, int], int] = {}
    for d in range(m.dart_count):
        f, g = m.face_of[d], m.face_of[m.alpha[d]]
        if f == g:
            raise BuildError(f"face {f} borders itself; use a larger cell count")
        seen[(f, g)] = seen.get((f, g), 0) + 1
        if seen[(f, g)] > 1:
            raise BuildError(f"faces {f} and {g} share more than one edge; use a larger cell count")


def family1_constraints(m: CombinatorialMap, col: dict[int, str]) -> tuple[dict[int, int], list]:
    """Per green face: the f'-edges whose kept edge borders it."""
    sizes = {f: len(m.face_darts[f]) // 2 for f in range(m.F) if col[f] == "R"}
    gap: dict[int, tuple[int, int]] = {}
    for f in sizes:
        darts = m.face_darts[f]
        att = [i for i, d in enumerate(darts) if col[m.face_of[m.alpha[d]]] == "B"]
        for j, i in enumerate(att):
            gap[m.edge_of[darts[(i + 1) % len(darts)]]] = (f, j)
    cons = []
    for g in range(m.F):
        if col[g] != "G":
            continue
        items = [gap[m.edge_of[d]] for d in m.face_darts[g] if m.edge_of[d] in gap]
        cons.append((f"G{g}.sigma2", items))
    return sizes, cons


def build_family1(m: CombinatorialMap, col: dict[int, str],
                  inner: dict[int, tuple[int, ...]] | None = None) -> Hypergraph:
    p = _require_class(m, col, lambda c: c[0] % 4 == 2 and c[0] > 4 and c[2] == 4,
                       "{2p1,2p2,4} with odd p1 > 2")
    _require_simple_adjacency(m)
    sizes, cons = family1_constraints(m, col)
    if inner is None:
        inner = place_inner_triangles(sizes, cons)
    bad = check_placement(inner, cons)
    if bad:
        raise PlacementInfeasible("placement leaves odd constrained cycles", bad)
    G = _GammaH(m, col, sorted(sizes), "B", inner)
    reg: list[RegistryCycle] = []
    for f in G.red:
        s1, s2 = G.red_cycles(f)
        reg += [RegistryCycle(f"R{f}.sigma1", s1), RegistryCycle(f"R{f}.sigma2", s2),
                RegistryCycle(f"R{f}.sigma3", s1 ^ s2, False)]
    for g in range(m.F):
        if col[g] != "G":
            continue
        s1 = G.boundary(g)
        keys: set = set()
        for d in m.face_darts[g]:
            u = m.vertex_of[d]
            keys.add(G.tri_at[u])
            keys.add(G.outer_edge(G.tri_far[u]))
            e = m.edge_of[d]
            if e in G.gap_of:
                f, j = G.gap_of[e]
                keys.add(("t", e))
                keys.update(G.face[f].fp[j])
        s2 = G.idx(keys)
        reg += [RegistryCycle(f"G{g}.sigma1", s1), RegistryCycle(f"G{g}.sigma2", s2),
                RegistryCycle(f"G{g}.sigma3", s1 ^ s2, False)]
    meta = {"family": "1", "class": ",".join(map(str, p)), **_map_meta(m, col),
            "inner": _fmt_inner(inner)}
    return G.hypergraph(reg, meta)


def _fmt_inner(inner: dict[int, tuple[int, ...]]) -> str:
    return ";".join(f"{f}:{'/'.join(map(str, c))}" for f, c in sorted(inner.items()))


def _fbar(G: _GammaH, f: int) -> frozenset[int]:
    """Hypercycle around red face f through its squares and hexagons."""
    m = G.m
    keys: set = set()
    for j, kkey in enumerate(G.face[f].kept):
        e = kkey[1]
        keys.add(kkey)
        d = next(x for x in m.edge_darts[e] if m.face_of[x] == f)
        q = m.face_of[m.alpha[d]]
        for dq in m.face_darts[q]:
            eq = m.edge_of[dq]
            if eq == e:
                continue
            if eq in G.gap_of:
                f2, j2 = G.gap_of[eq]
                keys.add(("t", eq))
                keys.update(G.face[f2].fp[j2])
                for x in m.edge_darts[eq]:
                    v = m.vertex_of[x]
                    keys.add(G.tri_at[v])
                    keys.add(G.outer_edge(G.tri_far[v]))
            else:
                keys.add(("t", eq))
    # the tessellation edge shared with f2 must not appear; drop kept edges of neighbours
    for e2 in list(k for k in keys if isinstance(k, tuple) and k[0] == "t"):
        if e2[1] in G.gap_of and G.gap_of[e2[1]][0] != f:
            keys.discard(e2)
    return G.idx(keys)


def family3_constraints(m: CombinatorialMap, col: dict[int, str]) -> tuple[dict[int, int], list]:
    """Per red face: the neighbours' f'-edges used by its enclosing cycle."""
    sizes = {f: len(m.face_darts[f]) // 2 for f in range(m.F) if col[f] == "R"}
    gap: dict[int, tuple[int, int]] = {}
    for f in sizes:
        darts = m.face_darts[f]
        att = [i for i, d in enumerate(darts) if col[m.face_of[m.alpha[d]]] == "B"]
        for j, i in enumerate(att):
            gap[m.edge_of[darts[(i + 1) % len(darts)]]] = (f, j)
    cons = []
    for f in sorted(sizes):
        items = []
        for d in m.face_darts[f]:
            e = m.edge_of[d]
            if e not in gap:
                continue
            q = m.face_of[m.alpha[d]]
            for dq in m.face_darts[q]:
                eq = m.edge_of[dq]
                if eq != e and eq in gap:
                    items.append(gap[eq])
        cons.append((f"R{f}.fbar", items))
    return sizes, cons


def _build_family23(m, col, inner, family: str) -> Hypergraph:
    sizes, cons = family3_constraints(m, col)
    if family == "3":
        if inner is None:
            inner = place_inner_triangles(sizes, cons)
        bad = check_placement(inner, cons)
        if bad:
            raise PlacementInfeasible("placement leaves odd constrained cycles", bad)
    else:
        inner = {}
    G = _GammaH(m, col, sorted(sizes), "B", inner)
    reg: list[RegistryCycle] = []
    for f in G.red:
        s1, s2 = G.red_cycles(f)
        reg += [RegistryCycle(f"R{f}.sigma1", s1), RegistryCycle(f"R{f}.sigma2", s2),
                RegistryCycle(f"R{f}.sigma3", s1 ^ s2, False),
                RegistryCycle(f"R{f}.fbar", _fbar(G, f))]
    for g in range(m.F):
        if col[g] == "G":
            reg.append(RegistryCycle(f"G{g}.sigma1", G.boundary(g)))
    tri = is_tripartite(reduced_red_graph(m, col))
    meta = {"family": family, "class": ",".join(map(str, class_of(m, col))),
            **_map_meta(m, col), "tripartite": "yes" if tri else "no"}
    if family == "3":
        meta["inner"] = _fmt_inner(inner)
    return G.hypergraph(reg, meta)


def build_family2(m: CombinatorialMap, col: dict[int, str]) -> Hypergraph:
    _require_class(m, col, lambda c: c[0] % 4 == 0 and c[0] > 8 and c[1:] == (4, 6),
                   "{2p1,4,6} with even p1 > 4")
    _require_simple_adjacency(m)
    return _build_family23(m, col, None, "2")


def build_family3(m: CombinatorialMap, col: dict[int, str],
                  inner: dict[int, tuple[int, ...]] | None = None) -> Hypergraph:
    _require_class(m, col, lambda c: c[0] % 4 == 2 and c[0] > 12 and c[1:] == (4, 6),
                   "{2p1,4,6} with odd p1 > 6")
    _require_simple_adjacency(m)
    return _build_family23(m, col, inner, "3")


def build_sarvepalli_even(m: CombinatorialMap, col: dict[int, str], faces: Sequence[int],
                          attach: str = "B") -> Hypergraph:
    """f' insertion without inner triangles on the chosen red faces."""
    for f in faces:
        size = len(m.face_darts[f])
        if size % 4 or size <= 4:
            raise BuildError(f"face {f} has {size} sides; need a multiple of 4 above 4")
    G = _GammaH(m, col, faces, attach, None)
    reg: list[RegistryCycle] = []
    for f in G.red:
        s1, s2 = G.red_cycles(f)
        reg += [RegistryCycle(f"R{f}.sigma1", s1), RegistryCycle(f"R{f}.sigma2", s2),
                RegistryCycle(f"R{f}.sigma3", s1 ^ s2, False)]
    meta = {"family": "sarvepalli", "attach": attach, **_map_meta(m, col)}
    return G.hypergraph(reg, meta)


def build_thm5(source: CombinatorialMap) -> Hypergraph:
    """Inflate any map to a trivalent one and insert f' in every vertex face."""
    from .surface_map import inflate_trivalent, is_bipartite, simple_graph
    m, col = inflate_trivalent(source)
    red = [f for f in range(m.F) if col[f] == "R"]
    h = build_sarvepalli_even(m, col, red, "B")
    pairs = [(source.vertex_of[d], source.vertex_of[source.alpha[d]]) for d in range(source.dart_count)]
    loops = any(a == b for a, b in pairs)
    bip = not loops and is_bipartite(simple_graph(source.V, [(a, b) for a, b in pairs if a != b]))
    h.meta.update({"family": "thm5", "e": str(source.E), "bipartite": "yes" if bip else "no"})
    return h


# ---------------------------------------------------------------- corner constructions


def _corner_build(m: CombinatorialMap, inner: dict[int, tuple[int, ...]] | None,
                  face_start: Callable[[int], int] | None = None):
    """Qubit per dart (corner), triangle per vertex, polygon per face.

    Corner c(d) sits at vertex(d) inside face(d).  The polygon edge for dart
    d joins c(d) and c(phi d), running along edge(d) on the side of face(d).
    """
    A = _Assembler(m.dart_count)
    inner = inner or {}
    sub: dict[int, list[int]] = {}
    pieces: dict[int, list[object]] = {}
    for f, cyc in enumerate(m.face_darts):
        chosen = set(inner.get(f, ()))
        seq = []
        for j, d in enumerate(cyc):
            a, b = d, m.phi[d]
            if j in chosen:
                t = A.vertex()
                sub.setdefault(f, []).append(t)
                seq += [(("p", d, 0), a, t), (("p", d, 1), t, b)]
                pieces[d] = [("p", d, 0), ("p", d, 1)]
            else:
                seq.append((("p", d), a, b))
                pieces[d] = [("p", d)]
        if len(seq) % 2:
            raise BuildError(f"face {f} polygon has odd length; an inner triangle is required")
        start = face_start(f) if face_start else 0
        for i, (key, a, b) in enumerate(seq):
            A.edge(key, (a, b), "R" if (i + start) % 2 == 0 else "G")
        if chosen:
            A.edge(("in", f), tuple(sub[f]), "B")
    for v, darts in enumerate(m.vertex_darts):
        if len(darts) != 3:
            raise BuildError(f"vertex {v} is not trivalent")
        A.edge(("tri", v), tuple(darts), "B")
    edges, index = A.finish()
    return A.n, edges, index, pieces


def _corner_registry(m, edges, index, pieces, has_inner: bool) -> list[RegistryCycle]:
    reg = []
    for f, cyc in enumerate(m.face_darts):
        s1 = {k for d in cyc for k in pieces[d]}
        s2 = {("tri", m.vertex_of[d]) for d in cyc}
        s2 |= {k for k in s1 if edges[index[k]][1] == "R"}
        if has_inner and ("in", f) in index:
            s2.add(("in", f))
        for d in cyc:
            s2.update(pieces[m.alpha[d]])
        i1 = frozenset(index[k] for k in s1)
        i2 = frozenset(index[k] for k in s2)
        reg += [RegistryCycle(f"F{f}.sigma1", i1), RegistryCycle(f"F{f}.sigma2", i2),
                RegistryCycle(f"F{f}.sigma3", i1 ^ i2, False)]
    return reg


def build_bombin(m: CombinatorialMap, col: dict[int, str]) -> Hypergraph:
    """Colour-code style graph: a triangle per vertex, a square per edge.

    Triangles are stored as rank-3 edges; their gauge content (three ZZ
    links of rank 2) is identical to three blue rank-2 edges.
    """
    rep = check_trivalent_3colorable(m, col)
    if not rep.ok:
        raise BuildError(f"input map is not trivalent and properly 3-coloured: {rep}")
    n, edges, index, pieces = _corner_build(m, None)
    reg = _corner_registry(m, edges, index, pieces, False)
    # red faces (with their triangles and edge squares) are the clusters;
    # curves run through green/blue polygons and squares of G-B edges
    cuts = []
    for d in range(m.dart_count):
        f, g = m.face_of[d], m.face_of[m.alpha[d]]
        if col[f] == "R" or col[g] == "R":
            continue
        for k in pieces[d]:
            cuts.append((index[k], f, m.F + m.edge_of[d]))
    cnt = _map_meta(m, col)
    meta = {"family": "bombin", "V_star": str(m.F), "F_star": str(m.V), **cnt}
    h = Hypergraph(n, edges, reg, cuts, meta)
    for c in reg:
        if not h.is_closed(c.edges):
            raise BuildError(f"registry cycle {c.tag} is not closed")
    return h


def family4_constraints(m: CombinatorialMap) -> tuple[dict[int, int], list]:
    pos = {}
    for f, cyc in enumerate(m.face_darts):
        for j, d in enumerate(cyc):
            pos[d] = (f, j)
    sizes = {f: len(c) for f, c in enumerate(m.face_darts)}
    cons = [(f"F{f}.sigma2", [pos[m.alpha[d]] for d in cyc]) for f, cyc in enumerate(m.face_darts)]
    return sizes, cons


def build_family4(m: CombinatorialMap, inner: dict[int, tuple[int, ...]] | None = None) -> Hypergraph:
    """{p,4,3,4} from a {p,3} map with odd p, one inner triangle per p-gon."""
    sizes = {len(c) for c in m.face_darts}
    if len(sizes) != 1 or any(len(v) != 3 for v in m.vertex_darts):
        raise BuildError("family 4 needs a {p,3} map")
    p = sizes.pop()
    if p % 2 == 0 or p < 5:
        raise BuildError(f"family 4 needs odd p, got {p}")
    fs, cons = family4_constraints(m)
    if inner is None:
        inner = place_inner_triangles(fs, cons)
    bad = check_placement(inner, cons)
    if bad:
        raise PlacementInfeasible("placement leaves odd constrained cycles", bad)
    n, edges, index, pieces = _corner_build(m, inner)
    reg = _corner_registry(m, edges, index, pieces, True)
    meta = {"family": "4", "p": str(p), "F_P": str(m.F), "F_T": str(m.V), "F_Q": str(m.E),
            "chi": str(m.euler_characteristic), "inner": _fmt_inner(inner)}
    h = Hypergraph(n, edges, reg, [], meta)
    for c in reg:
        if not h.is_closed(c.edges):
            raise BuildError(f"registry cycle {c.tag} is not closed")
    return h


# ---------------------------------------------------------------- validation


@dataclass
class ValidationReport:
    failures: dict[str, list] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not any(self.failures.values())

    def lines(self) -> list[str]:
        out = []
        for h in ("H1", "H2", "H3", "H4", "H5"):
            w = self.failures.get(h, [])
            out.append(f"{h} {'pass' if not w else 'fail'}" + (f" witness={w[:3]}" if w else ""))
        return out


def validate_hypergraph(h: Hypergraph) -> ValidationReport:
    rep = ValidationReport({k: [] for k in ("H1", "H2", "H3", "H4", "H5")})
    for i, (e, c) in enumerate(h.edges):
        if len(e) not in (2, 3) or len(set(e)) != len(e) or any(not 0 <= v < h.n for v in e):
            rep.failures["H1"].append(("edge", i))
        if c not in COLORS or (len(e) == 3 and c != "B"):
            rep.failures["H5"].append(("colour", i))
    inc = h.incident()
    for v in range(h.n):
        if len(inc[v]) != 3:
            rep.failures["H2"].append(("vertex", v, len(inc[v])))
    seen: dict[tuple[int, int], int] = {}
    for i, (e, _) in enumerate(h.edges):
        for a, b in combinations(sorted(e), 2):
            if (a, b) in seen:
                rep.failures["H3"].append(("edges", seen[(a, b)], i))
            seen[(a, b)] = i
    owner: dict[int, int] = {}
    for i in h.rank3:
        for v in h.edges[i][0]:
            if v in owner:
                rep.failures["H4"].append(("triangles", owner[v], i))
            owner[v] = i
    for v in range(h.n):
        cols = [h.edges[i][1] for i in inc[v]]
        if len(cols) != len(set(cols)):
            rep.failures["H5"].append(("vertex", v, tuple(cols)))
    return rep


def find_edge_coloring(h: Hypergraph) -> list[str] | None:
    """Any proper 3-colouring with rank-3 edges forced to B, by exhaustive search."""
    inc = h.incident()
    order = list(range(len(h.edges)))
    col: list[str | None] = [None] * len(h.edges)

    def go(i):
        if i == len(order):
            return True
        e = order[i]
        opts = ["B"] if len(h.edges[e][0]) == 3 else list(COLORS)
        for c in opts:
            if all(col[o] != c for v in h.edges[e][0] for o in inc[v] if o != e):
                col[e] = c
                if go(i + 1):
                    return True
        col[e] = None
        return False

    return list(col) if go(0) else None  # type: ignore[arg-type]


def petersen_fixture() -> Hypergraph:
    """Petersen graph as a rank-2 hypergraph: (H1)-(H4) hold, (H5) cannot."""
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, 5 + i) for i in range(5)]
    edges = [(e, "R") for e in outer] + [(e, "G") for e in inner] + [(e, "B") for e in spokes]
    # greedy colours on the odd outer cycle clash somewhere; no proper choice exists
    cols = ["R", "G", "R", "G", "B"]
    edges = [((a, b), cols[i]) for i, ((a, b), _) in enumerate(edges[:5])] + edges[5:]
    return Hypergraph(10, edges, meta={"family": "fixture", "name": "petersen"})


# ---------------------------------------------------------------- text format


def serialize_hypergraph(h: Hypergraph) -> str:
    lines = [f"qubits {h.n}"]
    for e, c in h.edges:
        if len(e) == 2:
            lines.append(f"e2 {e[0]} {e[1]} {c}")
    for e, c in h.edges:
        if len(e) == 3:
            lines.append(f"e3 {e[0]} {e[1]} {e[2]}")
    for c in h.registry:
        flag = "" if c.generator else "*"
        lines.append(f"cycle {c.tag}{flag} " + " ".join(map(str, sorted(c.edges))))
    for e, a, b in h.cuts:
        lines.append(f"cut {e} {a} {b}")
    for k in sorted(h.meta):
        lines.append(f"meta {k}={h.meta[k]}")
    return "\n".join(lines) + "\n"


def load_hypergraph(text: str) -> Hypergraph:
    n = None
    e2: list[tuple[tuple[int, ...], str]] = []
    e3: list[tuple[tuple[int, ...], str]] = []
    reg, cuts, meta = [], [], {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        tok = raw.split()
        if not tok or tok[0].startswith("#"):
            continue
        try:
            if tok[0] == "qubits" and len(tok) == 2:
                n = int(tok[1])
            elif tok[0] == "e2" and len(tok) == 4:
                if e3:
                    raise BuildError("e2 line after e3 lines")
                e2.append(((int(tok[1]), int(tok[2])), tok[3]))
            elif tok[0] == "e3" and len(tok) == 4:
                e3.append(((int(tok[1]), int(tok[2]), int(tok[3])), "B"))
            elif tok[0] == "cycle" and len(tok) >= 2:
                tag = tok[1]
                gen = not tag.endswith("*")
                reg.append(RegistryCycle(tag.rstrip("*"), frozenset(int(t) for t in tok[2:]), gen))
            elif tok[0] == "cut" and len(tok) == 4:
                cuts.append((int(tok[1]), int(tok[2]), int(tok[3])))
            elif tok[0] == "meta" and len(tok) == 2 and "=" in tok[1]:
                k, v = tok[1].split("=", 1)
                meta[k] = v
            else:
                raise BuildError(f"unknown line")
        except ValueError as exc:
            raise BuildError(f"line {lineno}: {exc}: {raw!r}") from exc
    if n is None:
        raise BuildError("missing 'qubits N' line")
    edges = e2 + e3
    for e, _ in edges:
        if any(not 0 <= v < n for v in e):
            raise BuildError(f"vertex out of range in edge {e}")
    for c in reg:
        if any(not 0 <= i < len(edges) for i in c.edges):
            raise BuildError(f"cycle {c.tag} refers to a missing edge")
    return Hypergraph(n, edges, reg, cuts, meta)
