"""Combinatorial maps (rotation systems) of closed orientable surfaces.

Convention: ``sigma`` rotates darts counterclockwise around their vertex,
``alpha`` swaps the two darts of an edge, and faces are the orbits of
``phi = sigma . alpha``.  Walking along ``phi`` keeps the face on the right
of every dart, so ``face_of[d]`` is the face on the right of ``d`` and
``face_of[alpha[d]]`` the one on its left.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

COLORS = ("R", "G", "B")


class MapError(ValueError):
    pass


def _orbits(perm: Sequence[int]) -> tuple[list[list[int]], list[int]]:
    """Cycles of ``perm`` ordered by their minimal element, plus an index map."""
    n = len(perm)
    seen = [-1] * n
    cycles: list[list[int]] = []
    for start in range(n):
        if seen[start] >= 0:
            continue
        cyc = []
        d = start
        while seen[d] < 0:
            seen[d] = len(cycles)
            cyc.append(d)
            d = perm[d]
        cycles.append(cyc)
    return cycles, seen


@dataclass(frozen=True, eq=False)
class CombinatorialMap:
    sigma: tuple[int, ...]
    alpha: tuple[int, ...]

    def __post_init__(self):
        n = len(self.sigma)
        if len(self.alpha) != n:
            raise MapError("sigma and alpha have different lengths")
        if n == 0 or n % 2:
            raise MapError(f"dart count must be even and positive, got {n}")
        for name, p in (("sigma", self.sigma), ("alpha", self.alpha)):
            if sorted(p) != list(range(n)):
                raise MapError(f"malformed permutation: {name} is not a bijection on 0..{n-1}")
        for d, e in enumerate(self.alpha):
            if e == d:
                raise MapError(f"alpha has a fixed point at dart {d}")
            if self.alpha[e] != d:
                raise MapError(f"alpha is not an involution at dart {d}")
        if not self._connected():
            raise MapError("disconnected map")
        if self.euler_characteristic % 2:
            raise MapError(f"odd Euler characteristic {self.euler_characteristic}")

    def _connected(self) -> bool:
        n = len(self.sigma)
        seen = [False] * n
        seen[0] = True
        stack = [0]
        while stack:
            d = stack.pop()
            for e in (self.sigma[d], self.alpha[d]):
                if not seen[e]:
                    seen[e] = True
                    stack.append(e)
        return all(seen)

    @property
    def dart_count(self) -> int:
        return len(self.sigma)

    @cached_property
    def phi(self) -> tuple[int, ...]:
        return tuple(self.sigma[self.alpha[d]] for d in range(self.dart_count))

    @cached_property
    def _vertices(self):
        return _orbits(self.sigma)

    @cached_property
    def _edges(self):
        return _orbits(self.alpha)

    @cached_property
    def _faces(self):
        return _orbits(self.phi)

    @property
    def vertex_darts(self) -> list[list[int]]:
        return self._vertices[0]

    @property
    def edge_darts(self) -> list[list[int]]:
        return self._edges[0]

    @property
    def face_darts(self) -> list[list[int]]:
        return self._faces[0]

    @property
    def vertex_of(self) -> list[int]:
        return self._vertices[1]

    @property
    def edge_of(self) -> list[int]:
        return self._edges[1]

    @property
    def face_of(self) -> list[int]:
        return self._faces[1]

    @property
    def V(self) -> int:
        return len(self.vertex_darts)

    @property
    def E(self) -> int:
        return self.dart_count // 2

    @property
    def F(self) -> int:
        return len(self.face_darts)

    @property
    def euler_characteristic(self) -> int:
        return self.V - self.E + self.F

    @property
    def genus(self) -> int:
        return (2 - self.euler_characteristic) // 2


def euler_characteristic(m: CombinatorialMap) -> int:
    return m.euler_characteristic


def faces(m: CombinatorialMap) -> list[list[int]]:
    """Each face as the cyclic sequence of vertices met along its darts."""
    return [[m.vertex_of[d] for d in cyc] for cyc in m.face_darts]


def vertex_valences(m: CombinatorialMap) -> list[int]:
    return [len(c) for c in m.vertex_darts]


def dual(m: CombinatorialMap) -> CombinatorialMap:
    """Dual map on the same darts; dual(dual(m)) == m exactly."""
    return CombinatorialMap(m.phi, m.alpha)


def medial(m: CombinatorialMap) -> CombinatorialMap:
    """One 4-valent vertex per edge, one edge per corner of the input.

    Dart 2d runs from the midpoint of edge(d) into the corner (d, sigma d);
    dart 2d+1 is its reverse, sitting at edge(sigma d).
    """
    s, a = m.sigma, m.alpha
    inv = [0] * m.dart_count
    for d, e in enumerate(s):
        inv[e] = d
    n = 2 * m.dart_count
    sigma = [0] * n
    alpha = [0] * n
    for d in range(m.dart_count):
        alpha[2 * d], alpha[2 * d + 1] = 2 * d + 1, 2 * d
    for d in range(m.dart_count):
        if d > a[d]:
            continue
        dp = a[d]
        # counterclockwise around the midpoint of edge {d, dp}
        ring = [2 * inv[dp] + 1, 2 * d, 2 * inv[d] + 1, 2 * dp]
        for i in range(4):
            sigma[ring[i]] = ring[(i + 1) % 4]
    return CombinatorialMap(tuple(sigma), tuple(alpha))


def inflate_trivalent(m: CombinatorialMap) -> tuple[CombinatorialMap, dict[int, str]]:
    """Trivalent 3-colourable map with one vertex per flag of ``m``.

    Faces come in three classes: v-faces (2 x valence sides), e-faces
    (quadrilaterals) and f-faces (2 x face size sides).  Returns the map and
    a colouring with v-faces R, f-faces G and e-faces B.
    """
    s, a = m.sigma, m.alpha
    inv = [0] * m.dart_count
    for d, e in enumerate(s):
        inv[e] = d
    # flag vertices: (d, L) = 2d, (d, R) = 2d + 1
    # each vertex lists (edge key, neighbour) counterclockwise
    keys: dict[tuple, list[int]] = {}
    rot: list[list[tuple]] = []
    for d in range(m.dart_count):
        left = [("vL", d), ("e", d), ("f", d)]
        right = [("vL", a[d]), ("f", d), ("e", inv[d])]
        rot.append(left)
        rot.append(right)
    darts_at: list[list[int]] = []
    nd = 0
    for v, ks in enumerate(rot):
        ids = []
        for k in ks:
            keys.setdefault(k, []).append(nd)
            ids.append(nd)
            nd += 1
        darts_at.append(ids)
    sigma = [0] * nd
    alpha = [0] * nd
    kind = [""] * nd
    for ids in darts_at:
        for i, x in enumerate(ids):
            sigma[x] = ids[(i + 1) % len(ids)]
    for k, pair in keys.items():
        if len(pair) != 2:
            raise MapError(f"inflation pairing failed at {k}")
        x, y = pair
        alpha[x], alpha[y] = y, x
        kind[x] = kind[y] = k[0]
    out = CombinatorialMap(tuple(sigma), tuple(alpha))
    coloring: dict[int, str] = {}
    for f, cyc in enumerate(out.face_darts):
        types = {kind[d] for d in cyc}
        if types == {"e", "f"}:
            coloring[f] = "R"  # v-face
        elif types == {"vL", "e"}:
            coloring[f] = "G"  # f-face
        elif types == {"vL", "f"}:
            coloring[f] = "B"  # e-face
        else:
            raise MapError(f"unexpected face type {types}")
    return out, coloring


# ---------------------------------------------------------------- tori


def periodic_map(lattice: tuple[tuple[float, float], tuple[float, float]],
                 positions: Sequence[tuple[float, float]],
                 edges: Sequence[tuple[int, int, int, int]],
                 m: int, n: int) -> CombinatorialMap:
    """Torus map from a periodic straight-line drawing.

    ``edges`` holds (a, b, di, dj): vertex a of cell (i, j) joins vertex b of
    cell (i + di, j + dj).  Rotations come from sorting edge directions.
    """
    if m < 1 or n < 1:
        raise MapError("cell counts must be >= 1")
    (ax, ay), (bx, by) = lattice
    nv = len(positions)

    def vid(i, j, a):
        return ((i % m) * n + (j % n)) * nv + a

    out: dict[int, list[tuple[float, int]]] = {}
    alpha: list[int] = []
    for i in range(m):
        for j in range(n):
            for a, b, di, dj in edges:
                u, v = vid(i, j, a), vid(i + di, j + dj, b)
                dx = positions[b][0] + di * ax + dj * bx - positions[a][0]
                dy = positions[b][1] + di * ay + dj * by - positions[a][1]
                d0 = len(alpha)
                alpha += [d0 + 1, d0]
                out.setdefault(u, []).append((math.atan2(dy, dx), d0))
                out.setdefault(v, []).append((math.atan2(-dy, -dx), d0 + 1))
    sigma = [0] * len(alpha)
    for u, lst in out.items():
        lst.sort()
        for k, (_, d) in enumerate(lst):
            sigma[d] = lst[(k + 1) % len(lst)][1]
    return CombinatorialMap(tuple(sigma), tuple(alpha))


def _cell_4612():
    L = 2 * math.cos(math.radians(15)) + 2 * math.sin(math.radians(15))
    lattice = ((L, 0.0), (L / 2, L * math.sqrt(3) / 2))
    pos = [(math.cos(math.radians(15 + 30 * k)), math.sin(math.radians(15 + 30 * k)))
           for k in range(12)]
    edges = [(k, (k + 1) % 12, 0, 0) for k in range(12)]
    for j, (di, dj) in enumerate([(1, 0), (0, 1), (-1, 1)]):
        edges.append((2 * j, (2 * j + 5) % 12, di, dj))
        edges.append(((2 * j - 1) % 12, (2 * j + 6) % 12, di, dj))
    return lattice, pos, edges


def _cell_triangular():
    # three lattice points per cell so that the dual honeycomb is 3-colourable
    t1 = (1.0, 0.0)
    t2 = (0.5, math.sqrt(3) / 2)
    lattice = ((t1[0] + t2[0], t1[1] + t2[1]), (-t1[0] + 2 * t2[0], -t1[1] + 2 * t2[1]))
    pos = [(float(c), 0.0) for c in range(3)]
    edges = []
    for c in range(3):
        for di, dj in ((1, 0), (0, 1), (-1, 1)):
            i, j = c + di, dj
            rep = (i - j) % 3
            b = (j - i + rep) // 3
            a = i - rep + b
            edges.append((c, rep, a, b))
    return lattice, pos, edges


def _proper_3_colouring(m: CombinatorialMap) -> dict[int, str] | None:
    adj: list[set[int]] = [set() for _ in range(m.F)]
    for d in range(m.dart_count):
        f, g = m.face_of[d], m.face_of[m.alpha[d]]
        if f == g:
            return None
        adj[f].add(g)
    col = [-1] * m.F
    order = []
    seen = [False] * m.F
    for s in range(m.F):
        if seen[s]:
            continue
        seen[s] = True
        q = deque([s])
        while q:
            f = q.popleft()
            order.append(f)
            for g in sorted(adj[f]):
                if not seen[g]:
                    seen[g] = True
                    q.append(g)

    def go(i):
        if i == len(order):
            return True
        f = order[i]
        for c in range(3):
            if all(col[g] != c for g in adj[f]):
                col[f] = c
                if go(i + 1):
                    return True
        col[f] = -1
        return False

    if not go(0):
        return None
    return {f: COLORS[c] for f, c in enumerate(col)}


SUPPORTED_TORI = ("6,6,6", "6,12,4", "6,4,12", "12,6,4", "12,4,6", "4,6,12", "4,12,6")


def torus_tessellation(cls: Sequence[int], m: int, n: int) -> tuple[CombinatorialMap, dict[int, str]]:
    """m x n cells of the honeycomb or of the 4.6.12 tiling on a torus.

    ``cls`` gives the face sizes of the R, G and B classes.  The honeycomb
    cell holds three hexagons (one per colour class); the 4.6.12 cell holds
    one dodecagon, two hexagons and three squares.
    """
    cls = tuple(int(c) for c in cls)
    key = ",".join(map(str, cls))
    if key not in SUPPORTED_TORI:
        raise MapError(f"unsupported torus class {{{key}}}")
    if cls == (6, 6, 6):
        tri = periodic_map(*_cell_triangular(), m, n)
        hexmap = dual(tri)
        col = _proper_3_colouring(hexmap)
        if col is None:
            raise MapError("honeycomb torus is not 3-colourable")
        return hexmap, col
    mp = periodic_map(*_cell_4612(), m, n)
    role = {size: COLORS[i] for i, size in enumerate(cls)}
    coloring = {f: role[len(c)] for f, c in enumerate(mp.face_darts)}
    return mp, coloring


def square_torus(m: int, n: int) -> CombinatorialMap:
    """4-valent square lattice on an m x n torus."""
    return periodic_map(((1.0, 0.0), (0.0, 1.0)), [(0.0, 0.0)],
                        [(0, 0, 1, 0), (0, 0, 0, 1)], m, n)


# ---------------------------------------------------------------- spheres


def convex_polyhedron_map(points: Sequence[tuple[float, float, float]]) -> CombinatorialMap:
    """Sphere map of a convex polyhedron centred at the origin.

    Edges join vertex pairs at the minimum distance (true for the uniform
    solids used here); rotations sort neighbours counterclockwise as seen
    from outside.
    """
    P = [tuple(map(float, p)) for p in points]
    nv = len(P)

    def sub(a, b):
        return (a[0] - b[0], a[1] - b[1], a[2] - b[2])

    def dot(a, b):
        return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]

    def cross(a, b):
        return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])

    d2 = {(i, j): dot(sub(P[i], P[j]), sub(P[i], P[j])) for i in range(nv) for j in range(i + 1, nv)}
    dmin = min(d2.values())
    pairs = [ij for ij, v in d2.items() if v < dmin * (1 + 1e-6)]
    alpha: list[int] = []
    out: dict[int, list[tuple[float, int]]] = {}
    ends: list[tuple[int, int]] = []
    for i, j in pairs:
        d0 = len(alpha)
        alpha += [d0 + 1, d0]
        ends += [(i, j), (j, i)]
    for d, (i, _) in enumerate(ends):
        out.setdefault(i, []).append((0.0, d))
    for i, lst in out.items():
        nrm = P[i]
        e0 = sub(P[ends[lst[0][1]][1]], P[i])
        keyed = []
        for _, d in lst:
            v = sub(P[ends[d][1]], P[i])
            keyed.append((math.atan2(dot(cross(e0, v), nrm), dot(e0, v)), d))
        keyed.sort()
        out[i] = keyed
    sigma = [0] * len(alpha)
    for i, lst in out.items():
        for k, (_, d) in enumerate(lst):
            sigma[d] = lst[(k + 1) % len(lst)][1]
    return CombinatorialMap(tuple(sigma), tuple(alpha))


def dodecahedron() -> CombinatorialMap:
    """The {5,3} sphere map."""
    g = (1 + math.sqrt(5)) / 2
    pts = [(x, y, z) for x in (-1, 1) for y in (-1, 1) for z in (-1, 1)]
    for a in (-1, 1):
        for b in (-1, 1):
            pts += [(0, a / g, b * g), (a / g, b * g, 0), (b * g, 0, a / g)]
    return convex_polyhedron_map(pts)


def truncated_octahedron() -> tuple[CombinatorialMap, dict[int, str]]:
    """{6,6,4} on the sphere: two hexagon classes and the squares."""
    from itertools import permutations
    pts = set()
    for perm in permutations((0, 1, 2)):
        for sy in (-1, 1):
            for sz in (-1, 1):
                v = [0, sy * 1, sz * 2]
                pts.add(tuple(v[perm.index(k)] for k in range(3)))
    mp = convex_polyhedron_map(sorted(pts))
    col = _proper_3_colouring(mp)
    if col is None:
        raise MapError("truncated octahedron is not 3-colourable")
    # squares blue, hexagons split red/green
    sq = {f for f, c in enumerate(mp.face_darts) if len(c) == 4}
    hexcol = sorted({col[f] for f in range(mp.F) if f not in sq})
    swap = {hexcol[0]: "R", hexcol[1]: "G"}
    return mp, {f: "B" if f in sq else swap[col[f]] for f in range(mp.F)}


# ---------------------------------------------------------------- checks


@dataclass
class MapReport:
    non_trivalent: list[int]
    bad_edges: list[int]
    uncoloured: list[int]

    @property
    def ok(self) -> bool:
        return not (self.non_trivalent or self.bad_edges or self.uncoloured)


def check_trivalent_3colorable(m: CombinatorialMap, coloring: dict[int, str]) -> MapReport:
    nt = [v for v, c in enumerate(m.vertex_darts) if len(c) != 3]
    unc = [f for f in range(m.F) if coloring.get(f) not in COLORS]
    bad = []
    for e, (d, dd) in enumerate(m.edge_darts):
        a, b = coloring.get(m.face_of[d]), coloring.get(m.face_of[dd])
        if a is None or a == b:
            bad.append(e)
    return MapReport(nt, bad, unc)


def class_of(m: CombinatorialMap, coloring: dict[int, str]) -> tuple[int, int, int] | None:
    """Face sizes per colour class, or None if a class is not uniform."""
    sizes: dict[str, set[int]] = {c: set() for c in COLORS}
    for f, cyc in enumerate(m.face_darts):
        sizes[coloring[f]].add(len(cyc))
    if any(len(s) != 1 for s in sizes.values()):
        return None
    return tuple(next(iter(sizes[c])) for c in COLORS)  # type: ignore[return-value]


# ---------------------------------------------------------------- reduced graph


@dataclass(frozen=True)
class SimpleGraph:
    vertex_count: int
    adjacency: frozenset[frozenset[int]]

    def neighbours(self) -> list[set[int]]:
        nb: list[set[int]] = [set() for _ in range(self.vertex_count)]
        for e in self.adjacency:
            u, v = tuple(e)
            nb[u].add(v)
            nb[v].add(u)
        return nb


def simple_graph(n: int, pairs: Iterable[tuple[int, int]]) -> SimpleGraph:
    adj = set()
    for u, v in pairs:
        if u == v:
            raise MapError("self-loop in simple graph")
        adj.add(frozenset((u, v)))
    return SimpleGraph(n, frozenset(adj))


def reduced_red_graph(m: CombinatorialMap, coloring: dict[int, str]) -> SimpleGraph:
    """Red faces as points, joined when they touch a common non-red face.

    Around each vertex the three faces are one of each colour, so two red
    faces are linked exactly when a green or blue face borders both; this
    covers the square and hexagon links of the {2p1,4,6} pictures.
    """
    red = [f for f in range(m.F) if coloring[f] == "R"]
    idx = {f: i for i, f in enumerate(red)}
    touching: dict[int, set[int]] = {}
    for d in range(m.dart_count):
        f = m.face_of[d]
        if coloring[f] == "R":
            continue
        # the face across the edge of d, seen from f
        g = m.face_of[m.alpha[d]]
        if coloring[g] == "R":
            touching.setdefault(f, set()).add(idx[g])
    pairs = set()
    for reds in touching.values():
        rs = sorted(reds)
        for i in range(len(rs)):
            for j in range(i + 1, len(rs)):
                pairs.add((rs[i], rs[j]))
    return simple_graph(len(red), pairs)


def is_bipartite(g: SimpleGraph) -> bool:
    nb = g.neighbours()
    col = [-1] * g.vertex_count
    for s in range(g.vertex_count):
        if col[s] >= 0:
            continue
        col[s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            for v in nb[u]:
                if col[v] < 0:
                    col[v] = col[u] ^ 1
                    q.append(v)
                elif col[v] == col[u]:
                    return False
    return True


def is_tripartite(g: SimpleGraph) -> bool:
    nb = g.neighbours()
    order = sorted(range(g.vertex_count), key=lambda v: -len(nb[v]))
    col = [-1] * g.vertex_count

    def go(i):
        if i == len(order):
            return True
        v = order[i]
        used = {col[w] for w in nb[v]}
        for c in range(3):
            if c not in used:
                col[v] = c
                if go(i + 1):
                    return True
                if i == 0:
                    break  # colour symmetry
        col[v] = -1
        return False

    return go(0)


# ---------------------------------------------------------------- file format


def serialize_map(m: CombinatorialMap, coloring: dict[int, str] | None = None) -> str:
    lines = ["tessmap 1", f"darts {m.dart_count}",
             "sigma " + " ".join(map(str, m.sigma)),
             "alpha " + " ".join(map(str, m.alpha))]
    for f in sorted(coloring or {}):
        lines.append(f"facecolor {f} {coloring[f]}")
    return "\n".join(lines) + "\n"


def load_map(text: str) -> tuple[CombinatorialMap, dict[int, str]]:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if len(lines) < 4 or lines[0] != "tessmap 1":
        raise MapError("missing 'tessmap 1' header")
    head = lines[1].split()
    if len(head) != 2 or head[0] != "darts" or not head[1].isdigit():
        raise MapError("expected 'darts N' on line 2")
    n = int(head[1])
    perms = {}
    for ln, name in ((lines[2], "sigma"), (lines[3], "alpha")):
        tok = ln.split()
        if not tok or tok[0] != name:
            raise MapError(f"expected '{name}' line")
        try:
            vals = [int(t) for t in tok[1:]]
        except ValueError as exc:
            raise MapError(f"non-integer in {name}") from exc
        if len(vals) != n:
            raise MapError(f"{name} has {len(vals)} entries, expected {n}")
        if any(v < 0 or v >= n for v in vals):
            raise MapError(f"{name} entry out of range 0..{n-1}")
        perms[name] = tuple(vals)
    m = CombinatorialMap(perms["sigma"], perms["alpha"])
    coloring: dict[int, str] = {}
    for ln in lines[4:]:
        tok = ln.split()
        if tok[0] != "facecolor" or len(tok) != 3:
            raise MapError(f"unknown line: {ln!r}")
        try:
            f = int(tok[1])
        except ValueError as exc:
            raise MapError(f"bad face index in {ln!r}") from exc
        if not 0 <= f < m.F:
            raise MapError(f"face index {f} out of range")
        if tok[2] not in COLORS:
            raise MapError(f"bad colour {tok[2]!r}")
        coloring[f] = tok[2]
    return m, coloring


def isomorphic(a: CombinatorialMap, b: CombinatorialMap) -> bool:
    """Orientation-preserving map isomorphism (connected maps)."""
    if a.dart_count != b.dart_count:
        return False
    n = a.dart_count
    for start in range(n):
        f = [-1] * n
        f[0] = start
        stack = [0]
        ok = True
        while stack and ok:
            d = stack.pop()
            for pa, pb in ((a.sigma, b.sigma), (a.alpha, b.alpha)):
                e, img = pa[d], pb[f[d]]
                if f[e] < 0:
                    f[e] = img
                    stack.append(e)
                elif f[e] != img:
                    ok = False
                    break
        if ok and len(set(f)) == n:
            return True
    return False
