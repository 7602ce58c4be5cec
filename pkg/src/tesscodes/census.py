"""Closed-form face counts and code parameters for every construction.

All counts are exact rationals evaluated with integer arithmetic; a value
that is not integral is an error, never rounded.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable


class CensusError(ValueError):
    pass


@dataclass(frozen=True)
class SemiRegularCounts:
    N_f: int
    N_e: int
    N_v: int
    F_R: int
    F_G: int
    F_B: int
    chi: int
    genus: int


@dataclass(frozen=True)
class CodeParams:
    n: int
    s: int
    r: int
    k: int
    family: str
    provenance: str = "formula"
    l_bound: int | None = None
    flags: tuple[str, ...] = field(default=())

    def key(self) -> tuple[int, int, int, int]:
        return (self.n, self.s, self.r, self.k)

    def bracket(self) -> str:
        d = "d" if self.l_bound is None else f"d<={self.l_bound}"
        return f"[[{self.n},{self.k},{self.r},{d}]]"


def _exact(num: int, den: int, what: str) -> int:
    if num % den:
        raise CensusError(f"non-integral {what}: {num}/{den}")
    return num // den


def counts_2p2q2r(p1: int, p2: int, p3: int, g: int) -> SemiRegularCounts:
    """Face, edge and vertex counts of a {2p1,2p2,2p3} tessellation of genus g."""
    if min(p1, p2, p3) < 2 or g < 2:
        raise CensusError("need p_i >= 2 and g >= 2")
    D = p1 * p2 * p3 - p1 * p2 - p1 * p3 - p2 * p3
    if D <= 0:
        raise CensusError(f"nonpositive denominator D={D} for ({p1},{p2},{p3})")
    h = g - 1
    c = SemiRegularCounts(
        N_f=_exact(2 * (p1 * p2 + p1 * p3 + p2 * p3) * h, D, "N_f"),
        N_e=_exact(6 * p1 * p2 * p3 * h, D, "N_e"),
        N_v=_exact(4 * p1 * p2 * p3 * h, D, "N_v"),
        F_R=_exact(2 * p2 * p3 * h, D, "F_R"),
        F_G=_exact(2 * p1 * p3 * h, D, "F_G"),
        F_B=_exact(2 * p1 * p2 * h, D, "F_B"),
        chi=2 - 2 * g,
        genus=g,
    )
    assert c.N_f == c.F_R + c.F_G + c.F_B
    assert c.N_v - c.N_e + c.N_f == c.chi
    assert 3 * c.N_v == 2 * c.N_e
    return c


def counts_p3(p: int, g: int) -> tuple[int, int, int]:
    """(faces, edges, vertices) of a {p,3} tessellation of genus g."""
    if p <= 6:
        raise CensusError(f"{{{p},3}} is not hyperbolic")
    h = g - 1
    return (
        _exact(12 * h, p - 6, "n_f"),
        _exact(6 * p * h, p - 6, "n_e"),
        _exact(4 * p * h, p - 6, "n_v"),
    )


def counts_p434(p: int, g: int) -> tuple[int, int, int]:
    """(F_P, F_T, F_Q) of the {p,4,3,4} tessellation built from {p,3}."""
    n_f, n_e, n_v = counts_p3(p, g)
    return n_f, n_v, n_e


def _checked(p: CodeParams) -> CodeParams:
    if min(p.n, p.s, p.r, p.k) < 0:
        raise CensusError(f"negative parameter in {p}")
    if p.n != p.k + p.r + p.s:
        raise CensusError(f"inconsistent accounting n={p.n} != k+r+s for {p}")
    return p


def _half(v: int, what: str) -> int:
    if v % 2:
        raise CensusError(f"parity violation: {what} is not even")
    return v // 2


def family1_from_counts(N_e: int, N_v: int, F_R: int, F_G: int, chi: int) -> CodeParams:
    return _checked(CodeParams(
        n=N_e + 3 * F_R,
        k=-chi + 1 + _half(F_R, "F_R"),
        r=-chi + N_v + _half(5 * F_R, "5F_R"),
        s=2 * F_R + 2 * F_G - 1,
        family="1",
    ))


def family2_from_counts(N_f: int, N_e: int, N_v: int, F_R: int, F_G: int,
                        chi: int, tripartite: bool) -> CodeParams:
    d = int(tripartite)
    return _checked(CodeParams(
        n=N_e,
        k=chi - 3 * F_R + _half(N_f, "N_f") + 1 + 2 * d,
        r=-chi + 2 * N_v - _half(N_f + N_e, "N_f+N_e"),
        s=3 * F_R + F_G - 1 - 2 * d,
        family="2",
    ))


def family3_from_counts(N_f: int, N_e: int, N_v: int, F_R: int, F_G: int,
                        chi: int) -> CodeParams:
    return _checked(CodeParams(
        n=N_e + 3 * F_R,
        k=chi + _half(N_f - 5 * F_R, "N_f-5F_R") + 1,
        r=-chi + 2 * N_v - _half(N_f + N_e - 5 * F_R, "N_f+N_e-5F_R"),
        s=3 * F_R + F_G - 1,
        family="3",
    ))


def family4_from_counts(p: int, F_P: int, F_T: int) -> CodeParams:
    return _checked(CodeParams(
        n=(p + 3) * F_P,
        k=_half(F_T - F_P, "F_T-F_P"),
        r=_half(5 * F_T + 3 * F_P, "5F_T+3F_P"),
        s=2 * F_P,
        family="4",
    ))


def params_family1(p1: int, p2: int, g: int) -> CodeParams:
    if p1 % 2 == 0 or p1 <= 2:
        raise CensusError("family 1 needs odd p1 > 2")
    c = counts_2p2q2r(p1, p2, 2, g)
    return family1_from_counts(c.N_e, c.N_v, c.F_R, c.F_G, c.chi)


def params_family2(p1: int, g: int, tripartite: bool) -> CodeParams:
    if p1 % 2 or p1 <= 4:
        raise CensusError("family 2 needs even p1 > 4")
    c = counts_2p2q2r(p1, 2, 3, g)
    return family2_from_counts(c.N_f, c.N_e, c.N_v, c.F_R, c.F_G, c.chi, tripartite)


def params_family3(p1: int, g: int) -> CodeParams:
    if p1 % 2 == 0 or p1 <= 6:
        raise CensusError("family 3 needs odd p1 > 6")
    c = counts_2p2q2r(p1, 2, 3, g)
    return family3_from_counts(c.N_f, c.N_e, c.N_v, c.F_R, c.F_G, c.chi)


def params_family4(p: int, g: int) -> CodeParams:
    if p % 2 == 0 or p < 7:
        raise CensusError("family 4 needs odd p >= 7")
    F_P, F_T, _ = counts_p434(p, g)
    return family4_from_counts(p, F_P, F_T)


def params_bombin(V_star: int, F_star: int, chi: int) -> CodeParams:
    if V_star <= 0 or F_star <= 0:
        raise CensusError("counts must be positive")
    return _checked(CodeParams(
        n=3 * F_star, k=2 - chi, r=2 * F_star - chi, s=2 * V_star - 2,
        family="bombin",
    ))


def _flag_k(p: CodeParams) -> CodeParams:
    return replace(p, flags=("non-encoding",)) if p.k < 1 else p


def params_thm5(e: int, chi: int, bipartite: bool) -> CodeParams:
    d = int(bipartite)
    n, k, r = 6 * e, 1 + d - chi, 4 * e - chi
    return _flag_k(_checked(CodeParams(n=n, k=k, r=r, s=n - k - r, family="thm5")))


def params_thm6(e: int, chi: int, bipartite: bool) -> CodeParams:
    d = int(bipartite)
    n, k, r = 10 * e, 1 + d - chi, 6 * e - chi
    return _flag_k(_checked(CodeParams(n=n, k=k, r=r, s=n - k - r, family="thm6")))


# Classes printed in the parameter tables, keyed by genus.  Integrality
# alone admits more classes than the tables list (existence is decided by
# an external classification), so the tables are driven by this catalogue.
FAMILY1_CLASSES: dict[int, list[tuple[int, int]]] = {
    2: [(3, 7), (7, 3), (3, 8), (3, 9), (5, 4), (3, 10), (9, 3), (3, 12),
        (3, 18), (5, 5), (5, 10)],
    3: [(3, 7), (7, 3), (3, 8), (3, 9), (5, 4), (3, 10), (9, 3), (3, 12),
        (3, 14), (3, 18), (5, 5), (3, 30), (5, 6), (5, 10), (9, 6), (7, 14)],
    4: [(3, 7), (7, 3), (3, 8), (3, 9), (5, 4), (3, 10), (9, 3), (3, 12),
        (3, 15), (3, 18), (5, 5), (3, 24), (7, 4), (15, 3), (3, 42), (5, 10),
        (7, 7), (9, 18)],
    5: [(3, 7), (7, 3), (3, 8), (3, 9), (5, 4), (3, 10), (9, 3), (3, 12),
        (3, 14), (3, 18), (5, 5), (3, 22), (3, 30), (3, 54), (5, 6), (5, 10),
        (7, 6), (9, 6), (5, 30), (7, 14), (15, 6), (11, 22)],
}
FAMILY2_CLASSES: dict[int, list[int]] = {
    2: [8, 10, 12, 18],
    3: [8, 10, 12, 14, 18, 30],
    4: [8, 10, 12, 18, 24, 42],
    5: [8, 10, 12, 14, 18, 22, 30],
}
FAMILY3_CLASSES: dict[int, list[int]] = {
    2: [7, 9], 3: [7, 9], 4: [7, 9, 15], 5: [7, 9],
}
FAMILY4_CLASSES: dict[int, list[int]] = {
    2: [7, 9], 3: [7, 9], 4: [7, 9, 15], 5: [7, 9], 6: [7, 9, 11, 21], 7: [7, 9, 15],
}
FAMILIES = ("1", "2", "3", "4", "thm5", "thm6", "bombin")
GENUS_RANGE = {"1": (2, 5), "2": (2, 5), "3": (2, 5), "4": (2, 7)}


@dataclass(frozen=True)
class TableRow:
    g: int
    cls: str
    params: CodeParams
    alt: CodeParams | None = None  # family 2: the non-tripartite branch

    def fields(self) -> dict[str, str]:
        p = self.params
        out = {"g": str(self.g), "class": self.cls, "s": str(p.s), "n": str(p.n),
               "k": str(p.k), "r": str(p.r),
               "d_bound": "?" if p.l_bound is None else str(p.l_bound)}
        if self.alt is not None:
            out["s2"] = str(self.alt.s)
            out["k2"] = str(self.alt.k)
        return out


def _sort(rows: list[TableRow]) -> list[TableRow]:
    # stable: keeps catalogue order among equal n
    return sorted(rows, key=lambda r: (r.g, -r.params.n))


def emit_table(family: str, genera: Iterable[int]) -> list[TableRow]:
    rows: list[TableRow] = []
    for g in genera:
        if family == "1":
            for p1, p2 in FAMILY1_CLASSES.get(g, []):
                rows.append(TableRow(g, f"{{{2*p1},{2*p2},4}}", params_family1(p1, p2, g)))
        elif family == "2":
            for p1 in FAMILY2_CLASSES.get(g, []):
                rows.append(TableRow(g, f"{{{2*p1},4,6}}", params_family2(p1, g, True),
                                     params_family2(p1, g, False)))
        elif family == "3":
            for p1 in FAMILY3_CLASSES.get(g, []):
                rows.append(TableRow(g, f"{{{2*p1},4,6}}", params_family3(p1, g)))
        elif family == "4":
            for p in FAMILY4_CLASSES.get(g, []):
                rows.append(TableRow(g, f"{{{p},4,3,4}}", params_family4(p, g)))
        else:
            raise CensusError(f"no table for family {family!r}")
    return _sort(rows)


def integral_classes_family1(g: int, pmax: int = 200) -> list[tuple[int, int]]:
    """All (p1, p2) with p1 odd whose family-1 parameters are integral."""
    out = []
    for p1 in range(3, pmax + 1, 2):
        for p2 in range(2, pmax + 1):
            try:
                params_family1(p1, p2, g)
            except CensusError:
                continue
            out.append((p1, p2))
    return out


def formula_params(meta: dict[str, str]) -> CodeParams | None:
    """Closed-form parameters for a built instance, from its recorded counts.

    Returns None when the family has no closed form (the bare even-face
    construction on arbitrary face sets).
    """
    fam = meta.get("family")
    try:
        i = {k: int(v) for k, v in meta.items() if v.lstrip("-").isdigit()}
        if fam == "1":
            return family1_from_counts(i["N_e"], i["N_v"], i["F_R"], i["F_G"], i["chi"])
        if fam == "2":
            return family2_from_counts(i["N_f"], i["N_e"], i["N_v"], i["F_R"], i["F_G"], i["chi"],
                                       meta.get("tripartite") == "yes")
        if fam == "3":
            return family3_from_counts(i["N_f"], i["N_e"], i["N_v"], i["F_R"], i["F_G"], i["chi"])
        if fam == "4":
            return family4_from_counts(i["p"], i["F_P"], i["F_T"])
        if fam == "bombin":
            return params_bombin(i["V_star"], i["F_star"], i["chi"])
        if fam == "thm5":
            return params_thm5(i["e"], i["chi"], meta.get("bipartite") == "yes")
    except KeyError as exc:
        raise CensusError(f"instance metadata lacks {exc}") from exc
    return None
