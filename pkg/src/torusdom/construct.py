"""Explicit dominating-set patterns, keyed by congruence class.

Each builder assembles a pattern from closed-form index ranges, then
re-validates it against the claimed domination kind and cardinality
before returning.  A pattern that fails its own contract raises
ConstructionInvalidError; nothing is silently patched.  Two families
here are transcribed faithfully but are known to fail pairing
validation (see the corner-extended and corner-trimmed paired
variants); callers that merely need some witness should go through
best_upper_witness, which skips invalid families.

Also provides the two set transformations used to move witnesses
between grid sizes: width-3 column normalization and single-row
projection (with matching repair for paired sets).
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from .errors import (
    CongruenceError,
    ConstructionInvalidError,
    InvalidDimensionsError,
    InvalidInputError,
)
from .formulas import gamma_p_m3, gamma_t_m3, gamma_tp_m4
from .matching import maximum_matching
from .torus import TorusDims, TorusGraph, VertexId, VertexSet, induced_edges, make_torus
from .validate import DominationKind, is_dominating, is_total_dominating, satisfies


@dataclass(frozen=True)
class CongruenceCase:
    """Residue-class key under which a pattern applies."""

    n_mod: int
    m_mod: int
    modulus: int
    kind: DominationKind

    def __post_init__(self) -> None:
        if not (0 <= self.n_mod < self.modulus and 0 <= self.m_mod < self.modulus):
            raise InvalidInputError("residues must lie in [0..modulus-1]")


@dataclass(frozen=True)
class ConstructionResult:
    """A validated pattern together with its claimed size and origin."""

    vertex_set: VertexSet
    claimed_cardinality: int
    kind: DominationKind
    provenance: str


@dataclass(frozen=True)
class ProjectionReport:
    """Bookkeeping from one row-projection step.

    A holds the rung indices occupied in the removed row, B those in
    the row below it; odd_components counts odd pieces of the induced
    subgraph before matching repair, and repair_vertices is what the
    repair actually added.
    """

    A: frozenset[int]
    B: frozenset[int]
    odd_components: int
    repair_vertices: VertexSet


def _finish(
    dims: TorusDims,
    vertices: Iterable[tuple[int, int]],
    claimed: int,
    kind: DominationKind,
    provenance: str,
) -> ConstructionResult:
    """Assemble, then enforce the claimed cardinality and kind."""
    listed = list(vertices)
    vset = VertexSet.from_vertices(dims, listed)
    # a collision between pattern parts is a builder bug, not bad input
    assert len(vset) == len(listed), f"{provenance}: overlapping pattern parts"
    if len(vset) != claimed:
        raise ConstructionInvalidError(
            f"{provenance} on {dims.n}x{dims.m}: built {len(vset)} vertices, claimed {claimed}"
        )
    g = make_torus(dims.n, dims.m)
    if not satisfies(g, vset, kind):
        raise ConstructionInvalidError(
            f"{provenance} on {dims.n}x{dims.m}: set fails {kind.value} validation"
        )
    return ConstructionResult(vset, claimed, kind, provenance)


def construct_mod4(n: int, m: int) -> ConstructionResult:
    """Block tiling for doubly mod-4 grids; size nm/4, meets the degree bound."""
    if n % 4 or m % 4:
        raise CongruenceError(f"block tiling needs both sides = 0 (mod 4), got {n}x{m}")
    dims = TorusDims(n, m)
    verts = []
    for i in range(1, n + 1, 4):
        for j in range(1, m + 1, 4):
            verts += [(i, j), (i, j + 1), (i + 2, j + 2), (i + 2, j + 3)]
    return _finish(dims, verts, n * m // 4, DominationKind.PAIRED, "block-tiling")


def _m3_band(n: int) -> list[tuple[int, int]]:
    verts = [(i, 2) for i in range(1, n + 1) if i % 5 in (1, 2)]
    for j in range(1, n + 1):
        if j % 5 == 4:
            verts += [(j, 1), (j, 3)]
    return verts


def construct_m3(n: int, kind: DominationKind) -> ConstructionResult:
    """Width-3 band pattern whose size meets the width-3 closed forms."""
    if n < 3:
        raise InvalidDimensionsError(f"need n >= 3, got {n}")
    dims = TorusDims(n, 3)
    verts = _m3_band(n)
    if kind is DominationKind.TOTAL:
        if n % 5 == 3:
            verts.append((n, 2))
        return _finish(dims, verts, gamma_t_m3(n), kind, "band-m3-total")
    if kind is DominationKind.PAIRED:
        if n % 5 == 1:
            verts.append((n, 1))
        elif n % 5 == 3:
            verts += [(n, 1), (n, 2)]
        return _finish(dims, verts, gamma_p_m3(n), kind, "band-m3-paired")
    raise InvalidInputError(f"no width-3 pattern for kind {kind.value}")


def construct_m4(n: int) -> ConstructionResult:
    """Width-4 rail pattern whose size meets the width-4 closed form."""
    if n < 3:
        raise InvalidDimensionsError(f"need n >= 3, got {n}")
    dims = TorusDims(n, 4)

    def blocks(rows: Iterable[int]) -> list[tuple[int, int]]:
        out = []
        for i in rows:
            out += [(i, 1), (i, 2), (i + 2, 3), (i + 2, 4)]
        return out

    r = n % 4
    if r == 0:
        verts = blocks(range(1, n + 1, 4))
    elif r == 1:
        verts = blocks(i for i in range(1, n + 1, 4) if i != n)
        verts += [(n, 1), (n, 2)]
    elif r == 2:
        verts = blocks(range(1, n - 1, 4))
        verts += [(n - 1, 1), (n - 1, 2), (n, 1), (n, 2)]
    else:
        verts = blocks(range(1, n + 1, 4))
    return _finish(dims, verts, gamma_tp_m4(n), DominationKind.PAIRED, "rail-m4")


def construct_base_tile(n: int, m: int) -> VertexSet:
    """Open-ended block tiling on the flat part of the grid.

    Blocks start at rows and rungs = 1 (mod 4) up to side - 2; the last
    block's far rungs may wrap when m = 3 (mod 4).  Not a dominating set
    by itself in general.
    """
    if n < 5 or m < 5:
        raise InvalidDimensionsError(f"base tile needs both sides >= 5, got {n}x{m}")
    dims = TorusDims(n, m)
    verts = []
    for i in range(1, n - 1, 4):
        for j in range(1, m - 1, 4):
            verts += [(i, j), (i, j + 1), tuple(dims.wrap(i + 2, j + 2)), tuple(dims.wrap(i + 2, j + 3))]
    vset = VertexSet.from_vertices(dims, verts)
    assert len(vset) == len(verts), "base tile blocks overlap"
    return vset


def _row_extended(n: int, m: int, kind: DominationKind):
    # applies when m = 0, n = 1 (mod 4)
    verts = construct_base_tile(n, m).pairs()
    for j in range(1, m - 1, 4):
        verts += [(n, j), (n, j + 1)]
    return verts, (n + 1) * m // 4, "row-extended"


def _corner_rail(n: int, m: int) -> list[tuple[int, int]]:
    out = []
    for i in range(1, n - 1, 4):
        out += [(i + 1, m - 1), (i + 2, m)]
    return out


def _corner_extended(n: int, m: int, kind: DominationKind):
    # applies when m = 1, n = 1 (mod 4)
    verts = construct_base_tile(n, m).pairs()
    for j in range(1, m - 1, 4):
        verts += [(n, j), (n, j + 1)]
    verts += _corner_rail(n, m)
    verts.append((n, m))
    claimed = (n + 1) * (m + 1) // 4
    if kind is DominationKind.PAIRED:
        return verts + [(n, m - 1)], claimed + 1, "corner-extended-paired"
    return verts, claimed, "corner-extended-total"


def _corner_trimmed(n: int, m: int, kind: DominationKind):
    # applies when m = 1, n = 3 (mod 4)
    parts = construct_base_tile(n, m).pairs() + _corner_rail(n, m)
    base = set(parts)
    assert len(base) == len(parts), "corner-trimmed parts overlap"
    for v in ((n, m - 2), (n, m)):
        if v not in base:
            raise ConstructionInvalidError(f"corner-trimmed removal {v} absent on {n}x{m}")
        base.discard(v)
    claimed = (n + 1) * (m + 1) // 4 - 2
    if kind is DominationKind.PAIRED:
        return sorted(base), claimed, "corner-trimmed-paired"
    v = (2, m - 1)
    if v not in base:
        raise ConstructionInvalidError(f"corner-trimmed removal {v} absent on {n}x{m}")
    base.discard(v)
    return sorted(base), claimed - 1, "corner-trimmed-total"


def _wrap_braided(n: int, m: int, kind: DominationKind):
    # applies when m = 2, n = 2 (mod 4)
    parts = construct_base_tile(n, m).pairs()
    for i in range(1, n - 1, 4):
        parts += [(i, m - 2), (i, m - 1), (i + 2, m - 1), (i + 2, m)]
    for j in range(1, m - 1, 4):
        parts += [(n - 1, j), (n - 1, j + 1), (n, j + 2), (n, j + 3)]
    parts.append((n, m - 1))
    base = set(parts)
    assert len(base) == len(parts), "wrap-braided parts overlap"
    for v in ((1, m - 2), (1, m - 1), (n, m - 3)):
        if v not in base:
            raise ConstructionInvalidError(f"wrap-braided removal {v} absent on {n}x{m}")
        base.discard(v)
    return sorted(base), (n + 2) * (m + 2) // 4 - 6, "wrap-braided"


_PATTERN_TABLE: dict[tuple[int, int], Callable] = {
    (0, 1): _row_extended,
    (1, 1): _corner_extended,
    (1, 3): _corner_trimmed,
    (2, 2): _wrap_braided,
}

BOUND_PATTERN_CASES: tuple[CongruenceCase, ...] = tuple(
    CongruenceCase(n_mod=b, m_mod=a, modulus=4, kind=kind)
    for (a, b) in sorted(_PATTERN_TABLE) + [(1, 2)]
    for kind in (DominationKind.TOTAL, DominationKind.PAIRED)
)


def _projection_cascade(n: int, m: int, kind: DominationKind) -> ConstructionResult:
    """Shrink the rounded-up block tiling one row at a time down to (n, m)."""
    big_n, big_m = 4 * ((n + 3) // 4), 4 * ((m + 3) // 4)
    d = construct_mod4(big_n, big_m).vertex_set
    for k in range(big_n, n, -1):
        d, _ = project_column(make_torus(k, big_m), d, kind)
    d = d.transposed()
    for k in range(big_m, m, -1):
        d, _ = project_column(make_torus(k, n), d, kind)
    d = d.transposed()
    bound = big_n * big_m // 4
    if len(d) > bound:
        raise ConstructionInvalidError(
            f"projection cascade to {n}x{m} grew past {bound}"
        )
    return _finish(d.dims, d.pairs(), len(d), kind, "projection-cascade")


def construct_bound_pattern(n: int, m: int, kind: DominationKind) -> ConstructionResult:
    """Best covering pattern for grids with both sides >= 5.

    Dispatches on the residues of (m, n) modulo 4, trying the stated
    orientation first and the transpose second; residue pairs without a
    pattern of their own fall back to the projection cascade.
    """
    if n < 5 or m < 5:
        raise InvalidDimensionsError(f"bound patterns need both sides >= 5, got {n}x{m}")
    if kind not in (DominationKind.TOTAL, DominationKind.PAIRED):
        raise InvalidInputError(f"no bound pattern for kind {kind.value}")
    if n % 4 == 0 and m % 4 == 0:
        base = construct_mod4(n, m)
        if kind is base.kind:
            return base
        return dataclasses.replace(base, kind=kind)

    if (m % 4, n % 4) == (1, 2):
        return _project_corner_trimmed(n, m, kind)
    if (n % 4, m % 4) == (1, 2):
        return _transposed(construct_bound_pattern(m, n, kind))

    dims = TorusDims(n, m)
    if (m % 4, n % 4) in _PATTERN_TABLE:
        verts, claimed, prov = _PATTERN_TABLE[(m % 4, n % 4)](n, m, kind)
        return _finish(dims, verts, claimed, kind, prov)
    if (n % 4, m % 4) in _PATTERN_TABLE:
        verts, claimed, prov = _PATTERN_TABLE[(n % 4, m % 4)](m, n, kind)
        flipped = [(j, i) for i, j in verts]
        return _finish(dims, flipped, claimed, kind, prov)
    return _projection_cascade(n, m, kind)


def _transposed(res: ConstructionResult) -> ConstructionResult:
    moved = res.vertex_set.transposed()
    return _finish(moved.dims, moved.pairs(), res.claimed_cardinality, res.kind, res.provenance)


def _project_corner_trimmed(n: int, m: int, kind: DominationKind) -> ConstructionResult:
    # m = 1, n = 2 (mod 4): one projection away from the corner-trimmed class
    src = construct_bound_pattern(n + 1, m, kind)
    d, _ = project_column(make_torus(n + 1, m), src.vertex_set, kind)
    bound = src.claimed_cardinality
    if len(d) > bound:
        raise ConstructionInvalidError(f"projected corner pattern grew past {bound}")
    return _finish(d.dims, d.pairs(), len(d), kind, "corner-trimmed-projected")


def normalize_columns_m3(g: TorusGraph, d: VertexSet) -> VertexSet:
    """Empty the sides of every fully occupied row of a width-3 grid.

    Replaces the side rungs of each full row with the neighbouring
    centre rungs, sweeping rows in increasing order until no row is
    full.  Total domination is preserved; cardinality never grows and
    may shrink when an added centre already exists.
    """
    if g.m != 3:
        raise InvalidInputError(f"normalization applies to width 3, got width {g.m}")
    if not is_total_dominating(g, d):
        raise InvalidInputError("input is not a total dominating set")
    n = g.n
    changed = True
    while changed:
        changed = False
        for i in range(1, n + 1):
            if all((i, j) in d for j in (1, 2, 3)):
                d = d.remove(i, 1).remove(i, 3)
                for a in (i - 1, i + 1):
                    w = g.dims.wrap(a, 2)
                    d = d.add(w.i, w.j)
                changed = True
    assert is_total_dominating(g, d)
    return d


def _components(adj: list[list[int]]) -> list[list[int]]:
    seen = [False] * len(adj)
    comps = []
    for s in range(len(adj)):
        if seen[s]:
            continue
        stack, comp = [s], []
        seen[s] = True
        while stack:
            v = stack.pop()
            comp.append(v)
            for u in adj[v]:
                if not seen[u]:
                    seen[u] = True
                    stack.append(u)
        comps.append(comp)
    return comps


def _induced_adj(g: TorusGraph, d: VertexSet) -> tuple[list[VertexId], list[list[int]]]:
    verts = list(d)
    index = {v: k for k, v in enumerate(verts)}
    adj: list[list[int]] = [[] for _ in verts]
    for a, b in induced_edges(g, d):
        adj[index[a]].append(index[b])
        adj[index[b]].append(index[a])
    return verts, adj


def _repair_matching(
    g: TorusGraph, d: VertexSet, budget: int
) -> tuple[VertexSet, VertexSet]:
    """Repair d until its induced subgraph has a perfect matching.

    Every unmatched member either gains a partner (a new vertex next to
    an exposed member, while budget lasts) or, once the budget is spent,
    an exposed member whose coverage is redundant is dropped instead,
    which both shrinks the deficiency and buys one addition back.  Each
    step reduces the number of exposed members, so the loop terminates.
    """
    added = VertexSet(g.dims)
    while True:
        verts, adj = _induced_adj(g, d)
        mate = maximum_matching(adj)
        exposed = [verts[k] for k in range(len(verts)) if mate[k] == -1]
        if not exposed:
            return d, added
        if budget > 0:
            candidates = sorted(
                g.dims.slot(u)
                for v in exposed
                for u in g.neighbors(tuple(v))
                if tuple(u) not in d
            )
            if candidates:
                u = g.dims.vertex(candidates[0])
                d = d.add(u.i, u.j)
                added = added.add(u.i, u.j)
                budget -= 1
                continue
        dropped = False
        for v in sorted(exposed, key=g.dims.slot):
            trial = d.remove(v.i, v.j)
            if is_dominating(g, trial):
                d = trial
                budget += 1
                dropped = True
                break
        if not dropped:
            raise ConstructionInvalidError(
                "matching repair stuck: no addable partner and no droppable member"
            )


def project_column(
    g_big: TorusGraph, d: VertexSet, kind: DominationKind
) -> tuple[VertexSet, ProjectionReport]:
    """Collapse the last row of the grid, pushing its members inward.

    Members of the removed row move onto the row below (or, where that
    row is already occupied at the same rung, one row further).  The
    result dominates the smaller grid totally and never exceeds the
    input's size; for paired inputs the matching is then repaired,
    spending the size saved by the collapse on new partners and trading
    away redundant unmatched members when nothing is left to spend.
    """
    if kind not in (DominationKind.TOTAL, DominationKind.PAIRED):
        raise InvalidInputError(f"projection handles total or paired, got {kind.value}")
    n1, m = g_big.dims.n, g_big.dims.m
    if n1 < 4:
        raise InvalidDimensionsError("projection needs at least 4 rows to start")
    if not satisfies(g_big, d, kind):
        raise InvalidInputError(f"input is not a {kind.value} dominating set")

    n = n1 - 1
    g = make_torus(n, m)
    A = frozenset(j for j in range(1, m + 1) if (n1, j) in d)
    B = frozenset(j for j in range(1, m + 1) if (n, j) in d)
    if not A:
        small = VertexSet.from_vertices(g.dims, d.pairs())
        report = ProjectionReport(A, B, 0, VertexSet(g.dims))
        assert satisfies(g, small, kind)
        return small, report

    kept = [tuple(v) for v in d if v.i <= n]
    moved = [(n - 1, j) for j in sorted(A & B)] + [(n, j) for j in sorted(A - B)]
    small = VertexSet.from_vertices(g.dims, set(kept) | set(moved))
    assert len(small) <= len(d)
    assert is_total_dominating(g, small)

    if kind is DominationKind.TOTAL:
        return small, ProjectionReport(A, B, 0, VertexSet(g.dims))

    _, adj = _induced_adj(g, small)
    odd = sum(1 for comp in _components(adj) if len(comp) % 2)
    repaired, added = _repair_matching(g, small, len(d) - len(small))
    assert len(repaired) <= len(d)
    assert satisfies(g, repaired, DominationKind.PAIRED)
    return repaired, ProjectionReport(A, B, odd, added)


def best_upper_witness(n: int, m: int, kind: DominationKind) -> ConstructionResult:
    """Smallest validated pattern covering (n, m) for the given kind.

    Tries every applicable family, skipping those that fail validation,
    and returns the smallest survivor (ties broken by provenance name).
    """
    if kind not in (DominationKind.TOTAL, DominationKind.PAIRED):
        raise InvalidInputError(f"no witness catalog for kind {kind.value}")
    builders: list[Callable[[], ConstructionResult]] = []
    if m == 3:
        builders.append(lambda: construct_m3(n, kind))
    if n == 3:
        builders.append(lambda: _transposed(construct_m3(m, kind)))
    if m == 4:
        builders.append(lambda: construct_m4(n))
    if n == 4:
        builders.append(lambda: _transposed(construct_m4(m)))
    if n % 4 == 0 and m % 4 == 0:
        builders.append(lambda: construct_mod4(n, m))
    if n >= 5 and m >= 5:
        builders.append(lambda: construct_bound_pattern(n, m, kind))
        builders.append(lambda: _projection_cascade(n, m, kind))

    g = make_torus(n, m)
    found: list[tuple[int, str, ConstructionResult]] = []
    for build in builders:
        try:
            res = build()
        except ConstructionInvalidError:
            continue
        if not satisfies(g, res.vertex_set, kind):
            continue
        res = dataclasses.replace(res, kind=kind)
        found.append((res.claimed_cardinality, res.provenance, res))
    if not found:
        raise ConstructionInvalidError(f"no valid {kind.value} pattern covers {n}x{m}")
    found.sort(key=lambda t: (t[0], t[1]))
    return found[0][2]
