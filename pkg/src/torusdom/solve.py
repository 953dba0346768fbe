"""Exact solvers for plain, total and paired domination on toroidal meshes.

Four engines, each certifying optimality a different way:

* an enumeration oracle for tiny grids (every candidate of each size in
  slot order, so minimality is exhaustive and certificates canonical);
* a cyclic profile dynamic program sweeping rows, carrying per-row
  membership, outstanding-domination and (for the paired variant)
  unmatched-member masks, with wraparound closed by boundary seeds;
* a branch-and-bound over disjoint adjacent pairs for paired sets on
  grids too wide for the DP, with iterative deepening from the degree
  bound so exhaustion below the answer is the optimality proof;
* a sandwich shortcut when a validated pattern meets the degree bound,
  which certifies without any search.

All engines are deterministic: ties break toward the first candidate
in sorted order, and repeated runs return identical certificates.
"""

from __future__ import annotations

import enum
import functools
import itertools
import time
from dataclasses import dataclass
from typing import Iterator, Optional

from .construct import best_upper_witness
from .errors import InstanceTooLargeError, InvalidInputError
from .formulas import lower_bound_regular
from .matching import maximum_matching
from .torus import TorusGraph, VertexSet, make_torus
from .validate import DominationKind, is_efficient_total, satisfies

ORACLE_CAP = 24
ORACLE_AUTO_CAP = 20
PROFILE_WIDTH_CAP = 8
PAIRED_WIDTH_CAP = 6
EFFICIENT_WIDTH_CAP = 8


class SolveMethod(enum.Enum):
    ORACLE = "oracle"
    PROFILE_DP = "profile-dp"
    PAIRED_SEARCH = "paired-search"
    SANDWICH = "sandwich"


@dataclass(frozen=True)
class SolveResult:
    value: int
    certificate: VertexSet
    kind: DominationKind
    method: SolveMethod
    elapsed: float


def _result(
    g: TorusGraph,
    value: int,
    certificate: VertexSet,
    kind: DominationKind,
    method: SolveMethod,
    t0: float,
) -> SolveResult:
    assert len(certificate) == value and satisfies(g, certificate, kind)
    return SolveResult(value, certificate, kind, method, time.perf_counter() - t0)


def _check_kind(kind: DominationKind) -> None:
    if kind not in (DominationKind.PLAIN, DominationKind.TOTAL, DominationKind.PAIRED):
        raise InvalidInputError(f"solvers accept plain, total or paired, got {kind!r}")


def _has_perfect_pairing(g: TorusGraph, slots: list[int]) -> bool:
    index = {s: k for k, s in enumerate(slots)}
    adj: list[list[int]] = [[] for _ in slots]
    for k, s in enumerate(slots):
        for t in g.nbr_slots[s]:
            if t in index and t > s:
                adj[k].append(index[t])
                adj[index[t]].append(k)
    return -1 not in maximum_matching(adj)


def solve_oracle(n: int, m: int, kind: DominationKind) -> SolveResult:
    """Exact minimum by subset enumeration, nondecreasing in cardinality.

    A rotation maps some member of any optimum onto slot 0, so only
    candidate sets containing slot 0 are enumerated; within one
    cardinality candidates appear in lexicographic slot order and the
    first valid one is returned, which makes the certificate the
    lexicographically least optimum overall.
    """
    t0 = time.perf_counter()
    _check_kind(kind)
    g = make_torus(n, m)
    order = g.dims.order
    if order > ORACLE_CAP:
        raise InstanceTooLargeError(f"oracle cap is {ORACLE_CAP} vertices, got {order}")

    total = kind is DominationKind.TOTAL
    paired = kind is DominationKind.PAIRED
    per_pick = 4 if total else 5
    cover = [
        mask if total else mask | (1 << s) for s, mask in enumerate(g.nbr_masks)
    ]
    full = g.full_mask

    def search(cursor: int, left: int, covered: int, chosen: list[int]) -> Optional[list[int]]:
        if left == 0:
            if covered != full:
                return None
            if paired and not _has_perfect_pairing(g, chosen):
                return None
            return list(chosen)
        uncovered = full & ~covered
        if uncovered.bit_count() > left * per_pick:
            return None
        future = full & ~((1 << cursor) - 1)
        if uncovered:
            low = (uncovered & -uncovered).bit_length() - 1
            if not cover[low] & future:
                return None
        if paired:
            chosen_mask = 0
            for s in chosen:
                chosen_mask |= 1 << s
            for s in chosen:
                nb = g.nbr_masks[s]
                if not nb & chosen_mask and not nb & future:
                    return None
        for s in range(cursor, order - left + 1):
            hit = search(s + 1, left - 1, covered | cover[s], chosen + [s])
            if hit is not None:
                return hit
        return None

    start = 2 if paired else 1
    step = 2 if paired else 1
    for k in range(start, order + 1, step):
        found = search(1, k - 1, cover[0], [0])
        if found is not None:
            cert = VertexSet.from_slots(g.dims, found)
            return _result(g, k, cert, kind, SolveMethod.ORACLE, t0)
    raise InvalidInputError(f"no {kind.value} dominating set exists on {n}x{m}")


def _orient(n: int, m: int) -> tuple[int, int, bool]:
    """(length, width, transposed) with width = the smaller side."""
    if m <= n:
        return n, m, False
    return m, n, True


def _rot_left(c: int, w: int, full: int) -> int:
    return ((c << 1) & full) | (c >> (w - 1))


def _rot_right(c: int, w: int, full: int) -> int:
    return (c >> 1) | ((c & 1) << (w - 1))


def _cyc(c: int, w: int, full: int) -> int:
    return _rot_left(c, w, full) | _rot_right(c, w, full)


@functools.lru_cache(maxsize=None)
def _supersets(w: int) -> tuple[tuple[int, ...], ...]:
    full = (1 << w) - 1
    table = []
    for u in range(full + 1):
        free = full & ~u
        subs = [0]
        b = free
        while True:
            subs.append(b)
            if b == 0:
                break
            b = (b - 1) & free
        table.append(tuple(sorted(set(u | s for s in subs))))
    return tuple(table)


def _witness_upper(n: int, m: int, kind: DominationKind) -> VertexSet:
    catalog_kind = DominationKind.PAIRED if kind is DominationKind.PAIRED else DominationKind.TOTAL
    return best_upper_witness(n, m, catalog_kind).vertex_set


def solve_profile_dp(n: int, m: int, kind: DominationKind) -> SolveResult:
    """Exact plain or total minimum via a cyclic row-sweep DP.

    State after each row: (membership mask, mask of that row's vertices
    still needing a dominator from the next row).  Wraparound is closed
    by enumerating boundary seeds: the first row's membership together
    with a guess of which of its needs the last row will satisfy.  The
    first row of some rotated optimum has at most floor(best witness /
    rows) members, so seeds are capped there.
    """
    t0 = time.perf_counter()
    if kind not in (DominationKind.PLAIN, DominationKind.TOTAL):
        raise InvalidInputError(f"profile DP handles plain or total, got {kind.value}")
    length, width, transposed = _orient(n, m)
    if width > PROFILE_WIDTH_CAP:
        raise InstanceTooLargeError(f"profile DP width cap is {PROFILE_WIDTH_CAP}, got {width}")

    full = (1 << width) - 1
    total = kind is DominationKind.TOTAL

    def need(c: int) -> int:
        return full if total else full & ~c

    witness = _witness_upper(n, m, kind)
    ub = len(witness)
    seed_cap = ub // length
    supersets = _supersets(width)
    cyc = [_cyc(c, width, full) for c in range(full + 1)]
    pop = [c.bit_count() for c in range(full + 1)]

    best: Optional[tuple[int, list[int]]] = None
    for c1 in range(full + 1):
        if pop[c1] > seed_cap:
            continue
        pending = need(c1) & ~cyc[c1]
        # enumerate which part of the first row's needs the second row covers
        u_choices = []
        b = pending
        while True:
            u_choices.append(pending & ~b)
            if b == 0:
                break
            b = (b - 1) & pending
        for u1 in sorted(set(u_choices)):
            r1 = pending & ~u1
            # layers[t] maps state -> (cost, previous state)
            layer: dict[tuple[int, int], tuple[int, Optional[tuple[int, int]]]] = {
                (c1, u1): (pop[c1], None)
            }
            layers = [layer]
            for _ in range(length - 1):
                nxt: dict[tuple[int, int], tuple[int, Optional[tuple[int, int]]]] = {}
                for state in sorted(layer):
                    cost = layer[state][0]
                    c, u = state
                    for c2 in supersets[u]:
                        u2 = need(c2) & ~(cyc[c2] | c)
                        cand = cost + pop[c2]
                        if cand > ub:
                            continue
                        key = (c2, u2)
                        if key not in nxt or cand < nxt[key][0]:
                            nxt[key] = (cand, state)
                layer = nxt
                layers.append(layer)
            for state in sorted(layer):
                c_last, u_last = state
                if u_last & ~c1 or r1 & ~c_last:
                    continue
                cost = layer[state][0]
                if best is not None and cost >= best[0]:
                    continue
                rows = []
                cur: Optional[tuple[int, int]] = state
                for t in range(length - 1, -1, -1):
                    rows.append(cur[0])
                    cur = layers[t][cur][1]
                best = (cost, rows[::-1])

    assert best is not None and best[0] <= ub
    value, rows = best
    verts = []
    for i, c in enumerate(rows, start=1):
        for j in range(1, width + 1):
            if c >> (j - 1) & 1:
                verts.append((i, j))
    dims_lw = make_torus(length, width).dims
    cert = VertexSet.from_vertices(dims_lw, verts)
    if transposed:
        cert = cert.transposed()
    g = make_torus(n, m)
    return _result(g, value, cert, kind, SolveMethod.PROFILE_DP, t0)


@functools.lru_cache(maxsize=None)
def _cycle_leftovers(w: int) -> tuple[tuple[int, ...], ...]:
    """For each member mask of a width-w ring: leftover masks reachable by
    matching some members along in-row ring edges (wrap included)."""
    full = (1 << w) - 1

    @functools.lru_cache(maxsize=None)
    def rec(mask: int) -> frozenset[int]:
        if not mask:
            return frozenset((0,))
        j = (mask & -mask).bit_length() - 1
        rest = mask ^ (1 << j)
        out = set(l | (1 << j) for l in rec(rest))
        for k in ((j - 1) % w, (j + 1) % w):
            if k != j and rest >> k & 1:
                out |= rec(rest ^ (1 << k))
        return frozenset(out)

    return tuple(tuple(sorted(rec(mask))) for mask in range(full + 1))


def solve_paired_dp(n: int, m: int) -> SolveResult:
    """Exact paired minimum via the profile DP extended with matching state.

    Rows are swept as in the plain DP, with a third mask tracking
    members still awaiting a partner; those must be consumed by
    same-rung members of the next row, while fresh members may pair up
    along their own row's ring edges.  Boundary seeds additionally fix
    which first-row members the last row will claim.
    """
    t0 = time.perf_counter()
    length, width, transposed = _orient(n, m)
    if width > PAIRED_WIDTH_CAP:
        raise InstanceTooLargeError(f"paired DP width cap is {PAIRED_WIDTH_CAP}, got {width}")

    full = (1 << width) - 1
    supersets = _supersets(width)
    leftovers = _cycle_leftovers(width)
    cyc = [_cyc(c, width, full) for c in range(full + 1)]
    pop = [c.bit_count() for c in range(full + 1)]

    witness = _witness_upper(n, m, DominationKind.PAIRED)
    ub = len(witness)
    seed_cap = ub // length

    def subsets(mask: int) -> list[int]:
        out = []
        b = mask
        while True:
            out.append(mask & ~b)
            if b == 0:
                break
            b = (b - 1) & mask
        return sorted(set(out))

    State = tuple[int, int, int]  # membership, pending domination, unmatched
    best: Optional[tuple[int, list[int]]] = None
    for c1 in range(full + 1):
        if pop[c1] > seed_cap:
            continue
        pending = full & ~c1 & ~cyc[c1]
        for u1 in subsets(pending):
            r1 = pending & ~u1
            for x1 in subsets(c1):
                rest1 = c1 & ~x1
                for w1 in leftovers[rest1]:
                    layer: dict[State, tuple[int, Optional[State]]] = {
                        (c1, u1, w1): (pop[c1], None)
                    }
                    layers = [layer]
                    for _ in range(length - 1):
                        nxt: dict[State, tuple[int, Optional[State]]] = {}
                        for state in sorted(layer):
                            cost = layer[state][0]
                            c, u, wmask = state
                            for c2 in supersets[u | wmask]:
                                cand = cost + pop[c2]
                                if cand > ub:
                                    continue
                                u2 = full & ~c2 & ~(cyc[c2] | c)
                                rest = c2 & ~wmask
                                for w2 in leftovers[rest]:
                                    key = (c2, u2, w2)
                                    if key not in nxt or cand < nxt[key][0]:
                                        nxt[key] = (cand, state)
                        layer = nxt
                        layers.append(layer)
                    for state in sorted(layer):
                        c_last, u_last, w_last = state
                        if u_last & ~c1 or r1 & ~c_last or w_last != x1:
                            continue
                        cost = layer[state][0]
                        if best is not None and cost >= best[0]:
                            continue
                        rows = []
                        cur: Optional[State] = state
                        for t in range(length - 1, -1, -1):
                            rows.append(cur[0])
                            cur = layers[t][cur][1]
                        best = (cost, rows[::-1])

    assert best is not None and best[0] <= ub
    value, rows = best
    verts = []
    for i, c in enumerate(rows, start=1):
        for j in range(1, width + 1):
            if c >> (j - 1) & 1:
                verts.append((i, j))
    cert = VertexSet.from_vertices(make_torus(length, width).dims, verts)
    if transposed:
        cert = cert.transposed()
    g = make_torus(n, m)
    return _result(g, value, cert, DominationKind.PAIRED, SolveMethod.PROFILE_DP, t0)


def _paired_search(n: int, m: int, incumbent: VertexSet, t0: float) -> SolveResult:
    """Branch-and-bound over disjoint adjacent pairs, deepening from the
    parity-rounded degree bound; exhausting a level proves absence."""
    g = make_torus(n, m)
    full = g.full_mask
    edges = g.edges()
    closed = [g.nbr_masks[s] | (1 << s) for s in range(g.dims.order)]
    edge_cover = [closed[a] | closed[b] for a, b in edges]
    edge_mask = [(1 << a) | (1 << b) for a, b in edges]
    by_vertex: list[list[int]] = [[] for _ in range(g.dims.order)]
    for e, (a, b) in enumerate(edges):
        by_vertex[a].append(e)
        by_vertex[b].append(e)

    def exists(pairs: int) -> Optional[list[int]]:
        banned = [False] * len(edges)

        def rec(covered: int, used: int, left: int, chosen: list[int]) -> Optional[list[int]]:
            uncovered = full & ~covered
            if not uncovered:
                return list(chosen) if left == 0 else None
            if left == 0 or uncovered.bit_count() > 8 * left:
                return None
            v = (uncovered & -uncovered).bit_length() - 1
            cands = sorted(
                e
                for s in range(g.dims.order)
                if closed[v] >> s & 1
                for e in by_vertex[s]
                if not banned[e] and not edge_mask[e] & used
            )
            local: list[int] = []
            hit = None
            for e in sorted(set(cands)):
                hit = rec(covered | edge_cover[e], used | edge_mask[e], left - 1, chosen + [e])
                if hit is not None:
                    break
                banned[e] = True
                local.append(e)
            for e in local:
                banned[e] = False
            return hit

        return rec(0, 0, pairs, [])

    lo = lower_bound_regular(n, m)
    lo += lo % 2
    hi = len(incumbent)
    assert hi % 2 == 0
    for k in range(lo, hi, 2):
        found = exists(k // 2)
        if found is not None:
            slots: list[int] = []
            for e in found:
                slots += list(edges[e])
            cert = VertexSet.from_slots(g.dims, slots)
            return _result(g, k, cert, DominationKind.PAIRED, SolveMethod.PAIRED_SEARCH, t0)
    return _result(g, hi, incumbent, DominationKind.PAIRED, SolveMethod.PAIRED_SEARCH, t0)


def solve_paired(n: int, m: int) -> SolveResult:
    """Exact paired minimum: sandwich if a pattern meets the parity-rounded
    degree bound, the oracle on tiny grids, pair search otherwise."""
    t0 = time.perf_counter()
    g = make_torus(n, m)
    witness = _witness_upper(n, m, DominationKind.PAIRED)
    lo = lower_bound_regular(n, m)
    lo += lo % 2
    if len(witness) == lo:
        return _result(g, lo, witness, DominationKind.PAIRED, SolveMethod.SANDWICH, t0)
    if g.dims.order <= ORACLE_AUTO_CAP:
        return solve_oracle(n, m, DominationKind.PAIRED)
    return _paired_search(n, m, witness, t0)


def find_efficient_tds(n: int, m: int) -> Optional[VertexSet]:
    """An efficient total dominating set, or None when none exists.

    Marches row by row: once two consecutive row masks are fixed, the
    requirement that every vertex between them is dominated exactly
    once forces every further row, so seeds are just the first two
    masks.  Wraparound is checked on the final and first rows.
    """
    if (n * m) % 4:
        return None
    length, width, transposed = _orient(n, m)
    if width > EFFICIENT_WIDTH_CAP:
        raise InstanceTooLargeError(
            f"efficient-set march width cap is {EFFICIENT_WIDTH_CAP}, got {width}"
        )
    full = (1 << width) - 1

    def exact_one(a: int, b: int, c: int, d: int) -> bool:
        overlap = (a & b) | (a & c) | (a & d) | (b & c) | (b & d) | (c & d)
        return (a ^ b ^ c ^ d) == full and not overlap

    for c1 in range(full + 1):
        for c2 in range(full + 1):
            cols = [c1, c2]
            dead = False
            for _ in range(length - 2):
                prev, cur = cols[-2], cols[-1]
                left = _rot_left(cur, width, full)
                right = _rot_right(cur, width, full)
                if (left & right) | (left & prev) | (right & prev):
                    dead = True
                    break
                cols.append(full & ~(left | right | prev))
            if dead:
                continue
            last, first = cols[-1], cols[0]
            if not exact_one(
                _rot_left(last, width, full), _rot_right(last, width, full), cols[-2], first
            ):
                continue
            if not exact_one(
                _rot_left(first, width, full), _rot_right(first, width, full), last, cols[1]
            ):
                continue
            verts = [
                (i, j)
                for i, c in enumerate(cols, start=1)
                for j in range(1, width + 1)
                if c >> (j - 1) & 1
            ]
            found = VertexSet.from_vertices(make_torus(length, width).dims, verts)
            if transposed:
                found = found.transposed()
            g = make_torus(n, m)
            assert len(found) == n * m // 4 and is_efficient_total(g, found)
            return found
    return None


def enumerate_total_dominating_sets(n: int, m: int, max_size: int) -> Iterator[VertexSet]:
    """Every total dominating set of size at most max_size, each exactly once.

    Walks a canonical decision tree: repeatedly take the lowest slot
    not yet dominated and branch on its lowest admissible dominator,
    banning skipped alternatives so each set is reached by one path;
    completed cores are then padded with every admissible subset of
    free vertices.
    """
    g = make_torus(n, m)
    full = g.full_mask
    order = g.dims.order

    def rec(chosen: int, banned: int, covered: int, size: int) -> Iterator[int]:
        uncovered = full & ~covered
        if not uncovered:
            free = sorted_slots(full & ~chosen & ~banned)
            for extra in range(max_size - size + 1):
                for combo in itertools.combinations(free, extra):
                    mask = chosen
                    for s in combo:
                        mask |= 1 << s
                    yield mask
            return
        if uncovered.bit_count() > (max_size - size) * 4:
            return
        v = (uncovered & -uncovered).bit_length() - 1
        bans = banned
        for u in sorted_slots(g.nbr_masks[v] & ~banned):
            yield from rec(chosen | 1 << u, bans, covered | g.nbr_masks[u], size + 1)
            bans |= 1 << u

    def sorted_slots(mask: int) -> list[int]:
        out = []
        while mask:
            low = mask & -mask
            out.append(low.bit_length() - 1)
            mask ^= low
        return out

    for mask in rec(0, 0, 0, 0):
        yield VertexSet(g.dims, mask)


def solve(
    n: int, m: int, kind: DominationKind, method: str = "auto"
) -> SolveResult:
    """Front door: pick the cheapest certifying engine for the instance.

    method "oracle" and "dp" force those engines; "auto" prefers the
    sandwich certificate, then the oracle on tiny grids, then the DP
    (plain/total) or the pair search (paired).
    """
    _check_kind(kind)
    if method == "oracle":
        return solve_oracle(n, m, kind)
    if method == "dp":
        if kind is DominationKind.PAIRED:
            return solve_paired_dp(n, m)
        return solve_profile_dp(n, m, kind)
    if method != "auto":
        raise InvalidInputError(f"unknown method {method!r}")
    if kind is DominationKind.PAIRED:
        return solve_paired(n, m)
    t0 = time.perf_counter()
    g = make_torus(n, m)
    if g.dims.order <= ORACLE_AUTO_CAP:
        return solve_oracle(n, m, kind)
    if kind is DominationKind.TOTAL:
        witness = _witness_upper(n, m, kind)
        if len(witness) == lower_bound_regular(n, m):
            return _result(
                g, len(witness), witness, kind, SolveMethod.SANDWICH, t0
            )
    return solve_profile_dp(n, m, kind)
