"""Checks that a vertex set dominates a toroidal mesh in a given sense.

Four variants are supported.  A plain dominating set leaves no outside
vertex without a neighbour inside.  A total dominating set gives every
vertex of the graph, members included, a neighbour inside.  A paired
dominating set is a dominating set whose induced subgraph has a perfect
matching.  An efficient total dominating set hits every closed demand
exactly once: each vertex of the graph has exactly one neighbour in the
set.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .errors import InvalidInputError
from .matching import maximum_matching
from .torus import TorusGraph, VertexId, VertexSet, induced_edges


class DominationKind(enum.Enum):
    PLAIN = "plain"
    TOTAL = "total"
    PAIRED = "paired"
    EFFICIENT_TOTAL = "efficient-total"


@dataclass(frozen=True)
class MatchingWitness:
    """A perfect matching of an induced subgraph, as vertex pairs."""

    pairs: tuple[tuple[VertexId, VertexId], ...]

    def check(self, g: TorusGraph, d: VertexSet) -> bool:
        """True iff the pairs are disjoint grid edges inside d covering all of d."""
        seen = 0
        for a, b in self.pairs:
            sa, sb = g.dims.slot(a), g.dims.slot(b)
            if not (g.nbr_masks[sa] >> sb & 1):
                return False
            if seen >> sa & 1 or seen >> sb & 1:
                return False
            seen |= 1 << sa | 1 << sb
        return seen == d.mask


@dataclass(frozen=True)
class ColumnProfile:
    """Per-row membership counts of a set on a width-3 grid.

    ``alpha[k]`` counts rows containing exactly ``k`` members.  The two
    inequality flags mirror counting arguments that hold for minimum
    total dominating sets on width-3 grids whose rows carry at most two
    members; they are reported, not enforced.
    """

    alpha: tuple[int, ...]
    applicable: bool
    identity_ok: bool
    surplus_ok: Optional[bool]
    demand_ok: Optional[bool]


def _check_pair(g: TorusGraph, d: VertexSet) -> None:
    if d.dims != g.dims:
        raise InvalidInputError("set belongs to a different grid")


def domination_multiplicity(g: TorusGraph, d: VertexSet) -> list[int]:
    """For each slot, how many of its neighbours lie in d."""
    _check_pair(g, d)
    return [(mask & d.mask).bit_count() for mask in g.nbr_masks]


def is_dominating(g: TorusGraph, d: VertexSet) -> bool:
    _check_pair(g, d)
    covered = d.mask
    for v in d:
        covered |= g.nbr_masks[g.dims.slot(v)]
    return covered == g.full_mask


def is_total_dominating(g: TorusGraph, d: VertexSet) -> bool:
    _check_pair(g, d)
    covered = 0
    for v in d:
        covered |= g.nbr_masks[g.dims.slot(v)]
    return covered == g.full_mask


def has_perfect_matching(g: TorusGraph, d: VertexSet) -> Optional[MatchingWitness]:
    """A perfect matching of the subgraph induced by d, or None."""
    _check_pair(g, d)
    if len(d) % 2:
        return None
    if not d:
        return MatchingWitness(())
    verts = list(d)
    index = {v: k for k, v in enumerate(verts)}
    adj: list[list[int]] = [[] for _ in verts]
    for a, b in induced_edges(g, d):
        adj[index[a]].append(index[b])
        adj[index[b]].append(index[a])
    mate = maximum_matching(adj)
    if -1 in mate:
        return None
    pairs = tuple(
        (verts[k], verts[mate[k]]) for k in range(len(verts)) if k < mate[k]
    )
    witness = MatchingWitness(pairs)
    assert witness.check(g, d)
    return witness


def is_paired_dominating(g: TorusGraph, d: VertexSet) -> bool:
    return is_dominating(g, d) and has_perfect_matching(g, d) is not None


def is_efficient_total(g: TorusGraph, d: VertexSet) -> bool:
    """True iff every vertex has exactly one neighbour in d.

    When that holds, the members pair up perfectly (so the set has even
    size and is paired dominating) and the open neighbourhoods of the
    members partition the vertex set; both consequences are asserted.
    """
    _check_pair(g, d)
    counts = domination_multiplicity(g, d)
    if any(c != 1 for c in counts):
        return False
    assert len(d) % 2 == 0
    assert has_perfect_matching(g, d) is not None
    union = 0
    total = 0
    for v in d:
        mask = g.nbr_masks[g.dims.slot(v)]
        union |= mask
        total += mask.bit_count()
    assert union == g.full_mask and total == g.dims.order
    return True


def column_profile(g: TorusGraph, d: VertexSet) -> ColumnProfile:
    """Row-load profile of a set on a width-3 grid."""
    _check_pair(g, d)
    n, m = g.dims.n, g.dims.m
    loads = [0] * (n + 1)
    for v in d:
        loads[v.i] += 1
    counts = [0] * (m + 1)
    for i in range(1, n + 1):
        counts[loads[i]] += 1
    alpha = tuple(counts)
    applicable = m == 3 and all(load <= 2 for load in loads[1:])
    identity_ok = sum(alpha) == n
    if not applicable:
        return ColumnProfile(alpha, False, identity_ok, None, None)
    surplus_ok = 2 * alpha[2] - alpha[0] >= 0
    demand_ok = 4 * alpha[1] + 7 * alpha[2] >= 3 * n
    return ColumnProfile(alpha, True, identity_ok, surplus_ok, demand_ok)


def satisfies(g: TorusGraph, d: VertexSet, kind: DominationKind) -> bool:
    if kind is DominationKind.PLAIN:
        return is_dominating(g, d)
    if kind is DominationKind.TOTAL:
        return is_total_dominating(g, d)
    if kind is DominationKind.PAIRED:
        return is_paired_dominating(g, d)
    if kind is DominationKind.EFFICIENT_TOTAL:
        return is_efficient_total(g, d)
    raise InvalidInputError(f"unknown domination kind: {kind!r}")
