"""Toroidal mesh model: dimensions, vertex sets as bitmasks, and adjacency.

The graph is the product of two cycles: rows wrap modulo ``n`` and columns
wrap modulo ``m``.  Vertices carry 1-based coordinates ``(i, j)`` with
``1 <= i <= n`` and ``1 <= j <= m``; internally each vertex maps to the
row-major slot ``(i - 1) * m + (j - 1)`` and sets of vertices are single
Python integers used as bitmasks.  Everything here is immutable so values
can be shared, hashed and cached freely.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

from .errors import InvalidDimensionsError, InvalidInputError, OutOfRangeError

MIN_SIDE = 3


class VertexId(NamedTuple):
    """1-based grid coordinate of a vertex."""

    i: int
    j: int


@dataclass(frozen=True, order=True)
class TorusDims:
    """Validated dimensions of a toroidal mesh."""

    n: int
    m: int

    def __post_init__(self) -> None:
        if self.n < MIN_SIDE or self.m < MIN_SIDE:
            raise InvalidDimensionsError(
                f"both sides must be >= {MIN_SIDE}, got {self.n}x{self.m}"
            )

    @property
    def order(self) -> int:
        return self.n * self.m

    def check(self, v: VertexId) -> None:
        if not (1 <= v.i <= self.n and 1 <= v.j <= self.m):
            raise OutOfRangeError(f"vertex {tuple(v)} outside {self.n}x{self.m} grid")

    def wrap(self, i: int, j: int) -> VertexId:
        """Reduce arbitrary integer coordinates onto the torus."""
        return VertexId((i - 1) % self.n + 1, (j - 1) % self.m + 1)

    def slot(self, v: VertexId) -> int:
        self.check(v)
        return (v.i - 1) * self.m + (v.j - 1)

    def vertex(self, slot: int) -> VertexId:
        if not (0 <= slot < self.order):
            raise OutOfRangeError(f"slot {slot} outside 0..{self.order - 1}")
        return VertexId(slot // self.m + 1, slot % self.m + 1)

    def transposed(self) -> "TorusDims":
        return TorusDims(self.m, self.n)


@dataclass(frozen=True)
class VertexSet:
    """Immutable set of vertices of one grid, stored as a bitmask."""

    dims: TorusDims
    mask: int = 0

    def __post_init__(self) -> None:
        if self.mask < 0 or self.mask >> self.dims.order:
            raise InvalidInputError("mask has bits outside the grid")

    @classmethod
    def from_vertices(cls, dims: TorusDims, vertices: Iterable[tuple[int, int]]) -> "VertexSet":
        mask = 0
        for i, j in vertices:
            mask |= 1 << dims.slot(VertexId(i, j))
        return cls(dims, mask)

    @classmethod
    def from_slots(cls, dims: TorusDims, slots: Iterable[int]) -> "VertexSet":
        mask = 0
        for s in slots:
            if not (0 <= s < dims.order):
                raise OutOfRangeError(f"slot {s} outside grid")
            mask |= 1 << s
        return cls(dims, mask)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    def __contains__(self, v: tuple[int, int]) -> bool:
        return bool(self.mask >> self.dims.slot(VertexId(*v)) & 1)

    def __iter__(self) -> Iterator[VertexId]:
        """Vertices in slot (row-major) order."""
        mask = self.mask
        while mask:
            low = mask & -mask
            yield self.dims.vertex(low.bit_length() - 1)
            mask ^= low

    def _same_grid(self, other: "VertexSet") -> None:
        if self.dims != other.dims:
            raise InvalidInputError("sets live on different grids")

    def union(self, other: "VertexSet") -> "VertexSet":
        self._same_grid(other)
        return VertexSet(self.dims, self.mask | other.mask)

    def intersection(self, other: "VertexSet") -> "VertexSet":
        self._same_grid(other)
        return VertexSet(self.dims, self.mask & other.mask)

    def difference(self, other: "VertexSet") -> "VertexSet":
        self._same_grid(other)
        return VertexSet(self.dims, self.mask & ~other.mask)

    def add(self, i: int, j: int) -> "VertexSet":
        return VertexSet(self.dims, self.mask | 1 << self.dims.slot(VertexId(i, j)))

    def remove(self, i: int, j: int) -> "VertexSet":
        slot = self.dims.slot(VertexId(i, j))
        if not self.mask >> slot & 1:
            raise InvalidInputError(f"vertex ({i}, {j}) not in set")
        return VertexSet(self.dims, self.mask ^ 1 << slot)

    def rotated(self, di: int, dj: int) -> "VertexSet":
        """Shift every vertex by (di, dj) with wraparound."""
        return VertexSet.from_vertices(
            self.dims, (tuple(self.dims.wrap(v.i + di, v.j + dj)) for v in self)
        )

    def transposed(self) -> "VertexSet":
        """The same set on the grid with rows and columns swapped."""
        return VertexSet.from_vertices(self.dims.transposed(), ((v.j, v.i) for v in self))

    def pairs(self) -> list[tuple[int, int]]:
        """Coordinates as sorted (i, j) tuples, in slot order."""
        return [tuple(v) for v in self]


@dataclass(frozen=True)
class BlockRange:
    """A cyclic block of consecutive rows: ``width`` rows starting at ``start``."""

    start: int
    width: int


class TorusGraph:
    """Adjacency tables for one toroidal mesh.

    ``nbr_slots[s]`` lists the four neighbour slots of slot ``s`` and
    ``nbr_masks[s]`` is the same set as a bitmask.  Instances are built
    once per dimension pair and cached, so they must never be mutated.
    """

    def __init__(self, dims: TorusDims):
        self.dims = dims
        n, m = dims.n, dims.m
        nbr_slots: list[tuple[int, ...]] = []
        nbr_masks: list[int] = []
        for s in range(dims.order):
            i, j = s // m + 1, s % m + 1
            around = sorted(
                dims.slot(dims.wrap(a, b))
                for a, b in ((i - 1, j), (i + 1, j), (i, j - 1), (i, j + 1))
            )
            nbr_slots.append(tuple(around))
            mask = 0
            for t in around:
                mask |= 1 << t
            nbr_masks.append(mask)
        self.nbr_slots = tuple(nbr_slots)
        self.nbr_masks = tuple(nbr_masks)
        self.full_mask = (1 << dims.order) - 1

    @property
    def n(self) -> int:
        return self.dims.n

    @property
    def m(self) -> int:
        return self.dims.m

    def edges(self) -> list[tuple[int, int]]:
        """All edges as sorted slot pairs, lexicographically ordered."""
        out = []
        for s, around in enumerate(self.nbr_slots):
            for t in around:
                if s < t:
                    out.append((s, t))
        return sorted(out)

    def neighbors(self, v: tuple[int, int]) -> list[VertexId]:
        """Neighbours of a vertex in slot order."""
        s = self.dims.slot(VertexId(*v))
        return [self.dims.vertex(t) for t in self.nbr_slots[s]]


@functools.lru_cache(maxsize=None)
def make_torus(n: int, m: int) -> TorusGraph:
    return TorusGraph(TorusDims(n, m))


def column(dims: TorusDims, i: int) -> VertexSet:
    """Row ``i`` of the grid (all vertices with first coordinate ``i``)."""
    if not (1 <= i <= dims.n):
        raise OutOfRangeError(f"row {i} outside 1..{dims.n}")
    return VertexSet.from_vertices(dims, ((i, j) for j in range(1, dims.m + 1)))


def induced_edges(g: TorusGraph, d: VertexSet) -> list[tuple[VertexId, VertexId]]:
    """Edges of the subgraph induced by ``d``, in slot order."""
    if d.dims != g.dims:
        raise InvalidInputError("set belongs to a different grid")
    out = []
    for s, around in enumerate(g.nbr_slots):
        if not d.mask >> s & 1:
            continue
        for t in around:
            if s < t and d.mask >> t & 1:
                out.append((g.dims.vertex(s), g.dims.vertex(t)))
    return out


def excise_block(g: TorusGraph, block: BlockRange) -> tuple[TorusGraph, dict[int, int]]:
    """Remove a cyclic block of rows and stitch the cut back together.

    Returns the smaller torus together with a map from surviving old row
    index to new row index.  The stitched adjacency is checked edge for
    edge against a freshly built torus of the reduced size, so the result
    is the genuine smaller mesh and not merely something of the right size.
    """
    n, m = g.dims.n, g.dims.m
    if not (1 <= block.start <= n):
        raise OutOfRangeError(f"block start {block.start} outside 1..{n}")
    if not (1 <= block.width <= n - MIN_SIDE):
        raise InvalidInputError(
            f"block width {block.width} must leave at least {MIN_SIDE} rows"
        )
    removed = {(block.start - 1 + k) % n + 1 for k in range(block.width)}
    first_kept = (block.start - 1 + block.width) % n + 1
    ring_map: dict[int, int] = {}
    row = first_kept
    for new_i in range(1, n - block.width + 1):
        ring_map[row] = new_i
        row = row % n + 1

    small = make_torus(n - block.width, m)
    stitched = set()
    order = sorted(ring_map, key=ring_map.get)
    for idx, old_i in enumerate(order):
        succ = order[(idx + 1) % len(order)]
        for j in range(1, m + 1):
            a = small.dims.slot(VertexId(ring_map[old_i], j))
            stitched.add(tuple(sorted((a, small.dims.slot(VertexId(ring_map[succ], j))))))
            b = small.dims.slot(small.dims.wrap(ring_map[old_i], j + 1))
            stitched.add(tuple(sorted((a, b))))
    if sorted(stitched) != small.edges():
        raise InvalidInputError("stitched graph is not the smaller torus")
    return small, ring_map


def map_set(d: VertexSet, small: TorusGraph, ring_map: dict[int, int]) -> VertexSet:
    """Carry a vertex set across an excision; rows being removed must be absent."""
    moved = []
    for v in d:
        if v.i not in ring_map:
            raise InvalidInputError(f"vertex {tuple(v)} lies in the removed block")
        moved.append((ring_map[v.i], v.j))
    return VertexSet.from_vertices(small.dims, moved)
