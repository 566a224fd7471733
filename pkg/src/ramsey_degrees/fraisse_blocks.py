"""Generating-sequence spaces built from finite structures: hypercubes and
clique-free graphs.

For the hypercube space H^n, block i is the grid {0..i}^n carrying the n
coordinate orders.  For the k-clique-free space, block i is the ordered
graph on vertices 0..i in which two vertices are adjacent iff they fall
in different residue classes mod k-1; it is complete (k-1)-partite and so
contains no k-clique.  Block i is literally an initial piece of block
i+1 in both cases, which makes the canonical embedding the identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Any, FrozenSet, Iterable, Iterator, List, Sequence, Tuple, Union

from .errors import BudgetExceeded, IndexTooSmall, SameBlockViolation, UnsupportedSpace
from .space_core import Family, FiniteApprox, SpaceId, SpaceModel, register_model

Point = Tuple[int, ...]

LT, EQ, GT = "LT", "EQ", "GT"
EDGE, NONEDGE = "edge", "nonedge"

DEFAULT_MAX_BLOCK = 10
_QUIET_STEPS = 2


@dataclass(frozen=True)
class GridBlock:
    n: int
    side: int

    @property
    def points(self) -> List[Point]:
        return list(product(range(self.side), repeat=self.n))

    def __len__(self) -> int:
        return self.side**self.n


@dataclass(frozen=True)
class GraphBlock:
    k: int
    size: int

    @property
    def vertices(self) -> List[int]:
        return list(range(self.size))

    def adjacent(self, u: int, v: int) -> bool:
        return u != v and _part(self.k, u) != _part(self.k, v)

    @property
    def edges(self) -> List[Tuple[int, int]]:
        return [(u, v) for u, v in combinations(self.vertices, 2) if self.adjacent(u, v)]

    def __len__(self) -> int:
        return self.size


@dataclass(frozen=True)
class BlockPoint:
    """A point (grid tuple or vertex) tagged with the index of its block."""

    block: int
    item: Any


def _part(k: int, v: int) -> int:
    return v % (k - 1)


def _check(space: SpaceId) -> None:
    if space.family not in (Family.HYPERCUBE, Family.CLIQUEFREE):
        raise UnsupportedSpace(f"{space} is not a hypercube or clique-free space")


def build_block(space: SpaceId, i: int) -> Union[GridBlock, GraphBlock]:
    _check(space)
    if i < 0:
        raise ValueError("block index must be >= 0")
    if space.family is Family.HYPERCUBE:
        return GridBlock(space.param, i + 1)
    return GraphBlock(space.param, i + 1)


def _items(space: SpaceId, i: int) -> list:
    blk = build_block(space, i)
    return blk.points if isinstance(blk, GridBlock) else blk.vertices


def _cmp(x: int, y: int) -> str:
    return LT if x < y else GT if x > y else EQ


def pair_class(space: SpaceId, a: Any, b: Any) -> Union[Tuple[str, ...], str]:
    """Isomorphism class of the ordered pair structure {a, b} inside one block."""
    _check(space)
    if isinstance(a, BlockPoint) or isinstance(b, BlockPoint):
        if not (isinstance(a, BlockPoint) and isinstance(b, BlockPoint)) or a.block != b.block:
            raise SameBlockViolation(f"{a} and {b} do not lie in one block")
        a, b = a.item, b.item
    if a == b:
        raise ValueError("a pair needs two distinct points")
    if space.family is Family.HYPERCUBE:
        a, b = tuple(a), tuple(b)
        if len(a) != space.param or len(b) != space.param:
            raise ValueError(f"points must have {space.param} coordinates")
        lo, hi = (a, b) if a < b else (b, a)
        return tuple(_cmp(x, y) for x, y in zip(lo, hi))
    return EDGE if _part(space.param, a) != _part(space.param, b) else NONEDGE


def _first_full_block(space: SpaceId) -> int:
    # the clique-free blocks realize a non-edge only once a residue repeats
    return space.param - 1 if space.family is Family.CLIQUEFREE else 0


def _stabilize(space: SpaceId, keys_at, max_block: int, what: str) -> int:
    seen: set = set()
    quiet = 0
    start = _first_full_block(space)
    for i in range(max_block + 1):
        before = len(seen)
        seen |= keys_at(i)
        if i <= start:
            continue
        if seen and len(seen) == before:
            quiet += 1
            if quiet >= _QUIET_STEPS:
                return len(seen)
        else:
            quiet = 0
    raise BudgetExceeded(f"{what} for {space} did not stabilize by block {max_block}")


def block_pair_classes(space: SpaceId, i: int) -> FrozenSet:
    return frozenset(pair_class(space, a, b) for a, b in combinations(_items(space, i), 2))


def count_pair_classes(space: SpaceId, max_block: int = DEFAULT_MAX_BLOCK) -> int:
    """Number of pair classes realized in a single block, stabilized over the block index."""
    _check(space)
    return _stabilize(space, lambda i: block_pair_classes(space, i), max_block, "pair classes")


def substructure_key(space: SpaceId, items: Sequence[Any]) -> Tuple:
    """Canonical form of the ordered substructure on ``items`` of one block."""
    _check(space)
    if space.family is Family.HYPERCUBE:
        pts = sorted(set(tuple(p) for p in items))
        ranks = []
        for c in range(space.param):
            vals = sorted({p[c] for p in pts})
            ranks.append(tuple(vals.index(p[c]) for p in pts))
        return (len(pts), tuple(ranks))
    vs = sorted(set(items))
    return (len(vs), tuple(_part(space.param, u) != _part(space.param, v) for u, v in combinations(vs, 2)))


def approx_subset_key(space: SpaceId, chosen: Iterable[BlockPoint]) -> Tuple:
    """Shape of a set of points of a first approximation: per occupied block, in order."""
    groups: dict = {}
    for p in chosen:
        groups.setdefault(p.block, []).append(p.item)
    return tuple(substructure_key(space, groups[b]) for b in sorted(groups))


def count_approx_classes(space: SpaceId, n: int, max_block: int = DEFAULT_MAX_BLOCK) -> int:
    """Classes of n-subsets of the union of the first blocks, by listing every subset."""
    _check(space)
    if n < 1:
        raise ValueError("n must be >= 1")
    pool: List[BlockPoint] = []

    def keys_at(i: int) -> set:
        fresh = [BlockPoint(i, x) for x in _items(space, i)]
        old = list(pool)
        pool.extend(fresh)
        out = set()
        # only subsets touching the new block can be new
        for r in range(1, n + 1):
            for new_part in combinations(fresh, r):
                for old_part in combinations(old, n - r):
                    out.add(approx_subset_key(space, old_part + new_part))
        return out

    return _stabilize(space, keys_at, max_block, f"classes of {n}-subsets")


def embed_subset(space: SpaceId, b: Sequence[int]) -> FiniteApprox:
    """The approximation whose j-th block is the canonical copy of block j inside block B[j]."""
    _check(space)
    b = list(b)
    if not b:
        raise ValueError("B must be nonempty")
    if any(x >= y for x, y in zip(b, b[1:])):
        raise ValueError(f"B must be strictly increasing: {b}")
    blocks = []
    for j, loc in enumerate(b):
        if loc < j:
            raise IndexTooSmall(f"B[{j}] = {loc} < {j}")
        blocks.append((loc, tuple(_items(space, j))))
    return FiniteApprox(space, tuple(blocks))


def is_substructure_block(space: SpaceId, small: Tuple[int, tuple], big: Tuple[int, tuple]) -> bool:
    """Whether two located blocks share a location and one's items contain the other's."""
    return small[0] == big[0] and set(small[1]) <= set(big[1])


# --- audit models ------------------------------------------------------------
# A block of a member is a copy of block j placed inside block n of the
# maximal member.  Grid copies are products of per-axis subsets; graph copies
# are increasing vertex maps preserving adjacency and non-adjacency.

def _grid_copies(dim: int, j: int, n: int) -> Iterator[tuple]:
    axes = list(combinations(range(n + 1), j + 1))
    for choice in product(axes, repeat=dim):
        yield choice


def _graph_copies(k: int, j: int, n: int) -> Iterator[tuple]:
    pattern = [_part(k, u) != _part(k, v) for u, v in combinations(range(j + 1), 2)]
    for vs in combinations(range(n + 1), j + 1):
        if [_part(k, u) != _part(k, v) for u, v in combinations(vs, 2)] == pattern:
            yield vs


class FraisseModel(SpaceModel):
    def __init__(self, space: SpaceId, bound: int = 0) -> None:
        super().__init__(space)
        _check(space)
        big = space.family is Family.HYPERCUBE and space.param >= 2
        self.bound = bound or (4 if big else 5)

    def _copies(self, j: int, n: int) -> Iterator[tuple]:
        if self.space.family is Family.HYPERCUBE:
            return _grid_copies(self.space.param, j, n)
        return _graph_copies(self.space.param, j, n)

    def _is_copy(self, j: int, blk: Any) -> bool:
        n, payload = blk
        if n < j:
            return False
        seqs = payload if self.space.family is Family.HYPERCUBE else (payload,)
        if self.space.family is Family.HYPERCUBE and len(seqs) != self.space.param:
            return False
        for s in seqs:
            if len(s) != j + 1 or s[0] < 0 or s[-1] > n or any(x >= y for x, y in zip(s, s[1:])):
                return False
        if self.space.family is Family.CLIQUEFREE:
            k = self.space.param
            return all(
                (_part(k, u) != _part(k, v)) == (_part(k, a) != _part(k, b))
                for (u, v), (a, b) in zip(combinations(payload, 2), combinations(range(j + 1), 2))
            )
        return True

    def _inside(self, small: Any, big: Any) -> bool:
        if self.space.family is Family.HYPERCUBE:
            return all(set(x) <= set(y) for x, y in zip(small[1], big[1]))
        return set(small[1]) <= set(big[1])

    def location(self, block: Any) -> int:
        return block[0]

    def is_valid(self, a: FiniteApprox) -> bool:
        locs = [blk[0] for blk in a.blocks]
        if any(x >= y for x, y in zip(locs, locs[1:])):
            return False
        return all(self._is_copy(j, blk) for j, blk in enumerate(a.blocks))

    def approximations(self, depth: int) -> Iterator[FiniteApprox]:
        def rec(prefix: tuple, lo: int) -> Iterator[FiniteApprox]:
            yield FiniteApprox(self.space, prefix)
            if len(prefix) == depth:
                return
            j = len(prefix)
            for n in range(max(lo, j), self.bound):
                for payload in self._copies(j, n):
                    yield from rec(prefix + ((n, payload),), n + 1)

        yield from rec((), 0)

    def below(self, b: FiniteApprox) -> Iterator[FiniteApprox]:
        def rec(prefix: tuple, lo: int) -> Iterator[FiniteApprox]:
            yield FiniteApprox(self.space, prefix)
            j = len(prefix)
            for idx in range(lo, len(b.blocks)):
                host = b.blocks[idx]
                for payload in self._copies(j, host[0]):
                    cand = (host[0], payload)
                    if self._inside(cand, host):
                        yield from rec(prefix + (cand,), idx + 1)

        yield from rec((), 0)

    def leq_fin(self, a: FiniteApprox, b: FiniteApprox) -> bool:
        if not self.is_valid(a):
            return False
        idx = 0
        for blk in a.blocks:
            while idx < len(b.blocks) and not (b.blocks[idx][0] == blk[0] and self._inside(blk, b.blocks[idx])):
                idx += 1
            if idx == len(b.blocks):
                return False
            idx += 1
        return True


register_model(Family.HYPERCUBE)(FraisseModel)
register_model(Family.CLIQUEFREE)(FraisseModel)
