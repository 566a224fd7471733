"""Laflamme block trees T_k and the shapes of n-subsets of their leaves.

Block n of T_1 is the root together with <n> and the leaves <n, i> for
i <= n.  Block n of T_{k+1} is <n> prepended to the first n+1 blocks of
T_k.  Unwinding the recursion, the leaves of T_k are exactly the
non-increasing integer sequences of length k+1, grouped into blocks by
their first entry.

A set of leaves is summarised by a recursive shape key: group the leaves
by their first entry in increasing order; at level 1 each group
contributes its size, above that it contributes the shape of the group
with the first entry stripped.  Two subsets are isomorphic exactly when
their keys agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, Iterator, List, Sequence, Tuple

from .errors import BudgetExceeded, NotMaximal, ShapeMismatch
from .space_core import Family, FiniteApprox, SpaceId, SpaceModel, register_model

Node = Tuple[int, ...]
Block = Tuple[Node, ...]
ShapeKey = Tuple

DEFAULT_M_CAP = 12
_QUIET_STEPS = 2


def is_leaf(k: int, node: Sequence[int]) -> bool:
    """Whether ``node`` is a maximal node of T_k."""
    node = tuple(node)
    return len(node) == k + 1 and all(x >= 0 for x in node) and all(a >= b for a, b in zip(node, node[1:]))


def _group(leaves: Iterable[Node]) -> List[Tuple[int, List[Node]]]:
    groups: Dict[int, List[Node]] = {}
    for leaf in sorted(leaves):
        groups.setdefault(leaf[0], []).append(leaf)
    return sorted(groups.items())


def _closure(leaves: Iterable[Node]) -> FrozenSet[Node]:
    return frozenset(leaf[:l] for leaf in leaves for l in range(len(leaf) + 1))


@dataclass(frozen=True)
class TkApprox:
    """A finite union of blocks of a subtree of T_k; each block is its sorted leaves."""

    k: int
    blocks: Tuple[Block, ...]

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("k must be >= 1")
        blocks = tuple(tuple(sorted(tuple(x) for x in b)) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        heads = []
        for b in blocks:
            if not b:
                raise ValueError("blocks must be nonempty")
            for leaf in b:
                if not is_leaf(self.k, leaf):
                    raise NotMaximal(f"{leaf} is not a maximal node of T_{self.k}")
            if len({leaf[0] for leaf in b}) != 1:
                raise ValueError(f"block {b} spans more than one root child")
            heads.append(b[0][0])
        if any(x >= y for x, y in zip(heads, heads[1:])):
            raise ValueError(f"block roots must increase: {heads}")

    def __len__(self) -> int:
        return len(self.blocks)

    @property
    def leaves(self) -> Tuple[Node, ...]:
        return tuple(leaf for b in self.blocks for leaf in b)

    def nodes(self) -> FrozenSet[Node]:
        """All nodes, root included."""
        return _closure(self.leaves)

    def block_nodes(self, i: int) -> FrozenSet[Node]:
        return _closure(self.blocks[i])


def _tree_leaves(k: int, m: int) -> List[Node]:
    """Leaves of the first m blocks of T_k in lexicographic order."""
    if k == 1:
        return [(n, i) for n in range(m) for i in range(n + 1)]
    return [(n,) + rest for n in range(m) for rest in _tree_leaves(k - 1, n + 1)]


def build_tree(k: int, m: int) -> TkApprox:
    """r_m of T_k."""
    if k < 1 or m < 1:
        raise ValueError("k and m must be >= 1")
    blocks = [tuple(leaf for leaf in group) for _, group in _group(_tree_leaves(k, m))]
    return TkApprox(k, tuple(blocks))


def _shape(k: int, leaves: Sequence[Node]) -> ShapeKey:
    parts = []
    for _, group in _group(leaves):
        if k == 1:
            parts.append(len(group))
        else:
            parts.append(_shape(k - 1, [leaf[1:] for leaf in group]))
    return tuple(parts)


@dataclass(frozen=True)
class SubsetShape:
    """Recursive shape key of a leaf set; ``key`` has one entry per occupied block."""

    k: int
    key: ShapeKey

    @property
    def size(self) -> int:
        return _key_size(self.k, self.key)

    def __str__(self) -> str:
        return repr(self.key).replace(" ", "").replace(",)", ")")


def _key_size(k: int, key: ShapeKey) -> int:
    if k == 1:
        return sum(key)
    return sum(_key_size(k - 1, part) for part in key)


def subset_shape(a: TkApprox, nodes: Iterable[Sequence[int]]) -> SubsetShape:
    chosen = {tuple(x) for x in nodes}
    if not chosen:
        raise ValueError("need a nonempty node set")
    leaves = set(a.leaves)
    for node in chosen:
        if node not in leaves:
            if node in a.nodes():
                raise NotMaximal(f"{node} is an internal node")
            raise NotMaximal(f"{node} is not a node of the approximation")
    return SubsetShape(a.k, _shape(a.k, sorted(chosen)))


def shapes_by_enumeration(a: TkApprox, n: int) -> FrozenSet[ShapeKey]:
    """Shape keys of every n-subset of leaves, by listing the subsets."""
    return frozenset(_shape(a.k, sub) for sub in combinations(a.leaves, n))


# Shapes realised inside one block and inside the first m blocks, computed by
# dynamic programming over blocks instead of listing subsets.

@lru_cache(maxsize=None)
def _block_inner(k: int, b: int, j: int) -> FrozenSet:
    """Inner keys of j-subsets of block b of T_k."""
    if k == 1:
        return frozenset([j]) if 1 <= j <= b + 1 else frozenset()
    return _prefix_shapes(k - 1, b + 1, j)


@lru_cache(maxsize=None)
def _prefix_shapes(k: int, m: int, n: int) -> FrozenSet[ShapeKey]:
    """Shape keys of n-subsets of leaves of the first m blocks of T_k."""
    # layer[used] = keys of selections of `used` leaves among blocks seen so far
    layer: Dict[int, set] = {0: {()}}
    for b in range(m):
        nxt = {u: set(keys) for u, keys in layer.items()}
        for used, keys in layer.items():
            for j in range(1, n - used + 1):
                inner = _block_inner(k, b, j)
                if not inner:
                    continue
                bucket = nxt.setdefault(used + j, set())
                for key in keys:
                    for part in inner:
                        bucket.add(key + (part,))
        layer = nxt
    return frozenset(layer.get(n, set()))


def subset_shapes(k: int, m: int, n: int) -> FrozenSet[ShapeKey]:
    """Shape keys of n-subsets of leaves of build_tree(k, m)."""
    if k < 1 or m < 1 or n < 1:
        raise ValueError("k, m and n must be >= 1")
    return _prefix_shapes(k, m, n)


def _stabilize(keys_at, what: str, m_cap: int) -> int:
    seen: set = set()
    quiet = 0
    for m in range(1, m_cap + 1):
        before = len(seen)
        seen |= keys_at(m)
        if seen and len(seen) == before:
            quiet += 1
            if quiet >= _QUIET_STEPS:
                return len(seen)
        else:
            quiet = 0
    raise BudgetExceeded(f"{what} did not stabilize within m <= {m_cap}")


def count_subset_classes(k: int, n: int, m_cap: int = DEFAULT_M_CAP) -> int:
    """Number of shapes of n-subsets of leaves, stabilised over growing r_m(T_k)."""
    if k < 1 or n < 1:
        raise ValueError("k and n must be >= 1")
    return _stabilize(lambda m: _prefix_shapes(k, m, n), f"shapes of {n}-subsets in T_{k}", m_cap)


def count_block_classes(k: int, j: int, m_cap: int = DEFAULT_M_CAP) -> int:
    """Number of shapes of j-subsets confined to a single block of T_k."""
    if k < 1 or j < 1:
        raise ValueError("k and j must be >= 1")
    return _stabilize(lambda b: _block_inner(k, b - 1, j), f"one-block shapes of {j}-subsets in T_{k}", m_cap)


def iso_map(a: TkApprox, b: TkApprox) -> Dict[Node, Node]:
    """The position-preserving bijection between the leaves of a and b."""
    if a.k != b.k or len(a) != len(b):
        raise ShapeMismatch(f"approximations differ in level or length: {a.k}/{len(a)} vs {b.k}/{len(b)}")
    out: Dict[Node, Node] = {}
    for i, (x, y) in enumerate(zip(a.blocks, b.blocks)):
        if _shape(a.k, x) != _shape(b.k, y):
            raise ShapeMismatch(f"block {i} has a different structure")
        out.update(zip(x, y))
    return out


# --- approximations of members of R_k ----------------------------------------

def _copies(k: int, j: int, n: int) -> Iterator[Block]:
    """Subtrees of block n of T_k isomorphic to block j of T_k."""
    if k == 1:
        for idx in combinations(range(n + 1), j + 1):
            yield tuple((n, i) for i in idx)
        return
    for inner in _approxs(k - 1, j + 1, n + 1):
        yield tuple((n,) + leaf for blk in inner for leaf in blk)


def _approxs(k: int, m: int, top: int) -> Iterator[Tuple[Block, ...]]:
    """All members of AR_m for T_k whose block roots lie below ``top``."""

    def rec(prefix: Tuple[Block, ...], lo: int) -> Iterator[Tuple[Block, ...]]:
        if len(prefix) == m:
            yield prefix
            return
        for n in range(lo, top):
            for blk in _copies(k, len(prefix), n):
                yield from rec(prefix + (blk,), n + 1)

    yield from rec((), 0)


def is_block_copy(k: int, j: int, block: Sequence[Node]) -> bool:
    """Whether ``block`` is a subtree of some block of T_k isomorphic to block j."""
    block = sorted(tuple(x) for x in block)
    if not block or not all(is_leaf(k, x) for x in block) or len({x[0] for x in block}) != 1:
        return False
    if k == 1:
        return len(block) == j + 1
    return is_approx(k - 1, [x[1:] for x in block], j + 1)


def is_approx(k: int, leaves: Sequence[Node], m: int) -> bool:
    groups = _group(leaves)
    if len(groups) != m:
        return False
    return all(is_block_copy(k, j, g) for j, (_, g) in enumerate(groups))


class LaflammeModel(SpaceModel):
    """Approximations of members of R_k with block roots below ``bound``."""

    def __init__(self, space: SpaceId, bound: int = 0) -> None:
        super().__init__(space)
        self.k = space.param
        self.bound = bound or (5 if self.k == 1 else 4)

    def location(self, block: Block) -> int:
        return block[0][0]

    def is_valid(self, a: FiniteApprox) -> bool:
        return is_approx(self.k, [x for b in a.blocks for x in b], len(a)) and all(
            tuple(sorted(b)) == b for b in a.blocks
        )

    def approximations(self, depth: int) -> Iterator[FiniteApprox]:
        for m in range(depth + 1):
            for blocks in _approxs(self.k, m, self.bound):
                yield FiniteApprox(self.space, blocks)

    def below(self, b: FiniteApprox) -> Iterator[FiniteApprox]:
        # block j of a sits inside some block of b whose index is >= j
        def rec(prefix: Tuple[Block, ...], lo: int) -> Iterator[FiniteApprox]:
            yield FiniteApprox(self.space, prefix)
            j = len(prefix)
            for idx in range(lo, len(b.blocks)):
                host = set(b.blocks[idx])
                n = b.blocks[idx][0][0]
                for blk in _copies(self.k, j, n):
                    if host.issuperset(blk):
                        yield from rec(prefix + (blk,), idx + 1)

        yield from rec((), 0)

    def leq_fin(self, a: FiniteApprox, b: FiniteApprox) -> bool:
        if not self.is_valid(a):
            return False
        hosts = [set(x) for x in b.blocks]
        idx = 0
        for blk in a.blocks:
            while idx < len(hosts) and not hosts[idx].issuperset(blk):
                idx += 1
            if idx == len(hosts):
                return False
            idx += 1
        return True


register_model(Family.LAFLAMME)(LaflammeModel)
