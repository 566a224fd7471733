"""High-dimensional Ellentuck spaces E_k: witnesses, pair patterns, projections.

A member of E_k is the leaf set of a map from omega^{<=k} to itself that
preserves ``prec`` and proper initial segments.  Pairs of leaves are
classified by the full {<, =, >} matrix between their entries; counting
the classes realized inside a member of the dense set D_k gives the pair
degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterator, List, Sequence, Tuple, Union

from .errors import ArityError, BudgetExceeded, DegenerateInput
from .seq_orders import NondecSeq, prec_key, rank_full, unrank_full
from .space_core import Family, FiniteApprox, SpaceId, SpaceModel, register_model

Leaf = Tuple[int, ...]
SeqLike = Union[NondecSeq, Sequence[int]]

DEFAULT_STEP = 20
DEFAULT_WINDOW = 2
DEFAULT_MAX_LEAVES = 400

_SYMBOL = {-1: "<", 0: "=", 1: ">"}


def _entries(s: SeqLike) -> Leaf:
    return s.entries if isinstance(s, NondecSeq) else tuple(int(x) for x in s)


@dataclass(frozen=True)
class EkApprox:
    """prec-sorted leaf images of the first ``len(leaves)`` length-k sequences."""

    k: int
    leaves: Tuple[NondecSeq, ...]

    def __post_init__(self) -> None:
        leaves = tuple(x if isinstance(x, NondecSeq) else NondecSeq(tuple(x), self.k) for x in self.leaves)
        object.__setattr__(self, "leaves", leaves)
        for x in leaves:
            if len(x) != self.k:
                raise ArityError(f"leaf {x.entries} does not have length {self.k}")
        keys = [prec_key(x.entries) for x in leaves]
        if any(a >= b for a, b in zip(keys, keys[1:])):
            raise ValueError("leaves must be strictly prec-increasing")

    def __len__(self) -> int:
        return len(self.leaves)

    @property
    def tuples(self) -> List[Leaf]:
        return [x.entries for x in self.leaves]


@dataclass(frozen=True)
class PairPattern:
    """rel[i][j] compares s_i with t_j, where t is the prec-smaller sequence."""

    k: int
    rel: Tuple[Tuple[str, ...], ...]

    def __str__(self) -> str:
        return "|".join("".join(row) for row in self.rel)


def canonical_dk_member(k: int, num_leaves: int) -> EkApprox:
    """Finite approximation of a member of D_k built by fresh labels.

    Walk the tree of initial segments of the first ``num_leaves`` length-k
    sequences in prec order and give each node the next unused integer.  A
    leaf's image is its path of labels.  Labels of distinct nodes differ,
    so two images agree at position i exactly when the preimages share
    their first i+1 entries.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    if num_leaves < 0:
        raise ValueError("num_leaves must be >= 0")
    domain = [unrank_full(k, i).entries for i in range(num_leaves)]
    nodes = sorted({u[:l] for u in domain for l in range(1, k + 1)}, key=prec_key)
    label = {node: i for i, node in enumerate(nodes)}
    leaves = tuple(NondecSeq(tuple(label[u[:l]] for l in range(1, k + 1)), k) for u in domain)
    return EkApprox(k, leaves)


def _strict(s: Leaf) -> bool:
    return all(a < b for a, b in zip(s, s[1:]))


def pair_pattern(s: SeqLike, t: SeqLike) -> PairPattern:
    a, b = _entries(s), _entries(t)
    if len(a) != len(b):
        raise DegenerateInput("sequences of different length")
    if not _strict(a) or not _strict(b):
        raise DegenerateInput(f"sequences must be strictly increasing: {a}, {b}")
    if a == b:
        raise DegenerateInput(f"a pair needs two distinct sequences: {a}")
    big, small = (a, b) if prec_key(b) < prec_key(a) else (b, a)
    rel = tuple(tuple(_SYMBOL[(x > y) - (x < y)] for y in small) for x in big)
    return PairPattern(len(a), rel)


def count_pair_classes(
    k: int,
    step: int = DEFAULT_STEP,
    window: int = DEFAULT_WINDOW,
    max_leaves: int = DEFAULT_MAX_LEAVES,
) -> Tuple[int, List[PairPattern]]:
    """Count pair patterns realized in growing canonical D_k members.

    Grows the witness by ``step`` leaves at a time and stops once
    ``window`` consecutive growth steps add no new pattern.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    seen: Dict[Tuple, PairPattern] = {}
    done = 0
    quiet = 0
    n = step
    while True:
        if n > max_leaves:
            raise BudgetExceeded(f"pair patterns for k={k} did not stabilize within {max_leaves} leaves")
        leaves = canonical_dk_member(k, n).tuples
        before = len(seen)
        for j in range(done, n):
            for i in range(j):
                p = pair_pattern(leaves[i], leaves[j])
                seen.setdefault(p.rel, p)
        done = n
        if len(seen) == before and before > 0:
            quiet += 1
            if quiet >= window:
                break
        else:
            quiet = 0
        n += step
    patterns = sorted(seen.values(), key=str)
    return len(patterns), patterns


def project(a: EkApprox, l: int) -> EkApprox:
    """Length-l prefixes of the leaves, deduplicated and prec-sorted."""
    if not 1 <= l < a.k:
        raise ArityError(f"projection length must be in 1..{a.k - 1}, got {l}")
    prefixes = sorted({x.entries[:l] for x in a.leaves}, key=prec_key)
    return EkApprox(l, tuple(NondecSeq(p, l) for p in prefixes))


def is_tree_image(k: int, leaves: Sequence[Leaf]) -> bool:
    """Whether u_i -> leaves[i] extends to a prec- and prefix-preserving map
    on the initial segments of u_0..u_{n-1}."""
    images: Dict[Leaf, Leaf] = {}
    for i, x in enumerate(leaves):
        if len(x) != k or any(p > q for p, q in zip(x, x[1:])):
            return False
        u = unrank_full(k, i).entries
        for l in range(1, k + 1):
            prev = images.setdefault(u[:l], x[:l])
            if prev != x[:l]:
                return False
    order = sorted(images, key=prec_key)
    keys = [prec_key(images[node]) for node in order]
    return all(p < q for p, q in zip(keys, keys[1:]))


class EllentuckModel(SpaceModel):
    """Approximations with entries below ``bound``; blocks are leaf tuples."""

    def __init__(self, space: SpaceId, bound: int = 0) -> None:
        super().__init__(space)
        self.k = space.param
        self.bound = bound or {2: 5, 3: 4}.get(self.k, 3)

    def location(self, block: Leaf) -> int:
        return rank_full(self.k, NondecSeq(block, self.k))

    def is_valid(self, a: FiniteApprox) -> bool:
        return is_tree_image(self.k, list(a.blocks))

    def approximations(self, depth: int) -> Iterator[FiniteApprox]:
        k = self.k
        cands = sorted(
            {tuple(x) for x in _nondec(k, self.bound)},
            key=prec_key,
        )

        def rec(prefix: Tuple[Leaf, ...], start: int) -> Iterator[FiniteApprox]:
            yield FiniteApprox(self.space, prefix)
            if len(prefix) == depth:
                return
            for idx in range(start, len(cands)):
                ext = prefix + (cands[idx],)
                if is_tree_image(k, ext):
                    yield from rec(ext, idx + 1)

        yield from rec((), 0)

    def below(self, b: FiniteApprox) -> Iterator[FiniteApprox]:
        leaves = b.blocks
        for r in range(len(leaves) + 1):
            for sub in combinations(leaves, r):
                if is_tree_image(self.k, sub):
                    yield FiniteApprox(self.space, sub)

    def leq_fin(self, a: FiniteApprox, b: FiniteApprox) -> bool:
        return set(a.blocks) <= set(b.blocks) and self.is_valid(a)


def _nondec(k: int, bound: int) -> Iterator[Leaf]:
    def rec(prefix: Leaf) -> Iterator[Leaf]:
        if len(prefix) == k:
            yield prefix
            return
        lo = prefix[-1] if prefix else 0
        for v in range(lo, bound):
            yield from rec(prefix + (v,))

    yield from rec(())


register_model(Family.ELLENTUCK_HD)(EllentuckModel)
