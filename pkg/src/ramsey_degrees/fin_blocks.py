"""Block sequences in FIN_k.

A member of FIN_k is a finitely supported map from the naturals into
{0..k} that attains k.  The tetris operator T lowers every value by one
(stopping at zero).  A block sequence is a list of such maps with
separated supports, and F <= G means every member of F is a sum of
T-iterates of members of G.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations, product
from typing import Any, Dict, FrozenSet, Iterable, Iterator, Sequence, Set, Tuple

from .errors import CeilingUnderflow, OverlappingSupport, TooFewPoints
from .space_core import Family, FiniteApprox, SpaceId, SpaceModel, register_model

Entry = Tuple[int, int]


@dataclass(frozen=True)
class FinFunc:
    k: int
    entries: Tuple[Entry, ...]

    def __post_init__(self) -> None:
        entries = tuple((int(p), int(v)) for p, v in self.entries)
        object.__setattr__(self, "entries", entries)
        if self.k < 1:
            raise ValueError(f"ceiling must be >= 1, got {self.k}")
        if not entries:
            raise ValueError("a FIN_k function has nonempty support")
        pos = [p for p, _ in entries]
        if pos[0] < 0 or any(a >= b for a, b in zip(pos, pos[1:])):
            raise ValueError(f"positions must be naturals in increasing order: {pos}")
        vals = [v for _, v in entries]
        if any(not 1 <= v <= self.k for v in vals):
            raise ValueError(f"values must lie in 1..{self.k}: {vals}")
        if self.k not in vals:
            raise ValueError(f"the ceiling {self.k} must be attained")

    @classmethod
    def from_dict(cls, k: int, values: Dict[int, int]) -> "FinFunc":
        return cls(k, tuple(sorted((p, v) for p, v in values.items() if v)))

    @property
    def support(self) -> Tuple[int, ...]:
        return tuple(p for p, _ in self.entries)

    @property
    def min_supp(self) -> int:
        return self.entries[0][0]

    @property
    def max_supp(self) -> int:
        return self.entries[-1][0]

    def as_dict(self) -> Dict[int, int]:
        return dict(self.entries)

    def __call__(self, n: int) -> int:
        return self.as_dict().get(n, 0)

    def to_json(self) -> Dict[str, Any]:
        return {"k": self.k, "entries": [list(e) for e in self.entries]}

    @classmethod
    def from_json(cls, obj: Dict[str, Any]) -> "FinFunc":
        return cls(int(obj["k"]), tuple(tuple(e) for e in obj["entries"]))


@dataclass(frozen=True)
class BlockSeq:
    k: int
    funcs: Tuple[FinFunc, ...]

    def __post_init__(self) -> None:
        funcs = tuple(self.funcs)
        object.__setattr__(self, "funcs", funcs)
        for f in funcs:
            if f.k != self.k:
                raise ValueError(f"member with ceiling {f.k} in a FIN_{self.k} block sequence")
        for f, g in zip(funcs, funcs[1:]):
            if f.max_supp >= g.min_supp:
                raise ValueError(f"supports not separated: {f.support} then {g.support}")

    def __len__(self) -> int:
        return len(self.funcs)

    def __iter__(self) -> Iterator[FinFunc]:
        return iter(self.funcs)

    def restrict(self, l: int) -> "BlockSeq":
        return BlockSeq(self.k, self.funcs[:l])

    def to_json(self) -> Dict[str, Any]:
        return {"k": self.k, "funcs": [f.to_json() for f in self.funcs]}

    @classmethod
    def from_json(cls, obj: Any) -> "BlockSeq":
        if isinstance(obj, list):
            funcs = tuple(FinFunc.from_json(f) for f in obj)
            if not funcs:
                raise ValueError("an empty list does not determine the ceiling")
            return cls(funcs[0].k, funcs)
        return cls(int(obj["k"]), tuple(FinFunc.from_json(f) for f in obj["funcs"]))


def _tee_values(entries: Iterable[Entry], i: int) -> Tuple[Entry, ...]:
    return tuple((p, v - i) for p, v in entries if v > i)


def tee(f: FinFunc, i: int = 1) -> FinFunc:
    """i-fold tetris: lower every value by i, dropping what reaches zero."""
    if i < 0:
        raise ValueError("i must be >= 0")
    if i >= f.k:
        raise CeilingUnderflow(f"T^{i} of a FIN_{f.k} function leaves FIN")
    return FinFunc(f.k - i, _tee_values(f.entries, i))


def sum_disjoint(f: FinFunc, g: FinFunc) -> FinFunc:
    overlap = set(f.support) & set(g.support)
    if overlap:
        raise OverlappingSupport(f"supports share {sorted(overlap)}")
    return FinFunc(max(f.k, g.k), tuple(sorted(f.entries + g.entries)))


def _combos(funcs: Sequence[FinFunc], k: int) -> Iterator[Tuple[Entry, ...]]:
    # exponent k would contribute the zero function, the same as leaving f out
    for r in range(1, len(funcs) + 1):
        for sub in combinations(funcs, r):
            for exps in product(range(k), repeat=r):
                yield tuple(e for f, i in zip(sub, exps) for e in _tee_values(f.entries, i))


def gen_semigroup(g: BlockSeq, j: int) -> FrozenSet[FinFunc]:
    """[G]_j: sums of T-iterates of members of G whose maximum value is exactly j."""
    if not 1 <= j <= g.k:
        raise ValueError(f"j must lie in 1..{g.k}, got {j}")
    out: Set[FinFunc] = set()
    for entries in _combos(g.funcs, g.k):
        if entries and max(v for _, v in entries) == j:
            out.add(FinFunc(j, entries))
    return frozenset(out)


def decomposes(f: FinFunc, g: BlockSeq) -> bool:
    """Whether f is a sum of T-iterates of members of G, read off supports."""
    if f.k > g.k:
        return False
    vals = f.as_dict()
    covered = 0
    for gm in g.funcs:
        part = {p: vals[p] for p in gm.support if p in vals}
        if not part:
            continue
        covered += len(part)
        if not any(dict(_tee_values(gm.entries, i)) == part for i in range(g.k)):
            return False
    return covered == len(vals)


def is_block_subseq(f: BlockSeq, g: BlockSeq) -> bool:
    """F <= G: every member of F lies in [G]_k."""
    if f.k != g.k:
        raise ValueError(f"ceilings differ: {f.k} vs {g.k}")
    return all(decomposes(x, g) for x in f.funcs)


def leq_fin(f: BlockSeq, g: BlockSeq) -> bool:
    """F <= G, and F is not already below G without its last member."""
    if len(g) == 0:
        return len(f) == 0
    return is_block_subseq(f, g) and not is_block_subseq(f, g.restrict(len(g) - 1))


def from_set(a: Iterable[int], k: int) -> BlockSeq:
    """F_A: member n is constantly k on [a_n, a_{n+1})."""
    pts = sorted(set(int(x) for x in a))
    if len(pts) < 2:
        raise TooFewPoints(f"need at least two points, got {pts}")
    if k < 1:
        raise ValueError("k must be >= 1")
    funcs = tuple(FinFunc(k, tuple((p, k) for p in range(lo, hi))) for lo, hi in zip(pts, pts[1:]))
    return BlockSeq(k, funcs)


def projections(f: BlockSeq) -> Tuple[FrozenSet[int], FrozenSet[int]]:
    if len(f) == 0:
        raise ValueError("projections of an empty block sequence")
    return frozenset(x.min_supp for x in f.funcs), frozenset(x.max_supp for x in f.funcs)


def all_fin_funcs(k: int, positions: Sequence[int]) -> Iterator[FinFunc]:
    """Every FIN_k function supported inside ``positions``."""
    positions = sorted(positions)
    for vals in product(range(k + 1), repeat=len(positions)):
        if k in vals:
            yield FinFunc(k, tuple((p, v) for p, v in zip(positions, vals) if v))


def all_block_seqs(k: int, width: int, max_len: int) -> Iterator[BlockSeq]:
    """Every FIN_k block sequence of length <= max_len with supports in {0..width-1}."""

    def funcs_in(lo: int, hi: int) -> Iterator[FinFunc]:
        # functions whose support starts at lo and ends at hi
        if hi == lo:
            yield FinFunc(k, ((lo, k),))
            return
        for mid in product(range(k + 1), repeat=hi - lo - 1):
            for a, b in product(range(1, k + 1), repeat=2):
                vals = (a,) + mid + (b,)
                if k in vals:
                    yield FinFunc(k, tuple((lo + i, v) for i, v in enumerate(vals) if v))

    def rec(prefix: Tuple[FinFunc, ...], start: int) -> Iterator[BlockSeq]:
        yield BlockSeq(k, prefix)
        if len(prefix) == max_len:
            return
        for lo in range(start, width):
            for hi in range(lo, width):
                for f in funcs_in(lo, hi):
                    yield from rec(prefix + (f,), hi + 1)

    yield from rec((), 0)


class FinModel(SpaceModel):
    """Block sequences with supports in {0..width-1}; blocks are FinFunc values."""

    def __init__(self, space: SpaceId, width: int = 0) -> None:
        super().__init__(space)
        self.k = space.param
        self.width = width or {1: 6, 2: 5}.get(self.k, 4)

    def location(self, block: FinFunc) -> int:
        return block.min_supp

    def _seq(self, a: FiniteApprox) -> BlockSeq:
        return BlockSeq(self.k, a.blocks)

    def is_valid(self, a: FiniteApprox) -> bool:
        try:
            self._seq(a)
        except ValueError:
            return False
        return True

    def approximations(self, depth: int) -> Iterator[FiniteApprox]:
        for s in all_block_seqs(self.k, self.width, depth):
            yield FiniteApprox(self.space, s.funcs)

    def below(self, b: FiniteApprox) -> Iterator[FiniteApprox]:
        g = self._seq(b)
        if len(g) == 0:
            yield FiniteApprox(self.space, ())
            return
        pool = sorted(gen_semigroup(g, self.k), key=lambda f: (f.min_supp, f.entries))

        def rec(prefix: Tuple[FinFunc, ...]) -> Iterator[Tuple[FinFunc, ...]]:
            yield prefix
            last = prefix[-1].max_supp if prefix else -1
            for f in pool:
                if f.min_supp > last:
                    yield from rec(prefix + (f,))

        for funcs in rec(()):
            if leq_fin(BlockSeq(self.k, funcs), g):
                yield FiniteApprox(self.space, funcs)

    def leq_fin(self, a: FiniteApprox, b: FiniteApprox) -> bool:
        return self.is_valid(a) and leq_fin(self._seq(a), self._seq(b))


register_model(Family.FIN)(FinModel)


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True)
