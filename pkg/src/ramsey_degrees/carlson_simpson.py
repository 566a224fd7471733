"""Finite equivalence relations, rigid surjections and the coarsening order.

A partition of {0..N-1} is stored as its restricted-growth string g: g(0)
= 0 and each g(i) is at most one more than every earlier value.  That
string is also the canonical rigid surjection of the partition, so the
two encodings differ only in how they are validated and read.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Any, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .errors import DomainMismatch, NoMonochromaticSet, NotRigid, TooFewClasses
from .space_core import Family, FiniteApprox, SpaceId, SpaceModel, register_model


def _is_rgs(g: Sequence[int]) -> bool:
    top = -1
    for v in g:
        if v < 0 or v > top + 1:
            return False
        top = max(top, v)
    return True


@dataclass(frozen=True)
class RigidSurjection:
    """An onto map {0..N-1} -> {0..C-1} whose fibre minima increase with the value."""

    values: Tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def classes(self) -> int:
        return max(self.values) + 1 if self.values else 0

    def is_rigid(self) -> bool:
        return _is_rgs(self.values)

    def __call__(self, i: int) -> int:
        return self.values[i]


@dataclass(frozen=True)
class FinPartition:
    """A partition of {0..N-1} given by its restricted-growth string."""

    rgs: Tuple[int, ...]

    def __post_init__(self) -> None:
        rgs = tuple(int(v) for v in self.rgs)
        object.__setattr__(self, "rgs", rgs)
        if not _is_rgs(rgs):
            raise ValueError(f"not a restricted-growth string: {rgs}")

    @classmethod
    def from_classes(cls, n: int, classes: Iterable[Iterable[int]]) -> "FinPartition":
        label: Dict[int, int] = {}
        blocks = sorted((sorted(set(c)) for c in classes), key=lambda c: c[0] if c else -1)
        for idx, c in enumerate(blocks):
            for x in c:
                if x in label or not 0 <= x < n:
                    raise ValueError(f"classes do not partition {{0..{n - 1}}}")
                label[x] = idx
        if len(label) != n:
            raise ValueError(f"classes do not cover {{0..{n - 1}}}")
        return cls(tuple(label[i] for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.rgs)

    @property
    def num_classes(self) -> int:
        return max(self.rgs) + 1 if self.rgs else 0

    def classes(self) -> List[Tuple[int, ...]]:
        out: List[List[int]] = [[] for _ in range(self.num_classes)]
        for i, v in enumerate(self.rgs):
            out[v].append(i)
        return [tuple(c) for c in out]

    def minima(self) -> Tuple[int, ...]:
        """p(E): the least element of each class, increasing."""
        seen = set()
        out = []
        for i, v in enumerate(self.rgs):
            if v not in seen:
                seen.add(v)
                out.append(i)
        return tuple(out)

    def to_json(self) -> List[int]:
        return list(self.rgs)


def to_surjection(e: FinPartition) -> RigidSurjection:
    return RigidSurjection(e.rgs)


def from_surjection(h: RigidSurjection | Sequence[int]) -> FinPartition:
    values = h.values if isinstance(h, RigidSurjection) else tuple(h)
    if not _is_rgs(values):
        raise NotRigid(f"fibre minima are not increasing: {tuple(values)}")
    return FinPartition(values)


def _values(x: Any) -> Tuple[int, ...]:
    if isinstance(x, RigidSurjection):
        return x.values
    if isinstance(x, FinPartition):
        return x.rgs
    return tuple(x)


def is_coarser(g: Any, h: Any) -> bool:
    """Whether E_g is coarser than E_h: h(n) = h(m) implies g(n) = g(m)."""
    gv, hv = _values(g), _values(h)
    if len(gv) != len(hv):
        raise DomainMismatch(f"domains differ: {len(gv)} vs {len(hv)}")
    image: Dict[int, int] = {}
    for a, b in zip(hv, gv):
        if image.setdefault(a, b) != b:
            return False
    return True


def restricted_growth_strings(n: int, max_classes: Optional[int] = None) -> Iterator[Tuple[int, ...]]:
    """All restricted-growth strings of length n, lexicographically."""

    def rec(prefix: Tuple[int, ...], top: int) -> Iterator[Tuple[int, ...]]:
        if len(prefix) == n:
            yield prefix
            return
        limit = top + 1 if max_classes is None else min(top + 1, max_classes - 1)
        for v in range(limit + 1):
            yield from rec(prefix + (v,), max(top, v))

    if n == 0:
        yield ()
        return
    yield from rec((0,), 0)


def factors_through(g: Any, h: Any) -> bool:
    """Whether g = f o h for some rigid surjection f, by trying every f."""
    gv, hv = _values(g), _values(h)
    if len(gv) != len(hv):
        raise DomainMismatch(f"domains differ: {len(gv)} vs {len(hv)}")
    c = max(hv) + 1 if hv else 0
    return any(tuple(f[v] for v in hv) == gv for f in restricted_growth_strings(c))


def approx(e: FinPartition, n: int) -> FinPartition:
    """r_n(E): E restricted to the points below the n-th class minimum."""
    if n < 0:
        raise ValueError("n must be >= 0")
    mins = e.minima()
    if len(mins) < n + 1:
        raise TooFewClasses(f"p_{n} is undefined for a partition with {len(mins)} classes")
    return FinPartition(e.rgs[: mins[n]])


@dataclass(frozen=True)
class PairColoring:
    """A 2-coloring of pairs {i, j} of 0..size-1; bit number r is the color of the r-th pair
    in ``itertools.combinations`` order."""

    size: int
    bits: int

    def __post_init__(self) -> None:
        if self.size < 0:
            raise ValueError("size must be >= 0")
        if self.bits < 0 or self.bits >> (self.size * (self.size - 1) // 2):
            raise ValueError("bits exceed the number of pairs")

    def __call__(self, i: int, j: int) -> int:
        if i > j:
            i, j = j, i
        if not 0 <= i < j < self.size:
            raise ValueError(f"({i}, {j}) is not a pair of 0..{self.size - 1}")
        # rank of (i, j) among pairs in combinations order
        r = i * self.size - i * (i + 1) // 2 + (j - i - 1)
        return self.bits >> r & 1

    @classmethod
    def from_function(cls, size: int, color) -> "PairColoring":
        bits = 0
        for r, (i, j) in enumerate(combinations(range(size), 2)):
            if color(i, j):
                bits |= 1 << r
        return cls(size, bits)

    def to_json(self) -> Dict[str, Any]:
        return {"size": self.size, "bits": hex(self.bits)}

    @classmethod
    def from_json(cls, obj: Dict[str, Any]) -> "PairColoring":
        bits = obj["bits"]
        return cls(int(obj["size"]), int(bits, 16) if isinstance(bits, str) else int(bits))


def pentagon_coloring() -> PairColoring:
    """The 2-coloring of K5 with no monochromatic triangle: the 5-cycle against its complement."""
    return PairColoring.from_function(5, lambda i, j: (j - i) % 5 in (1, 4))


def find_monochromatic(c: PairColoring, target: int) -> Tuple[int, ...]:
    """The first monochromatic index set of size >= target, largest first then lex."""
    for size in range(c.size, target - 1, -1):
        for sub in combinations(range(c.size), size):
            if len({c(i, j) for i, j in combinations(sub, 2)}) <= 1:
                return sub
    raise NoMonochromaticSet(f"no monochromatic set of size {target} among {c.size} points")


def mono_coarsening(e: FinPartition, c: PairColoring, target: int) -> FinPartition:
    """Coarsen E so that the selected class minima form a monochromatic set.

    Class minima of E outside the selected set M are merged into class 0, and
    each minimum in M opens a new class.  The minima of the result are M
    together with 0.
    """
    if target < 2:
        raise ValueError("target must be >= 2")
    mins = e.minima()
    if c.size != len(mins):
        raise ValueError(f"coloring has {c.size} points but E has {len(mins)} class minima")
    chosen = {mins[i] for i in find_monochromatic(c, target)}
    h: List[int] = []
    first: Dict[int, int] = {}
    for i, v in enumerate(e.rgs):
        if v in first:
            h.append(h[first[v]])
            continue
        first[v] = i
        if i == 0:
            h.append(0)
        elif i in chosen:
            h.append(max(h) + 1)
        else:
            h.append(0)
    return FinPartition(tuple(h))


def mono_witness(e: FinPartition, c: PairColoring, target: int) -> Tuple[int, ...]:
    """The class minima of E (as positions) that mono_coarsening keeps apart."""
    mins = e.minima()
    return tuple(mins[i] for i in find_monochromatic(c, target))


# --- audit model -------------------------------------------------------------
# Block i of an approximation is the segment of the restricted-growth string
# from the i-th class minimum up to the next one.

def blocks_of(e: FinPartition) -> Tuple[Tuple[int, Tuple[int, ...]], ...]:
    mins = e.minima() + (e.n,)
    return tuple((mins[i], e.rgs[mins[i] : mins[i + 1]]) for i in range(len(mins) - 1))


def from_blocks(blocks: Sequence[Tuple[int, Sequence[int]]]) -> FinPartition:
    return FinPartition(tuple(v for _, seg in blocks for v in seg))


class CarlsonSimpsonModel(SpaceModel):
    """Restricted-growth strings up to ``length``; a <=_fin b iff same domain and coarser."""

    def __init__(self, space: SpaceId, length: int = 7) -> None:
        super().__init__(space)
        self.length = length

    def location(self, block: Tuple[int, Tuple[int, ...]]) -> int:
        return block[0]

    def is_valid(self, a: FiniteApprox) -> bool:
        pos = 0
        for i, (loc, seg) in enumerate(a.blocks):
            if loc != pos or not seg or seg[0] != i or any(v > i for v in seg):
                return False
            pos += len(seg)
        try:
            from_blocks(a.blocks)
        except ValueError:
            return False
        return True

    def approximations(self, depth: int) -> Iterator[FiniteApprox]:
        for n in range(self.length + 1):
            for g in restricted_growth_strings(n, depth):
                yield FiniteApprox(self.space, blocks_of(FinPartition(g)))

    def below(self, b: FiniteApprox) -> Iterator[FiniteApprox]:
        e = from_blocks(b.blocks)
        for f in restricted_growth_strings(e.num_classes):
            yield FiniteApprox(self.space, blocks_of(FinPartition(tuple(f[v] for v in e.rgs))))

    def leq_fin(self, a: FiniteApprox, b: FiniteApprox) -> bool:
        ga, gb = from_blocks(a.blocks), from_blocks(b.blocks)
        return ga.n == gb.n and is_coarser(ga, gb)


register_model(Family.CARLSON_SIMPSON)(CarlsonSimpsonModel)
