"""Compositions, the partial-sum bijection, and Ramsey degree assembly.

The degree of a space whose members are independent sequences of blocks
is a sum over compositions ``j_1 + ... + j_q = n`` of products of the
per-block class counts ``k(j_i)``.  This module provides that combinator,
the closed forms known for the implemented spaces, and a cross-verifier
that runs every available method side by side.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import ElementOutOfRange, MethodUnavailable, MissingK, RamseyDegreesError
from .space_core import Family, SpaceId

Composition = Tuple[int, ...]


def psi(x: Sequence[int]) -> frozenset:
    """Partial sums minus one, all but the last: a subset of {0..n-2}."""
    out = []
    total = 0
    for part in x[:-1]:
        total += part
        out.append(total - 1)
    return frozenset(out)


def psi_inv(n: int, m: Iterable[int]) -> Composition:
    cuts = sorted(set(m))
    for c in cuts:
        if not 0 <= c <= n - 2:
            raise ElementOutOfRange(f"{c} is outside 0..{n - 2}")
    parts = []
    prev = -1
    for c in cuts:
        parts.append(c - prev)
        prev = c
    parts.append(n - 1 - prev)
    return tuple(parts)


def compositions(n: int) -> List[Composition]:
    """All compositions of n, ordered by the colex order of their psi-images.

    Colex order on subsets of {0..n-2} is the numeric order of their
    bitmasks, so the i-th composition is psi_inv of the bits of i.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    out = []
    for mask in range(1 << (n - 1)):
        out.append(psi_inv(n, [b for b in range(n - 1) if mask >> b & 1]))
    return out


@dataclass(frozen=True)
class KFunction:
    """Tabulated per-block class counts k(1), ..., k(n_max)."""

    table: Tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "table", tuple(int(v) for v in self.table))
        if any(v < 1 for v in self.table):
            raise ValueError(f"class counts must be >= 1: {self.table}")

    @classmethod
    def constant(cls, value: int, n_max: int) -> "KFunction":
        return cls((value,) * n_max)

    @classmethod
    def from_mapping(cls, values: Mapping[int, int]) -> "KFunction":
        n_max = max(values) if values else 0
        missing = [j for j in range(1, n_max + 1) if j not in values]
        if missing:
            raise MissingK(f"k undefined at {missing}")
        return cls(tuple(values[j] for j in range(1, n_max + 1)))

    @property
    def n_max(self) -> int:
        return len(self.table)

    def __call__(self, j: int) -> int:
        if not 1 <= j <= len(self.table):
            raise MissingK(f"k undefined at {j}")
        return self.table[j - 1]


def degree_from_k(kf: Union[KFunction, Mapping[int, int]], n: int) -> int:
    """Sum over compositions of n of the product of k at each part."""
    if not isinstance(kf, KFunction):
        kf = KFunction.from_mapping(kf)
    if n < 1:
        raise ValueError("n must be >= 1")
    if kf.n_max < n:
        raise MissingK(f"k undefined at {kf.n_max + 1}")
    total = 0
    for comp in compositions(n):
        prod = 1
        for part in comp:
            prod *= kf(part)
        total += prod
    return total


def laflamme_recursion(k: int, n: int) -> int:
    """Degree of the level-k Laflamme space, built up from level 1.

    Level 1 has one class per block for every size; level k+1 uses the
    level-k degrees as its per-block counts.
    """
    if k < 1 or n < 1:
        raise ValueError("k and n must be >= 1")
    kf = KFunction.constant(1, n)
    for _ in range(k - 1):
        kf = KFunction(tuple(degree_from_k(kf, j) for j in range(1, n + 1)))
    return degree_from_k(kf, n)


def closed_form(space: SpaceId, n: int) -> Optional[int]:
    """Known closed form, or None where none is established."""
    if n < 1:
        return None
    fam, p = space.family, space.param
    if fam is Family.LAFLAMME:
        return (p + 1) ** (n - 1)
    if fam in (Family.HYPERCUBE, Family.CLIQUEFREE, Family.ELLENTUCK_HD) and n == 1:
        return 1
    if n != 2:
        return None
    if fam is Family.HYPERCUBE:
        return 1 + sum(3**i for i in range(p))
    if fam is Family.CLIQUEFREE:
        return 3
    if fam is Family.ELLENTUCK_HD:
        return sum(3**i for i in range(p))
    return None


METHODS = ("bruteforce", "combinator", "closed")

Method = Callable[[int], Optional[int]]


@dataclass
class DegreeRow:
    n: int
    method: str
    value: Optional[int]
    error: Optional[str] = None

    def to_json(self) -> dict:
        out = {"n": self.n, "method": self.method, "value": self.value}
        if self.error is not None:
            out["error"] = self.error
        return out


@dataclass
class DegreeTable:
    space: SpaceId
    rows: List[DegreeRow] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        by_n: Dict[int, set] = {}
        for r in self.rows:
            if r.value is not None:
                by_n.setdefault(r.n, set()).add(r.value)
        return all(len(v) == 1 for v in by_n.values())

    def values(self, n: int) -> Dict[str, int]:
        return {r.method: r.value for r in self.rows if r.n == n and r.value is not None}

    def to_json(self) -> dict:
        rows = sorted(self.rows, key=lambda r: (r.n, METHODS.index(r.method) if r.method in METHODS else 99, r.method))
        return {
            "space": self.space.family.value,
            "param": self.space.param,
            "rows": [r.to_json() for r in rows],
            "pass": self.passed,
        }


def default_methods(space: SpaceId, budget: Optional[int] = None) -> Dict[str, Method]:
    """The degree routes available for ``space``; each maps n to a value or None."""
    from . import ellentuck_hd, fraisse_blocks, laflamme_trees

    fam, p = space.family, space.param
    methods: Dict[str, Method] = {"closed": lambda n: closed_form(space, n)}
    if fam is Family.LAFLAMME:
        cap = budget or laflamme_trees.DEFAULT_M_CAP

        def brute(n: int) -> int:
            return laflamme_trees.count_subset_classes(p, n, m_cap=cap)

        def comb(n: int) -> int:
            kf = KFunction(tuple(laflamme_trees.count_block_classes(p, j, m_cap=cap) for j in range(1, n + 1)))
            return degree_from_k(kf, n)

        methods["bruteforce"] = brute
        methods["combinator"] = comb
    elif fam in (Family.HYPERCUBE, Family.CLIQUEFREE):

        def brute(n: int) -> Optional[int]:
            if n > 2:
                return None
            return fraisse_blocks.count_approx_classes(space, n)

        def comb(n: int) -> Optional[int]:
            if n > 2:
                return None
            table = {1: 1, 2: fraisse_blocks.count_pair_classes(space)}
            return degree_from_k(KFunction.from_mapping({j: table[j] for j in range(1, n + 1)}), n)

        methods["bruteforce"] = brute
        methods["combinator"] = comb
    elif fam is Family.ELLENTUCK_HD:

        def brute(n: int) -> Optional[int]:
            if n == 1:
                return 1
            if n == 2:
                kw = {"max_leaves": budget} if budget else {}
                return ellentuck_hd.count_pair_classes(p, **kw)[0]
            return None

        methods["bruteforce"] = brute
    return methods


def cross_verify(
    space: SpaceId,
    n_max: int,
    methods: Optional[Mapping[str, Method]] = None,
    budget: Optional[int] = None,
) -> DegreeTable:
    """Run every available method for n = 1..n_max and record agreement."""
    if methods is None:
        methods = default_methods(space, budget)
    if len(methods) < 2:
        raise MethodUnavailable(f"{space} has fewer than two degree methods")
    table = DegreeTable(space)
    for n in range(1, n_max + 1):
        for name in sorted(methods, key=lambda m: (METHODS.index(m) if m in METHODS else 99, m)):
            try:
                value = methods[name](n)
            except RamseyDegreesError as exc:
                table.rows.append(DegreeRow(n, name, None, f"{type(exc).__name__}: {exc}"))
                continue
            if value is None:
                table.rows.append(DegreeRow(n, name, None, "MethodUnavailable"))
            else:
                table.rows.append(DegreeRow(n, name, int(value)))
    return table
