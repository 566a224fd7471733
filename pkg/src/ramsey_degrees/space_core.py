"""Finite approximations shared by all spaces, plus the axiom audit.

A space member is an infinite sequence of blocks; its n-th approximation
is the tuple of its first n blocks.  Each space module registers a
:class:`SpaceModel` that can enumerate approximations up to a depth bound,
decide the finite order ``leq_fin`` and list everything below a given
approximation.  :func:`audit_axioms` is generic over that interface and
checks the finitely testable fragments of the space axioms.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, is_dataclass, asdict
from enum import Enum
from typing import Any, Callable, Dict, Iterable, Iterator, List, Optional, Tuple

from .errors import BudgetExceeded, IndexOutOfRange, UnsupportedSpace


class Family(str, Enum):
    ELLENTUCK_HD = "ellentuck_hd"
    LAFLAMME = "laflamme"
    HYPERCUBE = "hypercube"
    CLIQUEFREE = "cliquefree"
    FIN = "fin"
    CARLSON_SIMPSON = "carlson_simpson"


ALIASES = {
    "e": Family.ELLENTUCK_HD,
    "ellentuck": Family.ELLENTUCK_HD,
    "arrow": Family.CLIQUEFREE,
    "cs": Family.CARLSON_SIMPSON,
}

_MIN_PARAM = {
    Family.ELLENTUCK_HD: 2,
    Family.LAFLAMME: 1,
    Family.HYPERCUBE: 1,
    Family.CLIQUEFREE: 3,
    Family.FIN: 1,
}


@dataclass(frozen=True)
class SpaceId:
    family: Family
    param: int = 0

    def __post_init__(self) -> None:
        family = parse_family(self.family)
        object.__setattr__(self, "family", family)
        lo = _MIN_PARAM.get(family)
        if lo is not None and self.param < lo:
            raise ValueError(f"{family.value} needs param >= {lo}, got {self.param}")

    def __str__(self) -> str:
        if self.family is Family.CARLSON_SIMPSON:
            return self.family.value
        return f"{self.family.value}({self.param})"


def parse_family(name: Any) -> Family:
    if isinstance(name, Family):
        return name
    key = str(name).lower()
    if key in ALIASES:
        return ALIASES[key]
    try:
        return Family(key)
    except ValueError:
        raise UnsupportedSpace(f"unknown space family {name!r}") from None


@dataclass(frozen=True)
class FiniteApprox:
    """The first ``len(blocks)`` blocks of some member of ``space``."""

    space: SpaceId
    blocks: Tuple[Any, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "blocks", tuple(self.blocks))

    def __len__(self) -> int:
        return len(self.blocks)

    @property
    def length(self) -> int:
        return len(self.blocks)

    def to_json(self) -> Dict[str, Any]:
        return {
            "space": self.space.family.value,
            "param": self.space.param,
            "blocks": jsonable(self.blocks),
        }


def jsonable(obj: Any) -> Any:
    """Convert nested tuples, sets and dataclasses into JSON-ready values."""
    if is_dataclass(obj) and not isinstance(obj, type):
        return {k: jsonable(v) for k, v in asdict(obj).items()}
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, (list, tuple)):
        return [jsonable(x) for x in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted((jsonable(x) for x in obj), key=lambda v: json.dumps(v))
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    return obj


def restrict(a: FiniteApprox, j: int) -> FiniteApprox:
    """The first ``j`` blocks of ``a``."""
    if j < 0 or j > len(a):
        raise IndexOutOfRange(f"cannot restrict an approximation of length {len(a)} to {j}")
    return FiniteApprox(a.space, a.blocks[:j])


class SpaceModel:
    """Depth-bounded view of one space, as consumed by the audit.

    Subclasses implement :meth:`approximations`, :meth:`below`,
    :meth:`leq_fin` and :meth:`is_valid`.
    """

    def __init__(self, space: SpaceId) -> None:
        self.space = space

    def approximations(self, depth: int) -> Iterator[FiniteApprox]:
        raise NotImplementedError

    def below(self, b: FiniteApprox) -> Iterator[FiniteApprox]:
        """Every ``a`` with ``a <=_fin b``."""
        raise NotImplementedError

    def leq_fin(self, a: FiniteApprox, b: FiniteApprox) -> bool:
        raise NotImplementedError

    def is_valid(self, a: FiniteApprox) -> bool:
        raise NotImplementedError

    def location(self, block: Any) -> int:
        """Index of the block in the ambient maximal member."""
        return block[0]

    def restrict(self, a: FiniteApprox, j: int) -> FiniteApprox:
        return restrict(a, j)

    def empty(self) -> FiniteApprox:
        return FiniteApprox(self.space, ())


_MODELS: Dict[Family, Callable[[SpaceId], SpaceModel]] = {}


def register_model(family: Family) -> Callable[[Callable[[SpaceId], SpaceModel]], Callable[[SpaceId], SpaceModel]]:
    def deco(factory: Callable[[SpaceId], SpaceModel]) -> Callable[[SpaceId], SpaceModel]:
        _MODELS[family] = factory
        return factory

    return deco


def _load_builtin_models() -> None:
    # space modules register themselves on import
    from . import carlson_simpson, ellentuck_hd, fin_blocks, fraisse_blocks, laflamme_trees  # noqa: F401


def model_for(space: SpaceId) -> SpaceModel:
    _load_builtin_models()
    factory = _MODELS.get(space.family)
    if factory is None:
        raise UnsupportedSpace(f"no enumerator registered for {space}")
    return factory(space)


@dataclass
class AuditCheck:
    axiom: str
    passed: bool
    witness: Optional[str] = None

    def to_json(self) -> Dict[str, Any]:
        return {"axiom": self.axiom, "pass": self.passed, "witness": self.witness}


@dataclass
class AuditReport:
    space: SpaceId
    depth: int
    checks: List[AuditCheck] = field(default_factory=list)
    examined: int = 0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> Dict[str, Any]:
        return {
            "space": self.space.family.value,
            "param": self.space.param,
            "depth": self.depth,
            "checks": [c.to_json() for c in sorted(self.checks, key=lambda c: c.axiom)],
        }


def _witness(*parts: Any) -> str:
    return json.dumps(jsonable(parts), sort_keys=True)


def _check_a1a(model: SpaceModel, approxs: List[FiniteApprox]) -> AuditCheck:
    for a in approxs:
        r0 = model.restrict(a, 0)
        if len(r0) != 0 or not model.is_valid(r0):
            return AuditCheck("A.1(a)", False, _witness(a.to_json(), r0.to_json()))
    return AuditCheck("A.1(a)", True)


def _check_a1c(model: SpaceModel, approxs: List[FiniteApprox]) -> AuditCheck:
    for a in approxs:
        locs = [model.location(b) for b in a.blocks]
        if any(x >= y for x, y in zip(locs, locs[1:])):
            return AuditCheck("A.1(c)", False, _witness("locations not increasing", a.to_json()))
        full = model.restrict(a, len(a))
        if full != a:
            return AuditCheck("A.1(c)", False, _witness("full restriction differs", a.to_json(), full.to_json()))
        for j in range(len(a) + 1):
            r = model.restrict(a, j)
            if len(r) != j or r.blocks != a.blocks[:j] or not model.is_valid(r):
                return AuditCheck("A.1(c)", False, _witness("restriction is not a prefix", a.to_json(), j, r.to_json()))
            for i in range(j + 1):
                if model.restrict(r, i) != model.restrict(a, i):
                    return AuditCheck("A.1(c)", False, _witness("restriction not coherent", a.to_json(), j, i))
    return AuditCheck("A.1(c)", True)


def _check_a2a(model: SpaceModel, approxs: List[FiniteApprox], budget: int) -> AuditCheck:
    for b in approxs:
        seen = set()
        try:
            for a in model.below(b):
                if len(seen) >= budget:
                    raise BudgetExceeded(f"more than {budget} approximations below")
                seen.add(a)
        except BudgetExceeded as exc:
            return AuditCheck("A.2(a)", False, _witness(str(exc), b.to_json()))
        if b not in seen:
            return AuditCheck("A.2(a)", False, _witness("b is not below itself", b.to_json()))
        for a in sorted(seen, key=lambda x: _witness(x.to_json())):
            if not model.is_valid(a) or not model.leq_fin(a, b):
                return AuditCheck("A.2(a)", False, _witness("listed but not below", a.to_json(), b.to_json()))
    return AuditCheck("A.2(a)", True)


def audit_model(model: SpaceModel, depth: int = 4, budget: int = 200_000) -> AuditReport:
    """Run the axiom fragments against an explicit model (used for fixtures)."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    approxs = list(model.approximations(depth))
    report = AuditReport(model.space, depth, examined=len(approxs))
    report.checks = [
        _check_a1a(model, approxs),
        _check_a1c(model, approxs),
        _check_a2a(model, approxs, budget),
    ]
    report.checks.sort(key=lambda c: c.axiom)
    return report


def audit_axioms(space: SpaceId, depth: int = 4, budget: int = 200_000) -> AuditReport:
    """Check A.1(a), A.1(c) and A.2(a) over every approximation of length <= depth
    that the space's enumerator produces."""
    return audit_model(model_for(space), depth, budget)


def dedupe(items: Iterable[FiniteApprox]) -> Iterator[FiniteApprox]:
    seen = set()
    for a in items:
        if a not in seen:
            seen.add(a)
            yield a
