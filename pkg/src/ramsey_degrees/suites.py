"""Bundled verification suites: one check per acceptance criterion."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Callable, Dict, List, Optional, Tuple

from . import carlson_simpson as cs
from . import ellentuck_hd, fin_blocks, fraisse_blocks, laflamme_trees
from .degree_calc import compositions, cross_verify, degree_from_k, psi, psi_inv
from .errors import NoMonochromaticSet
from .space_core import Family, FiniteApprox, SpaceId, SpaceModel, audit_axioms, audit_model, restrict


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    budget_s: float
    seconds: float = 0.0
    details: List[str] = field(default_factory=list)

    @property
    def within_budget(self) -> bool:
        return self.seconds < self.budget_s

    @property
    def ok(self) -> bool:
        return self.passed and self.within_budget

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = "" if self.within_budget else f" over budget {self.budget_s:g}s"
        note = f" ({'; '.join(self.details)})" if self.details and not self.passed else ""
        return f"[{status}] criterion {self.number}: {self.name} in {self.seconds:.2f}s{extra}{note}"

    def to_json(self) -> Dict[str, Any]:
        # wall time is deliberately left out so reports are byte-stable
        return {"criterion": self.number, "name": self.name, "pass": self.passed, "details": self.details}


def crit_laflamme() -> Tuple[bool, List[str]]:
    bad = []
    for k in (1, 2, 3):
        for n in (1, 2, 3, 4):
            got = laflamme_trees.count_subset_classes(k, n)
            if got != (k + 1) ** (n - 1):
                bad.append(f"k={k} n={n}: {got} != {(k + 1) ** (n - 1)}")
    return not bad, bad


def crit_ellentuck() -> Tuple[bool, List[str]]:
    bad = []
    for k, want in ((2, 4), (3, 13), (4, 40)):
        got = ellentuck_hd.count_pair_classes(k)[0]
        if got != want:
            bad.append(f"k={k}: {got} != {want}")
    return not bad, bad


def crit_fraisse() -> Tuple[bool, List[str]]:
    bad = []
    for n, pairs, degree in ((2, 4, 5), (3, 13, 14), (4, 40, 41)):
        sp = SpaceId(Family.HYPERCUBE, n)
        got = fraisse_blocks.count_pair_classes(sp)
        if got != pairs or got != (3**n - 1) // 2:
            bad.append(f"H^{n} pairs: {got} != {pairs}")
        deg = degree_from_k({1: 1, 2: got}, 2)
        if deg != degree:
            bad.append(f"H^{n} degree: {deg} != {degree}")
    for k in (3, 4, 5):
        sp = SpaceId(Family.CLIQUEFREE, k)
        got = fraisse_blocks.count_pair_classes(sp)
        deg = degree_from_k({1: 1, 2: got}, 2)
        if (got, deg) != (2, 3):
            bad.append(f"clique-free k={k}: pairs {got}, degree {deg}")
    return not bad, bad


def crit_compositions() -> Tuple[bool, List[str]]:
    bad = []
    for n in range(1, 17):
        if len(compositions(n)) != 2 ** (n - 1):
            bad.append(f"|S_{n}| wrong")
    for n in range(1, 13):
        for mask in range(1 << max(n - 1, 0)):
            m = frozenset(b for b in range(n - 1) if mask >> b & 1)
            x = psi_inv(n, m)
            if sum(x) != n or psi(x) != m or psi_inv(n, psi(x)) != x:
                bad.append(f"psi round trip fails at n={n}, M={sorted(m)}")
                break
    return not bad, bad


def crit_cross_verify() -> Tuple[bool, List[str]]:
    bad = []
    cases = [(SpaceId(Family.LAFLAMME, k), 4) for k in (1, 2, 3)]
    cases += [(SpaceId(Family.HYPERCUBE, n), 2) for n in (2, 3, 4)]
    cases += [(SpaceId(Family.CLIQUEFREE, 3), 2)]
    # the E_k spaces have no combinator route, so three-way agreement does not apply
    for space, n_max in cases:
        table = cross_verify(space, n_max)
        for n in range(1, n_max + 1):
            if len(table.values(n)) != 3:
                bad.append(f"{space} n={n}: not all methods produced a value")
        if not table.passed:
            bad.append(f"{space}: methods disagree")
    return not bad, bad


# exhaustive windows per ceiling for the FIN equivalence check
FIN_WINDOWS = {1: 8, 2: 6, 3: 5}
FIN_RANDOM_SAMPLES = 300


def _fin_agrees(g: fin_blocks.BlockSeq, fs) -> Optional[str]:
    k = g.k
    members = fin_blocks.gen_semigroup(g, k) if len(g) else frozenset()
    for f in fs:
        single = fin_blocks.BlockSeq(k, (f,))
        if fin_blocks.is_block_subseq(single, g) != (f in members):
            return f"G={g.to_json()} f={f.to_json()}"
    return None


def _random_block_seq(rng: random.Random, k: int, width: int, max_len: int) -> fin_blocks.BlockSeq:
    cuts = sorted(rng.sample(range(width + 1), 2 * rng.randint(1, max_len)))
    funcs = []
    for lo, hi in zip(cuts[::2], cuts[1::2]):
        vals = [rng.randint(0, k) for _ in range(lo, hi)]
        vals[rng.randrange(len(vals))] = k
        funcs.append(fin_blocks.FinFunc(k, tuple((lo + i, v) for i, v in enumerate(vals) if v)))
    return fin_blocks.BlockSeq(k, tuple(funcs))


def _submasks(mask: int):
    sub = mask
    while sub:
        yield sub
        sub = (sub - 1) & mask


def crit_fin(seed: int = 0) -> Tuple[bool, List[str]]:
    bad = []
    for k, width in FIN_WINDOWS.items():
        for g in fin_blocks.all_block_seqs(k, width, 5):
            used = [p for f in g for p in f.support]
            err = _fin_agrees(g, fin_blocks.all_fin_funcs(k, used))
            if err:
                bad.append(f"exhaustive k={k}: {err}")
                break
    rng = random.Random(seed)
    for k in (1, 2, 3):
        for _ in range(FIN_RANDOM_SAMPLES):
            g = _random_block_seq(rng, k, 15, 5)
            used = [p for f in g for p in f.support]
            probes = list(fin_blocks.gen_semigroup(g, k))
            for _ in range(50):
                vals = [rng.randint(0, k) for _ in used]
                vals[rng.randrange(len(vals))] = k
                probes.append(fin_blocks.FinFunc(k, tuple((p, v) for p, v in zip(used, vals) if v)))
            err = _fin_agrees(g, probes)
            if err:
                bad.append(f"random k={k}: {err}")
                break
    pts = range(11)
    for k in (1, 2, 3):
        seqs = {}
        for mask in range(1 << 11):
            members = [i for i in pts if mask >> i & 1]
            if len(members) >= 2:
                seqs[mask] = fin_blocks.from_set(members, k)
        failed = next(
            (
                (a, b)
                for b in seqs
                for a in _submasks(b)
                if a in seqs and not fin_blocks.is_block_subseq(seqs[a], seqs[b])
            ),
            None,
        )
        if failed:
            bad.append(f"from_set monotonicity fails: A={failed[0]:#b} B={failed[1]:#b} k={k}")
    return not bad, bad


def crit_carlson_simpson() -> Tuple[bool, List[str]]:
    bad = []
    count = 0
    for g in cs.restricted_growth_strings(8):
        e = cs.FinPartition(g)
        count += 1
        if cs.from_surjection(cs.to_surjection(e)) != e:
            bad.append(f"round trip fails on {g}")
            break
    if count != 4140:
        bad.append(f"expected 4140 partitions of 8, got {count}")
    for n in range(1, 7):
        strings = list(cs.restricted_growth_strings(n))
        for g in strings:
            for h in strings:
                if cs.is_coarser(g, h) != cs.factors_through(g, h):
                    bad.append(f"characterizations differ on {g}, {h}")
                    break
    e = cs.FinPartition(tuple(range(6)))
    for bits in range(1 << 15):
        c = cs.PairColoring(6, bits)
        try:
            f = cs.mono_coarsening(e, c, 3)
        except NoMonochromaticSet:
            bad.append(f"no coarsening for coloring {hex(bits)}")
            break
        kept = cs.mono_witness(e, c, 3)
        if not cs.is_coarser(f, e) or len(kept) < 3 or len({c(i, j) for i, j in combinations(kept, 2)}) != 1:
            bad.append(f"bad coarsening for coloring {hex(bits)}")
            break
        if set(f.minima()) - {0} != set(kept) - {0}:
            bad.append(f"minima of the coarsening are not the selected set for {hex(bits)}")
            break
    try:
        cs.mono_coarsening(cs.FinPartition(tuple(range(5))), cs.pentagon_coloring(), 3)
        bad.append("pentagon coloring unexpectedly produced a coarsening")
    except NoMonochromaticSet:
        pass
    return not bad, bad


AUDIT_SPACES = (
    SpaceId(Family.ELLENTUCK_HD, 2),
    SpaceId(Family.LAFLAMME, 1),
    SpaceId(Family.HYPERCUBE, 2),
    SpaceId(Family.CLIQUEFREE, 3),
    SpaceId(Family.FIN, 2),
    SpaceId(Family.CARLSON_SIMPSON),
)


class CorruptedModel(SpaceModel):
    """Negative control: restriction drops the first block instead of keeping a prefix."""

    def __init__(self, inner: SpaceModel) -> None:
        super().__init__(inner.space)
        self.inner = inner

    def approximations(self, depth: int):
        return self.inner.approximations(depth)

    def below(self, b):
        return self.inner.below(b)

    def leq_fin(self, a, b):
        return self.inner.leq_fin(a, b)

    def is_valid(self, a):
        return self.inner.is_valid(a)

    def location(self, block):
        return self.inner.location(block)

    def restrict(self, a: FiniteApprox, j: int) -> FiniteApprox:
        if 0 < j < len(a):
            return FiniteApprox(a.space, a.blocks[1 : j + 1])
        return restrict(a, j)


def corrupted_fixture() -> SpaceModel:
    from .space_core import model_for

    return CorruptedModel(model_for(SpaceId(Family.LAFLAMME, 1)))


def crit_audit() -> Tuple[bool, List[str]]:
    bad = []
    for space in AUDIT_SPACES:
        report = audit_axioms(space, 4)
        for c in report.checks:
            if not c.passed:
                bad.append(f"{space} {c.axiom}: {c.witness}")
    report = audit_model(corrupted_fixture(), 4)
    a1c = [c for c in report.checks if c.axiom == "A.1(c)"]
    if not a1c or a1c[0].passed or not a1c[0].witness:
        bad.append("corrupted fixture was not caught with a witness")
    return not bad, bad


CRITERIA: List[Tuple[int, str, float, Callable[[], Tuple[bool, List[str]]]]] = [
    (1, "Laflamme degrees (k+1)^(n-1)", 10.0, crit_laflamme),
    (2, "E_k pair classes 4, 13, 40", 30.0, crit_ellentuck),
    (3, "hypercube and clique-free pair classes and degrees", 5.0, crit_fraisse),
    (4, "compositions and psi round trip", 5.0, crit_compositions),
    (5, "three-way degree agreement", 60.0, crit_cross_verify),
    (6, "FIN block subsequence equivalence and monotonicity", 60.0, crit_fin),
    (7, "Carlson-Simpson round trip, coarsening and colorings", 120.0, crit_carlson_simpson),
    (8, "axiom audit and corrupted fixture", 10.0, crit_audit),
]

SUITES = {"quick": (1, 2, 3, 4, 5), "full": tuple(c[0] for c in CRITERIA)}


def run_criterion(number: int) -> CriterionResult:
    for num, name, budget, fn in CRITERIA:
        if num == number:
            start = time.perf_counter()
            try:
                passed, details = fn()
            except Exception as exc:  # a crash is a failed criterion, reported by name
                passed, details = False, [f"{type(exc).__name__}: {exc}"]
            res = CriterionResult(num, name, passed, budget, details=details)
            res.seconds = time.perf_counter() - start
            return res
    raise KeyError(f"no criterion {number}")


def run_suite(name: str) -> List[CriterionResult]:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    return [run_criterion(n) for n in SUITES[name]]
