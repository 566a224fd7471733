"""Orders on non-decreasing integer sequences of length at most k.

Two orders live here: the usual lexicographic order and the well-order
``prec`` which compares last entries first and breaks ties
lexicographically.  ``prec`` has order type omega, so the length-k
sequences can be ranked and unranked.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterator, List, Sequence, Tuple

from .errors import ArityMismatch, EqualInputs


@dataclass(frozen=True, order=False)
class NondecSeq:
    """A non-decreasing sequence of naturals of length <= k.

    The arity bound ``k`` is part of the value, so sequences of different
    arity never compare.
    """

    entries: Tuple[int, ...]
    k: int

    def __post_init__(self) -> None:
        entries = tuple(int(x) for x in self.entries)
        object.__setattr__(self, "entries", entries)
        if self.k < 1:
            raise ValueError(f"arity bound must be >= 1, got {self.k}")
        if len(entries) > self.k:
            raise ValueError(f"sequence {entries} longer than arity bound {self.k}")
        if any(x < 0 for x in entries):
            raise ValueError(f"entries must be naturals: {entries}")
        if any(a > b for a, b in zip(entries, entries[1:])):
            raise ValueError(f"entries must be non-decreasing: {entries}")

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> int:
        return self.entries[i]

    @property
    def last(self) -> int:
        return self.entries[-1]

    def prefix(self, length: int) -> "NondecSeq":
        return NondecSeq(self.entries[:length], self.k)

    def is_proper_prefix_of(self, other: "NondecSeq") -> bool:
        return len(self) < len(other) and other.entries[: len(self)] == self.entries

    def to_json(self) -> List[int]:
        return list(self.entries)

    def __repr__(self) -> str:
        return f"NondecSeq({self.entries}, k={self.k})"


def _check_pair(s: NondecSeq, t: NondecSeq) -> None:
    if s.k != t.k:
        raise ArityMismatch(f"cannot compare arity {s.k} with arity {t.k}")
    if s.entries == t.entries:
        raise EqualInputs(f"strict order undefined on equal inputs {s.entries}")


def _lex_tuple_less(s: Sequence[int], t: Sequence[int]) -> bool:
    for a, b in zip(s, t):
        if a != b:
            return a < b
    return len(s) < len(t)


def lex_less(s: NondecSeq, t: NondecSeq) -> bool:
    """Strict lexicographic order; a proper initial segment is below."""
    _check_pair(s, t)
    return _lex_tuple_less(s.entries, t.entries)


def prec_key(s: Sequence[int]) -> Tuple[int, int, Tuple[int, ...]]:
    """Sort key realizing ``prec`` on raw tuples.

    The empty sequence sorts first.  Python's tuple comparison is
    lexicographic with prefixes first, which is exactly the tie-break.
    """
    s = tuple(s)
    if not s:
        return (0, 0, ())
    return (1, s[-1], s)


def prec_less(s: NondecSeq, t: NondecSeq) -> bool:
    _check_pair(s, t)
    if not s.entries:
        return True
    if not t.entries:
        return False
    if s.last != t.last:
        return s.last < t.last
    return _lex_tuple_less(s.entries, t.entries)


def _nondec_with_max(length: int, top: int) -> Iterator[Tuple[int, ...]]:
    """Non-decreasing tuples of ``length`` with entries <= top, in lex order."""
    if length == 0:
        yield ()
        return

    def rec(prefix: Tuple[int, ...], lo: int) -> Iterator[Tuple[int, ...]]:
        if len(prefix) == length:
            yield prefix
            return
        for v in range(lo, top + 1):
            yield from rec(prefix + (v,), v)

    yield from rec((), 0)


def _level(k: int, top: int) -> List[Tuple[int, ...]]:
    """All nonempty members of omega^{<=k} whose last entry is ``top``, prec-sorted."""
    out = []
    for length in range(1, k + 1):
        for head in _nondec_with_max(length - 1, top):
            out.append(head + (top,))
    out.sort()
    return out


def iter_prec(k: int) -> Iterator[NondecSeq]:
    """Enumerate omega^{<=k} in ``prec`` order (infinite generator)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    yield NondecSeq((), k)
    top = 0
    while True:
        for entries in _level(k, top):
            yield NondecSeq(entries, k)
        top += 1


def enumerate_upto(k: int, count: int) -> List[NondecSeq]:
    """The first ``count`` elements of (omega^{<=k}, prec), all lengths mixed."""
    if k < 1:
        raise ValueError("k must be >= 1")
    out: List[NondecSeq] = []
    if count <= 0:
        return out
    for s in iter_prec(k):
        out.append(s)
        if len(out) == count:
            break
    return out


@lru_cache(maxsize=None)
def _count_with_last(k: int, top: int) -> int:
    # length-k non-decreasing sequences ending in `top`: choose the other k-1
    # entries as a multiset from {0..top}
    return comb(top + k - 1, k - 1)


def _count_below(k: int, top: int) -> int:
    return comb(top + k - 1, k)


@lru_cache(maxsize=None)
def _count_bounded(length: int, top: int) -> int:
    # non-decreasing sequences of `length` with entries in {lo..top} depend
    # only on the width; callers pass the width as `top`
    if length == 0:
        return 1
    return comb(top + length, length)


def unrank_full(k: int, n: int) -> NondecSeq:
    """The n-th length-k sequence in ``prec`` order (0-based)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if n < 0:
        raise ValueError("rank must be >= 0")
    # sequences with last entry below `top` number C(top+k-1, k) (hockey stick)
    lo, hi = 0, 1
    while _count_below(k, hi) <= n:
        hi *= 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _count_below(k, mid) <= n:
            lo = mid
        else:
            hi = mid
    top = lo
    n -= _count_below(k, top)
    # lex-unrank the head: k-1 non-decreasing entries in {0..top}
    head: List[int] = []
    lo = 0
    for pos in range(k - 1):
        remaining = k - 2 - pos
        v = lo
        while True:
            block = _count_bounded(remaining, top - v)
            if n < block:
                break
            n -= block
            v += 1
        head.append(v)
        lo = v
    return NondecSeq(tuple(head) + (top,), k)


def rank_full(k: int, s: NondecSeq) -> int:
    """Inverse of :func:`unrank_full`."""
    if len(s) != k or s.k != k:
        raise ArityMismatch(f"expected a length-{k} sequence, got {s.entries}")
    top = s.last
    rank = _count_below(k, top)
    lo = 0
    for pos in range(k - 1):
        remaining = k - 2 - pos
        for v in range(lo, s[pos]):
            rank += _count_bounded(remaining, top - v)
        lo = s[pos]
    return rank
