"""Extension of a partition of E^n into k codes to one of E^(n+1).

Every code of a partition of E^(n+1) splits by its first coordinate as
``C_i = 0 D_i + 1 E_i`` with D_i in E^n and E_i in O^n. Given the D_i, an
extension chooses sizes M_i (sum 2^(n-1), each at most the maximum code
size) and odd parts E_i of those sizes such that every C_i keeps minimum
distance 4 and the E_i partition O^n.

Per size tuple the odd parts are assembled by an exact cover over the labels
and O^n. To keep the cover small, the label with the largest pool of odd
words (the "deferred" label) does not get clique candidates: its words are
offered one at a time and a solution is accepted only if they form a code.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from ._parallel import parallel_map
from .clique import build_compat_graph, iter_cliques, max_clique, max_code
from .cover import exact_cover
from .hamming import Code, enumerate_odd, is_code_with_distance
from .search import DISTANCE, Partition, check_partition

log = logging.getLogger(__name__)

SizeTuple = tuple[int, ...]


@lru_cache(maxsize=None)
def code_size_cap(n: int, d: int = DISTANCE) -> int:
    """Largest size of an even (n, M, d) code, i.e. A(n, d) on E^n (equal
    to the largest odd code by a weight-one translation)."""
    return max_code(n, d)[0]


def enumerate_size_tuples(base: Partition, cap: int | None = None) -> list[SizeTuple]:
    """All ordered tuples (M_1..M_k), one entry per code of ``base``, with
    0 <= M_i <= cap and sum 2^(n-1), in lexicographic order."""
    k = len(base.codes)
    total = 1 << (base.n - 1)
    cap = code_size_cap(base.n) if cap is None else cap
    out: list[SizeTuple] = []

    def rec(i: int, remaining: int, acc: list[int]):
        if i == k - 1:
            if remaining <= cap:
                out.append(tuple(acc + [remaining]))
            return
        lo = max(0, remaining - cap * (k - 1 - i))
        for m in range(lo, min(cap, remaining) + 1):
            acc.append(m)
            rec(i + 1, remaining - m, acc)
            acc.pop()

    if k:
        rec(0, total, [])
    return out


def compatible_odd_words(D: Code, d: int = DISTANCE) -> list[int]:
    """Words of O^n at distance >= d - 1 from every word of D."""
    return [w for w in enumerate_odd(D.n) if all((w ^ u).bit_count() >= d - 1 for u in D.words)]


_candidate_cache: dict[tuple, tuple[Code, ...]] = {}


def candidate_codes(D: Code, M: int, d: int = DISTANCE) -> list[Code]:
    """All E in O^n with |E| = M such that 0D + 1E has minimum distance d.

    Results are cached per (D, M, d): tuples share most entries.
    """
    key = (D.n, D.words, M, d)
    hit = _candidate_cache.get(key)
    if hit is None:
        if M == 0:
            hit = (Code(D.n, ()),)
        else:
            pool = compatible_odd_words(D, d)
            if len(pool) < M:
                hit = ()
            else:
                g = build_compat_graph(pool, d, D.n)
                hit = tuple(Code.of(D.n, (pool[i] for i in ids)) for ids in iter_cliques(g, M))
        _candidate_cache[key] = hit
    return list(hit)


@lru_cache(maxsize=None)
def _pool_clique_number(n: int, words: tuple[int, ...], d: int) -> int:
    pool = compatible_odd_words(Code(n, words), d)
    return max_clique(build_compat_graph(pool, d, n), symmetry=False)[0] if pool else 0


def odd_part_bound(D: Code, d: int = DISTANCE) -> int:
    """The largest possible |E| for the code D (clique number of its pool)."""
    return _pool_clique_number(D.n, D.words, d)


def lift(base: Partition, odd_parts: Sequence[Code]) -> Partition:
    """The partition of E^(n+1) with codes 0 D_i + 1 E_i."""
    n = base.n
    top = 1 << n
    codes = [Code.of(n + 1, list(D.words) + [top | w for w in E.words])
             for D, E in zip(base.codes, odd_parts)]
    return Partition.of(n + 1, codes)


def split_partition(P: Partition) -> tuple[Partition, tuple[Code, ...]]:
    """Inverse of :func:`lift`: the even halves (as a partition of E^(n-1))
    and the odd halves, code by code."""
    m = P.n - 1
    top = 1 << m
    evens = [Code.of(m, (w for w in c.words if not w & top)) for c in P.codes]
    odds = tuple(Code.of(m, (w ^ top for w in c.words if w & top)) for c in P.codes)
    return Partition.of(m, evens), odds


@dataclass(frozen=True)
class TupleOutcome:
    sizes: SizeTuple
    status: str                      # "pruned", "none", "found"
    extensions: tuple[Partition, ...] = ()


@dataclass(frozen=True)
class ExtensionResult:
    base: Partition
    mode: str
    outcomes: tuple[TupleOutcome, ...] = field(repr=False)

    @property
    def extensions(self) -> tuple[Partition, ...]:
        return tuple(P for o in self.outcomes for P in o.extensions)

    @property
    def extendable(self) -> bool:
        return bool(self.extensions)

    @property
    def first(self) -> Partition | None:
        ext = self.extensions
        return ext[0] if ext else None

    def count(self, status: str) -> int:
        return sum(1 for o in self.outcomes if o.status == status)

    def lines(self) -> list[str]:
        return [
            f"size tuples: {len(self.outcomes)}",
            f"pruned (some size above its bound): {self.count('pruned')}",
            f"searched without extension: {self.count('none')}",
            f"with extension: {self.count('found')}",
            "extension found" if self.extendable else "no extension",
        ]


def _deferred_label(base: Partition, d: int) -> int:
    sizes = [len(compatible_odd_words(D, d)) for D in base.codes]
    return max(range(len(sizes)), key=lambda i: (sizes[i], -i))


def _solve_tuple(base: Partition, sizes: SizeTuple, first_only: bool, d: int,
                 defer: bool = True) -> TupleOutcome:
    k = len(base.codes)
    for D, M in zip(base.codes, sizes):
        if M > odd_part_bound(D, d):
            return TupleOutcome(sizes, "pruned")
    late = _deferred_label(base, d) if defer else None
    late_pool: list[int] = []
    if late is not None:
        late_pool = compatible_odd_words(base.codes[late], d)
        if sizes[late] == 0:
            late = None
    S: list[tuple] = []
    for i, (D, M) in enumerate(zip(base.codes, sizes)):
        if i == late:
            continue
        cands = candidate_codes(D, M, d)
        if not cands:
            return TupleOutcome(sizes, "pruned")
        S.extend((("code", i, j), {("label", i)} | set(E.words)) for j, E in enumerate(cands))
    if late is not None:
        S.extend((("word", w), {w}) for w in late_pool)
    X = [("label", i) for i in range(k) if i != late] + enumerate_odd(base.n)
    found = []
    for sol in exact_cover(X, S):
        parts: list[Code | None] = [None] * k
        rest = []
        for item in sol:
            if item[0] == "code":
                parts[item[1]] = _candidate_cache[(base.n, base.codes[item[1]].words, sizes[item[1]], d)][item[2]]
            else:
                rest.append(item[1])
        if late is not None:
            if len(rest) != sizes[late] or not is_code_with_distance(rest, d):
                continue
            parts[late] = Code.of(base.n, rest)
        found.append(lift(base, parts))
        if first_only:
            break
    return TupleOutcome(sizes, "found" if found else "none", tuple(found))


def _tuple_task(args) -> TupleOutcome:
    base, sizes, first_only, d, defer = args
    return _solve_tuple(base, sizes, first_only, d, defer)


def extend_partition(base: Partition, mode: str = "first", jobs: int = 1, d: int = DISTANCE,
                     defer: bool = True,
                     progress: Callable[[TupleOutcome], None] | None = None) -> ExtensionResult:
    """Decide whether ``base`` extends to a partition of E^(n+1).

    ``mode="first"`` stops after the first extension (tuples are processed
    in lexicographic order, in batches of ``jobs``); ``mode="all"`` lists
    every extension. A tuple is pruned when some M_i exceeds the clique
    number of code i's odd pool. ``defer=False`` gives every label clique
    candidates (practical only for small n).
    """
    if mode not in ("first", "all"):
        raise ValueError("mode must be 'first' or 'all'")
    report = check_partition(base, d=d)
    if not report.ok:
        raise ValueError("base partition is not admissible: " + "; ".join(report.lines()))
    tuples = enumerate_size_tuples(base)
    first_only = mode == "first"
    outcomes: list[TupleOutcome] = []
    step = max(1, jobs) if first_only else len(tuples) or 1
    for start in range(0, len(tuples), step):
        batch = [(base, t, first_only, d, defer) for t in tuples[start:start + step]]
        results = parallel_map(_tuple_task, batch, jobs)
        for o in results:
            outcomes.append(o)
            if progress is not None:
                progress(o)
        if first_only and any(o.status == "found" for o in results):
            break
    for o in outcomes:
        for P in o.extensions:
            if not check_partition(P, d=d).ok:
                raise AssertionError("assembled extension fails the admissibility check")
    return ExtensionResult(base, mode, tuple(outcomes))


def brute_force_candidates(D: Code, M: int, d: int = DISTANCE) -> list[Code]:
    """Oracle for :func:`candidate_codes`: filter all M-subsets of O^n."""
    n = D.n
    top = 1 << n
    out = []
    for E in itertools.combinations(enumerate_odd(n), M):
        words = list(D.words) + [top | w for w in E]
        if is_code_with_distance(words, d):
            out.append(Code.of(n, E))
    return out
