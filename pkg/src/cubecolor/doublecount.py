"""Consistency check of a seeded search by counting (partition, code,
subgroup) triples in two independent ways.

A triple (P, C, H) has C a code of P of the case's seed size (and seed
class), and H a subgroup of the case's orders with H <= Aut(P) and
H <= Aut(C). Counting per partition class gives
``sum N(P) |G_n| / |Aut P|``; counting per searched (C, H) pair gives
``sum N(C, H) X(C, H) |G_n| / |Aut C|``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .canon import all_subgroups
from .isometry import apply_code, group_order
from .search import (
    Partition, SearchCase, SearchRecord, _is_hamming_class, partition_automorphisms,
    reject_isomorphs,
)


@dataclass(frozen=True)
class CountingLedger:
    case: str
    by_partition: int
    by_seed: int
    partition_tallies: tuple[tuple[int, int], ...]   # (N(P), |Aut P|) per class
    seed_tallies: tuple[tuple[int, int, int], ...]   # (N(C,H), X(C,H), |Aut C|) per record

    @property
    def ok(self) -> bool:
        return self.by_partition == self.by_seed

    def lines(self) -> list[str]:
        return [
            f"case {self.case}",
            f"partition classes: {len(self.partition_tallies)}",
            f"seed records: {len(self.seed_tallies)}",
            f"count by partition: {self.by_partition}",
            f"count by seed: {self.by_seed}",
            "PASS" if self.ok else "FAIL",
        ]


def _seed_ok(case: SearchCase | None, code) -> bool:
    if case is None:
        return True
    if len(code) != case.M:
        return False
    if case.seeds == "hamming":
        return _is_hamming_class(code)
    if case.seeds == "non-hamming":
        return not _is_hamming_class(code)
    return True


def triples_of(P: Partition, case: SearchCase) -> int:
    """N(P): pairs (C, H) with C in P of the seed size and class and H a
    subgroup of Aut(P) of an admissible order fixing C."""
    aut = partition_automorphisms(P)
    seeds = [c for c in P.codes if _seed_ok(case, c)]
    if not seeds:
        return 0
    total = 0
    for H in all_subgroups(aut, case.orders):
        for c in seeds:
            if all(apply_code(h, c) == c for h in H.elements.elements):
                total += 1
    return total


def count_by_partition(reps: Sequence[tuple[Partition, int]], case: SearchCase | None = None,
                       n: int | None = None) -> int:
    """``sum N(P) |G_n| / |Aut P|`` over nonisomorphic partitions.

    Without a case every rep must already carry N(P) in place of the
    partition: pass ``(N, aut)`` pairs and ``n``.
    """
    total = 0
    for item, aut in reps:
        if isinstance(item, Partition):
            if case is None:
                raise ValueError("a search case is needed to count triples of a partition")
            N = triples_of(item, case)
            order = group_order(item.n)
        else:
            if n is None:
                raise ValueError("n is needed when passing precomputed N(P) values")
            N = int(item)
            order = group_order(n)
        if order % aut:
            raise ValueError(f"|Aut| = {aut} does not divide |G_n| = {order}")
        total += N * (order // aut)
    return total


def count_by_seed(records: Iterable[SearchRecord]) -> int:
    """``sum N(C, H) X(C, H) |G_n| / |Aut C|`` over searched pairs."""
    total = 0
    for rec in records:
        for name in ("found", "conjugates", "aut_order"):
            if getattr(rec, name, None) is None:
                raise ValueError(f"search record lacks {name}")
        order = group_order(rec.seed.n)
        if order % rec.aut_order:
            raise ValueError(f"|Aut C| = {rec.aut_order} does not divide |G_n|")
        total += rec.found * rec.conjugates * (order // rec.aut_order)
    return total


def double_count(case: SearchCase, records: Sequence[SearchRecord],
                 reps: Sequence[tuple[Partition, int]] | None = None) -> CountingLedger:
    """Both counts for one case. Partition classes default to the isomorph-
    rejected union of all solutions in ``records``."""
    if reps is None:
        reps = reject_isomorphs(P for rec in records for P in rec.solutions)
    ptallies = tuple((triples_of(P, case), aut) for P, aut in reps)
    by_partition = sum(N * (group_order(P.n) // aut) for (P, aut), (N, _) in zip(reps, ptallies))
    stallies = tuple((rec.found, rec.conjugates, rec.aut_order) for rec in records)
    return CountingLedger(case.label, by_partition, count_by_seed(records), ptallies, stallies)
