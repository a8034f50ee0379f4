"""Partitions of E^n into codes, and the symmetry-prescribed search for them.

A search fixes a seed code C and a subgroup H of Aut(C), collects the H-orbits
of codes that avoid C and are internally disjoint (FindOrbits), and combines
orbits into partitions of E^n: a packing of the orbits of the first code size
followed by an exact cover of what is left by orbits of the second size.
"""

from __future__ import annotations

import json
import logging
import math
import os
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import _kernels
from ._parallel import parallel_map, paused_gc
from .canon import (
    OrbitSet, Subgroup, automorphism_group, canonical_blocks, canonical_key,
    nonconjugate_subgroups, subgroup_generated,
)
from .classify import addable_words, near_masks
from .clique import build_compat_graph, cliques_of_size, iter_cliques, max_code
from .cover import exact_cover, pack
from .hamming import Code, enumerate_even, format_word, min_distance, parse_word
from .isometry import (
    Group, Isometry, apply_code, compose, format_isometry, generate_group,
    inverse, iter_group, parse_isometry,
)

log = logging.getLogger(__name__)

DISTANCE = 4


# -- partitions --------------------------------------------------------------

@dataclass(frozen=True)
class Partition:
    """A set of codes of length n, kept sorted by their word lists.

    Disjointness and admissibility are not enforced on construction so that
    corrupted inputs can be loaded and reported on; see ``check_partition``.
    """

    n: int
    codes: tuple[Code, ...]
    generators: tuple[Isometry, ...] = field(default=(), compare=False)
    aut_order: int | None = field(default=None, compare=False)

    @classmethod
    def of(cls, n: int, codes: Iterable[Code], generators: Iterable[Isometry] = (),
           aut_order: int | None = None) -> "Partition":
        codes = tuple(sorted(codes, key=lambda c: c.words))
        for c in codes:
            if c.n != n:
                raise ValueError(f"code of length {c.n} in a partition of length {n}")
        gens = tuple(generators)
        for g in gens:
            if g.n != n:
                raise ValueError("generator dimension mismatch")
        return cls(n, codes, gens, aut_order)

    def __len__(self) -> int:
        return len(self.codes)

    def __iter__(self) -> Iterator[Code]:
        return iter(self.codes)

    @cached_property
    def covered(self) -> frozenset[int]:
        return frozenset(w for c in self.codes for w in c.words)

    @property
    def covered_mask(self) -> int:
        m = 0
        for c in self.codes:
            m |= c.mask
        return m

    def distribution(self) -> "SizeDistribution":
        return SizeDistribution.of(len(c) for c in self.codes)

    def is_disjoint(self) -> bool:
        return sum(len(c) for c in self.codes) == len(self.covered)

    def is_admissible(self, d: int = DISTANCE) -> bool:
        return self.is_disjoint() and all(min_distance(c) >= d for c in self.codes)

    def key(self) -> tuple:
        return tuple(c.words for c in self.codes)


def apply_partition(g: Isometry, P: Partition) -> Partition:
    return Partition.of(P.n, (apply_code(g, c) for c in P.codes))


@dataclass(frozen=True)
class AdmissibilityReport:
    n: int
    code_count: int
    distribution: "SizeDistribution"
    overlaps: tuple[int, ...]          # words in more than one code
    missing: tuple[int, ...]           # words of the universe not covered
    extra: tuple[int, ...]             # covered words outside the universe
    violations: tuple[tuple[int, int, int, int], ...]  # (code index, u, v, distance)

    @property
    def ok(self) -> bool:
        return not (self.overlaps or self.missing or self.extra or self.violations)

    def lines(self) -> list[str]:
        n = self.n
        out = [f"codes: {self.code_count}", f"size distribution: {self.distribution}"]
        out.append(f"disjoint: {'yes' if not self.overlaps else 'no'}"
                   + ("" if not self.overlaps else f" ({len(self.overlaps)} shared words, e.g. {format_word(self.overlaps[0], n)})"))
        out.append(f"covers the space: {'yes' if not (self.missing or self.extra) else 'no'}"
                   + (f" ({len(self.missing)} missing)" if self.missing else "")
                   + (f" ({len(self.extra)} outside)" if self.extra else ""))
        if self.violations:
            i, u, v, dist = self.violations[0]
            out.append(f"minimum distance >= {DISTANCE}: no ({len(self.violations)} violating pairs,"
                       f" e.g. code {i}: {format_word(u, n)} {format_word(v, n)} at distance {dist})")
        else:
            out.append(f"minimum distance >= {DISTANCE}: yes")
        out.append(f"admissible: {'yes' if self.ok else 'no'}")
        return out


def check_partition(P: Partition, universe: Iterable[int] | None = None, d: int = DISTANCE) -> AdmissibilityReport:
    """Independent admissibility check: disjoint, covering, distance >= d."""
    universe = set(enumerate_even(P.n) if universe is None else universe)
    counts = Counter(w for c in P.codes for w in c.words)
    overlaps = tuple(sorted(w for w, k in counts.items() if k > 1))
    missing = tuple(sorted(universe - counts.keys()))
    extra = tuple(sorted(counts.keys() - universe))
    violations = []
    for i, c in enumerate(P.codes):
        ws = c.words
        for a in range(len(ws)):
            for b in range(a + 1, len(ws)):
                dist = (ws[a] ^ ws[b]).bit_count()
                if dist < d:
                    violations.append((i, ws[a], ws[b], dist))
    return AdmissibilityReport(P.n, len(P.codes), P.distribution(), overlaps, missing, extra, tuple(violations))


# -- size distributions --------------------------------------------------------

@dataclass(frozen=True, order=True)
class SizeDistribution:
    counts: tuple[tuple[int, int], ...]  # (size, count), sizes ascending

    @classmethod
    def of(cls, sizes: Iterable[int]) -> "SizeDistribution":
        return cls(tuple(sorted(Counter(sizes).items())))

    @property
    def total(self) -> int:
        return sum(s * k for s, k in self.counts)

    @property
    def parts(self) -> int:
        return sum(k for _, k in self.counts)

    def sizes(self) -> list[int]:
        return [s for s, k in self.counts for _ in range(k)]

    def count(self, size: int) -> int:
        return dict(self.counts).get(size, 0)

    def __str__(self) -> str:
        return " + ".join(str(s) if k == 1 else f"{k}x{s}" for s, k in self.counts)


def enumerate_distributions(space: int, parts: int, cap: int) -> list[SizeDistribution]:
    """All multisets of ``parts`` code sizes in [1, cap] summing to ``space``."""
    if parts * cap < space:
        return []
    out = []

    def rec(remaining, slots, hi, acc):
        if slots == 0:
            if remaining == 0:
                out.append(SizeDistribution.of(acc))
            return
        lo = max(1, remaining - (slots - 1) * hi)
        for s in range(min(hi, remaining - (slots - 1)), lo - 1, -1):
            rec(remaining - s, slots - 1, s, acc + [s])

    rec(space, parts, cap, [])
    return sorted(out)


# -- search cases --------------------------------------------------------------

@dataclass(frozen=True)
class SearchCase:
    """Search(M, N1, M1, N2, M2): seed size, then N1 codes of size M1 and N2
    of size M2 (N1 = 0 leaves M1 undefined)."""

    label: str
    M: int
    N1: int
    M1: int | None
    N2: int
    M2: int
    orders: tuple[int, ...]
    n: int = 9
    seeds: str = "all"  # "all", "hamming" or "non-hamming"

    def __post_init__(self):
        if not 0 <= self.N1 <= self.N2:
            raise ValueError("need 0 <= N1 <= N2")
        if (self.N1 == 0) != (self.M1 is None):
            raise ValueError("M1 is defined exactly when N1 > 0")
        if self.seeds not in ("all", "hamming", "non-hamming"):
            raise ValueError(f"bad seed selector {self.seeds!r}")

    @property
    def parts(self) -> int:
        return 1 + self.N1 + self.N2

    @property
    def distribution(self) -> SizeDistribution:
        sizes = [self.M] + [self.M2] * self.N2 + ([self.M1] * self.N1 if self.N1 else [])
        return SizeDistribution.of(sizes)

    def __str__(self) -> str:
        m1 = "-" if self.M1 is None else self.M1
        return f"({self.M}; {self.N1},{m1}; {self.N2},{self.M2})"


def search_cases() -> list[SearchCase]:
    """The six seeded cases for 13-code partitions of E^9 whose automorphism
    group has order at least 3 (subgroups of order 4 or an odd prime)."""
    return [
        SearchCase("16", 16, 0, None, 12, 20, (3, 4, 5, 7), seeds="non-hamming"),
        SearchCase("17", 17, 1, 19, 11, 20, (3, 4, 5, 7)),
        SearchCase("18x2", 20, 2, 18, 10, 20, (3, 4, 5, 7)),
        SearchCase("18", 18, 2, 19, 10, 20, (3, 4, 5, 7)),
        SearchCase("19-20", 20, 4, 19, 8, 20, (4,)),
        SearchCase("19-19", 19, 3, 19, 9, 20, (3, 5, 7)),
    ]


def hamming_case() -> SearchCase:
    """Partitions containing the doubly extended Hamming code with a
    nontrivial automorphism group: subgroups of order 2 or an odd prime."""
    return SearchCase("hamming", 16, 0, None, 12, 20, (2, 3, 5, 7), seeds="hamming")


def sandbox_case() -> SearchCase:
    """Desk-scale analogue: E^7 into 8 codes of size 8, order-2 subgroups."""
    return SearchCase("sandbox7", 8, 0, None, 7, 8, (2,), n=7)


# -- FindOrbits ----------------------------------------------------------------

def _elements(H) -> list[Isometry]:
    if isinstance(H, Subgroup):
        return list(H.elements.elements)
    if isinstance(H, Group):
        return list(H.elements)
    return list(H)


_CHUNK_ROWS = 1 << 16


def _group_tables(elems: Sequence[Isometry], n: int) -> np.ndarray:
    ident = [g for g in elems if g.is_identity()]
    if not ident:
        raise ValueError("subgroup element list lacks the identity")
    ordered = ident[:1] + [g for g in elems if not g.is_identity()]
    return np.array([[g(w) for w in range(1 << n)] for g in ordered], dtype=np.int64)


def _word_mask_rows(words: Iterable[int], n: int) -> np.ndarray:
    W = max(1, (1 << n) // 64)
    row = np.zeros(W, dtype=np.uint64)
    for w in words:
        row[w >> 6] |= np.uint64(1) << np.uint64(w & 63)
    return row


def _candidate_rows(C: Code, M: int, engine: str, reps: Sequence[Code] | None, d: int) -> Iterator[np.ndarray]:
    """Chunks of sorted word rows, each M-code avoiding C exactly once."""
    n = C.n
    if engine == "clique":
        universe = [w for w in enumerate_even(n) if w not in C.wordset]
        if len(universe) < M:
            return
        g = build_compat_graph(universe, d, n)
        lookup = np.array(universe, dtype=np.int64)
        buf: list[tuple[int, ...]] = []
        for ids in iter_cliques(g, M):
            buf.append(ids)
            if len(buf) == _CHUNK_ROWS:
                yield lookup[np.array(buf, dtype=np.int64)]
                buf = []
        if buf:
            yield lookup[np.array(buf, dtype=np.int64)]
    elif engine == "group":
        if reps is None:
            raise ValueError(f"the group engine needs the classified even ({n},{M},{d}) codes;"
                             " run `classify` first")
        avoid = np.array(C.words, dtype=np.int64)
        out = np.zeros((max(_CHUNK_ROWS, 2 << n), M), dtype=np.int64)
        total = math.factorial(n)
        for R in reps:
            if len(R) != M:
                raise ValueError("class representative of the wrong size")
            aut = automorphism_group(R).elements
            autp = np.array([g.perm for g in aut], dtype=np.int64)
            autt = np.array([g.trans for g in aut], dtype=np.int64)
            words = np.array(R.words, dtype=np.int64)
            k = 0
            while k < total:
                count, k = _kernels.translates_avoiding(words, avoid, n, autp, autt, k, total, out)
                if count:
                    yield out[:count].copy()
    else:
        raise ValueError(f"unknown engine {engine!r}")


def find_orbits(C: Code, N: int, M: int, H, engine: str = "group",
                reps: Sequence[Code] | None = None, d: int = DISTANCE) -> list[OrbitSet]:
    """All H-orbits of M-codes with at most N members, each member disjoint
    from C and from the other members, sorted by orbit key.

    ``engine="group"`` runs over the class representatives ``reps`` of even
    (n, M, d) codes and all of G_n, producing each image code once (coset
    representatives modulo the representative's automorphism group).
    ``engine="clique"`` enumerates the M-cliques of the compatibility graph on
    E^n minus C instead and needs no classification.
    """
    if N <= 0:
        return []
    n = C.n
    elems = _elements(H)
    tables = _group_tables(elems, n)
    avoid = _word_mask_rows(C.words, n)
    found: dict[tuple, OrbitSet] = {}
    with paused_gc():
        for rows in _candidate_rows(C, M, engine, reps, d):
            keep = np.zeros(len(rows), dtype=np.uint8)
            _kernels.orbit_filter(rows, tables, N, avoid, keep)
            for r in np.flatnonzero(keep):
                D = Code(n, tuple(int(w) for w in rows[r]))
                o = OrbitSet(frozenset(apply_code(h, D) for h in elems))
                found[o.key] = o
        return [found[k] for k in sorted(found)]


def _orbit_atoms(o: OrbitSet) -> frozenset[int]:
    return frozenset(w for c in o.codes for w in c.words)


def assemble(C: Code, N1: int, S1: Sequence[OrbitSet], S2: Sequence[OrbitSet],
             universe: Iterable[int] | None = None) -> Iterator[Partition]:
    """Partitions {C} + orbits: pack N1 codes from S1, exact-cover the rest
    with S2."""
    n = C.n
    X = [w for w in (enumerate_even(n) if universe is None else universe) if w not in C.wordset]
    with paused_gc():
        c1 = [(i, _orbit_atoms(o), len(o)) for i, o in enumerate(S1)]
        c2 = [(i, _orbit_atoms(o)) for i, o in enumerate(S2)]
    for sel1 in pack(X, c1, N1):
        used = set()
        for i in sel1:
            used |= c1[i][1]
        residual = [w for w in X if w not in used]
        for sel2 in exact_cover(residual, c2):
            codes = [C]
            for i in sel1:
                codes.extend(S1[i].codes)
            for i in sel2:
                codes.extend(S2[i].codes)
            yield Partition.of(n, codes)


# -- run_case ------------------------------------------------------------------

@dataclass(frozen=True)
class SearchRecord:
    case: str
    seed_index: int
    seed: Code
    subgroup_generators: tuple[Isometry, ...]
    subgroup_order: int
    conjugates: int       # X(C, H): subgroups of Aut(C) conjugate to H
    aut_order: int        # |Aut(C)|
    solutions: tuple[Partition, ...]

    @property
    def found(self) -> int:  # N(C, H)
        return len(self.solutions)

    def to_json(self) -> dict:
        n = self.seed.n
        return {
            "case": self.case,
            "seed_index": self.seed_index,
            "n": n,
            "seed": self.seed.to_strings(),
            "subgroup": [format_isometry(g) for g in self.subgroup_generators],
            "subgroup_order": self.subgroup_order,
            "conjugates": self.conjugates,
            "aut_order": self.aut_order,
            "solutions": [[c.to_strings() for c in P.codes] for P in self.solutions],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SearchRecord":
        for key in ("seed", "subgroup_order", "conjugates", "aut_order", "solutions"):
            if key not in data:
                raise ValueError(f"search record lacks field {key!r}")
        n = data["n"]
        sols = tuple(Partition.of(n, (Code.from_strings(ws) for ws in P)) for P in data["solutions"])
        return cls(data["case"], data["seed_index"], Code.from_strings(data["seed"]),
                   tuple(parse_isometry(t) for t in data["subgroup"]), data["subgroup_order"],
                   data["conjugates"], data["aut_order"], sols)


def _is_hamming_class(c: Code) -> bool:
    from .certificate import doubly_extended_hamming

    h = doubly_extended_hamming()
    return c.n == h.n and len(c) == len(h) and canonical_key(c) == canonical_key(h)


def seed_classes(case: SearchCase, classes: dict[int, Sequence[Code]] | Sequence[Code] | None) -> list[Code]:
    """The class representatives of the seed size that the case searches."""
    if case.seeds == "hamming":
        from .certificate import doubly_extended_hamming

        return [doubly_extended_hamming()]
    if isinstance(classes, dict) or classes is None:
        reps = orbit_code_reps(case, case.M, classes)
    else:
        reps = classes
    reps = list(reps)
    if case.seeds == "non-hamming":
        reps = [c for c in reps if not _is_hamming_class(c)]
    return reps


@dataclass(frozen=True)
class _Task:
    case: SearchCase
    seed_index: int
    seed: Code
    aut_order: int
    subgroup: Subgroup
    subgroup_index: int
    checkpoint: str | None
    engine: str
    reps1: tuple[Code, ...] | None = None
    reps2: tuple[Code, ...] | None = None

    @property
    def path(self) -> Path | None:
        if self.checkpoint is None:
            return None
        return Path(self.checkpoint) / f"case_{self.case.label}" / \
            f"seed{self.seed_index:06d}_H{self.subgroup_index:03d}.json"


def _run_task(task: _Task) -> SearchRecord:
    path = task.path
    if path is not None and path.exists():
        return SearchRecord.from_json(json.loads(path.read_text()))
    case, C, H = task.case, task.seed, task.subgroup
    S1 = find_orbits(C, case.N1, case.M1, H, task.engine, task.reps1) if case.N1 else []
    S2 = find_orbits(C, case.N2, case.M2, H, task.engine, task.reps2)
    sols = tuple(assemble(C, case.N1, S1, S2))
    rec = SearchRecord(case.label, task.seed_index, C, H.generators, H.order, H.conjugates,
                       task.aut_order, sols)
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(rec.to_json()) + "\n")
        os.replace(tmp, path)
    return rec


def orbit_code_reps(case: SearchCase, M: int, classes=None) -> tuple[Code, ...]:
    """Class representatives of even (n, M, d) codes for the group engine:
    taken from ``classes`` when present, else classified on the spot when
    that is quick (small n, or M within one of the maximum)."""
    if isinstance(classes, dict) and classes.get(M) is not None:
        return tuple(classes[M])
    if case.n <= 8 or M >= max_code(case.n, DISTANCE)[0] - 1:
        from .classify import classify_codes

        return tuple(classify_codes(case.n, M, DISTANCE, with_aut=False).representatives)
    raise ValueError(f"no classification of even ({case.n},{M},{DISTANCE}) codes supplied;"
                     " run `classify` first")


def case_tasks(case: SearchCase, classes=None, seed_class: int | None = None,
               orders: Iterable[int] | None = None, checkpoint: str | Path | None = None,
               engine: str = "group") -> list[_Task]:
    seeds = seed_classes(case, classes)
    orders = tuple(case.orders if orders is None else orders)
    reps1 = reps2 = None
    if engine == "group":
        reps1 = orbit_code_reps(case, case.M1, classes) if case.N1 else None
        reps2 = orbit_code_reps(case, case.M2, classes)
    tasks = []
    for ci, C in enumerate(seeds):
        if seed_class is not None and ci != seed_class:
            continue
        aut = automorphism_group(C)
        for hi, H in enumerate(nonconjugate_subgroups(aut, orders)):
            tasks.append(_Task(case, ci, C, aut.order, H, hi,
                               None if checkpoint is None else str(checkpoint), engine, reps1, reps2))
    return tasks


def run_case(case: SearchCase, classes=None, seed_class: int | None = None,
             orders: Iterable[int] | None = None, checkpoint: str | Path | None = None,
             jobs: int = 1, engine: str = "group") -> list[SearchRecord]:
    """Run Search(M, N1, M1, N2, M2) over every seed class and every
    nonconjugate subgroup of its automorphism group with the case's orders.

    With ``checkpoint`` each (seed, subgroup) result is written to its own
    file and reused on the next run, so interrupted runs resume.
    """
    tasks = case_tasks(case, classes, seed_class, orders, checkpoint, engine)
    return parallel_map(_run_task, tasks, jobs)


def load_records(checkpoint: str | Path, case: SearchCase | None = None) -> list[SearchRecord]:
    root = Path(checkpoint)
    dirs = [root / f"case_{case.label}"] if case else sorted(root.glob("case_*"))
    out = []
    for d in dirs:
        for f in sorted(d.glob("*.json")):
            out.append(SearchRecord.from_json(json.loads(f.read_text())))
    return out


# -- isomorph rejection and automorphisms ---------------------------------------

def partition_automorphisms(P: Partition) -> Group:
    """Aut of the code set: all g in G_n with gP = P."""
    _, _, gens = canonical_blocks(P.codes, P.n)
    return generate_group(gens, P.n)


def canonical_partition(P: Partition) -> Partition:
    """Canonical representative of P's class, carrying its automorphism
    generators and group order."""
    value, cert, gens = canonical_blocks(P.codes, P.n)
    cinv = inverse(cert)
    rep_gens = tuple(compose(compose(cert, g), cinv) for g in gens)
    order = generate_group(rep_gens, P.n).order
    return Partition.of(P.n, (Code(P.n, ws) for ws in value), rep_gens, order)


def reject_isomorphs(parts: Iterable[Partition]) -> list[tuple[Partition, int]]:
    """One canonical representative per G_n-class, with |Aut|, sorted."""
    reps: dict[tuple, Partition] = {}
    for P in parts:
        value, cert, gens = canonical_blocks(P.codes, P.n)
        if value in reps:
            continue
        cinv = inverse(cert)
        rep_gens = tuple(compose(compose(cert, g), cinv) for g in gens)
        order = generate_group(rep_gens, P.n).order
        reps[value] = Partition.of(P.n, (Code(P.n, ws) for ws in value), rep_gens, order)
    return [(reps[k], reps[k].aut_order) for k in sorted(reps)]


def fixed_code_property(P: Partition, H) -> bool:
    """For every size M whose code count N is coprime to |H| (H a p-group
    stabilizing P), some code of size M is fixed by all of H."""
    elems = _elements(H)
    order = len(elems)
    codes = set(P.codes)
    if any(apply_code(h, c) not in codes for h in elems for c in P.codes):
        raise ValueError("H does not stabilize the partition")
    for size, count in P.distribution().counts:
        if math.gcd(order, count) != 1:
            continue
        if not any(len(c) == size and all(apply_code(h, c) == c for h in elems) for c in P.codes):
            return False
    return True


# -- augmentation of non-maximal codes ------------------------------------------

def augment_nonmaximal(P: Partition, d: int = DISTANCE) -> list[Partition]:
    """Partitions reachable from P by repeatedly moving one word into a code
    that can take it without violating the distance, deduplicated up to
    isomorphism and excluding P's own class. A donor left empty disappears.

    Results are canonical representatives with their automorphism orders,
    sorted by canonical key.
    """
    start = canonical_partition(P)
    visited = {start.key()}
    frontier = [start]
    found: dict[tuple, Partition] = {}
    universe_words = sorted(P.covered)
    while frontier:
        Q = frontier.pop()
        owner = {w: i for i, c in enumerate(Q.codes) for w in c.words}
        for i, A in enumerate(Q.codes):
            for x in addable_words(A, d, universe_words):
                j = owner[x]
                codes = list(Q.codes)
                codes[i] = Code.of(Q.n, A.words + (x,))
                rest = tuple(w for w in Q.codes[j].words if w != x)
                if rest:
                    codes[j] = Code(Q.n, rest)
                else:
                    del codes[j]
                R = canonical_partition(Partition.of(Q.n, codes))
                k = R.key()
                if k in visited:
                    continue
                visited.add(k)
                found[k] = R
                frontier.append(R)
    return [found[k] for k in sorted(found)]


# -- unprescribed exhaustive coloring (small n) ---------------------------------

def exhaustive_color(n: int, k: int, first_only: bool = False, d: int = DISTANCE,
                     node_limit: int | None = None) -> list[Partition]:
    """All partitions of E^n into at most k codes of minimum distance d.

    Codes are chosen in order of their smallest word, so each partition is
    produced once; branches die as soon as the uncovered words exceed what
    the remaining colors can hold at the maximum code size.
    """
    words = enumerate_even(n)
    cap = max_code(n, d)[0]
    if k * cap < len(words):
        return []
    g = build_compat_graph(words, d, n)
    full = (1 << len(words)) - 1
    out: list[Partition] = []
    chosen: list[Code] = []
    nodes = 0

    def rec(uncovered: int) -> bool:
        nonlocal nodes
        nodes += 1
        if node_limit is not None and nodes > node_limit:
            raise RuntimeError(f"node limit {node_limit} exceeded")
        if not uncovered:
            out.append(Partition.of(n, chosen))
            return first_only
        left = k - len(chosen)
        r = uncovered.bit_count()
        if left * cap < r:
            return False
        low = uncovered & -uncovered
        v = low.bit_length() - 1
        lo = max(1, r - (left - 1) * cap)
        for size in range(min(cap, r), lo - 1, -1):
            for ids in iter_cliques(g, size, candidates=uncovered, fixed=(v,)):
                m = 0
                for i in ids:
                    m |= 1 << i
                chosen.append(Code.of(n, (words[i] for i in ids)))
                stop = rec(uncovered & ~m)
                chosen.pop()
                if stop:
                    return True
        return False

    rec(full)
    return out


# -- partition files -------------------------------------------------------------

def format_partition(P: Partition) -> str:
    lines = [f"n {P.n}"]
    if P.aut_order is not None:
        lines.append(f"aut_order {P.aut_order}")
    for g in P.generators:
        lines.append(f"generator {format_isometry(g)}")
    for c in P.codes:
        lines.append(f"code {len(c)}")
        lines.extend(format_word(w, P.n) for w in c.words)
    return "\n".join(lines) + "\n"


def parse_partition(text: str) -> Partition:
    n = None
    aut = None
    gens = []
    codes: list[list[str]] = []
    expected: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, _, rest = line.partition(" ")
        if head == "n":
            n = int(rest)
        elif head == "aut_order":
            aut = int(rest)
        elif head == "generator":
            gens.append(parse_isometry(rest))
        elif head == "code":
            codes.append([])
            expected.append(int(rest) if rest.strip() else -1)
        elif set(line) <= {"0", "1"}:
            if not codes:
                raise ValueError(f"line {lineno}: codeword before any 'code' header")
            if n is not None and len(line) != n:
                raise ValueError(f"line {lineno}: word length {len(line)} != n = {n}")
            codes[-1].append(line)
        else:
            raise ValueError(f"line {lineno}: unrecognized line {line!r}")
    if n is None:
        raise ValueError("partition file lacks the 'n' field")
    built = []
    for ws, size in zip(codes, expected):
        if size >= 0 and size != len(ws):
            raise ValueError(f"code declared with {size} words has {len(ws)}")
        if len(set(ws)) != len(ws):
            raise ValueError("repeated word inside one code")
        built.append(Code.of(n, (parse_word(w) for w in ws)))
    return Partition.of(n, built, gens, aut)


def read_partition(path: str | Path) -> Partition:
    return parse_partition(Path(path).read_text())


def write_partition(path: str | Path, P: Partition) -> None:
    Path(path).write_text(format_partition(P))
