"""Packing and exact cover over finite atom sets.

Both solvers take candidates as ``(id, atoms)`` or ``(id, atoms, weight)``
tuples and yield selections as tuples of candidate ids, in an order fixed by
the input order. They are generators, so callers can stop after the first
solution.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Iterator, Sequence

import numpy as np

from . import _kernels


@dataclass(frozen=True)
class Candidate:
    id: Hashable
    atoms: frozenset
    weight: int = 1


def _as_candidates(S) -> list[Candidate]:
    out = []
    seen = set()
    for item in S:
        if isinstance(item, Candidate):
            c = item
        elif len(item) == 2:
            c = Candidate(item[0], frozenset(item[1]))
        else:
            c = Candidate(item[0], frozenset(item[1]), int(item[2]))
        if c.id in seen:
            raise ValueError(f"duplicate candidate id {c.id!r}")
        seen.add(c.id)
        out.append(c)
    return out


def pack(X: Iterable[Hashable], S, N: int) -> Iterator[tuple]:
    """All sub-families of pairwise disjoint candidates inside ``X`` whose
    weights sum to exactly ``N``."""
    X = set(X)
    cands = [c for c in _as_candidates(S) if c.atoms <= X and c.weight >= 0]
    if N == 0:
        yield ()
        return
    cands.sort(key=lambda c: (c.weight, _order_key(c.id)))
    atom_ix = {a: i for i, a in enumerate(sorted(X, key=_order_key))}
    masks = []
    for c in cands:
        m = 0
        for a in c.atoms:
            m |= 1 << atom_ix[a]
        masks.append(m)
    weights = [c.weight for c in cands]
    suffix = [0] * (len(cands) + 1)
    for i in range(len(cands) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + weights[i]
    chosen: list[int] = []

    def rec(start, used, total):
        if total == N:
            yield tuple(cands[i].id for i in chosen)
            return
        if total + suffix[start] < N:
            return
        for i in range(start, len(cands)):
            if total + suffix[i] < N:
                return
            w = weights[i]
            if total + w > N:
                # candidates are sorted by weight, so all later ones overshoot too
                return
            if masks[i] & used:
                continue
            chosen.append(i)
            yield from rec(i + 1, used | masks[i], total + w)
            chosen.pop()

    yield from rec(0, 0, 0)


def _order_key(x):
    return (type(x).__name__, x) if not isinstance(x, tuple) else ("tuple", x)


def exact_cover(X: Iterable[Hashable], S, batch: int = 1024) -> Iterator[tuple]:
    """All sub-families of candidates covering every atom of ``X`` exactly once.

    Candidates with atoms outside ``X``, and empty candidates, are dropped
    first. Branching always
    takes the atom with fewest live candidates (ties: atom order in ``X``),
    trying candidates in input order, so the output order is fixed by the
    input. Solutions are produced lazily in batches.
    """
    X = list(dict.fromkeys(X))
    xset = set(X)
    cands = [c for c in _as_candidates(S) if c.atoms and c.atoms <= xset]
    if not X:
        yield ()
        return
    A = len(X)
    W = (A + 63) // 64
    col_ix = {a: i for i, a in enumerate(X)}
    C = len(cands)
    masks = np.zeros((max(C, 1), W), dtype=np.uint64)
    cols: list[list[int]] = [[] for _ in range(A)]
    for r, c in enumerate(cands):
        for a in c.atoms:
            j = col_ix[a]
            masks[r, j >> 6] |= np.uint64(1) << np.uint64(j & 63)
            cols[j].append(r)
    colptr = np.zeros(A + 1, dtype=np.int64)
    np.cumsum([len(c) for c in cols], out=colptr[1:])
    colidx = np.array([r for c in cols for r in c], dtype=np.int64)
    full = np.zeros(W, dtype=np.uint64)
    for j in range(A):
        full[j >> 6] |= np.uint64(1) << np.uint64(j & 63)
    st = np.array([0, 1, 0], dtype=np.int64)
    cov = np.zeros((A + 1, W), dtype=np.uint64)
    lstart = np.zeros(A + 1, dtype=np.int64)
    llen = np.zeros(A + 1, dtype=np.int64)
    llen[0] = C
    batom = np.zeros(A + 1, dtype=np.int64)
    bpos = np.zeros(A + 1, dtype=np.int64)
    chosen = np.zeros(A + 1, dtype=np.int64)
    buf = np.zeros(4 * C + 1024, dtype=np.int64)
    buf[:C] = np.arange(C)
    counts = np.zeros(A, dtype=np.int64)
    out = np.zeros((batch, A + 1), dtype=np.int64)
    while not st[2]:
        status, nsol = _kernels.exact_cover_kernel(masks, colptr, colidx, full, st, cov, lstart,
                                                   llen, batom, bpos, chosen, buf, counts, out)
        for row in out[:nsol].tolist():
            yield tuple(cands[r].id for r in row[1:row[0] + 1])
        if status == 2:
            bigger = np.zeros(2 * len(buf), dtype=np.int64)
            bigger[:len(buf)] = buf
            buf = bigger


def brute_force_covers(X: Iterable[Hashable], S, exact: bool = True, N: int | None = None) -> list[frozenset]:
    """Subset-enumeration oracle for small instances (tests only)."""
    X = set(X)
    cands = _as_candidates(S)
    out = []
    for mask in range(1 << len(cands)):
        picked = [c for i, c in enumerate(cands) if mask >> i & 1]
        union: set = set()
        ok = True
        for c in picked:
            if not c.atoms <= X or union & c.atoms:
                ok = False
                break
            union |= c.atoms
        if not ok:
            continue
        if exact and union != X:
            continue
        if N is not None and sum(c.weight for c in picked) != N:
            continue
        out.append(frozenset(c.id for c in picked))
    return out


def is_exact_cover(X: Iterable[Hashable], families: Sequence[Iterable[Hashable]]) -> bool:
    X = set(X)
    seen: set = set()
    for fam in families:
        fam = set(fam)
        if seen & fam or not fam <= X:
            return False
        seen |= fam
    return seen == X
