"""Compatibility graphs of words and clique search over them.

A clique in the distance->=d compatibility graph is a code with minimum
distance at least d, so maximum cliques give A(n, d) and clique enumeration
produces the raw material for classification and extension.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import _kernels
from .hamming import Code, enumerate_even

log = logging.getLogger(__name__)

_CHUNK = 4096


@dataclass(frozen=True, eq=False)
class CompatGraph:
    """Vertices are words; ``u ~ v`` iff their distance is at least ``d``."""

    n: int
    vertices: tuple[int, ...]
    d: int
    rows: tuple[int, ...] = field(repr=False)  # python-int bitsets over vertex indices

    @cached_property
    def index(self) -> dict[int, int]:
        return {w: i for i, w in enumerate(self.vertices)}

    @cached_property
    def matrix(self) -> np.ndarray:
        V = len(self.vertices)
        W = max(1, (V + 63) // 64)
        adj = np.zeros((V, W), dtype=np.uint64)
        for i, row in enumerate(self.rows):
            for x in range(W):
                adj[i, x] = (row >> (64 * x)) & 0xFFFFFFFFFFFFFFFF
        return adj

    def __len__(self) -> int:
        return len(self.vertices)

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def degree(self, i: int) -> int:
        return self.rows[i].bit_count()

    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def mask_of(self, words: Iterable[int]) -> int:
        idx = self.index
        m = 0
        for w in words:
            m |= 1 << idx[w]
        return m

    def words_of(self, mask: int) -> list[int]:
        out = []
        while mask:
            low = mask & -mask
            out.append(self.vertices[low.bit_length() - 1])
            mask ^= low
        return out

    def to_row(self, mask: int) -> np.ndarray:
        W = self.matrix.shape[1]
        row = np.zeros(W, dtype=np.uint64)
        for x in range(W):
            row[x] = (mask >> (64 * x)) & 0xFFFFFFFFFFFFFFFF
        return row


def build_compat_graph(words: Sequence[int], d: int, n: int | None = None) -> CompatGraph:
    words = tuple(words)
    if len(set(words)) != len(words):
        raise ValueError("vertex words must be distinct")
    if n is None:
        n = max((w.bit_length() for w in words), default=1) or 1
    rows = []
    for u in words:
        r = 0
        for j, v in enumerate(words):
            if (u ^ v).bit_count() >= d:
                r |= 1 << j
        rows.append(r)
    return CompatGraph(n, words, d, tuple(rows))


def _degeneracy_order(g: CompatGraph, mask: int) -> list[int]:
    """Smallest-last ordering of the vertices in ``mask``, reversed so that the
    densest core comes first."""
    rows = g.rows
    alive = mask
    deg = {}
    m = mask
    while m:
        low = m & -m
        i = low.bit_length() - 1
        deg[i] = (rows[i] & mask).bit_count()
        m ^= low
    out = []
    while deg:
        i = min(deg, key=lambda k: (deg[k], k))
        out.append(i)
        del deg[i]
        alive &= ~(1 << i)
        nb = rows[i] & alive
        while nb:
            low = nb & -nb
            deg[low.bit_length() - 1] -= 1
            nb ^= low
    out.reverse()
    return out


def _relabel(g: CompatGraph, order: list[int]) -> np.ndarray:
    V = len(order)
    W = max(1, (V + 63) // 64)
    pos = {v: k for k, v in enumerate(order)}
    adj = np.zeros((V, W), dtype=np.uint64)
    for k, v in enumerate(order):
        r = g.rows[v]
        while r:
            low = r & -r
            j = low.bit_length() - 1
            r ^= low
            if j in pos:
                t = pos[j]
                adj[k, t >> 6] |= np.uint64(1) << np.uint64(t & 63)
    return adj


def _max_clique_in(g: CompatGraph, mask: int, base: int, lower: int) -> tuple[int, list[int], int]:
    """Max clique inside vertex mask; returns (size incl. base, vertex ids, nodes)."""
    if not mask:
        return (base if base > lower else lower), [], 0
    order = _degeneracy_order(g, mask)
    adj = _relabel(g, order)
    P0 = np.zeros(adj.shape[1], dtype=np.uint64)
    for k in range(len(order)):
        P0[k >> 6] |= np.uint64(1) << np.uint64(k & 63)
    best, clique, nodes = _kernels.max_clique_kernel(adj, P0, base, lower)
    return int(best), [order[int(k)] for k in clique], int(nodes)


def _is_full_space(g: CompatGraph) -> str | None:
    n = g.n
    if n > 16:
        return None
    verts = set(g.vertices)
    if len(verts) == 1 << n and verts == set(range(1 << n)):
        return "all"
    if len(verts) == 1 << (n - 1) and verts == set(enumerate_even(n)):
        return "even"
    return None


def max_clique(g: CompatGraph, lower_bound: int = 0, symmetry: bool = True) -> tuple[int, Code]:
    """Size of a maximum clique and one witness.

    When the graph is the whole Hamming space (or its even half) the search
    exploits translations and coordinate permutations by orbital branching.
    ``lower_bound`` lets a caller who already knows a clique of that size
    skip its re-discovery; the witness is then only returned if larger.
    """
    if not g.vertices:
        return 0, Code(g.n, ())
    kind = _is_full_space(g) if symmetry else None
    if kind is not None:
        size, words = _max_code_orbital(g, kind, lower_bound)
    else:
        full = (1 << len(g.vertices)) - 1
        size, ids, _ = _max_clique_in(g, full, 0, lower_bound)
        words = [g.vertices[i] for i in ids]
    return size, Code.of(g.n, words)


def _max_code_orbital(g: CompatGraph, kind: str, lower: int) -> tuple[int, list[int]]:
    """Orbital branching for the Hamming-space graph.

    Every clique is a translate of one containing 0. The stabilizer of 0
    (coordinate permutations) is transitive on words of a given weight, so a
    clique with a second word of weight w may take ``1^w 0^(n-w)`` as that
    word once lighter words are excluded. Under the remaining S_w x S_(n-w),
    third words fall into orbits indexed by their weights in the two blocks;
    these are branched on in turn, excluding earlier orbits.
    """
    n, d = g.n, g.d
    idx = g.index
    best, witness = max(lower, 1), [0] if lower < 1 else []
    weights = sorted({w.bit_count() for w in g.vertices if w and w.bit_count() >= d})
    for w2 in weights:
        r2 = ((1 << w2) - 1) << (n - w2)
        if best < 2:
            best, witness = 2, [0, r2]
        cand = [x for x in g.vertices
                if x.bit_count() >= max(d, w2) and (x ^ r2).bit_count() >= d]
        orbits: dict[tuple[int, int], list[int]] = {}
        for x in cand:
            a = (x & r2).bit_count()
            orbits.setdefault((a, x.bit_count() - a), []).append(x)
        excluded = 0
        for a, b in sorted(orbits):
            r3 = (((1 << a) - 1) << (n - a)) | (((1 << b) - 1) << (n - w2 - b))
            if best < 3:
                best, witness = 3, [0, r2, r3]
            mask = 0
            for x in cand:
                if (x ^ r3).bit_count() >= d:
                    mask |= 1 << idx[x]
            mask &= ~excluded
            size, ids, nodes = _max_clique_in(g, mask, 3, best)
            log.debug("orbit w=%d (%d,%d): %d candidates, %d nodes", w2, a, b, mask.bit_count(), nodes)
            if size > best:
                best = size
                witness = [0, r2, r3] + [g.vertices[i] for i in ids]
            for x in orbits[(a, b)]:
                excluded |= 1 << idx[x]
    return best, witness


def clique_number_bruteforce(g: CompatGraph) -> int:
    """Exponential oracle for tiny graphs."""
    best = 0 if not g.vertices else 1

    def grow(size, cand):
        nonlocal best
        if size > best:
            best = size
        while cand:
            if size + cand.bit_count() <= best:
                return
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            grow(size + 1, cand & g.rows[v])

    grow(0, (1 << len(g.vertices)) - 1)
    return best


def iter_cliques(g: CompatGraph, m: int, candidates: int | None = None,
                 fixed: Sequence[int] = (), chunk: int = _CHUNK) -> Iterator[tuple[int, ...]]:
    """All cliques of exactly ``m`` vertices (vertex-index tuples).

    ``fixed`` vertex ids are forced into every clique; the remaining
    ``m - len(fixed)`` are drawn from ``candidates`` (a bitmask; default all
    vertices adjacent to every fixed vertex). The free part of each tuple is
    sorted; the sequence order is deterministic but not lexicographic.
    """
    fixed = tuple(fixed)
    need = m - len(fixed)
    for i, u in enumerate(fixed):
        for v in fixed[i + 1:]:
            if not g.adjacent(u, v):
                return
    if need < 0:
        return
    V = len(g.vertices)
    mask = (1 << V) - 1 if candidates is None else candidates
    for u in fixed:
        mask &= g.rows[u]
    if need == 0:
        yield fixed
        return
    if mask.bit_count() < need:
        return
    adj = g.matrix
    V, W = adj.shape
    P = np.zeros((need + 1, W), dtype=np.uint64)
    P[0] = g.to_row(mask)
    order = np.zeros((need + 1, V), dtype=np.int64)
    cols = np.zeros((need + 1, V), dtype=np.int64)
    idx = np.zeros(need + 1, dtype=np.int64)
    R = np.zeros(need + 1, dtype=np.int64)
    st = np.array([0, 0, 1], dtype=np.int64)
    out = np.zeros((chunk, need), dtype=np.int64)
    while not st[1]:
        k = _kernels.enum_cliques_kernel(adj, need, P, order, cols, idx, R, st, out)
        for row in out[:k].tolist():
            yield fixed + tuple(sorted(row))


def cliques_of_size(g: CompatGraph, m: int, anchor: int | None = None) -> Iterator[Code]:
    """Every clique of exactly ``m`` vertices, as codes, each once.

    With ``anchor`` (a word that is a vertex), only cliques containing it.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    fixed = ()
    if anchor is not None:
        if anchor not in g.index:
            raise ValueError("anchor is not a vertex of the graph")
        fixed = (g.index[anchor],)
    verts = g.vertices
    for ids in iter_cliques(g, m, fixed=fixed):
        yield Code.of(g.n, (verts[i] for i in ids))


def count_cliques(g: CompatGraph, m: int, candidates: int | None = None, fixed: Sequence[int] = ()) -> int:
    return sum(1 for _ in iter_cliques(g, m, candidates, fixed))


def max_code(n: int, d: int, even: bool = True) -> tuple[int, Code]:
    """A(n, d) restricted to even words (or all words) with a witness code."""
    words = enumerate_even(n) if even else list(range(1 << n))
    return max_clique(build_compat_graph(words, d, n))
