"""Equivalence, canonical forms and automorphism groups of even codes and of
sets of codes, plus the small subgroup machinery the seeded search needs.

Canonical forms come from an individualization-refinement search. A branch
first picks which word is translated to zero (among the words of an
invariant-selected class), then refines an ordered partition of the
coordinates against the translated rows until it is discrete; that ordering
is the permutation. The representative is the smallest image, comparing
sorted word lists, over all leaves of this label-independent tree, so
equivalent inputs produce identical representatives. Equal leaves yield
automorphisms, which prune sibling branches lying in one orbit and also
generate the full automorphism group.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .hamming import Code
from .isometry import (
    DEFAULT_CEILING, CapacityExceeded, Group, Isometry, apply_code, compose,
    generate_group, inverse, permute_word,
)


@dataclass(frozen=True)
class CanonicalForm:
    code: Code
    certificate: Isometry  # apply_code(certificate, input) == code


@dataclass
class _Result:
    value: tuple
    certificate: Isometry
    generators: list[Isometry]


def _word_invariants(blocks: Sequence[Sequence[int]], n: int) -> dict[int, tuple]:
    inv = {}
    for block in blocks:
        for u in block:
            counts = [0] * (n + 1)
            for v in block:
                counts[(u ^ v).bit_count()] += 1
            inv[u] = (len(block), tuple(counts))
    return inv


class _Search:
    def __init__(self, blocks: Sequence[Sequence[int]], n: int):
        self.n = n
        self.blocks = [tuple(sorted(b)) for b in blocks]
        self.words = [w for b in self.blocks for w in b]
        if len(set(self.words)) != len(self.words):
            raise ValueError("blocks must be pairwise disjoint")
        if any(w.bit_count() & 1 for w in self.words):
            raise ValueError("odd-weight word present; only even codes are supported")
        self.block_of = []
        for bi, b in enumerate(self.blocks):
            self.block_of.extend([bi] * len(b))
        self.multi = len(self.blocks) > 1
        if self.multi:
            self.blockmask = []
            start = 0
            for b in self.blocks:
                m = ((1 << len(b)) - 1) << start
                self.blockmask.extend([m] * len(b))
                start += len(b)
        self.inv = _word_invariants(self.blocks, n)
        self.best: tuple | None = None
        self.best_iso: Isometry | None = None
        self.autos: list[Isometry] = []

    # -- leaf handling ------------------------------------------------------

    def _value(self, perm, t) -> tuple:
        if self.multi:
            imgs = [tuple(sorted(permute_word(perm, w ^ t) for w in b)) for b in self.blocks]
            imgs.sort()
            return tuple(imgs)
        return (tuple(sorted(permute_word(perm, w ^ t) for w in self.words)),)

    def _leaf(self, t: int, col_cells: list[list[int]]):
        perm = [0] * self.n
        for p, cell in enumerate(col_cells):
            perm[cell[0]] = p
        perm = tuple(perm)
        value = self._value(perm, t)
        iso = Isometry(perm, permute_word(perm, t))
        if self.best is None or value < self.best:
            self.best = value
            self.best_iso = iso
        elif value == self.best:
            auto = compose(inverse(self.best_iso), iso)
            if not auto.is_identity() and auto not in self.autos:
                self.autos.append(auto)

    # -- refinement ---------------------------------------------------------

    def _refine(self, rows, colmask, row_cells, col_cells):
        n = self.n
        while True:
            changed = False
            rmasks = []
            for cell in row_cells:
                m = 0
                for k in cell:
                    m |= 1 << k
                rmasks.append(m)
            new_cols = []
            for cell in col_cells:
                if len(cell) == 1:
                    new_cols.append(cell)
                    continue
                groups: dict[tuple, list[int]] = {}
                for j in cell:
                    cm = colmask[j]
                    key = tuple((cm & rm).bit_count() for rm in rmasks)
                    groups.setdefault(key, []).append(j)
                if len(groups) > 1:
                    changed = True
                    new_cols.extend(groups[k] for k in sorted(groups))
                else:
                    new_cols.append(cell)
            col_cells = new_cols
            cmasks = []
            for cell in col_cells:
                m = 0
                for j in cell:
                    m |= 1 << (n - 1 - j)
                cmasks.append(m)
            new_rows = []
            for cell in row_cells:
                if len(cell) == 1:
                    new_rows.append(cell)
                    continue
                groups = {}
                for k in cell:
                    r = rows[k]
                    key = tuple((r & cm).bit_count() for cm in cmasks)
                    if self.multi:
                        bm = self.blockmask[k]
                        key += tuple((bm & rm).bit_count() for rm in rmasks)
                    groups.setdefault(key, []).append(k)
                if len(groups) > 1:
                    changed = True
                    new_rows.extend(groups[k] for k in sorted(groups))
                else:
                    new_rows.append(cell)
            row_cells = new_rows
            if not changed:
                return row_cells, col_cells

    # -- tree ---------------------------------------------------------------

    def _orbit_rep_seen(self, x, explored, act, fixers) -> bool:
        if not explored:
            return False
        if not fixers:
            return x in explored
        orbit = {x}
        frontier = [x]
        while frontier:
            y = frontier.pop()
            for g in fixers:
                z = act(g, y)
                if z not in orbit:
                    if z in explored:
                        return True
                    orbit.add(z)
                    frontier.append(z)
        return x in explored

    def _dfs(self, t, rows, colmask, row_cells, col_cells, prefix):
        row_cells, col_cells = self._refine(rows, colmask, row_cells, col_cells)
        target = next((c for c in col_cells if len(c) > 1), None)
        if target is None:
            self._leaf(t, col_cells)
            return
        pos = col_cells.index(target)
        explored: set[int] = set()
        for j in target:
            fixers = [g for g in self.autos
                      if g(t) == t and all(g.perm[c] == c for c in prefix)]
            if self._orbit_rep_seen(j, explored, lambda g, y: g.perm[y], fixers):
                continue
            explored.add(j)
            rest = [x for x in target if x != j]
            cells = col_cells[:pos] + [[j], rest] + col_cells[pos + 1:]
            self._dfs(t, rows, colmask, row_cells, cells, prefix + [j])

    def run(self) -> _Result:
        n = self.n
        cells: dict[tuple, list[int]] = {}
        for w in self.words:
            cells.setdefault(self.inv[w], []).append(w)
        tkey = min(cells, key=lambda k: (len(cells[k]), k))
        explored: set[int] = set()
        for t in cells[tkey]:
            if self._orbit_rep_seen(t, explored, lambda g, y: g(y), self.autos):
                continue
            explored.add(t)
            rows = [w ^ t for w in self.words]
            colmask = []
            for j in range(n):
                bit = 1 << (n - 1 - j)
                m = 0
                for k, r in enumerate(rows):
                    if r & bit:
                        m |= 1 << k
                colmask.append(m)
            colors: dict[tuple, list[int]] = {}
            for k, w in enumerate(self.words):
                colors.setdefault((self.inv[w], rows[k].bit_count()), []).append(k)
            row_cells = [colors[c] for c in sorted(colors)]
            self._dfs(t, rows, colmask, row_cells, [list(range(n))], [])
        return _Result(self.best, self.best_iso, list(self.autos))


def _check_even(c: Code):
    if not c.words:
        raise ValueError("empty code has no canonical form")
    if not c.is_even():
        raise ValueError("canonical forms are defined for even codes only")


def _search_code(c: Code) -> _Result:
    _check_even(c)
    return _Search([c.words], c.n).run()


def canonical_form(c: Code) -> CanonicalForm:
    res = _search_code(c)
    return CanonicalForm(Code(c.n, res.value[0]), res.certificate)


def canonical_key(c: Code) -> tuple[int, ...]:
    return _search_code(c).value[0]


def are_equivalent(c: Code, d: Code) -> bool:
    if c.n != d.n:
        raise ValueError("codes of different lengths")
    if len(c) != len(d):
        return False
    if not c.words:
        return True
    return canonical_key(c) == canonical_key(d)


def find_isometry(c: Code, d: Code) -> Isometry | None:
    """Some g in G_n with g c = d, or None."""
    if c.n != d.n or len(c) != len(d):
        return None
    fc, fd = canonical_form(c), canonical_form(d)
    if fc.code != fd.code:
        return None
    return compose(inverse(fd.certificate), fc.certificate)


def automorphism_generators(c: Code) -> list[Isometry]:
    return _search_code(c).generators


def automorphism_group(c: Code, ceiling: int = DEFAULT_CEILING) -> Group:
    """All of Aut(c) inside G_n."""
    return generate_group(automorphism_generators(c), c.n, ceiling)


# -- sets of codes ---------------------------------------------------------

def canonical_blocks(blocks: Sequence[Code], n: int) -> tuple[tuple[tuple[int, ...], ...], Isometry, list[Isometry]]:
    """Canonical form of a set of pairwise disjoint even codes.

    Returns (representative as sorted tuple of sorted word tuples,
    certificate, automorphism generators).
    """
    res = _Search([b.words for b in blocks], n).run()
    return res.value, res.certificate, res.generators


# -- orbits ----------------------------------------------------------------

@dataclass(frozen=True)
class OrbitSet:
    codes: frozenset[Code]

    def __len__(self) -> int:
        return len(self.codes)

    def sorted_codes(self) -> list[Code]:
        return sorted(self.codes, key=lambda c: c.words)

    @property
    def key(self) -> tuple:
        return tuple(c.words for c in self.sorted_codes())


def orbit(c: Code, H: Iterable[Isometry]) -> OrbitSet:
    return OrbitSet(frozenset(apply_code(h, c) for h in H))


def stabilizer(c: Code, H: Iterable[Isometry]) -> list[Isometry]:
    return [h for h in H if apply_code(h, c) == c]


# -- subgroups and conjugacy -------------------------------------------------

def fast_order(g: Isometry) -> int:
    """Element order from the cycle type of the permutation part."""
    k = 1
    seen = set()
    for i in range(g.n):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = g.perm[j]
            length += 1
        k = k * length // math.gcd(k, length)
    # g^k = (id, sum_{i<k} pi^i(c))
    acc, c = 0, g.trans
    for _ in range(k):
        acc ^= c
        c = permute_word(g.perm, c)
    return k if acc == 0 else 2 * k


@dataclass(frozen=True)
class Subgroup:
    elements: Group
    generators: tuple[Isometry, ...]
    conjugates: int = 1  # number of subgroups of the parent conjugate to this one

    @property
    def order(self) -> int:
        return self.elements.order

    @property
    def key(self) -> frozenset:
        return self.elements.elementset


def _cyclic(g: Isometry) -> frozenset[Isometry]:
    out = [Isometry.identity(g.n)]
    x = g
    while not x.is_identity():
        out.append(x)
        x = compose(x, g)
    return frozenset(out)


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, int(p ** 0.5) + 1))


def all_subgroups(G: Group, orders: Iterable[int]) -> list[Subgroup]:
    """Every subgroup of G whose order is in ``orders`` (4 or a prime)."""
    orders = set(orders)
    for q in orders:
        if q != 4 and not _is_prime(q):
            raise ValueError(f"subgroup order {q} not supported (use 4 or a prime)")
    by_order: dict[int, list[Isometry]] = {}
    for g in G.elements:
        by_order.setdefault(fast_order(g), []).append(g)
    found: dict[frozenset, tuple[Isometry, ...]] = {}
    for q in sorted(orders):
        if q == 4:
            for g in by_order.get(4, []):
                s = _cyclic(g)
                found.setdefault(s, (g,))
            invs = by_order.get(2, [])
            for i, a in enumerate(invs):
                for b in invs[i + 1:]:
                    ab = compose(a, b)
                    if ab == compose(b, a):
                        s = frozenset((Isometry.identity(G.n), a, b, ab))
                        found.setdefault(s, (a, b))
        else:
            for g in by_order.get(q, []):
                s = _cyclic(g)
                found.setdefault(s, (g,))
    out = []
    for s, gens in found.items():
        elems = sorted(s, key=lambda x: (not x.is_identity(), x.perm, x.trans))
        out.append(Subgroup(Group(G.n, tuple(elems)), gens))
    out.sort(key=_subgroup_sort_key)
    return out


def _subgroup_sort_key(s: Subgroup):
    return (s.order, sorted((x.perm, x.trans) for x in s.elements.elements))


def _conjugate_set(g: Isometry, gens: Sequence[Isometry]) -> frozenset[Isometry]:
    ginv = inverse(g)
    cg = [compose(compose(g, h), ginv) for h in gens]
    if len(cg) == 1:
        return _cyclic(cg[0])
    return generate_group(cg, g.n).elementset


def nonconjugate_subgroups(G: Group, orders: Iterable[int], ceiling: int = DEFAULT_CEILING) -> list[Subgroup]:
    """One representative per G-conjugacy class of subgroups with the given orders.

    Each representative records the size of its conjugacy class.
    """
    if G.order > ceiling:
        raise CapacityExceeded(f"group of order {G.order} exceeds ceiling {ceiling}")
    subs = all_subgroups(G, orders)
    assigned: set[frozenset] = set()
    reps = []
    for s in subs:
        if s.key in assigned:
            continue
        cls = set()
        for g in G.elements:
            cls.add(_conjugate_set(g, s.generators))
        assigned |= cls
        reps.append(Subgroup(s.elements, s.generators, len(cls)))
    return reps


def subgroup_generated(gens: Iterable[Isometry], n: int) -> Subgroup:
    gens = tuple(gens)
    return Subgroup(generate_group(gens, n), gens)


def trivial_subgroup(n: int) -> Subgroup:
    return Subgroup(Group(n, (Isometry.identity(n),)), ())
