"""The group G_n: coordinate permutations followed by even-weight translations.

An isometry ``(perm, trans)`` maps a word ``w`` to the word whose coordinate
``perm[i]`` carries bit ``i`` of ``w``, then XORs ``trans``. With 1-based
coordinates this is exactly "coordinate i of the image is w_{pi^-1(i)} + c_i".
``perm`` is stored 0-based in one-line form.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

from .hamming import Code, format_word, parse_word

_TABLE_MAX_N = 12


class CapacityExceeded(RuntimeError):
    """A group or search grew past its configured ceiling."""


def permute_word(perm: tuple[int, ...], w: int) -> int:
    n = len(perm)
    out = 0
    while w:
        low = w & -w
        i = n - low.bit_length()  # coordinate index of this bit
        out |= 1 << (n - 1 - perm[i])
        w ^= low
    return out


@dataclass(frozen=True)
class Isometry:
    perm: tuple[int, ...]
    trans: int = 0

    def __post_init__(self):
        n = len(self.perm)
        if sorted(self.perm) != list(range(n)):
            raise ValueError(f"not a permutation of 0..{n - 1}: {self.perm}")
        if self.trans < 0 or self.trans >> n:
            raise ValueError("translation word does not fit in n coordinates")
        if self.trans.bit_count() & 1:
            raise ValueError("translation must have even weight")

    @classmethod
    def _make(cls, perm: tuple[int, ...], trans: int) -> "Isometry":
        # trusted internal constructor: skips validation
        obj = object.__new__(cls)
        object.__setattr__(obj, "perm", perm)
        object.__setattr__(obj, "trans", trans)
        return obj

    @property
    def n(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, n: int) -> "Isometry":
        return cls(tuple(range(n)), 0)

    def is_identity(self) -> bool:
        return self.trans == 0 and all(i == p for i, p in enumerate(self.perm))

    @cached_property
    def _table(self) -> list[int] | None:
        n = self.n
        if n > _TABLE_MAX_N:
            return None
        bitimg = [1 << (n - 1 - self.perm[n - 1 - b]) for b in range(n)]
        table = [0] * (1 << n)
        for w in range(1, 1 << n):
            low = w & -w
            table[w] = table[w ^ low] | bitimg[low.bit_length() - 1]
        t = self.trans
        return [x ^ t for x in table]

    def __call__(self, w: int) -> int:
        table = self._table
        if table is not None:
            return table[w]
        return permute_word(self.perm, w) ^ self.trans

    def __str__(self) -> str:
        return format_isometry(self)


def apply(g: Isometry, w) -> int:
    from .hamming import Word
    if isinstance(w, Word):
        if w.length != g.n:
            raise ValueError(f"dimension mismatch: isometry on {g.n} coordinates, word of length {w.length}")
        return g(w.bits)
    return g(w)


def apply_code(g: Isometry, c: Code) -> Code:
    if c.n != g.n:
        raise ValueError(f"dimension mismatch: {g.n} vs code length {c.n}")
    return Code(c.n, tuple(sorted(g(w) for w in c.words)))


def compose(g: Isometry, h: Isometry) -> Isometry:
    """``compose(g, h)(w) == g(h(w))``."""
    if g.n != h.n:
        raise ValueError("dimension mismatch")
    gp = g.perm
    perm = tuple([gp[j] for j in h.perm])
    return Isometry._make(perm, permute_word(gp, h.trans) ^ g.trans)


def inverse(g: Isometry) -> Isometry:
    inv = [0] * g.n
    for i, p in enumerate(g.perm):
        inv[p] = i
    inv = tuple(inv)
    return Isometry._make(inv, permute_word(inv, g.trans))


def conjugate(g: Isometry, h: Isometry) -> Isometry:
    """``g h g^-1``."""
    return compose(compose(g, h), inverse(g))


def element_order(g: Isometry, limit: int = 10_000) -> int:
    x, k = g, 1
    while not x.is_identity():
        x = compose(x, g)
        k += 1
        if k > limit:
            raise CapacityExceeded("element order above limit")
    return k


def group_order(n: int) -> int:
    """``|G_n| = n! * 2^(n-1)``."""
    if n < 2:
        raise ValueError("n must be at least 2")
    return math.factorial(n) << (n - 1)


def iter_group(n: int) -> Iterator[Isometry]:
    """Lazily walk all of G_n, permutation-major."""
    evens = [w for w in range(1 << n) if not w.bit_count() & 1]
    for perm in itertools.permutations(range(n)):
        for t in evens:
            yield Isometry(perm, t)


@dataclass(frozen=True)
class Group:
    """An explicitly materialized subgroup of G_n (identity first)."""

    n: int
    elements: tuple[Isometry, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Isometry]:
        return iter(self.elements)

    def __contains__(self, g) -> bool:
        return g in self.elementset

    @cached_property
    def elementset(self) -> frozenset[Isometry]:
        return frozenset(self.elements)

    def is_closed(self) -> bool:
        s = self.elementset
        return all(compose(a, b) in s for a in self.elements for b in self.elements) \
            and all(inverse(a) in s for a in self.elements)


DEFAULT_CEILING = 10 ** 6


def generate_group(gens: Iterable[Isometry], n: int, ceiling: int = DEFAULT_CEILING) -> Group:
    """Close a generating set under composition (Dimino's coset method)."""
    ident = Isometry.identity(n)
    elements = [ident]
    seen = {ident}
    used: list[Isometry] = []
    for g in gens:
        if g in seen:
            continue
        used.append(g)
        prev = list(elements)
        reps = [ident]
        pending = [g]
        while pending:
            r = pending.pop()
            if r in seen:
                continue
            reps.append(r)
            for h in prev:
                x = compose(h, r)
                seen.add(x)
                elements.append(x)
            if len(elements) > ceiling:
                raise CapacityExceeded(f"group exceeds {ceiling} elements")
        i = 1
        while i < len(reps):
            r = reps[i]
            i += 1
            for s in used:
                x = compose(r, s)
                if x not in seen:
                    reps.append(x)
                    for h in prev:
                        y = compose(h, x)
                        seen.add(y)
                        elements.append(y)
                    if len(elements) > ceiling:
                        raise CapacityExceeded(f"group exceeds {ceiling} elements")
    return Group(n, tuple(elements))


# text format -------------------------------------------------------------

def format_cycles(perm: tuple[int, ...]) -> str:
    n = len(perm)
    sep = "" if n <= 9 else " "
    seen = set()
    parts = []
    for i in range(n):
        if i in seen or perm[i] == i:
            continue
        cyc = []
        j = i
        while j not in seen:
            seen.add(j)
            cyc.append(str(j + 1))
            j = perm[j]
        parts.append("(" + sep.join(cyc) + ")")
    return "".join(parts) or "id"


def parse_cycles(text: str, n: int) -> tuple[int, ...]:
    text = text.strip()
    perm = list(range(n))
    if text in ("id", "()", ""):
        return tuple(perm)
    cycles = re.findall(r"\(([^()]*)\)", text)
    if "".join("(" + c + ")" for c in cycles).replace(" ", "") != text.replace(" ", ""):
        raise ValueError(f"malformed cycle notation: {text!r}")
    used = set()
    for cyc in cycles:
        body = cyc.strip()
        if re.search(r"[\s,]", body):
            pts = [int(x) for x in re.split(r"[\s,]+", body) if x]
        else:
            pts = [int(ch) for ch in body]
        for p in pts:
            if not 1 <= p <= n or p in used:
                raise ValueError(f"bad point {p} in cycle notation {text!r}")
            used.add(p)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            perm[a - 1] = b - 1
    return tuple(perm)


def format_isometry(g: Isometry) -> str:
    return f"({format_cycles(g.perm)}, {format_word(g.trans, g.n)})"


_ISO_RE = re.compile(r"^\(\s*(id|(?:\([^()]*\)\s*)*)\s*,\s*([01]+)\s*\)$")


def parse_isometry(text: str) -> Isometry:
    m = _ISO_RE.match(text.strip())
    if not m:
        raise ValueError(f"malformed isometry: {text!r}")
    word = m.group(2)
    n = len(word)
    return Isometry(parse_cycles(m.group(1), n), parse_word(word))
