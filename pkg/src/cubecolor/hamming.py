"""Binary words, codes and the chromatic-number bounds for squared cubes.

Words are plain ints: coordinate 1 is the most significant of the ``n`` low
bits, so ``int("101001010", 2)`` is the word printed as ``101001010`` and
numeric order coincides with the printed (left-to-right) order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

MAX_LENGTH = 32
UNDEFINED_DISTANCE = math.inf


@dataclass(frozen=True)
class Word:
    """A word of ``Z_2^n`` with its length attached (used at I/O boundaries)."""

    bits: int
    length: int

    def __post_init__(self):
        _check_length(self.length)
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError(f"bits {self.bits:#x} do not fit in {self.length} coordinates")

    def __int__(self) -> int:
        return self.bits

    def __str__(self) -> str:
        return format_word(self.bits, self.length)

    @classmethod
    def parse(cls, text: str) -> "Word":
        return cls(parse_word(text), len(text.strip()))


def _check_length(n: int) -> None:
    if not 1 <= n <= MAX_LENGTH:
        raise ValueError(f"word length must be in 1..{MAX_LENGTH}, got {n}")


def _bits(w) -> int:
    return w.bits if isinstance(w, Word) else int(w)


def weight(w) -> int:
    return _bits(w).bit_count()


def distance(u, v) -> int:
    if isinstance(u, Word) and isinstance(v, Word) and u.length != v.length:
        raise ValueError(f"length mismatch: {u.length} != {v.length}")
    return (_bits(u) ^ _bits(v)).bit_count()


def parse_word(text: str) -> int:
    text = text.strip()
    if not text or set(text) - {"0", "1"}:
        raise ValueError(f"not a binary word: {text!r}")
    return int(text, 2)


def format_word(w: int, n: int) -> str:
    return format(w, f"0{n}b")


def enumerate_even(n: int) -> list[int]:
    """All ``2^(n-1)`` even-weight words of length ``n`` in increasing order."""
    _check_length(n)
    if n > 24:
        raise ValueError("refusing to materialize more than 2^23 words")
    return [w for w in range(1 << n) if not w.bit_count() & 1]


def enumerate_odd(n: int) -> list[int]:
    _check_length(n)
    if n > 24:
        raise ValueError("refusing to materialize more than 2^23 words")
    return [w for w in range(1 << n) if w.bit_count() & 1]


def add_parity(w: int, n: int) -> int:
    """Append a parity bit to an ``n``-bit word, giving an even word of length n+1."""
    return (w << 1) | (w.bit_count() & 1)


def drop_last(w: int) -> int:
    return w >> 1


def min_distance_of(words: Iterable[int]) -> float:
    ws = list(words)
    best = UNDEFINED_DISTANCE
    for i, u in enumerate(ws):
        for v in ws[i + 1:]:
            d = (u ^ v).bit_count()
            if d < best:
                best = d
    return best


def is_code_with_distance(words: Iterable[int], d: int) -> bool:
    ws = list(words)
    for i, u in enumerate(ws):
        for v in ws[i + 1:]:
            if (u ^ v).bit_count() < d:
                return False
    return True


@dataclass(frozen=True)
class Code:
    """A binary code: a sorted, duplicate-free tuple of words of length ``n``."""

    n: int
    words: tuple[int, ...]

    def __post_init__(self):
        _check_length(self.n)
        ws = self.words
        if any(a >= b for a, b in zip(ws, ws[1:])):
            object.__setattr__(self, "words", tuple(sorted(set(ws))))
        limit = 1 << self.n
        if self.words and (self.words[0] < 0 or self.words[-1] >= limit):
            raise ValueError(f"word out of range for length {self.n}")

    @classmethod
    def of(cls, n: int, words: Iterable[int]) -> "Code":
        return cls(n, tuple(sorted(set(words))))

    @classmethod
    def from_strings(cls, strings: Iterable[str]) -> "Code":
        strings = [s.strip() for s in strings if s.strip()]
        if not strings:
            raise ValueError("empty code needs an explicit length")
        n = len(strings[0])
        if any(len(s) != n for s in strings):
            raise ValueError("codewords of different lengths")
        return cls.of(n, (parse_word(s) for s in strings))

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self) -> Iterator[int]:
        return iter(self.words)

    def __contains__(self, w) -> bool:
        return _bits(w) in self.wordset

    @property
    def wordset(self) -> frozenset[int]:
        # cached lazily; frozen dataclass so bypass __setattr__
        try:
            return self.__dict__["_wordset"]
        except KeyError:
            s = frozenset(self.words)
            self.__dict__["_wordset"] = s
            return s

    @property
    def mask(self) -> int:
        """Bitmask over the ``2^n`` words: bit ``w`` set iff ``w`` is a codeword."""
        try:
            return self.__dict__["_mask"]
        except KeyError:
            m = 0
            for w in self.words:
                m |= 1 << w
            self.__dict__["_mask"] = m
            return m

    def is_even(self) -> bool:
        return all(not w.bit_count() & 1 for w in self.words)

    def to_strings(self) -> list[str]:
        return [format_word(w, self.n) for w in self.words]

    def __str__(self) -> str:
        return "{" + ", ".join(self.to_strings()) + "}"


def min_distance(c: Code) -> float:
    """Minimum distance of ``c``; ``inf`` for codes with fewer than two words."""
    return min_distance_of(c.words)


def distance_distribution(words: Iterable[int], n: int) -> tuple[int, ...]:
    ws = list(words)
    counts = [0] * (n + 1)
    for i, u in enumerate(ws):
        for v in ws[i + 1:]:
            counts[(u ^ v).bit_count()] += 1
    return tuple(counts)


@dataclass(frozen=True)
class BoundReport:
    n: int
    k: int
    a_value: int
    lower: int
    upper: int | None

    def __str__(self) -> str:
        up = "?" if self.upper is None else str(self.upper)
        return (f"n={self.n} k={self.k} A(n,k+1)={self.a_value}: "
                f"{self.lower} <= chi <= {up}")


def chromatic_bounds(n: int, k: int, a_value: int) -> BoundReport:
    """Counting lower bound ``ceil(2^n / A(n,k+1))``; for k=2 also ``2^ceil(log2(n+1))``."""
    if a_value < 1:
        raise ValueError("A(n, k+1) must be positive")
    lower = -(-(1 << n) // a_value)
    upper = None
    if k == 2:
        upper = 1 << (n).bit_length()  # 2^ceil(log2(n+1)) == 2^bitlen(n)
    return BoundReport(n, k, a_value, lower, upper)


def doubling_bound(colors: int, n: int, i: int) -> tuple[int, int]:
    """Iterate chi(2n+1) <= chi(n) doubling: a ``colors``-coloring of Q_n^2 gives
    ``colors * 2^i`` colors for length ``(n+1) * 2^i - 1``."""
    if i < 0:
        raise ValueError("i must be nonnegative")
    return (n + 1) * (1 << i) - 1, colors * (1 << i)


# codelist files ----------------------------------------------------------

def parse_codelist(text: str, n: int | None = None) -> Code:
    lines = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        lines.append(line)
    if not lines:
        if n is None:
            raise ValueError("empty codelist without a known length")
        return Code(n, ())
    length = len(lines[0])
    if n is not None and length != n:
        raise ValueError(f"expected words of length {n}, got {length}")
    for line in lines:
        if len(line) != length:
            raise ValueError(f"codeword {line!r} has length {len(line)}, expected {length}")
    return Code.of(length, (parse_word(s) for s in lines))


def format_codelist(code: Code, header: str | None = None) -> str:
    out = []
    if header:
        out.extend("# " + h for h in header.splitlines())
    out.extend(code.to_strings())
    return "\n".join(out) + "\n"


def read_codelist(path, n: int | None = None) -> Code:
    return parse_codelist(Path(path).read_text(encoding="utf-8"), n)


def write_codelist(path, code: Code, header: str | None = None) -> None:
    Path(path).write_text(format_codelist(code, header), encoding="utf-8")
