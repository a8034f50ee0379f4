"""Classification of even codes of length n, size M and minimum distance d up
to equivalence under G_n.

Two engines produce the same representative sets:

* ``anchored``: every code is equivalent to one containing the zero word and,
  as its closest pair, ``0`` and ``1^w 0^(n-w)``; a few further words are
  fixed up to the stabilizer of the earlier ones (orbital branching). Cliques
  completing each anchor tuple are enumerated and deduplicated by canonical
  form.
* ``augmentation``: codes are grown one word at a time from ``{0}``; at each
  level one word per orbit of Aut(code) is tried and the results deduplicated
  by canonical form.

Deduplication goes through a digest store that can live on disk (sqlite), so
long runs resume where they stopped.
"""

from __future__ import annotations

import hashlib
import json
import logging
import sqlite3
import time
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Iterator

from ._parallel import parallel_map
from .canon import _search_code, automorphism_group
from .clique import build_compat_graph, iter_cliques, max_code
from .hamming import Code, enumerate_even, format_codelist, format_word, parse_word
from .isometry import generate_group

log = logging.getLogger(__name__)

METHODS = ("anchored", "augmentation")


@dataclass(frozen=True)
class ClassificationResult:
    n: int
    M: int
    d: int
    representatives: tuple[Code, ...]
    aut_orders: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.representatives)


# -- maximality --------------------------------------------------------------

@lru_cache(maxsize=None)
def near_masks(n: int, d: int) -> tuple[int, ...]:
    """``near_masks(n, d)[w]`` has bit ``v`` set iff ``0 < dist(w, v) < d``."""
    out = []
    for w in range(1 << n):
        m = 0
        for v in range(1 << n):
            if 0 < (w ^ v).bit_count() < d:
                m |= 1 << v
        out.append(m)
    return tuple(out)


def addable_words(c: Code, d: int = 4, universe: Iterator[int] | None = None) -> list[int]:
    """Words outside ``c`` (default: of E^n) that keep minimum distance >= d."""
    near = near_masks(c.n, d)
    blocked = c.mask
    for w in c.words:
        blocked |= near[w]
    words = enumerate_even(c.n) if universe is None else universe
    return [x for x in words if not blocked >> x & 1]


def is_maximal(c: Code, d: int = 4) -> bool:
    if not c.is_even():
        raise ValueError("maximality is checked inside E^n; code has odd words")
    return not addable_words(c, d)


# -- digest store ------------------------------------------------------------

def _digest(words: tuple[int, ...]) -> bytes:
    return hashlib.blake2b(",".join(map(str, words)).encode(), digest_size=16).digest()


class DigestStore:
    """Insert-if-absent set of canonical codes, in memory or in sqlite.

    Entries are grouped by ``level`` (the code size) so one store can hold a
    whole augmentation run. Completed task ids are recorded for resumption.
    """

    def __init__(self, path: str | Path | None = None):
        self.path = None if path is None else Path(path)
        self._db = sqlite3.connect(":memory:" if path is None else str(path))
        self._db.execute(
            "CREATE TABLE IF NOT EXISTS codes (level INTEGER, digest BLOB, words TEXT,"
            " seq INTEGER, PRIMARY KEY (level, digest))")
        self._db.execute("CREATE TABLE IF NOT EXISTS done (task TEXT PRIMARY KEY)")
        self._db.execute("CREATE TABLE IF NOT EXISTS meta (key TEXT PRIMARY KEY, value TEXT)")
        self._db.commit()

    def add(self, level: int, words: tuple[int, ...]) -> bool:
        cur = self._db.execute(
            "INSERT OR IGNORE INTO codes VALUES (?, ?, ?, (SELECT COUNT(*) FROM codes WHERE level = ?))",
            (level, _digest(words), ",".join(map(str, words)), level))
        return cur.rowcount == 1

    def count(self, level: int) -> int:
        return self._db.execute("SELECT COUNT(*) FROM codes WHERE level = ?", (level,)).fetchone()[0]

    def codes(self, level: int) -> list[tuple[int, ...]]:
        rows = self._db.execute("SELECT words FROM codes WHERE level = ?", (level,)).fetchall()
        return sorted(tuple(int(x) for x in r[0].split(",")) for r in rows)

    def is_done(self, task: str) -> bool:
        return self._db.execute("SELECT 1 FROM done WHERE task = ?", (task,)).fetchone() is not None

    def mark_done(self, task: str) -> None:
        self._db.execute("INSERT OR IGNORE INTO done VALUES (?)", (task,))
        self._db.commit()

    def check_meta(self, **params) -> None:
        """Refuse to resume a store created for different parameters."""
        for k, v in params.items():
            row = self._db.execute("SELECT value FROM meta WHERE key = ?", (k,)).fetchone()
            if row is None:
                self._db.execute("INSERT INTO meta VALUES (?, ?)", (k, json.dumps(v)))
            elif json.loads(row[0]) != v:
                raise ValueError(f"store {self.path} was created with {k}={row[0]}, not {v}")
        self._db.commit()

    def close(self) -> None:
        self._db.commit()
        self._db.close()


# -- anchored engine ---------------------------------------------------------

@dataclass(frozen=True)
class _Branch:
    n: int
    M: int
    d: int
    anchors: tuple[int, ...]
    candidates: tuple[int, ...]  # words allowed besides the anchors

    @property
    def task_id(self) -> str:
        return "anchored:" + ",".join(map(str, self.anchors))


DEFAULT_ANCHOR_DEPTH = 5


def _refine_cells(cells: tuple[tuple[int, ...], ...], word: int, n: int) -> tuple[tuple[int, ...], ...]:
    out = []
    for cell in cells:
        ones = tuple(i for i in cell if word >> (n - 1 - i) & 1)
        zeros = tuple(i for i in cell if not word >> (n - 1 - i) & 1)
        out.extend(c for c in (ones, zeros) if c)
    return tuple(out)


def _orbit_key(word: int, cells, n: int) -> tuple[int, ...]:
    return tuple(sum(word >> (n - 1 - i) & 1 for i in cell) for cell in cells)


def _orbit_rep(key: tuple[int, ...], cells, n: int) -> int:
    w = 0
    for k, cell in zip(key, cells):
        for i in cell[:k]:
            w |= 1 << (n - 1 - i)
    return w


def _expand(n, M, d, anchors, cells, cand, depth, out):
    if len(anchors) >= depth or len(anchors) == M:
        out.append(_Branch(n, M, d, anchors, cand))
        return
    # the stabilizer of the anchors permutes coordinates inside each cell;
    # its orbits on words are given by the number of ones per cell
    orbits: dict[tuple[int, ...], list[int]] = {}
    for x in cand:
        orbits.setdefault(_orbit_key(x, cells, n), []).append(x)
    excluded: set[int] = set()
    for key in sorted(orbits):
        r = _orbit_rep(key, cells, n)
        rest = tuple(x for x in cand
                     if x not in excluded and x != r and (x ^ r).bit_count() >= d)
        if len(rest) >= M - len(anchors) - 1:
            _expand(n, M, d, anchors + (r,), _refine_cells(cells, r, n), rest, depth, out)
        excluded.update(orbits[key])


def _anchored_branches(n: int, M: int, d: int, depth: int = DEFAULT_ANCHOR_DEPTH) -> list[_Branch]:
    """Anchor tuples covering every equivalence class of even (n, M, d) codes.

    Each code is translated so that one word of a closest pair is zero and
    permuted so the other is ``1^w 0^(n-w)``; all further words then have
    weight at least ``w``. Each later anchor is the first word, in orbit
    order, of the stabilizer of the earlier anchors; earlier orbits are
    excluded from the branch.
    """
    if depth < 2:
        raise ValueError("anchor depth must be at least 2")
    evens = enumerate_even(n)
    if M == 1:
        return [_Branch(n, M, d, (0,), ())]
    out: list[_Branch] = []
    weights = sorted({w.bit_count() for w in evens if w.bit_count() >= d})
    for w2 in weights:
        if w2 > d and M > 2 and max_code(n, w2)[0] < M:
            # a code whose closest pair is at distance w2 has minimum distance w2
            break
        r2 = ((1 << w2) - 1) << (n - w2)
        cand = tuple(x for x in evens if x.bit_count() >= w2 and x != r2
                     and (x ^ r2).bit_count() >= d)
        cells = _refine_cells((tuple(range(n)),), r2, n)
        _expand(n, M, d, (0, r2), cells, cand, depth, out)
    return out


def _run_branch(branch: _Branch) -> list[tuple[int, ...]]:
    """Canonical keys of all codes completing one anchored branch."""
    need = branch.M - len(branch.anchors)
    if need == 0:
        return [_search_code(Code.of(branch.n, branch.anchors)).value[0]]
    g = build_compat_graph(branch.candidates, branch.d, branch.n)
    keys = set()
    for ids in iter_cliques(g, need):
        code = Code.of(branch.n, branch.anchors + tuple(branch.candidates[i] for i in ids))
        keys.add(_search_code(code).value[0])
    return sorted(keys)


def _classify_anchored(n, M, d, store: DigestStore, jobs: int, depth: int) -> None:
    branches = [b for b in _anchored_branches(n, M, d, depth) if not store.is_done(b.task_id)]
    batch = max(1, jobs) * 4
    for i in range(0, len(branches), batch):
        chunk = branches[i:i + batch]
        for b, keys in zip(chunk, parallel_map(_run_branch, chunk, jobs)):
            for k in keys:
                store.add(M, k)
            store.mark_done(b.task_id)
            log.info("branch %s: %d codes, %d classes so far", b.anchors, len(keys), store.count(M))


# -- augmentation engine -----------------------------------------------------

def _extensions(args) -> list[tuple[int, ...]]:
    n, d, words = args
    code = Code(n, words)
    res = _search_code(code)
    group = generate_group(res.generators, n) if res.generators else None
    seen: set[int] = set()
    keys = set()
    for x in addable_words(code, d):
        if x in seen:
            continue
        if group is not None:
            seen.update(g(x) for g in group.elements)
        keys.add(_search_code(Code.of(n, words + (x,))).value[0])
    return sorted(keys)


def _classify_augmentation(n, M, d, store: DigestStore, jobs: int) -> None:
    if store.count(1) == 0:
        store.add(1, (0,))
    for level in range(1, M):
        task = f"augment:{level}"
        if store.is_done(task):
            continue
        reps = store.codes(level)
        batch = max(1, jobs) * 64
        for i in range(0, len(reps), batch):
            chunk = reps[i:i + batch]
            for keys in parallel_map(_extensions, [(n, d, r) for r in chunk], jobs):
                for k in keys:
                    store.add(level + 1, k)
        store.mark_done(task)
        log.info("level %d: %d classes", level + 1, store.count(level + 1))


# -- front end ---------------------------------------------------------------

def classify_codes(n: int, M: int, d: int = 4, method: str = "anchored",
                   store: str | Path | DigestStore | None = None, jobs: int = 1,
                   with_aut: bool = True, depth: int = DEFAULT_ANCHOR_DEPTH) -> ClassificationResult:
    """One canonical representative per equivalence class of even (n, M, d) codes."""
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    if d < 2 or d & 1:
        raise ValueError("only even minimum distances are supported")
    if not 2 <= n <= 10:
        raise ValueError("classification supports 2 <= n <= 10")
    if M < 1:
        raise ValueError("M must be positive")
    owned = not isinstance(store, DigestStore)
    db = store if isinstance(store, DigestStore) else DigestStore(store)
    try:
        db.check_meta(n=n, d=d, method=method,
                      **({"M": M, "depth": depth} if method == "anchored" else {}))
        if method == "anchored":
            _classify_anchored(n, M, d, db, jobs, depth)
        else:
            _classify_augmentation(n, M, d, db, jobs)
        reps = tuple(Code(n, w) for w in db.codes(M))
    finally:
        if owned:
            db.close()
    auts = tuple(automorphism_group(c).order for c in reps) if with_aut else ()
    return ClassificationResult(n, M, d, reps, auts)


def write_classification(result: ClassificationResult, out: str | Path, wall_time: float | None = None) -> Path:
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    files = []
    for i, code in enumerate(result.representatives):
        name = f"class_{i:06d}.txt"
        aut = result.aut_orders[i] if result.aut_orders else None
        header = f"even ({result.n},{result.M},{result.d}) code, class {i}" + (f", |Aut| = {aut}" if aut else "")
        (out / name).write_text(format_codelist(code, header))
        files.append(name)
    manifest = {
        "n": result.n, "M": result.M, "d": result.d,
        "classes": len(result.representatives),
        "aut_orders": list(result.aut_orders),
        "files": files,
    }
    if wall_time is not None:
        manifest["wall_time_s"] = round(wall_time, 3)
    path = out / "manifest.json"
    path.write_text(json.dumps(manifest, indent=2) + "\n")
    return path


def read_classification(directory: str | Path) -> ClassificationResult:
    from .hamming import read_codelist

    directory = Path(directory)
    manifest = json.loads((directory / "manifest.json").read_text())
    reps = tuple(read_codelist(directory / f, manifest["n"]) for f in manifest["files"])
    return ClassificationResult(manifest["n"], manifest["M"], manifest["d"], reps,
                                tuple(manifest.get("aut_orders", ())))


def timed_classify(*args, **kwargs) -> tuple[ClassificationResult, float]:
    t0 = time.perf_counter()
    res = classify_codes(*args, **kwargs)
    return res, time.perf_counter() - t0


def code_to_text(code: Code) -> list[str]:
    return [format_word(w, code.n) for w in code.words]


def code_from_text(words: list[str], n: int) -> Code:
    return Code.of(n, (parse_word(w) for w in words))
