"""Independent brute-force oracles shared by the tests."""

import itertools
import random

from cubecolor.hamming import Code
from cubecolor.isometry import Isometry


def random_isometry(n: int, rng: random.Random) -> Isometry:
    perm = list(range(n))
    rng.shuffle(perm)
    t = rng.randrange(1 << n)
    if t.bit_count() & 1:
        t ^= 1
    return Isometry(tuple(perm), t)


def act(perm, trans, w, n):
    """Coordinate i (1-based) of the image is w_{pi^-1(i)} + c_i, computed
    from the definition on bit strings."""
    bits = format(w, f"0{n}b")
    out = ["0"] * n
    for i in range(n):
        out[perm[i]] = bits[i]
    return int("".join(out), 2) ^ trans


def even_words(n):
    return [w for w in range(1 << n) if w.bit_count() % 2 == 0]


def min_dist(words):
    ws = list(words)
    return min(((a ^ b).bit_count() for a, b in itertools.combinations(ws, 2)), default=None)


def all_codes(n, M, d):
    """Every even (n, M, d) code, by subset enumeration."""
    for sub in itertools.combinations(even_words(n), M):
        if M < 2 or min_dist(sub) >= d:
            yield Code(n, sub)


def random_code(n, M, d, rng):
    words = even_words(n)
    rng.shuffle(words)
    chosen = []
    for w in words:
        if all((w ^ u).bit_count() >= d for u in chosen):
            chosen.append(w)
        if len(chosen) == M:
            break
    return Code.of(n, chosen)


def subset_solutions(X, S, exact=True, N=None):
    """All selections of candidates (id, atoms[, weight]) that are pairwise
    disjoint inside X, covering X when ``exact``, of total weight N when given."""
    X = set(X)
    cands = [(c[0], frozenset(c[1]), c[2] if len(c) > 2 else 1) for c in S]
    out = set()
    for r in range(len(cands) + 1):
        for pick in itertools.combinations(cands, r):
            atoms = [a for c in pick for a in c[1]]
            if len(atoms) != len(set(atoms)) or not set(atoms) <= X:
                continue
            if exact and set(atoms) != X:
                continue
            if N is not None and sum(c[2] for c in pick) != N:
                continue
            out.add(frozenset(c[0] for c in pick))
    return out
