import random

import pytest
from hypothesis import given, settings, strategies as st

from cubecolor.cover import exact_cover, is_exact_cover, pack

from helpers import subset_solutions


def random_instance(rng, atoms, cands, maxsize=4, weights=False):
    X = list(range(atoms))
    S = []
    for i in range(cands):
        if not atoms:
            break
        size = rng.randint(1, min(maxsize, atoms))
        item = (i, set(rng.sample(X, size)))
        if weights:
            item = item + (rng.randint(1, 3),)
        S.append(item)
    return X, S


def test_exact_cover_examples():
    assert list(exact_cover([], [])) == [()]
    sols = {frozenset(s) for s in exact_cover([1, 2, 3], [("a", {1, 2}), ("b", {3}), ("c", {1}), ("d", {2, 3})])}
    assert sols == {frozenset("ab"), frozenset("cd")}


def test_exact_cover_drops_outside_candidates():
    sols = list(exact_cover([1, 2], [("x", {1, 2, 3}), ("y", {1}), ("z", {2})]))
    assert [set(s) for s in sols] == [{"y", "z"}]


def test_exact_cover_no_solution():
    assert list(exact_cover([1, 2], [("a", {1})])) == []


def test_empty_candidates_ignored():
    assert [set(s) for s in exact_cover([1], [("e", set()), ("a", {1})])] == [{"a"}]


def test_duplicate_ids_rejected():
    with pytest.raises(ValueError):
        list(exact_cover([1], [("a", {1}), ("a", {1})]))


def test_pack_examples():
    assert list(pack("abcd", [], 0)) == [()]
    S = [(0, "ab", 2), (1, "cd", 2), (2, "ac", 2)]
    assert [set(s) for s in pack("abcd", S, 4)] == [{0, 1}]


def test_exact_cover_vs_bruteforce_20_atoms():
    rng = random.Random(7)
    for _ in range(40):
        X, S = random_instance(rng, 20, 16, maxsize=6)
        got = [frozenset(s) for s in exact_cover(X, S)]
        assert len(got) == len(set(got))
        assert set(got) == subset_solutions(X, S)
        for s in got:
            assert is_exact_cover(X, [dict((c[0], c[1]) for c in S)[i] for i in s])


def test_pack_vs_bruteforce_15_candidates():
    rng = random.Random(11)
    for _ in range(40):
        X, S = random_instance(rng, 14, 15, maxsize=4, weights=True)
        N = rng.randint(0, 8)
        got = [frozenset(s) for s in pack(X, S, N)]
        assert len(got) == len(set(got))
        assert set(got) == subset_solutions(X, S, exact=False, N=N)


def test_deterministic_order():
    rng = random.Random(3)
    X, S = random_instance(rng, 12, 20, maxsize=4)
    assert list(exact_cover(X, S)) == list(exact_cover(X, S))


def test_pack_then_exact_equals_combined():
    """Packing weight-N1 orbits then exact-covering the rest gives the same
    selections as one exact cover over both candidate kinds with the
    weight constraint applied afterwards."""
    rng = random.Random(5)
    for _ in range(25):
        X = list(range(12))
        S1 = [(("a", i), set(rng.sample(X, rng.randint(1, 3))), 1) for i in range(8)]
        S2 = [(("b", i), set(rng.sample(X, rng.randint(1, 4)))) for i in range(12)]
        N1 = rng.randint(0, 2)
        staged = set()
        for sel1 in pack(X, S1, N1):
            used = set().union(*(dict((c[0], c[1]) for c in S1)[i] for i in sel1)) if sel1 else set()
            rest = [x for x in X if x not in used]
            for sel2 in exact_cover(rest, S2):
                staged.add(frozenset(sel1) | frozenset(sel2))
        combined = {s for s in (frozenset(t) for t in exact_cover(X, [c[:2] for c in S1] + S2))
                    if sum(1 for i in s if i[0] == "a") == N1}
        assert staged == combined


@settings(max_examples=40)
@given(st.integers(0, 10**9))
def test_exact_cover_property(seed):
    rng = random.Random(seed)
    X, S = random_instance(rng, rng.randint(0, 10), rng.randint(0, 12), maxsize=4)
    assert {frozenset(s) for s in exact_cover(X, S)} == subset_solutions(X, S)
