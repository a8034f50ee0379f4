"""Acceptance criteria 1-10; a PASS/FAIL line per criterion is printed in
the terminal summary (see conftest.py)."""

import itertools
import math
import random

import pytest

from cubecolor.canon import (
    all_subgroups, automorphism_group, canonical_key, orbit, stabilizer, subgroup_generated,
)
from cubecolor.certificate import C0, C1, EXPECTED_AUT_ORDER, G1, G2, doubly_extended_hamming
from cubecolor.classify import classify_codes
from cubecolor.cli import main
from cubecolor.clique import build_compat_graph, max_clique
from cubecolor.cover import exact_cover, pack
from cubecolor.doublecount import double_count
from cubecolor.extend import enumerate_size_tuples, extend_partition
from cubecolor.hamming import chromatic_bounds, doubling_bound, enumerate_even
from cubecolor.isometry import Isometry, apply, apply_code, compose, generate_group, inverse, iter_group
from cubecolor.search import (
    Partition, check_partition, enumerate_distributions, exhaustive_color, fixed_code_property,
    partition_automorphisms,
)

from helpers import act, random_code, random_isometry, subset_solutions

criterion = pytest.mark.criterion


@criterion(1, "certificate partition of E^9: 16 + 12x20, |Aut| = 48")
def test_c1_certificate():
    group = generate_group([G1, G2], 9)
    images = orbit(C1, group.elements)
    assert len(images) == 12 and all(len(c) == 20 for c in images.codes)
    P = Partition.of(9, [C0] + images.sorted_codes())
    rep = check_partition(P)
    assert rep.ok and len(P.covered) == 256
    assert str(P.distribution()) == "16 + 12x20"
    aut = partition_automorphisms(P)
    assert aut.order == EXPECTED_AUT_ORDER == 48
    assert G1 in aut and G2 in aut


@criterion(2, "bound table: lower 13, 13, 15, 15; upper 16 at n = 8")
def test_c2_bounds():
    lows = [chromatic_bounds(n, 2, A).lower for n, A in ((8, 20), (9, 40), (10, 72), (11, 144))]
    assert lows == [13, 13, 15, 15]
    assert chromatic_bounds(8, 2, 20).upper == 16


@criterion(3, "combined statement: chi(Q8^2) = 13 and chi(Q17^2) <= 26")
def test_c3_combined(capsys):
    assert main(["verify", "--builtin-certificate", "--i", "1"]) == 0
    out = capsys.readouterr().out
    assert "chi(Q8^2) = 13" in out
    assert "chi(Q17^2) <= 26" in out
    assert doubling_bound(13, 8, 1) == (17, 26)


@criterion(4, "maximum even code of length 9, distance 4: 20")
def test_c4_max_clique():
    size, witness = max_clique(build_compat_graph(enumerate_even(9), 4, 9))
    assert size == 20 and len(witness) == 20
    assert all((a ^ b).bit_count() >= 4 for a, b in itertools.combinations(witness.words, 2))


@criterion(5, "classification: 2 classes of (9,20,4), 33 of (9,19,4)")
def test_c5_classification():
    assert len(classify_codes(9, 20, 4).representatives) == 2
    assert len(classify_codes(9, 19, 4).representatives) == 33


@criterion(6, "five size distributions; 1820 size tuples")
def test_c6_distributions(certificate):
    got = {str(d) for d in enumerate_distributions(256, 13, 20)}
    assert got == {"16 + 12x20", "17 + 19 + 11x20", "2x18 + 11x20", "18 + 2x19 + 10x20",
                   "4x19 + 9x20"}
    assert len(enumerate_size_tuples(certificate)) == 1820


@criterion(7, "the certificate partition does not extend to E^10")
def test_c7_no_extension(certificate):
    res = extend_partition(certificate, "first")
    assert len(res.outcomes) == 1820
    assert not res.extendable and res.lines()[-1] == "no extension"


@criterion(8, "small n: chi = 4, 8, 8, 8 for n = 3, 4, 5, 6")
def test_c8_small_n():
    for n, k, A in ((3, 4, 2), (4, 8, 2), (5, 8, 4), (6, 8, 8)):
        assert exhaustive_color(n + 1, k, first_only=True), (n, k)
        assert exhaustive_color(n + 1, k - 1, first_only=True) == [], (n, k - 1)
        assert chromatic_bounds(n, 2, A).lower == k
        assert chromatic_bounds(n, 2, A).upper == k


@criterion(9, "E^7 sandbox: count by partition equals count by seed")
def test_c9_double_count(sandbox_run):
    case, records, classes = sandbox_run
    assert case.orders == (2,) and case.n == 7
    ledger = double_count(case, records, classes)
    assert ledger.by_partition > 0
    assert ledger.by_partition == ledger.by_seed


@criterion(10, "property suites: group laws, canonical collapse, orbit-stabilizer, covers, fixed-code property")
def test_c10_properties(certificate, sandbox_run):
    rng = random.Random(10)
    # Group laws on G_5 against the definition-based action.
    G5 = list(iter_group(5))
    assert len(G5) == math.factorial(5) * 16 == len(set(G5))
    for _ in range(200):
        g, h, k = (rng.choice(G5) for _ in range(3))
        w = rng.randrange(32)
        assert apply(g, w) == act(g.perm, g.trans, w, 5)
        assert apply(compose(g, h), w) == apply(g, apply(h, w))
        assert compose(compose(g, h), k) == compose(g, compose(h, k))
        assert compose(g, inverse(g)) == Isometry.identity(5)
    # Canonical form collapse under 50 random isometries per code.
    for n, M in ((6, 4), (7, 8), (8, 10)):
        c = random_code(n, M, 4, rng)
        key = canonical_key(c)
        for _ in range(50):
            assert canonical_key(apply_code(random_isometry(n, rng), c)) == key
    # Orbit-stabilizer on G_5.
    for _ in range(5):
        c = random_code(5, 2, 4, rng)
        assert len(orbit(c, G5)) * len(stabilizer(c, G5)) == len(G5)
        assert automorphism_group(c).order == len(stabilizer(c, G5))
    # Pack and exact cover against subset enumeration.
    for _ in range(40):
        X = list(range(rng.randrange(4, 13)))
        S = [(i, frozenset(rng.sample(X, rng.randrange(1, 4)))) for i in range(rng.randrange(3, 12))]
        assert {frozenset(s) for s in exact_cover(X, S)} == subset_solutions(X, S)
        W = [(i, a, len(a)) for i, a in S]
        N = rng.randrange(1, 4)
        assert {frozenset(s) for s in pack(X, W, N)} == subset_solutions(X, W, exact=False, N=N)
    # Fixed-code property on every stored partition.
    aut = partition_automorphisms(certificate)
    for H in all_subgroups(aut, (2, 3, 4)):
        assert fixed_code_property(certificate, H)
    _, records, _ = sandbox_run
    for rec in records:
        H = subgroup_generated(rec.subgroup_generators, 7)
        for P in rec.solutions:
            assert fixed_code_property(P, H)
