import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from cubecolor.canon import (
    OrbitSet, all_subgroups, are_equivalent, automorphism_group, canonical_blocks,
    canonical_form, canonical_key, find_isometry, nonconjugate_subgroups, orbit, stabilizer,
    subgroup_generated,
)
from cubecolor.certificate import C0, C1, G1, G2, doubly_extended_hamming
from cubecolor.classify import classify_codes
from cubecolor.clique import build_compat_graph, count_cliques
from cubecolor.hamming import Code, enumerate_even
from cubecolor.isometry import (
    Group, Isometry, apply_code, compose, generate_group, group_order, inverse, iter_group,
)

from helpers import all_codes, random_code, random_isometry

G6 = list(iter_group(6))


def test_collapse_under_random_isometries(rng):
    for code in (C0, C1, doubly_extended_hamming()):
        rep = canonical_form(code)
        assert apply_code(rep.certificate, code) == rep.code
        for _ in range(50):
            g = random_isometry(9, rng)
            other = canonical_form(apply_code(g, code))
            assert other.code == rep.code
            assert apply_code(other.certificate, apply_code(g, code)) == rep.code


def test_singleton_canonical_form():
    for w in (0, 0b110000000, 0b111100000):
        assert canonical_form(Code(9, (w,))).code == Code(9, (0,))


def test_odd_code_rejected():
    with pytest.raises(ValueError):
        canonical_form(Code(4, (1,)))


def test_two_max_classes_distinct():
    reps = classify_codes(9, 20, 4).representatives
    assert len(reps) == 2
    assert canonical_key(reps[0]) != canonical_key(reps[1])
    assert not are_equivalent(reps[0], reps[1])


def test_are_equivalent_examples():
    assert are_equivalent(C0, apply_code(G2, C0))
    assert not are_equivalent(C0, C1)


def _bruteforce_equivalent(c, d):
    target = d.wordset
    return any({g(w) for w in c.words} == target for g in G6)


def test_equivalence_matches_bruteforce_g6(rng):
    codes = [random_code(6, M, 4, rng) for M in (2, 3, 4) for _ in range(6)]
    for c, d in itertools.combinations(codes, 2):
        if len(c) != len(d):
            continue
        assert are_equivalent(c, d) == _bruteforce_equivalent(c, d)
        g = find_isometry(c, d)
        if g is not None:
            assert apply_code(g, c) == d


def test_aut_of_zero_singleton():
    G = automorphism_group(Code(5, (0,)))
    assert G.order == 120
    assert all(g.trans == 0 for g in G.elements)


def test_aut_matches_bruteforce_g6(rng):
    for M in (2, 3, 4):
        c = random_code(6, M, 4, rng)
        brute = {g for g in G6 if apply_code(g, c) == c}
        assert set(automorphism_group(c).elements) == brute


def test_labeled_count_orbit_stabilizer_e7():
    """Sum over classes of |G_n| / |Aut| equals the number of labeled
    codes, counted by clique enumeration."""
    for M in (6, 7, 8):
        res = classify_codes(7, M, 4)
        labeled = count_cliques(build_compat_graph(enumerate_even(7), 4, 7), M)
        assert sum(group_order(7) // a for a in res.aut_orders) == labeled


def test_aut_of_certificate_codes():
    aut = automorphism_group(C0)
    assert G1 in aut and G2 in aut


def test_cyclic_order4_subgroups():
    g = Isometry((1, 2, 3, 0), 0)  # a 4-cycle
    C4 = generate_group([g], 4)
    assert C4.order == 4
    subs = nonconjugate_subgroups(C4, (2, 4))
    assert sorted(s.order for s in subs) == [2, 4]


def test_s3_subgroup_classes():
    a = Isometry((1, 0, 2, 3, 4), 0)
    b = Isometry((1, 2, 0, 3, 4), 0)
    S3 = generate_group([a, b], 5)
    assert S3.order == 6
    subs = nonconjugate_subgroups(S3, (2, 3))
    assert sorted((s.order, s.conjugates) for s in subs) == [(2, 3), (3, 1)]
    assert len(all_subgroups(S3, (2, 3))) == 4


def test_klein_and_cyclic_order_four():
    G = automorphism_group(C0)
    subs = all_subgroups(G, (4,))
    kinds = set()
    for s in subs:
        assert s.elements.is_closed()
        kinds.add(len(s.generators))
    assert kinds <= {1, 2}


def test_orbit_examples():
    aut = automorphism_group(C1)
    assert orbit(C1, aut.elements).codes == frozenset({C1})
    group = generate_group([G1, G2], 9)
    assert len(orbit(C1, group.elements)) == 12


def test_orbit_stabilizer_identity_g6(rng):
    for _ in range(10):
        gens = [random_isometry(6, rng) for _ in range(2)]
        H = generate_group(gens, 6, ceiling=50000)
        c = random_code(6, rng.choice((2, 3, 4)), 4, rng)
        o = orbit(c, H.elements)
        assert len(o) * len(stabilizer(c, H.elements)) == H.order
        assert H.order % len(o) == 0


def test_orbit_stabilizer_g5_exhaustive(rng):
    G5 = Group(5, tuple(iter_group(5)))
    for M in (1, 2):
        for c in list(all_codes(5, M, 4))[:6]:
            assert len(orbit(c, G5.elements)) * len(stabilizer(c, G5.elements)) == 1920


def test_canonical_blocks_invariant(certificate, rng):
    value, cert, gens = canonical_blocks(certificate.codes, 9)
    g = random_isometry(9, rng)
    moved = [apply_code(g, c) for c in certificate.codes]
    assert canonical_blocks(moved, 9)[0] == value
    assert generate_group(gens, 9).order == 48


def test_conjugate_subgroup_realization(certificate, rng):
    """gP contains gC and is stabilized by gHg^-1; for g in Aut(C) this
    keeps C itself."""
    H = generate_group([G1, G2], 9)
    codes = set(certificate.codes)
    for g in [random_isometry(9, rng) for _ in range(5)] + list(automorphism_group(C0).elements[:5]):
        moved = {apply_code(g, c) for c in codes}
        assert apply_code(g, C0) in moved
        ginv = inverse(g)
        for h in H.elements:
            conj = compose(compose(g, h), ginv)
            assert {apply_code(conj, c) for c in moved} == moved
        if apply_code(g, C0) == C0:
            assert C0 in moved


@settings(max_examples=25)
@given(st.integers(0, 10**9))
def test_canonical_idempotent_and_equivalence(seed):
    rng = random.Random(seed)
    c = random_code(7, rng.randint(2, 8), 4, rng)
    rep = canonical_form(c).code
    assert canonical_form(rep).code == rep
    d = apply_code(random_isometry(7, rng), c)
    e = apply_code(random_isometry(7, rng), d)
    assert are_equivalent(c, c) and are_equivalent(c, d) and are_equivalent(d, c)
    assert are_equivalent(c, e)
