import itertools
import random

import pytest
from hypothesis import given, strategies as st

from cubecolor.certificate import C0, C1, G1, G2
from cubecolor.hamming import Code, Word, enumerate_even, min_distance, parse_word
from cubecolor.isometry import (
    Group, Isometry, apply, apply_code, compose, conjugate, element_order, format_cycles,
    format_isometry, generate_group, group_order, inverse, iter_group, parse_cycles,
    parse_isometry,
)

from helpers import act, random_isometry


def table(g, n):
    return tuple(g(w) for w in range(1 << n))


def test_action_matches_definition(rng):
    for n in (3, 5, 9):
        for _ in range(20):
            g = random_isometry(n, rng)
            for w in range(0, 1 << n, max(1, (1 << n) // 64)):
                assert g(w) == act(g.perm, g.trans, w, n)


def test_apply_examples():
    assert apply(Isometry.identity(9), 123) == 123
    assert apply(G1, 0) == parse_word("100100101")
    assert apply(G1, Word.parse("000000000")) == parse_word("100100101")
    with pytest.raises(ValueError):
        apply(G1, Word.parse("0000"))


def test_distance_preserved_by_g1(rng):
    E9 = enumerate_even(9)
    for _ in range(500):
        u, v = rng.choice(E9), rng.choice(E9)
        assert (G1(u) ^ G1(v)).bit_count() == (u ^ v).bit_count()
    assert {G1(w) for w in E9} == set(E9)


def test_compose_inverse_examples():
    h = G2
    ident = Isometry.identity(9)
    assert compose(ident, h) == h
    assert compose(h, inverse(h)).is_identity()
    assert inverse(ident) == ident
    w = parse_word("000011011")
    assert apply(compose(inverse(G2), G2), w) == w


def test_group_laws_g5_exhaustive():
    n = 5
    G = list(iter_group(n))
    assert len(G) == group_order(5) == 1920
    tables = {table(g, n) for g in G}
    assert len(tables) == 1920   # faithful on Z_2^5
    even_tables = {tuple(g(w) for w in enumerate_even(n)) for g in G}
    assert len(even_tables) == 1920  # faithful on E^5
    rng = random.Random(5)
    for _ in range(300):
        a, b, c = (rng.choice(G) for _ in range(3))
        assert table(compose(compose(a, b), c), n) == table(compose(a, compose(b, c)), n)
        assert table(compose(a, b), n) == tuple(a(b(w)) for w in range(1 << n))


def test_inverse_involution_g6(rng):
    for _ in range(200):
        g = random_isometry(6, rng)
        assert inverse(inverse(g)) == g
        assert table(compose(g, inverse(g)), 6) == tuple(range(64))


def test_group_order():
    assert group_order(9) == 92897280
    assert group_order(2) == 4
    with pytest.raises(ValueError):
        group_order(1)


def test_apply_code_examples(rng):
    assert apply_code(Isometry.identity(9), C0) == C0
    assert min_distance(apply_code(G1, C1)) == 4
    for _ in range(100):
        g = random_isometry(9, rng)
        img = apply_code(g, C0)
        assert len(img) == len(C0) and min_distance(img) == min_distance(C0)
    with pytest.raises(ValueError):
        apply_code(G1, Code(8, (0,)))


def test_text_format_roundtrip(rng):
    assert format_isometry(G1) == "((23)(47)(68), 100100101)"
    assert parse_isometry("(id, 000000)") == Isometry.identity(6)
    assert format_cycles(tuple(range(4))) == "id"
    for n in (3, 9, 12):
        for _ in range(30):
            g = random_isometry(n, rng)
            assert parse_isometry(format_isometry(g)) == g
    with pytest.raises(ValueError):
        parse_isometry("((12), 1)")  # odd translation
    with pytest.raises(ValueError):
        parse_cycles("(11)", 3)


def test_invalid_isometry():
    with pytest.raises(ValueError):
        Isometry((0, 0, 1), 0)
    with pytest.raises(ValueError):
        Isometry((0, 1, 2), 1)


def test_generate_group_and_orders():
    G = generate_group([G1, G2], 9)
    assert G.order == 48
    assert G.is_closed()
    assert G.elements[0].is_identity()
    assert element_order(G1) == 2 and element_order(G2) == 4


def test_conjugate():
    g, h = G1, G2
    assert table(conjugate(g, h), 9) == tuple(g(h(inverse(g)(w))) for w in range(512))


@given(st.integers(0, 10**9))
def test_parity_preserved(seed):
    rng = random.Random(seed)
    g = random_isometry(7, rng)
    w = rng.randrange(128)
    assert g(w).bit_count() % 2 == w.bit_count() % 2


@given(st.integers(0, 10**9))
def test_compose_action_property(seed):
    rng = random.Random(seed)
    g, h = random_isometry(8, rng), random_isometry(8, rng)
    w = rng.randrange(256)
    assert compose(g, h)(w) == g(h(w))
    assert inverse(g)(g(w)) == w
