"""Built-in data: the 13-coloring certificate of Q_8^2 and the doubly extended
Hamming code."""

from __future__ import annotations

from .hamming import Code, add_parity
from .isometry import Isometry, parse_isometry

C0_WORDS = """
000000000 000011011 100100101 100111110 101001010 101010111
001101001 001110100 110010001 010011100 110100010 010101111
011000110 111001101 011110011 111111000
""".split()

C1_WORDS = """
000000011 100001101 100011010 100110100 000111001 101000110
001010101 101101000 001101111 101110011 010010000 110010111
010100101 110101011 010111110 111000001 011001100 011011011
011100010 111111101
""".split()

G1_TEXT = "((23)(47)(68), 100100101)"
G2_TEXT = "((1857)(29)(46), 000011011)"

C0 = Code.from_strings(C0_WORDS)
C1 = Code.from_strings(C1_WORDS)
G1: Isometry = parse_isometry(G1_TEXT)
G2: Isometry = parse_isometry(G2_TEXT)

EXPECTED_AUT_ORDER = 48


def hamming_code_7() -> Code:
    """The (7,16,3) Hamming code: kernel of the parity-check matrix whose
    columns are 1..7 in binary."""
    words = []
    for w in range(1 << 7):
        syndrome = 0
        for i in range(7):
            if w >> (6 - i) & 1:
                syndrome ^= i + 1
        if syndrome == 0:
            words.append(w)
    return Code.of(7, words)


def doubly_extended_hamming() -> Code:
    """Even (9,16,4) code: parity bit added twice to the Hamming code."""
    h = hamming_code_7()
    ext = [add_parity(w, 7) for w in h.words]
    return Code.of(9, (add_parity(w, 8) for w in ext))


def certificate_partition():
    """The 16 + 12x20 partition of E^9: C0 plus the orbit of C1 under <g1, g2>."""
    from .canon import orbit
    from .isometry import generate_group
    from .search import Partition

    group = generate_group([G1, G2], 9)
    codes = [C0] + orbit(C1, group.elements).sorted_codes()
    return Partition.of(9, codes, generators=(G1, G2))
