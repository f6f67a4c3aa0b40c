"""Frozen reference values used across the test suite.

MAX_QUADS and SMALLEST_DECK_ROWS are published reference tables for the
maximum quad count of a size-l set and the smallest deck realizing exactly q
quads with l cards; the search tests re-derive both exhaustively. Sequence
lists were computed with the independent oracles in this suite and
cross-checked against their OEIS entries where one exists.
"""

# maximum quad count among l cards, indexed by l = 0..63
MAX_QUADS = [
    0, 0, 0, 0, 1, 1, 3, 7, 14, 14, 18, 26, 39, 55, 77, 105,
    140, 140, 148, 164, 189, 221, 263, 315, 378, 442, 518, 606, 707, 819, 945, 1085,
    1240, 1240, 1256, 1288, 1337, 1401, 1483, 1583, 1702, 1830, 1978, 2146, 2335, 2543, 2773, 3025,
    3300, 3556, 3836, 4140, 4469, 4821, 5199, 5603, 6034, 6482, 6958, 7462, 7995, 8555, 9145, 9765,
]

# maximum quad count at power-of-two sizes, including sizes past MAX_QUADS
POWER_OF_TWO_MAX = {
    4: 1, 8: 14, 16: 140, 32: 1240, 64: 10416,
    128: 85344, 256: 690880, 512: 5559680,
}

# smallest deck size realizing exactly q quads with l cards (row l, column q);
# None marks impossible combinations; columns run to the row's achievable max
SMALLEST_DECK_ROWS = {
    1: [1],
    2: [2],
    3: [4],
    4: [8, 4],
    5: [16, 8],
    6: [16, 16, None, 8],
    7: [32, 32, 16, 16, None, None, None, 8],
    8: [64, 32, 32, 32, None, 16, 16, 16, None, None, None, None, None, None, 8],
}

# step sequence MAX_QUADS[n+1] - MAX_QUADS[n], n = 0..23
PARTIAL_DIFFERENCES = [
    0, 0, 0, 1, 0, 2, 4, 7, 0, 4, 8, 13, 16, 22, 28, 35, 0, 8, 16, 25, 32, 42, 52, 63,
]

# Moser-de Bruijn sequence (OEIS A000695), n = 0..11
MOSER_DE_BRUIJN = [0, 1, 4, 5, 16, 17, 20, 21, 64, 65, 68, 69]

# floor(C(l,3)/4) for l = 1..19 (shifted OEIS A011842)
QUAD_COUNT_BOUNDS_FROM_1 = [
    0, 0, 0, 1, 2, 5, 8, 14, 21, 30, 41, 55, 71, 91, 113, 140, 170, 204, 242,
]

# quad count of a 2^k-card complete set minus one card, k = 1..10
HYPERPLANE_MINUS_POINT = [
    0, 0, 7, 105, 1085, 9765, 82677, 680085, 5516245, 44434005,
]

# the same values divided by 7 (OEIS A006096), k = 1..10
HYPERPLANE_SEVENTHS = [0, 0, 1, 15, 155, 1395, 11811, 97155, 788035, 6347715]

# maximum quad count for 64..56 cards in a 64-card deck (complements of 0..8)
COMPLEMENT_OF_SMALL = [10416, 9765, 9145, 8555, 7995, 7462, 6958, 6482, 6034]

# number of canonical generation sequences of each length 1..8
CANONICAL_SEQUENCE_COUNTS = [1, 1, 1, 2, 6, 32, 248, 2960]
