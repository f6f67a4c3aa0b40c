"""GF(2) linear algebra on int bitsets: bit matrices, affine maps, rank.

Matrices are stored row-wise as machine-word bitsets (row i, bit j holds
entry [i][j]); vectors are the card labels themselves. Affine maps
x -> M*x ^ t with M invertible are the quad-preserving symmetries of a deck.
"""

from __future__ import annotations

from dataclasses import dataclass
from random import Random

from .core import CardSet

__all__ = [
    "BitMatrix",
    "AffineMap",
    "identity_matrix",
    "mat_apply",
    "is_invertible",
    "mat_mul",
    "mat_inverse",
    "affine_apply",
    "affine_compose",
    "affine_invert",
    "random_affine",
    "rank_and_basis",
]


@dataclass(frozen=True)
class BitMatrix:
    """n x n matrix over GF(2); rows[i] bit j is entry (i, j)."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.n:
            raise ValueError(f"expected {self.n} rows, got {len(self.rows)}")
        limit = 1 << self.n
        if any(r < 0 or r >= limit for r in self.rows):
            raise ValueError("row uses bits outside the matrix dimension")


def identity_matrix(n: int) -> BitMatrix:
    return BitMatrix(n, tuple(1 << i for i in range(n)))


def mat_apply(m: BitMatrix, v: int) -> int:
    """Matrix-vector product over GF(2): result bit i = parity(rows[i] & v)."""
    out = 0
    for i, row in enumerate(m.rows):
        out |= ((row & v).bit_count() & 1) << i
    return out


def _echelon_rank(rows) -> int:
    basis = {}
    rank = 0
    for v in rows:
        while v:
            bit = v.bit_length() - 1
            if bit in basis:
                v ^= basis[bit]
            else:
                basis[bit] = v
                rank += 1
                break
    return rank


def is_invertible(m: BitMatrix) -> bool:
    """Whether the matrix has full rank over GF(2)."""
    return _echelon_rank(m.rows) == m.n


def mat_mul(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """Matrix product a @ b over GF(2)."""
    if a.n != b.n:
        raise ValueError("dimension mismatch")
    # row i of the product: combine rows of b selected by bits of a's row i
    rows = []
    for arow in a.rows:
        acc = 0
        rest = arow
        while rest:
            bit = rest & -rest
            acc ^= b.rows[bit.bit_length() - 1]
            rest ^= bit
        rows.append(acc)
    return BitMatrix(a.n, tuple(rows))


def mat_inverse(m: BitMatrix) -> BitMatrix:
    """Inverse over GF(2) by Gauss-Jordan; raises on singular input."""
    n = m.n
    work = list(m.rows)
    inv = [1 << i for i in range(n)]
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if work[r] >> col & 1:
                pivot = r
                break
        if pivot is None:
            raise ValueError("matrix is singular")
        work[col], work[pivot] = work[pivot], work[col]
        inv[col], inv[pivot] = inv[pivot], inv[col]
        for r in range(n):
            if r != col and work[r] >> col & 1:
                work[r] ^= work[col]
                inv[r] ^= inv[col]
    return BitMatrix(n, tuple(inv))


@dataclass(frozen=True)
class AffineMap:
    """Quad-preserving deck symmetry x -> matrix*x ^ translation."""

    matrix: BitMatrix
    translation: int

    def __post_init__(self):
        if not 0 <= self.translation < (1 << self.matrix.n):
            raise ValueError("translation outside the deck")
        if not is_invertible(self.matrix):
            raise ValueError("affine map needs an invertible matrix")

    def __call__(self, card: int) -> int:
        return mat_apply(self.matrix, card) ^ self.translation


def affine_apply(t: AffineMap, s: CardSet) -> CardSet:
    """Image of a card set under an affine map; same size, same quad count."""
    if t.matrix.n != s.deck.n:
        raise ValueError(
            f"map dimension {t.matrix.n} != deck dimension {s.deck.n}"
        )
    return CardSet.from_cards(s.deck, (t(c) for c in s.members))


def affine_compose(outer: AffineMap, inner: AffineMap) -> AffineMap:
    """The map applying ``inner`` first, then ``outer``."""
    if outer.matrix.n != inner.matrix.n:
        raise ValueError("dimension mismatch")
    return AffineMap(
        mat_mul(outer.matrix, inner.matrix),
        mat_apply(outer.matrix, inner.translation) ^ outer.translation,
    )


def affine_invert(t: AffineMap) -> AffineMap:
    inv = mat_inverse(t.matrix)
    return AffineMap(inv, mat_apply(inv, t.translation))


def random_affine(n: int, rng: Random) -> AffineMap:
    """Uniformly random affine map: rejection-sample the matrix, free translation.

    A random bit matrix is invertible with probability > 0.28 for every n, so
    rejection terminates quickly and is uniform over the invertible matrices.
    """
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    while True:
        m = BitMatrix(n, tuple(rng.getrandbits(n) for _ in range(n)))
        if is_invertible(m):
            return AffineMap(m, rng.getrandbits(n))


def rank_and_basis(s: CardSet) -> tuple[int, list[int]]:
    """GF(2) rank and row-echelon basis of a set translated by its minimum.

    The set lies in an affine subspace of dimension rank, i.e. inside a
    complete set of 2^rank cards. Basis vectors are returned in increasing
    leading-bit order.
    """
    if len(s) == 0:
        return 0, []
    base = s.members[0]
    basis: dict[int, int] = {}
    for m in s.members[1:]:
        v = m ^ base
        while v:
            bit = v.bit_length() - 1
            if bit in basis:
                v ^= basis[bit]
            else:
                basis[bit] = v
                break
    ordered = [basis[bit] for bit in sorted(basis)]
    return len(ordered), ordered
