"""Cards, card sets, and exact quad counting.

A deck of dimension n holds the 2^n cards labeled 0..2^n-1, viewed as
vectors over GF(2). Four distinct cards form a quad exactly when their
bitwise XOR is zero. This module provides the set representation plus the
quad predicate, fast and brute-force quad counting, incremental counting,
completeness testing, and the cross tally of whole-deck quads stratified by
how many of their cards land in a reference set.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import comb
from random import Random
from typing import Iterable, Iterator

import numpy as np

from ._backend import kernels
from .errors import CapacityError, InternalFaultError

MAX_DECK_EXPONENT = 20
CROSS_TALLY_MAX_EXPONENT = 12


def _exact_div(value: int, divisor: int, what: str) -> int:
    q, r = divmod(value, divisor)
    if r:
        raise InternalFaultError(f"{what}: {value} not divisible by {divisor}")
    return q


@dataclass(frozen=True)
class DeckDim:
    """Deck dimension n; the deck holds 2^n cards."""

    n: int

    def __post_init__(self):
        if not 0 <= self.n <= MAX_DECK_EXPONENT:
            raise ValueError(
                f"deck exponent must be in [0, {MAX_DECK_EXPONENT}], got {self.n}"
            )

    @property
    def size(self) -> int:
        return 1 << self.n

    def check_card(self, card: int) -> int:
        if not 0 <= card < self.size:
            raise ValueError(f"card {card} outside deck of size {self.size}")
        return card


def _as_deck(deck: DeckDim | int) -> DeckDim:
    return deck if isinstance(deck, DeckDim) else DeckDim(deck)


@dataclass(frozen=True)
class CardSet:
    """Immutable subset of a deck, stored as a bitmask over [0, 2^n)."""

    deck: DeckDim
    mask: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.deck.size:
            raise ValueError("mask has bits outside the deck")

    @classmethod
    def from_cards(cls, deck: DeckDim | int, cards: Iterable[int]) -> CardSet:
        deck = _as_deck(deck)
        mask = 0
        for c in cards:
            c = int(c)  # numpy ints overflow `1 << c` past bit 62
            deck.check_card(c)
            mask |= 1 << c
        return cls(deck, mask)

    @classmethod
    def empty(cls, deck: DeckDim | int) -> CardSet:
        return cls(_as_deck(deck), 0)

    @classmethod
    def full(cls, deck: DeckDim | int) -> CardSet:
        deck = _as_deck(deck)
        return cls(deck, (1 << deck.size) - 1)

    @cached_property
    def members(self) -> tuple[int, ...]:
        mask = self.mask
        out = []
        base = 0
        while mask:
            low = mask & 0xFFFFFFFFFFFFFFFF
            while low:
                bit = low & -low
                out.append(base + bit.bit_length() - 1)
                low ^= bit
            mask >>= 64
            base += 64
        return tuple(out)

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    def __len__(self) -> int:
        return self.size

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, card: int) -> bool:
        return 0 <= card < self.deck.size and self.mask >> card & 1

    def to_array(self) -> np.ndarray:
        return np.array(self.members, dtype=np.int64)

    def member_array(self) -> np.ndarray:
        arr = np.zeros(self.deck.size, dtype=np.uint8)
        if self.members:
            arr[list(self.members)] = 1
        return arr

    def complement(self) -> CardSet:
        return CardSet(self.deck, self.mask ^ ((1 << self.deck.size) - 1))

    def with_card(self, card: int) -> CardSet:
        card = int(card)
        self.deck.check_card(card)
        return CardSet(self.deck, self.mask | 1 << card)

    def translate(self, t: int) -> CardSet:
        """Image under XOR with a fixed card; a bijection of the deck."""
        self.deck.check_card(t)
        return CardSet.from_cards(self.deck, (c ^ t for c in self.members))

    def to_json_dict(self) -> dict:
        return {"n": self.deck.n, "cards": list(self.members)}

    @classmethod
    def from_json_dict(cls, obj: dict) -> CardSet:
        return cls.from_cards(DeckDim(obj["n"]), obj["cards"])

    def __repr__(self) -> str:
        return f"CardSet(n={self.deck.n}, cards={list(self.members)})"


@dataclass(frozen=True)
class CrossTally:
    """Whole-deck quads stratified by how many of their cards lie in a set.

    ``q[i]`` counts deck quads with exactly i cards in the reference set, so
    q4 is the set's own quad count and q0 the complement's.
    """

    q0: int
    q1: int
    q2: int
    q3: int
    q4: int

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.q0, self.q1, self.q2, self.q3, self.q4)

    @property
    def total(self) -> int:
        return sum(self.as_tuple())


def is_quad(a: int, b: int, c: int, d: int) -> bool:
    """Whether four distinct cards XOR to zero."""
    if len({a, b, c, d}) != 4:
        raise ValueError("a quad is four distinct cards")
    return a ^ b ^ c ^ d == 0


def complete_quad(a: int, b: int, c: int) -> int:
    """The unique fourth card that completes three distinct cards to a quad."""
    if len({a, b, c}) != 3:
        raise ValueError("completion needs three distinct cards")
    return a ^ b ^ c


def count_quads(s: CardSet) -> int:
    """Exact number of 4-subsets of ``s`` whose XOR is zero.

    Buckets the C(l, 2) pair XOR values; quads are pairs of pairs sharing a
    bucket, each quad hit once per its 3 pair partitions, so the bucket
    collision total must split by 3 exactly.
    """
    if len(s) < 4:
        return 0
    raw = int(kernels.pair_xor_collisions(s.to_array(), s.deck.n))
    return _exact_div(raw, 3, "pair collision total")


def count_quads_oracle(s: CardSet) -> int:
    """Brute-force quad count over all C(l, 4) quadruples.

    Ground truth for :func:`count_quads`; O(l^4), intended for l <= 64.
    """
    total = 0
    for a, b, c, d in combinations(s.members, 4):
        if a ^ b ^ c ^ d == 0:
            total += 1
    return total


def count_quads_incremental(s: CardSet, card: int) -> int:
    """Number of new quads created by adding ``card`` to ``s``.

    Each new quad {a, b, d, card} with a, b, d in the set is seen from 3 of
    its internal pairs, so the pair-hit total must split by 3 exactly.
    Satisfies count_quads(s + card) == count_quads(s) + result.
    """
    card = int(card)
    s.deck.check_card(card)
    if card in s:
        raise ValueError(f"card {card} already in the set")
    if len(s) < 2:
        return 0
    raw = int(kernels.added_quad_hits(s.to_array(), s.member_array(), card))
    return _exact_div(raw, 3, "incremental pair hits")


def deck_quad_total(deck: DeckDim | int) -> int:
    """Total quads in a whole deck: C(2^n, 3) / 4 (every triple completes)."""
    deck = _as_deck(deck)
    if deck.n < 2:
        return 0
    return _exact_div(comb(deck.size, 3), 4, "deck quad total")


def cross_tally(s: CardSet) -> CrossTally:
    """Tally all deck quads by how many of their cards fall in ``s``.

    Works per stratum from the three pair-XOR histograms (set/set, set/other,
    other/other) rather than from the counting identities those histograms
    are used to verify; q2 is derived twice and cross-checked, and the five
    strata must add up to the whole-deck total.
    """
    n = s.deck.n
    if n > CROSS_TALLY_MAX_EXPONENT:
        raise CapacityError(
            f"cross tally supports decks up to 2^{CROSS_TALLY_MAX_EXPONENT}"
        )
    inside = s.to_array()
    outside = s.complement().to_array()
    a = kernels.xor_histogram_pairs(inside, n)
    b = kernels.xor_histogram_pairs(outside, n)
    c = kernels.xor_histogram_cross(inside, outside, n)
    q4 = _exact_div(int((a * (a - 1) // 2).sum()), 3, "inside pair collisions")
    q0 = _exact_div(int((b * (b - 1) // 2).sum()), 3, "outside pair collisions")
    q3 = _exact_div(int((a * c).sum()), 3, "inside/cross collisions")
    q1 = _exact_div(int((b * c).sum()), 3, "outside/cross collisions")
    q2 = int((a * b).sum())
    q2_alt = _exact_div(int((c * (c - 1) // 2).sum()), 2, "cross pair collisions")
    if q2 != q2_alt:
        raise InternalFaultError(f"cross tally q2 mismatch: {q2} vs {q2_alt}")
    tally = CrossTally(q0, q1, q2, q3, q4)
    if tally.total != deck_quad_total(s.deck):
        raise InternalFaultError(
            f"cross tally total {tally.total} != deck total {deck_quad_total(s.deck)}"
        )
    return tally


def _span_rank(members: tuple[int, ...]) -> int:
    # GF(2) rank of the set translated by its minimum element
    if not members:
        return 0
    base = members[0]
    basis = {}
    rank = 0
    for m in members[1:]:
        v = m ^ base
        while v:
            bit = v.bit_length() - 1
            if bit in basis:
                v ^= basis[bit]
            else:
                basis[bit] = v
                rank += 1
                break
    return rank


def is_complete(s: CardSet) -> bool:
    """Whether every 3 cards of ``s`` complete to a quad inside ``s``.

    Complete sets are exactly the affine subspaces: after translating by any
    member they are closed under XOR, so their size is a power of 2 and
    equals 2^rank. Empty, singleton, and pair sets count as complete.
    """
    size = len(s)
    if size == 0:
        return True
    return size == 1 << _span_rank(s.members)


def prefix_set(length: int, deck: DeckDim | int) -> CardSet:
    """The set {0, 1, ..., length-1} inside the given deck."""
    deck = _as_deck(deck)
    if not 0 <= length <= deck.size:
        raise ValueError(f"prefix length {length} outside deck of size {deck.size}")
    return CardSet(deck, (1 << length) - 1)


def random_subset(deck: DeckDim | int, rng: Random) -> CardSet:
    """Uniformly random subset of the deck (each card kept with prob 1/2)."""
    deck = _as_deck(deck)
    return CardSet(deck, rng.getrandbits(deck.size))


def random_subset_of_size(deck: DeckDim | int, size: int, rng: Random) -> CardSet:
    """Uniformly random subset with exactly ``size`` cards."""
    deck = _as_deck(deck)
    return CardSet.from_cards(deck, rng.sample(range(deck.size), size))
