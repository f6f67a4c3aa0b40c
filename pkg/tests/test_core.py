"""Card sets, the quad predicate, and exact counting."""

import json
from itertools import combinations
from math import comb
from random import Random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quads import (
    CardSet,
    CapacityError,
    DeckDim,
    complete_quad,
    count_quads,
    count_quads_incremental,
    count_quads_oracle,
    cross_tally,
    deck_quad_total,
    is_complete,
    is_quad,
    prefix_set,
    random_subset,
    random_subset_of_size,
)

from goldens import MAX_QUADS


class TestDeckDim:
    def test_size(self):
        assert DeckDim(6).size == 64
        assert DeckDim(0).size == 1

    @pytest.mark.parametrize("n", [-1, 21, 100])
    def test_rejects_out_of_range(self, n):
        with pytest.raises(ValueError):
            DeckDim(n)


class TestCardSet:
    def test_members_sorted(self):
        s = CardSet.from_cards(4, [9, 3, 0, 12])
        assert s.members == (0, 3, 9, 12)
        assert len(s) == 4
        assert 9 in s and 1 not in s

    def test_duplicates_collapse(self):
        assert CardSet.from_cards(3, [1, 1, 2]).members == (1, 2)

    def test_rejects_out_of_deck(self):
        with pytest.raises(ValueError):
            CardSet.from_cards(3, [8])

    def test_complement(self):
        s = prefix_set(3, 3)
        assert s.complement().members == (3, 4, 5, 6, 7)

    def test_translate(self):
        s = prefix_set(4, 3).translate(7)
        assert s.members == (4, 5, 6, 7)

    def test_json_roundtrip(self):
        s = CardSet.from_cards(5, [0, 17, 3])
        blob = json.dumps(s.to_json_dict())
        assert json.loads(blob) == {"n": 5, "cards": [0, 3, 17]}
        assert CardSet.from_json_dict(json.loads(blob)) == s

    def test_big_deck_membership(self):
        s = CardSet.from_cards(20, [0, 2**20 - 1])
        assert 2**20 - 1 in s
        assert len(s) == 2


class TestQuadPredicate:
    @pytest.mark.parametrize(
        "quad,expected",
        [((0, 1, 2, 3), True), ((0, 1, 2, 4), False), ((5, 9, 12, 0), True)],
    )
    def test_examples(self, quad, expected):
        assert is_quad(*quad) is expected

    def test_rejects_duplicates(self):
        with pytest.raises(ValueError):
            is_quad(1, 1, 2, 3)

    @pytest.mark.parametrize("triple,expected", [((0, 1, 2), 3), ((1, 2, 4), 7)])
    def test_completion(self, triple, expected):
        assert complete_quad(*triple) == expected
        assert complete_quad(10, 20, 30) == 10 ^ 20 ^ 30

    def test_completion_rejects_duplicates(self):
        with pytest.raises(ValueError):
            complete_quad(4, 4, 5)

    @settings(max_examples=200, deadline=None)
    @given(st.sets(st.integers(min_value=0, max_value=2**16 - 1), min_size=3, max_size=3))
    def test_completion_closes_to_quad(self, triple):
        a, b, c = sorted(triple)
        d = complete_quad(a, b, c)
        assert d not in {a, b, c}
        assert is_quad(a, b, c, d)


class TestCountQuads:
    @pytest.mark.parametrize("ell", range(64))
    def test_prefix_sets_match_reference(self, ell):
        assert count_quads(prefix_set(ell, 6)) == MAX_QUADS[ell]

    def test_small_sets(self):
        assert count_quads(CardSet.from_cards(2, [0, 1, 2, 3])) == 1
        assert count_quads(CardSet.from_cards(3, [0, 1, 2, 4])) == 0
        assert count_quads(CardSet.empty(4)) == 0
        assert count_quads(prefix_set(3, 4)) == 0

    def test_oracle_matches_reference(self):
        assert count_quads_oracle(prefix_set(8, 3)) == 14
        assert count_quads_oracle(CardSet.from_cards(3, [0, 1, 2, 4])) == 0

    def test_fast_path_agrees_with_oracle_on_random_sets(self):
        rng = Random(20240901)
        for _ in range(300):
            n = rng.randint(2, 8)
            size = rng.randint(0, min(12, 1 << n))
            s = random_subset_of_size(DeckDim(n), size, rng)
            assert count_quads(s) == count_quads_oracle(s), s

    def test_bound_with_equality_iff_complete(self):
        rng = Random(77)
        for _ in range(200):
            s = random_subset(DeckDim(4), rng)
            q = count_quads(s)
            bound = comb(len(s), 3) // 4
            assert q <= bound
            if len(s) >= 4 and q == bound == comb(len(s), 3) / 4:
                assert is_complete(s)
            if is_complete(s) and len(s) >= 4:
                assert q == bound

    def test_two_quads_share_at_most_two_cards(self):
        deck = range(8)
        quads = [q for q in combinations(deck, 4) if q[0] ^ q[1] ^ q[2] ^ q[3] == 0]
        assert len(quads) == 14
        for qa, qb in combinations(quads, 2):
            assert len(set(qa) & set(qb)) <= 2


class TestIncrementalCount:
    def test_examples(self):
        assert count_quads_incremental(CardSet.from_cards(3, [0, 1, 2]), 3) == 1
        assert count_quads_incremental(CardSet.from_cards(3, [0, 1, 2]), 4) == 0
        assert count_quads_incremental(prefix_set(7, 3), 7) == 7

    def test_rejects_member(self):
        with pytest.raises(ValueError):
            count_quads_incremental(prefix_set(4, 3), 2)

    def test_consistent_with_full_recount(self):
        rng = Random(5150)
        for _ in range(200):
            n = rng.randint(2, 7)
            deck = DeckDim(n)
            size = rng.randint(0, deck.size - 1)
            s = random_subset_of_size(deck, size, rng)
            c = rng.choice([x for x in range(deck.size) if x not in s])
            assert count_quads(s) + count_quads_incremental(s, c) == count_quads(
                s.with_card(c)
            )


class TestCrossTally:
    def test_tiny_deck(self):
        assert cross_tally(CardSet.from_cards(2, [0])).as_tuple() == (0, 1, 0, 0, 0)
        assert cross_tally(CardSet.from_cards(2, [0, 1])).as_tuple() == (0, 0, 1, 0, 0)

    def test_plane_in_deck_eight(self):
        # brute force over the 14 quads of the 8-card deck gives (1, 0, 12, 0, 1)
        tally = cross_tally(prefix_set(4, 3))
        assert tally.as_tuple() == (1, 0, 12, 0, 1)

    def test_matches_brute_force(self):
        rng = Random(99)
        for n in (2, 3, 4):
            deck = DeckDim(n)
            for _ in range(20):
                s = random_subset(deck, rng)
                byte = [0] * 5
                for quad in combinations(range(deck.size), 4):
                    if quad[0] ^ quad[1] ^ quad[2] ^ quad[3] == 0:
                        byte[sum(1 for c in quad if c in s)] += 1
                assert cross_tally(s).as_tuple() == tuple(byte)

    def test_counting_identities(self):
        rng = Random(4242)
        for n in (3, 4, 5, 6):
            deck = DeckDim(n)
            for _ in range(25):
                s = random_subset(deck, rng)
                t = cross_tally(s)
                ns, nt = len(s), deck.size - len(s)
                assert comb(nt, 3) == 4 * t.q0 + t.q1
                assert ns * comb(nt, 2) == 3 * t.q1 + 2 * t.q2
                assert nt * comb(ns, 2) == 2 * t.q2 + 3 * t.q3
                assert comb(ns, 3) == t.q3 + 4 * t.q4
                assert t.q4 == count_quads(s)
                assert t.q0 == count_quads(s.complement())
                assert t.total == deck_quad_total(deck)

    def test_capacity_ceiling(self):
        with pytest.raises(CapacityError):
            cross_tally(CardSet.empty(13))


class TestIsComplete:
    @pytest.mark.parametrize(
        "cards,expected",
        [
            ([0, 1, 2, 3], True),
            ([0, 1, 2, 4], False),
            ([4, 5, 6, 7], True),
            ([], True),
            ([5], True),
            ([3, 9], True),
        ],
    )
    def test_examples(self, cards, expected):
        assert is_complete(CardSet.from_cards(4, cards)) is expected

    def test_random_subspace_translates_pass(self):
        rng = Random(31337)
        for _ in range(50):
            n = rng.randint(2, 6)
            dim = rng.randint(0, n)
            vecs = [rng.getrandbits(n) for _ in range(dim)]
            span = {0}
            for v in vecs:
                span |= {s ^ v for s in span}
            t = rng.getrandbits(n)
            s = CardSet.from_cards(n, (x ^ t for x in span))
            assert is_complete(s)
            assert len(s) & (len(s) - 1) == 0

    def test_complete_sizes_are_powers_of_two(self):
        rng = Random(2718)
        for _ in range(300):
            s = random_subset(DeckDim(4), rng)
            if is_complete(s) and len(s):
                assert len(s) & (len(s) - 1) == 0


class TestPrefixSet:
    def test_examples(self):
        assert prefix_set(4, 3).members == (0, 1, 2, 3)
        assert prefix_set(0, 3).members == ()
        assert prefix_set(8, 3).members == tuple(range(8))

    def test_rejects_overlong(self):
        with pytest.raises(ValueError):
            prefix_set(9, 3)
