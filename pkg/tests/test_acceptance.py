"""Acceptance suite: every criterion runs at its stated exactness and time
budget and prints one PASS/FAIL line. Run with ``pytest -s`` to see the lines
live. JIT warmup happens once, outside the timed sections."""

import json
import time
from contextlib import contextmanager
from math import comb
from random import Random

import pytest

from quads import (
    DeckDim,
    affine_apply,
    check_conjecture,
    complementary_difference,
    count_quads,
    count_quads_incremental,
    count_quads_oracle,
    cross_tally,
    max_quads_exhaustive,
    a213673,
    packed_quad_count,
    partial_difference,
    prefix_set,
    quad_count_bound,
    random_affine,
    random_subset,
    random_subset_of_size,
    smallest_deck_table,
)

from goldens import MAX_QUADS, SMALLEST_DECK_ROWS


@contextmanager
def criterion(label, seconds=None):
    t0 = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {label}: FAIL")
        raise
    elapsed = time.perf_counter() - t0
    if seconds is not None and elapsed >= seconds:
        print(f"ACCEPTANCE {label}: FAIL (time {elapsed:.2f}s >= {seconds}s)")
        raise AssertionError(f"{label} exceeded its {seconds}s budget: {elapsed:.2f}s")
    budget = "" if seconds is None else f" < {seconds}s"
    print(f"ACCEPTANCE {label}: PASS ({elapsed:.2f}s{budget})")


@pytest.fixture(scope="module", autouse=True)
def warm_kernels():
    # compile every JIT kernel before anything is timed
    count_quads(prefix_set(8, 3))
    count_quads_incremental(prefix_set(3, 3), 3)
    cross_tally(prefix_set(2, 2))
    max_quads_exhaustive(2, 4)
    check_conjecture(2, 4)
    smallest_deck_table(2)


def test_01_reference_table_from_prefix_sets():
    with criterion("01 prefix-set counts match the size-0..63 table", 1.0):
        got = [count_quads(prefix_set(size, 6)) for size in range(64)]
        assert got == MAX_QUADS


def test_02_formula_agrees_with_prefix_counts_to_128():
    with criterion("02 recursive formula = prefix count for sizes 0..128", 5.0):
        for size in range(129):
            assert packed_quad_count(size) == count_quads(prefix_set(size, 8)), size


def test_03_smallest_deck_rows_through_seven():
    with criterion("03 smallest-deck rows 1..7 cell-for-cell", 600.0):
        entries = smallest_deck_table(7)
        sizes = {(e.cards, e.quads): e.deck_size for e in entries}
        for cards in range(1, 8):
            row = SMALLEST_DECK_ROWS[cards]
            for quads in range(quad_count_bound(cards) + 1):
                expected = row[quads] if quads < len(row) else None
                assert sizes[(cards, quads)] == expected, (cards, quads)


def test_04_row_eight_with_checkpoint_and_threads(tmp_path):
    with criterion("04 row 8 via checkpointed 8-thread enumeration", 3600.0):
        ckpt = tmp_path / "row8.jsonl"
        entries = smallest_deck_table(8, checkpoint=ckpt, threads=8)
        sizes = {(e.cards, e.quads): e.deck_size for e in entries}
        row = SMALLEST_DECK_ROWS[8]
        for quads in range(quad_count_bound(8) + 1):
            expected = row[quads] if quads < len(row) else None
            assert sizes[(8, quads)] == expected, quads
        records = [json.loads(line) for line in ckpt.read_text().splitlines()]
        assert records and all(
            set(r) >= {"prefix", "best_q", "classes"} for r in records
        )
        assert smallest_deck_table(8, checkpoint=ckpt, threads=8) == entries


def test_05_deck_sixteen_exhaustively_certified():
    with criterion("05 search over the 16-card deck certifies sizes 0..16", 300.0):
        for size in range(17):
            result = max_quads_exhaustive(4, size)
            assert result.max_quads == packed_quad_count(size), size
            assert count_quads_oracle(result.witness) == result.max_quads


def test_06_step_sequence_identity_below_256():
    with criterion("06 step sequence equals (n^2 - A000695(n))/4 for n < 256", 1.0):
        for n in range(256):
            assert partial_difference(n) == a213673(n), n


def test_07_complement_law_and_cross_tally():
    with criterion("07 complement law x1000 and stratified tallies x200", 120.0):
        rng = Random(64)
        deck = DeckDim(6)
        for _ in range(1000):
            s = random_subset(deck, rng)
            diff = count_quads(s) - count_quads(s.complement())
            assert diff == complementary_difference(len(s), 64 - len(s))
        tally_deck = DeckDim(4)
        for _ in range(200):
            s = random_subset(tally_deck, rng)
            t = cross_tally(s)
            ns, nt = len(s), 16 - len(s)
            assert comb(nt, 3) == 4 * t.q0 + t.q1
            assert ns * comb(nt, 2) == 3 * t.q1 + 2 * t.q2
            assert nt * comb(ns, 2) == 2 * t.q2 + 3 * t.q3
            assert comb(ns, 3) == t.q3 + 4 * t.q4


def test_08_affine_invariance():
    with criterion("08 quad counts invariant under 1000 random affine maps", 60.0):
        rng = Random(8)
        for i in range(1000):
            n = 4 + i % 3
            s = random_subset(DeckDim(n), rng)
            t = random_affine(n, rng)
            assert count_quads(affine_apply(t, s)) == count_quads(s)


def test_09_conjecture_scan_deck_sixteen():
    with criterion("09 reduction-conjecture scan over the 16-card deck", 1800.0):
        prev_max = 0
        for cards in range(1, 17):
            check = check_conjecture(4, cards, threshold=prev_max)
            assert check.passed, (
                f"counterexample at {cards} cards: "
                f"{json.dumps(check.counterexample.to_json_dict())}"
            )
            prev_max = max_quads_exhaustive(4, cards).max_quads


def test_10_fast_count_equals_oracle():
    with criterion("10 fast count equals brute-force oracle on 1000 sets"):
        rng = Random(10)
        for _ in range(1000):
            n = rng.randint(2, 8)
            size = rng.randint(0, min(12, 1 << n))
            s = random_subset_of_size(DeckDim(n), size, rng)
            assert count_quads(s) == count_quads_oracle(s), s
