"""Ground-truth search engines.

Three engines provide unconditional answers at desk scale:

* :func:`max_quads_exhaustive`: branch-and-bound over all size-l subsets of
  a concrete deck, certifying the maximum quad count with a witness.
* :func:`enumerate_canonical` / :func:`smallest_deck_table`: isomorph-reduced
  enumeration: every set is affine-equivalent to a canonical sequence that
  starts at card 0 and introduces fresh dimensions as successive basis
  vectors, so walking canonical sequences covers every equivalence class.
  The smallest deck realizing exactly q quads with l cards is 2^(least span
  rank over such sets).
* :func:`check_conjecture`: scans every size-l subset of a deck whose span
  rank exceeds ceil(log2 l) and verifies none beats the certified maximum
  for l-1 cards.

Long table runs can be split over a thread pool and checkpointed to a
JSON-lines file, one record per completed subtree; reruns skip recorded
subtrees.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import comb
from pathlib import Path
from typing import Callable, Iterator

import numpy as np

from ._backend import kernels
from .core import CardSet, DeckDim, _as_deck, prefix_set, count_quads
from .errors import CapacityError, InternalFaultError, SearchBudgetError
from .formulas import packed_quad_count, quad_count_bound

BUDGET_ENV_VAR = "QUADS_BUDGET_NODES"
DEFAULT_NODE_BUDGET = 50_000_000
MAX_CANONICAL_CARDS = 12
DEFAULT_SPLIT_CARDS = 6
_NO_RANK = 127  # sentinel in kernel min-rank tables


def _resolve_budget(budget: int | None) -> int:
    if budget is not None:
        if budget < 1:
            raise ValueError(f"node budget must be positive, got {budget}")
        return budget
    env = os.environ.get(BUDGET_ENV_VAR)
    if env:
        return int(env)
    return DEFAULT_NODE_BUDGET


def _bound_remaining(ell: int) -> np.ndarray:
    # rem[d] = max extra quads when growing from d to ell cards: each card
    # entering an m-set joins at most floor(C(m-1, 2) / 3) new quads
    rem = np.zeros(ell + 1, dtype=np.int64)
    for d in range(ell - 1, -1, -1):
        rem[d] = rem[d + 1] + comb(d, 2) // 3
    return rem


@dataclass(frozen=True)
class SearchResult:
    """Certified maximum quad count with the lexicographically least witness."""

    cards: int
    deck: DeckDim
    max_quads: int
    witness: CardSet
    nodes_explored: int
    wall_time: float


def max_quads_exhaustive(
    deck: DeckDim | int, cards: int, *, budget: int | None = None
) -> SearchResult:
    """Exact maximum of count_quads over all ``cards``-subsets of the deck.

    Depth-first branch-and-bound in increasing card order; ties are broken
    toward the lexicographically smallest witness. Raises
    :class:`SearchBudgetError` carrying the best found so far when the node
    budget runs out.
    """
    deck = _as_deck(deck)
    if not 0 <= cards <= deck.size:
        raise ValueError(f"cannot pick {cards} cards from a deck of {deck.size}")
    budget = _resolve_budget(budget)
    t0 = time.perf_counter()
    status, best, witness, nodes = kernels.max_quads_dfs(
        deck.n, cards, _bound_remaining(cards), budget
    )
    wall = time.perf_counter() - t0
    if status == kernels.STATUS_FAULT:
        raise InternalFaultError("branch-and-bound pair hits not divisible by 3")
    witness_set = CardSet.from_cards(deck, witness) if best >= 0 else CardSet.empty(deck)
    result = SearchResult(cards, deck, max(int(best), 0), witness_set, int(nodes), wall)
    if status == kernels.STATUS_BUDGET:
        raise SearchBudgetError(
            f"search for {cards} cards in deck 2^{deck.n} exceeded {budget} nodes",
            nodes=int(nodes),
            partial=result,
        )
    return result


@dataclass(frozen=True)
class CanonicalPrefix:
    """Orderly-generation sequence: starts at 0, fresh dimensions enter as
    successive basis vectors, every other card lies in the current span."""

    cards: tuple[int, ...]
    rank: int


@dataclass
class EnumerationStats:
    sequences: int = 0


def iter_canonical(length: int, *, budget: int | None = None) -> Iterator[tuple[CanonicalPrefix, int]]:
    """Yield (prefix, quad_count) for every canonical sequence of ``length`` cards.

    Every affine-equivalence class of card sets of this size appears at least
    once (possibly more than once, from different orderings). The span of a
    canonical sequence of rank r is the interval [0, 2^r), so candidates are
    the unused values below 2^rank plus the fresh vector 2^rank.
    """
    if length < 1:
        raise ValueError(f"length must be >= 1, got {length}")
    if length > MAX_CANONICAL_CARDS:
        raise CapacityError(f"canonical enumeration supports up to {MAX_CANONICAL_CARDS} cards")
    budget = _resolve_budget(budget)
    nodes = 0
    cards = [0]
    used = {0}

    def rec(rank: int, quads: int):
        nonlocal nodes
        depth = len(cards)
        if depth == length:
            yield CanonicalPrefix(tuple(cards), rank), quads
            return
        for v in range((1 << rank) + 1):
            if v in used:
                continue
            hits = 0
            for i in range(depth):
                x = cards[i] ^ v
                for j in range(i + 1, depth):
                    if cards[j] ^ x in used:
                        hits += 1
            if hits % 3:
                raise InternalFaultError("canonical walk pair hits not divisible by 3")
            nodes += 1
            if nodes > budget:
                raise SearchBudgetError(
                    f"canonical enumeration exceeded {budget} nodes", nodes=nodes
                )
            cards.append(v)
            used.add(v)
            yield from rec(rank + (v == 1 << rank), quads + hits // 3)
            used.remove(v)
            cards.pop()

    yield from rec(0, 0)


def enumerate_canonical(
    length: int,
    visitor: Callable[[CanonicalPrefix, int], None] | None = None,
    *,
    budget: int | None = None,
) -> EnumerationStats:
    """Drive ``visitor`` over every canonical sequence of ``length`` cards."""
    stats = EnumerationStats()
    for prefix, quads in iter_canonical(length, budget=budget):
        stats.sequences += 1
        if visitor is not None:
            visitor(prefix, quads)
    return stats


@dataclass(frozen=True)
class SmallestDeckEntry:
    """Smallest deck exponent realizing exactly ``quads`` quads with
    ``cards`` cards; ``deck_exponent`` is None when impossible at any deck."""

    cards: int
    quads: int
    deck_exponent: int | None

    @property
    def deck_size(self) -> int | None:
        return None if self.deck_exponent is None else 1 << self.deck_exponent


def _split_tasks(max_cards: int, split_cards: int):
    """Canonical prefixes of ``split_cards`` cards, plus (depth, quads, rank)
    for every strictly shallower node of the canonical tree."""
    tasks: list[tuple[int, ...]] = []
    shallow: list[tuple[int, int, int]] = []
    cards = [0]
    used = {0}

    def rec(rank: int, quads: int):
        depth = len(cards)
        if depth == split_cards:
            tasks.append(tuple(cards))
            return
        shallow.append((depth, quads, rank))
        for v in range((1 << rank) + 1):
            if v in used:
                continue
            hits = 0
            for i in range(depth):
                x = cards[i] ^ v
                for j in range(i + 1, depth):
                    if cards[j] ^ x in used:
                        hits += 1
            cards.append(v)
            used.add(v)
            rec(rank + (v == 1 << rank), quads + hits // 3)
            used.remove(v)
            cards.pop()

    rec(0, 0)
    return tasks, shallow


def _load_checkpoint(path: Path, max_cards: int) -> dict[tuple[int, ...], dict]:
    records: dict[tuple[int, ...], dict] = {}
    if not path.exists():
        return records
    with path.open() as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            rec = json.loads(line)
            if rec.get("cards") != max_cards:
                raise ValueError(
                    f"checkpoint {path} was written for a different table "
                    f"(cards={rec.get('cards')}, expected {max_cards})"
                )
            records[tuple(rec["prefix"])] = rec
    return records


def smallest_deck_table(
    max_cards: int,
    *,
    checkpoint: str | Path | None = None,
    threads: int = 1,
    budget: int | None = None,
    split_cards: int | None = None,
) -> list[SmallestDeckEntry]:
    """Smallest-deck entries for every (cards, quads) with cards <= max_cards.

    Walks the canonical tree once; the least span rank seen for each
    (cards, quads) pair gives the smallest deck exponent, since a rank-r set
    embeds in the 2^r-card deck and no smaller one. Work splits into
    independent subtrees at ``split_cards`` cards; completed subtrees are
    appended to the checkpoint file and skipped on rerun.
    """
    if not 1 <= max_cards <= MAX_CANONICAL_CARDS:
        raise CapacityError(f"table supports 1..{MAX_CANONICAL_CARDS} cards, got {max_cards}")
    if threads < 1:
        raise ValueError(f"threads must be >= 1, got {threads}")
    budget = _resolve_budget(budget)
    split = min(max_cards, split_cards or DEFAULT_SPLIT_CARDS)
    if split < 1:
        raise ValueError("split_cards must be >= 1")
    qmax = quad_count_bound(max_cards)

    tasks, shallow = _split_tasks(max_cards, split)
    merged = np.full((max_cards + 1, qmax + 1), _NO_RANK, dtype=np.int16)
    for depth, quads, rank in shallow:
        if depth >= 1 and rank < merged[depth, quads]:
            merged[depth, quads] = rank

    ckpt_path = Path(checkpoint) if checkpoint is not None else None
    records = _load_checkpoint(ckpt_path, max_cards) if ckpt_path else {}
    for rec in records.values():
        for depth, quads, rank in rec["achieved"]:
            if rank < merged[depth, quads]:
                merged[depth, quads] = rank

    pending = [p for p in tasks if p not in records]
    total_nodes = 0
    ckpt_fh = ckpt_path.open("a") if ckpt_path else None

    def run_subtree(prefix: tuple[int, ...]):
        arr = np.array(prefix, dtype=np.int64)
        return prefix, kernels.canonical_subtree(arr, max_cards, qmax, budget)

    def consume(prefix, outcome) -> None:
        nonlocal total_nodes
        status, min_rank, classes, best_q, nodes = outcome
        if status == kernels.STATUS_FAULT:
            raise InternalFaultError("canonical subtree walk failed a divisibility check")
        total_nodes += int(nodes)
        if status == kernels.STATUS_BUDGET:
            raise SearchBudgetError(
                f"canonical subtree at {list(prefix)} exceeded {budget} nodes",
                nodes=total_nodes,
                checkpoint=str(ckpt_path) if ckpt_path else None,
            )
        np.minimum(merged, min_rank.astype(np.int16), out=merged)
        if ckpt_fh is not None:
            achieved = [
                [int(d), int(q), int(min_rank[d, q])]
                for d in range(split, max_cards + 1)
                for q in range(qmax + 1)
                if min_rank[d, q] != _NO_RANK
            ]
            rec = {
                "prefix": [int(c) for c in prefix],
                "best_q": int(best_q),
                "classes": int(classes),
                "cards": max_cards,
                "achieved": achieved,
            }
            ckpt_fh.write(json.dumps(rec) + "\n")
            ckpt_fh.flush()
        if total_nodes > budget:
            raise SearchBudgetError(
                f"table walk exceeded {budget} nodes",
                nodes=total_nodes,
                checkpoint=str(ckpt_path) if ckpt_path else None,
            )

    try:
        if threads == 1 or len(pending) <= 1:
            for prefix in pending:
                consume(*run_subtree(prefix))
        else:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                for prefix, outcome in pool.map(run_subtree, pending):
                    consume(prefix, outcome)
    finally:
        if ckpt_fh is not None:
            ckpt_fh.close()

    entries = []
    for cards in range(1, max_cards + 1):
        for quads in range(quad_count_bound(cards) + 1):
            rank = int(merged[cards, quads])
            entries.append(
                SmallestDeckEntry(cards, quads, None if rank == _NO_RANK else rank)
            )
    return entries


@dataclass(frozen=True)
class ConjectureCheck:
    """Outcome of the reduction-conjecture scan at one (deck, cards) point.

    Quantifier reading, recorded for the output metadata: every size-l subset
    whose span rank exceeds ceil(log2 l) must have at most ``threshold``
    quads, where the threshold is the certified maximum for l-1 cards.
    """

    deck: DeckDim
    cards: int
    rank_cap: int
    threshold: int
    passed: bool
    counterexample: CardSet | None
    nodes_explored: int
    wall_time: float


def check_conjecture(
    deck: DeckDim | int,
    cards: int,
    *,
    threshold: int | None = None,
    budget: int | None = None,
) -> ConjectureCheck:
    """Scan every ``cards``-subset of the deck for a conjecture violation.

    A violation is a set with span rank above ceil(log2 cards), meaning it is
    not contained in any complete set of 2^ceil(log2 cards) cards, whose quad
    count exceeds the certified maximum for cards-1. The lexicographically
    first violation (if any) is returned verbatim.
    """
    deck = _as_deck(deck)
    if not 1 <= cards <= deck.size:
        raise ValueError(f"cannot pick {cards} cards from a deck of {deck.size}")
    budget = _resolve_budget(budget)
    rank_cap = (cards - 1).bit_length()
    if threshold is None:
        threshold = max_quads_exhaustive(deck, cards - 1, budget=budget).max_quads
    t0 = time.perf_counter()
    status, out, nodes = kernels.conjecture_dfs(
        deck.n, cards, rank_cap, threshold, _bound_remaining(cards), budget
    )
    wall = time.perf_counter() - t0
    if status == kernels.STATUS_FAULT:
        raise InternalFaultError("conjecture scan pair hits not divisible by 3")
    if status == kernels.STATUS_BUDGET:
        raise SearchBudgetError(
            f"conjecture scan at {cards} cards exceeded {budget} nodes",
            nodes=int(nodes),
        )
    counterexample = (
        CardSet.from_cards(deck, out) if status == kernels.STATUS_FOUND else None
    )
    return ConjectureCheck(
        deck=deck,
        cards=cards,
        rank_cap=rank_cap,
        threshold=int(threshold),
        passed=counterexample is None,
        counterexample=counterexample,
        nodes_explored=int(nodes),
        wall_time=wall,
    )


@dataclass(frozen=True)
class PrefixPackedCheck:
    """Whether the prefix set {0..l-1} attains the certified deck maximum and
    the recursive formula value at the same time."""

    deck: DeckDim
    cards: int
    passed: bool
    search_max: int
    prefix_quads: int
    formula_value: int
    witness: CardSet
    nodes_explored: int
    wall_time: float


def verify_prefix_packed(
    deck: DeckDim | int, cards: int, *, budget: int | None = None
) -> PrefixPackedCheck:
    """Certify that search max, prefix-set count, and formula agree at ``cards``."""
    deck = _as_deck(deck)
    result = max_quads_exhaustive(deck, cards, budget=budget)
    prefix_quads = count_quads(prefix_set(cards, deck))
    formula_value = packed_quad_count(cards)
    return PrefixPackedCheck(
        deck=deck,
        cards=cards,
        passed=result.max_quads == prefix_quads == formula_value,
        search_max=result.max_quads,
        prefix_quads=prefix_quads,
        formula_value=formula_value,
        witness=result.witness,
        nodes_explored=result.nodes_explored,
        wall_time=result.wall_time,
    )
