"""Command-line harness: tables, sequences, counting, verification suites.

Exit codes: 0 all good, 1 verified failure (a counterexample was found and
emitted), 2 usage error, 3 resource budget exceeded or interrupted.

JSON output is a stable envelope {command, params, results, meta} validated
by schemas/output.v1.json; md/csv/json emissions of one run carry identical
values. Randomized suites require an explicit --seed. The env var
QUADS_BUDGET_NODES overrides the default search node budget.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from math import comb
from random import Random

from . import __version__
from .core import (
    CardSet,
    DeckDim,
    count_quads,
    count_quads_oracle,
    cross_tally,
    random_subset,
    random_subset_of_size,
)
from .errors import CapacityError, SearchBudgetError
from .formulas import (
    SEQUENCES,
    complementary_difference,
    packed_quad_table,
    sequence_terms,
)
from .gf2 import affine_apply, random_affine
from .search import (
    check_conjecture,
    max_quads_exhaustive,
    smallest_deck_table,
    verify_prefix_packed,
)

RANDOMIZED_SUITES = {"identities", "oracle", "affine"}
ALL_SUITES = ("identities", "oracle", "affine", "conjecture", "prefix")


def _record(command: str, params: dict, results, *, seed=None, wall_time: float,
            certified: bool, **meta_extra) -> dict:
    meta = {
        "version": __version__,
        "seed": seed,
        "wall_time": round(wall_time, 6),
        "certified": certified,
    }
    meta.update(meta_extra)
    return {"command": command, "params": params, "results": results, "meta": meta}


def _emit(record: dict, fmt: str, render_text) -> None:
    if fmt == "json":
        print(json.dumps(record, indent=2))
    else:
        render_text(record)


# ---------------------------------------------------------------------------
# count


def _parse_cards(text: str) -> list[int]:
    try:
        cards = [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise ValueError(f"malformed card list: {text!r}")
    if len(set(cards)) != len(cards):
        raise ValueError("card list contains duplicates")
    return cards


def cmd_count(args) -> int:
    t0 = time.perf_counter()
    deck = DeckDim(args.deck_bits)
    cards = _parse_cards(args.cards)
    s = CardSet.from_cards(deck, cards)
    quads = count_quads(s)
    record = _record(
        "count",
        {"deck_bits": args.deck_bits, "cards": cards},
        {"quads": quads},
        wall_time=time.perf_counter() - t0,
        certified=True,
    )
    _emit(record, args.format, lambda r: print(r["results"]["quads"]))
    return 0


# ---------------------------------------------------------------------------
# table-q


def cmd_table_q(args) -> int:
    t0 = time.perf_counter()
    if args.max < 0 or args.max > 1 << 20:
        raise ValueError(f"--max must be in [0, 2^20], got {args.max}")
    values = packed_quad_table(args.max)
    record = _record(
        "table-q",
        {"max": args.max, "format": args.format},
        values,
        wall_time=time.perf_counter() - t0,
        certified=False,
        note="conjectured maximum for sizes >= 9; certify with `verify --suite prefix`",
    )

    def render(rec):
        if args.format == "csv":
            for size, v in enumerate(rec["results"]):
                print(f"{size},{v}")
        else:
            print("| cards | max quads |")
            print("|------:|----------:|")
            for size, v in enumerate(rec["results"]):
                print(f"| {size} | {v} |")

    _emit(record, args.format, render)
    return 0


# ---------------------------------------------------------------------------
# table-d


def _deck_grid(entries, max_cards: int):
    """Rectangular rows of smallest deck sizes, None for unrealizable cells,
    trimmed at the last realizable quad column."""
    exponent = {(e.cards, e.quads): e.deck_exponent for e in entries}
    trim = max(e.quads for e in entries if e.deck_exponent is not None)
    rows = []
    for cards in range(1, max_cards + 1):
        row = []
        for quads in range(trim + 1):
            exp = exponent.get((cards, quads))
            row.append(None if exp is None else 1 << exp)
        rows.append({"cards": cards, "smallest_deck": row})
    return rows


def cmd_table_d(args) -> int:
    t0 = time.perf_counter()
    entries = smallest_deck_table(
        args.max_cards, checkpoint=args.checkpoint, threads=args.threads
    )
    rows = _deck_grid(entries, args.max_cards)
    record = _record(
        "table-d",
        {
            "max_cards": args.max_cards,
            "threads": args.threads,
            "checkpoint": args.checkpoint,
            "format": args.format,
        },
        rows,
        wall_time=time.perf_counter() - t0,
        certified=True,
    )

    def render(rec):
        if args.format == "csv":
            for row in rec["results"]:
                cells = ["" if v is None else str(v) for v in row["smallest_deck"]]
                print(",".join([str(row["cards"])] + cells))
        else:
            width = len(rec["results"][-1]["smallest_deck"])
            print("| cards \\ quads | " + " | ".join(str(q) for q in range(width)) + " |")
            print("|---" * (width + 1) + "|")
            for row in rec["results"]:
                cells = ["_" if v is None else str(v) for v in row["smallest_deck"]]
                print("| " + " | ".join([str(row["cards"])] + cells) + " |")

    _emit(record, args.format, render)
    return 0


# ---------------------------------------------------------------------------
# seq


def cmd_seq(args) -> int:
    t0 = time.perf_counter()
    terms = sequence_terms(args.name, args.count)
    record = _record(
        "seq",
        {"name": args.name, "count": args.count},
        terms,
        wall_time=time.perf_counter() - t0,
        certified=False,
    )
    _emit(record, args.format, lambda r: print(" ".join(str(t) for t in r["results"])))
    return 0


# ---------------------------------------------------------------------------
# verify


def _suite_identities(seed: int, deck_bits: int):
    rng = Random(seed)
    deck = DeckDim(deck_bits)
    for i in range(1000):
        s = random_subset(deck, rng)
        t = s.complement()
        got = count_quads(s) - count_quads(t)
        want = complementary_difference(len(s), len(t))
        if got != want:
            yield ("complement-difference", False,
                   {"set": s.to_json_dict(), "got": got, "want": want})
            return
    yield ("complement-difference", True, {"checks": 1000, "deck_bits": deck_bits})

    tally_deck = DeckDim(4)
    for i in range(200):
        s = random_subset(tally_deck, rng)
        tl = cross_tally(s)
        ns, nt = len(s), tally_deck.size - len(s)
        eqs = [
            ("triples-outside", comb(nt, 3), 4 * tl.q0 + tl.q1),
            ("two-outside-one-in", ns * comb(nt, 2), 3 * tl.q1 + 2 * tl.q2),
            ("two-inside-one-out", nt * comb(ns, 2), 2 * tl.q2 + 3 * tl.q3),
            ("triples-inside", comb(ns, 3), tl.q3 + 4 * tl.q4),
        ]
        for name, lhs, rhs in eqs:
            if lhs != rhs:
                yield ("cross-tally-" + name, False,
                       {"set": s.to_json_dict(), "lhs": lhs, "rhs": rhs})
                return
    yield ("cross-tally-identities", True, {"checks": 200, "deck_bits": 4})


def _suite_oracle(seed: int):
    rng = Random(seed)
    for i in range(1000):
        n = rng.randint(2, 8)
        size = rng.randint(0, min(12, 1 << n))
        s = random_subset_of_size(DeckDim(n), size, rng)
        fast, slow = count_quads(s), count_quads_oracle(s)
        if fast != slow:
            yield ("oracle-agreement", False,
                   {"set": s.to_json_dict(), "fast": fast, "oracle": slow})
            return
    yield ("oracle-agreement", True, {"checks": 1000})


def _suite_affine(seed: int):
    rng = Random(seed)
    for i in range(1000):
        n = 4 + i % 3
        s = random_subset(DeckDim(n), rng)
        t = random_affine(n, rng)
        before, after = count_quads(s), count_quads(affine_apply(t, s))
        if before != after:
            yield ("affine-invariance", False,
                   {"set": s.to_json_dict(), "matrix": list(t.matrix.rows),
                    "translation": t.translation, "before": before, "after": after})
            return
    yield ("affine-invariance", True, {"checks": 1000, "dims": [4, 5, 6]})


_CONJECTURE_READING = (
    "every size-l subset with span rank > ceil(log2 l) has at most the "
    "certified maximum quad count of l-1 cards"
)


def _suite_conjecture(deck_bits: int):
    deck = DeckDim(deck_bits)
    prev_max = 0  # certified maximum for cards-1, starting from the empty set
    for cards in range(1, deck.size + 1):
        check = check_conjecture(deck, cards, threshold=prev_max)
        if not check.passed:
            yield (f"conjecture-{cards}-cards", False,
                   {"counterexample": check.counterexample.to_json_dict(),
                    "threshold": check.threshold, "rank_cap": check.rank_cap,
                    "interpretation": _CONJECTURE_READING})
            return
        prev_max = max_quads_exhaustive(deck, cards).max_quads
    yield ("conjecture-scan", True,
           {"deck_bits": deck_bits, "cards": deck.size,
            "interpretation": _CONJECTURE_READING})


def _suite_prefix(deck_bits: int):
    deck = DeckDim(deck_bits)
    for cards in range(deck.size + 1):
        check = verify_prefix_packed(deck, cards)
        if not check.passed:
            yield (f"prefix-packed-{cards}-cards", False,
                   {"search_max": check.search_max,
                    "prefix_quads": check.prefix_quads,
                    "formula_value": check.formula_value,
                    "witness": check.witness.to_json_dict()})
            return
    yield ("prefix-packed", True, {"deck_bits": deck_bits, "cards": deck.size})


def cmd_verify(args) -> int:
    suites = ALL_SUITES if args.suite == "all" else (args.suite,)
    needs_seed = bool(RANDOMIZED_SUITES.intersection(suites))
    if needs_seed and args.seed is None:
        print("error: this suite is randomized; pass an explicit --seed", file=sys.stderr)
        return 2
    t0 = time.perf_counter()
    checks = []
    for suite in suites:
        if suite == "identities":
            checks += list(_suite_identities(args.seed, args.deck_bits or 6))
        elif suite == "oracle":
            checks += list(_suite_oracle(args.seed))
        elif suite == "affine":
            checks += list(_suite_affine(args.seed))
        elif suite == "conjecture":
            checks += list(_suite_conjecture(args.deck_bits or 4))
        elif suite == "prefix":
            checks += list(_suite_prefix(args.deck_bits or 4))
    failed = [c for c in checks if not c[1]]
    exhaustive = not RANDOMIZED_SUITES.issuperset(suites)
    record = _record(
        "verify",
        {"suite": args.suite, "seed": args.seed, "deck_bits": args.deck_bits},
        {
            "checks": [{"name": n, "passed": p, "detail": d} for n, p, d in checks],
            "failures": [n for n, p, _ in failed],
        },
        seed=args.seed,
        wall_time=time.perf_counter() - t0,
        certified=bool(exhaustive and not failed),
    )

    def render(rec):
        for c in rec["results"]["checks"]:
            print(f"{'PASS' if c['passed'] else 'FAIL'} {c['name']}")
        if failed:
            # machine-readable counterexample for scripted consumers
            print(json.dumps(rec))
        else:
            print("PASS all checks")

    _emit(record, args.format, render)
    return 1 if failed else 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quads",
        description="Quad counting, formulas, tables, and verification suites",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="count quads in an explicit card set")
    p.add_argument("--deck-bits", type=int, required=True, help="deck exponent n")
    p.add_argument("--cards", type=str, required=True, help="comma-separated card labels")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("table-q", help="max quad count table by set size")
    p.add_argument("--max", type=int, required=True, help="largest set size")
    p.add_argument("--format", choices=("md", "csv", "json"), default="md")
    p.set_defaults(func=cmd_table_q)

    p = sub.add_parser("table-d", help="smallest deck realizing each (cards, quads)")
    p.add_argument("--max-cards", type=int, required=True)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--checkpoint", type=str, default=None,
                   help="JSON-lines checkpoint; completed subtrees are skipped on rerun")
    p.add_argument("--format", choices=("md", "csv", "json"), default="md")
    p.set_defaults(func=cmd_table_d)

    p = sub.add_parser("seq", help="print a named integer sequence")
    p.add_argument("--name", choices=tuple(SEQUENCES), required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_seq)

    p = sub.add_parser("verify", help="run a property/verification suite")
    p.add_argument("--suite", choices=ALL_SUITES + ("all",), required=True)
    p.add_argument("--seed", type=int, default=None,
                   help="seed for randomized suites (required for them)")
    p.add_argument("--deck-bits", type=int, default=None)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SearchBudgetError as exc:
        print(f"error: {exc} (nodes={exc.nodes})", file=sys.stderr)
        if exc.checkpoint:
            print(f"progress checkpointed in {exc.checkpoint}", file=sys.stderr)
        return 3
    except KeyboardInterrupt:
        print("interrupted; checkpoint flushed", file=sys.stderr)
        return 3
    except (ValueError, CapacityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
