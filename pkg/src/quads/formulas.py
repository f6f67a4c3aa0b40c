"""Closed-form and recursive quad-count formulas and integer sequences.

The central object is the packed quad count: the (conjectured) maximum
number of quads among ``l`` cards, computed by a recursion that folds ``l``
against the next power of 2 using the complementary-set difference law.
All arithmetic is exact Python integers; every division that the algebra
says must be exact is checked and raises on a remainder.
"""

from __future__ import annotations

import threading
from math import comb

from .errors import InternalFaultError


def _exact_div(value: int, divisor: int, what: str) -> int:
    q, r = divmod(value, divisor)
    if r:
        raise InternalFaultError(f"{what}: {value} not divisible by {divisor}")
    return q


# memo table for the packed quad count, extended on demand under a lock and
# then only read, so it is safe to share across threads
_packed: list[int] = [0]
_packed_lock = threading.Lock()


def _fold_step(p: int, q: int) -> int:
    num = 3 * comb(p, 3) - q * comb(p, 2) + p * comb(q, 2) - 3 * comb(q, 3)
    return _exact_div(num, 12, f"fold step at sizes ({p}, {q})")


def packed_quad_count(size: int) -> int:
    """Maximum quad count among ``size`` cards (conjectured for size >= 9).

    Defined by value 0 at size 0 and, for p in (2^(k-1), 2^k], by folding
    onto the complementary size q = 2^k - p:

        value(p) = value(q) + (3*C(p,3) - q*C(p,2) + p*C(q,2) - 3*C(q,3)) / 12

    The division is exact; the memoized table is filled bottom-up.
    """
    if size < 0:
        raise ValueError(f"size must be non-negative, got {size}")
    if size >= len(_packed):
        with _packed_lock:
            while len(_packed) <= size:
                p = len(_packed)
                k = (p - 1).bit_length()  # smallest k with 2^k >= p
                q = (1 << k) - p
                _packed.append(_packed[q] + _fold_step(p, q))
    return _packed[size]


def packed_quad_table(max_size: int) -> list[int]:
    """Packed quad counts for every size 0..max_size, as a list."""
    if max_size < 0:
        raise ValueError(f"max_size must be non-negative, got {max_size}")
    packed_quad_count(max_size)
    return _packed[: max_size + 1]


def quad_count_bound(size: int) -> int:
    """Upper bound floor(C(size, 3) / 4) on the quad count of any set.

    Attained exactly by complete sets (power-of-2 sizes, where the division
    is exact).
    """
    if size < 0:
        raise ValueError(f"size must be non-negative, got {size}")
    return comb(size, 3) // 4


def complementary_difference(size_s: int, size_t: int) -> int:
    """Quad-count difference s - t between complementary sets of these sizes.

    The two sets partition a deck, so the sizes must add up to a power of 2.
    The difference depends on the sizes alone:

        (|S| - |T|) * (|S|^2 + |T|^2 - 3|S| - 3|T| + 2) / 24

    computed exactly, and cross-checked against the equivalent
    quarters-and-twelfths form.
    """
    if size_s < 0 or size_t < 0:
        raise ValueError("sizes must be non-negative")
    total = size_s + size_t
    if total <= 0 or total & (total - 1):
        raise ValueError(f"sizes must partition a deck; {size_s}+{size_t} is not a power of 2")
    diff = _exact_div(
        (size_s - size_t) * (size_s**2 + size_t**2 - 3 * size_s - 3 * size_t + 2),
        24,
        "complementary difference",
    )
    alt = _exact_div(
        3 * (comb(size_s, 3) - comb(size_t, 3))
        + size_s * comb(size_t, 2)
        - size_t * comb(size_s, 2),
        12,
        "complementary difference (expanded form)",
    )
    if diff != alt:
        raise InternalFaultError(f"complementary difference forms disagree: {diff} vs {alt}")
    return diff


def moser_de_bruijn(n: int) -> int:
    """Moser-de Bruijn sequence A000695: write n in binary, read in base 4."""
    if n < 0:
        raise ValueError(f"index must be non-negative, got {n}")
    out = 0
    shift = 0
    while n:
        out |= (n & 1) << shift
        n >>= 1
        shift += 2
    return out


def a213673(n: int) -> int:
    """OEIS A213673: (n^2 - A000695(n)) / 4, an exact division."""
    if n < 0:
        raise ValueError(f"index must be non-negative, got {n}")
    return _exact_div(n * n - moser_de_bruijn(n), 4, "a213673")


def partial_difference(n: int) -> int:
    """Step of the packed quad count: value(n+1) - value(n)."""
    return packed_quad_count(n + 1) - packed_quad_count(n)


def hyperplane_minus_point(k: int) -> int:
    """Quad count of a 2^k-card complete set with one card removed.

    With l = 2^k - 1 this is l*(l-1)*(l-3)/24 and agrees with the packed
    quad count at l.
    """
    if k < 1:
        raise ValueError(f"dimension must be >= 1, got {k}")
    size = (1 << k) - 1
    return _exact_div(size * (size - 1) * (size - 3), 24, "hyperplane minus point")


# CLI sequence registry: name -> (first index, term function)
SEQUENCES = {
    "P": (0, partial_difference),
    "A000695": (0, moser_de_bruijn),
    "A213673": (0, a213673),
    "BOUND": (1, quad_count_bound),
    "HYPERPLANE_MINUS_POINT": (1, hyperplane_minus_point),
}


def sequence_terms(name: str, count: int) -> list[int]:
    """First ``count`` terms of a named sequence, from its natural start index."""
    if name not in SEQUENCES:
        raise ValueError(f"unknown sequence {name!r}; choose from {sorted(SEQUENCES)}")
    if count < 0:
        raise ValueError(f"count must be non-negative, got {count}")
    start, fn = SEQUENCES[name]
    return [fn(i) for i in range(start, start + count)]
