"""Numba-compiled hot kernels.

All kernels operate on plain numpy arrays of int64 card values so they stay
independent of the object layer. The pure fallbacks in ``_kernels_numpy``
implement the same signatures; ``quads._backend`` picks one of the two.

Search kernels return a status code instead of raising:
0 = completed, 1 = node budget exceeded, 2 = internal consistency fault,
3 = target found (conjecture scan only).
"""

from __future__ import annotations

import numpy as np
from numba import njit

STATUS_OK = 0
STATUS_BUDGET = 1
STATUS_FAULT = 2
STATUS_FOUND = 3


@njit(cache=True, nogil=True)
def pair_xor_collisions(cards, n):
    """Sum of C(m_x, 2) over pair-xor multiplicities m_x; 3x the quad count.

    Uses a flat bucket array for decks up to 2^16 and a sort-and-run-count
    pass for wider decks.
    """
    m = cards.shape[0]
    if m < 4:
        return np.int64(0)
    total = np.int64(0)
    if n <= 16:
        buckets = np.zeros(1 << n, dtype=np.int64)
        for i in range(m):
            ci = cards[i]
            for j in range(i + 1, m):
                buckets[ci ^ cards[j]] += 1
        for x in range(buckets.shape[0]):
            b = buckets[x]
            total += b * (b - 1) // 2
        return total
    npairs = m * (m - 1) // 2
    xs = np.empty(npairs, dtype=np.int64)
    k = 0
    for i in range(m):
        ci = cards[i]
        for j in range(i + 1, m):
            xs[k] = ci ^ cards[j]
            k += 1
    xs.sort()
    run = np.int64(1)
    for i in range(1, npairs):
        if xs[i] == xs[i - 1]:
            run += 1
        else:
            total += run * (run - 1) // 2
            run = 1
    total += run * (run - 1) // 2
    return total


@njit(cache=True, nogil=True)
def added_quad_hits(cards, member, c):
    """Pairs {a, b} of the set with a ^ b ^ c also in the set; 3x new quads."""
    m = cards.shape[0]
    hits = np.int64(0)
    for i in range(m):
        x = cards[i] ^ c
        for j in range(i + 1, m):
            hits += member[x ^ cards[j]]
    return hits


@njit(cache=True, nogil=True)
def xor_histogram_pairs(cards, n):
    """Histogram over [0, 2^n) of xors of unordered pairs of ``cards``."""
    hist = np.zeros(1 << n, dtype=np.int64)
    m = cards.shape[0]
    for i in range(m):
        ci = cards[i]
        for j in range(i + 1, m):
            hist[ci ^ cards[j]] += 1
    return hist


@njit(cache=True, nogil=True)
def xor_histogram_cross(left, right, n):
    """Histogram over [0, 2^n) of xors of pairs taking one card per side."""
    hist = np.zeros(1 << n, dtype=np.int64)
    for i in range(left.shape[0]):
        li = left[i]
        for j in range(right.shape[0]):
            hist[li ^ right[j]] += 1
    return hist


@njit(cache=True, nogil=True)
def max_quads_dfs(n, ell, bound_rem, budget):
    """Branch-and-bound maximum quad count over ell-card subsets of a 2^n deck.

    Depth-first in increasing card order; a child is skipped when its quad
    count plus ``bound_rem[depth+1]`` cannot strictly beat the best found so
    far, which also makes the recorded witness the lexicographically smallest
    maximizer. Returns (status, best, witness, nodes).
    """
    deck = 1 << n
    chosen = np.zeros(ell, dtype=np.int64)
    delta = np.zeros(ell, dtype=np.int64)
    cand = np.zeros(ell + 1, dtype=np.int64)
    witness = np.zeros(ell, dtype=np.int64)
    pair_hist = np.zeros(deck, dtype=np.int64)
    member = np.zeros(deck, dtype=np.uint8)
    best = np.int64(-1)
    cnt = np.int64(0)
    nodes = np.int64(0)
    status = STATUS_OK
    depth = 0
    cand[0] = 0
    while True:
        if depth == ell:
            if cnt > best:
                best = cnt
                for i in range(ell):
                    witness[i] = chosen[i]
        else:
            c = cand[depth]
            if c <= deck - (ell - depth):
                cand[depth] = c + 1
                raw = np.int64(0)
                for i in range(depth):
                    raw += pair_hist[chosen[i] ^ c]
                if raw % 3 != 0:
                    status = STATUS_FAULT
                    break
                dq = raw // 3
                if cnt + dq + bound_rem[depth + 1] < best:
                    continue
                nodes += 1
                if nodes > budget:
                    status = STATUS_BUDGET
                    break
                for i in range(depth):
                    pair_hist[chosen[i] ^ c] += 1
                member[c] = 1
                chosen[depth] = c
                delta[depth] = dq
                cnt += dq
                cand[depth + 1] = c + 1
                depth += 1
                continue
        depth -= 1
        if depth < 0:
            break
        cc = chosen[depth]
        member[cc] = 0
        for i in range(depth):
            pair_hist[chosen[i] ^ cc] -= 1
        cnt -= delta[depth]
    return status, best, witness, nodes


@njit(cache=True, nogil=True)
def conjecture_dfs(n, ell, rank_cap, threshold, bound_rem, budget):
    """Scan ell-card subsets of a 2^n deck for a set whose span rank exceeds
    ``rank_cap`` while its quad count exceeds ``threshold``.

    Subsets are visited in lexicographic order and a subtree is skipped only
    when no extension can push the quad count above the threshold, so the
    first hit returned is the lexicographically smallest one.
    Returns (status, counterexample, nodes).
    """
    deck = 1 << n
    chosen = np.zeros(ell, dtype=np.int64)
    delta = np.zeros(ell, dtype=np.int64)
    cand = np.zeros(ell + 1, dtype=np.int64)
    out = np.zeros(ell, dtype=np.int64)
    pair_hist = np.zeros(deck, dtype=np.int64)
    member = np.zeros(deck, dtype=np.uint8)
    basis = np.zeros(n + 1, dtype=np.int64)
    added_bit = np.full(ell, -1, dtype=np.int64)
    rank = 0
    cnt = np.int64(0)
    nodes = np.int64(0)
    status = STATUS_OK
    depth = 0
    cand[0] = 0
    while True:
        if depth == ell:
            if rank > rank_cap and cnt > threshold:
                for i in range(ell):
                    out[i] = chosen[i]
                status = STATUS_FOUND
                break
        else:
            c = cand[depth]
            if c <= deck - (ell - depth):
                cand[depth] = c + 1
                raw = np.int64(0)
                for i in range(depth):
                    raw += pair_hist[chosen[i] ^ c]
                if raw % 3 != 0:
                    status = STATUS_FAULT
                    break
                dq = raw // 3
                if cnt + dq + bound_rem[depth + 1] <= threshold:
                    continue
                nodes += 1
                if nodes > budget:
                    status = STATUS_BUDGET
                    break
                for i in range(depth):
                    pair_hist[chosen[i] ^ c] += 1
                member[c] = 1
                chosen[depth] = c
                delta[depth] = dq
                cnt += dq
                if depth > 0:
                    v = c ^ chosen[0]
                    while v != 0:
                        bit = 0
                        vv = v
                        while vv > 1:
                            vv >>= 1
                            bit += 1
                        if basis[bit] != 0:
                            v ^= basis[bit]
                        else:
                            basis[bit] = v
                            added_bit[depth] = bit
                            rank += 1
                            break
                cand[depth + 1] = c + 1
                depth += 1
                continue
        depth -= 1
        if depth < 0:
            break
        cc = chosen[depth]
        member[cc] = 0
        for i in range(depth):
            pair_hist[chosen[i] ^ cc] -= 1
        cnt -= delta[depth]
        if added_bit[depth] >= 0:
            basis[added_bit[depth]] = 0
            rank -= 1
            added_bit[depth] = -1
    return status, out, nodes


@njit(cache=True, nogil=True)
def canonical_subtree(prefix, ell, qmax, budget):
    """Walk canonical extensions of ``prefix`` up to ``ell`` cards.

    A canonical sequence starts at 0 and each later card is either an unused
    value inside the span of the earlier cards (always the interval
    [0, 2^rank) because fresh directions enter as successive basis vectors)
    or the fresh vector 2^rank itself.

    Records min_rank[d, q] = least span rank over visited length-d sequences
    with q quads (127 = none seen). ``classes`` counts full-length sequences,
    ``best_q`` their largest quad count.
    Returns (status, min_rank, classes, best_q, nodes).
    """
    d0 = prefix.shape[0]
    space = 1 << (ell - 1) if ell > 1 else 1
    cards = np.zeros(ell, dtype=np.int64)
    delta = np.zeros(ell, dtype=np.int64)
    fresh = np.zeros(ell, dtype=np.uint8)
    cand = np.zeros(ell + 1, dtype=np.int64)
    member = np.zeros(space, dtype=np.uint8)
    pair_hist = np.zeros(space, dtype=np.int64)
    min_rank = np.full((ell + 1, qmax + 1), 127, dtype=np.int8)
    classes = np.int64(0)
    best_q = np.int64(-1)
    nodes = np.int64(0)
    status = STATUS_OK

    rank = 0
    cnt = np.int64(0)
    cards[0] = prefix[0]
    member[prefix[0]] = 1
    for t in range(1, d0):
        c = prefix[t]
        raw = np.int64(0)
        for i in range(t):
            raw += pair_hist[cards[i] ^ c]
        if raw % 3 != 0:
            return STATUS_FAULT, min_rank, classes, best_q, nodes
        cnt += raw // 3
        for i in range(t):
            pair_hist[cards[i] ^ c] += 1
        cards[t] = c
        member[c] = 1
        if c == (1 << rank):
            fresh[t] = 1
            rank += 1

    if cnt > qmax:
        return STATUS_FAULT, min_rank, classes, best_q, nodes
    if rank < min_rank[d0, cnt]:
        min_rank[d0, cnt] = rank
    if d0 == ell:
        return STATUS_OK, min_rank, 1, cnt, nodes

    depth = d0
    cand[d0] = 0
    while True:
        if depth == ell:
            classes += 1
            if cnt > best_q:
                best_q = cnt
        else:
            top = 1 << rank
            v = cand[depth]
            while v < top and member[v] == 1:
                v += 1
            if v <= top:
                cand[depth] = v + 1
                raw = np.int64(0)
                for i in range(depth):
                    raw += pair_hist[cards[i] ^ v]
                if raw % 3 != 0:
                    status = STATUS_FAULT
                    break
                nodes += 1
                if nodes > budget:
                    status = STATUS_BUDGET
                    break
                for i in range(depth):
                    pair_hist[cards[i] ^ v] += 1
                member[v] = 1
                cards[depth] = v
                delta[depth] = raw // 3
                cnt += raw // 3
                if v == top:
                    fresh[depth] = 1
                    rank += 1
                else:
                    fresh[depth] = 0
                depth += 1
                if cnt > qmax:
                    status = STATUS_FAULT
                    break
                if rank < min_rank[depth, cnt]:
                    min_rank[depth, cnt] = np.int8(rank)
                cand[depth] = 0
                continue
        depth -= 1
        if depth < d0:
            break
        cc = cards[depth]
        member[cc] = 0
        for i in range(depth):
            pair_hist[cards[i] ^ cc] -= 1
        cnt -= delta[depth]
        if fresh[depth] == 1:
            rank -= 1
            fresh[depth] = 0
    return status, min_rank, classes, best_q, nodes
