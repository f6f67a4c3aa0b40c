"""Pure numpy / plain-Python fallbacks for the numba kernels.

Same signatures and status codes as ``_kernels_numba``. The counting kernels
are vectorized with numpy; the tree searches are plain Python (a DFS does not
vectorize) and favor clarity over speed while staying within the documented
budgets at desk scale.
"""

from __future__ import annotations

import numpy as np

STATUS_OK = 0
STATUS_BUDGET = 1
STATUS_FAULT = 2
STATUS_FOUND = 3

_OUTER_LIMIT = 1024  # above this, histogram row by row instead of m x m outer


def pair_xor_collisions(cards, n):
    """Sum of C(m_x, 2) over pair-xor multiplicities m_x; 3x the quad count."""
    m = cards.shape[0]
    if m < 4:
        return 0
    if m <= _OUTER_LIMIT:
        xors = cards[:, None] ^ cards[None, :]
        iu = np.triu_indices(m, 1)
        hist = np.bincount(xors[iu], minlength=1 << n)
    else:
        hist = np.zeros(1 << n, dtype=np.int64)
        for i in range(m - 1):
            hist += np.bincount(cards[i] ^ cards[i + 1 :], minlength=1 << n)
    hist = hist.astype(np.int64)
    return int((hist * (hist - 1) // 2).sum())


def added_quad_hits(cards, member, c):
    """Pairs {a, b} of the set with a ^ b ^ c also in the set; 3x new quads."""
    m = cards.shape[0]
    if m < 2:
        return 0
    d = cards[:, None] ^ cards[None, :] ^ c
    iu = np.triu_indices(m, 1)
    return int(member[d[iu]].astype(np.int64).sum())


def xor_histogram_pairs(cards, n):
    """Histogram over [0, 2^n) of xors of unordered pairs of ``cards``."""
    hist = np.zeros(1 << n, dtype=np.int64)
    m = cards.shape[0]
    for i in range(m - 1):
        hist += np.bincount(cards[i] ^ cards[i + 1 :], minlength=1 << n)
    return hist


def xor_histogram_cross(left, right, n):
    """Histogram over [0, 2^n) of xors of pairs taking one card per side."""
    hist = np.zeros(1 << n, dtype=np.int64)
    if right.shape[0] == 0:
        return hist
    for i in range(left.shape[0]):
        hist += np.bincount(left[i] ^ right, minlength=1 << n)
    return hist


def max_quads_dfs(n, ell, bound_rem, budget):
    """Branch-and-bound maximum quad count; see the numba twin for contract."""
    deck = 1 << n
    chosen = [0] * ell
    delta = [0] * ell
    pair_hist = [0] * deck
    member = bytearray(deck)
    witness = np.zeros(ell, dtype=np.int64)
    best = -1
    cnt = 0
    nodes = 0
    status = STATUS_OK

    def rec(depth):
        nonlocal best, cnt, nodes, status
        if depth == ell:
            if cnt > best:
                best = cnt
                witness[:] = chosen
            return
        for c in range(chosen[depth - 1] + 1 if depth else 0, deck - (ell - depth) + 1):
            raw = 0
            for i in range(depth):
                raw += pair_hist[chosen[i] ^ c]
            if raw % 3 != 0:
                status = STATUS_FAULT
                return
            dq = raw // 3
            if cnt + dq + bound_rem[depth + 1] < best:
                continue
            nodes += 1
            if nodes > budget:
                status = STATUS_BUDGET
                return
            for i in range(depth):
                pair_hist[chosen[i] ^ c] += 1
            member[c] = 1
            chosen[depth] = c
            delta[depth] = dq
            cnt += dq
            rec(depth + 1)
            cnt -= dq
            member[c] = 0
            for i in range(depth):
                pair_hist[chosen[i] ^ c] -= 1
            if status != STATUS_OK:
                return

    rec(0)
    return status, best, witness, nodes


def conjecture_dfs(n, ell, rank_cap, threshold, bound_rem, budget):
    """Lex-first ell-subset with span rank > rank_cap and quads > threshold."""
    deck = 1 << n
    chosen = [0] * ell
    pair_hist = [0] * deck
    member = bytearray(deck)
    basis = [0] * (n + 1)
    out = np.zeros(ell, dtype=np.int64)
    cnt = 0
    rank = 0
    nodes = 0
    status = STATUS_OK

    def rec(depth):
        nonlocal cnt, rank, nodes, status
        if depth == ell:
            if rank > rank_cap and cnt > threshold:
                out[:] = chosen
                status = STATUS_FOUND
            return
        for c in range(chosen[depth - 1] + 1 if depth else 0, deck - (ell - depth) + 1):
            raw = 0
            for i in range(depth):
                raw += pair_hist[chosen[i] ^ c]
            if raw % 3 != 0:
                status = STATUS_FAULT
                return
            dq = raw // 3
            if cnt + dq + bound_rem[depth + 1] <= threshold:
                continue
            nodes += 1
            if nodes > budget:
                status = STATUS_BUDGET
                return
            for i in range(depth):
                pair_hist[chosen[i] ^ c] += 1
            member[c] = 1
            chosen[depth] = c
            cnt += dq
            added = -1
            if depth > 0:
                v = c ^ chosen[0]
                while v:
                    bit = v.bit_length() - 1
                    if basis[bit]:
                        v ^= basis[bit]
                    else:
                        basis[bit] = v
                        added = bit
                        rank += 1
                        break
            rec(depth + 1)
            if added >= 0:
                basis[added] = 0
                rank -= 1
            cnt -= dq
            member[c] = 0
            for i in range(depth):
                pair_hist[chosen[i] ^ c] -= 1
            if status != STATUS_OK:
                return

    rec(0)
    return status, out, nodes


def canonical_subtree(prefix, ell, qmax, budget):
    """Walk canonical extensions of ``prefix``; see the numba twin for contract."""
    d0 = prefix.shape[0]
    space = 1 << (ell - 1) if ell > 1 else 1
    cards = [0] * ell
    pair_hist = [0] * space
    member = bytearray(space)
    min_rank = np.full((ell + 1, qmax + 1), 127, dtype=np.int8)
    classes = 0
    best_q = -1
    nodes = 0
    status = STATUS_OK

    rank = 0
    cnt = 0
    cards[0] = int(prefix[0])
    member[cards[0]] = 1
    for t in range(1, d0):
        c = int(prefix[t])
        raw = 0
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
            rank += 1

    if cnt > qmax:
        return STATUS_FAULT, min_rank, classes, best_q, nodes
    if rank < min_rank[d0, cnt]:
        min_rank[d0, cnt] = rank
    if d0 == ell:
        return STATUS_OK, min_rank, 1, cnt, nodes

    def rec(depth):
        nonlocal rank, cnt, classes, best_q, nodes, status
        if depth == ell:
            classes += 1
            if cnt > best_q:
                best_q = cnt
            return
        top = 1 << rank
        for v in range(top + 1):
            if v < top and member[v]:
                continue
            raw = 0
            for i in range(depth):
                raw += pair_hist[cards[i] ^ v]
            if raw % 3 != 0:
                status = STATUS_FAULT
                return
            nodes += 1
            if nodes > budget:
                status = STATUS_BUDGET
                return
            for i in range(depth):
                pair_hist[cards[i] ^ v] += 1
            member[v] = 1
            cards[depth] = v
            dq = raw // 3
            cnt += dq
            if v == top:
                rank += 1
            if cnt > qmax:
                status = STATUS_FAULT
                return
            if rank < min_rank[depth + 1, cnt]:
                min_rank[depth + 1, cnt] = rank
            rec(depth + 1)
            if v == top:
                rank -= 1
            cnt -= dq
            member[v] = 0
            for i in range(depth):
                pair_hist[cards[i] ^ v] -= 1
            if status != STATUS_OK:
                return

    rec(d0)
    return status, min_rank, classes, best_q, nodes
