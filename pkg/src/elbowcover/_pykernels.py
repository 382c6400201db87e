"""Pure-Python search kernels.

Reference implementation of everything in ``_ckernels.pyx``.  Both backends
must return identical results for identical inputs, including the local
search trajectory (same RNG, same integer costs, same acceptance rule).
"""
from __future__ import annotations

from typing import Sequence

MASK64 = (1 << 64) - 1

ELBOW = 0
IN_ELBOW = 1


def orientation_masks(pair_e: Sequence[int], pair_f: Sequence[int],
                      flip_e: Sequence[int], flip_f: Sequence[int],
                      kind: int, start: int, count: int) -> list[int]:
    """Coverage bitmask for each orientation code in ``[start, start + count)``.

    Bit ``e`` of a code reverses edge ``e`` (set: head is the lower endpoint).
    Edge ``e`` points into the shared vertex of pair ``p`` iff
    ``bit_e ^ flip_e[p]``.  Bit ``p`` of the result is set when pair ``p``
    forms an elbow (kind 0) or an in-elbow (kind 1).
    """
    spec = list(zip(pair_e, pair_f, flip_e, flip_f))
    out = []
    for code in range(start, start + count):
        mask = 0
        for p, (e, f, fe, ff) in enumerate(spec):
            ie = ((code >> e) & 1) ^ fe
            jf = ((code >> f) & 1) ^ ff
            if (ie & jf) if kind == IN_ELBOW else (ie == jf):
                mask |= 1 << p
        out.append(mask)
    return out


def reduce_masks(masks: Sequence[int]) -> list[int]:
    """Distinct masks that are not strictly contained in another mask."""
    uniq = sorted(set(masks), key=lambda x: (-bin(x).count("1"), x))
    kept: list[int] = []
    for m in uniq:
        if not any(m & k == m for k in kept):
            kept.append(m)
    return kept


def min_cover(masks: Sequence[int], full: int, kmax: int) -> int:
    """Fewest masks whose union is ``full``; -1 if more than ``kmax`` are needed."""
    if full == 0:
        return 0
    masks = reduce_masks([m & full for m in masks])
    if not masks:
        return -1
    maxpop = max(bin(m).count("1") for m in masks)
    by_bit: dict[int, list[int]] = {}

    def covering(bit: int) -> list[int]:
        if bit not in by_bit:
            by_bit[bit] = [m for m in masks if m >> bit & 1]
        return by_bit[bit]

    def search(uncovered: int, left: int) -> bool:
        if uncovered == 0:
            return True
        if left == 0 or bin(uncovered).count("1") > left * maxpop:
            return False
        bit = (uncovered & -uncovered).bit_length() - 1
        for m in covering(bit):
            if search(uncovered & ~m, left - 1):
                return True
        return False

    for k in range(1, kmax + 1):
        if search(full, k):
            return k
    return -1


# -- order families -------------------------------------------------------------

def _above_masks(orders: Sequence[Sequence[int]]) -> list[list[int]]:
    k = len(orders)
    n = len(orders[0]) if k else 0
    pos = [[0] * n for _ in range(k)]
    for i, o in enumerate(orders):
        for p, x in enumerate(o):
            pos[i][x] = p
    M = [[0] * n for _ in range(n)]
    for a in range(n):
        row = M[a]
        for b in range(n):
            bits = 0
            for i in range(k):
                if pos[i][a] > pos[i][b]:
                    bits |= 1 << i
            row[b] = bits
    return M


def family_cost(orders: Sequence[Sequence[int]], mixing: bool) -> int:
    """Number of (a, {b, c}) constraints the family violates."""
    k = len(orders)
    if k == 0:
        return 0
    n = len(orders[0])
    full = (1 << k) - 1
    M = _above_masks(orders)
    bad = 0
    for a in range(n):
        row = M[a]
        for b in range(n):
            if b == a:
                continue
            for c in range(b + 1, n):
                if c == a:
                    continue
                if mixing:
                    bad += (row[b] ^ row[c]) == full
                else:
                    bad += (row[b] & row[c]) == 0
    return bad


def _xorshift(s: int) -> int:
    s ^= s >> 12
    s ^= (s << 25) & MASK64
    s ^= s >> 27
    return s


def seed_state(seed: int) -> int:
    s = (seed ^ 0x9E3779B97F4A7C15) & MASK64
    return s or 1


def local_search(orders: Sequence[Sequence[int]], mixing: bool, seed: int,
                 max_iters: int, noise: int = 64) -> tuple[list[list[int]], int, int]:
    """Move-one-element local search towards a violation-free family.

    Order 0 stays fixed when there is more than one order.  Worse moves are
    accepted with probability ``1/noise``.  Returns ``(orders, cost, iters)``.
    """
    orders = [list(o) for o in orders]
    k = len(orders)
    n = len(orders[0]) if k else 0
    if k == 0 or n < 3:
        return orders, 0, 0
    full = (1 << k) - 1
    M = _above_masks(orders)
    cost = family_cost(orders, mixing)
    lo = 1 if k > 1 else 0
    state = seed_state(seed)

    def rand() -> int:
        nonlocal state
        state = _xorshift(state)
        return (state * 0x2545F4914F6CDD1D) & MASK64

    def local(x: int, moved: Sequence[int]) -> int:
        inr = set(moved)
        cnt = 0
        Mx = M[x]
        for y in moved:
            mxy = Mx[y]
            My = M[y]
            myx = My[x]
            for c in range(n):
                if c == x or c == y:
                    continue
                if not (c in inr and c < y):
                    if mixing:
                        cnt += (mxy ^ Mx[c]) == full
                    else:
                        cnt += (mxy & Mx[c]) == 0
                if mixing:
                    cnt += (myx ^ My[c]) == full
                else:
                    cnt += (myx & My[c]) == 0
        return cnt

    def flip(x: int, moved: Sequence[int], bit: int) -> None:
        for y in moved:
            M[x][y] ^= bit
            M[y][x] ^= bit

    it = 0
    while it < max_iters and cost > 0:
        it += 1
        i = lo + rand() % (k - lo)
        s = rand() % n
        t = rand() % n
        if s == t:
            continue
        o = orders[i]
        x = o[s]
        moved = o[s + 1:t + 1] if s < t else o[t:s]
        before = local(x, moved)
        flip(x, moved, 1 << i)
        delta = local(x, moved) - before
        if delta <= 0 or rand() % noise == 0:
            o.pop(s)
            o.insert(t, x)
            cost += delta
        else:
            flip(x, moved, 1 << i)
    return orders, cost, it
