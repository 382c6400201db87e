"""Families of total orders on a colour universe ``[0, C)``.

A family is *3-suitable* when every element sits above any two others in
some order, and *3-mixing* when every element is first or last among any
triple in some order.  Colour-comparison orientations built from such
families are in-elbow covers and elbow covers respectively.

Constructors never return an unverified family: every candidate passes the
property checker before it leaves :func:`build_family`.
"""
from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import kernels
from .errors import BudgetExceeded, ConstructionError, GraphError

SUITABLE = "3-suitable"
MIXING = "3-mixing"
PROPERTIES = (SUITABLE, MIXING)

SEARCH_BUDGET = 8
MAX_UNIVERSE = 1024


@dataclass(frozen=True)
class OrderFamily:
    universe_size: int
    orders: tuple[tuple[int, ...], ...]
    origin: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        target = list(range(self.universe_size))
        if self.universe_size >= 1 and not self.orders:
            raise GraphError("an order family on a nonempty universe needs an order")
        for o in self.orders:
            if sorted(o) != target:
                raise GraphError(f"{o} is not a permutation of [0, {self.universe_size})")

    @classmethod
    def of(cls, orders: Sequence[Sequence[int]], origin: str = "") -> "OrderFamily":
        orders = tuple(tuple(int(x) for x in o) for o in orders)
        return cls(len(orders[0]) if orders else 0, orders, origin)

    @property
    def size(self) -> int:
        return len(self.orders)

    def positions(self) -> np.ndarray:
        pos = np.empty((self.size, self.universe_size), dtype=np.int64)
        for i, o in enumerate(self.orders):
            pos[i, list(o)] = np.arange(self.universe_size)
        return pos

    def restrict(self, c: int) -> "OrderFamily":
        """Keep only elements ``< c``; both properties are hereditary."""
        return OrderFamily(c, tuple(tuple(x for x in o if x < c) for o in self.orders), self.origin)


def _above_masks(f: OrderFamily) -> np.ndarray:
    """``M[a, b]`` has bit ``i`` set when ``a`` comes after ``b`` in order ``i``."""
    pos = f.positions()
    weights = np.left_shift(np.int64(1), np.arange(f.size, dtype=np.int64))
    above = pos[:, :, None] > pos[:, None, :]
    return np.tensordot(weights, above.astype(np.int64), axes=1)


def _bad_triples(f: OrderFamily, mixing: bool, limit: int | None = None) -> list[tuple[int, int, int]]:
    n = f.universe_size
    if n < 3:
        return []
    if f.size > 62:
        raise BudgetExceeded("property check supports at most 62 orders")
    M = _above_masks(f)
    full = (1 << f.size) - 1
    found = []
    upper = np.triu(np.ones((n, n), dtype=bool), 1)
    for a in range(n):
        row = M[a]
        if mixing:
            bad = (row[:, None] ^ row[None, :]) == full
        else:
            bad = (row[:, None] & row[None, :]) == 0
        bad &= upper
        bad[a, :] = False
        bad[:, a] = False
        if bad.any():
            for b, c in zip(*np.nonzero(bad)):
                found.append((a, int(b), int(c)))
                if limit is not None and len(found) >= limit:
                    return found
    return found


def is_3_suitable(f: OrderFamily) -> bool:
    return not _bad_triples(f, mixing=False, limit=1)


def is_3_mixing(f: OrderFamily) -> bool:
    return not _bad_triples(f, mixing=True, limit=1)


def check_property(f: OrderFamily, prop: str) -> bool:
    if prop == SUITABLE:
        return is_3_suitable(f)
    if prop == MIXING:
        return is_3_mixing(f)
    raise ValueError(f"unknown property {prop!r}")


def violations(f: OrderFamily, prop: str, limit: int = 10) -> list[tuple[int, int, int]]:
    """Up to ``limit`` triples ``(a, b, c)`` where ``a`` is not served against ``{b, c}``."""
    return _bad_triples(f, prop == MIXING, limit)


def yardstick(n: int) -> float:
    """lg lg n + (1/2) lg lg lg n + (1/2) lg pi, the asymptotic size of a 3-suitable family."""
    lglg = math.log2(math.log2(n))
    return lglg + 0.5 * math.log2(lglg) + 0.5 * math.log2(math.pi)


def lglg_bound(c: int) -> int:
    """ceil(lg lg c) + 1, for c >= 2."""
    if c < 2:
        raise ValueError("lg lg needs c >= 2")
    # exact integer ceiling: smallest t with 2**(2**t) >= c
    t = 0
    while 2 ** (2 ** t) < c:
        t += 1
    return t + 1


# -- exact search -----------------------------------------------------------------

def _search_size(c: int, k: int, mixing: bool) -> list[list[int]] | None:
    """First k-order family on ``[0, c)`` in insertion order, or None.

    Element ``t`` goes on top of order 0 (the identity, by relabelling) and
    into every other order at a chosen position.  Validity is hereditary, so
    the triples containing ``t`` are checked right after it is placed.
    Orders 1..k-1 are kept sorted by insertion history; with mixing, order
    reversal also lets element 1 sit above element 0 everywhere.
    """
    orders: list[list[int]] = [[0] for _ in range(k)]
    hist: list[list[int]] = [[] for _ in range(k)]

    def served(a: int, b: int, x: int, pos: list[dict[int, int]]) -> bool:
        for p in pos:
            pa, pb, px = p[a], p[b], p[x]
            if mixing:
                if (pa > pb) == (pa > px):
                    return True
            elif pa > pb and pa > px:
                return True
        return False

    def valid(t: int) -> bool:
        pos = [{x: i for i, x in enumerate(o)} for o in orders]
        return all(
            served(t, a, b, pos) and served(a, b, t, pos) and served(b, a, t, pos)
            for a, b in itertools.combinations(range(t), 2)
        )

    def insert(t: int) -> bool:
        orders[0].append(t)
        if fill(t, 1):
            return True
        orders[0].pop()
        return False

    def fill(t: int, i: int) -> bool:
        if i == k:
            return valid(t) and (t + 1 == c or insert(t + 1))
        lo = 1 if (mixing and t == 1) else 0
        if i >= 2 and hist[i - 1] == hist[i]:
            lo = max(lo, orders[i - 1].index(t))
        for p in range(lo, t + 1):
            orders[i].insert(p, t)
            hist[i].append(p)
            if fill(t, i + 1):
                return True
            hist[i].pop()
            orders[i].pop(p)
        return False

    if c <= 1:
        return [list(range(c))]
    return [list(o) for o in orders] if insert(1) else None


def min_family_search(c: int, prop: str, budget: int = SEARCH_BUDGET) -> OrderFamily:
    """Smallest family with the property, by iterative deepening on its size.

    The witness is the first family in the search order, so it is
    reproducible run to run.
    """
    if prop not in PROPERTIES:
        raise ValueError(f"unknown property {prop!r}")
    if c > budget:
        raise BudgetExceeded(f"exact order-family search handles C <= {budget}, got {c}")
    if c <= 2:
        return OrderFamily.of([list(range(c))], origin="exact-search")
    for k in itertools.count(1):
        found = _search_size(c, k, prop == MIXING)
        if found is not None:
            fam = OrderFamily.of(found, origin="exact-search")
            if not check_property(fam, prop):
                raise ConstructionError("exact search produced a family that fails its checker")
            return fam
    raise AssertionError("unreachable")


# -- constructions -----------------------------------------------------------------

def square_family(f: OrderFamily, prop: str) -> OrderFamily:
    """Candidate family on pairs ``(p, q)``, encoded as ``p * C + q``.

    Each order is lifted to the lexicographic product of itself with itself;
    one extra order sorts by the first order on ``p`` and breaks ties by the
    reversed first order on ``q``.
    """
    c = f.universe_size
    pos = f.positions()
    orders = []
    for i in range(f.size):
        key = pos[i]
        orders.append(sorted(range(c * c), key=lambda e: (key[e // c], key[e % c])))
    key = pos[0]
    orders.append(sorted(range(c * c), key=lambda e: (key[e // c], -key[e % c])))
    return OrderFamily.of(orders, origin=f"squared({prop})")


def antichain_family(k: int) -> OrderFamily:
    """A 3-suitable family of ``k`` orders on ``2**m`` elements.

    Elements are ``m``-bit vectors compared lexicographically, most
    significant bit first.  Bit ``j`` is read upward in order ``i`` when
    ``i`` belongs to ``A_j`` and downward otherwise, where the ``A_j`` are the
    ``floor(k/2)``-subsets of ``[k]`` containing 0.  Any two ``A_j``
    intersect, never cover ``[k]`` together, and are incomparable, which is
    exactly what the two-coordinate cases of the property need.
    """
    if k < 3:
        raise ValueError("antichain construction needs k >= 3")
    r = k // 2
    sets = [frozenset((0,) + rest) for rest in itertools.combinations(range(1, k), r - 1)]
    m = len(sets)
    n = 1 << m
    orders = []
    for i in range(k):
        flips = sum(1 << (m - 1 - j) for j, s in enumerate(sets) if i not in s)
        orders.append(sorted(range(n), key=lambda x: x ^ flips))
    return OrderFamily.of(orders, origin=f"antichain(k={k})")


def antichain_capacity(k: int) -> int:
    return 1 << math.comb(k - 1, k // 2 - 1)


def in_elbow_orders(c: int) -> OrderFamily:
    """Orders whose colour-comparison orientations are an in-elbow cover for any proper ``c``-colouring.

    Two neighbours of a vertex may share a colour, so each colour must also
    sit above each other colour in some order.  A 3-suitable family already
    does that once ``c >= 3``; with two colours both orders are needed.
    """
    if c == 2:
        return OrderFamily.of([[0, 1], [1, 0]], origin="both orders")
    return build_family(c, SUITABLE)


def _local_search_family(c: int, k: int, prop: str, restarts: int, iters: int) -> OrderFamily | None:
    import random

    for r in range(restarts):
        seed = c * 1_000_003 + k * 1009 + r
        rng = random.Random(seed)
        start = [list(range(c))] + [rng.sample(range(c), c) for _ in range(k - 1)]
        orders, cost, _ = kernels.local_search(start, prop == MIXING, seed, iters, 256)
        if cost == 0:
            return OrderFamily.of(orders, origin=f"local-search(k={k}, restart={r})")
    return None


def _mixing_ladder(c: int) -> OrderFamily:
    fam = OrderFamily.of([[0, 1]], origin="base")
    while fam.universe_size < c:
        fam = square_family(fam, MIXING)
    return fam


@functools.lru_cache(maxsize=None)
def build_family(c: int, prop: str, ls_restarts: int = 3, ls_iters: int = 1_000_000) -> OrderFamily:
    """A verified family with the property on ``[0, c)``.

    3-mixing: repeated squaring from two elements, restricted to ``c``.
    3-suitable: exact search up to C=8; beyond that squaring, then seeded
    local search at increasing sizes, then the antichain construction.
    Raises :class:`ConstructionError` rather than return an unverified family.
    """
    if prop not in PROPERTIES:
        raise ValueError(f"unknown property {prop!r}")
    if c < 0:
        raise ValueError("universe size must be nonnegative")
    if c > MAX_UNIVERSE:
        raise BudgetExceeded(f"universe size {c} exceeds {MAX_UNIVERSE}")
    if c <= 2:
        return OrderFamily.of([list(range(c))], origin="trivial")

    candidates = []
    if prop == MIXING:
        if c <= 256:
            candidates.append(lambda: _mixing_ladder(c).restrict(c))
    else:
        if c <= SEARCH_BUDGET:
            candidates.append(lambda: min_family_search(c, SUITABLE))
        else:
            root = math.isqrt(c - 1) + 1
            candidates.append(lambda: square_family(build_family(root, SUITABLE, ls_restarts, ls_iters), SUITABLE).restrict(c))

    for make in candidates:
        fam = make()
        if check_property(fam, prop):
            return fam

    floor = build_family(min(c, SEARCH_BUDGET), prop).size if prop == SUITABLE else lglg_bound(c)
    cap = floor + 8
    if prop == SUITABLE:
        cap = next(k for k in itertools.count(3) if antichain_capacity(k) >= c)
    for k in range(floor, cap):
        fam = _local_search_family(c, k, prop, ls_restarts, ls_iters)
        if fam is not None and check_property(fam, prop):
            return fam
    if prop == SUITABLE:
        fam = antichain_family(cap).restrict(c)
        if check_property(fam, prop):
            return fam
    raise ConstructionError(f"no verified {prop} family found for C={c}")
