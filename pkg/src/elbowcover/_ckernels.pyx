# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernels; semantics mirror ``_pykernels`` exactly.

Coverage masks are limited to 64 pairs here; the dispatcher in
``kernels.py`` routes larger instances to the Python implementation.
"""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport malloc, free

cnp.import_array()


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


cdef inline int popcount64(uint64_t x) noexcept nogil:
    return __builtin_popcountll(x)


def orientation_masks(pair_e, pair_f, flip_e, flip_f, int kind, uint64_t start, uint64_t count):
    cdef Py_ssize_t npairs = len(pair_e)
    if npairs > 64:
        raise ValueError("compiled kernel supports at most 64 pairs")
    cdef int[64] pe
    cdef int[64] pf
    cdef int[64] fe
    cdef int[64] ff
    cdef Py_ssize_t p
    for p in range(npairs):
        pe[p] = pair_e[p]
        pf[p] = pair_f[p]
        fe[p] = flip_e[p]
        ff[p] = flip_f[p]
    out = np.zeros(count, dtype=np.uint64)
    cdef uint64_t[:] view = out
    cdef uint64_t c, code, mask
    cdef int ie, jf
    with nogil:
        for c in range(count):
            code = start + c
            mask = 0
            for p in range(npairs):
                ie = <int>((code >> pe[p]) & 1) ^ fe[p]
                jf = <int>((code >> pf[p]) & 1) ^ ff[p]
                if kind == 1:
                    if ie & jf:
                        mask |= (<uint64_t>1) << p
                elif ie == jf:
                    mask |= (<uint64_t>1) << p
            view[c] = mask
    return [int(x) for x in out]


cdef bint _search(uint64_t* masks, Py_ssize_t nm, uint64_t uncovered, int left, int maxpop) noexcept nogil:
    if uncovered == 0:
        return True
    if left == 0 or popcount64(uncovered) > left * maxpop:
        return False
    cdef int bit = __builtin_ctzll(uncovered)
    cdef uint64_t b = (<uint64_t>1) << bit
    cdef Py_ssize_t i
    for i in range(nm):
        if masks[i] & b:
            if _search(masks, nm, uncovered & ~masks[i], left - 1, maxpop):
                return True
    return False


def min_cover(masks, uint64_t full, int kmax):
    from ._pykernels import reduce_masks
    if full == 0:
        return 0
    reduced = reduce_masks([int(m) & full for m in masks])
    cdef Py_ssize_t nm = len(reduced)
    if nm == 0:
        return -1
    cdef uint64_t* buf = <uint64_t*>malloc(nm * sizeof(uint64_t))
    cdef Py_ssize_t i
    cdef int maxpop = 0, k, found = -1
    try:
        for i in range(nm):
            buf[i] = reduced[i]
            if popcount64(buf[i]) > maxpop:
                maxpop = popcount64(buf[i])
        with nogil:
            for k in range(1, kmax + 1):
                if _search(buf, nm, full, k, maxpop):
                    found = k
                    break
    finally:
        free(buf)
    return found


cdef void _above(int[:, :] orders, int k, int n, unsigned int* M) noexcept nogil:
    cdef int i, p, a, b
    cdef int* pos = <int*>malloc(k * n * sizeof(int))
    for i in range(k):
        for p in range(n):
            pos[i * n + orders[i, p]] = p
    for a in range(n):
        for b in range(n):
            M[a * n + b] = 0
            for i in range(k):
                if pos[i * n + a] > pos[i * n + b]:
                    M[a * n + b] |= (1u << i)
    free(pos)


cdef inline int _bad(unsigned int p, unsigned int q, bint mixing, unsigned int full) noexcept nogil:
    if mixing:
        return (p ^ q) == full
    return (p & q) == 0


def family_cost(orders, bint mixing):
    cdef int k = len(orders)
    if k == 0:
        return 0
    arr = np.ascontiguousarray(np.asarray(orders, dtype=np.intc).reshape(k, -1))
    cdef int[:, :] ov = arr
    cdef int n = arr.shape[1]
    cdef unsigned int full = (1u << k) - 1
    cdef unsigned int* M = <unsigned int*>malloc(max(n * n, 1) * sizeof(unsigned int))
    cdef int64_t bad = 0
    cdef int a, b, c
    with nogil:
        _above(ov, k, n, M)
        for a in range(n):
            for b in range(n):
                if b == a:
                    continue
                for c in range(b + 1, n):
                    if c != a:
                        bad += _bad(M[a * n + b], M[a * n + c], mixing, full)
    free(M)
    return int(bad)


cdef inline uint64_t _next(uint64_t* s) noexcept nogil:
    s[0] ^= s[0] >> 12
    s[0] ^= s[0] << 25
    s[0] ^= s[0] >> 27
    return s[0] * <uint64_t>0x2545F4914F6CDD1D


cdef int64_t _local(unsigned int* M, int n, int x, int* moved, int nmoved, char* inr,
                    bint mixing, unsigned int full) noexcept nogil:
    cdef int64_t cnt = 0
    cdef int j, y, c
    cdef unsigned int mxy, myx
    for j in range(nmoved):
        y = moved[j]
        mxy = M[x * n + y]
        myx = M[y * n + x]
        for c in range(n):
            if c == x or c == y:
                continue
            if not (inr[c] and c < y):
                cnt += _bad(mxy, M[x * n + c], mixing, full)
            cnt += _bad(myx, M[y * n + c], mixing, full)
    return cnt


def local_search(orders, bint mixing, uint64_t seed, int64_t max_iters, int noise=64):
    from ._pykernels import seed_state
    cdef int k = len(orders)
    if k == 0:
        return [], 0, 0
    arr = np.ascontiguousarray(np.asarray(orders, dtype=np.intc).reshape(k, -1)).copy()
    cdef int[:, :] ov = arr
    cdef int n = arr.shape[1]
    if n < 3:
        return [list(map(int, o)) for o in arr], 0, 0
    cdef int64_t cost = family_cost(arr, mixing)
    cdef unsigned int full = (1u << k) - 1
    cdef unsigned int* M = <unsigned int*>malloc(n * n * sizeof(unsigned int))
    cdef int* moved = <int*>malloc(n * sizeof(int))
    cdef char* inr = <char*>malloc(n * sizeof(char))
    cdef uint64_t state = seed_state(seed)
    cdef int lo = 1 if k > 1 else 0
    cdef int64_t it = 0, before, delta
    cdef int i, s, t, x, j, nmoved
    cdef unsigned int bit
    with nogil:
        _above(ov, k, n, M)
        for j in range(n):
            inr[j] = 0
        while it < max_iters and cost > 0:
            it += 1
            i = lo + <int>(_next(&state) % <uint64_t>(k - lo))
            s = <int>(_next(&state) % <uint64_t>n)
            t = <int>(_next(&state) % <uint64_t>n)
            if s == t:
                continue
            x = ov[i, s]
            nmoved = 0
            if s < t:
                for j in range(s + 1, t + 1):
                    moved[nmoved] = ov[i, j]
                    nmoved += 1
            else:
                for j in range(t, s):
                    moved[nmoved] = ov[i, j]
                    nmoved += 1
            for j in range(nmoved):
                inr[moved[j]] = 1
            before = _local(M, n, x, moved, nmoved, inr, mixing, full)
            bit = 1u << i
            for j in range(nmoved):
                M[x * n + moved[j]] ^= bit
                M[moved[j] * n + x] ^= bit
            delta = _local(M, n, x, moved, nmoved, inr, mixing, full) - before
            if delta <= 0 or _next(&state) % <uint64_t>noise == 0:
                if s < t:
                    for j in range(s, t):
                        ov[i, j] = ov[i, j + 1]
                else:
                    for j in range(s, t, -1):
                        ov[i, j] = ov[i, j - 1]
                ov[i, t] = x
                cost += delta
            else:
                for j in range(nmoved):
                    M[x * n + moved[j]] ^= bit
                    M[moved[j] * n + x] ^= bit
            for j in range(nmoved):
                inr[moved[j]] = 0
    free(M)
    free(moved)
    free(inr)
    return [list(map(int, o)) for o in arr], int(cost), int(it)
