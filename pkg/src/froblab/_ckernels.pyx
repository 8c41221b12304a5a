# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled counterparts of ``_kernels``; same signatures and results.

Packed monomials stay Python ints (they usually exceed 64 bits);
coefficients and the modulus are C integers.
"""

from heapq import heappop, heappush


def mul_terms(dict a, dict b, long long p):
    cdef dict acc = {}
    cdef dict out = {}
    cdef list items
    cdef long long ca, cb, c
    cdef object ma, mb, m, v
    if len(a) < len(b):
        a, b = b, a
    items = list(a.items())
    for mb, cbo in b.items():
        cb = cbo
        for ma, cao in items:
            ca = cao
            m = ma + mb
            v = acc.get(m)
            if v is None:
                acc[m] = (ca * cb) % p
            else:
                acc[m] = (<long long>v + ca * cb) % p
    for m, v in acc.items():
        c = v
        if c:
            out[m] = c
    return out


def reduce_terms(dict coef, dict pmap, list reducers, object guard, long long p):
    cdef list heap = [-k for k in coef]
    cdef list out = []
    cdef list tail
    cdef tuple red
    cdef long long c, gc, w
    cdef object k, P, Pg, lead_P, lead_K, tP, tK, nk, v, gK, gP
    cdef bint found
    heap.sort()
    while heap:
        k = -heappop(heap)
        v = coef.pop(k, 0)
        c = v
        if not c:
            continue
        P = pmap[k]
        Pg = P | guard
        found = False
        for red in reducers:
            lead_P = red[0]
            if (Pg - lead_P) & guard == guard:
                found = True
                break
        if not found:
            out.append((k, P, c))
            continue
        lead_K = red[1]
        tail = red[2]
        tP = P - lead_P
        tK = k - lead_K
        for gK, gP, gco in tail:
            gc = gco
            nk = gK + tK
            v = coef.get(nk)
            if v is None:
                coef[nk] = ((-c * gc) % p + p) % p
                pmap[nk] = gP + tP
                heappush(heap, -nk)
            else:
                w = ((<long long>v - c * gc) % p + p) % p
                if w:
                    coef[nk] = w
                else:
                    del coef[nk]
    return out


def decompose_terms(dict terms, tuple shifts, object mask, long long q):
    cdef dict parts = {}
    cdef dict part
    cdef object P, r, val, s
    cdef long long e
    for P, c in terms.items():
        r = 0
        val = 0
        for s in shifts:
            e = (P >> s) & mask
            r |= (e % q) << s
            val |= (e // q) << s
        part = parts.get(r)
        if part is None:
            parts[r] = {val: c}
        else:
            part[val] = c
    return parts
