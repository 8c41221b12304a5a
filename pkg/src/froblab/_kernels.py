"""Pure-Python hot loops for sparse polynomial arithmetic.

Monomials arrive packed into Python ints: one fixed-width field per
variable, guard bit at the top of each field.  Two encodings travel
together through the reduction loop:

* ``P``: the exponent packing, used for divisibility;
* ``K``: an order key, additive under multiplication, whose integer
  comparison is the monomial order.

``_ckernels.pyx`` mirrors these functions one for one.
"""

from heapq import heappop, heappush


def mul_terms(a, b, p):
    """Product of two term maps ``{P: coeff}`` over F_p."""
    if len(a) < len(b):
        a, b = b, a
    acc = {}
    get = acc.get
    items = list(a.items())
    for mb, cb in b.items():
        for ma, ca in items:
            m = ma + mb
            v = get(m)
            if v is None:
                acc[m] = ca * cb
            else:
                acc[m] = v + ca * cb
    out = {}
    for m, c in acc.items():
        c %= p
        if c:
            out[m] = c
    return out


def reduce_terms(coef, pmap, reducers, guard, p):
    """Fully reduce a polynomial against monic reducers.

    ``coef`` maps order keys to coefficients and ``pmap`` maps the same
    keys to exponent packings; both are consumed.  ``reducers`` is a list
    of ``(lead_P, lead_K, tail)`` with ``tail`` a list of ``(K, P, c)``.
    Returns the remainder as ``(K, P, c)`` triples, descending.
    """
    heap = [-k for k in coef]
    heap.sort()  # a sorted list is a valid heap
    out = []
    while heap:
        k = -heappop(heap)
        c = coef.pop(k, 0)
        if not c:
            continue
        P = pmap[k]
        Pg = P | guard
        for lead_P, lead_K, tail in reducers:
            if (Pg - lead_P) & guard == guard:
                break
        else:
            out.append((k, P, c))
            continue
        tP = P - lead_P
        tK = k - lead_K
        for gK, gP, gc in tail:
            nk = gK + tK
            v = coef.get(nk)
            if v is None:
                coef[nk] = (-c * gc) % p
                pmap[nk] = gP + tP
                heappush(heap, -nk)
            else:
                v = (v - c * gc) % p
                if v:
                    coef[nk] = v
                else:
                    del coef[nk]
    return out


def decompose_terms(terms, shifts, mask, q):
    """Split ``{P: c}`` by exponent residues mod ``q``.

    Returns ``{residue_P: {quotient_P: c}}``.  Over a prime field the
    ``q``-th root of a coefficient is the coefficient itself.
    """
    parts = {}
    for P, c in terms.items():
        r = 0
        v = 0
        for s in shifts:
            e = (P >> s) & mask
            r |= (e % q) << s
            v |= (e // q) << s
        part = parts.get(r)
        if part is None:
            parts[r] = {v: c}
        else:
            part[v] = c
    return parts
