"""Brute-force reference implementations used only by the tests.

These work on explicit sets of symbol tuples and never call the package's
linear algebra, so they check it independently.
"""

import itertools


def poly_mul(a, b, poly, r):
    """Schoolbook multiplication modulo ``poly`` (no tables)."""
    out = 0
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
        if a >> r:
            a ^= poly
    return out


def span_set(rows, n):
    """All GF(2) combinations of symbol-tuple rows."""
    words = set()
    for coeffs in itertools.product((0, 1), repeat=len(rows)):
        w = [0] * n
        for c, row in zip(coeffs, rows):
            if c:
                w = [a ^ b for a, b in zip(w, row)]
        words.add(tuple(w))
    return words


def trace(a, poly, r):
    t, x = 0, a
    for _ in range(r):
        t ^= x
        x = poly_mul(x, x, poly, r)
    return t


def trace_inner(x, y, poly, r):
    acc = 0
    for a, b in zip(x, y):
        acc ^= poly_mul(a, b, poly, r)
    return trace(acc, poly, r)


def dual_set(words, n, poly, r):
    return {y for y in itertools.product(range(1 << r), repeat=n)
            if all(trace_inner(x, y, poly, r) == 0 for x in words)}


def hull_set(words, n, poly, r):
    return words & dual_set(words, n, poly, r)


def zero_coord(words, i):
    return {w[:i] + (0,) + w[i + 1:] for w in words}


def weight_counts(words, n):
    counts = [0] * (n + 1)
    for w in words:
        counts[sum(1 for s in w if s)] += 1
    return tuple(counts)


def binary_subspaces(vectors_dim, d):
    """All d-dimensional subspaces of GF(2)^vectors_dim as frozensets of ints."""
    seen = set()
    nonzero = range(1, 1 << vectors_dim)
    for gens in itertools.combinations(nonzero, d):
        sp = {0}
        for g in gens:
            sp |= {x ^ g for x in sp}
        if len(sp) == 1 << d:
            seen.add(frozenset(sp))
    return seen
