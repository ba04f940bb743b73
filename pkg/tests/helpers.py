"""Independent oracles for the test suite.

Everything here is deliberately naive (breadth-first closures, exhaustive
partition search, trial division of polynomials) and shares no code with
the paths it checks.
"""

from __future__ import annotations

import itertools


def compose(p, q):
    return tuple(q[i] for i in p)


def naive_closure(degree, gens):
    """All products of the generators, by breadth-first closure."""
    identity = tuple(range(degree))
    seen = {identity}
    frontier = [identity]
    gens = [tuple(g) for g in gens]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def equal_part_partitions(n, s):
    """All partitions of range(n) into blocks of size s, as frozensets."""
    assert n % s == 0
    points = list(range(n))

    def rec(remaining):
        if not remaining:
            yield []
            return
        head = remaining[0]
        rest = remaining[1:]
        for mates in itertools.combinations(rest, s - 1):
            block = frozenset((head,) + mates)
            left = [x for x in rest if x not in block]
            for tail in rec(left):
                yield [block] + tail

    yield from rec(points)


def invariant_partitions(degree, raw_gens):
    """Every nontrivial invariant equal-part partition, exhaustively."""
    out = []
    for s in range(2, degree):
        if degree % s != 0:
            continue
        for partition in equal_part_partitions(degree, s):
            blocks = set(partition)
            if all(frozenset(g[x] for x in block) in blocks
                   for block in blocks for g in raw_gens):
                out.append(frozenset(blocks))
    return out


def minimal_invariant_partitions(degree, raw_gens):
    """Minimal elements of the invariant-partition poset (exhaustive)."""
    all_parts = invariant_partitions(degree, raw_gens)

    def refines(p, q):
        return p != q and all(any(b <= c for c in q) for b in p)

    return [p for p in all_parts
            if not any(refines(q, p) for q in all_parts)]


# polynomials over GF(p), ascending coefficient lists -----------------------

def poly_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] = (out[i + j] + ai * bj) % p
    return poly_trim(out)


def poly_divmod(a, b, p):
    a = list(a)
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    for k in range(len(a) - 1, len(b) - 2, -1):
        c = (a[k] * inv) % p
        q[k - len(b) + 1] = c
        if c:
            for j in range(len(b)):
                a[k - len(b) + 1 + j] = (a[k - len(b) + 1 + j] - c * b[j]) % p
    return poly_trim(q), poly_trim(a)


def naive_irreducible(coeffs, p):
    """Trial division by every monic polynomial of degree <= deg/2."""
    f = poly_trim(coeffs)
    deg = len(f) - 1
    assert deg >= 1
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            g = list(tail) + [1]
            _, r = poly_divmod(f, g, p)
            if not r:
                return False
    return True
