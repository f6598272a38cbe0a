"""Reference implementations that share no code with twistlab.

Words are lists of nonzero ints; -n is the inverse of n.  Matrices are
lists of lists.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache


# Free and cyclic reduction.

def stack_reduce(w):
    out = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    i, j = 0, len(out) - 1
    while i < j and out[i] == -out[j]:
        i += 1
        j -= 1
    return out[i : j + 1] if out else []


def random_order_reduce(w, rng: random.Random):
    """Cancel a randomly chosen adjacent inverse pair (cyclically) until none is left."""
    w = list(w)
    while True:
        n = len(w)
        spots = [i for i in range(n) if n > 1 and w[i] == -w[(i + 1) % n]]
        if not spots:
            return w
        i = rng.choice(spots)
        j = (i + 1) % n
        w = [x for t, x in enumerate(w) if t not in (i, j)]


def canon(w):
    if not w:
        return ()
    return min(tuple(w[i:] + w[:i]) for i in range(len(w)))


# Word problem in the genus-2 surface group by closure from the empty word.

def surface_relator(k):
    rel = []
    for i in range(k):
        a, b = 2 * i + 1, 2 * i + 2
        rel += [a, b, -a, -b]
    return rel


@lru_cache(maxsize=None)
def trivial_words_genus2(cap: int = 16) -> frozenset:
    """Canonical forms of every cyclic word of length <= cap reachable from 1.

    Moves insert a cyclic permutation of r or r^-1 at any position and
    cyclically reduce.  Every element found is trivial.  Conversely a
    trivial word of length n <= 8 has a Dehn reduction path, whose reverse
    uses insertions through words of length <= n + 8 <= 16, so the set is
    complete up to length 8.
    """
    rel = surface_relator(2)
    moves = []
    for r in (rel, [-x for x in reversed(rel)]):
        for i in range(len(r)):
            moves.append(r[i:] + r[:i])
    seen = {()}
    frontier = [()]
    while frontier:
        nxt = []
        for w in frontier:
            w = list(w)
            for pos in range(max(len(w), 1)):
                for m in moves:
                    nw = stack_reduce(w[:pos] + m + w[pos:])
                    if len(nw) <= cap:
                        c = canon(nw)
                        if c not in seen:
                            seen.add(c)
                            nxt.append(c)
        frontier = nxt
    return frozenset(seen)


def necklaces(length: int, letters=(1, 2, 3, 4, -1, -2, -3, -4)):
    """Cyclically reduced words of the given length, one per rotation class."""
    order = {x: i for i, x in enumerate(letters)}

    def rec(pre):
        if len(pre) == length:
            if length and pre[0] == -pre[-1]:
                return
            t = tuple(pre)
            key = [order[x] for x in t]
            if all(key[i:] + key[:i] >= key for i in range(1, length)):
                yield t
            return
        for x in letters:
            if pre and x == -pre[-1]:
                continue
            # the first letter must be minimal for the word to be the least rotation
            if pre and order[x] < order[pre[0]]:
                continue
            yield from rec(pre + [x])

    if length == 0:
        yield ()
        return
    yield from rec([])


def genus2_names():
    return {1: "a1", 2: "b1", 3: "a2", 4: "b2"}


def to_text(w, names):
    return " ".join(names[abs(x)] + ("'" if x < 0 else "") for x in w)


# Linear algebra.

def J(n):
    m = [[0] * n for _ in range(n)]
    for i in range(0, n, 2):
        m[i][i + 1] = 1
        m[i + 1][i] = -1
    return m


def mat_mul(a, b):
    return [[sum(a[i][t] * b[t][j] for t in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def transpose(a):
    return [list(r) for r in zip(*a)]


def form(u, v):
    return sum(u[i] * v[i + 1] - u[i + 1] * v[i] for i in range(0, len(u), 2))


def twist_columns(a, q):
    """Matrix of T_a^q built column by column from b ↦ b + q<a,b>a."""
    n = len(a)
    cols = []
    for j in range(n):
        e = [1 if i == j else 0 for i in range(n)]
        c = q * form(a, e)
        cols.append([e[i] + c * a[i] for i in range(n)])
    return transpose(cols)


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def bareiss_det(m):
    m = [list(map(Fraction, r)) for r in m]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            for t in range(c, n):
                m[r][t] -= f * m[c][t]
    return det


def charpoly_by_interpolation(m):
    """Coefficients of det(tI - M), leading first, by Lagrange interpolation."""
    n = len(m)
    xs = list(range(n + 1))
    ys = [bareiss_det([[(x if i == j else 0) - m[i][j] for j in range(n)] for i in range(n)]) for x in xs]
    coeffs = [Fraction(0)] * (n + 1)
    for i, xi in enumerate(xs):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for t in range(len(basis) - 1):
                basis[t] -= xj * basis[t + 1]
            denom *= xi - xj
        for t in range(n + 1):
            coeffs[t] += ys[i] * basis[t] / denom
    return tuple(int(c) for c in reversed(coeffs))
