"""Univariate polynomials over F_p as coefficient lists, lowest degree first.

Only what the indecomposability test needs: arithmetic, gcd, square-free
decomposition, distinct-degree and equal-degree factorization.
"""
from __future__ import annotations

import random
from typing import List

Poly = List[int]


def trim(f: Poly) -> Poly:
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def deg(f: Poly) -> int:
    return len(f) - 1 if f else -1


def monic(f: Poly, p: int) -> Poly:
    f = trim(f)
    if not f:
        return f
    c = pow(f[-1], -1, p)
    return [(a * c) % p for a in f]


def add(f: Poly, g: Poly, p: int) -> Poly:
    n = max(len(f), len(g))
    return trim([((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0)) % p for i in range(n)])


def sub(f: Poly, g: Poly, p: int) -> Poly:
    return add(f, [(-c) % p for c in g], p)


def mul(f: Poly, g: Poly, p: int) -> Poly:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return trim(out)


def divmod_(f: Poly, g: Poly, p: int) -> tuple[Poly, Poly]:
    g = trim(g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = trim(f)
    q = [0] * max(len(r) - len(g) + 1, 0)
    lc = pow(g[-1], -1, p)
    while len(r) >= len(g):
        c = (r[-1] * lc) % p
        s = len(r) - len(g)
        q[s] = c
        for i, b in enumerate(g):
            r[s + i] = (r[s + i] - c * b) % p
        r = trim(r)
    return trim(q), r


def mod(f: Poly, g: Poly, p: int) -> Poly:
    return divmod_(f, g, p)[1]


def gcd(f: Poly, g: Poly, p: int) -> Poly:
    f, g = trim(f), trim(g)
    while g:
        f, g = g, mod(f, g, p)
    return monic(f, p)


def extgcd(f: Poly, g: Poly, p: int) -> tuple[Poly, Poly, Poly]:
    """(d, u, v) with u f + v g = d = gcd(f, g), d monic."""
    r0, r1 = trim(f), trim(g)
    s0, s1, t0, t1 = [1], [], [], [1]
    while r1:
        q, r = divmod_(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, p), p)
        t0, t1 = t1, sub(t0, mul(q, t1, p), p)
    c = pow(r0[-1], -1, p)
    scale = lambda h: [(a * c) % p for a in h]  # noqa: E731
    return scale(r0), scale(s0), scale(t0)


def powmod(f: Poly, e: int, m: Poly, p: int) -> Poly:
    result: Poly = [1]
    base = mod(f, m, p)
    while e:
        if e & 1:
            result = mod(mul(result, base, p), m, p)
        base = mod(mul(base, base, p), m, p)
        e >>= 1
    return mod(result, m, p)


def derivative(f: Poly, p: int) -> Poly:
    return trim([(i * f[i]) % p for i in range(1, len(f))])


def _pth_root(f: Poly, p: int) -> Poly:
    # f' == 0, so f(x) = g(x^p) and g^p = f over F_p
    return trim(f[::p])


def squarefree_factors(f: Poly, p: int) -> list[tuple[Poly, int]]:
    """Square-free decomposition: pairs (g, e) with f = lc * prod g^e."""
    f = monic(f, p)
    if deg(f) < 1:
        return []
    out: list[tuple[Poly, int]] = []
    i = 1
    c = gcd(f, derivative(f, p), p)
    w = divmod_(f, c, p)[0]
    while deg(w) > 0:
        y = gcd(w, c, p)
        z = divmod_(w, y, p)[0]
        if deg(z) > 0:
            out.append((monic(z, p), i))
        i += 1
        w, c = y, divmod_(c, y, p)[0]
    if deg(c) > 0:
        for g, e in squarefree_factors(_pth_root(c, p), p):
            out.append((g, e * p))
    return out


def distinct_degree(f: Poly, p: int) -> list[tuple[Poly, int]]:
    """Split a monic square-free f into products of equal-degree irreducibles."""
    out = []
    f = monic(f, p)
    x = [0, 1]
    h = x
    d = 0
    while deg(f) >= 2 * (d + 1):
        d += 1
        h = powmod(h, p, f, p)
        g = gcd(f, sub(h, x, p), p)
        if deg(g) > 0:
            out.append((g, d))
            f = divmod_(f, g, p)[0]
            h = mod(h, f, p)
    if deg(f) > 0:
        out.append((f, deg(f)))
    return out


def equal_degree(f: Poly, d: int, p: int, rng: random.Random) -> list[Poly]:
    """Irreducible factors of f, a product of distinct irreducibles of degree d."""
    f = monic(f, p)
    if deg(f) == d:
        return [f]
    while True:
        a = trim([rng.randrange(p) for _ in range(deg(f))])
        if deg(a) < 1:
            continue
        if p == 2:
            t, acc = a, a
            for _ in range(d - 1):
                t = mod(mul(t, t, p), f, p)
                acc = add(acc, t, p)
            g = gcd(f, acc, p)
        else:
            g = gcd(f, sub(powmod(a, (p**d - 1) // 2, f, p), [1], p), p)
        if 0 < deg(g) < deg(f):
            return equal_degree(g, d, p, rng) + equal_degree(divmod_(f, g, p)[0], d, p, rng)


def factor(f: Poly, p: int, rng: random.Random | None = None) -> list[tuple[Poly, int]]:
    """Monic irreducible factors with multiplicities, sorted for determinism."""
    rng = rng or random.Random(0)
    out = []
    for g, e in squarefree_factors(f, p):
        for h, d in distinct_degree(g, p):
            for q in equal_degree(h, d, p, rng):
                out.append((q, e))
    merged: dict[tuple, int] = {}
    for q, e in out:
        merged[tuple(q)] = merged.get(tuple(q), 0) + e
    return sorted(((list(q), e) for q, e in merged.items()), key=lambda t: (len(t[0]), t[0]))


def evaluate_matrix(f: Poly, a, p: int):
    """f(a) for a square integer matrix ``a`` (Horner)."""
    import numpy as np

    n = a.shape[0]
    out = np.zeros((n, n), dtype=np.int64)
    for c in reversed(f or [0]):
        out = (out @ a) % p
        out[np.diag_indices(n)] = (out[np.diag_indices(n)] + c) % p
    return out
