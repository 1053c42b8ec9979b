"""Brute-force reference computations, written without importing kmarcs.

Everything here is deliberately naive: shift-and-xor multiplication, trial
division, repeated multiplication for orders, and full scans over every line
or every group element.  The frozen values in ``golden.py`` were produced by
``python3 tests/oracles.py``.
"""

from __future__ import annotations

import itertools


def deg(f: int) -> int:
    return f.bit_length() - 1


def pmod(a: int, b: int) -> int:
    db = deg(b)
    while a and deg(a) >= db:
        a ^= b << (deg(a) - db)
    return a


def mul(a: int, b: int, mod: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
    return pmod(r, mod)


def power(a: int, e: int, mod: int) -> int:
    r = 1
    for _ in range(e):
        r = mul(r, a, mod)
    return r


def inv(a: int, mod: int) -> int:
    m = deg(mod)
    for b in range(1, 1 << m):
        if mul(a, b, mod) == 1:
            return b
    raise ZeroDivisionError


def irreducible(f: int) -> bool:
    m = deg(f)
    for g in range(2, 1 << (m // 2 + 1)):
        if deg(g) >= 1 and pmod(f, g) == 0:
            return False
    return True


def order(a: int, mod: int) -> int:
    x, k = a, 1
    while x != 1:
        x = mul(x, a, mod)
        k += 1
    return k


def smallest_modulus(m: int, primitive: bool = False, vdd: bool = False) -> int | None:
    for f in range(1 << m, 1 << (m + 1)):
        if not f & 1:
            continue
        if vdd and ((f >> (m - 1)) & 1 or (f >> (m - 2)) & 1):
            continue
        if not irreducible(f):
            continue
        if primitive and order(2, f) != (1 << m) - 1:
            continue
        return f
    return None


def trace(a: int, mod: int) -> int:
    m = deg(mod)
    s, x = 0, a
    for _ in range(m):
        s ^= x
        x = mul(x, x, mod)
    return s


def normalize(v, mod):
    for x in v:
        if x:
            s = inv(x, mod)
            return tuple(mul(y, s, mod) for y in v)
    raise ValueError("zero vector")


def plane_lines(q: int):
    out = [(0, 0, 1)] + [(0, 1, c) for c in range(q)]
    out += [(1, b, c) for b in range(q) for c in range(q)]
    return out


def spectrum(points, mod: int) -> dict:
    """Intersection size -> number of lines, by scanning every line."""
    q = 1 << deg(mod)
    pts = [tuple(p) for p in points]
    counts: dict = {}
    for l in plane_lines(q):
        k = sum(1 for p in pts if mul(l[0], p[0], mod) ^ mul(l[1], p[1], mod) ^ mul(l[2], p[2], mod) == 0)
        counts[k] = counts.get(k, 0) + 1
    return counts


def trace_count(ks, cs, mod: int) -> int:
    q = 1 << deg(mod)
    return sum(
        1 for x in range(q) if all(trace(mul(k, x, mod), mod) == c for k, c in zip(ks, cs))
    )


def line_points(q: int):
    return [(0, 1)] + [(1, y) for y in range(q)]


def pgammal2(mod: int):
    """Every element of PGammaL(2, q) as a function on normalized points."""
    m = deg(mod)
    q = 1 << m
    mats = []
    for a, b, c, d in itertools.product(range(q), repeat=4):
        if mul(a, d, mod) ^ mul(b, c, mod) == 0:
            continue
        if (a or b) and (a if a else b) != 1:
            continue
        if not a and not b:
            continue
        mats.append((a, b, c, d))
    for k in range(m):
        for a, b, c, d in mats:
            def g(p, a=a, b=b, c=c, d=d, k=k):
                x, y = p
                for _ in range(k):
                    x, y = mul(x, x, mod), mul(y, y, mod)
                return normalize((mul(a, x, mod) ^ mul(b, y, mod), mul(c, x, mod) ^ mul(d, y, mod)), mod)

            yield g


def stabilizer(S, mod: int) -> tuple[int, int]:
    """(|group|, |stabilizer of S|) by walking all of PGammaL(2, q)."""
    S = frozenset(S)
    n = s = 0
    for g in pgammal2(mod):
        n += 1
        if frozenset(g(p) for p in S) == S:
            s += 1
    return n, s


def club_trace_points(mod: int):
    q = 1 << deg(mod)
    return {normalize((x, trace(x, mod)), mod) for x in range(1, q)}


def triad_count(mod: int) -> int:
    """Triads with q/2 + 1 points per side on X=0, Y=0, X=Y through (0,0,1)."""
    q = 1 << deg(mod)
    n = q // 2

    def line(u, v):
        return (
            mul(u[1], v[2], mod) ^ mul(u[2], v[1], mod),
            mul(u[2], v[0], mod) ^ mul(u[0], v[2], mod),
            mul(u[0], v[1], mod) ^ mul(u[1], v[0], mod),
        )

    l2 = (1, 1, 0)
    count = 0
    side0 = [(0, 1, z) for z in range(q)]
    side1 = [(1, 0, z) for z in range(q)]
    side2 = [(1, 1, z) for z in range(q)]
    for A0 in itertools.combinations(side0, n):
        for A1 in itertools.combinations(side1, n):
            A2 = {normalize(line(line(r0, r1), l2), mod) for r0 in A0 for r1 in A1}
            if len(A2) != n or not A2 <= set(side2):
                continue
            S = set(A0) | set(A1) | A2
            ok = True
            # closure from every pair of sides
            for X, Y, l in ((A0, A2, (0, 1, 0)), (A1, A2, (1, 0, 0))):
                for r0 in X:
                    for r2 in Y:
                        if normalize(line(line(r0, r2), l), mod) not in S:
                            ok = False
            count += ok
    return count


def rank_gf2(vectors) -> int:
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return len(basis)


def club_census_h3():
    """(subspaces, clubs, per-head counts) over all rank-3 subspaces of F2^6 for q = 8."""
    mod = 0b1011
    h = 3
    vecs = range(1, 1 << (2 * h))
    seen = set()
    subspaces = 0
    clubs: dict = {}
    for a, b, c in itertools.combinations(vecs, 3):
        if rank_gf2([a, b, c]) != 3:
            continue
        span = frozenset(x for x in (a, b, c, a ^ b, a ^ c, b ^ c, a ^ b ^ c))
        if span in seen:
            continue
        seen.add(span)
        subspaces += 1
        owners: dict = {}
        for v in span:
            p = normalize((v & 7, v >> 3), mod)
            owners[p] = owners.get(p, 0) + 1
        heavy = [p for p, k in owners.items() if k > 1]
        if len(heavy) == 1 and owners[heavy[0]] == 3:
            clubs[frozenset(owners)] = heavy[0]
    per_head: dict = {}
    for hd in clubs.values():
        per_head[hd] = per_head.get(hd, 0) + 1
    return subspaces, len(clubs), per_head


if __name__ == "__main__":
    print("MODULI = {")
    for m in range(2, 17):
        row = (
            smallest_modulus(m),
            smallest_modulus(m, primitive=True),
            smallest_modulus(m, primitive=True, vdd=True) if m >= 3 else None,
        )
        print(f"    {m}: ({', '.join(hex(x) if x else 'None' for x in row)}),")
    print("}")
    f = 0b10011
    print("trace zeros q=16:", sum(1 for x in range(16) if trace(x, f) == 0))
    print("lam*lam^3 q=16:", hex(mul(2, 8, f)))
    print("stabilizer club_trace q=8:", stabilizer(club_trace_points(0b1011), 0b1011))
    print("triads q=8:", triad_count(0b1011))
    print("club census h=3:", club_census_h3())
