"""Linear sets on PG(1, q) and the club constructors.

A linear set is B(mu) for a subspace mu of PG(2t-1, q0) under the
Desarguesian spread coming from PG(1, q0^t).  The witness keeps mu together
with the weight of every point, so club structure never has to be guessed
from a bare point set.  The one exception is :func:`recognize_maxhead_club`,
which handles clubs whose head weight is rank - 1.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from math import gcd
from types import MappingProxyType

from . import gf2
from .errors import BadParams, DegenerateInput, NotPowerOfTwo, NotScattered, PreconditionError
from .gf2field import BasisMap, Field, field_for
from .projgeom import FieldReduction, Point, Spread, Subspace, all_points
from .tracesys import describe_coset

__all__ = [
    "ClubDescriptor",
    "LinearSetWitness",
    "line_spread",
    "weight_profile",
    "club_trace",
    "club_km",
    "club_gw",
    "club_hminus2",
    "club_scattered",
    "recognize_maxhead_club",
    "complement_club_check",
    "trace_form",
    "gw_head_weight",
    "club_size",
]


@dataclass(frozen=True)
class ClubDescriptor:
    i: int
    rank: int
    head: Point | None
    size: int


@dataclass(frozen=True, eq=False)
class LinearSetWitness:
    mu: Subspace
    spread: Spread
    rank: int
    profile: Mapping[Point, int]

    @property
    def points(self) -> frozenset[Point]:
        return frozenset(self.profile)

    @property
    def size(self) -> int:
        return len(self.profile)

    @property
    def q0(self) -> int:
        return 1 << self.spread.d

    def vector_count_ok(self) -> bool:
        s = self.q0
        return sum(s**w - 1 for w in self.profile.values()) == s**self.rank - 1

    @property
    def heavy(self) -> list[Point]:
        return sorted(p for p, w in self.profile.items() if w > 1)

    @property
    def is_club(self) -> bool:
        return len(self.heavy) <= 1

    @property
    def head(self) -> Point | None:
        """The unique point of weight > 1, or None (scattered sets have no head)."""
        h = self.heavy
        return h[0] if len(h) == 1 else None

    @property
    def head_weight(self) -> int:
        if not self.is_club:
            raise PreconditionError("not a club")
        h = self.head
        return self.profile[h] if h is not None else 1

    def descriptor(self) -> ClubDescriptor:
        return ClubDescriptor(self.head_weight, self.rank, self.head, self.size)

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "mu": [[hex(x) for x in r] for r in self.mu.rows],
            "profile": [
                {"point": [hex(x) for x in p], "weight": w} for p, w in sorted(self.profile.items())
            ],
        }


def club_size(q0: int, rank: int, i: int) -> int:
    """q0^(k-1) + ... + q0^i + 1."""
    return sum(q0**j for j in range(i, rank)) + 1


_SPREADS: dict[tuple, Spread] = {}


def line_spread(F: Field, e: int = 1, basis: BasisMap | None = None) -> Spread:
    """Spread of PG(2t-1, 2^e) coming from PG(1, 2^m), t = m/e (cached)."""
    key = (F.modulus, e, basis)
    s = _SPREADS.get(key)
    if s is None:
        s = _SPREADS[key] = Spread(FieldReduction(F, e, basis), 2)
    return s


def weight_profile(mu: Subspace, spread: Spread) -> LinearSetWitness:
    counts = Counter(spread.owner(p) for p in mu.points())
    s = 1 << spread.d
    prof = {}
    for P, c in counts.items():
        w, tot = 1, 1
        while tot < c:
            tot = tot * s + 1
            w += 1
        if tot != c:
            raise AssertionError("point count is not a q0-projective count")
        prof[P] = w
    wit = LinearSetWitness(mu, spread, mu.dim, MappingProxyType(dict(sorted(prof.items()))))
    if not wit.vector_count_ok():
        raise AssertionError("vector-count identity violated")
    return wit


def _field(field_or_h, e: int) -> Field:
    if isinstance(field_or_h, Field):
        return field_or_h
    return field_for(int(field_or_h) * e)


def _from_map(F: Field, e: int, domain_basis: Iterable, fn) -> LinearSetWitness:
    sp = line_spread(F, e)
    vecs = [sp.expand_vec(fn(x)) for x in domain_basis]
    mu = sp.subspace(vecs)
    return weight_profile(mu, sp)


def _kbasis(F: Field, e: int) -> list[int]:
    """A GF(2^e)-basis 1, lam, ..., lam^(t-1) of the whole field."""
    return [F.pow(F.lam, j) for j in range(F.m // e)]


def club_trace(field_or_h, e: int = 1) -> LinearSetWitness:
    """{(x, Tr(x))} with Tr the trace onto GF(q0), q0 = 2^e."""
    F = _field(field_or_h, e)
    if F.m // e < 2:
        raise BadParams("need h >= 2")
    return _from_map(F, e, _kbasis(F, e), lambda x: (x, F.trace(x, e)))


def club_km(field_or_h, i: int, n: int, e: int = 1) -> LinearSetWitness:
    """{(L(x)^(q0^n), x)} with L the relative trace onto GF(q0^(h-i))."""
    F = _field(field_or_h, e)
    h = F.m // e
    if not (1 <= i < h) or h % (h - i) or gcd(h - i, n) != 1:
        raise BadParams(f"club_km needs (h-i) | h and gcd(h-i, n) = 1 (h={h}, i={i}, n={n})")
    d = e * (h - i)
    return _from_map(F, e, _kbasis(F, e), lambda x: (F.frobenius(F.trace(x, d), e * n), x))


def _scattered_piece_ok(F: Field, e: int, r: int, n: int) -> bool:
    """{(x, x^(q0^n)) : x in GF(q0^r)} is scattered over GF(q0)."""
    sub = F.subfield_elements(e * r)
    K = F.subfield_elements(e)
    seen: dict[int, int] = {}
    # scattered iff x^(q0^n - 1) = y^(q0^n - 1) forces y/x in GF(q0)
    for x in sub:
        if not x:
            continue
        ratio = F.div(F.frobenius(x, e * n), x)
        seen[ratio] = seen.get(ratio, 0) + 1
    return all(c == len(K) - 1 for c in seen.values())


def club_gw(field_or_h, r: int, t: int, n: int, a: int, b: int, e: int = 1) -> LinearSetWitness:
    """{(f(x0) - a x0, b x0 + sum_{i>=1} x_i w^i)} with f(x) = x^(q0^n) on GF(q0^r).

    The field must have degree e*r*t; x_i range over GF(q0^r) and w is the
    residue of x, which generates the field over GF(q0^r).
    """
    if isinstance(field_or_h, Field):
        F = field_or_h
    else:
        F = field_for(int(field_or_h) * e)
    if r < 2 or t < 2 or F.m != e * r * t:
        raise BadParams("club_gw needs r > 1, t > 1 and field degree e*r*t")
    if not b:
        raise BadParams("club_gw requires b != 0")
    dr = e * r
    if not (F.in_subfield(a, dr) and F.in_subfield(b, dr)):
        raise BadParams("a and b must lie in GF(q0^r)")
    if gcd(n, r) != 1 or not _scattered_piece_ok(F, e, r, n):
        raise NotScattered(f"x^(q0^{n}) does not give a scattered set on PG(1, q0^{r})")
    w = F.lam
    sub_basis = _sub_kbasis(F, e, r)
    dom = []
    # slot 0 carries x0, slots 1..t-1 carry x_i
    for slot in range(t):
        for beta in sub_basis:
            dom.append((slot, beta))

    def fn(arg):
        slot, x = arg
        if slot == 0:
            return (F.frobenius(x, e * n) ^ F.mul(a, x), F.mul(b, x))
        return (0, F.mul(x, F.pow(w, slot)))

    return _from_map(F, e, dom, fn)


def _sub_kbasis(F: Field, e: int, r: int) -> list[int]:
    """A GF(q0)-basis of GF(q0^r): powers of a primitive element of GF(q0^r)."""
    g = F.subfield_generator(e * r)
    return [F.pow(g, j) for j in range(r)]


def gw_head_weight(F: Field, r: int, t: int, n: int, a: int, e: int = 1) -> int:
    """Predicted head weight r(t-1), or r(t-1)+1 when f(x) = a x has a nonzero root."""
    has_root = any(x and F.frobenius(x, e * n) == F.mul(a, x) for x in F.subfield_elements(e * r))
    return r * (t - 1) + (1 if has_root else 0)


def club_hminus2(field_or_h, e: int = 1) -> LinearSetWitness:
    """The rank-h set (t1 lam + ... + t_{h-1} lam^{h-1}, t_{h-1} + t_h lam), t_i in GF(q0)."""
    F = _field(field_or_h, e)
    h = F.m // e
    if h < 3:
        raise BadParams("club_hminus2 needs h >= 3")
    lam = F.lam
    K = F.subfield_basis(e) if e > 1 else [1]
    dom = []
    for j in range(1, h + 1):
        for kap in K:
            dom.append((j, kap))

    def fn(arg):
        j, c = arg
        if j < h - 1:
            return (F.mul(c, F.pow(lam, j)), 0)
        if j == h - 1:
            return (F.mul(c, F.pow(lam, h - 1)), c)
        return (0, F.mul(c, lam))

    return _from_map(F, e, dom, fn)


def club_scattered(field_or_h, n: int, e: int = 1) -> LinearSetWitness:
    """{(x, x^(q0^n))}."""
    F = _field(field_or_h, e)
    h = F.m // e
    if gcd(n, h) != 1:
        raise BadParams(f"gcd({n}, {h}) != 1")
    return _from_map(F, e, _kbasis(F, e), lambda x: (x, F.frobenius(x, e * n)))


# recognition from bare point sets


def _chart(F: Field, N: Point, R: Point):
    """Return a function P -> x with P proportional to x*N + R (P != N)."""
    n = len(N)
    for i in range(n):
        for j in range(i + 1, n):
            det = F.mul(N[i], R[j]) ^ F.mul(N[j], R[i])
            if det:
                dinv = F.inv(det)

                def coord(P, i=i, j=j, dinv=dinv):
                    a = F.mul(F.mul(P[i], R[j]) ^ F.mul(P[j], R[i]), dinv)
                    b = F.mul(F.mul(N[i], P[j]) ^ F.mul(N[j], P[i]), dinv)
                    v = tuple(F.mul(a, x) ^ F.mul(b, y) for x, y in zip(N, R))
                    if v != tuple(P):
                        raise DegenerateInput("point not on the line spanned by N and R")
                    if not b:
                        raise DegenerateInput("point coincides with the head")
                    return F.div(a, b)

                return coord
    raise DegenerateInput("N and R coincide")


def affine_coordinates(F: Field, S: Iterable[Point], N: Point) -> list[int]:
    """Coordinates x_P with P ~ x_P*N + R, R the smallest point of S."""
    pts = sorted(set(S))
    if N in pts:
        raise DegenerateInput("head lies in the set")
    coord = _chart(F, N, pts[0])
    return [coord(P) for P in pts]


def recognize_maxhead_club(F: Field, S: Iterable[Point], N: Point) -> ClubDescriptor | None:
    """S + {N} as an F2-linear club whose head N has weight rank - 1, or None."""
    pts = sorted(set(S))
    s = len(pts)
    if s == 0 or s & (s - 1):
        raise NotPowerOfTwo(f"|S| = {s} is not a power of two")
    k = s.bit_length()  # log2|S| + 1
    try:
        xs = affine_coordinates(F, pts, N)
    except DegenerateInput:
        return None
    x0 = xs[0]
    if len(gf2.rref(x ^ x0 for x in xs)) != k - 1:
        return None
    return ClubDescriptor(k - 1, k, tuple(N), s + 1)


def complement_club_check(C: LinearSetWitness) -> bool:
    """(line minus C) plus the head is an (h-2)-club of rank h-1."""
    F = C.spread.F
    if C.spread.d != 1 or C.spread.n != 2:
        raise PreconditionError("expects an F2-linear set on PG(1, 2^h)")
    h = F.m
    if C.rank != h or not C.is_club or C.head is None or C.head_weight != h - 2:
        raise PreconditionError("input is not an (h-2)-club of rank h")
    rest = [P for P in all_points(F, 2) if P not in C.profile]
    try:
        d = recognize_maxhead_club(F, rest, C.head)
    except NotPowerOfTwo:
        return False
    return d is not None and d.i == h - 2 and d.rank == h - 1


@dataclass(frozen=True)
class TraceForm:
    """The club is, in the chart x -> kappa*x + e, (1,0) + {(y,1): Tr(y)=1 or Tr(eps*y)=c}."""

    eps: int
    c: int
    kappa: int
    shift: int
    R: Point


def trace_form(F: Field, C: Iterable[Point], N: Point) -> TraceForm:
    """Put an (h-2)-club of rank h with head N into trace form.

    The complement T of C on the line is a coset of a codimension-2
    F2-subspace in the chart P ~ x N + R; two trace equations cut it out and a
    scaling plus translation normalise the first one to Tr(y) = 0.
    """
    cset = set(C)
    line_pts = _line_points(F, N, cset)
    T = sorted(P for P in line_pts if P not in cset)
    xs = affine_coordinates(F, T, N)
    R = T[0]
    eqs = describe_coset(F, xs)
    if len(eqs) != 2:
        raise PreconditionError("complement is not a codimension-2 coset")
    (k1, c1), (k2, c2) = eqs
    shift = 0
    if c1:
        shift = next(z for z in F.elements() if F.trace(z))
    eps = F.div(k2, k1)
    c = c2 ^ F.trace(F.mul(eps, shift))
    form = TraceForm(eps, c ^ 1, k1, shift, R)
    # check: y = k1 x + shift gives Tr(y) = 0 and Tr(eps y) = c on T exactly
    ys = {F.mul(k1, x) ^ shift for x in xs}
    want = {y for y in F.elements() if F.trace(y) == 0 and F.trace(F.mul(eps, y)) == c}
    if ys != want:
        raise AssertionError("trace form reconstruction failed")
    return form


def _line_points(F: Field, N: Point, S: set) -> list[Point]:
    if len(N) == 2:
        return all_points(F, 2)
    from .projgeom import line_through, points_on_line

    other = next(iter(S))
    return points_on_line(F, line_through(F, N, other))
