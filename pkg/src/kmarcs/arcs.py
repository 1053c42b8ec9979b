"""KM-arcs in PG(2, q): the (0, 2, t) verifier and the constructors.

Every constructor returns a :class:`KMArc` that has passed :func:`verify_km`.
"""

from __future__ import annotations

import dataclasses
from collections import Counter
from collections.abc import Iterable, Mapping
from dataclasses import dataclass

import numpy as np

from . import gf2
from .errors import (
    BadField,
    BadGeometry,
    BadLift,
    BadParams,
    NotOPolynomial,
    NotTranslation,
    VerificationFailure,
)
from .gf2field import BasisMap, Field, FieldSpec, field_for, find_normal_basis, is_primitive
from .linsets import LinearSetWitness, line_spread, weight_profile
from .planar import kernel
from .projgeom import (
    FieldReduction,
    Line,
    Point,
    Spread,
    Subspace,
    b_operator,
    intersect,
    meet,
    normalize,
    on_line,
    points_on_line,
    span,
)

__all__ = [
    "LineSpectrum",
    "KMArc",
    "FamilyParams",
    "line_spectrum",
    "verify_km",
    "lift_club_to_arc",
    "directions_club",
    "line_chart",
    "new_family",
    "vandendriessche",
    "km_family",
    "gw_cone",
    "triad_trace",
    "is_projective_triad",
    "triad_of_arc",
    "translation_hyperoval",
    "arc_to_json",
    "arc_from_json",
]


@dataclass(frozen=True)
class LineSpectrum:
    """Number of lines meeting a point set in each possible number of points."""

    counts: tuple[tuple[int, int], ...]

    @classmethod
    def from_dict(cls, d: Mapping[int, int]) -> "LineSpectrum":
        return cls(tuple(sorted((k, v) for k, v in d.items() if v)))

    def as_dict(self) -> dict[int, int]:
        return dict(self.counts)

    @property
    def total(self) -> int:
        return sum(v for _, v in self.counts)

    @property
    def incidences(self) -> int:
        return sum(k * v for k, v in self.counts)

    def to_json(self) -> dict:
        return {str(k): v for k, v in self.counts}


@dataclass(frozen=True)
class KMArc:
    field: Field
    points: frozenset
    t: int
    nucleus: Point | None
    t_secants: tuple[Line, ...]
    spectrum: LineSpectrum

    @property
    def q(self) -> int:
        return self.field.q

    def sorted_points(self) -> list[Point]:
        return sorted(self.points)

    def on(self, l: Line) -> list[Point]:
        return sorted(p for p in self.points if on_line(self.field, p, l))


@dataclass(frozen=True)
class _Scan:
    keys: np.ndarray
    sizes: np.ndarray
    degree: np.ndarray
    spectrum: LineSpectrum


def _scan(F: Field, pts: list[Point]) -> _Scan:
    K = kernel(F)
    q = F.q
    P = K.array(pts)
    keys, sizes, degree = K.multi_lines(P)
    ones = int((q + 1 - degree).sum())
    c = Counter(int(s) for s in sizes)
    c[1] = ones
    c[0] = q * q + q + 1 - len(keys) - ones
    return _Scan(keys, sizes, degree, LineSpectrum.from_dict(c))


def line_spectrum(F: Field, points: Iterable[Point]) -> LineSpectrum:
    pts = sorted({normalize(F, p) for p in points})
    return _scan(F, pts).spectrum


def _decode(F: Field, key) -> Line:
    return tuple(int(x) for x in kernel(F).decode(np.array([key]))[0])


def verify_km(F: Field, points: Iterable[Point]) -> KMArc:
    """Check the (0, 2, t) property and build the arc record.

    Raises VerificationFailure carrying an offending line when the check fails.
    """
    pts = sorted({normalize(F, p) for p in points})
    if not pts:
        raise VerificationFailure("empty point set")
    if any(len(p) != 3 for p in pts):
        raise VerificationFailure("points must have three coordinates")
    q = F.q
    sc = _scan(F, pts)
    spec = sc.spectrum.as_dict()
    assert sc.spectrum.total == q * q + q + 1
    assert sc.spectrum.incidences == len(pts) * (q + 1)
    if spec.get(1):
        i = int(np.argmax(sc.degree < q + 1))
        through = kernel(F).lines_through_point(pts[i])
        free = np.setdiff1d(through, sc.keys)
        raise VerificationFailure("tangent line found", _decode(F, free[0]), 1)
    if len(sc.keys) == 0:
        raise VerificationFailure("no secant lines")
    t = int(sc.sizes.max())
    bad = np.nonzero((sc.sizes != 2) & (sc.sizes != t))[0]
    if len(bad):
        k = bad[0]
        raise VerificationFailure("line of illegal size", _decode(F, sc.keys[k]), int(sc.sizes[k]))
    if t != 2 and 2 not in spec:
        raise VerificationFailure("no 2-secants")
    if len(pts) != q + t:
        raise VerificationFailure(f"size {len(pts)} differs from q + t = {q + t}")
    if q % t:
        raise VerificationFailure(f"t = {t} does not divide q")
    if t == 2:
        return KMArc(F, frozenset(pts), 2, None, (), sc.spectrum)
    tlines = sorted(_decode(F, k) for k in sc.keys[sc.sizes == t])
    if len(tlines) != q // t + 1:
        raise VerificationFailure(f"{len(tlines)} t-secants instead of {q // t + 1}", tlines[0], t)
    N = meet(F, tlines[0], tlines[1])
    for l in tlines[2:]:
        if not on_line(F, N, l):
            raise VerificationFailure("t-secants are not concurrent", l, t)
    return KMArc(F, frozenset(pts), t, N, tuple(tlines), sc.spectrum)


# helpers on affine point sets


def _points_from_arrays(F: Field, V: np.ndarray) -> list[Point]:
    if len(V) == 0:
        return []
    V = kernel(F).normalize(V)
    return [tuple(int(x) for x in row) for row in V]


def _with_directions(F: Field, affine: np.ndarray) -> list[Point]:
    """Affine points (rows (x, y)) plus the directions they do not determine."""
    K = kernel(F)
    q = F.q
    n = len(affine)
    i, j = np.triu_indices(n, 1)
    d = affine[i] ^ affine[j]
    dirs = np.concatenate([d, np.zeros((len(d), 1), np.int64)], axis=1)
    det = set(K.encode(K.normalize(dirs)).tolist())
    inf = [(0, 1, 0)] + [(1, y, 0) for y in range(q)]
    missing = [p for p in inf if K.encode(np.array([p]))[0] not in det]
    aff = np.concatenate([affine, np.ones((n, 1), np.int64)], axis=1)
    return [tuple(int(x) for x in row) for row in aff] + missing


def _rel_trace_table(F: Field, d: int) -> np.ndarray:
    if d == 1:
        return F.trace_table
    z = np.arange(F.q, dtype=np.int64)
    out = np.zeros(F.q, dtype=np.int64)
    for i in range(F.m):
        img = F.trace(1 << i, d)
        out ^= np.where((z >> i) & 1 == 1, img, 0)
    return out


# lifting clubs to arcs and back


def _lift_spread(W: LinearSetWitness) -> Spread:
    return Spread(W.spread.red, 3)


def lift_club_to_arc(W: LinearSetWitness, lift_point=None) -> KMArc:
    """Translation arc (B(pi) minus B(mu)) plus (line at infinity minus B(mu)).

    ``W`` is an F2-linear club on PG(1, 2^h), identified with the line Z = 0.
    ``lift_point`` is a 3h-bit vector off H (default: 1 in the first
    Z coordinate).
    """
    sp2 = W.spread
    if sp2.d != 1 or sp2.n != 2:
        raise BadParams("lift needs an F2-linear set on PG(1, 2^h)")
    if not W.is_club:
        raise BadParams("B(mu) is not a club")
    F = sp2.F
    h = F.m
    sp3 = _lift_spread(W)
    mu3 = sp3.subspace(r + (0,) * h for r in W.mu.rows)
    H = sp3.subspace(tuple(1 if k == j else 0 for k in range(3 * h)) for j in range(2 * h))
    if lift_point is None:
        lift_point = tuple(1 if k == 2 * h else 0 for k in range(3 * h))
    lift_point = tuple(lift_point)
    if len(lift_point) != 3 * h or not any(lift_point[2 * h :]):
        raise BadLift("lift point lies in H")
    pi = span(mu3, sp3.subspace([lift_point]))
    if intersect(pi, H) != mu3:
        raise BadLift("span(mu, lift point) meets H outside mu")
    club = W.points
    affine = {sp3.owner(p) for p in pi.points() if any(p[2 * h :])}
    inf = [normalize(F, (x, y, 0)) for x, y in _line_points(F)]
    pts = affine | {p for p in inf if (p[0], p[1]) not in club}
    arc = verify_km(F, pts)
    i = W.head_weight
    if arc.t != 1 << i:
        raise VerificationFailure(f"lift gave type {arc.t}, expected {1 << i}")
    if len(affine) != F.q:
        raise VerificationFailure("affine part does not have q points")
    if i > 1 and arc.nucleus != W.head + (0,):
        raise VerificationFailure("nucleus differs from the club head")
    return arc


def _line_points(F: Field) -> list[tuple[int, int]]:
    return [(0, 1)] + [(1, y) for y in range(F.q)]


def line_chart(F: Field, ell: Line) -> tuple[tuple[int, int, int], ...]:
    """A matrix whose action sends the line ``ell`` to Z = 0 (identity for Z = 0)."""
    a, b, c = normalize(F, ell)
    if c and not a and not b:
        return ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    if c:
        return ((1, 0, 0), (0, 1, 0), (a, b, c))
    if b:
        return ((1, 0, 0), (0, 0, 1), (a, b, c))
    return ((0, 1, 0), (0, 0, 1), (a, b, c))


def _apply(F: Field, M, p) -> Point:
    return normalize(F, tuple(
        F.mul(M[i][0], p[0]) ^ F.mul(M[i][1], p[1]) ^ F.mul(M[i][2], p[2]) for i in range(3)
    ))


def directions_club(A: KMArc, ell: Line, basis: BasisMap | str | None = "normal") -> LinearSetWitness:
    """Recover the club of a translation arc with translation line ``ell``.

    The arc is moved by :func:`line_chart` so that ``ell`` becomes Z = 0; the
    returned witness lives on that line.  Field reduction uses a normal basis
    by default.
    """
    F = A.field
    h = F.m
    if isinstance(basis, str):
        basis = find_normal_basis(F) if basis == "normal" else None
    M = line_chart(F, ell)
    img = [_apply(F, M, p) for p in A.points]
    affine = []
    at_inf = set()
    for p in img:
        if p[2]:
            s = F.inv(p[2])
            affine.append((F.mul(p[0], s), F.mul(p[1], s)))
        else:
            at_inf.add((p[0], p[1]))
    affine.sort()
    if len(affine) != F.q:
        raise NotTranslation(f"{len(affine)} affine points instead of q")
    x0, y0 = affine[0]
    packed = {(x ^ x0) | ((y ^ y0) << h) for x, y in affine}
    vb = gf2.rref(packed)
    if len(vb) != h or len(packed) != F.q:
        raise NotTranslation("affine part is not a coset of an F2-subspace")
    sp2 = line_spread(F, 1, basis)
    mask = (1 << h) - 1
    mu = sp2.subspace(sp2.expand_vec((v & mask, v >> h)) for v in vb)
    W = weight_profile(mu, sp2)
    expect = {normalize(F, p) for p in _line_points(F)} - at_inf
    if set(W.points) != expect:
        raise NotTranslation("directions do not complement the arc on the line")
    if not W.is_club:
        raise NotTranslation("direction set is not a club")
    if A.nucleus is not None and A.t > 2:
        N = _apply(F, M, A.nucleus)
        if W.head != (N[0], N[1]):
            raise NotTranslation("club head differs from the nucleus")
    return W


# the new q/4 family


@dataclass(frozen=True)
class FamilyParams:
    field: Field
    alpha: int
    beta: int
    a: int
    b: int

    def __post_init__(self):
        F = self.field
        if self.alpha in (0, 1) or self.beta in (0, 1):
            raise BadParams("alpha and beta must avoid 0 and 1")
        if F.mul(self.alpha, self.beta) == 1:
            raise BadParams("alpha * beta must differ from 1")
        if self.a not in (0, 1) or self.b not in (0, 1):
            raise BadParams("a and b are bits")
        if F.m < 3:
            raise BadParams("need h >= 3")
        if self.xi ^ self.beta ^ self.gamma != 1:
            raise AssertionError("xi + beta + gamma != 1")

    @property
    def gamma(self) -> int:
        F = self.field
        return F.div(self.beta ^ 1, F.mul(self.alpha, self.beta) ^ 1)

    @property
    def xi(self) -> int:
        F = self.field
        return F.mul(F.mul(self.alpha, self.beta), self.gamma)

    def secants(self) -> tuple[Line, ...]:
        g = self.gamma
        return ((0, 0, 1), (0, 1, 0), (0, 1, 1), (0, 1, g), (0, 1, self.beta ^ 1))


def _family_arc(F: Field, parts: list[np.ndarray], lines: tuple[Line, ...]) -> KMArc:
    pts = []
    for P in parts:
        pts += _points_from_arrays(F, P)
    arc = verify_km(F, pts)
    q = F.q
    if arc.t != q // 4:
        raise VerificationFailure(f"type {arc.t} instead of q/4")
    N = (1, 0, 0)
    for l, P in zip(lines, parts):
        if len(P) != q // 4 or not on_line(F, N, l):
            raise VerificationFailure("construction secant has the wrong size", l, len(P))
    if arc.t == 2:
        # q = 8: a hyperoval; keep the construction's secants through (1,0,0)
        arc = dataclasses.replace(arc, nucleus=N, t_secants=tuple(sorted(normalize(F, l) for l in lines)))
    elif arc.nucleus != N:
        raise VerificationFailure("nucleus is not (1,0,0)")
    return arc


def new_family(p: FamilyParams) -> KMArc:
    F = p.field
    q = F.q
    T = F.trace_table
    z = np.arange(q, dtype=np.int64)

    def tr_div(c):
        return T[F.vmul(z, np.full(q, F.inv(c)))]

    al, be, ga, xi = p.alpha, p.beta, p.gamma, p.xi
    ab = F.mul(al, be)
    ag = F.mul(al, ga)
    one = np.ones(q, np.int64)
    zero = np.zeros(q, np.int64)

    def part(mask, y, zc):
        sel = np.nonzero(mask)[0]
        return np.stack([z[sel], np.full(len(sel), y), zc[sel]], axis=1)

    a, b = p.a, p.b
    parts = [
        part((T == 0) & (tr_div(al) == a), 1, zero),
        part((T == 0) & (tr_div(ag) == 0), 0, one),
        part((T == 1) & (tr_div(ab) == b), 1, one),
        part((tr_div(ag) == a ^ 1) & (tr_div(xi) == b ^ 1), ga, one),
        part((tr_div(ab) == a ^ b ^ 1) & (tr_div(xi) == b), be ^ 1, one),
    ]
    return _family_arc(F, parts, p.secants())


def vandendriessche(F: Field, c: int) -> KMArc:
    """The five coordinate-bit sets read in the polynomial basis of F."""
    h = F.m
    if h < 3 or (F.modulus >> (h - 1)) & 1 or (F.modulus >> (h - 2)) & 1:
        raise BadField("modulus must have no terms of degree h-1 and h-2")
    if not is_primitive(F.modulus):
        raise BadField("modulus must be primitive")
    if c not in (0, 1):
        raise BadParams("c is a bit")
    q = F.q
    z = np.arange(q, dtype=np.int64)

    def bit(i):
        return (z >> i) & 1

    def parity_upto(k):
        out = np.zeros(q, np.int64)
        for i in range(k + 1):
            out ^= bit(i)
        return out

    one = np.ones(q, np.int64)
    zero = np.zeros(q, np.int64)
    lam = F.lam
    lam2 = F.mul(lam, lam)

    def part(mask, y, zc):
        sel = np.nonzero(mask)[0]
        return np.stack([z[sel], np.full(len(sel), y), zc[sel]], axis=1)

    p3 = parity_upto(h - 3)
    parts = [
        part((bit(h - 2) == 0) & (bit(h - 3) == 1), 1, zero),
        part((bit(h - 1) == 0) & (bit(h - 2) == 1), 0, one),
        part((bit(h - 2) == 0) & (p3 == c), 1, one),
        part(((bit(h - 1) ^ bit(h - 2)) == 1) & (p3 == c), lam, one),
        part((bit(h - 1) == 0) & (parity_upto(h - 2) == c), lam2, one),
    ]
    lines = ((0, 0, 1), (0, 1, 0), (0, 1, 1), (0, 1, lam), (0, 1, lam2))
    return _family_arc(F, parts, lines)


def vdd_field(h: int) -> Field:
    from .gf2field import find_modulus

    return field_for(find_modulus(h, primitive=True, vdd_compatible=True))


# Korchmaros-Mazzocca type arcs


def _validate_opoly(F: Field, d: int, g: Mapping[int, int]) -> None:
    small, embed = F.subfield(d)
    inv = {v: k for k, v in enumerate(embed)}
    sub = set(embed)
    if set(g) != sub or not set(g.values()) <= sub:
        raise NotOPolynomial("table must map GF(2^d) into itself")
    pts = [(inv[g[x]], inv[x], 1) for x in embed] + [(1, 0, 0), (0, 1, 0)]
    try:
        arc = verify_km(small, pts)
    except VerificationFailure as exc:
        raise NotOPolynomial(f"graph is not a hyperoval: {exc}") from exc
    if arc.t != 2:
        raise NotOPolynomial("graph is not a hyperoval")


def km_family(F: Field, i: int, g: int | Mapping[int, int]) -> KMArc:
    """Affine part {(g(L(x)), x, 1)} completed at infinity; type 2^i.

    ``g`` is either n (meaning x^(2^n)) or a table over GF(2^(h-i)) given as
    big-field elements.
    """
    h = F.m
    if not (1 <= i < h) or h % (h - i):
        raise BadParams(f"need (h-i) | h, got h={h}, i={i}")
    d = h - i
    sub = F.subfield_elements(d)
    if isinstance(g, int):
        table = {x: F.frobenius(x, g) for x in sub}
    else:
        table = dict(g)
    _validate_opoly(F, d, table)
    L = _rel_trace_table(F, d)
    gl = np.zeros(F.q, np.int64)
    for x, y in table.items():
        gl[L == x] = y
    z = np.arange(F.q, dtype=np.int64)
    pts = _with_directions(F, np.stack([gl, z], axis=1))
    arc = verify_km(F, pts)
    if arc.t != 1 << i:
        raise VerificationFailure(f"type {arc.t} instead of {1 << i}")
    return arc


def triad_trace(F: Field) -> KMArc:
    """Type q/2 arc with affine part (x, Tr(x), 1)."""
    if F.m < 2:
        raise BadParams("need h >= 2")
    z = np.arange(F.q, dtype=np.int64)
    pts = _with_directions(F, np.stack([z, F.trace_table], axis=1))
    arc = verify_km(F, pts)
    if arc.t != F.q // 2:
        raise VerificationFailure("triad_trace is not of type q/2")
    return arc


def translation_hyperoval(F: Field, n: int) -> KMArc:
    from .linsets import club_scattered

    return lift_club_to_arc(club_scattered(F, n))


def is_projective_triad(F: Field, S: Iterable[Point], lines: tuple[Line, Line, Line]) -> bool:
    """Closure test for a set of 3n - 2 points, n on each of three concurrent lines.

    The common point of the lines must belong to S.
    """
    l0, l1, l2 = (normalize(F, l) for l in lines)
    if len({l0, l1, l2}) != 3:
        return False
    P = meet(F, l0, l1)
    if not on_line(F, P, l2):
        return False
    pts = {normalize(F, p) for p in S}
    if P not in pts:
        return False
    parts = [[p for p in pts if on_line(F, p, l) and p != P] for l in (l0, l1, l2)]
    if sum(len(x) for x in parts) != len(pts) - 1:
        return False
    n = len(parts[0]) + 1
    if any(len(x) + 1 != n for x in parts) or len(pts) != 3 * n - 2:
        return False
    if n == 1:
        return True
    K = kernel(F)
    A0, A1 = K.array(parts[0]), K.array(parts[1])
    i, j = np.meshgrid(np.arange(len(A0)), np.arange(len(A1)), indexing="ij")
    i, j = i.ravel(), j.ravel()
    L = K.cross(A0[i], A1[j])
    R = K.normalize(K.cross(L, np.repeat(np.array([l2]), len(L), axis=0)))
    keys = np.unique(K.encode(R))
    have = np.sort(K.encode(K.array(parts[2])))
    return bool(np.all(K.member(keys, have)))


def triad_of_arc(A: KMArc) -> tuple[frozenset[Point], tuple[Line, Line, Line]]:
    """The projective triad of side q/2 + 1 attached to a type q/2 arc.

    It consists of the nucleus and the points of the three q/2-secants that
    are not on the arc.
    """
    F = A.field
    if A.t != F.q // 2 or len(A.t_secants) != 3 or A.nucleus is None:
        raise BadParams("needs a KM-arc of type q/2")
    lines = tuple(A.t_secants)
    pts = {A.nucleus}
    for l in lines:
        pts |= {p for p in points_on_line(F, l) if p not in A.points}
    return frozenset(pts), lines


# Gacs-Weiner cones


def gw_cone(
    F: Field,
    r: int,
    s: int,
    base: Iterable[Point],
    P: Point | None = None,
    vertex_mu: Subspace | None = None,
    variant: str = "in",
) -> KMArc:
    """Cone with vertex mu over a base set of the subplane PG(2, 2^r).

    The plane pi is the field reduction of the coordinate subplane over
    GF(2^r); base points and P are given with coordinates in that subfield.
    """
    if F.m != r * s or s < 2:
        raise BadParams("need field degree r*s with s >= 2")
    if variant not in ("in", "out", "recursive"):
        raise BadParams(f"unknown variant {variant}")
    base = sorted({normalize(F, p) for p in base})
    for p in base + ([P] if P is not None else []):
        if not all(F.in_subfield(x, r) for x in p):
            raise BadGeometry(f"point {p} is not in the subplane PG(2, 2^{r})")
    small, embed = F.subfield(r)
    inv = {v: k for k, v in enumerate(embed)}
    base_small = [tuple(inv[x] for x in p) for p in base]
    try:
        barc = verify_km(small, base_small)
    except VerificationFailure as exc:
        raise BadGeometry(f"base is not a KM-arc of the subplane: {exc}") from exc
    j = barc.t.bit_length() - 1
    if variant in ("in", "out") and barc.t != 2:
        raise BadGeometry("base is not a hyperoval")
    if variant == "recursive" and barc.t > 2:
        N = tuple(embed[x] for x in barc.nucleus)
        if P is not None and normalize(F, P) != N:
            raise BadGeometry("P is not the nucleus of the base arc")
        P = N
    if P is None:
        raise BadGeometry("vertex point P is required")
    P = normalize(F, P)
    if variant == "in" and P not in base:
        raise BadGeometry("variant 'in' needs P on the base")
    if variant in ("out", "recursive") and P in base:
        raise BadGeometry("P must not lie on the base")
    sp = Spread(FieldReduction(F, r), 3)
    rho = sp.element(P)
    pvec = sp.expand_vec(P)
    if vertex_mu is None:
        vertex_mu = sp.subspace(sp.expand_vec([F.mul(b, x) for x in P]) for b in sp.red.basis[1:])
    if vertex_mu.dim != s - 1 or span(vertex_mu, rho) != rho:
        raise BadGeometry("vertex is not a hyperplane of the spread element of P")
    if vertex_mu.contains(pvec):
        raise BadGeometry("vertex passes through P")
    pts: set[Point] = set()
    for Q in base:
        U = span(vertex_mu, sp.subspace([sp.expand_vec(Q)]))
        pts |= b_operator(U, sp)
    pts.discard(P)
    arc = verify_km(F, pts)
    expect = {"in": r * s - r, "out": r * s - r + 1, "recursive": r * s - r + j}[variant]
    if arc.t != 1 << expect:
        raise VerificationFailure(f"cone has type {arc.t}, expected {1 << expect}")
    return arc


def subplane_hyperoval(F: Field, r: int) -> list[Point]:
    """The regular hyperoval {(x^2, x, 1)} + (1,0,0) + (0,1,0) of PG(2, 2^r) inside F.

    For r = 1 this is the frame {(1,0,0), (0,1,0), (0,0,1), (1,1,1)}.
    """
    sub = F.subfield_elements(r)
    return sorted({normalize(F, (F.mul(x, x), x, 1)) for x in sub} | {(1, 0, 0), (0, 1, 0)})


# JSON


def arc_to_json(arc: KMArc) -> dict:
    hexp = lambda p: [hex(x) for x in p]  # noqa: E731
    return {
        "field": arc.field.spec.to_json(),
        "t": arc.t,
        "nucleus": hexp(arc.nucleus) if arc.nucleus is not None else None,
        "points": [hexp(p) for p in arc.sorted_points()],
        "t_secants": [hexp(l) for l in arc.t_secants],
    }


def arc_from_json(d: Mapping) -> KMArc:
    """Rebuild and re-verify an arc; declared metadata must match the verification."""
    F = field_for(FieldSpec.from_json(d["field"]))
    pts = [tuple(int(x, 16) for x in p) for p in d["points"]]
    arc = verify_km(F, pts)
    if arc.t != d["t"]:
        raise VerificationFailure(f"declared t = {d['t']} but verified t = {arc.t}")
    if arc.t == 2 and d.get("nucleus") is not None:
        N = tuple(int(x, 16) for x in d["nucleus"])
        lines = tuple(tuple(int(x, 16) for x in l) for l in d.get("t_secants", []))
        arc = dataclasses.replace(arc, nucleus=N, t_secants=lines)
    elif d.get("nucleus") is not None and arc.nucleus != tuple(int(x, 16) for x in d["nucleus"]):
        raise VerificationFailure("declared nucleus differs from the verified one")
    return arc
