"""Collineations, elations, translation lines, properties (I)/(II) and equivalence search."""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass

import numpy as np

from .arcs import KMArc
from .errors import DegenerateElation, FieldMismatch, TooLarge, WrongType
from .gf2field import Field
from .linsets import recognize_maxhead_club
from .planar import kernel
from .projgeom import Line, Point, all_points, dot, line_through, normalize, on_line

__all__ = [
    "Collineation",
    "DSets",
    "PropertyReport",
    "apply",
    "elation",
    "translation_lines",
    "d_sets",
    "property_report",
    "has_property_I",
    "has_property_II",
    "transliff_set",
    "pgl_equivalent",
    "line_set_equivalent",
    "stabilizer_order",
    "witness_to_json",
    "witness_from_json",
]

Matrix = tuple[tuple[int, ...], ...]


# small matrix algebra over F


def _matmul(F: Field, A: Matrix, B: Matrix) -> Matrix:
    n = len(A)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            s = 0
            for k in range(n):
                s ^= F.mul(A[i][k], B[k][j])
            row.append(s)
        out.append(tuple(row))
    return tuple(out)


def _matvec(F: Field, A: Matrix, v: Sequence[int]) -> tuple[int, ...]:
    out = []
    for row in A:
        s = 0
        for a, x in zip(row, v):
            s ^= F.mul(a, x)
        out.append(s)
    return tuple(out)


def _det(F: Field, A: Matrix) -> int:
    if len(A) == 2:
        return F.mul(A[0][0], A[1][1]) ^ F.mul(A[0][1], A[1][0])
    m = F.mul
    return (
        m(A[0][0], m(A[1][1], A[2][2]) ^ m(A[1][2], A[2][1]))
        ^ m(A[0][1], m(A[1][0], A[2][2]) ^ m(A[1][2], A[2][0]))
        ^ m(A[0][2], m(A[1][0], A[2][1]) ^ m(A[1][1], A[2][0]))
    )


def _inverse(F: Field, A: Matrix) -> Matrix:
    d = _det(F, A)
    if not d:
        raise ZeroDivisionError("singular matrix")
    di = F.inv(d)
    m = F.mul
    if len(A) == 2:
        return ((m(A[1][1], di), m(A[0][1], di)), (m(A[1][0], di), m(A[0][0], di)))
    # adjugate; signs vanish in characteristic 2
    cof = [[0] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            r = [x for x in range(3) if x != i]
            c = [x for x in range(3) if x != j]
            cof[i][j] = m(A[r[0]][c[0]], A[r[1]][c[1]]) ^ m(A[r[0]][c[1]], A[r[1]][c[0]])
    return tuple(tuple(m(cof[j][i], di) for j in range(3)) for i in range(3))


def _frob_matrix(F: Field, A: Matrix, k: int) -> Matrix:
    return tuple(tuple(F.frobenius(x, k) for x in row) for row in A)


def _canonical(F: Field, A: Matrix) -> Matrix:
    flat = [x for row in A for x in row]
    s = F.inv(next(x for x in flat if x))
    return tuple(tuple(F.mul(x, s) for x in row) for row in A)


def _frame_matrix(F: Field, pts: Sequence[Sequence[int]]) -> Matrix | None:
    """Matrix sending the standard frame (e_1, .., e_n, all-ones) to ``pts``; None if degenerate."""
    n = len(pts) - 1
    B = tuple(tuple(pts[j][i] for j in range(n)) for i in range(n))
    if not _det(F, B):
        return None
    lam = _matvec(F, _inverse(F, B), pts[n])
    if not all(lam):
        return None
    return tuple(tuple(F.mul(B[i][j], lam[j]) for j in range(n)) for i in range(n))


def _frame_map(F: Field, src, dst) -> Matrix | None:
    S = _frame_matrix(F, src)
    D = _frame_matrix(F, dst)
    if S is None or D is None:
        return None
    return _matmul(F, D, _inverse(F, S))


@dataclass(frozen=True)
class Collineation:
    """x -> matrix * x^(2^frob), acting on column vectors."""

    field: Field
    matrix: Matrix
    frob: int = 0

    def __post_init__(self):
        F = self.field
        M = tuple(tuple(int(x) for x in row) for row in self.matrix)
        if not _det(F, M):
            raise ValueError("matrix is singular")
        object.__setattr__(self, "matrix", _canonical(F, M))
        object.__setattr__(self, "frob", self.frob % F.m)

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def __call__(self, p: Sequence[int]) -> Point:
        F = self.field
        v = tuple(F.frobenius(x, self.frob) for x in p) if self.frob else tuple(p)
        return normalize(F, _matvec(F, self.matrix, v))

    def compose(self, other: "Collineation") -> "Collineation":
        """self after other."""
        F = self.field
        M = _matmul(F, self.matrix, _frob_matrix(F, other.matrix, self.frob))
        return Collineation(F, M, self.frob + other.frob)

    def inverse(self) -> "Collineation":
        F = self.field
        k = (-self.frob) % F.m
        return Collineation(F, _frob_matrix(F, _inverse(F, self.matrix), k), k)

    def is_identity(self) -> bool:
        n = self.dim
        return self.frob == 0 and self.matrix == tuple(
            tuple(int(i == j) for j in range(n)) for i in range(n)
        )

    @classmethod
    def identity(cls, F: Field, n: int = 3) -> "Collineation":
        return cls(F, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), 0)


def apply(g: Collineation, S: Iterable[Sequence[int]]) -> frozenset[Point]:
    return frozenset(g(p) for p in S)


def elation(F: Field, axis: Line, pre: Point, image: Point) -> Collineation:
    """The elation with the given axis mapping pre to image."""
    a = normalize(F, axis)
    ap = dot(F, a, pre)
    ar = dot(F, a, image)
    if not ap or not ar:
        raise DegenerateElation("pre-image and image must lie off the axis")
    s = F.div(ap, ar)
    d = [F.mul(s, r) ^ p for r, p in zip(image, pre)]
    inv = F.inv(ap)
    M = tuple(
        tuple(int(i == j) ^ F.mul(F.mul(d[i], a[j]), inv) for j in range(3)) for i in range(3)
    )
    return Collineation(F, M, 0)


# fast set images


def _image_keys(F: Field, M: Matrix, frob: int, P: np.ndarray) -> np.ndarray:
    K = kernel(F)
    return np.sort(K.encode(K.apply_matrix(M, P, frob)))


def _fixes(F: Field, M: Matrix, frob: int, P: np.ndarray, keys: np.ndarray) -> bool:
    return bool(np.array_equal(_image_keys(F, M, frob, P), keys))


def _secants(A: KMArc) -> list[Line]:
    if A.t > 2 and A.t_secants:
        return list(A.t_secants)
    pts = A.sorted_points()
    F = A.field
    return sorted({line_through(F, p, r) for p, r in itertools.combinations(pts, 2)})


def translation_lines(A: KMArc) -> list[Line]:
    """t-secants l whose elation group (axis l, fixing A) is transitive on A minus l.

    For hyperovals every secant is a candidate.
    """
    F = A.field
    K = kernel(F)
    P = K.array(A.sorted_points())
    keys = np.sort(K.encode(P))
    out = []
    for l in _secants(A):
        off = [p for p in A.sorted_points() if not on_line(F, p, l)]
        p0 = off[0]
        if all(_fixes(F, elation(F, l, p0, r).matrix, 0, P, keys) for r in off[1:]):
            out.append(l)
    return out


# direction sets and properties (I) / (II)


@dataclass(frozen=True)
class DSets:
    ell0: Line
    labeling: tuple[Line, Line, Line, Line]
    parts: tuple[frozenset, ...]
    sets: Mapping[tuple[int, int], frozenset]

    def __getitem__(self, ij: tuple[int, int]) -> frozenset:
        return self.sets[ij]


def _require_quarter(A: KMArc) -> None:
    if A.t != A.q // 4 or len(A.t_secants) != 5:
        raise WrongType(f"needs a KM-arc of type q/4, got t = {A.t}")


def d_sets(A: KMArc, ell0: Line, labeling: Sequence[Line] | None = None) -> DSets:
    """D_ij = {<P,Q> meet ell0 : P in S_i, Q in S_j} for the four other secants."""
    _require_quarter(A)
    F = A.field
    ell0 = normalize(F, ell0)
    if ell0 not in A.t_secants:
        raise WrongType("ell0 is not a t-secant of the arc")
    others = [l for l in A.t_secants if l != ell0]
    if labeling is None:
        labeling = others
    labeling = tuple(normalize(F, l) for l in labeling)
    if sorted(labeling) != sorted(others):
        raise WrongType("labeling must list the four other t-secants")
    K = kernel(F)
    parts = tuple(frozenset(A.on(l)) for l in labeling)
    arrs = [K.array(sorted(s)) for s in parts]
    L0 = np.array([ell0], dtype=np.int64)
    sets = {}
    for i, j in itertools.combinations(range(4), 2):
        X, Y = arrs[i], arrs[j]
        a, b = np.meshgrid(np.arange(len(X)), np.arange(len(Y)), indexing="ij")
        lines = K.cross(X[a.ravel()], Y[b.ravel()])
        pts = K.normalize(K.cross(lines, np.repeat(L0, len(lines), axis=0)))
        sets[(i + 1, j + 1)] = frozenset(tuple(int(x) for x in r) for r in np.unique(pts, axis=0))
    return DSets(ell0, labeling, parts, sets)


@dataclass(frozen=True)
class PropertyReport:
    ell0: Line
    labeling: tuple[Line, ...]
    parts_are_clubs: bool
    pairings_equal: bool
    d_club_kind: str | None  # "I" (h-2 clubs of rank h-1), "II" (h-1 clubs of rank h) or None
    pair_meets: tuple[int, int, int]
    triple_meet: int
    q4: int

    @property
    def property_I(self) -> bool:
        return (
            self.parts_are_clubs
            and self.pairings_equal
            and self.d_club_kind == "I"
            and self.pair_meets == (0, 0, 0)
        )

    @property
    def property_II(self) -> bool:
        return (
            self.parts_are_clubs
            and self.pairings_equal
            and self.d_club_kind == "II"
            and self.triple_meet == 0
            and all(m == self.q4 for m in self.pair_meets)
        )

    def to_json(self) -> dict:
        hexp = lambda p: [hex(x) for x in p]  # noqa: E731
        return {
            "ell0": hexp(self.ell0),
            "labeling": [hexp(l) for l in self.labeling],
            "property_I": self.property_I,
            "property_II": self.property_II,
            "parts_are_clubs": self.parts_are_clubs,
            "pairings_equal": self.pairings_equal,
            "d_club_kind": self.d_club_kind,
            "pair_meets": list(self.pair_meets),
            "triple_meet": self.triple_meet,
        }


def _club_kind(F: Field, S: frozenset, N: Point) -> str | None:
    h = F.m
    s = len(S)
    if s == 0 or s & (s - 1):
        return None
    d = recognize_maxhead_club(F, S, N)
    if d is None:
        return None
    if (d.i, d.rank) == (h - 2, h - 1):
        return "I"
    if (d.i, d.rank) == (h - 1, h):
        return "II"
    return None


def property_report(A: KMArc, ell0: Line) -> PropertyReport:
    """All clauses of properties (I) and (II) for the sorted labeling of the other secants.

    Relabeling the four secants only permutes the three pairings
    {12|34, 13|24, 14|23}, and every clause is symmetric in them, so one
    labeling decides both properties.
    """
    D = d_sets(A, ell0)
    F = A.field
    N = A.nucleus
    parts_ok = all(_club_kind(F, S, N) == "I" for S in D.parts)
    pairs_ok = D[1, 2] == D[3, 4] and D[1, 3] == D[2, 4] and D[1, 4] == D[2, 3]
    kinds = {_club_kind(F, D[1, j], N) for j in (2, 3, 4)}
    kind = kinds.pop() if len(kinds) == 1 else None
    d12, d13, d14 = D[1, 2], D[1, 3], D[1, 4]
    meets = (len(d12 & d13), len(d12 & d14), len(d13 & d14))
    return PropertyReport(
        D.ell0, D.labeling, parts_ok, pairs_ok, kind, meets, len(d12 & d13 & d14), A.q // 4
    )


def has_property_I(A: KMArc, ell0: Line) -> bool:
    return property_report(A, ell0).property_I


def has_property_II(A: KMArc, ell0: Line) -> bool:
    return property_report(A, ell0).property_II


def transliff_set(F: Field, beta: int) -> frozenset[int]:
    """Values of alpha for which the (alpha, beta, 0, 0) family member is a translation arc."""
    if beta in (0, 1):
        raise ValueError("beta must avoid 0 and 1")
    b2 = F.mul(beta, beta)
    return frozenset(
        {
            F.inv(b2),
            1 ^ F.inv(beta),
            beta,
            F.inv(F.sqrt(beta)),
            F.inv(beta ^ 1),
        }
    )


# equivalence search


def _frames_for(A: KMArc) -> list[tuple[Point, ...]]:
    """Ordered 4-point frames: nucleus plus one point on each of three t-secants."""
    if A.t == 2:
        return []
    N = A.nucleus
    out = []
    for ls in itertools.permutations(A.t_secants, 3):
        for pts in itertools.product(*(A.on(l) for l in ls)):
            out.append((N,) + pts)
    return out


def _hyperoval_frames(A: KMArc) -> Iterable[tuple[Point, ...]]:
    return itertools.permutations(A.sorted_points(), 4)


def pgl_equivalent(A: KMArc, B: KMArc, semilinear: bool = False) -> Collineation | None:
    """A collineation g with g(A) = B, or None.

    Frames are anchored on the nucleus and three t-secants (any four arc
    points for hyperovals); each frame correspondence fixes at most one
    projectivity per field automorphism.
    """
    F = A.field
    if B.field != F:
        raise FieldMismatch("arcs live over different fields")
    if A.t != B.t or A.spectrum != B.spectrum or len(A.points) != len(B.points):
        return None
    target = set(B.points)
    if A.t > 2 and A.nucleus is not None and len(A.t_secants) >= 3:
        N = A.nucleus
        src = (N,) + tuple(A.on(l)[0] for l in A.t_secants[:3])
        assert _frame_matrix(F, src) is not None, "frame points are not in general position"
        dsts: Iterable = _frames_for(B)
    else:
        src = tuple(A.sorted_points()[:4])
        dsts = _hyperoval_frames(B)
    frobs = range(F.m) if semilinear else (0,)
    rest = [p for p in A.sorted_points() if p not in src]
    srcs = {k: [tuple(F.frobenius(x, k) for x in p) for p in src] for k in frobs}
    rests = {k: [tuple(F.frobenius(x, k) for x in p) for p in rest] for k in frobs}
    for dst in dsts:
        for k in frobs:
            M = _frame_map(F, srcs[k], dst)
            if M is None:
                continue
            if all(normalize(F, _matvec(F, M, p)) in target for p in rests[k]):
                g = Collineation(F, M, k)
                assert apply(g, A.points) == B.points
                assert apply(g.inverse(), B.points) == A.points
                return g
    return None


def _line_points(F: Field) -> list[Point]:
    return all_points(F, 2)


def _pgl2_frames(F: Field, S: frozenset) -> tuple[list[Point], frozenset]:
    """S itself if it is at most half the line, otherwise its complement."""
    if 2 * len(S) <= F.q + 1:
        return sorted(S), S
    comp = frozenset(p for p in _line_points(F) if p not in S)
    return sorted(comp), comp


def line_set_equivalent(
    F: Field, S1: Iterable[Point], S2: Iterable[Point], semilinear: bool = True
) -> Collineation | None:
    """A map x -> M x^(2^k) of PG(1, q) with image(S1) = S2, or None."""
    S1 = frozenset(normalize(F, p) for p in S1)
    S2 = frozenset(normalize(F, p) for p in S2)
    if len(S1) != len(S2):
        return None
    X1, set1 = _pgl2_frames(F, S1)
    set2 = S2 if set1 is S1 else frozenset(p for p in _line_points(F) if p not in S2)
    X2 = sorted(set2)
    if len(X1) < 3:
        return _line_set_exhaustive(F, S1, S2, semilinear)
    src = X1[:3]
    frobs = range(F.m) if semilinear else (0,)
    for dst in itertools.permutations(X2, 3):
        for k in frobs:
            s = [tuple(F.frobenius(x, k) for x in p) for p in src]
            M = _map3(F, s, dst)
            if M is None:
                continue
            g = Collineation(F, M, k)
            if all(g(p) in set2 for p in X1):
                assert apply(g, S1) == S2
                return g
    return None


def _map3(F: Field, src, dst) -> Matrix | None:
    """The unique 2x2 map sending three distinct points of PG(1, q) to three others."""
    return _frame_map(F, src, dst)


def _pgl2(F: Field):
    """All of PGL(2, q) as canonical matrices."""
    q = F.q
    for a, b, c, d in itertools.product(range(q), repeat=4):
        M = ((a, b), (c, d))
        if not _det(F, M):
            continue
        first = a if a else b
        if first != 1:
            continue
        yield M


def _line_set_exhaustive(F, S1, S2, semilinear):
    for k in range(F.m) if semilinear else (0,):
        for M in _pgl2(F):
            g = Collineation(F, M, k)
            if apply(g, S1) == S2:
                return g
    return None


EXHAUSTIVE_LIMIT = 64


def stabilizer_order(
    F: Field, S: Iterable[Point], semilinear: bool = True, method: str = "frames"
) -> int:
    """Number of elements of PGL(2, q) (PGammaL when semilinear) fixing S.

    ``frames`` counts ordered triples of the smaller of S and its complement
    (each group element is determined by the image of three points);
    ``exhaustive`` walks the whole group and is limited to q <= 64.
    """
    S = frozenset(normalize(F, p) for p in S)
    frobs = range(F.m) if semilinear else (0,)
    if method == "exhaustive":
        if F.q > EXHAUSTIVE_LIMIT:
            raise TooLarge(f"exhaustive PGL(2, {F.q}) walk exceeds q = {EXHAUSTIVE_LIMIT}")
        return sum(
            1 for k in frobs for M in _pgl2(F) if apply(Collineation(F, M, k), S) == S
        )
    X, Xset = _pgl2_frames(F, S)
    if len(X) < 3:
        return stabilizer_order(F, S, semilinear, "exhaustive")
    src = X[:3]
    count = 0
    for k in frobs:
        s = [tuple(F.frobenius(x, k) for x in p) for p in src]
        for dst in itertools.permutations(X, 3):
            M = _map3(F, s, dst)
            if M is None:
                continue
            g = Collineation(F, M, k)
            if all(g(p) in Xset for p in X):
                count += 1
    return count


def witness_to_json(g: Collineation) -> dict:
    return {"matrix": [[hex(x) for x in row] for row in g.matrix], "frob": g.frob}


def witness_from_json(F: Field, d: Mapping) -> Collineation:
    return Collineation(F, tuple(tuple(int(x, 16) for x in row) for row in d["matrix"]), d["frob"])
