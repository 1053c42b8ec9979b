"""Projective points, lines and subspaces; field reduction and Desarguesian spreads.

Points are tuples of field elements normalised so that the first nonzero
coordinate is 1.  Lines of PG(2,q) are stored the same way through their dual
coordinates ``(a, b, c)`` meaning ``aX + bY + cZ = 0``.

A :class:`Subspace` lives over a subfield GF(2^d) of a host :class:`Field`;
its entries are host elements lying in that subfield.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from itertools import product

from . import gf2
from .errors import AmbientMismatch, BadSubfield, DegenerateInput
from .gf2field import BasisMap, Field

Point = tuple[int, ...]
Line = tuple[int, int, int]

__all__ = [
    "Point",
    "Line",
    "normalize",
    "dot",
    "cross",
    "line_through",
    "meet",
    "on_line",
    "points_on_line",
    "all_points",
    "Subspace",
    "span",
    "intersect",
    "proj_dim",
    "FieldReduction",
    "Spread",
    "field_reduce",
    "b_operator",
    "LINE_AT_INFINITY",
]

LINE_AT_INFINITY: Line = (0, 0, 1)


def normalize(F: Field, v: Sequence[int]) -> Point:
    for x in v:
        if x:
            if x == 1:
                return tuple(v)
            s = F.inv(x)
            return tuple(F.mul(s, y) for y in v)
    raise DegenerateInput("zero vector is not a projective point")


def dot(F: Field, u: Sequence[int], v: Sequence[int]) -> int:
    s = 0
    for a, b in zip(u, v):
        s ^= F.mul(a, b)
    return s


def cross(F: Field, u: Sequence[int], v: Sequence[int]) -> tuple[int, int, int]:
    m = F.mul
    return (
        m(u[1], v[2]) ^ m(u[2], v[1]),
        m(u[2], v[0]) ^ m(u[0], v[2]),
        m(u[0], v[1]) ^ m(u[1], v[0]),
    )


def line_through(F: Field, P: Point, Q: Point) -> Line:
    c = cross(F, P, Q)
    if not any(c):
        raise DegenerateInput("points coincide")
    return normalize(F, c)


def meet(F: Field, l1: Line, l2: Line) -> Point:
    c = cross(F, l1, l2)
    if not any(c):
        raise DegenerateInput("lines coincide")
    return normalize(F, c)


def on_line(F: Field, P: Point, l: Line) -> bool:
    return dot(F, P, l) == 0


def points_on_line(F: Field, l: Line) -> list[Point]:
    """The q+1 points of a line of PG(2,q), sorted lexicographically."""
    a, b, c = normalize(F, l)
    pts = []
    if a:  # a = 1: X = bY + cZ
        pts.append((b, 1, 0))
        pts += [normalize(F, (F.mul(b, y) ^ c, y, 1)) for y in F.elements()]
    elif b:  # b = 1: Y = cZ
        pts.append((1, 0, 0))
        pts += [(x, c, 1) for x in F.elements()]
        pts = [normalize(F, p) for p in pts]
    else:  # Z = 0
        pts.append((0, 1, 0))
        pts += [(1, y, 0) for y in F.elements()]
    return sorted(set(pts))


def all_points(F: Field, n: int) -> list[Point]:
    """Every point of PG(n-1, q) in lexicographic order."""
    out = []
    for lead in range(n):
        for tail in product(F.elements(), repeat=n - lead - 1):
            out.append((0,) * lead + (1,) + tail)
    return sorted(out)


# subspaces over a subfield


class _Sub:
    """Arithmetic in GF(2^d) viewed inside the host field."""

    def __init__(self, F: Field, d: int):
        if d < 1 or F.m % d:
            raise BadSubfield(f"{d} does not divide {F.m}")
        self.F = F
        self.d = d
        self.size = 1 << d

    @cached_property
    def elements(self) -> list[int]:
        return self.F.subfield_elements(self.d)

    @cached_property
    def nonzero(self) -> list[int]:
        return [x for x in self.elements if x]


_SUBS: dict[tuple[int, int], _Sub] = {}


def _sub(F: Field, d: int) -> _Sub:
    key = (F.modulus, d)
    s = _SUBS.get(key)
    if s is None:
        s = _SUBS[key] = _Sub(F, d)
    return s


def _rref(F: Field, rows: Iterable[Sequence[int]], n: int) -> tuple[tuple[int, ...], ...]:
    mat = [list(r) for r in rows if any(r)]
    out: list[list[int]] = []
    col = 0
    while mat and col < n:
        pivot = next((r for r in mat if r[col]), None)
        if pivot is None:
            col += 1
            continue
        mat.remove(pivot)
        s = F.inv(pivot[col])
        pivot = [F.mul(s, x) for x in pivot]
        for r in mat + out:
            c = r[col]
            if c:
                for j in range(col, n):
                    if pivot[j]:
                        r[j] ^= F.mul(c, pivot[j])
        mat = [r for r in mat if any(r)]
        out.append(pivot)
        col += 1
    out.sort(key=lambda r: next(i for i, x in enumerate(r) if x))
    return tuple(tuple(r) for r in out)


@dataclass(frozen=True)
class Subspace:
    """A vector subspace of GF(2^d)^n (a projective subspace of PG(n-1, 2^d)).

    ``rows`` is the reduced row-echelon basis; equality of subspaces is
    equality of these tuples.
    """

    F: Field = dc_field(compare=False)
    d: int
    n: int
    rows: tuple[tuple[int, ...], ...]
    modulus: int = dc_field(default=0)

    def __post_init__(self):
        object.__setattr__(self, "modulus", self.F.modulus)

    @classmethod
    def spanned_by(cls, F: Field, d: int, n: int, vectors: Iterable[Sequence[int]]) -> "Subspace":
        vecs = [tuple(v) for v in vectors]
        for v in vecs:
            if len(v) != n:
                raise AmbientMismatch("vector length differs from ambient dimension")
        return cls(F, d, n, _rref(F, vecs, n))

    @property
    def dim(self) -> int:
        """Vector dimension (the rank)."""
        return len(self.rows)

    @property
    def proj_dim(self) -> int:
        return len(self.rows) - 1

    @property
    def pivots(self) -> list[int]:
        return [next(i for i, x in enumerate(r) if x) for r in self.rows]

    def _same_space(self, other: "Subspace") -> None:
        if (self.modulus, self.d, self.n) != (other.modulus, other.d, other.n):
            raise AmbientMismatch("subspaces live in different ambient spaces")

    def reduce(self, v: Sequence[int]) -> tuple[int, ...]:
        F = self.F
        v = list(v)
        for r, p in zip(self.rows, self.pivots):
            c = v[p]
            if c:
                for j in range(p, self.n):
                    if r[j]:
                        v[j] ^= F.mul(c, r[j])
        return tuple(v)

    def contains(self, v: Sequence[int]) -> bool:
        return not any(self.reduce(v))

    def vectors(self) -> list[tuple[int, ...]]:
        """All vectors of the subspace, zero first."""
        out = [(0,) * self.n]
        K = _sub(self.F, self.d)
        for r in reversed(self.rows):
            new = []
            for c in K.nonzero:
                cr = [self.F.mul(c, x) for x in r]
                new += [tuple(a ^ b for a, b in zip(v, cr)) for v in out]
            out += new
        return out

    def points(self) -> list[Point]:
        """Normalised points, grouped by leading row."""
        F = self.F
        K = _sub(F, self.d)
        n = self.n
        suffix: list[tuple[int, ...]] = [(0,) * n]
        pts: list[Point] = []
        for r in reversed(self.rows):
            pts += [tuple(a ^ b for a, b in zip(r, v)) for v in suffix]
            new = []
            for c in K.nonzero:
                cr = [F.mul(c, x) for x in r]
                new += [tuple(a ^ b for a, b in zip(v, cr)) for v in suffix]
            suffix += new
        return pts

    def point_count(self) -> int:
        s = 1 << self.d
        return (s ** self.dim - 1) // (s - 1)

    def to_json(self) -> dict:
        return {
            "base_degree": self.d,
            "ambient_dim": self.n,
            "rows": [[hex(x) for x in r] for r in self.rows],
        }


def span(A: Subspace, B: Subspace) -> Subspace:
    A._same_space(B)
    return Subspace.spanned_by(A.F, A.d, A.n, A.rows + B.rows)


def intersect(A: Subspace, B: Subspace) -> Subspace:
    A._same_space(B)
    F, n = A.F, A.n
    k = A.dim + B.dim
    # left kernel of the stacked matrix via augmentation with the identity
    aug = []
    for i, r in enumerate(A.rows + B.rows):
        aug.append(tuple(r) + tuple(1 if j == i else 0 for j in range(k)))
    red = _rref(F, aug, n + k)
    vecs = []
    for r in red:
        if any(r[:n]):
            continue
        coeffs = r[n : n + A.dim]
        v = [0] * n
        for c, row in zip(coeffs, A.rows):
            if c:
                for j in range(n):
                    v[j] ^= F.mul(c, row[j])
        vecs.append(v)
    return Subspace.spanned_by(F, A.d, n, vecs)


def proj_dim(A: Subspace) -> int:
    return A.proj_dim


# field reduction


class FieldReduction:
    """Coordinates of GF(2^m) over its subfield K = GF(2^d).

    ``basis`` is a K-basis b_0..b_{t-1} of the big field; ``expand(x)``
    returns the K-coordinates of ``x`` and ``combine`` inverts it.
    """

    def __init__(self, F: Field, d: int = 1, basis: Sequence[int] | BasisMap | None = None):
        if d < 1 or F.m % d:
            raise BadSubfield(f"{d} does not divide {F.m}")
        self.F = F
        self.d = d
        self.t = F.m // d
        if isinstance(basis, BasisMap):
            if d != 1:
                raise BadSubfield("a BasisMap describes an F2-basis")
            self.kind = basis.kind
            basis = list(basis.columns)
        elif basis is None:
            self.kind = "polynomial"
            basis = [F.pow(F.lam, j) for j in range(self.t)]
        else:
            self.kind = "custom"
            basis = list(basis)
        if len(basis) != self.t:
            raise ValueError("basis has the wrong length")
        self.basis = tuple(basis)
        self.kappa = F.subfield_basis(d) if d > 1 else [1]
        cols = [F.mul(k, b) for b in self.basis for k in self.kappa]
        self._inv = gf2.inverse_columns(cols, F.m)
        self._identity = d == 1 and self.basis == tuple(1 << i for i in range(F.m))

    def expand(self, x: int) -> tuple[int, ...]:
        if self._identity:
            return tuple((x >> i) & 1 for i in range(self.t))
        bits = 0
        i = 0
        while x:
            if x & 1:
                bits ^= self._inv[i]
            x >>= 1
            i += 1
        d = self.d
        if d == 1:
            return tuple((bits >> i) & 1 for i in range(self.t))
        out = []
        for j in range(self.t):
            k = 0
            for l_, kap in enumerate(self.kappa):
                if (bits >> (j * d + l_)) & 1:
                    k ^= kap
            out.append(k)
        return tuple(out)

    def combine(self, ks: Sequence[int]) -> int:
        if self._identity:
            x = 0
            for i, b in enumerate(ks):
                if b:
                    x |= 1 << i
            return x
        F = self.F
        x = 0
        for k, b in zip(ks, self.basis):
            if k:
                x ^= F.mul(k, b)
        return x


class Spread:
    """The Desarguesian spread of PG(n*t - 1, 2^d) obtained from PG(n-1, 2^m).

    Elements are indexed by the normalised point of PG(n-1, 2^m) they come
    from; :meth:`owner` maps a nonzero K-vector to that index.
    """

    def __init__(self, reduction: FieldReduction, n: int):
        self.red = reduction
        self.F = reduction.F
        self.d = reduction.d
        self.t = reduction.t
        self.n = n
        self.N = n * reduction.t

    def expand_vec(self, v: Sequence[int]) -> tuple[int, ...]:
        out: tuple[int, ...] = ()
        for x in v:
            out += self.red.expand(x)
        return out

    def collapse(self, kv: Sequence[int]) -> tuple[int, ...]:
        t = self.t
        return tuple(self.red.combine(kv[i * t : (i + 1) * t]) for i in range(self.n))

    def owner(self, kv: Sequence[int]) -> Point:
        return normalize(self.F, self.collapse(kv))

    def element(self, P: Point) -> Subspace:
        F = self.F
        vecs = [self.expand_vec([F.mul(b, x) for x in P]) for b in self.red.basis]
        return Subspace.spanned_by(F, self.d, self.N, vecs)

    def subspace(self, vectors: Iterable[Sequence[int]]) -> Subspace:
        return Subspace.spanned_by(self.F, self.d, self.N, vectors)

    def index_points(self) -> list[Point]:
        return all_points(self.F, self.n)

    def check_partition(self) -> bool:
        """Every ambient point has exactly one owner and owners match elements."""
        seen: dict[Point, Point] = {}
        total = 0
        for P in self.index_points():
            E = self.element(P)
            if E.dim != self.t:
                return False
            for p in E.points():
                if p in seen or self.owner(p) != P:
                    return False
                seen[p] = P
            total += E.point_count()
        s = 1 << self.d
        return total == (s ** self.N - 1) // (s - 1)


def field_reduce(P: Point, spread: Spread) -> Subspace:
    return spread.element(P)


def b_operator(U: Subspace, spread: Spread) -> frozenset[Point]:
    if U.n != spread.N or U.d != spread.d or U.modulus != spread.F.modulus:
        raise AmbientMismatch("subspace does not live in the spread's ambient space")
    return frozenset(spread.owner(p) for p in U.points())
