"""Exhaustive counts: clubs, projective triads, the transliff sweep and equivalence checks.

Subspaces of F2^N are bit-packed (coordinate j of an expanded vector is bit j),
enumerated in reduced echelon form and processed in numpy batches.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field

import numpy as np

from . import gf2
from .arcs import FamilyParams, is_projective_triad, new_family
from .errors import TooLarge
from .gf2field import Field, field_for
from .linsets import line_spread
from .planar import kernel
from .projgeom import all_points, normalize
from .symmetry import (
    Collineation,
    apply,
    has_property_I,
    pgl_equivalent,
    transliff_set,
    translation_lines,
)

log = logging.getLogger(__name__)

CLUB_CENSUS_MAX_H = 4


def rref_subspaces(n: int, k: int):
    """Yield (pivots, basis array) batches covering every k-dim subspace of F2^n.

    Each batch is an int64 array of shape (count, k) holding the packed
    reduced-echelon basis rows (pivot = highest bit).
    """
    for piv in itertools.combinations(range(n - 1, -1, -1), k):
        pset = set(piv)
        free = [[b for b in range(p) if b not in pset] for p in piv]
        nfree = sum(len(f) for f in free)
        total = 1 << nfree
        a = np.arange(total, dtype=np.int64)
        rows = np.empty((total, k), dtype=np.int64)
        shift = 0
        for r, (p, fr) in enumerate(zip(piv, free)):
            v = np.full(total, 1 << p, dtype=np.int64)
            for j, b in enumerate(fr):
                v |= ((a >> (shift + j)) & 1) << b
            shift += len(fr)
            rows[:, r] = v
        yield piv, rows


def span_vectors(rows: np.ndarray) -> np.ndarray:
    """All 2^k - 1 nonzero combinations of each row-basis (shape (count, 2^k - 1))."""
    count, k = rows.shape
    out = np.zeros((count, 1 << k), dtype=np.int64)
    for i in range(k):
        w = 1 << i
        out[:, w : 2 * w] = out[:, :w] ^ rows[:, i : i + 1]
    return out[:, 1:]


def owner_table(F: Field, basis=None) -> tuple[np.ndarray, list]:
    """Point index of every nonzero packed vector of F2^(2h) under the line spread."""
    sp = line_spread(F, 1, basis)
    pts = all_points(F, 2)
    index = {p: i for i, p in enumerate(pts)}
    n = 2 * F.m
    table = np.full(1 << n, -1, dtype=np.int64)
    for v in range(1, 1 << n):
        table[v] = index[sp.owner(tuple((v >> j) & 1 for j in range(n)))]
    return table, pts


@dataclass
class ClubCensus:
    h: int
    i: int
    subspaces: int
    club_subspaces: int
    clubs: int
    per_head: dict = field(default_factory=dict)
    expected_total: int = 0
    expected_per_head: int = 0
    # pairs of distinct subspaces with equal B and equal intersection with the head element
    head_collisions: int = 0

    @property
    def subspaces_per_club(self) -> float:
        # each club is B(mu) for exactly the q - 1 scalar multiples of one mu
        return self.club_subspaces / self.clubs if self.clubs else 0.0

    @property
    def matches(self) -> bool:
        return self.clubs == self.expected_total and all(
            c == self.expected_per_head for c in self.per_head.values()
        )

    def to_json(self) -> dict:
        return {
            "h": self.h,
            "i": self.i,
            "subspaces": self.subspaces,
            "club_subspaces": self.club_subspaces,
            "clubs": self.clubs,
            "subspaces_per_club": self.subspaces_per_club,
            "expected": self.expected_total,
            "per_head_min": min(self.per_head.values(), default=0),
            "per_head_max": max(self.per_head.values(), default=0),
            "expected_per_head": self.expected_per_head,
            "matches": self.matches,
            "head_collisions": self.head_collisions,
        }


def _club_rows(counts: np.ndarray, head_count: int) -> tuple[np.ndarray, np.ndarray]:
    """Rows whose weight profile is one point of the given count, the rest 1."""
    mx = counts.max(axis=1)
    heads = counts.argmax(axis=1)
    heavy = (counts > 1).sum(axis=1)
    ok = (mx == head_count) & (heavy == 1)
    return ok, heads


def census_clubs(h: int, progress=None) -> ClubCensus:
    """Every rank-h F2-subspace of F2^(2h) whose linear set is an (h-1)-club."""
    if h > CLUB_CENSUS_MAX_H or h < 3:
        raise TooLarge(f"club census supports 3 <= h <= {CLUB_CENSUS_MAX_H}")
    F = field_for(h)
    table, pts = owner_table(F)
    npts = len(pts)
    head_count = (1 << (h - 1)) - 1
    total = club_subs = 0
    heads: dict = {}
    seen: set = set()
    collisions = 0
    for piv, rows in rref_subspaces(2 * h, h):
        total += len(rows)
        vecs = span_vectors(rows)
        own = table[vecs]
        counts = np.zeros((len(rows), npts), dtype=np.int64)
        np.add.at(counts, (np.arange(len(rows))[:, None], own), 1)
        ok, hd = _club_rows(counts, head_count)
        club_subs += int(ok.sum())
        # mu cap rho_head as a sorted vector list; zeros pad the other slots
        tau = np.sort(np.where(own[ok] == hd[ok][:, None], vecs[ok], 0), axis=1)
        for row, i, t in zip(counts[ok] > 0, hd[ok], tau):
            key = np.packbits(row).tobytes()
            heads[key] = pts[int(i)]
            pair = (key, t.tobytes())
            if pair in seen:
                collisions += 1
            seen.add(pair)
        if progress:
            progress(total)
    per_head: dict = {}
    for hd in heads.values():
        per_head[hd] = per_head.get(hd, 0) + 1
    q = 2
    return ClubCensus(
        h,
        h - 1,
        total,
        club_subs,
        len(heads),
        per_head,
        q * (q ** (2 * h) - 1) // (q - 1),
        q * (q**h - 1) // (q - 1),
        collisions,
    )


# projective triads at small q


@dataclass
class TriadCensus:
    q: int
    lines: tuple
    pairs: int
    triads: int
    expected: int

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "pairs_checked": self.pairs,
            "triads": self.triads,
            "expected": self.expected,
            "matches": self.triads == self.expected,
        }


TRIAD_LINES = ((1, 0, 0), (0, 1, 0), (1, 1, 0))  # X=0, Y=0, X=Y, through (0,0,1)


def census_triads(q: int = 8) -> TriadCensus:
    """Projective triads with side q/2 + 1 on X=0, Y=0, X=Y.

    Every choice of q/2 points on each of the first two lines (besides the
    common point) determines the third side by the closure condition.
    """
    h = q.bit_length() - 1
    if 1 << h != q or q > 16:
        raise TooLarge("triad census is limited to q in {2, 4, 8, 16}")
    F = field_for(h)
    K = kernel(F)
    P = (0, 0, 1)
    n = q // 2
    l0 = [(0, 1, z) for z in range(q)]
    l1 = [(1, 0, z) for z in range(q)]
    l2 = np.array([TRIAD_LINES[2]])
    count = pairs = 0
    for A0 in itertools.combinations(l0, n):
        X = K.array(A0)
        for A1 in itertools.combinations(l1, n):
            pairs += 1
            Y = K.array(A1)
            a, b = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
            L = K.cross(X[a.ravel()], Y[b.ravel()])
            R = np.unique(K.normalize(K.cross(L, np.repeat(l2, len(L), axis=0))), axis=0)
            if len(R) != n:
                continue
            S = list(A0) + list(A1) + [tuple(int(x) for x in r) for r in R] + [P]
            if is_projective_triad(F, S, TRIAD_LINES):
                count += 1
    return TriadCensus(q, TRIAD_LINES, pairs, count, 4 * q - 4)


# the transliff sweep


def admissible_pairs(F: Field):
    for beta in range(2, F.q):
        for alpha in range(2, F.q):
            if F.mul(alpha, beta) != 1:
                yield alpha, beta


@dataclass
class TranslIffCensus:
    q: int
    confusion: dict  # (predicted, detected) -> count
    all_five_ok: bool
    property_I_agrees: bool

    @property
    def diagonal(self) -> bool:
        return self.confusion.get((True, False), 0) == 0 and self.confusion.get((False, True), 0) == 0

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "confusion": {f"predicted={p},detected={d}": c for (p, d), c in sorted(self.confusion.items())},
            "diagonal": self.diagonal,
            "beta_cubed_one_all_secants": self.all_five_ok,
            "property_I_agrees": self.property_I_agrees,
        }


def _transliff_beta(h: int, beta: int, check_property_I: bool) -> tuple[dict, bool, bool]:
    F = field_for(h)
    conf: dict = {}
    five_ok = prop_ok = True
    for alpha in range(2, F.q):
        if F.mul(alpha, beta) == 1:
            continue
        A = new_family(FamilyParams(F, alpha, beta, 0, 0))
        tl = translation_lines(A)
        pred = alpha in transliff_set(F, beta)
        key = (pred, bool(tl))
        conf[key] = conf.get(key, 0) + 1
        if pred and F.mul(F.mul(beta, beta), beta) == 1 and len(tl) != 5:
            five_ok = False
        if check_property_I:
            for l in A.t_secants:
                if has_property_I(A, l) != (l in tl):
                    prop_ok = False
    return conf, five_ok, prop_ok


def census_transliff(q: int, check_property_I: bool = False, workers: int = 1) -> TranslIffCensus:
    """Sweep every admissible (alpha, beta); one task per beta, merged by adding counts."""
    h = q.bit_length() - 1
    if 1 << h != q or h < 3 or h > 6:
        raise TooLarge("transliff census is limited to 8 <= q <= 64")
    betas = range(2, q)
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(workers) as ex:
            parts = list(ex.map(_transliff_beta, [h] * len(betas), betas, [check_property_I] * len(betas)))
    else:
        parts = [_transliff_beta(h, b, check_property_I) for b in betas]
    conf: dict = {}
    for c, _, _ in parts:
        for k, v in c.items():
            conf[k] = conf.get(k, 0) + v
    return TranslIffCensus(q, conf, all(p[1] for p in parts), all(p[2] for p in parts))


# equivalence of family members


@dataclass
class EquivCensus:
    q: int
    checked: int
    ab_equivalent: int
    remark_pairs: int
    remark_equivalent: int

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "ab_checked": self.checked,
            "ab_equivalent": self.ab_equivalent,
            "remark_pairs": self.remark_pairs,
            "remark_equivalent": self.remark_equivalent,
            "matches": self.checked == self.ab_equivalent and self.remark_pairs == self.remark_equivalent,
        }


def census_equiv(q: int, limit: int | None = None) -> EquivCensus:
    """A_{a,b,alpha,beta} against A_{alpha,beta,0,0}, plus the beta <-> beta+1 remark pairs."""
    h = q.bit_length() - 1
    if 1 << h != q or h < 4 or h > 5:
        raise TooLarge("equivalence census is limited to q in {16, 32}")
    F = field_for(h)
    pairs = list(admissible_pairs(F))
    if limit:
        pairs = pairs[:limit]
    checked = ok = 0
    for alpha, beta in pairs:
        A = new_family(FamilyParams(F, alpha, beta, 0, 0))
        for a, b in ((0, 1), (1, 0), (1, 1)):
            B = new_family(FamilyParams(F, alpha, beta, a, b))
            checked += 1
            ok += pgl_equivalent(A, B) is not None
    rp = re = 0
    for beta in range(2, q):
        b2 = F.mul(beta, beta)
        p1 = FamilyParams(F, F.inv(b2), beta, 0, 0)
        try:
            p2 = FamilyParams(F, F.inv(b2 ^ 1), beta ^ 1, 0, 0)
        except Exception:
            continue
        if F.mul(p1.alpha, beta) == 1:
            continue
        rp += 1
        re += pgl_equivalent(new_family(p1), new_family(p2)) is not None
    return EquivCensus(q, checked, ok, rp, re)


# optional stretch: 3-clubs of rank 5 with a fixed head at q = 32


@dataclass
class StretchResult:
    candidates: int
    club_subspaces: int
    clubs: int
    single_orbit: bool

    def to_json(self) -> dict:
        return {
            "candidates": self.candidates,
            "club_subspaces": self.club_subspaces,
            "clubs": self.clubs,
            "single_orbit": self.single_orbit,
        }


def _subspaces_of(n: int, k: int) -> np.ndarray:
    return np.concatenate([rows for _, rows in rref_subspaces(n, k)])


def stretch_clubs_q32() -> StretchResult:
    """All 3-clubs of rank 5 in PG(1, 32) with head (1,0), and whether they form one orbit.

    A rank-5 subspace meeting the spread element rho = {(x, 0)} in a 3-space
    tau is tau plus the graph of a linear map from a 2-space of the Y-block
    into a fixed complement of tau in rho.
    """
    h = 5
    F = field_for(h)
    table, pts = owner_table(F)
    head = pts.index((1, 0))
    taus = _subspaces_of(h, 3)
    ucs = _subspaces_of(h, 2) << h
    candidates = club_subs = 0
    sets: set = set()
    for tau in taus:
        tb = gf2.rref(int(x) for x in tau)
        comp = _complement(tb, h)
        images = [0, comp[0], comp[1], comp[0] ^ comp[1]]
        fmaps = list(itertools.product(range(4), repeat=2))
        rows = np.empty((len(ucs) * len(fmaps), 5), dtype=np.int64)
        r = 0
        for uc in ucs:
            for f0, f1 in fmaps:
                rows[r] = [tau[0], tau[1], tau[2], uc[0] | images[f0], uc[1] | images[f1]]
                r += 1
        candidates += len(rows)
        own = table[span_vectors(rows)]
        counts = np.zeros((len(rows), len(pts)), dtype=np.int64)
        np.add.at(counts, (np.arange(len(rows))[:, None], own), 1)
        ok = (counts[:, head] == 7) & ((counts > 1).sum(axis=1) == 1)
        club_subs += int(ok.sum())
        for row in counts[ok] > 0:
            sets.add(np.packbits(row).tobytes())
    clubs = [
        frozenset(pts[i] for i in np.nonzero(np.unpackbits(np.frombuffer(k, np.uint8))[: len(pts)])[0])
        for k in sets
    ]
    single = _single_orbit(F, clubs, (1, 0))
    return StretchResult(candidates, club_subs, len(clubs), single)


def _complement(basis: list[int], n: int) -> list[int]:
    out = []
    cur = list(basis)
    for j in range(n):
        if gf2.rank(cur + [1 << j]) > len(cur):
            cur.append(1 << j)
            out.append(1 << j)
    return out


def _single_orbit(F: Field, clubs: list, head) -> bool:
    """Whether the head stabilizer in PGammaL(2, q) moves clubs[0] onto every club."""
    if not clubs:
        return False
    target = set(clubs)
    ref = clubs[0]
    seen = set()
    hx = normalize(F, head)
    assert hx == (1, 0)
    # maps fixing (1,0): x -> [[a, b], [0, d]] x^(2^k)
    for k in range(F.m):
        for a in range(1, F.q):
            for b in range(F.q):
                g = Collineation(F, ((a, b), (0, 1)), k)
                img = apply(g, ref)
                if img in target:
                    seen.add(img)
                else:
                    return False
    return seen == target
