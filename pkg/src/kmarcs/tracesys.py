"""Systems of absolute-trace equations Tr(k_i x) = c_i over GF(2^h).

Each functional x -> Tr(k x) is F2-linear, so it is stored as the h-bit row
whose bit i is Tr(k * lam^i).  Counting and solving then reduce to GF(2)
elimination.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import gf2
from .errors import TooLarge
from .gf2field import Field

BRUTE_LIMIT = 1 << 20


def functional_row(F: Field, k: int) -> int:
    """Bit i is Tr(k * lam^i)."""
    row = 0
    for i in range(F.m):
        if F.trace(F.mul(k, 1 << i)):
            row |= 1 << i
    return row


@dataclass(frozen=True)
class TraceSystem:
    field: Field
    ks: tuple[int, ...]
    cs: tuple[int, ...]

    def __post_init__(self):
        if len(self.ks) != len(self.cs):
            raise ValueError("ks and cs differ in length")
        object.__setattr__(self, "ks", tuple(self.ks))
        object.__setattr__(self, "cs", tuple(c & 1 for c in self.cs))

    def satisfied_by(self, x: int) -> bool:
        F = self.field
        return all(F.trace(F.mul(k, x)) == c for k, c in zip(self.ks, self.cs))


def rank_and_consistency(sys: TraceSystem) -> tuple[int, bool]:
    """Rank m' of span(ks) over F2 and whether the right-hand sides agree.

    Each equation is the (m+1)-bit vector (k, c); the system is consistent
    iff eliminating never produces (0, 1).
    """
    basis = gf2.rref((k << 1) | c for k, c in zip(sys.ks, sys.cs))
    ok = all(v != 1 for v in basis)
    r = sum(1 for v in basis if v >> 1)
    return r, ok


def count(sys: TraceSystem) -> int:
    r, ok = rank_and_consistency(sys)
    return sys.field.q >> r if ok else 0


def solve(sys: TraceSystem) -> list[int]:
    """All solutions, sorted."""
    F = sys.field
    rows = [functional_row(F, k) for k in sys.ks]
    x0 = gf2.solve(rows, sys.cs, F.m)
    if x0 is None:
        return []
    kernel = gf2.nullspace(rows, F.m)
    return sorted(x0 ^ v for v in gf2.span_elements(kernel))


def brute_count(sys: TraceSystem) -> int:
    F = sys.field
    if F.q > BRUTE_LIMIT:
        raise TooLarge(f"q = {F.q} exceeds the brute-force limit {BRUTE_LIMIT}")
    if F.m <= 20:
        import numpy as np

        x = np.arange(F.q, dtype=np.int64)
        ok = np.ones(F.q, dtype=bool)
        T = F.trace_table
        for k, c in zip(sys.ks, sys.cs):
            ok &= T[F.vmul(x, np.full_like(x, k))] == c
        return int(ok.sum())
    return sum(1 for x in F.elements() if sys.satisfied_by(x))


def annihilator(F: Field, vectors) -> list[int]:
    """Basis of {k : Tr(k v) = 0 for all v in vectors}."""
    return gf2.nullspace([functional_row(F, v) for v in vectors], F.m)


def describe_coset(F: Field, xs) -> list[tuple[int, int]]:
    """Trace equations (k, c) cutting out an affine F2-subspace of GF(2^h).

    ``xs`` must be a coset x0 + V; the result lists one equation per basis
    element of the annihilator of V.  Raises ValueError otherwise.
    """
    xs = list(xs)
    x0 = xs[0]
    basis = gf2.rref(x ^ x0 for x in xs)
    if len(xs) != 1 << len(basis):
        raise ValueError("not an affine F2-subspace")
    return [(k, F.trace(F.mul(k, x0))) for k in annihilator(F, basis)]
