"""Linear algebra over GF(2) with vectors packed into Python ints.

Bit ``i`` of a row is coordinate ``i``.  Pivots are taken at the highest set
bit, so reduced rows are sorted by decreasing leading bit.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence

__all__ = [
    "rank",
    "rref",
    "reduce",
    "in_span",
    "span_elements",
    "nullspace",
    "solve",
    "inverse_columns",
]


def rref(rows: Iterable[int]) -> list[int]:
    """Reduced echelon basis of the span of ``rows`` (canonical for the span)."""
    basis: list[int] = []
    for v in rows:
        for b in basis:
            if v ^ b < v:
                v ^= b
        if v:
            # clear the new pivot from the existing rows
            top = 1 << (v.bit_length() - 1)
            basis = [b ^ v if b & top else b for b in basis]
            basis.append(v)
    basis.sort(reverse=True)
    return basis


def reduce(v: int, basis: Sequence[int]) -> int:
    """Reduce ``v`` against an echelon basis as returned by :func:`rref`."""
    for b in basis:
        if v ^ b < v:
            v ^= b
    return v


def rank(rows: Iterable[int]) -> int:
    return len(rref(rows))


def in_span(v: int, basis: Sequence[int]) -> bool:
    return reduce(v, basis) == 0


def span_elements(basis: Sequence[int]) -> list[int]:
    """All 2^k vectors of the span, in Gray-code order starting at 0."""
    out = [0]
    for b in basis:
        out += [x ^ b for x in out]
    return out


def nullspace(rows: Sequence[int], ncols: int) -> list[int]:
    """Basis of {x : popcount(row & x) even for every row}."""
    piv: dict[int, int] = {}
    for v in rref(rows):
        piv[v.bit_length() - 1] = v
    free = [c for c in range(ncols) if c not in piv]
    out = []
    for f in free:
        x = 1 << f
        for p, row in piv.items():
            if (row >> f) & 1:
                x |= 1 << p
        out.append(x)
    return out


def solve(rows: Sequence[int], rhs: Sequence[int], ncols: int) -> int | None:
    """One x with parity(rows[i] & x) = rhs[i] for all i, or None."""
    aug = [(r << 1) | (c & 1) for r, c in zip(rows, rhs)]
    x = 0
    for v in rref(aug):
        if v == 1:
            return None
        if v & 1:
            x |= 1 << (v.bit_length() - 2)
    return x


def inverse_columns(cols: Sequence[int], n: int) -> list[int]:
    """Columns of the inverse of the n x n matrix with the given columns.

    Column j of the input is the image of the j-th unit vector.
    Raises ValueError if the matrix is singular.
    """
    # Track (image, preimage) pairs and eliminate on the image side.
    pairs: list[tuple[int, int]] = []
    for j, c in enumerate(cols):
        pre = 1 << j
        for img, p in pairs:
            if c ^ img < c:
                c ^= img
                pre ^= p
        if not c:
            raise ValueError("singular matrix")
        top = 1 << (c.bit_length() - 1)
        pairs = [(img ^ c, p ^ pre) if img & top else (img, p) for img, p in pairs]
        pairs.append((c, pre))
    out = [0] * n
    for img, p in pairs:
        out[img.bit_length() - 1] = p
    return out
