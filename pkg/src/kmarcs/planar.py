"""Vectorised point/line kernels for PG(2,q) built on numpy log tables.

Points and lines are int64 arrays of shape (k, 3).  A normalised point or
line is encoded as the integer ``x*q*q + y*q + z``.
"""

from __future__ import annotations

from collections.abc import Iterable

import numpy as np

from .gf2field import Field


class PlaneKernel:
    def __init__(self, F: Field):
        if not hasattr(F, "exp_np"):
            raise ValueError("vectorised kernels need a table-backed field")
        self.F = F
        self.q = F.q

    def array(self, pts: Iterable) -> np.ndarray:
        a = np.array(list(pts), dtype=np.int64)
        return a.reshape(-1, 3)

    def normalize(self, V: np.ndarray) -> np.ndarray:
        x, y, z = V[:, 0], V[:, 1], V[:, 2]
        lead = np.where(x != 0, x, np.where(y != 0, y, z))
        if np.any(lead == 0):
            raise ValueError("zero vector")
        s = self.F.vinv(lead)
        mul = self.F.vmul
        return np.stack([mul(x, s), mul(y, s), mul(z, s)], axis=1)

    def encode(self, V: np.ndarray) -> np.ndarray:
        q = self.q
        return (V[:, 0] * q + V[:, 1]) * q + V[:, 2]

    def decode(self, keys: np.ndarray) -> np.ndarray:
        q = self.q
        keys = np.asarray(keys, dtype=np.int64)
        return np.stack([keys // (q * q), (keys // q) % q, keys % q], axis=1)

    def keys_of(self, pts: Iterable) -> np.ndarray:
        return self.encode(self.array(pts))

    def cross(self, U: np.ndarray, V: np.ndarray) -> np.ndarray:
        m = self.F.vmul
        return np.stack(
            [
                m(U[:, 1], V[:, 2]) ^ m(U[:, 2], V[:, 1]),
                m(U[:, 2], V[:, 0]) ^ m(U[:, 0], V[:, 2]),
                m(U[:, 0], V[:, 1]) ^ m(U[:, 1], V[:, 0]),
            ],
            axis=1,
        )

    def dot(self, V: np.ndarray, l) -> np.ndarray:
        m = self.F.vmul
        return m(V[:, 0], l[0]) ^ m(V[:, 1], l[1]) ^ m(V[:, 2], l[2])

    def apply_matrix(self, M, V: np.ndarray, frob: int = 0) -> np.ndarray:
        """Images M * V^(2^frob) of the rows of V, normalised."""
        if frob:
            V = self.F.vfrobenius(V, frob)
        m = self.F.vmul
        out = np.stack(
            [m(V[:, 0], M[i][0]) ^ m(V[:, 1], M[i][1]) ^ m(V[:, 2], M[i][2]) for i in range(3)],
            axis=1,
        )
        return self.normalize(out)

    def pair_lines(self, P: np.ndarray):
        """Lines through all pairs i < j of distinct points.

        Returns (i, j, keys) with keys the encoded normalised lines.
        """
        n = len(P)
        i, j = np.triu_indices(n, 1)
        L = self.normalize(self.cross(P[i], P[j]))
        return i, j, self.encode(L)

    def multi_lines(self, P: np.ndarray):
        """Lines meeting P in at least two points.

        Returns (keys, sizes, degree) where degree[i] is the number of such
        lines through point i.
        """
        n = len(P)
        if n < 2:
            return np.zeros(0, np.int64), np.zeros(0, np.int64), np.zeros(n, np.int64)
        i, j, keys = self.pair_lines(P)
        uk, counts = np.unique(keys, return_counts=True)
        sizes = ((1 + np.sqrt(1 + 8 * counts)) / 2).round().astype(np.int64)
        # distinct (point, line) incidences among those lines
        idx = np.concatenate([i, j])
        kk = np.concatenate([keys, keys])
        inc = np.unique(np.stack([idx, kk], axis=1), axis=0)
        degree = np.bincount(inc[:, 0], minlength=n)
        return uk, sizes, degree

    def lines_through_point(self, P) -> np.ndarray:
        """Encoded lines through one point (q+1 of them)."""
        q = self.q
        # pair P with the points of a line not through P
        P = np.asarray(P, dtype=np.int64)
        for l in ((0, 0, 1), (0, 1, 0), (1, 0, 0)):
            if int(self.dot(P.reshape(1, 3), l)[0]) != 0:
                break
        if l == (0, 0, 1):
            others = [(0, 1, 0)] + [(1, y, 0) for y in range(q)]
        elif l == (0, 1, 0):
            others = [(0, 0, 1)] + [(1, 0, z) for z in range(q)]
        else:
            others = [(0, 0, 1)] + [(0, 1, z) for z in range(q)]
        O = self.array(others)
        Ps = np.repeat(P.reshape(1, 3), len(O), axis=0)
        return self.encode(self.normalize(self.cross(Ps, O)))

    def member(self, keys: np.ndarray, sorted_keys: np.ndarray) -> np.ndarray:
        pos = np.searchsorted(sorted_keys, keys)
        pos = np.minimum(pos, len(sorted_keys) - 1)
        return sorted_keys[pos] == keys


_KERNELS: dict[int, PlaneKernel] = {}


def kernel(F: Field) -> PlaneKernel:
    k = _KERNELS.get(F.modulus)
    if k is None:
        k = _KERNELS[F.modulus] = PlaneKernel(F)
    return k
