"""Arithmetic in GF(2^m) with elements stored as polynomial-basis bit patterns.

An element is a plain ``int`` whose bit ``i`` is the coefficient of
``lam**i``, where ``lam`` is the residue of ``x`` modulo the field modulus.
Subfield elements are ordinary elements of the big field.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd

import numpy as np

from . import gf2
from .errors import BadSubfield, DivisionByZero, NotFound

__all__ = [
    "FieldSpec",
    "Field",
    "BasisMap",
    "find_modulus",
    "find_normal_basis",
    "poly_mulmod",
    "poly_powmod",
    "is_irreducible",
    "is_primitive",
    "field_for",
]

# Log/antilog tables are built up to this degree.
TABLE_MAX_M = 20


def poly_mulmod(a: int, b: int, mod: int) -> int:
    """Product of two GF(2)[x] polynomials reduced modulo ``mod``."""
    deg = mod.bit_length() - 1
    top = 1 << deg
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= mod
    return r


def poly_powmod(a: int, e: int, mod: int) -> int:
    r = 1
    while e:
        if e & 1:
            r = poly_mulmod(r, a, mod)
        a = poly_mulmod(a, a, mod)
        e >>= 1
    return r


def _poly_mod(a: int, b: int) -> int:
    db = b.bit_length()
    while a.bit_length() >= db:
        a ^= b << (a.bit_length() - db)
    return a


def _poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _poly_mod(a, b)
    return a


def _prime_factors(n: int) -> list[int]:
    if n.bit_length() > 40:
        from sympy import factorint

        return sorted(factorint(n))
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(f: int) -> bool:
    """Rabin's test for a polynomial over GF(2) of degree >= 1."""
    m = f.bit_length() - 1
    if m < 1:
        return False
    if m == 1:
        return True
    x = 2
    if poly_powmod(x, 1 << m, f) != _poly_mod(x, f):
        return False
    for p in _prime_factors(m):
        # x^(2^(m/p)) - x must be coprime to f
        y = x
        for _ in range(m // p):
            y = poly_mulmod(y, y, f)
        if _poly_gcd(f, y ^ x) != 1:
            return False
    return True


def is_primitive(f: int) -> bool:
    """True when x has multiplicative order 2^m - 1 modulo the irreducible f."""
    m = f.bit_length() - 1
    n = (1 << m) - 1
    if m == 1:
        return True
    return all(poly_powmod(2, n // p, f) != 1 for p in _prime_factors(n))


@dataclass(frozen=True)
class FieldSpec:
    m: int
    modulus: int
    primitive: bool = False
    vdd_compatible: bool = False

    def __post_init__(self):
        if self.modulus.bit_length() - 1 != self.m:
            raise ValueError(f"modulus {self.modulus:#x} does not have degree {self.m}")
        if not is_irreducible(self.modulus):
            raise ValueError(f"modulus {self.modulus:#x} is reducible")
        if self.primitive and not is_primitive(self.modulus):
            raise ValueError(f"modulus {self.modulus:#x} is not primitive")
        if self.vdd_compatible and not _vdd_ok(self.modulus, self.m):
            raise ValueError(f"modulus {self.modulus:#x} has terms of degree m-1 or m-2")

    @classmethod
    def from_modulus(cls, modulus: int) -> "FieldSpec":
        """Spec for a given modulus with the flags computed rather than requested."""
        m = modulus.bit_length() - 1
        prim = is_irreducible(modulus) and is_primitive(modulus)
        return cls(m, modulus, prim, m >= 3 and _vdd_ok(modulus, m))

    def to_json(self) -> dict:
        return {"m": self.m, "modulus": hex(self.modulus)}

    @classmethod
    def from_json(cls, d: dict) -> "FieldSpec":
        return cls.from_modulus(int(d["modulus"], 16))


def _vdd_ok(f: int, m: int) -> bool:
    return m >= 3 and not (f >> (m - 1)) & 1 and not (f >> (m - 2)) & 1


def find_modulus(m: int, primitive: bool = False, vdd_compatible: bool = False) -> FieldSpec:
    """Lexicographically smallest modulus of degree m meeting the constraints."""
    if m < 1 or (vdd_compatible and m < 3):
        raise ValueError("degree too small for the requested constraints")
    if m == 1:
        return FieldSpec(1, 0b11, True, False)
    for rest in range(1, 1 << m, 2):
        f = (1 << m) | rest
        if vdd_compatible and not _vdd_ok(f, m):
            continue
        if not is_irreducible(f):
            continue
        if primitive and not is_primitive(f):
            continue
        return FieldSpec(m, f, primitive or is_primitive(f), vdd_compatible or _vdd_ok(f, m))
    raise NotFound(f"no modulus of degree {m} with primitive={primitive}, vdd={vdd_compatible}")


class Field:
    """GF(2^m) for a fixed modulus.

    Instances are immutable after construction and cheap to share.  For
    ``m <= TABLE_MAX_M`` multiplication goes through log/antilog tables
    (also exposed as numpy arrays for vectorised kernels).
    """

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.m = spec.m
        self.q = 1 << spec.m
        self.modulus = spec.modulus
        self.order = self.q - 1
        self._tables = self.m <= TABLE_MAX_M
        if self._tables:
            self._build_tables()
        # absolute trace as a parity mask: Tr(a) = parity(a & mask)
        self._trace_mask = 0
        for i in range(self.m):
            if self._trace_slow(1 << i, 1) & 1:
                self._trace_mask |= 1 << i
        self._rel_trace_images: dict[int, list[int]] = {}

    def __repr__(self) -> str:
        return f"Field(m={self.m}, modulus={self.modulus:#x})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and other.modulus == self.modulus

    def __hash__(self) -> int:
        return hash(("Field", self.modulus))

    # tables

    def _build_tables(self) -> None:
        q, n = self.q, self.order
        g = 2 if self.m > 1 else 1
        if not self.spec.primitive:
            g = next(
                c for c in range(2, q) if self._order_slow(c) == n
            ) if self.m > 1 else 1
        self.generator = g
        exp = [0] * (2 * n + 1)
        log = [0] * q
        x = 1
        for i in range(n):
            exp[i] = x
            log[x] = i
            x = poly_mulmod(x, g, self.modulus)
        for i in range(n, 2 * n + 1):
            exp[i] = exp[i - n]
        self.exp = exp
        self.log = log
        self.exp_np = np.array(exp, dtype=np.int64)
        self.log_np = np.array(log, dtype=np.int64)

    def _order_slow(self, a: int) -> int:
        n = self.order
        for d in sorted(_divisors(n)):
            if poly_powmod(a, d, self.modulus) == 1:
                return d
        return n

    # scalar arithmetic

    @staticmethod
    def add(a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        if self._tables:
            return self.exp[self.log[a] + self.log[b]]
        return poly_mulmod(a, b, self.modulus)

    def inv(self, a: int) -> int:
        if not a:
            raise DivisionByZero("inverse of zero")
        if self._tables:
            return self.exp[(self.order - self.log[a]) % self.order]
        return poly_powmod(a, self.q - 2, self.modulus)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if not a:
            return 1 if e == 0 else 0
        if self._tables:
            return self.exp[(self.log[a] * e) % self.order]
        return poly_powmod(a, e, self.modulus)

    def frobenius(self, a: int, k: int = 1) -> int:
        """a^(2^k)."""
        k %= self.m
        if not a or not k:
            return a
        if self._tables:
            return self.exp[(self.log[a] << k) % self.order]
        for _ in range(k):
            a = poly_mulmod(a, a, self.modulus)
        return a

    def sqrt(self, a: int) -> int:
        return self.frobenius(a, self.m - 1)

    def elements(self) -> range:
        return range(self.q)

    @property
    def lam(self) -> int:
        """The residue of x."""
        return 2 if self.m > 1 else 1

    # traces and subfields

    def _check_sub(self, d: int) -> None:
        if d < 1 or self.m % d:
            raise BadSubfield(f"{d} does not divide {self.m}")

    def _trace_slow(self, a: int, d: int) -> int:
        s, x = 0, a
        for _ in range(self.m // d):
            s ^= x
            x = self.frobenius(x, d)
        return s

    def trace(self, a: int, d: int = 1) -> int:
        """Relative trace into GF(2^d): sum of a^(2^(d*j)) for j < m/d."""
        self._check_sub(d)
        if d == 1:
            return (self._trace_mask & a).bit_count() & 1
        if d == self.m:
            return a
        imgs = self._rel_trace_images.get(d)
        if imgs is None:
            imgs = [self._trace_slow(1 << i, d) for i in range(self.m)]
            self._rel_trace_images[d] = imgs
        out, i = 0, 0
        while a:
            if a & 1:
                out ^= imgs[i]
            a >>= 1
            i += 1
        return out

    @property
    def trace_mask(self) -> int:
        return self._trace_mask

    def in_subfield(self, a: int, d: int) -> bool:
        self._check_sub(d)
        return self.frobenius(a, d) == a

    def subfield_generator(self, d: int) -> int:
        """A primitive element of the subfield GF(2^d)."""
        self._check_sub(d)
        if d == self.m:
            return self.primitive_element
        return self.pow(self.primitive_element, self.order // ((1 << d) - 1))

    @cached_property
    def primitive_element(self) -> int:
        if self._tables:
            return self.generator
        if self.spec.primitive:
            return 2
        return next(c for c in range(2, self.q) if self._order_slow(c) == self.order)

    def subfield_elements(self, d: int) -> list[int]:
        """Elements of GF(2^d) inside this field, sorted by bit pattern."""
        self._check_sub(d)
        if d == self.m:
            return list(range(self.q))
        g = self.subfield_generator(d)
        out, x = [0], 1
        for _ in range((1 << d) - 1):
            out.append(x)
            x = self.mul(x, g)
        return sorted(out)

    def subfield_basis(self, d: int) -> list[int]:
        """F2-basis 1, g, ..., g^(d-1) of GF(2^d) for its primitive element g."""
        g = self.subfield_generator(d)
        out, x = [], 1
        for _ in range(d):
            out.append(x)
            x = self.mul(x, g)
        return out

    def subfield(self, d: int) -> tuple["Field", list[int]]:
        """GF(2^d) as a standalone field plus its embedding table into self.

        The small field uses the minimal polynomial of
        :meth:`subfield_generator` so that the embedding maps its ``x`` to
        that generator.
        """
        basis = self.subfield_basis(d)
        g = self.subfield_generator(d)
        top = self.pow(g, d)
        # solve top = sum c_j g^j over F2
        inv = gf2.inverse_columns(basis, self.m) if d == self.m else None
        if inv is not None:
            coeffs = _apply_columns(inv, top)
        else:
            coeffs = _express(basis, top)
        minpoly = (1 << d) | coeffs
        small = Field(FieldSpec(d, minpoly, True, False) if d > 1 else FieldSpec(1, 0b11, True))
        embed = [0] * (1 << d)
        for a in range(1 << d):
            embed[a] = _combine(basis, a)
        return small, embed

    # vectorised helpers (table-backed fields only)

    def vmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        r = self.exp_np[self.log_np[a] + self.log_np[b]]
        return np.where((a == 0) | (b == 0), 0, r)

    def vinv(self, a: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise DivisionByZero("inverse of zero")
        return self.exp_np[(self.order - self.log_np[a]) % self.order]

    def vfrobenius(self, a: np.ndarray, k: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        k %= self.m
        if not k:
            return a
        r = self.exp_np[(self.log_np[a] << k) % self.order]
        return np.where(a == 0, 0, r)

    @cached_property
    def trace_table(self) -> np.ndarray:
        """Absolute trace of every element, indexed by bit pattern."""
        x = np.arange(self.q, dtype=np.int64) & self._trace_mask
        par = np.zeros(self.q, dtype=np.int64)
        while np.any(x):
            par ^= x & 1
            x >>= 1
        return par

    def element_hex(self, a: int) -> str:
        return hex(a)


def _divisors(n: int) -> list[int]:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            out.append(n // d)
        d += 1
    return out


def _apply_columns(cols, v: int) -> int:
    out, i = 0, 0
    while v:
        if v & 1:
            out ^= cols[i]
        v >>= 1
        i += 1
    return out


def _combine(basis, bits: int) -> int:
    return _apply_columns(basis, bits)


def _express(basis: list[int], v: int) -> int:
    """Coordinates of v in the F2-independent list ``basis`` (must lie in its span)."""
    # eliminate with tracking
    pairs: list[tuple[int, int]] = []
    for j, c in enumerate(basis):
        pre = 1 << j
        for img, p in pairs:
            if c ^ img < c:
                c ^= img
                pre ^= p
        pairs.append((c, pre))
    pairs.sort(reverse=True)
    out = 0
    for img, p in pairs:
        if v ^ img < v:
            v ^= img
            out ^= p
    if v:
        raise ValueError("vector not in span")
    return out


@dataclass(frozen=True)
class BasisMap:
    """Change of F2-basis for GF(2^m).

    ``columns[j]`` is the polynomial-basis pattern of the j-th custom basis
    vector, so the matrix maps custom coordinates to polynomial ones.
    """

    kind: str
    columns: tuple[int, ...]
    inverse: tuple[int, ...]

    @classmethod
    def from_columns(cls, kind: str, columns) -> "BasisMap":
        cols = tuple(columns)
        return cls(kind, cols, tuple(gf2.inverse_columns(cols, len(cols))))

    @classmethod
    def polynomial(cls, m: int) -> "BasisMap":
        cols = tuple(1 << i for i in range(m))
        return cls("polynomial", cols, cols)

    def from_custom(self, v: int) -> int:
        """Custom coordinates -> polynomial-basis element."""
        return _apply_columns(self.columns, v)

    def to_custom(self, a: int) -> int:
        """Polynomial-basis element -> custom coordinates."""
        return _apply_columns(self.inverse, a)


def find_normal_basis(field: Field | FieldSpec) -> BasisMap:
    """First omega (by bit pattern) whose conjugates form an F2-basis."""
    if isinstance(field, FieldSpec):
        field = field_for(field)
    for w in range(1, field.q):
        conj = [field.frobenius(w, i) for i in range(field.m)]
        if gf2.rank(conj) == field.m:
            return BasisMap.from_columns("normal", conj)
    raise NotFound("no normal basis")  # unreachable


_FIELD_CACHE: dict[int, Field] = {}


def field_for(spec_or_m: FieldSpec | int) -> Field:
    """Cached Field for a spec, or for the canonical primitive modulus of degree m."""
    if isinstance(spec_or_m, int):
        spec = find_modulus(spec_or_m, primitive=True)
    else:
        spec = spec_or_m
    f = _FIELD_CACHE.get(spec.modulus)
    if f is None:
        f = _FIELD_CACHE[spec.modulus] = Field(spec)
    return f


def coprime(a: int, b: int) -> bool:
    return gcd(a, b) == 1
