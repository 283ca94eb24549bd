"""Arithmetic in GF(2^e).

Elements are plain ints whose bits are the coefficients of a polynomial
residue (bit i is the coefficient of X^i).  A :class:`FieldSpec` carries the
modulus plus lookup tables, and exposes both scalar operations and
vectorised numpy versions used by the linear algebra kernels.
"""

from __future__ import annotations

import numpy as np

MAX_DEGREE = 16


class FieldError(ValueError):
    pass


def _clmul(a: int, b: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def _polymod(a: int, m: int) -> int:
    dm = m.bit_length()
    while a.bit_length() >= dm:
        a ^= m << (a.bit_length() - dm)
    return a


def is_irreducible_gf2(bits: int) -> bool:
    """Trial division of a polynomial over F_2 by all polynomials of degree <= deg/2."""
    deg = bits.bit_length() - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for p in range(1 << d, 1 << (d + 1)):
            if _polymod(bits, p) == 0:
                return False
    return True


class FieldSpec:
    """The finite field K = GF(2^e) with a fixed irreducible modulus.

    ``alpha`` is the smallest element of absolute trace 1, so that
    X^2 + X + alpha is irreducible over K.
    """

    def __init__(self, e: int, modulus_bits: int):
        if not 1 <= e <= MAX_DEGREE:
            raise FieldError(f"extension degree must lie in [1, {MAX_DEGREE}], got {e}")
        if modulus_bits.bit_length() - 1 != e:
            raise FieldError(f"modulus {modulus_bits:#b} does not have degree {e}")
        if not is_irreducible_gf2(modulus_bits):
            raise FieldError(f"modulus {modulus_bits:#b} is reducible over F_2")
        self.e = e
        self.modulus_bits = modulus_bits
        self.q = 1 << e
        self._build_tables()
        self.alpha = int(np.flatnonzero(self.trace_table == 1)[0])

    def _build_tables(self) -> None:
        q, m = self.q, self.modulus_bits
        # exp/log tables relative to a primitive element
        for g in range(1, q):
            x = g
            order = 1
            while x != 1:
                x = _polymod(_clmul(x, g), m)
                order += 1
            if order == q - 1:
                break
        exp = np.zeros(2 * q, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = _polymod(_clmul(x, g), m)
        exp[q - 1:2 * (q - 1)] = exp[:q - 1]
        self._exp, self._log = exp, log
        self.primitive = g
        if q <= 256:
            a = np.arange(q)
            self.mul_table = self.vmul_log(a[:, None], a[None, :])
        else:
            self.mul_table = None
        elems = np.arange(q, dtype=np.int64)
        self.square_table = self.vmul(elems, elems)
        sqrt = np.empty(q, dtype=np.int64)
        sqrt[self.square_table] = elems
        self.sqrt_table = sqrt
        inv = np.zeros(q, dtype=np.int64)
        inv[1:] = exp[(q - 1 - log[1:]) % (q - 1)]
        self.inv_table = inv
        tr = elems.copy()
        t = elems
        for _ in range(self.e - 1):
            t = self.square_table[t]
            tr ^= t
        self.trace_table = tr
        # x^2 + x -> smallest preimage x (-1 when no solution)
        wp = np.full(q, q, dtype=np.int64)
        np.minimum.at(wp, self.square_table ^ elems, elems)
        wp[wp == q] = -1
        self.wp_root = wp

    # -- scalar operations -------------------------------------------------
    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self._exp[self._log[a] + self._log[b]])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inversion of 0 in GF(2^e)")
        return int(self.inv_table[a])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            return 1 if n == 0 else 0
        return int(self._exp[(self._log[a] * n) % (self.q - 1)])

    def sqrt(self, a: int) -> int:
        return int(self.sqrt_table[a])

    def trace(self, a: int) -> int:
        return int(self.trace_table[a])

    def in_wp(self, a: int) -> bool:
        return self.trace_table[a] == 0

    # -- vectorised ----------------------------------------------------------
    def vmul_log(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        r = self._exp[self._log[a] + self._log[b]]
        return np.where((a == 0) | (b == 0), 0, r)

    def vmul(self, a, b):
        if self.mul_table is not None:
            return self.mul_table[a, b]
        return self.vmul_log(a, b)

    def vinv(self, a):
        return self.inv_table[a]

    def random(self, rng, size=None):
        return rng.integers(0, self.q, size=size, dtype=np.int64)

    # -- identity & serialisation ------------------------------------------
    def _key(self):
        return (self.e, self.modulus_bits)

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"FieldSpec(e={self.e}, modulus_bits={self.modulus_bits:#b})"

    def to_dict(self) -> dict:
        return {"e": self.e, "modulus_bits": self.modulus_bits}

    @classmethod
    def from_dict(cls, d: dict) -> "FieldSpec":
        return field_make(int(d["e"]), d.get("modulus_bits"))


_FIELD_CACHE: dict = {}


def field_make(e: int, modulus_bits: int | None = None) -> FieldSpec:
    """Build GF(2^e); without a modulus the smallest irreducible one is used."""
    if not isinstance(e, int) or e < 1:
        raise FieldError(f"extension degree must be a positive integer, got {e!r}")
    if modulus_bits is None:
        if e > MAX_DEGREE:
            raise FieldError(f"extension degree must lie in [1, {MAX_DEGREE}], got {e}")
        modulus_bits = next(b for b in range(1 << e, 1 << (e + 1)) if is_irreducible_gf2(b))
    key = (e, modulus_bits)
    if key not in _FIELD_CACHE:
        _FIELD_CACHE[key] = FieldSpec(e, modulus_bits)
    return _FIELD_CACHE[key]


def arith(f: FieldSpec, op: str, a: int, b: int = 0) -> int:
    if op == "add":
        return f.add(a, b)
    if op == "mul":
        return f.mul(a, b)
    if op == "inv":
        return f.inv(a)
    raise ValueError(f"unknown operation {op!r}")


def sqrt(f: FieldSpec, a: int) -> int:
    """The unique square root; squaring is an automorphism of K."""
    return f.sqrt(a)


def in_wp(f: FieldSpec, a: int) -> bool:
    """Membership in the Artin-Schreier subgroup {x^2 + x}, i.e. trace zero."""
    return f.in_wp(a)


def artin_schreier_solve(f: FieldSpec, c: int) -> tuple[int, int] | None:
    """Both roots of x^2 + x = c, or None when c has trace 1."""
    x0 = int(f.wp_root[c])
    if x0 < 0:
        return None
    return (x0, x0 ^ 1)
