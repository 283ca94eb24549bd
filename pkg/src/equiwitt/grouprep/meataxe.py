"""Meataxe: composition factors of KG-modules.

Random elements of the group algebra are tested with Norton's
irreducibility criterion.  Polynomials are lists of field elements, lowest
degree first, always trimmed so that the last entry is nonzero.
"""

from __future__ import annotations

import random

import numpy as np

from .. import exactla as la
from ..gfield import FieldSpec
from .rep import Rep, quotient_rep, sub_rep

DEFAULT_SEED = 0x5177
DEFAULT_BUDGET = 200


class MeataxeError(RuntimeError):
    pass


# -- polynomials over GF(q) ----------------------------------------------------

def _trim(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_add(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) ^ (b[i] if i < len(b) else 0) for i in range(n)]
    return _trim(out)


def poly_mul(f: FieldSpec, a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] ^= f.mul(x, y)
    return _trim(out)


def poly_divmod(f: FieldSpec, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    lead_inv = f.inv(b[-1])
    db = len(b) - 1
    quot = [0] * max(len(a) - db, 0)
    while len(a) - 1 >= db and a:
        c = f.mul(a[-1], lead_inv)
        shift = len(a) - 1 - db
        quot[shift] = c
        for j, y in enumerate(b):
            if y:
                a[shift + j] ^= f.mul(c, y)
        _trim(a)
    return _trim(quot), a


def poly_mod(f, a, b):
    return poly_divmod(f, a, b)[1]


def poly_monic(f: FieldSpec, a):
    if not a:
        return a
    c = f.inv(a[-1])
    return [f.mul(c, x) for x in a]


def poly_gcd(f: FieldSpec, a, b):
    a, b = list(a), list(b)
    while b:
        a, b = b, poly_mod(f, a, b)
    return poly_monic(f, a)


def poly_powmod(f: FieldSpec, base, exp: int, mod):
    result = [1]
    base = poly_mod(f, base, mod)
    while exp:
        if exp & 1:
            result = poly_mod(f, poly_mul(f, result, base), mod)
        exp >>= 1
        if exp:
            base = poly_mod(f, poly_mul(f, base, base), mod)
    return result


def _frobenius(f: FieldSpec, p, mod):
    """p^q mod ``mod`` by e squarings."""
    for _ in range(f.e):
        p = poly_mod(f, poly_mul(f, p, p), mod)
    return p


def _equal_degree_split(f: FieldSpec, g, d: int, rng: random.Random):
    """One irreducible factor of degree d of the squarefree ``g``."""
    while len(g) - 1 > d:
        n = len(g) - 1
        a = _trim([rng.randrange(f.q) for _ in range(n)])
        if len(a) < 2:
            continue
        # absolute trace map to F_2: a + a^2 + ... + a^(2^(e d - 1))
        t, acc = a, list(a)
        for _ in range(f.e * d - 1):
            t = poly_mod(f, poly_mul(f, t, t), g)
            acc = poly_add(acc, t)
        h = poly_gcd(f, acc, g)
        if 0 < len(h) - 1 < n:
            g = h if len(h) - 1 <= n // 2 else poly_divmod(f, g, h)[0]
            g = poly_monic(f, g)
    return g


def smallest_factor(f: FieldSpec, p, rng: random.Random):
    """An irreducible factor of smallest degree of the nonconstant polynomial ``p``."""
    p = poly_monic(f, p)
    x = [0, 1]
    h = x
    d = 0
    while True:
        d += 1
        if 2 * d > len(p) - 1:
            # no factor of degree <= deg/2, so p itself is irreducible
            return p
        h = _frobenius(f, h, p)
        g = poly_gcd(f, poly_add(h, x), p)
        if len(g) > 1:
            return _equal_degree_split(f, g, d, rng)


def charpoly(f: FieldSpec, a: np.ndarray) -> list[int]:
    """Characteristic polynomial via reduction to Hessenberg form."""
    n = a.shape[0]
    h = a.copy()
    for m in range(1, n - 1):
        col = h[m:, m - 1]
        nz = np.flatnonzero(col)
        if nz.size == 0:
            continue
        i = m + nz[0]
        if i != m:
            h[[i, m]] = h[[m, i]]
            h[:, [i, m]] = h[:, [m, i]]
        t_inv = f.inv(int(h[m, m - 1]))
        u = f.vmul(t_inv, h[m + 1:, m - 1])
        if u.any():
            h[m + 1:] ^= f.vmul(u[:, None], h[m][None, :])
            h[:, m] ^= la.matmul(f, h[:, m + 1:], u[:, None])[:, 0]
    # p_k = (x + h_kk) p_{k-1} + sum_{i<k} h_ik prod_{j=i+1..k} h_{j,j-1} p_{i-1}
    polys = [np.zeros(n + 1, dtype=np.int64)]
    polys[0][0] = 1
    for k in range(n):
        pk = np.zeros(n + 1, dtype=np.int64)
        prev = polys[k]
        pk[1:] = prev[:-1]
        pk ^= f.vmul(int(h[k, k]), prev)
        prod = 1
        for i in range(k - 1, -1, -1):
            prod = f.mul(prod, int(h[i + 1, i]))
            if prod == 0:
                break
            c = f.mul(int(h[i, k]), prod)
            if c:
                pk ^= f.vmul(c, polys[i])
        polys.append(pk)
    return _trim([int(x) for x in polys[n]])


def poly_eval_matrix(f: FieldSpec, p, a: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    out = la.zeros(n, n)
    for c in reversed(p):
        out = la.matmul(f, out, a)
        out[np.diag_indices(n)] ^= c
    return out


# -- splitting -----------------------------------------------------------------

class _AlgebraSampler:
    """Random elements of the image of KG, Holt-Rees style."""

    def __init__(self, rep: Rep, rng: random.Random):
        self.f = rep.field
        self.rng = rng
        self.pool = [m for m in rep.mats]
        self.n = rep.dim

    def sample(self) -> np.ndarray:
        f, rng = self.f, self.rng
        if len(self.pool) >= 2:
            i, j = rng.randrange(len(self.pool)), rng.randrange(len(self.pool))
            self.pool.append(la.matmul(f, self.pool[i], self.pool[j]))
            if len(self.pool) > 12:
                self.pool.pop(0)
        out = la.zeros(self.n, self.n)
        for m in self.pool:
            c = rng.randrange(f.q)
            if c:
                out ^= f.vmul(c, m)
        c = rng.randrange(f.q)
        out[np.diag_indices(self.n)] ^= c
        return out


def _random_vector(f: FieldSpec, basis: np.ndarray, rng: random.Random) -> np.ndarray:
    while True:
        c = np.array([rng.randrange(f.q) for _ in range(basis.shape[0])], dtype=np.int64)
        if c.any():
            return la.matmul(f, c[None, :], basis)


def find_split(rep: Rep, rng: random.Random, budget: int = DEFAULT_BUDGET) -> np.ndarray | None:
    """Echelon basis of a proper nonzero submodule, or ``None`` if ``rep`` is simple."""
    n, f = rep.dim, rep.field
    if n <= 1:
        return None
    mats = list(rep.mats)
    tmats = [m.T.copy() for m in mats]
    sampler = _AlgebraSampler(rep, rng)
    for _ in range(budget):
        a = sampler.sample()
        cp = charpoly(f, a)
        p = smallest_factor(f, cp, rng)
        pa = poly_eval_matrix(f, p, a)
        null = la.left_kernel(f, pa)
        if null.shape[0] == 0:
            continue
        v = _random_vector(f, null, rng)
        sub = la.spin(f, v, mats)
        if sub.shape[0] < n:
            return sub
        tnull = la.left_kernel(f, pa.T.copy())
        w = _random_vector(f, tnull, rng)
        dsub = la.spin(f, w, tmats)
        if dsub.shape[0] < n:
            # annihilator of a proper submodule of the dual
            return la.echelon(f, la.right_kernel(f, dsub))
        if null.shape[0] == len(p) - 1:
            return None
    raise MeataxeError(f"no Norton certificate after {budget} random algebra elements")


def chop(rep: Rep, seed: int = DEFAULT_SEED, budget: int = DEFAULT_BUDGET) -> list[Rep]:
    """Composition factors of ``rep`` (with repetition), in discovery order."""
    rng = random.Random(seed)
    out: list[Rep] = []
    stack = [rep]
    while stack:
        v = stack.pop()
        if v.dim == 0:
            continue
        sub = find_split(v, rng, budget)
        if sub is None:
            out.append(v)
            continue
        # quotient pushed first so that the submodule is processed first
        stack.append(quotient_rep(v, sub))
        stack.append(sub_rep(v, sub))
    return out
