"""Random equivariant forms for property checks and the spanning test."""

from __future__ import annotations

import numpy as np

from . import exactla as la
from .equiforms import EquivForm, base_change, eq_make, orth_sum, zero_form
from .gfield import FieldSpec
from .grouprep import PermGroup, Rep, direct_sum, dual_rep, invariant_quadratic, permutation_rep, regular_rep
from .quadspace import QuadForm, is_nondegenerate

POOL_REGULAR_MAX = 8
POOL_PERM_MAX = 8


def module_pool(g: PermGroup, f: FieldSpec) -> list[Rep]:
    """Small modules used as building blocks: the simples plus permutation
    and regular modules when they are small."""
    from .grouprep import simple_catalog

    pool = [s.rep for s in simple_catalog(g, f).simples]
    if g.degree <= POOL_PERM_MAX:
        pool.append(permutation_rep(g, f))
    if g.order <= POOL_REGULAR_MAX:
        pool.append(regular_rep(g, f))
    return pool


def random_invertible(f: FieldSpec, n: int, rng: np.random.Generator) -> np.ndarray:
    while True:
        p = f.random(rng, (n, n))
        if la.is_invertible(f, p):
            return p


def random_base_change(x: EquivForm, rng: np.random.Generator) -> EquivForm:
    if x.dim == 0:
        return x
    return base_change(x, random_invertible(x.field, x.dim, rng))


def hyperbolic_module(m: Rep) -> EquivForm:
    """H(M) = M + M^* with Q(x, xi) = <x, xi>; always metabolic."""
    f, n = m.field, m.dim
    mats = [la.block_diag(a, b) for a, b in zip(m.mats, dual_rep(m).mats)]
    upper = la.zeros(2 * n, 2 * n)
    upper[:n, n:] = la.identity(n)
    return EquivForm(Rep(m.group, f, mats, check=False), QuadForm(f, upper))


def random_metabolic(g: PermGroup, f: FieldSpec, rng: np.random.Generator, max_dim: int,
                     extra: list[EquivForm] | None = None) -> EquivForm:
    """A random metabolic form: H(M) for a pooled M, or y + y for a supplied y."""
    options = [hyperbolic_module(m) for m in module_pool(g, f) if 2 * m.dim <= max_dim]
    options += [orth_sum(y, y) for y in (extra or []) if 2 * y.dim <= max_dim]
    if not options:
        return zero_form(g, f)
    return random_base_change(options[rng.integers(len(options))], rng)


def random_invariant_form(g: PermGroup, f: FieldSpec, rng: np.random.Generator, max_dim: int,
                          tries: int = 20) -> EquivForm | None:
    """A random non-degenerate invariant form on a random sum of pooled modules."""
    pool = [m for m in module_pool(g, f) if m.dim <= max_dim]
    for _ in range(tries):
        parts, dim = [], 0
        while True:
            fits = [m for m in pool if dim + m.dim <= max_dim]
            if not fits or (parts and rng.random() < 0.4):
                break
            m = fits[rng.integers(len(fits))]
            parts.append(m)
            dim += m.dim
        if not parts:
            return None
        v = direct_sum(*parts)
        basis = invariant_quadratic(v)
        if basis.shape[0] == 0:
            continue
        coeffs = f.random(rng, basis.shape[0])
        if not coeffs.any():
            continue
        u = np.bitwise_xor.reduce(f.vmul(coeffs[:, None, None], basis), axis=0)
        q = QuadForm(f, u)
        if is_nondegenerate(q):
            return EquivForm(v, q)
    return None


def random_class_form(desc, rng: np.random.Generator, max_dim: int = 12) -> EquivForm:
    """A random form: a subset of generators (plus R^-(tau) now and then),
    padded by random metabolics and random invariant forms, in a random basis."""
    from .generators import MINUS, gen_rtau

    g, f = desc.group, desc.field
    pieces = [gen.form for gen in desc.generators if rng.random() < 0.5]
    if desc.taus and rng.random() < 0.3:
        tau = desc.taus[rng.integers(len(desc.taus))]
        pieces.append(gen_rtau(g, f, tau, MINUS))
    dim = sum(p.dim for p in pieces)
    if rng.random() < 0.5:
        y = random_invariant_form(g, f, rng, max(max_dim - dim, 0))
        if y is not None:
            pieces.append(y)
            dim += y.dim
    room = max_dim - dim
    if room >= 2 and rng.random() < 0.7:
        pieces.append(random_metabolic(g, f, rng, room, extra=[gen.form for gen in desc.generators]))
    x = orth_sum(*pieces) if pieces else zero_form(g, f)
    return random_base_change(x, rng)


def validated(x: EquivForm) -> EquivForm:
    """Re-run the full validation of ``eq_make`` on an assembled form."""
    return eq_make(Rep(x.group, x.field, x.rep.mats), x.form)
