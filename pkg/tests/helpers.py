"""Shared constructors for tests."""

from __future__ import annotations

import numpy as np

from equiwitt.equiforms import eq_make
from equiwitt.gfield import field_make
from equiwitt.grouprep import (
    Rep,
    alternating_group_5,
    cyclic_group,
    dihedral_group,
    quaternion_group,
    symmetric_group,
    trivial_rep,
)
from equiwitt import exactla as la
from equiwitt.quadspace import QuadForm, is_nondegenerate, hyperbolic_plane, norm_form, orth_sum, polarize

GF2 = field_make(1)
GF4 = field_make(2)

# (name, group, e, expected rank) for the instance table
TABLE = [
    ("C2", cyclic_group(2), 1, 2),
    ("C3", cyclic_group(3), 1, 2),
    ("C3", cyclic_group(3), 2, 1),
    ("S3", symmetric_group(3), 1, 3),
    ("Q8", quaternion_group(), 1, 3),
    ("D8", dihedral_group(4), 1, 3),
]
A5 = alternating_group_5()

SHEAR = np.array([[1, 1], [0, 1]], dtype=np.int64)


def trivial_norm(g, f):
    return eq_make(trivial_rep(g, f, 2), norm_form(f))


def trivial_hyperbolic(g, f):
    return eq_make(trivial_rep(g, f, 2), hyperbolic_plane(f))


def r_plus(g, f, tau=None):
    tau = tau or [1] * g.ngens
    mats = [SHEAR if t else np.eye(2, dtype=np.int64) for t in tau]
    return eq_make(Rep(g, f, mats), QuadForm(f, np.array([[0, 1], [0, 1]])))


def r_minus(g, f, tau=None):
    tau = tau or [1] * g.ngens
    mats = [SHEAR if t else np.eye(2, dtype=np.int64) for t in tau]
    return eq_make(Rep(g, f, mats), QuadForm(f, np.array([[f.alpha, 1], [0, 1]])))


def split_space(f, m):
    return orth_sum(*([hyperbolic_plane(f)] * m))


def random_nondegenerate(f, n, rng):
    while True:
        q = QuadForm(f, np.triu(f.random(rng, (n, n))))
        if is_nondegenerate(q):
            return q


def reflection(q, a):
    """Orthogonal transvection v -> v + B(v, a) Q(a)^-1 a for anisotropic a."""
    f = q.field
    b = polarize(q)
    ba = la.matmul(f, b, a[:, None])  # column B(e_i, a)
    coef = f.vmul(f.inv(q(a)), ba)
    return la.identity(q.dim) ^ f.vmul(coef, a[None, :])


def random_isometry(q, rng, k):
    """A product of k reflections, so its Dickson invariant is k mod 2."""
    f = q.field
    g = la.identity(q.dim)
    done = 0
    while done < k:
        a = f.random(rng, q.dim)
        if q(a) == 0:
            continue
        g = la.matmul(f, g, reflection(q, a))
        done += 1
    return g
