"""Generator families of WQ(K, G).

These are N(K) with trivial action, the simple orthogonal forms (S, Q_S),
the two-dimensional modules R+(tau) and R-(tau), and the quadratic
envelope R+(W) of a multiplicity-free symplectic module W.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import exactla as la
from .equiforms import EquivForm, eq_make
from .gfield import FieldSpec, artin_schreier_solve
from .grouprep import ORTHOGONAL, SYMPLECTIC, PermGroup, Rep, SimpleClass, direct_sum, trivial_rep
from .grouprep.rep import combinations
from .quadspace import QuadForm, dickson, norm_form, symplectic_basis

PLUS = "plus"
MINUS = "minus"


class GeneratorError(ValueError):
    pass


@dataclass
class Generator:
    label: str
    form: EquivForm

    def to_dict(self) -> dict:
        d = self.form.to_dict()
        d["label"] = self.label
        return d


def gen_norm(f: FieldSpec, g: PermGroup) -> EquivForm:
    return eq_make(trivial_rep(g, f, 2), norm_form(f))


def gen_orthogonal_simple(s: SimpleClass) -> EquivForm:
    """(S, Q_S) with Q_S the first invariant form, scaled to a leading 1."""
    if s.mtype != ORTHOGONAL:
        raise GeneratorError(f"class {s.id} has type {s.mtype}, not orthogonal")
    f = s.rep.field
    u = s.inv_quadratic[0]
    lead = int(u.reshape(-1)[np.flatnonzero(u.reshape(-1))[0]])
    u = f.vmul(f.inv(lead), u)
    return eq_make(s.rep, QuadForm(f, u))


def gen_rtau(g: PermGroup, f: FieldSpec, tau, sign: str = PLUS) -> EquivForm:
    """R+(tau) or R-(tau) on the basis (f, e).

    Q(e) = 1, B(f, e) = 1 and Q(f) is 0 or alpha; a generator with
    tau = 1 sends f to f + e.
    """
    tau = [int(t) & 1 for t in tau]
    if len(tau) != g.ngens:
        raise GeneratorError(f"tau needs {g.ngens} generator images, got {len(tau)}")
    if not any(tau):
        raise GeneratorError("tau must be a surjective character")
    if sign not in (PLUS, MINUS):
        raise GeneratorError(f"sign must be {PLUS!r} or {MINUS!r}")
    shear = np.array([[1, 1], [0, 1]], dtype=np.int64)
    mats = [shear if t else la.identity(2) for t in tau]
    qf = 0 if sign == PLUS else f.alpha
    return eq_make(Rep(g, f, mats), QuadForm(f, np.array([[qf, 1], [0, 1]], dtype=np.int64)))


def _alternating_form(s: SimpleClass) -> np.ndarray:
    f = s.rep.field
    for b in s.inv_bilinear:
        if la.rank(f, b) == s.dim:
            return b
    for b in combinations(f, s.inv_bilinear, 1 << 12):
        if la.rank(f, b) == s.dim:
            return b
    raise GeneratorError(f"class {s.id} has no non-degenerate invariant bilinear form")


class Envelope:
    """Lifts Sp(W) into the orthogonal group of the (2m+2)-dim split space.

    Basis order is (f, w_1..w_m, v_1..v_m, e) with Q(f) = 0, Q(e) = 1,
    B(e, f) = 1 and hyperbolic pairs (w_i, v_i).
    """

    def __init__(self, symplectics: list[SimpleClass]):
        if not symplectics:
            raise GeneratorError("the envelope needs at least one symplectic class")
        ids = [s.id for s in symplectics]
        if len(set(ids)) != len(ids):
            raise GeneratorError("symplectic classes must be pairwise distinct")
        for s in symplectics:
            if s.mtype != SYMPLECTIC:
                raise GeneratorError(f"class {s.id} has type {s.mtype}, not symplectic")
        self.classes = list(symplectics)
        self.w_rep = direct_sum(*(s.rep for s in symplectics))
        self.field = f = self.w_rep.field
        self.bilinear = la.block_diag(*(_alternating_form(s) for s in symplectics))
        self.basis = symplectic_basis(f, self.bilinear)
        self.basis_inv = la.inverse(f, self.basis)
        self.m = self.w_rep.dim // 2
        n = 2 * self.m + 2
        u = la.zeros(n, n)
        u[0, n - 1] = 1
        u[n - 1, n - 1] = 1
        for i in range(self.m):
            u[1 + i, 1 + self.m + i] = 1
        self.form = QuadForm(f, u)

    def symplectic_matrix(self, w: np.ndarray) -> np.ndarray:
        """A matrix of W rewritten in the symplectic basis."""
        f = self.field
        return la.matmul(f, la.matmul(f, self.basis, w), self.basis_inv)

    def lift(self, w: np.ndarray) -> np.ndarray:
        """The unique isometry with Dickson invariant 0 fixing e and inducing w."""
        f, m = self.field, self.m
        sp = self.symplectic_matrix(w)
        a_, b_ = sp[:m, :m], sp[:m, m:]
        c_, d_ = sp[m:, :m], sp[m:, m:]
        c = np.array([f.sqrt(int(x)) for x in np.diag(la.matmul(f, a_, b_.T.copy()))], dtype=np.int64)
        d = np.array([f.sqrt(int(x)) for x in np.diag(la.matmul(f, c_, d_.T.copy()))], dtype=np.int64)
        col = la.matmul(f, la.inverse(f, sp), np.concatenate([c, d])[:, None])[:, 0]
        b, a = col[:m], col[m:]
        ab = int(np.bitwise_xor.reduce(f.vmul(a, b))) if m else 0
        sol = artin_schreier_solve(f, ab)
        if sol is None:
            raise AssertionError("a.b^T is not of the form x^2 + x; the matrix is not symplectic")
        n = 2 * m + 2
        g0 = la.identity(n)
        g0[0, 1:1 + m] = a
        g0[0, 1 + m:1 + 2 * m] = b
        g0[0, n - 1] = sol[0]
        g0[1:1 + 2 * m, 1:1 + 2 * m] = sp
        g0[1:1 + m, n - 1] = c
        g0[1 + m:1 + 2 * m, n - 1] = d
        if dickson(g0, self.form):
            # g0 h with h: f -> f + e
            g0[0, n - 1] ^= 1
        return g0

    def equiv_form(self) -> EquivForm:
        mats = [self.lift(w) for w in self.w_rep.mats]
        return eq_make(Rep(self.w_rep.group, self.field, mats), self.form)


def gen_envelope(symplectics: list[SimpleClass]) -> EquivForm:
    return Envelope(symplectics).equiv_form()


def envelope_label(symplectics: list[SimpleClass]) -> str:
    return "Env:" + ",".join(str(s.id) for s in symplectics)
