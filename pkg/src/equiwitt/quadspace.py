"""Quadratic spaces over GF(2^e) without group action.

A quadratic form is stored by its upper-triangular coefficient matrix
``U``: Q(v) = sum_{i<=j} U_ij v_i v_j = v U v^T.  In characteristic 2 the
form is not recoverable from its polarization, so ``U`` is the source of
truth and the polarization ``U + U^T`` is derived.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import exactla as la
from .gfield import FieldSpec, artin_schreier_solve
from .grouprep.rep import fold

ZERO = "zero"
NORM_FORM = "norm_form"


class QuadFormError(ValueError):
    pass


class DegenerateFormError(QuadFormError):
    pass


class NotIsometryError(QuadFormError):
    pass


@dataclass(frozen=True, eq=False)
class QuadForm:
    field: FieldSpec
    upper: np.ndarray

    def __post_init__(self):
        u = np.asarray(self.upper, dtype=np.int64)
        if u.ndim != 2 or u.shape[0] != u.shape[1]:
            raise QuadFormError(f"quadratic form needs a square coefficient matrix, got {u.shape}")
        if np.tril(u, -1).any():
            raise QuadFormError("entries below the diagonal must be zero")
        la.check_entries(self.field, u)
        object.__setattr__(self, "upper", u)

    @property
    def dim(self) -> int:
        return self.upper.shape[0]

    def __call__(self, v) -> int:
        v = np.asarray(v, dtype=np.int64).reshape(1, -1)
        return int(values(self.field, self.upper, v)[0])

    def values(self, vecs: np.ndarray) -> np.ndarray:
        return values(self.field, self.upper, vecs)

    def restrict(self, basis: np.ndarray) -> "QuadForm":
        """The form pulled back along the rows of ``basis``."""
        f = self.field
        return QuadForm(f, fold(la.matmul(f, la.matmul(f, basis, self.upper), basis.T.copy())))

    def __eq__(self, other):
        return (isinstance(other, QuadForm) and self.field == other.field
                and np.array_equal(self.upper, other.upper))

    __hash__ = None

    def to_dict(self) -> dict:
        return {"field": self.field.to_dict(), "dim": self.dim, "upper": self.upper.tolist()}

    @classmethod
    def from_dict(cls, d: dict, field: FieldSpec | None = None) -> "QuadForm":
        f = field or FieldSpec.from_dict(d["field"])
        n = int(d["dim"])
        return cls(f, la.as_mat(d["upper"], cols=n).reshape(n, n))


def values(f: FieldSpec, upper: np.ndarray, vecs: np.ndarray) -> np.ndarray:
    """Q evaluated on each row of ``vecs``."""
    if vecs.shape[1] == 0:
        return np.zeros(vecs.shape[0], dtype=np.int64)
    vu = la.matmul(f, vecs, upper)
    return np.bitwise_xor.reduce(f.vmul(vu, vecs), axis=1)


def orth_sum(*forms: QuadForm) -> QuadForm:
    return QuadForm(forms[0].field, la.block_diag(*(q.upper for q in forms)))


def polarize(q: QuadForm) -> np.ndarray:
    """Gram matrix of B(v, w) = Q(v + w) - Q(v) - Q(w); alternating in characteristic 2."""
    return q.upper ^ q.upper.T


def radical(q: QuadForm) -> np.ndarray:
    return la.left_kernel(q.field, polarize(q))


def is_nondegenerate(q: QuadForm) -> bool:
    return radical(q).shape[0] == 0


def norm_form(f: FieldSpec) -> QuadForm:
    """The anisotropic plane <f, e>: Q(f) = alpha, Q(e) = 1, B(e, f) = 1."""
    return QuadForm(f, np.array([[f.alpha, 1], [0, 1]], dtype=np.int64))


def hyperbolic_plane(f: FieldSpec) -> QuadForm:
    return QuadForm(f, np.array([[0, 1], [0, 0]], dtype=np.int64))


def bilinear(f: FieldSpec, b: np.ndarray, x: np.ndarray, y: np.ndarray) -> int:
    return int(la.matmul(f, la.matmul(f, x.reshape(1, -1), b), y.reshape(-1, 1))[0, 0])


def symplectic_basis(f: FieldSpec, b: np.ndarray) -> np.ndarray:
    """Rows ``(w_1..w_m, v_1..v_m)`` with B(w_i, v_j) = delta_ij and all
    other pairings zero."""
    n = b.shape[0]
    if b.shape != (n, n) or not np.array_equal(b, b.T) or np.diag(b).any():
        raise QuadFormError("symplectic_basis needs an alternating matrix")
    if n % 2:
        raise DegenerateFormError("alternating forms of odd dimension are degenerate")
    rest = la.identity(n)
    ws, vs = [], []
    while rest.shape[0]:
        x = rest[0]
        pair = la.matmul(f, la.matmul(f, x[None, :], b), rest.T.copy())[0]
        nz = np.flatnonzero(pair)
        if nz.size == 0:
            raise DegenerateFormError("bilinear form is degenerate")
        y = f.vmul(f.inv(int(pair[nz[0]])), rest[nz[0]])
        ws.append(x)
        vs.append(y)
        bx = la.matmul(f, rest, la.matmul(f, b, x[:, None]))[:, 0]
        by = la.matmul(f, rest, la.matmul(f, b, y[:, None]))[:, 0]
        rest = rest ^ f.vmul(by[:, None], x[None, :]) ^ f.vmul(bx[:, None], y[None, :])
        rest = la.echelon(f, rest)
    return np.array(ws + vs, dtype=np.int64).reshape(n, n)


def arf(q: QuadForm) -> int:
    """Arf invariant sum_i Q(w_i) Q(v_i) over a symplectic basis (as a field element)."""
    f = q.field
    sb = symplectic_basis(f, polarize(q))
    m = q.dim // 2
    qv = q.values(sb)
    out = 0
    for i in range(m):
        out ^= f.mul(int(qv[i]), int(qv[m + i]))
    return out


def find_isotropic_vector(q: QuadForm) -> np.ndarray | None:
    """A nonzero v with Q(v) = 0, or ``None`` if Q is anisotropic.

    Works for degenerate forms too.  Two independent orthogonal anisotropic
    vectors x, y always give the isotropic x + sqrt(Q(x)/Q(y)) y, so only a
    non-degenerate plane needs the Artin-Schreier criterion.
    """
    f, n = q.field, q.dim
    if n == 0:
        return None
    diag = np.diag(q.upper)
    zeros_ = np.flatnonzero(diag == 0)
    if zeros_.size:
        return la.identity(n)[zeros_[0]]
    b = polarize(q)
    x = la.identity(n)[0]
    perp = la.left_kernel(f, b[:, [0]])
    rest = la.reduce_rows(f, x[None, :], perp)
    nz = [r for r in rest if r.any()]
    if nz:
        y = nz[0]
        qx, qy = int(diag[0]), q(y)
        if qy == 0:
            return y
        lam = f.sqrt(f.div(qx, qy))
        return x ^ f.vmul(lam, y)
    if n == 1:
        return None
    # non-degenerate plane spanned by e_0, e_1
    y = f.vmul(f.inv(int(b[0, 1])), la.identity(n)[1])
    qx, qy = int(diag[0]), q(y)
    sol = artin_schreier_solve(f, f.mul(qx, qy))
    if sol is None:
        return None
    a = f.div(sol[0], qx)
    return f.vmul(a, x) ^ y


@dataclass
class WittSplit:
    hyperbolic_count: int
    residue: str
    witness: np.ndarray

    def to_dict(self) -> dict:
        return {"hyperbolic_count": self.hyperbolic_count, "residue": self.residue,
                "witness": self.witness.tolist()}


def hyperbolic_partner(q: QuadForm, x: np.ndarray, space: np.ndarray) -> np.ndarray:
    """y in ``space`` with Q(y) = 0 and B(x, y) = 1, for isotropic x."""
    f = q.field
    b = polarize(q)
    pair = la.matmul(f, la.matmul(f, x[None, :], b), space.T.copy())[0]
    nz = np.flatnonzero(pair)
    if nz.size == 0:
        raise DegenerateFormError("isotropic vector lies in the radical")
    y = f.vmul(f.inv(int(pair[nz[0]])), space[nz[0]])
    return y ^ f.vmul(q(y), x)


def witt_decompose(q: QuadForm) -> WittSplit:
    """Split a non-degenerate space into hyperbolic planes plus a residue
    that is zero or N(K).

    The residue is decided by whether the Arf invariant lies in {x^2 + x};
    the witness rows ``(e_1, f_1, ..., e_m, f_m[, f, e])`` realise the
    split form explicitly.
    """
    f = q.field
    if not is_nondegenerate(q):
        raise DegenerateFormError("witt_decompose needs a non-degenerate form")
    residue = ZERO if f.in_wp(arf(q)) else NORM_FORM
    b = polarize(q)
    space = la.identity(q.dim)
    rows = []
    while space.shape[0]:
        sub = q.restrict(space)
        c = find_isotropic_vector(sub)
        if c is None:
            break
        x = la.matmul(f, c[None, :], space)[0]
        y = hyperbolic_partner(q, x, space)
        rows.extend([x, y])
        plane = np.stack([x, y])
        # orthogonal complement of the plane inside the current space
        coeffs = la.left_kernel(f, la.matmul(f, la.matmul(f, space, b), plane.T.copy()))
        space = la.echelon(f, la.matmul(f, coeffs, space)) if coeffs.shape[0] else la.zeros(0, q.dim)
    m = len(rows) // 2
    if space.shape[0]:
        if space.shape[0] != 2:
            raise AssertionError("anisotropic residue of dimension other than 2")
        rows.extend(_normalise_norm_plane(q, space))
    found = NORM_FORM if space.shape[0] else ZERO
    if found != residue:
        raise AssertionError("Arf invariant and isotropic peeling disagree")
    witness = np.array(rows, dtype=np.int64).reshape(len(rows), q.dim)
    return WittSplit(hyperbolic_count=m, residue=residue, witness=witness)


def _normalise_norm_plane(q: QuadForm, plane: np.ndarray) -> list[np.ndarray]:
    """Basis (f, e) of an anisotropic plane with Q(f) = alpha, Q(e) = 1, B(e, f) = 1."""
    f = q.field
    e0 = plane[0]
    e = f.vmul(f.inv(f.sqrt(q(e0))), e0)
    y = hyperbolic_partner_any(q, e, plane)
    # Q(y + a e) = Q(y) + a + a^2; choose a to land on alpha
    sol = artin_schreier_solve(f, q(y) ^ f.alpha)
    fv = y ^ f.vmul(sol[0], e)
    return [fv, e]


def hyperbolic_partner_any(q: QuadForm, x: np.ndarray, space: np.ndarray) -> np.ndarray:
    f = q.field
    b = polarize(q)
    pair = la.matmul(f, la.matmul(f, x[None, :], b), space.T.copy())[0]
    nz = np.flatnonzero(pair)
    return f.vmul(f.inv(int(pair[nz[0]])), space[nz[0]])


def is_isometry(g: np.ndarray, q: QuadForm) -> bool:
    """Q(v g) = Q(v) for all v; checked as fold(g U g^T) = U."""
    f = q.field
    return np.array_equal(fold(la.matmul(f, la.matmul(f, g, q.upper), g.T.copy())), q.upper)


def dickson(g: np.ndarray, q: QuadForm) -> int:
    """rank(g - 1) mod 2, i.e. 0 for D(g) = +1 and 1 for D(g) = -1."""
    if not is_isometry(g, q):
        raise NotIsometryError("matrix does not preserve the quadratic form")
    return la.rank(q.field, g ^ la.identity(q.dim)) & 1


def dickson_lagrangian(g: np.ndarray, q: QuadForm, w: np.ndarray) -> int:
    """dim(W / (W cap W g)) mod 2 for a maximal isotropic W = W^perp."""
    f = q.field
    if not is_isometry(g, q):
        raise NotIsometryError("matrix does not preserve the quadratic form")
    w = la.echelon(f, w)
    if 2 * w.shape[0] != q.dim or q.restrict(w).upper.any():
        raise QuadFormError("W must be isotropic with W = W^perp")
    wg = la.echelon(f, la.matmul(f, w, g))
    return (w.shape[0] - la.intersect(f, w, wg).shape[0]) & 1
