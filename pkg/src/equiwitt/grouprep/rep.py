"""Right KG-modules given by one matrix per group generator."""

from __future__ import annotations

import itertools

import numpy as np

from .. import exactla as la
from ..gfield import FieldSpec
from .perm import CapExceeded, PermGroup

MAX_DIM = 256


class RepError(ValueError):
    pass


class Rep:
    """A right KG-module: ``v . g = v @ mats[k]`` for generator ``k``."""

    def __init__(self, group: PermGroup, field: FieldSpec, mats, check: bool = True):
        self.group = group
        self.field = field
        self.mats = tuple(np.asarray(m, dtype=np.int64) for m in mats)
        if len(self.mats) != group.ngens:
            raise RepError(f"need {group.ngens} generator matrices, got {len(self.mats)}")
        dims = {m.shape for m in self.mats}
        if len(dims) > 1:
            raise RepError("generator matrices have different shapes")
        self.dim = self.mats[0].shape[0] if self.mats else 0
        if self.dim > MAX_DIM:
            raise CapExceeded(f"module dimension {self.dim} exceeds the cap of {MAX_DIM}")
        if check:
            self.validate()

    def validate(self) -> None:
        f = self.field
        for m in self.mats:
            if m.shape != (self.dim, self.dim):
                raise RepError(f"generator matrix has shape {m.shape}, expected square")
            la.check_entries(f, m)
            if not la.is_invertible(f, m):
                raise RepError("generator matrix is not invertible")
        # the assignment must extend to a homomorphism: check every Cayley edge
        g = self.group
        elem = [None] * g.order
        elem[0] = la.identity(self.dim)
        for i in range(g.order):
            for k, m in enumerate(self.mats):
                j = g.gen_table[i, k]
                prod = la.matmul(f, elem[i], m)
                if elem[j] is None:
                    elem[j] = prod
                elif not np.array_equal(elem[j], prod):
                    raise RepError("generator matrices do not satisfy the group relations")
        self.__dict__["_elements"] = elem

    def element_matrices(self) -> list[np.ndarray]:
        """Matrices of all group elements, in the group's BFS order."""
        if "_elements" not in self.__dict__:
            g, f = self.group, self.field
            elem = [None] * g.order
            elem[0] = la.identity(self.dim)
            for j in range(1, g.order):
                i, k = g.parent[j]
                elem[j] = la.matmul(f, elem[i], self.mats[k])
            self.__dict__["_elements"] = elem
        return self.__dict__["_elements"]

    def element_matrix(self, i: int) -> np.ndarray:
        m = la.identity(self.dim)
        for k in self.group.words[i]:
            m = la.matmul(self.field, m, self.mats[k])
        return m

    def is_trivial(self) -> bool:
        return all(np.array_equal(m, la.identity(self.dim)) for m in self.mats)

    def same_context(self, other: "Rep") -> bool:
        return self.group == other.group and self.field == other.field

    def to_dict(self) -> dict:
        return {"field": self.field.to_dict(), "dim": self.dim, "mats": [m.tolist() for m in self.mats]}

    def __repr__(self):
        return f"Rep(dim={self.dim}, field=GF({self.field.q}), group order {self.group.order})"


def rep_from_dict(d: dict, group: PermGroup, field: FieldSpec | None = None) -> Rep:
    from ..gfield import FieldSpec as _FS

    f = field or _FS.from_dict(d["field"])
    n = int(d["dim"])
    mats = [la.as_mat(m, cols=n).reshape(n, n) for m in d["mats"]]
    return Rep(group, f, mats)


def trivial_rep(g: PermGroup, f: FieldSpec, dim: int = 1) -> Rep:
    return Rep(g, f, [la.identity(dim)] * g.ngens, check=False)


def regular_rep(g: PermGroup, f: FieldSpec) -> Rep:
    """Right regular module: basis e_x with e_x . g = e_{xg}."""
    n = g.order
    if n > MAX_DIM:
        raise CapExceeded(f"regular module of dimension {n} exceeds the cap of {MAX_DIM}")
    mats = []
    for k in range(g.ngens):
        m = la.zeros(n, n)
        m[np.arange(n), g.gen_table[:, k]] = 1
        mats.append(m)
    return Rep(g, f, mats, check=False)


def permutation_rep(g: PermGroup, f: FieldSpec) -> Rep:
    """The natural permutation module on the points moved by G."""
    n = g.degree
    mats = []
    for perm in g.gens:
        m = la.zeros(n, n)
        m[np.arange(n), list(perm)] = 1
        mats.append(m)
    return Rep(g, f, mats, check=False)


def dual_rep(v: Rep) -> Rep:
    """The contragredient module: each generator acts by its inverse transpose."""
    f = v.field
    return Rep(v.group, f, [la.inverse(f, m).T.copy() for m in v.mats], check=False)


def direct_sum(*reps: Rep) -> Rep:
    g, f = reps[0].group, reps[0].field
    for r in reps[1:]:
        if not r.same_context(reps[0]):
            raise RepError("direct sum of modules over different groups or fields")
    mats = [la.block_diag(*(r.mats[k] for r in reps)) for k in range(g.ngens)]
    return Rep(g, f, mats, check=False)


def conjugate_rep(v: Rep, p: np.ndarray) -> Rep:
    """Same module in the basis given by the rows of ``p`` (old coordinates)."""
    f = v.field
    pinv = la.inverse(f, p)
    return Rep(v.group, f, [la.matmul(f, la.matmul(f, p, m), pinv) for m in v.mats], check=False)


def is_submodule(v: Rep, basis: np.ndarray) -> bool:
    f = v.field
    return all(la.in_span(f, basis, la.matmul(f, basis, m)) for m in v.mats)


def sub_rep(v: Rep, basis: np.ndarray) -> Rep:
    """Action on an invariant subspace given by an echelon basis."""
    f = v.field
    mats = [la.coords_in(basis, la.matmul(f, basis, m)) for m in v.mats]
    return Rep(v.group, f, mats, check=False)


def quotient_rep(v: Rep, sub: np.ndarray) -> Rep:
    f = v.field
    lift, project = la.quotient_basis(f, sub, v.dim)
    mats = [la.matmul(f, la.matmul(f, lift, m), project) for m in v.mats]
    return Rep(v.group, f, mats, check=False)


def hom_space(a: Rep, b: Rep) -> np.ndarray:
    """Basis of intertwiners ``X`` with ``a(g) X = X b(g)``; shape ``(k, dim a, dim b)``."""
    if not a.same_context(b):
        raise RepError("hom_space needs modules over the same group and field")
    f = a.field
    da, db = a.dim, b.dim
    if da == 0 or db == 0:
        return np.zeros((0, da, db), dtype=np.int64)
    blocks = []
    for ma, mb in zip(a.mats, b.mats):
        blocks.append(la.kron(f, ma, la.identity(db)) ^ la.kron(f, la.identity(da), mb.T.copy()))
    if not blocks:
        return la.identity(da * db).reshape(-1, da, db)
    system = np.concatenate(blocks, axis=0)
    ker = la.right_kernel(f, system)
    return ker.reshape(-1, da, db)


def combinations(f: FieldSpec, basis: np.ndarray, limit: int):
    """Nonzero K-combinations of basis elements with leading coefficient 1.

    These are representatives of the projective points of the span; at most
    ``limit`` are produced.
    """
    k = basis.shape[0]
    count = 0
    for lead in range(k):
        for tail in itertools.product(range(f.q), repeat=k - lead - 1):
            coeffs = np.zeros(k, dtype=np.int64)
            coeffs[lead] = 1
            coeffs[lead + 1:] = tail
            yield np.bitwise_xor.reduce(f.vmul(coeffs.reshape((-1,) + (1,) * (basis.ndim - 1)), basis), axis=0)
            count += 1
            if count >= limit:
                return


def iso_test(a: Rep, b: Rep, limit: int = 1 << 12) -> np.ndarray | None:
    """An invertible intertwiner ``a -> b`` or ``None``.

    For simple modules any nonzero intertwiner is invertible (Schur); for
    general modules the hom space is searched up to ``limit`` candidates.
    """
    if a.dim != b.dim or not a.same_context(b):
        return None
    if a.dim == 0:
        return la.identity(0)
    f = a.field
    homs = hom_space(a, b)
    if homs.shape[0] == 0:
        return None
    for h in homs:
        if la.is_invertible(f, h):
            return h
    for h in combinations(f, homs, limit):
        if la.is_invertible(f, h):
            return h
    return None


def _sym_params(n: int):
    return [(i, j) for i in range(n) for j in range(i, n)]


def invariant_bilinear(v: Rep) -> np.ndarray:
    """Basis of symmetric ``B`` with ``g B g^T = B``; shape ``(k, n, n)``."""
    f, n = v.field, v.dim
    params = _sym_params(n)
    if not params:
        return np.zeros((0, n, n), dtype=np.int64)
    eqs = []
    for m in v.mats:
        kr = la.kron(f, m, m)  # vec(g B g^T) = (g (x) g) vec(B)
        cols = []
        for i, j in params:
            c = kr[:, i * n + j].copy()
            if i != j:
                c ^= kr[:, j * n + i]
                c[i * n + j] ^= 1
                c[j * n + i] ^= 1
            else:
                c[i * n + i] ^= 1
            cols.append(c)
        eqs.append(np.stack(cols, axis=1))
    system = np.concatenate(eqs, axis=0) if eqs else la.zeros(0, len(params))
    ker = la.right_kernel(f, system)
    out = np.zeros((ker.shape[0], n, n), dtype=np.int64)
    for k, row in enumerate(ker):
        for (i, j), c in zip(params, row):
            out[k, i, j] = c
            out[k, j, i] = c
    return out


def fold(m: np.ndarray) -> np.ndarray:
    """Upper-triangular matrix of the quadratic form ``v -> v m v^T``."""
    u = np.triu(m ^ m.T, 1)
    u[np.diag_indices_from(u)] = np.diag(m)
    return u


def invariant_quadratic(v: Rep) -> np.ndarray:
    """Basis of upper-triangular ``U`` with ``fold(g U g^T) = U``; shape ``(k, n, n)``."""
    f, n = v.field, v.dim
    params = _sym_params(n)
    if not params:
        return np.zeros((0, n, n), dtype=np.int64)
    upper_idx = np.array([i * n + j for i, j in params])
    lower_idx = np.array([j * n + i for i, j in params])
    diag = np.array([i == j for i, j in params])
    eqs = []
    for m in v.mats:
        kr = la.kron(f, m, m)
        folded = kr[upper_idx] ^ np.where(diag[:, None], 0, kr[lower_idx])
        sub = folded[:, upper_idx] ^ la.identity(len(params))
        eqs.append(sub)
    system = np.concatenate(eqs, axis=0) if eqs else la.zeros(0, len(params))
    ker = la.right_kernel(f, system)
    out = np.zeros((ker.shape[0], n, n), dtype=np.int64)
    for k, row in enumerate(ker):
        for (i, j), c in zip(params, row):
            out[k, i, j] = c
    return out
