"""Equivariant quadratic forms (V, Q): validation, Witt reduction and invariants."""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from functools import cached_property

import numpy as np

from . import exactla as la
from .gfield import FieldSpec
from .grouprep import (
    TRIVIAL,
    ORTHOGONAL,
    SYMPLECTIC,
    Catalog,
    CapExceeded,
    PermGroup,
    Rep,
    composition_multiplicities,
    hom_space,
    simple_catalog,
)
from .grouprep.rep import fold, quotient_rep, sub_rep
from .quadspace import (
    NORM_FORM,
    QuadForm,
    dickson,
    find_isotropic_vector,
    is_nondegenerate,
    polarize,
    radical,
    values,
    witt_decompose,
)

SCAN_CAP = 1 << 20
D_CHECK_ELEMENTS = 100


class FormError(ValueError):
    """Invalid equivariant form; ``witness`` is a vector exhibiting the failure."""

    def __init__(self, message: str, witness: np.ndarray | None = None, kind: str = "invariance"):
        super().__init__(message)
        self.witness = witness
        self.kind = kind


class StructureError(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class EquivForm:
    rep: Rep
    form: QuadForm

    @property
    def dim(self) -> int:
        return self.rep.dim

    @property
    def field(self) -> FieldSpec:
        return self.rep.field

    @property
    def group(self) -> PermGroup:
        return self.rep.group

    @cached_property
    def catalog(self) -> Catalog:
        return simple_catalog(self.group, self.field)

    def to_dict(self) -> dict:
        return {
            "group": self.group.to_dict(),
            "field": self.field.to_dict(),
            "rep_mats": [m.tolist() for m in self.rep.mats],
            "upper": self.form.upper.tolist(),
        }

    def __repr__(self):
        return f"EquivForm(dim={self.dim}, GF({self.field.q}), |G|={self.group.order})"


def _invariance_witness(u: np.ndarray, moved: np.ndarray) -> np.ndarray:
    diff = u ^ moved
    n = u.shape[0]
    w = la.zeros(1, n)[0]
    d = np.flatnonzero(np.diag(diff))
    if d.size:
        w[d[0]] = 1
        return w
    i, j = np.argwhere(diff)[0]
    w[i] = w[j] = 1
    return w


def eq_make(rep: Rep, form: QuadForm) -> EquivForm:
    """Validate G-invariance and non-degeneracy of ``form`` on ``rep``."""
    f = rep.field
    if form.field != f:
        raise FormError("module and form are over different fields", kind="shape")
    if form.dim != rep.dim:
        raise FormError(f"form has dimension {form.dim} but the module has dimension {rep.dim}",
                        kind="shape")
    for k, g in enumerate(rep.mats):
        moved = fold(la.matmul(f, la.matmul(f, g, form.upper), g.T.copy()))
        if not np.array_equal(moved, form.upper):
            w = _invariance_witness(form.upper, moved)
            raise FormError(f"form is not invariant under generator {k}", witness=w)
    rad = radical(form)
    if rad.shape[0]:
        raise FormError("form is degenerate", witness=rad[0], kind="degenerate")
    return EquivForm(rep, form)


def zero_form(g: PermGroup, f: FieldSpec) -> EquivForm:
    return EquivForm(Rep(g, f, [la.identity(0)] * g.ngens, check=False), QuadForm(f, la.identity(0)))


def orth_sum(*xs: EquivForm) -> EquivForm:
    """Orthogonal sum; in characteristic 2 this is also the Witt difference."""
    g, f = xs[0].group, xs[0].field
    for x in xs[1:]:
        if x.group != g or x.field != f:
            raise FormError("orthogonal sum of forms over different groups or fields", kind="shape")
    mats = [la.block_diag(*(x.rep.mats[k] for x in xs)) for k in range(g.ngens)]
    upper = la.block_diag(*(x.form.upper for x in xs))
    return EquivForm(Rep(g, f, mats, check=False), QuadForm(f, upper))


def base_change(x: EquivForm, p: np.ndarray) -> EquivForm:
    """The same form in the basis given by the rows of the invertible ``p``."""
    f = x.field
    pinv = la.inverse(f, p)
    mats = [la.matmul(f, la.matmul(f, p, m), pinv) for m in x.rep.mats]
    upper = fold(la.matmul(f, la.matmul(f, p, x.form.upper), p.T.copy()))
    return EquivForm(Rep(x.group, f, mats, check=False), QuadForm(f, upper))


# -- isotropic simple submodules ---------------------------------------------------

def _pullback_forms(x: EquivForm, homs: np.ndarray) -> np.ndarray:
    """Quadratic forms in the coefficients c of h = sum c_i H_i whose common
    zeros are exactly the h with Q vanishing on the image of h."""
    f = x.field
    k, ds, _ = homs.shape
    eye = la.identity(ds)
    probes = [eye[j] for j in range(ds)] + [eye[j] ^ eye[l] for j in range(ds) for l in range(j + 1, ds)]
    forms = []
    for s in probes:
        xs = np.stack([la.matmul(f, s[None, :], h)[0] for h in homs])
        forms.append(fold(la.matmul(f, la.matmul(f, xs, x.form.upper), xs.T.copy())).reshape(-1))
    return la.echelon(f, np.array(forms)).reshape(-1, k, k)


def _all_vectors(f: FieldSpec, k: int, start: int, stop: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((idx.size, k), dtype=np.int64)
    for j in range(k):
        out[:, k - 1 - j] = (idx >> (f.e * j)) & (f.q - 1)
    return out


def _common_zero(f: FieldSpec, forms: np.ndarray, k: int, cap: int = SCAN_CAP) -> np.ndarray | None:
    """A nonzero common zero of the quadratic forms in ``forms`` on K^k."""
    if forms.shape[0] == 0:
        return la.identity(k)[0]
    if forms.shape[0] == 1:
        return find_isotropic_vector(QuadForm(f, forms[0]))
    total = f.q ** k
    if total > cap:
        raise CapExceeded(f"isotropic search over {total} coefficient vectors exceeds the cap {cap}")
    chunk = 1 << 14
    for start in range(1, total, chunk):
        vecs = _all_vectors(f, k, start, min(total, start + chunk))
        hit = np.ones(vecs.shape[0], dtype=bool)
        for u in forms:
            hit &= values(f, u, vecs) == 0
        nz = np.flatnonzero(hit)
        if nz.size:
            return vecs[nz[0]]
    return None


@dataclass
class IsotropicSimple:
    basis: np.ndarray
    class_id: int


def find_isotropic_simple(x: EquivForm, reverse: bool = False) -> IsotropicSimple | None:
    """A simple submodule U with Q(U) = 0, or ``None`` when x is anisotropic.

    For each simple class S the maps S -> V form the space Hom(S, V); the
    image of h is isotropic iff a few quadratic forms in the coefficients
    of h vanish, which is solved without scanning V.
    """
    if x.dim == 0:
        return None
    f = x.field
    classes = list(x.catalog.simples)
    if reverse:
        classes.reverse()
    for s in classes:
        homs = hom_space(s.rep, x.rep)
        k = homs.shape[0]
        if k == 0:
            continue
        forms = _pullback_forms(x, homs)
        c = _common_zero(f, forms, k)
        if c is None:
            continue
        h = np.bitwise_xor.reduce(f.vmul(c[:, None, None], homs), axis=0)
        return IsotropicSimple(basis=la.echelon(f, h), class_id=s.id)
    return None


def is_isotropic_subspace(x: EquivForm, u: np.ndarray) -> bool:
    return not x.form.restrict(u).upper.any()


def reduce_by(x: EquivForm, u: np.ndarray) -> EquivForm:
    """The induced form on U^perp / U for an isotropic submodule U."""
    f = x.field
    u = la.echelon(f, u)
    if u.shape[0] == 0:
        return x
    if not all(la.in_span(f, u, la.matmul(f, u, m)) for m in x.rep.mats):
        raise FormError("subspace is not a submodule", kind="precondition")
    if not is_isotropic_subspace(x, u):
        raise FormError("subspace is not isotropic", kind="precondition")
    b = polarize(x.form)
    perp = la.left_kernel(f, la.matmul(f, b, u.T.copy()))
    on_perp = sub_rep(x.rep, perp)
    u_coords = la.echelon(f, la.coords_in(perp, u))
    lift, project = la.quotient_basis(f, u_coords, perp.shape[0])
    mats = [la.matmul(f, la.matmul(f, lift, m), project) for m in on_perp.mats]
    reps = la.matmul(f, lift, perp)
    upper = fold(la.matmul(f, la.matmul(f, reps, x.form.upper), reps.T.copy()))
    return EquivForm(Rep(x.group, f, mats, check=False), QuadForm(f, upper))


@dataclass
class Reduction:
    form: EquivForm
    transcript: list = dc_field(default_factory=list)

    def transcript_json(self) -> list[dict]:
        return [dict(step) for step in self.transcript]


def anisotropic_rep(x: EquivForm, reverse: bool = False, with_transcript: bool = False):
    """Reduce by isotropic simple submodules until none is left.

    Returns the anisotropic representative, or a ``Reduction`` carrying the
    sequence of isotropic bases when ``with_transcript`` is set.
    """
    steps = []
    cur = x
    while True:
        iso = find_isotropic_simple(cur, reverse=reverse)
        if iso is None:
            break
        steps.append({"step": len(steps), "dim": cur.dim, "class_id": iso.class_id,
                      "basis": iso.basis.tolist()})
        cur = reduce_by(cur, iso.basis)
    if with_transcript:
        return Reduction(cur, steps)
    return cur


def is_anisotropic(x: EquivForm) -> bool:
    return find_isotropic_simple(x) is None


def is_metabolic(x: EquivForm) -> bool:
    return anisotropic_rep(x).dim == 0


def witt_equal(x: EquivForm, y: EquivForm) -> bool:
    return is_metabolic(orth_sum(x, y))


# -- invariants ------------------------------------------------------------------------

def inv_A(x: EquivForm) -> int:
    """Class of the underlying quadratic space in WQ(K): 1 iff the residue is N(K)."""
    if x.dim == 0:
        return 0
    return 1 if witt_decompose(x.form).residue == NORM_FORM else 0


def inv_C(x: EquivForm) -> dict[int, int]:
    """Composition multiplicities mod 2, indexed by the self-dual class ids."""
    cat = x.catalog
    mult = composition_multiplicities(x.rep, cat) if x.dim else {}
    return {c.id: mult.get(c.id, 0) & 1 for c in cat.self_dual}


def inv_D(x: EquivForm, check_seed: int = 0) -> tuple[int, ...]:
    """Dickson invariants of the generators, defined when inv_A(x) = 0.

    Since D is a homomorphism on O(V, Q) the generator images determine it;
    a sample of group elements is re-checked against their words.
    """
    if inv_A(x) != 0:
        raise FormError("inv_D is only defined on the kernel of inv_A", kind="precondition")
    images = tuple(dickson(m, x.form) for m in x.rep.mats)
    g = x.group
    rng = random.Random(check_seed)
    picks = range(g.order) if g.order <= D_CHECK_ELEMENTS else rng.sample(range(g.order), D_CHECK_ELEMENTS)
    for i in picks:
        expected = sum(images[k] for k in g.words[i]) & 1
        if dickson(x.rep.element_matrix(i), x.form) != expected:
            raise StructureError(f"Dickson invariant is not multiplicative on group element {i}")
    return images


# -- structure of anisotropic forms ----------------------------------------------------

@dataclass
class AnisoStructure:
    case: str
    trivial_dim: int
    v0_classes: list[int]
    w_classes: list[int]
    e: np.ndarray | None = None

    def to_dict(self) -> dict:
        return {"case": self.case, "trivial_dim": self.trivial_dim, "v0_classes": self.v0_classes,
                "w_classes": self.w_classes, "e": None if self.e is None else self.e.tolist()}


def _complement(x: EquivForm, sub: np.ndarray) -> np.ndarray:
    f = x.field
    if sub.shape[0] == 0:
        return la.identity(x.dim)
    return la.left_kernel(f, la.matmul(f, polarize(x.form), sub.T.copy()))


def aniso_structure(x: EquivForm) -> AnisoStructure:
    """Socle decomposition T + V_0 of an anisotropic form and its case (i)-(iii).

    In case (iii) the module <e>^perp/<e> of the indecomposable part R is
    checked to be zero or a multiplicity-free sum of symplectic simples.
    """
    if not is_anisotropic(x):
        raise FormError("aniso_structure needs an anisotropic form", kind="precondition")
    f, cat = x.field, x.catalog
    trivial = hom_space(cat.trivial.rep, x.rep).reshape(-1, x.dim)
    trivial = la.echelon(f, trivial)
    v0_parts, v0_classes = [], []
    for s in cat.simples:
        if s.mtype == TRIVIAL:
            continue
        homs = hom_space(s.rep, x.rep)
        if homs.shape[0] == 0:
            continue
        if s.mtype != ORTHOGONAL:
            raise StructureError(f"socle of an anisotropic form contains class {s.id} of type {s.mtype}")
        v0_parts.append(homs.reshape(-1, x.dim))
        v0_classes.append(s.id)
    v0 = la.echelon(f, np.concatenate(v0_parts, axis=0)) if v0_parts else la.zeros(0, x.dim)
    for cid in v0_classes:
        img = la.echelon(f, hom_space(cat.simples[cid].rep, x.rep).reshape(-1, x.dim))
        if img.shape[0] != cat.simples[cid].dim:
            raise StructureError(f"class {cid} occurs more than once in the socle")
    if v0.shape[0] and not is_nondegenerate(x.form.restrict(v0)):
        raise StructureError("orthogonal part of the socle is degenerate")
    b = polarize(x.form)
    if v0.shape[0] and trivial.shape[0] and la.matmul(f, la.matmul(f, trivial, b), v0.T.copy()).any():
        raise StructureError("trivial and orthogonal parts of the socle are not perpendicular")
    t = trivial.shape[0]
    if t == 0:
        if v0.shape[0] != x.dim:
            raise StructureError("socle without trivial part is a proper submodule")
        return AnisoStructure("i", 0, v0_classes, [])
    if t == 2:
        tq = x.form.restrict(trivial)
        if not is_nondegenerate(tq) or witt_decompose(tq).residue != NORM_FORM:
            raise StructureError("two-dimensional trivial socle is not the norm form")
        if v0.shape[0] + 2 != x.dim:
            raise StructureError("form is larger than its socle in case (ii)")
        return AnisoStructure("ii", 2, v0_classes, [])
    if t != 1:
        raise StructureError(f"trivial socle of dimension {t} in an anisotropic form")
    e = trivial[0]
    e = f.vmul(f.inv(f.sqrt(x.form(e))), e)
    r_basis = _complement(x, v0)
    r_rep = sub_rep(x.rep, r_basis)
    r_form = x.form.restrict(r_basis)
    r = EquivForm(r_rep, r_form)
    e_r = la.coords_in(r_basis, e[None, :])
    # <e>^perp / <e> inside R
    perp = la.left_kernel(f, la.matmul(f, polarize(r_form), e_r.T.copy()))
    w_rep = quotient_rep(sub_rep(r.rep, perp), la.echelon(f, la.coords_in(perp, e_r)))
    w_classes = []
    if w_rep.dim:
        mult = composition_multiplicities(w_rep, cat)
        for cid, m in sorted(mult.items()):
            if m != 1 or cat.simples[cid].mtype != SYMPLECTIC:
                raise StructureError("W is not a multiplicity-free sum of symplectic simples")
            w_classes.append(cid)
        if sum(cat.simples[c].dim for c in w_classes) != w_rep.dim:
            raise StructureError("composition factors of W do not fill W")
        # semisimple iff every constituent also occurs as a submodule
        if any(hom_space(cat.simples[c].rep, w_rep).shape[0] == 0 for c in w_classes):
            raise StructureError("W is not semisimple")
    elif r.dim != 2:
        raise StructureError("R with W = 0 must be two-dimensional")
    return AnisoStructure("iii", 1, v0_classes, w_classes, e=e)


# -- brute-force oracle -------------------------------------------------------------------

ORACLE_CAP = 1 << 20


def oracle_metabolic(x: EquivForm, cap: int = ORACLE_CAP) -> bool:
    """Exhaustive search for an isotropic submodule U with dim U = dim V / 2.

    Independent of the reduction machinery: all vectors of V are
    enumerated, and isotropic submodules are grown one spun vector at a time.
    """
    f, n = x.field, x.dim
    if n == 0:
        return True
    if n % 2:
        return False
    total = f.q ** n
    if total > cap:
        raise CapExceeded(f"oracle enumeration of {total} vectors exceeds the cap {cap}")
    vecs = _all_vectors(f, n, 1, total)
    qv = values(f, x.form.upper, vecs)
    singular = vecs[qv == 0]
    b = polarize(x.form)
    mats = list(x.rep.mats)
    target = n // 2
    seen: set = set()

    def key(u):
        return u.tobytes()

    def grow(u: np.ndarray) -> bool:
        if u.shape[0] == target:
            return True
        if u.shape[0]:
            ok = ~la.matmul(f, la.matmul(f, singular, b), u.T.copy()).any(axis=1)
            ok &= la.reduce_rows(f, u, singular).any(axis=1)
            cand = singular[ok]
        else:
            cand = singular
        for v in cand:
            w = la.spin(f, np.concatenate([u, v[None, :]], axis=0), mats)
            if key(w) in seen:
                continue
            seen.add(key(w))
            if w.shape[0] > target or x.form.restrict(w).upper.any():
                continue
            if grow(w):
                return True
        return False

    return grow(la.zeros(0, n))


def equiv_form_from_dict(d: dict, group: PermGroup | None = None) -> EquivForm:
    """Parse and validate the EquivForm JSON layout."""
    from .gfield import FieldSpec as _FS
    from .grouprep import group_make

    g = group or group_make(d["group"]["degree"], d["group"]["gens"])
    f = _FS.from_dict(d["field"])
    mats = [np.asarray(m, dtype=np.int64) for m in d["rep_mats"]]
    upper = np.asarray(d["upper"], dtype=np.int64)
    n = upper.shape[0] if upper.ndim == 2 else 0
    mats = [m.reshape(n, n) for m in mats]
    upper = upper.reshape(n, n)
    return eq_make(Rep(g, f, mats), QuadForm(f, upper))
