"""Catalog of simple KG-modules and their self-duality types."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .. import exactla as la
from ..gfield import FieldSpec
from .meataxe import DEFAULT_BUDGET, DEFAULT_SEED, charpoly, chop
from .perm import PermGroup
from .rep import (
    Rep,
    dual_rep,
    hom_space,
    invariant_bilinear,
    invariant_quadratic,
    iso_test,
    regular_rep,
)

SIGNATURE_ELEMENTS = 256

TRIVIAL = "trivial"
ORTHOGONAL = "orthogonal"
SYMPLECTIC = "symplectic"
NONSELFDUAL = "nonselfdual"


def signature(v: Rep) -> tuple:
    """Isomorphism invariant: dimension plus characteristic polynomials of
    group elements in BFS order.  Distinct simple modules have distinct
    Brauer characters, so this separates simple modules."""
    elems = v.element_matrices()[:SIGNATURE_ELEMENTS]
    return (v.dim,) + tuple(tuple(charpoly(v.field, m)) for m in elems)


@dataclass
class SimpleClass:
    id: int
    rep: Rep
    self_dual: bool
    mtype: str
    inv_bilinear: np.ndarray
    inv_quadratic: np.ndarray
    signature: tuple = dc_field(repr=False)

    @property
    def dim(self) -> int:
        return self.rep.dim

    def to_dict(self) -> dict:
        return {"id": self.id, "dim": self.dim, "self_dual": self.self_dual, "type": self.mtype}


@dataclass
class Catalog:
    field: FieldSpec
    group: PermGroup
    simples: list[SimpleClass]

    @property
    def s(self) -> int:
        return sum(1 for c in self.simples if c.self_dual)

    @property
    def self_dual(self) -> list[SimpleClass]:
        return [c for c in self.simples if c.self_dual]

    @property
    def nontrivial_self_dual(self) -> list[SimpleClass]:
        """The classes indexing the F_2^{S_0} coordinate."""
        return [c for c in self.simples if c.self_dual and c.mtype != TRIVIAL]

    @property
    def trivial(self) -> SimpleClass:
        return next(c for c in self.simples if c.mtype == TRIVIAL)

    def identify(self, v: Rep) -> SimpleClass:
        """The catalog class isomorphic to the simple module ``v``."""
        sig = signature(v)
        for c in self.simples:
            if c.signature == sig and iso_test(c.rep, v) is not None:
                return c
        raise LookupError("module is not isomorphic to any cataloged simple module")

    def to_dict(self) -> dict:
        return {
            "field": self.field.to_dict(),
            "group": self.group.to_dict(),
            "s": self.s,
            "simples": [c.to_dict() for c in self.simples],
        }


def _classify(v: Rep, self_dual: bool, quad: np.ndarray) -> str:
    if v.dim == 1 and v.is_trivial():
        return TRIVIAL
    if not self_dual:
        return NONSELFDUAL
    # on a nontrivial simple module every nonzero invariant quadratic form
    # has non-degenerate polarization
    for u in quad:
        b = u ^ u.T
        if la.rank(v.field, b) == v.dim:
            return ORTHOGONAL
    return SYMPLECTIC


def distinct_factors(factors: list[Rep]) -> list[tuple[Rep, int, tuple]]:
    """Group composition factors into isomorphism classes with multiplicities,
    sorted canonically by signature."""
    classes: list[list] = []
    for v in factors:
        sig = signature(v)
        for entry in classes:
            if entry[2] == sig and iso_test(entry[0], v) is not None:
                entry[1] += 1
                break
        else:
            classes.append([v, 1, sig])
    classes.sort(key=lambda e: e[2])
    return [tuple(e) for e in classes]


def chop_classes(v: Rep, seed: int = DEFAULT_SEED, budget: int = DEFAULT_BUDGET):
    """Composition factors as ``(representative, multiplicity, signature)`` in canonical order."""
    return distinct_factors(chop(v, seed=seed, budget=budget))


_CATALOG_CACHE: dict = {}


def simple_catalog(g: PermGroup, f: FieldSpec, seed: int = DEFAULT_SEED) -> Catalog:
    key = (g, f)
    if key in _CATALOG_CACHE:
        return _CATALOG_CACHE[key]
    simples = []
    for i, (v, _, sig) in enumerate(chop_classes(regular_rep(g, f), seed=seed)):
        self_dual = iso_test(v, dual_rep(v)) is not None
        quad = invariant_quadratic(v)
        simples.append(SimpleClass(
            id=i,
            rep=v,
            self_dual=self_dual,
            mtype=_classify(v, self_dual, quad),
            inv_bilinear=invariant_bilinear(v),
            inv_quadratic=quad,
            signature=sig,
        ))
    cat = Catalog(field=f, group=g, simples=simples)
    _CATALOG_CACHE[key] = cat
    return cat


def composition_multiplicities(v: Rep, catalog: Catalog, seed: int = DEFAULT_SEED) -> dict[int, int]:
    """Map class id -> multiplicity as a composition factor of ``v``."""
    out: dict[int, int] = {}
    for rep, mult, _ in chop_classes(v, seed=seed):
        cid = catalog.identify(rep).id
        out[cid] = out.get(cid, 0) + mult
    return out


def homogeneous_images(v: Rep, s: SimpleClass) -> np.ndarray:
    """Hom(S, V) as an array ``(k, dim S, dim V)``; each nonzero element
    embeds S as a simple submodule of V."""
    return hom_space(s.rep, v)


def socle(v: Rep, catalog: Catalog) -> np.ndarray:
    """Echelon basis of the sum of all simple submodules of ``v``."""
    f = v.field
    parts = [la.zeros(0, v.dim)]
    for s in catalog.simples:
        homs = homogeneous_images(v, s)
        if homs.shape[0]:
            parts.append(homs.reshape(-1, v.dim))
    return la.echelon(f, np.concatenate(parts, axis=0))


def simple_submodules(v: Rep, s: SimpleClass, limit: int = 1 << 16):
    """Bases of simple submodules of ``v`` isomorphic to ``s``, one per
    projective point of Hom(S, V) over K (images may repeat when End(S) > K)."""
    from .rep import combinations

    homs = homogeneous_images(v, s)
    for h in combinations(v.field, homs, limit):
        yield la.echelon(v.field, h)
