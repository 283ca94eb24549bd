"""The Witt group WQ(K, G): generators, coordinates and the rank check."""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass

import numpy as np

from . import exactla as la
from .equiforms import (
    EquivForm,
    anisotropic_rep,
    inv_A,
    inv_C,
    inv_D,
    is_anisotropic,
    is_metabolic,
    orth_sum,
    witt_equal,
    zero_form,
)
from .generators import (
    PLUS,
    Generator,
    envelope_label,
    gen_envelope,
    gen_norm,
    gen_orthogonal_simple,
    gen_rtau,
)
from .gfield import FieldSpec, field_make
from .grouprep import ORTHOGONAL, Catalog, PermGroup, SimpleClass, simple_catalog, two_torsion_characters


class VerificationError(RuntimeError):
    """An internal consistency check failed; this indicates a bug, not a math outcome."""


@dataclass(frozen=True)
class WittCoords:
    c0: tuple[int, ...]
    a: int
    d: tuple[int, ...]

    def as_vector(self) -> tuple[int, ...]:
        return self.c0 + (self.a,) + self.d

    def to_dict(self) -> dict:
        return {"c0": list(self.c0), "a": self.a, "d": list(self.d)}

    @classmethod
    def from_dict(cls, d: dict) -> "WittCoords":
        return cls(tuple(int(x) for x in d["c0"]), int(d["a"]), tuple(int(x) for x in d["d"]))

    def __str__(self):
        c0 = "".join(map(str, self.c0)) or "-"
        d = "".join(map(str, self.d)) or "-"
        return f"(c0={c0}, a={self.a}, d={d})"


@dataclass
class GroupWittDescription:
    group: PermGroup
    field: FieldSpec
    catalog: Catalog
    taus: list[tuple[int, ...]]
    s0_generators: list[Generator]
    norm: Generator
    rtau_generators: list[Generator]

    @property
    def s(self) -> int:
        return self.catalog.s

    @property
    def t(self) -> int:
        return len(self.taus)

    @property
    def rank(self) -> int:
        return self.s + self.t

    @property
    def s0(self) -> list[SimpleClass]:
        return self.catalog.nontrivial_self_dual

    @property
    def generators(self) -> list[Generator]:
        return self.s0_generators + [self.norm] + self.rtau_generators

    def to_dict(self) -> dict:
        return {"s": self.s, "t": self.t, "rank": self.rank,
                "generators": [gen.label for gen in self.generators],
                "taus": [list(t) for t in self.taus]}


def s0_generator(s: SimpleClass) -> Generator:
    if s.mtype == ORTHOGONAL:
        return Generator(f"S:{s.id}", gen_orthogonal_simple(s))
    return Generator(envelope_label([s]), gen_envelope([s]))


def describe(g: PermGroup, f: FieldSpec) -> GroupWittDescription:
    cat = simple_catalog(g, f)
    t, taus = two_torsion_characters(g)
    taus = [tuple(int(x) for x in tau) for tau in taus]
    s0_gens = [s0_generator(s) for s in cat.nontrivial_self_dual]
    rtaus = [Generator(f"Rtau:{j}:{PLUS}", gen_rtau(g, f, tau, PLUS)) for j, tau in enumerate(taus)]
    return GroupWittDescription(g, f, cat, taus, s0_gens, Generator("N", gen_norm(f, g)), rtaus)


def _sum_or_zero(desc: GroupWittDescription, forms: list[EquivForm]) -> EquivForm:
    return orth_sum(*forms) if forms else zero_form(desc.group, desc.field)


def _check_context(x: EquivForm, desc: GroupWittDescription) -> None:
    if x.group != desc.group or x.field != desc.field:
        raise ValueError("form and description are over different groups or fields")


def character_coords(desc: GroupWittDescription, images: tuple[int, ...]) -> tuple[int, ...]:
    """Coordinates of a character (given by generator images) in the tau basis."""
    if not desc.taus:
        if any(images):
            raise VerificationError("nonzero Dickson character for a group without characters of order 2")
        return ()
    f2 = field_make(1)
    basis = np.array(desc.taus, dtype=np.int64)
    sol = la.solve_linear(f2, basis, np.array([images], dtype=np.int64))
    if sol is None:
        raise VerificationError(f"Dickson images {images} are not a character of G")
    return tuple(int(v) for v in sol[0])


def coordinates(x: EquivForm, desc: GroupWittDescription, verify: bool = True) -> WittCoords:
    """Coordinates of [x] in F_2^{S_0} x WQ(K) x Hom(G, C_2)."""
    _check_context(x, desc)
    c = inv_C(x)
    c0 = tuple(c[s.id] for s in desc.s0)
    x1 = _sum_or_zero(desc, [x] + [gen.form for gen, flag in zip(desc.s0_generators, c0) if flag])
    a = inv_A(x1)
    x2 = orth_sum(x1, desc.norm.form) if a else x1
    d = character_coords(desc, inv_D(x2))
    if verify:
        flagged = [gen.form for gen, flag in zip(desc.rtau_generators, d) if flag]
        if not is_metabolic(_sum_or_zero(desc, [x2] + flagged)):
            raise VerificationError("form is not Witt equivalent to the sum its coordinates describe")
    return WittCoords(c0, a, d)


def flagged_generators(coords: WittCoords, desc: GroupWittDescription) -> list[EquivForm]:
    if len(coords.c0) != len(desc.s0) or len(coords.d) != desc.t:
        raise ValueError(f"coordinates need lengths ({len(desc.s0)}, 1, {desc.t})")
    out = [gen.form for gen, flag in zip(desc.s0_generators, coords.c0) if flag]
    if coords.a:
        out.append(desc.norm.form)
    out += [gen.form for gen, flag in zip(desc.rtau_generators, coords.d) if flag]
    return out


def from_coordinates(coords: WittCoords, desc: GroupWittDescription) -> EquivForm:
    """The anisotropic representative of the class with the given coordinates."""
    return anisotropic_rep(_sum_or_zero(desc, flagged_generators(coords, desc)))


def all_coordinates(desc: GroupWittDescription):
    n0 = len(desc.s0)
    for bits in itertools.product((0, 1), repeat=desc.rank):
        yield WittCoords(tuple(bits[:n0]), bits[n0], tuple(bits[n0 + 1:]))


def invariant_triple(x: EquivForm, desc: GroupWittDescription) -> tuple:
    """(C on S_0, A, D) computed directly, with N(K) added before D when A = 1."""
    c = inv_C(x)
    a = inv_A(x)
    y = orth_sum(x, desc.norm.form) if a else x
    return (tuple(c[s.id] for s in desc.s0), a, inv_D(y))


def _timed(name: str, fn) -> dict:
    start = time.perf_counter()
    detail = None
    try:
        ok, detail = fn()
    except Exception as exc:  # report, never crash the whole run
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    out = {"name": name, "pass": bool(ok), "ms": round(1000 * (time.perf_counter() - start), 1)}
    if detail:
        out["detail"] = detail
    return out


def verify_theorem(g: PermGroup, f: FieldSpec, samples: int = 20, seed: int = 0,
                   desc: GroupWittDescription | None = None) -> dict:
    """Check that the generators span a copy of C_2^{s+t} inside WQ(K, G)."""
    from .sampling import random_class_form

    desc = desc or describe(g, f)
    rng = np.random.default_rng(seed)
    checks = []

    def generator_count():
        return len(desc.generators) == desc.rank, None

    def anisotropic():
        bad = [gen.label for gen in desc.generators if not is_anisotropic(gen.form)]
        return not bad, (f"not anisotropic: {bad}" if bad else None)

    def order_two():
        bad = [gen.label for gen in desc.generators if not is_metabolic(orth_sum(gen.form, gen.form))]
        return not bad, (f"order greater than 2: {bad}" if bad else None)

    def injectivity():
        seen = {}
        for c in all_coordinates(desc):
            trip = invariant_triple(_sum_or_zero(desc, flagged_generators(c, desc)), desc)
            if trip in seen:
                return False, f"{c} and {seen[trip]} share invariants {trip}"
            seen[trip] = c
        return True, None

    def round_trip():
        for c in all_coordinates(desc):
            back = coordinates(from_coordinates(c, desc), desc)
            if back != c:
                return False, f"{c} came back as {back}"
        return True, None

    def spanning():
        for i in range(samples):
            x = random_class_form(desc, rng)
            y = from_coordinates(coordinates(x, desc), desc)
            if not witt_equal(x, y):
                return False, f"sample {i} of dimension {x.dim} is not equivalent to its representative"
        return True, None

    for name, fn in [("generator_count", generator_count), ("generators_anisotropic", anisotropic),
                     ("order_two", order_two), ("injectivity", injectivity),
                     ("round_trip", round_trip), ("spanning", spanning)]:
        checks.append(_timed(name, fn))
    report = desc.to_dict()
    report["checks"] = checks
    report["pass"] = all(c["pass"] for c in checks)
    return report
