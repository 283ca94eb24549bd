"""Acceptance criteria 1-8, each at its stated tolerance (zero failures).

Every criterion prints one ``[PASS]`` or ``[FAIL]`` line.  Run under pytest,
or directly with ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import os
import sys
import time

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

from equiwitt import exactla as la  # noqa: E402
from equiwitt.equiforms import (  # noqa: E402
    anisotropic_rep,
    inv_A,
    inv_C,
    inv_D,
    is_anisotropic,
    is_metabolic,
    oracle_metabolic,
    orth_sum,
    witt_equal,
)
from equiwitt.generators import Envelope  # noqa: E402
from equiwitt.gfield import field_make  # noqa: E402
from equiwitt.grouprep import (  # noqa: E402
    SYMPLECTIC,
    iso_test,
    quotient_rep,
    simple_catalog,
    socle,
    sub_rep,
)
from equiwitt.quadspace import (  # noqa: E402
    NORM_FORM,
    ZERO,
    QuadForm,
    dickson,
    dickson_lagrangian,
    is_nondegenerate,
    polarize,
    witt_decompose,
)
from equiwitt.sampling import random_base_change, random_class_form, random_metabolic  # noqa: E402
from equiwitt.wittgroup import (  # noqa: E402
    all_coordinates,
    coordinates,
    describe,
    from_coordinates,
    invariant_triple,
    verify_theorem,
)
from helpers import A5, GF2, GF4, TABLE, random_isometry, random_nondegenerate, split_space  # noqa: E402
from oracles import (  # noqa: E402
    all_upper_forms,
    brute_type,
    count_characters_c2,
    self_dual_simple_count,
    witt_class_by_count,
)

SEED = 0x5177
INSTANCES = [(name, g, GF2 if e == 1 else GF4, rank) for name, g, e, rank in TABLE]

_DESCRIPTIONS: dict = {}


def _describe(g, f):
    key = (repr(g), f.e)
    if key not in _DESCRIPTIONS:
        _DESCRIPTIONS[key] = describe(g, f)
    return _DESCRIPTIONS[key]


def _rng(k: int) -> np.random.Generator:
    return np.random.default_rng([SEED, k])


def _sample_instance(rng):
    name, g, f, _ = INSTANCES[rng.integers(len(INSTANCES))]
    return name, g, f


# -- criteria ------------------------------------------------------------------------------

def criterion_1():
    """Rank table via verify_theorem, with A5 over GF(4) checked against oracles."""
    failures = []
    for name, g, f, rank in INSTANCES:
        report = verify_theorem(g, f, samples=20, seed=SEED, desc=_describe(g, f))
        s_oracle = self_dual_simple_count(g, f.q)
        t_oracle = count_characters_c2(g).bit_length() - 1
        if not report["pass"] or report["rank"] != rank or (report["s"], report["t"]) != (s_oracle, t_oracle):
            failures.append(f"{name}/GF({f.q}): rank {report['rank']} pass {report['pass']}")
    desc = _describe(A5, GF4)
    report = verify_theorem(A5, GF4, samples=20, seed=SEED, desc=desc)
    natural = [c for c in desc.catalog.simples if c.dim == 2]
    if not report["pass"] or report["t"] != 0 or report["rank"] != report["s"]:
        failures.append(f"A5/GF(4): rank {report['rank']} s {report['s']} t {report['t']}")
    if report["s"] != self_dual_simple_count(A5, 4):
        failures.append("A5/GF(4): s disagrees with the class-count oracle")
    if not natural or any(brute_type(GF4, c.rep.mats) != "symplectic" or c.mtype != SYMPLECTIC for c in natural):
        failures.append("A5/GF(4): natural module not certified symplectic")
    detail = f"6 table instances + A5/GF(4) rank {report['rank']} = s({report['s']}) + t(0)"
    return not failures, detail, failures


def criterion_2():
    """Two Witt classes of plain quadratic spaces."""
    failures = []
    seen = set()
    exhaustive = 0
    for n in (2, 4):
        for u in all_upper_forms(GF2, n):
            q = QuadForm(GF2, u)
            if not is_nondegenerate(q):
                continue
            exhaustive += 1
            res = witt_decompose(q).residue
            seen.add(res)
            if res != witt_class_by_count(GF2, u):
                failures.append(f"GF(2) {u.tolist()}: {res}")
    rng = _rng(2)
    randoms = 0
    for e in (2, 3):
        f = field_make(e)
        classes = set()
        for _ in range(250):
            n = 2 * int(rng.integers(1, 4))
            q = random_nondegenerate(f, n, rng)
            res = witt_decompose(q).residue
            classes.add(res)
            randoms += 1
            if res not in (ZERO, NORM_FORM):
                failures.append(f"GF({f.q}) residue {res}")
            elif f.q ** n <= 4096 and res != witt_class_by_count(f, q.upper):
                failures.append(f"GF({f.q}) {q.upper.tolist()}: {res} disagrees with the zero count")
        if classes != {ZERO, NORM_FORM}:
            failures.append(f"GF({f.q}) classes seen {sorted(classes)}")
    if seen != {ZERO, NORM_FORM}:
        failures.append(f"GF(2) classes seen {sorted(seen)}")
    return not failures, f"{exhaustive} exhaustive GF(2) forms, {randoms} random GF(4)/GF(8) forms", failures


def criterion_3():
    """Anisotropic representatives do not depend on the reduction order."""
    failures = []
    rng = _rng(3)
    for i in range(200):
        name, g, f = _sample_instance(rng)
        x = random_class_form(_describe(g, f), rng, max_dim=10)
        a, b = anisotropic_rep(x), anisotropic_rep(x, reverse=True)
        if a.dim != b.dim or not is_anisotropic(a) or not is_anisotropic(b) or not witt_equal(a, b):
            failures.append(f"sample {i} ({name}/GF({f.q}), dim {x.dim}): {a.dim} vs {b.dim}")
    return not failures, "200 random forms, forward and reverse reduction", failures


def criterion_4():
    """inv_A, inv_C and inv_D (on ker A) are unchanged by metabolic inflation."""
    failures = []
    rng = _rng(4)
    bases = []
    for name, g, f, _ in INSTANCES:
        desc = _describe(g, f)
        bases.append((name, g, f, orth_sum(*(gen.form for gen in desc.generators))))
        bases.append((name, g, f, orth_sum(*(gen.form for gen in desc.generators if gen.label != "N"))
                      if len(desc.generators) > 1 else desc.norm.form))
    checks = 0
    for name, g, f, x in bases:
        a, c = inv_A(x), inv_C(x)
        d = inv_D(x) if a == 0 else None
        for k in range(100):
            y = random_base_change(orth_sum(x, random_metabolic(g, f, rng, 8, extra=[x] if x.dim <= 4 else None)), rng)
            checks += 1
            if inv_A(y) != a or inv_C(y) != c or (d is not None and inv_D(y) != d):
                failures.append(f"{name}/GF({f.q}) base dim {x.dim} inflation {k}")
    return not failures, f"{len(bases)} base forms x 100 inflations = {checks}", failures


def criterion_5():
    """is_metabolic agrees with the exhaustive oracle."""
    failures = []
    rng = _rng(5)
    counts = [0, 0]
    for i in range(200):
        name, g, f = _sample_instance(rng)
        x = random_class_form(_describe(g, f), rng, max_dim=8 if f.q == 2 else 6)
        assert f.q ** x.dim <= 1 << 16
        fast, slow = is_metabolic(x), oracle_metabolic(x)
        counts[int(fast)] += 1
        if fast != slow:
            failures.append(f"sample {i} ({name}/GF({f.q}), dim {x.dim}): {fast} vs oracle {slow}")
    return not failures, f"200 random forms ({counts[1]} metabolic, {counts[0]} not)", failures


def _envelope_failures(cat, classes, group, rng) -> list[str]:
    f = cat.field
    label = ",".join(str(c.id) for c in classes)
    out = []
    env = Envelope(classes)
    x = env.equiv_form()
    n = x.dim
    e = la.zeros(1, n)
    e[0, -1] = 1
    if x.form(e[0]) != 1 or not np.array_equal(socle(x.rep, cat), e):
        out.append(f"[{label}] socle is not <e>")
    perp = la.left_kernel(f, la.matmul(f, polarize(x.form), e.T.copy()))
    quot = quotient_rep(sub_rep(x.rep, perp), la.coords_in(perp, e))
    if iso_test(quot, env.w_rep) is None:
        out.append(f"[{label}] e-perp / e is not isomorphic to W")
    if inv_A(x) != 0:
        out.append(f"[{label}] inv_A != 0")
    if any(inv_D(x)):
        out.append(f"[{label}] inv_D != 0")
    ids = {c.id for c in classes}
    if inv_C(x) != {k: int(k in ids) for k in inv_C(x)}:
        out.append(f"[{label}] inv_C is not the indicator of W")
    w = env.w_rep
    for _ in range(100):
        i, j = (int(v) for v in rng.integers(group.order, size=2))
        lhs = la.matmul(f, env.lift(w.element_matrix(i)), env.lift(w.element_matrix(j)))
        if not np.array_equal(lhs, x.rep.element_matrix(group.mul(i, j))):
            out.append(f"[{label}] lift(g) lift(h) != lift(gh) for ({i}, {j})")
            break
    for g0 in x.rep.mats:
        if dickson(g0, x.form) != 0:
            out.append(f"[{label}] generator lift has nonzero Dickson invariant")
    return out


def criterion_6():
    """Envelope checks for every symplectic class found."""
    failures = []
    rng = _rng(6)
    tested = []
    contexts = [(g, f) for _, g, f, _ in INSTANCES] + [(A5, GF4)]
    for g, f in contexts:
        cat = simple_catalog(g, f)
        symp = [c for c in cat.simples if c.mtype == SYMPLECTIC]
        for c in symp:
            failures += _envelope_failures(cat, [c], g, rng)
            tested.append(f"{g.order}:{c.id}")
        if len(symp) >= 2:
            failures += _envelope_failures(cat, symp, g, rng)
            tested.append(f"{g.order}:" + "+".join(str(c.id) for c in symp))
    if not any(t.startswith("60:") for t in tested):
        failures.append("no symplectic class found for A5 over GF(4)")
    return not failures, f"envelopes checked: {', '.join(tested)}", failures


def criterion_7():
    """dickson agrees with the Lagrangian formula and is additive."""
    failures = []
    rng = _rng(7)
    spaces = [(f, m) for f in (GF2, GF4) for m in (1, 2, 3)]
    for i in range(200):
        f, m = spaces[i % len(spaces)]
        q = split_space(f, m)
        w = la.zeros(m, 2 * m)
        for k in range(m):
            w[k, 2 * k] = 1
        g = random_isometry(q, rng, int(rng.integers(0, 7)))
        if dickson(g, q) != dickson_lagrangian(g, q, w):
            failures.append(f"isometry {i} over GF({f.q}) dim {2 * m}")
    for i in range(200):
        f, m = spaces[i % len(spaces)]
        q = split_space(f, m)
        g = random_isometry(q, rng, int(rng.integers(0, 7)))
        h = random_isometry(q, rng, int(rng.integers(0, 7)))
        if dickson(la.matmul(f, g, h), q) != dickson(g, q) ^ dickson(h, q):
            failures.append(f"pair {i} over GF({f.q}) dim {2 * m}")
    return not failures, "200 isometries and 200 pairs over GF(2), GF(4), dims 2/4/6", failures


def criterion_8():
    """All coordinate vectors round-trip and have distinct invariant triples."""
    failures = []
    total = 0
    contexts = [(name, g, f) for name, g, f, _ in INSTANCES] + [("A5", A5, GF4)]
    for name, g, f in contexts:
        desc = _describe(g, f)
        triples = {}
        for c in all_coordinates(desc):
            total += 1
            x = from_coordinates(c, desc)
            back = coordinates(x, desc)
            if back != c:
                failures.append(f"{name}/GF({f.q}): {c} came back as {back}")
            t = invariant_triple(x, desc)
            if t in triples:
                failures.append(f"{name}/GF({f.q}): {c} and {triples[t]} collide")
            triples[t] = c
    return not failures, f"{total} coordinate vectors over 7 instances", failures


CRITERIA = {
    1: ("rank table", criterion_1),
    2: ("two classes in WQ(K)", criterion_2),
    3: ("anisotropic uniqueness", criterion_3),
    4: ("invariant well-definedness", criterion_4),
    5: ("oracle agreement", criterion_5),
    6: ("envelope", criterion_6),
    7: ("Dickson consistency", criterion_7),
    8: ("coordinate round-trip", criterion_8),
}


def run_criterion(k: int):
    title, fn = CRITERIA[k]
    start = time.perf_counter()
    ok, detail, failures = fn()
    secs = time.perf_counter() - start
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {k}: {title} ({detail}; {secs:.1f} s)"
    if failures:
        line += f"; {len(failures)} failures, first: {failures[0]}"
    print(line)
    return ok, line, failures


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_acceptance(k, acceptance_log):
    ok, line, failures = run_criterion(k)
    acceptance_log.append(line)
    assert ok, "\n".join(failures[:10])


if __name__ == "__main__":
    results = [run_criterion(k)[0] for k in sorted(CRITERIA)]
    sys.exit(0 if all(results) else 1)
