"""The seven acceptance criteria, each reported as one PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py`` (the lines appear in the
terminal summary) or directly with ``python tests/test_acceptance.py``.
"""
from __future__ import annotations

import random
import sys
import time
from fractions import Fraction
from functools import lru_cache
from itertools import product
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

from corpus import (  # noqa: E402
    A1T1,
    SHIPPED,
    finite_holes_instance,
    load_sample,
    random_saturated,
    random_semisimple,
    random_torus_plane,
    sample_names,
    seeded,
)

from horoflex import oracle  # noqa: E402
from horoflex.cones import cone, dual_cone, faces  # noqa: E402
from horoflex.horospherical import (  # noqa: E402
    FLEXIBLE,
    NOT_FLEXIBLE,
    LndRoot,
    build,
    codim_one_rays,
    find_lnd_root,
    flexibility,
    orbit_lattice,
)
from horoflex.lndengine import (  # noqa: E402
    HomogeneousDerivation,
    apply,
    element,
    exp_action,
    nilpotency_order,
    symbol,
)
from horoflex.semigroup import (  # noqa: E402
    AlmostSaturated,
    NowhereSaturatedCertified,
    is_saturation_point,
    module_generators,
    saturation_holes,
)

RESULTS: dict[int, tuple[bool, str]] = {}


def record(n: int, failures: list, detail: str, started: float) -> None:
    ok = not failures
    note = detail if ok else f"{len(failures)} failure(s), first: {failures[0]}"
    RESULTS[n] = (ok, f"{note} [{time.perf_counter() - started:.1f}s]")
    assert ok, failures[:5]


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _face_of(h, ray):
    return next(fp for fp in faces(h.sigma) if fp.tau.extremal == (tuple(ray),))


def _status(rep, ray):
    return next(rs for rs in rep.ray_statuses if rs.ray == tuple(ray))


def _completeness_degree(gens, grading, r):
    """Sum of the r largest generator degrees, computed from scratch."""
    return sum(sorted((_dot(grading, g) for g in gens), reverse=True)[:r])


# -- instance families (built once per session) ----------------------------------------

@lru_cache(maxsize=None)
def family(name: str):
    makers = {
        "semisimple": lambda: seeded(101, random_semisimple, 20),
        "saturated": lambda: seeded(202, random_saturated, 20),
        "torus": lambda: seeded(303, random_torus_plane, 20),
        "finite_holes": lambda: seeded(404, finite_holes_instance, 20),
    }
    out = []
    for item in makers[name]():
        g, gens = item[0], item[1]
        h = build(g, gens)
        out.append((item, h, flexibility(h)))
    return out


@lru_cache(maxsize=None)
def shipped():
    return [(name, build(g, gens)) for name, g, gens in SHIPPED]


# -- 1 -----------------------------------------------------------------------------------

def test_criterion_1_example_one():
    t0 = time.perf_counter()
    fails = []
    h = build(A1T1, [(2, 0), (1, 1), (0, 1)])
    rep = flexibility(h)
    orthant = cone((1, 0), (0, 1))
    if h.sigma_dual != orthant or h.sigma != orthant:
        fails.append(("orthant", h.sigma_dual, h.sigma))
    if h.theta != cone((1, 0), ambient_dim=2):
        fails.append(("theta", h.theta))
    st = _status(rep, (0, 1)).status
    if not isinstance(st, NowhereSaturatedCertified):
        fails.append(("rho2 status", st))
    elif not st.obstruction.replay(h.gens_M, _face_of(h, (0, 1)).dual_support):
        fails.append(("rho2 certificate does not replay", st))
    orbit = next(o for o in orbit_lattice(h) if o.face.tau.extremal == ((1, 0),))
    if orbit.codim != 2:
        fails.append(("codim of O_rho1", orbit.codim))
    gamma = cone((1, 0), ambient_dim=2)
    if rep.gamma_min != gamma or rep.gamma_max != gamma:
        fails.append(("gamma", rep.gamma_min, rep.gamma_max))
    if rep.verdict != NOT_FLEXIBLE:
        fails.append(("verdict", rep.verdict))
    n = rep.hyperplane_normal
    if n is None or not any(n) or any(_dot(n, v) for v in rep.gamma_max.rays):
        fails.append(("hyperplane certificate", n))
    record(1, fails, "Example 1: NOT_FLEXIBLE, gamma = cone((1,0)), certified obstruction", t0)


# -- 2 -----------------------------------------------------------------------------------

def _brute_roots(h, ray, height):
    """All valid LND degrees of 1-norm at most ``height``, from the definitions only."""
    s = h.semigroup
    gens = [g for g in h.gens_M if any(g)]
    ideal = [g for g in gens if _dot(g, ray) > 0]
    found = []
    for e in product(range(-height, height + 1), repeat=h.rank):
        if sum(map(abs, e)) > height or _dot(ray, e) != -1:
            continue
        if any(_dot(u, e) < 0 for u in h.sigma.rays if u != tuple(ray)):
            continue
        if not h.theta_dual.contains(e):
            continue
        targets = [tuple(a + b for a, b in zip(g, e)) for g in ideal]
        bound = max(_dot(s.grading, t) for t in targets) // min(_dot(s.grading, g) for g in gens) + 1
        if all(oracle.brute_member(gens, t, bound) for t in targets):
            found.append(e)
    return sorted(found, key=lambda e: (sum(map(abs, e)), e))


def test_criterion_2_example_two():
    t0 = time.perf_counter()
    fails = []
    h = build(A1T1, [(2, 0), (1, 1), (1, 2)])
    rep = flexibility(h)
    if h.sigma_dual != cone((1, 0), (1, 2)):
        fails.append(("sigma_dual", h.sigma_dual))
    if h.sigma != cone((2, -1), (0, 1)):
        fails.append(("sigma", h.sigma))
    s = h.semigroup
    st1 = _status(rep, (2, -1)).status
    if not isinstance(st1, AlmostSaturated):
        fails.append(("rho1 status", st1))
    else:
        w = st1.witness
        mg = module_generators(s)
        ok = (_dot(w, (2, -1)) == 0 and s.member(w) and is_saturation_point(s, mg, w)
              and oracle.brute_saturation_point(h.gens_M, w, _dot(s.grading, w) + 12, s.grading))
        if not ok:
            fails.append(("witness does not replay", w))
    st2 = _status(rep, (0, 1)).status
    if not isinstance(st2, NowhereSaturatedCertified) or not st2.obstruction.replay(
            h.gens_M, _face_of(h, (0, 1)).dual_support):
        fails.append(("rho2 status", st2))
    if rep.gamma_min != cone((1, 0), (2, -1)) or rep.gamma_max != rep.gamma_min:
        fails.append(("gamma", rep.gamma_min))
    if rep.verdict != FLEXIBLE:
        fails.append(("verdict", rep.verdict))
    root = find_lnd_root(h, (2, -1))
    if not isinstance(root, LndRoot) or not all(ok for _, _, ok in root.shift_checks):
        fails.append(("lnd root", root))
    else:
        brute = _brute_roots(h, (2, -1), 4)
        if not brute or root.e != brute[0] or root.e != (1, 3):
            fails.append(("minimal root", root.e, brute))
    record(2, fails, "Example 2: FLEXIBLE, witness replayed, minimal LND degree (1,3)", t0)


# -- 3 -----------------------------------------------------------------------------------

def test_criterion_3_specializations():
    t0 = time.perf_counter()
    fails = []
    for (g, gens), h, rep in family("semisimple"):
        if rep.verdict != FLEXIBLE:
            fails.append(("s=0", str(g), gens, rep.verdict))
    for (g, gens, _), h, rep in family("saturated"):
        expected = FLEXIBLE if h.sigma.is_full_dimensional else NOT_FLEXIBLE
        if rep.verdict != expected:
            fails.append(("saturated", str(g), gens, rep.verdict))
    for (g, gens), h, rep in family("torus"):
        toric = oracle.toric_flexible_2d(h.gens_M) if h.rank == 2 else False
        if rep.verdict not in (FLEXIBLE, NOT_FLEXIBLE) or (rep.verdict == FLEXIBLE) != toric:
            fails.append(("torus", gens, rep.verdict, toric))
    kinds = {rep.verdict for _, _, rep in family("saturated")} | {rep.verdict for _, _, rep in family("torus")}
    if kinds != {FLEXIBLE, NOT_FLEXIBLE}:
        fails.append(("families do not exercise both verdicts", kinds))
    record(3, fails, "3 x 20 specialization instances agree", t0)


# -- 4 -----------------------------------------------------------------------------------

def test_criterion_4_finite_holes():
    t0 = time.perf_counter()
    fails = []
    for (g, gens, hole), h, rep in family("finite_holes"):
        s = h.semigroup
        mg = rep.module_gens
        low = max(_dot(s.grading, m) for m in mg.gens)
        top = low + s.completeness_degree()
        holes = oracle.brute_holes(h.gens_M, top, s.grading)
        if len(holes) > 1 or any(_dot(s.grading, v) > low for v in holes):
            fails.append(("holes not confined to low degree", gens, holes))
            continue
        if not mg.complete:
            fails.append(("module generators do not certify cover", gens))
        expected = FLEXIBLE if h.sigma.is_full_dimensional else NOT_FLEXIBLE
        if rep.verdict != expected:
            fails.append(("verdict", str(g), gens, rep.verdict))
    record(4, fails, "20 finite-holes instances: verdict = full-dimensionality of sigma", t0)


# -- 5 -----------------------------------------------------------------------------------

DEGREE = 12


def test_criterion_5_oracle_equivalence():
    t0 = time.perf_counter()
    fails = []
    insts = shipped()
    assert len(insts) >= 10
    checked = 0
    for name, h in insts:
        s = h.semigroup
        gens = [g for g in h.gens_M if any(g)]
        w = s.grading
        box, inside = oracle.lattice_box(gens, w, DEGREE)
        reach = oracle.reachable(gens, DEGREE // min(_dot(w, g) for g in gens))
        if reach & set(box) != oracle.members_up_to(gens, w, DEGREE, box):
            fails.append((name, "oracle routes disagree"))
        radius = max(max(abs(x) for x in v) for v in box) + 1
        outside = [v for v in product(range(-radius, radius + 1), repeat=h.rank) if not inside(v)]
        for v in box + outside:
            checked += 1
            if s.member(v) != (v in reach):
                fails.append((name, "member", v))
        if saturation_holes(s, DEGREE) != oracle.brute_holes(gens, DEGREE, w):
            fails.append((name, "holes"))
        mg = module_generators(s)
        cands = [v for v in box if v in reach]
        slack = _completeness_degree(gens, w, h.rank)
        brute = oracle.brute_saturation_points(gens, cands, slack, w)
        for p in cands:
            checked += 1
            if is_saturation_point(s, mg, p) != brute[p]:
                fails.append((name, "saturation point", p))
    record(5, fails, f"{len(insts)} semigroups, {checked} points up to degree {DEGREE}", t0)


# -- 6 -----------------------------------------------------------------------------------

def _lnd_cases():
    """(semigroup, derivation) for every significant ray with a root, across the corpus."""
    out = []
    hs = [h for _, h in shipped()] + [h for _, h, _ in family("torus")]
    for h in hs:
        rep = flexibility(h, with_roots=True)
        for root in rep.lnd_roots:
            if isinstance(root, LndRoot):
                out.append((h.semigroup, HomogeneousDerivation(root.e, root.ray)))
    return out


def _random_weight(rng, s):
    gens = [g for g in s.gens if any(g)]
    w = [0] * s.lattice_rank
    for g in gens:
        k = rng.randint(0, 2)
        w = [a + k * b for a, b in zip(w, g)]
    return tuple(w)


def _random_element(rng, s):
    return element(s, {_random_weight(rng, s): Fraction(rng.randint(-5, 5) or 1, rng.randint(1, 4))
                       for _ in range(rng.randint(1, 3))})


def test_criterion_6_lnd_properties():
    t0 = time.perf_counter()
    rng = random.Random(606)
    cases = _lnd_cases()
    fails = []
    if len(cases) < 5:
        fails.append(("too few LND cases", len(cases)))
    for _ in range(200):
        s, d = rng.choice(cases)
        a, b = _random_element(rng, s), _random_element(rng, s)
        if apply(d, a * b) != apply(d, a) * b + a * apply(d, b):
            fails.append(("leibniz", d, a, b))
    for _ in range(50):
        s, d = rng.choice(cases)
        lam = _random_weight(rng, s)
        if nilpotency_order(d, s, lam) != _dot(lam, d.ray) + 1:
            fails.append(("nilpotency", d, lam))
    for _ in range(50):
        s, d = rng.choice(cases)
        x = _random_element(rng, s)
        u, v = Fraction(rng.randint(-6, 6), rng.randint(1, 3)), Fraction(rng.randint(-6, 6), rng.randint(1, 3))
        if exp_action(d, u, exp_action(d, v, x)) != exp_action(d, u + v, x):
            fails.append(("group law", d, x, u, v))
    kernel_hits = 0
    for _ in range(100):
        s, d = rng.choice(cases)
        on_facet = [g for g in s.gens if _dot(g, d.ray) == 0]
        lam = _random_weight(rng, s)
        if on_facet and rng.random() < 0.5:
            ks = [rng.randint(0, 2) for _ in on_facet]
            lam = tuple(sum(k * g[i] for k, g in zip(ks, on_facet)) for i in range(s.lattice_rank))
        killed = apply(d, symbol(s, lam)).is_zero
        kernel_hits += killed
        if killed != (_dot(lam, d.ray) == 0):
            fails.append(("kernel", d, lam))
    if not kernel_hits:
        fails.append(("kernel samples never hit the kernel",))
    record(6, fails, f"Leibniz 200, nilpotency 50, group law 50, kernel 100 over {len(cases)} derivations", t0)


# -- 7 -----------------------------------------------------------------------------------

def _all_instances():
    out = [("shipped:" + name, h) for name, h in shipped()]
    for name in sample_names():
        g, gens = load_sample(name)
        out.append(("sample:" + name, build(g, gens)))
    for fam in ("semisimple", "saturated", "torus", "finite_holes"):
        out += [(f"{fam}:{i}", h) for i, (_, h, _) in enumerate(family(fam))]
    return out


def structural_violations(name, h):
    bad = []
    rep = flexibility(h)
    r = h.rank
    for label, c in (("sigma_dual", h.sigma_dual), ("sigma", h.sigma), ("theta", h.theta),
                     ("theta_dual", h.theta_dual), ("gamma_min", rep.gamma_min), ("gamma_max", rep.gamma_max)):
        if dual_cone(dual_cone(c)) != c:
            bad.append((name, "double duality", label))
    if dual_cone(h.sigma_dual) != h.sigma:
        bad.append((name, "sigma is not the dual of sigma_dual"))
    for fp in faces(h.sigma):
        if fp.tau.dim + fp.tau_hat.dim != r:
            bad.append((name, "face dimensions", fp.tau.rays))
        if any(_dot(u, v) for u in fp.tau.rays for v in fp.tau_hat.rays):
            bad.append((name, "dual face not orthogonal", fp.tau.rays))
    by_theta = [v for v in h.sigma.extremal if not h.theta.contains(v)]
    by_orbit = [o.face.tau.extremal[0] for o in orbit_lattice(h)
                if len(o.face.tau.extremal) == 1 and o.face.tau.lineality == () and o.codim == 1]
    if sorted(by_theta) != sorted(by_orbit) or sorted(codim_one_rays(h)) != sorted(by_theta):
        bad.append((name, "codim-1 characterizations", by_theta, by_orbit))
    chain = (h.theta, rep.gamma_min, rep.gamma_max, h.sigma)
    if not all(b.contains_cone(a) for a, b in zip(chain, chain[1:])):
        bad.append((name, "theta <= gamma <= sigma"))
    return bad


def test_criterion_7_structural_invariants():
    t0 = time.perf_counter()
    insts = _all_instances()
    fails = [v for name, h in insts for v in structural_violations(name, h)]
    record(7, fails, f"{len(insts)} instances, zero violations", t0)


def summary_lines() -> list[str]:
    return [f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}" for n, (ok, detail) in sorted(RESULTS.items())]


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    for t in tests:
        try:
            t()
        except AssertionError:
            pass
    print("\n".join(summary_lines()))
    sys.exit(0 if all(ok for ok, _ in RESULTS.values()) and len(RESULTS) == 7 else 1)
