"""JSON input and report documents, and replay of report certificates.

Integers are written as JSON numbers when they fit in 53 bits and as decimal
strings otherwise; rationals are always strings ``"p/q"``.  Keys are sorted
and the layout fixed, so equal inputs give byte-identical reports.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any

from .errors import HoroflexError, ShapeMismatch
from .exactlat.feasibility import CongruenceCertificate, FarkasCertificate
from .exactlat.vectors import dot, rank
from .horospherical import (
    Bounds,
    FLEXIBLE,
    NOT_FLEXIBLE,
    FlexReport,
    HoroVariety,
    LndRoot,
    build,
    flexibility,
    orbit_lattice,
)
from .rootsystem import GroupSpec
from .semigroup import AlmostSaturated, FaceObstruction, NowhereSaturatedCertified

FORMAT = "horoflex-report/1"
_SAFE = 2 ** 53


class BadDocument(HoroflexError):
    """Malformed input or report document."""


# -- scalar encoding ---------------------------------------------------------------

def enc(obj: Any) -> Any:
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj if -_SAFE < obj < _SAFE else str(obj)
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, dict):
        return {str(k): enc(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [enc(x) for x in obj]
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dec_int(x: Any) -> int:
    if isinstance(x, bool):
        raise BadDocument(f"expected an integer, got {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x)
        except ValueError:
            pass
    raise BadDocument(f"expected an integer, got {x!r}")


def dec_frac(x: Any) -> Fraction:
    if isinstance(x, str):
        try:
            return Fraction(x)
        except ValueError:
            raise BadDocument(f"expected a rational, got {x!r}") from None
    return Fraction(dec_int(x))


def dec_vec(x: Any) -> tuple[int, ...]:
    if not isinstance(x, list):
        raise BadDocument(f"expected a list of integers, got {x!r}")
    return tuple(dec_int(c) for c in x)


_FLAT_LIST = re.compile(r"\[\s*((?:-?\d+|\"[^\"\[\]{}]*\"|null|true|false)(?:,\s*(?:-?\d+|\"[^\"\[\]{}]*\"|null|true|false))*)\s*\]")


def dumps(doc: dict) -> str:
    """Canonical text: sorted keys, two-space indent, scalar lists on one line."""
    text = json.dumps(enc(doc), indent=2, sort_keys=True, ensure_ascii=False)
    text = _FLAT_LIST.sub(lambda m: json.dumps(json.loads(m.group(0)), ensure_ascii=False), text)
    return text + "\n"


# -- input documents ---------------------------------------------------------------

def parse_input(doc: Any) -> tuple[GroupSpec, list[tuple[int, ...]], Bounds]:
    if not isinstance(doc, dict):
        raise BadDocument("input must be a JSON object")
    g = doc.get("group")
    if not isinstance(g, dict):
        raise BadDocument("missing 'group' object")
    factors = g.get("simple_factors", [])
    if not isinstance(factors, list):
        raise BadDocument("'simple_factors' must be a list")
    parsed = []
    for f in factors:
        if not isinstance(f, dict) or "type" not in f or "rank" not in f:
            raise BadDocument(f"bad simple factor {f!r}")
        if not isinstance(f["type"], str):
            raise BadDocument(f"bad simple factor type {f['type']!r}")
        parsed.append((f["type"], dec_int(f["rank"])))
    group = GroupSpec(tuple(parsed), dec_int(g.get("torus_rank", 0)))
    gens = doc.get("generators")
    if not isinstance(gens, list):
        raise BadDocument("missing 'generators' list")
    gens = [dec_vec(v) for v in gens]
    for v in gens:
        if len(v) != group.ambient_dim:
            raise ShapeMismatch(f"generator {v} has length {len(v)}, expected {group.ambient_dim}")
    bounds = parse_bounds(doc.get("bounds") or {})
    return group, gens, bounds


_BOUND_KEYS = ("degree", "module_degree", "search_degree", "root_height")


def parse_bounds(raw: dict, base: Bounds | None = None) -> Bounds:
    if not isinstance(raw, dict):
        raise BadDocument("'bounds' must be an object")
    values = (base or Bounds()).as_dict()
    for k, v in raw.items():
        if k not in _BOUND_KEYS:
            raise BadDocument(f"unknown bound {k!r}; expected one of {', '.join(_BOUND_KEYS)}")
        n = dec_int(v)
        if n < 0:
            raise BadDocument(f"bound {k} must be nonnegative")
        values[k] = n
    return Bounds(**values)


def input_document(group: GroupSpec, gens) -> dict:
    return {
        "group": {
            "simple_factors": [{"type": t, "rank": n} for t, n in group.simple_factors],
            "torus_rank": group.torus_rank,
        },
        "generators": [list(v) for v in gens],
    }


# -- report documents --------------------------------------------------------------

def _status_doc(h: HoroVariety, ray, status) -> dict:
    s = h.semigroup
    if status is None:
        return {"kind": None}
    if isinstance(status, AlmostSaturated):
        p = status.witness
        return {
            "kind": "almost_saturated",
            "witness": list(p),
            "witness_multiplicities": list(s.member_certificate(p)),
        }
    if isinstance(status, NowhereSaturatedCertified):
        return {"kind": "nowhere_saturated", "obstruction": _obstruction_doc(status.obstruction)}
    return {"kind": "undecided", "bound": status.bound}


def _obstruction_doc(ob: FaceObstruction) -> dict:
    out = {"module_generator": list(ob.module_generator), "method": ob.kind}
    c = ob.certificate
    if isinstance(c, FarkasCertificate):
        out["y"] = list(c.y)
    elif isinstance(c, CongruenceCertificate):
        out["y"] = list(c.y)
        out["forced"] = list(c.forced)
        out["w"] = list(c.w)
    return out


def _lnd_doc(h: HoroVariety, root: LndRoot) -> dict:
    s = h.semigroup
    return {
        "ray": list(root.ray),
        "e": list(root.e),
        "method": root.method,
        "shift_checks": [
            {"generator": list(g), "sum": list(t), "multiplicities": list(s.member_certificate(t))}
            for g, t, _ in root.shift_checks
        ],
    }


def build_report(h: HoroVariety, rep: FlexReport) -> dict:
    s = h.semigroup
    mg = rep.module_gens
    orbits = orbit_lattice(h)
    statuses = {rs.ray: rs for rs in rep.ray_statuses}
    ray_docs = []
    for v in h.sigma.extremal:
        rs = statuses[v]
        doc = {"ray": list(v), "codim1": rs.codim1, "significant": rs.significant}
        doc["status"] = _status_doc(h, v, rs.status) if rs.codim1 else {"kind": None}
        ray_docs.append(doc)
    witness_sums = {}
    for rs in rep.ray_statuses:
        if isinstance(rs.status, AlmostSaturated):
            p = rs.status.witness
            for m in mg.gens:
                t = tuple(a + b for a, b in zip(p, m))
                witness_sums[t] = list(s.member_certificate(t))
    return {
        "format": FORMAT,
        "input": input_document(h.group, h.ambient_gens),
        "lattice_rank": h.rank,
        "lattice_basis": [list(r) for r in h.M.basis_rows],
        "generators_M": [list(g) for g in h.gens_M],
        "sigma_dual_rays": [list(v) for v in h.sigma_dual.rays],
        "sigma_rays": [list(v) for v in h.sigma.rays],
        "theta_dual_rays": [list(v) for v in h.theta_dual.rays],
        "theta_rays": [list(v) for v in h.theta.rays],
        "dim_X": rep.dim_X,
        "orbits": [
            {
                "face_rays": [list(v) for v in o.face.tau.rays],
                "dual_face_rays": [list(v) for v in o.face.tau_hat.rays],
                "dim": o.orbit_dim,
                "codim": o.codim,
            }
            for o in orbits
        ],
        "module_generators": {
            "gens": [list(m) for m in mg.gens],
            "certified_up_to": mg.certified_up_to,
            "complete": mg.complete,
        },
        "ray_statuses": ray_docs,
        "gamma_min_rays": [list(v) for v in rep.gamma_min.rays],
        "gamma_max_rays": [list(v) for v in rep.gamma_max.rays],
        "verdict": rep.verdict,
        "certificates": {
            "hyperplane_normal": list(rep.hyperplane_normal) if rep.hyperplane_normal else None,
            "saturation_sums": [{"point": list(t), "multiplicities": c}
                                for t, c in sorted(witness_sums.items())],
            "lnd_roots": [_lnd_doc(h, r) for r in rep.lnd_roots],
        },
        "bounds_used": rep.bounds.as_dict(),
    }


def analyze(group: GroupSpec, gens, bounds: Bounds | None = None) -> tuple[HoroVariety, FlexReport, dict]:
    h = build(group, gens)
    rep = flexibility(h, bounds, with_roots=True)
    return h, rep, build_report(h, rep)


# -- replay ------------------------------------------------------------------------

def _combo(gens, mult) -> tuple[int, ...]:
    r = len(gens[0]) if gens else 0
    return tuple(sum(c * g[i] for c, g in zip(mult, gens)) for i in range(r))


def verify_report(doc: Any) -> list[tuple[str, bool]]:
    """Replay every certificate in a report using only arithmetic on its contents.

    Returns (check name, passed) pairs.  Only "exhaustive" face obstructions
    need a search, which is the bounded enumeration of representations
    described with them.
    """
    if not isinstance(doc, dict) or doc.get("format") != FORMAT:
        raise BadDocument("not a report document")
    checks: list[tuple[str, bool]] = []

    def check(name, ok):
        checks.append((name, bool(ok)))

    try:
        group, gens, _ = parse_input(doc["input"])
        basis = [dec_vec(r) for r in doc["lattice_basis"]]
        gens_m = [dec_vec(g) for g in doc["generators_M"]]
        sigma = [dec_vec(v) for v in doc["sigma_rays"]]
        theta = [dec_vec(v) for v in doc["theta_rays"]]
        mgens = [dec_vec(m) for m in doc["module_generators"]["gens"]]
        r = dec_int(doc["lattice_rank"])
    except (KeyError, TypeError) as exc:
        raise BadDocument(f"report is missing a field: {exc}") from None

    to_amb = lambda c: tuple(sum(ci * b[i] for ci, b in zip(c, basis)) for i in range(group.ambient_dim))
    check("generators re-expressed in the lattice basis", [to_amb(c) for c in gens_m] == list(gens))
    check("lattice basis has full rank", len(basis) == r and (r == 0 or rank(basis) == r))
    check("sigma rays are nonnegative on the generators",
          all(dot(v, g) >= 0 for v in sigma for g in gens_m))
    # theta is spanned by the fundamental-weight columns of the lattice basis.
    walls = [tuple(b[i] for b in basis) for i in range(group.semisimple_rank)]
    walls = [w for w in walls if any(w)]
    check("theta rays are chamber walls", all(
        any(rank([t, w]) == 1 and dot(t, w) > 0 for w in walls) for t in theta))
    check("theta lies in sigma", all(dot(t, g) >= 0 for t in theta for g in gens_m))
    check("module generators lie in the saturation",
          all(dot(v, m) >= 0 for v in sigma for m in mgens) and (not mgens or not any(mgens[0])))

    sums = {}
    for item in doc["certificates"]["saturation_sums"]:
        t, mult = dec_vec(item["point"]), dec_vec(item["multiplicities"])
        ok = all(c >= 0 for c in mult) and _combo(gens_m, mult) == t
        check(f"{list(t)} is a sum of generators", ok)
        sums[t] = ok

    significant = []
    for rd in doc["ray_statuses"]:
        v = dec_vec(rd["ray"])
        st = rd["status"]
        kind = st.get("kind")
        if kind == "almost_saturated":
            p = dec_vec(st["witness"])
            mult = dec_vec(st["witness_multiplicities"])
            ok = (all(c >= 0 for c in mult) and _combo(gens_m, mult) == p and dot(p, v) == 0
                  and all(sums.get(tuple(a + b for a, b in zip(p, m)), False) for m in mgens))
            check(f"saturation point {list(p)} on the facet of ray {list(v)}", ok)
            if ok and rd["codim1"]:
                significant.append(v)
        elif kind == "nowhere_saturated":
            ob = st["obstruction"]
            ok = _replay_obstruction(gens_m, v, ob)
            check(f"nowhere-saturated certificate for ray {list(v)}", ok)

    gmin = [dec_vec(v) for v in doc["gamma_min_rays"]]
    gmax = [dec_vec(v) for v in doc["gamma_max_rays"]]
    verdict = doc["verdict"]
    if verdict == FLEXIBLE:
        span = theta + significant
        check("theta and certified significant rays span N_Q", r == 0 or (span and rank(span) == r))
        check("gamma_min is full-dimensional", r == 0 or (gmin and rank(gmin) == r))
    elif verdict == NOT_FLEXIBLE:
        n = doc["certificates"]["hyperplane_normal"]
        n = dec_vec(n) if n is not None else None
        ok = n is not None and any(n) and all(dot(n, g) == 0 for g in gmax + walls)
        check("hyperplane contains gamma_max", ok)

    for lr in doc["certificates"]["lnd_roots"]:
        v, e = dec_vec(lr["ray"]), dec_vec(lr["e"])
        ok = dot(v, e) == -1 and all(dot(u, e) >= 0 for u in sigma if u != v)
        ok = ok and all(dot(a, e) >= 0 for a in walls)
        for sc in lr["shift_checks"]:
            g, t, mult = dec_vec(sc["generator"]), dec_vec(sc["sum"]), dec_vec(sc["multiplicities"])
            ok = ok and tuple(a + b for a, b in zip(g, e)) == t
            ok = ok and all(c >= 0 for c in mult) and _combo(gens_m, mult) == t
        check(f"Demazure root {list(e)} for ray {list(v)}", ok)
    return checks


def _replay_obstruction(gens_m, v, ob) -> bool:
    m = dec_vec(ob["module_generator"])
    method = ob["method"]
    if method == "lp":
        cert = FarkasCertificate(tuple(dec_frac(x) for x in ob["y"]))
    elif method == "congruence":
        cert = CongruenceCertificate(tuple(dec_frac(x) for x in ob["y"]),
                                     tuple(dec_int(x) for x in ob["forced"]),
                                     tuple(dec_frac(x) for x in ob["w"]))
    elif method == "exhaustive":
        cert = None
    else:
        return False
    return FaceObstruction(m, method, cert).replay(gens_m, v)
