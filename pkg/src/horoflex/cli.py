"""Command-line front end.

    horoflex analyze samples/example2.json
    horoflex flexibility --quiet samples/example1.json
    horoflex holes --bounds degree=10 samples/example1.json
    horoflex analyze samples/example2.json > report.json && horoflex verify report.json

Exit codes: 0 success, 1 failed verification or oracle disagreement,
2 malformed input, 3 UNDECIDED verdict under ``--strict``.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from . import oracle
from .cones import demazure_roots
from .errors import HoroflexError, Inconsistent, NoLndExists
from .horospherical import (
    UNDECIDED,
    Bounds,
    HoroVariety,
    LndNotFound,
    build,
    codim_one_rays,
    dimension,
    find_lnd_root,
    flexibility,
    ideal_generators,
    orbit_lattice,
    resolve_ray,
)
from .lndengine import HomogeneousDerivation, nilpotency_order
from .report import (
    BadDocument,
    build_report,
    dumps,
    parse_bounds,
    parse_input,
    verify_report,
)
from .semigroup import AlmostSaturated, hilbert_basis, module_generators, saturation_holes

EXIT_OK, EXIT_FAIL, EXIT_BAD_INPUT, EXIT_UNDECIDED = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read_json(path: str) -> Any:
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None


def _bounds_from_flags(flags: list[str], base: Bounds) -> Bounds:
    raw = {}
    for item in flags or []:
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"--bounds expects key=value, got {item!r}")
        raw[key.strip()] = value.strip()
    return parse_bounds(raw, base)


def _load(args) -> tuple[HoroVariety, Bounds]:
    group, gens, bounds = parse_input(_read_json(args.input))
    bounds = _bounds_from_flags(args.bounds, bounds)
    h = build(group, gens)
    return h, bounds.resolve(h.semigroup)


# -- commands ----------------------------------------------------------------------

def cmd_analyze(args) -> tuple[dict, str | None]:
    h, b = _load(args)
    rep = flexibility(h, b, with_roots=True)
    doc = build_report(h, rep)
    if args.oracle:
        doc["oracle"] = _oracle_section(h, b, rep.verdict)
    return doc, rep.verdict


def cmd_flexibility(args) -> tuple[dict, str | None]:
    h, b = _load(args)
    rep = flexibility(h, b)
    full = build_report(h, rep)
    keys = ("verdict", "dim_X", "gamma_min_rays", "gamma_max_rays", "ray_statuses", "bounds_used")
    doc = {k: full[k] for k in keys}
    doc["hyperplane_normal"] = full["certificates"]["hyperplane_normal"]
    if args.oracle:
        doc["oracle"] = _oracle_section(h, b, rep.verdict)
    return doc, rep.verdict


def cmd_orbits(args) -> tuple[dict, str | None]:
    h, b = _load(args)
    orbits = orbit_lattice(h, b, with_regularity=True)
    return {
        "dim_X": dimension(h),
        "orbits": [
            {
                "face_rays": [list(v) for v in o.face.tau.rays],
                "dual_face_rays": [list(v) for v in o.face.tau_hat.rays],
                "dim": o.orbit_dim,
                "codim": o.codim,
                "closure_contains": list(o.closure_contains),
                "regularity": o.regularity,
            }
            for o in orbits
        ],
    }, None


def cmd_holes(args) -> tuple[dict, str | None]:
    h, b = _load(args)
    s = h.semigroup
    mg = module_generators(s, b.module_degree)
    doc = {
        "degree_bound": b.degree,
        "grading": list(s.grading),
        "holes": [list(v) for v in saturation_holes(s, b.degree)],
        "hilbert_basis": [list(v) for v in hilbert_basis(s, b.degree)],
        "module_generators": {"gens": [list(m) for m in mg.gens],
                              "certified_up_to": mg.certified_up_to, "complete": mg.complete},
    }
    if args.oracle:
        doc["oracle"] = _oracle_section(h, b, None)
    return doc, None


def _selected_rays(h: HoroVariety, args) -> list:
    if args.ray is None:
        return list(h.sigma.extremal)
    return [resolve_ray(h, args.ray)]


def cmd_roots(args) -> tuple[dict, str | None]:
    h, b = _load(args)
    s = h.semigroup
    codim1 = set(codim_one_rays(h))
    out = []
    for v in _selected_rays(h, args):
        idx = h.sigma.extremal.index(v)
        ideal = ideal_generators(h, v)
        roots = []
        for root in demazure_roots(h.sigma, idx, b.root_height):
            shift_ok = all(s.member(tuple(x + y for x, y in zip(g, root.e))) for g in ideal)
            roots.append({"e": list(root.e), "in_theta_dual": h.theta_dual.contains(root.e),
                          "shift_ok": shift_ok})
        out.append({"ray": list(v), "codim1": v in codim1,
                    "ideal_generators": [list(g) for g in ideal], "roots": roots})
    return {"root_height": b.root_height, "rays": out}, None


def cmd_lnd(args) -> tuple[dict, str | None]:
    h, b = _load(args)
    codim1 = codim_one_rays(h)
    rays = [v for v in _selected_rays(h, args) if v in codim1]
    out = []
    for v in rays:
        entry: dict[str, Any] = {"ray": list(v)}
        try:
            res = find_lnd_root(h, v, b)
        except NoLndExists as exc:
            entry.update(status="no_lnd", reason=str(exc))
        else:
            if isinstance(res, LndNotFound):
                entry.update(status="not_found", bound=res.bound)
            else:
                d = HomogeneousDerivation(res.e, v)
                entry.update(
                    status="found", e=list(res.e), method=res.method,
                    shift_checks=[{"generator": list(g), "sum": list(t), "member": ok}
                                  for g, t, ok in res.shift_checks],
                    nilpotency=[{"weight": list(g), "order": nilpotency_order(d, h.semigroup, g)}
                                for g in sorted(set(h.gens_M))],
                )
        out.append(entry)
    return {"lnd": out}, None


def cmd_verify(args) -> tuple[dict, str | None]:
    doc = _read_json(args.input)
    checks = verify_report(doc)
    ok = all(passed for _, passed in checks)
    return {"ok": ok, "checks": [{"check": name, "passed": passed} for name, passed in checks]}, \
        ("OK" if ok else "FAILED")


# -- oracle cross-check ------------------------------------------------------------

def _oracle_section(h: HoroVariety, b: Bounds, verdict: str | None) -> dict:
    s = h.semigroup
    out: dict[str, Any] = {}
    if s.cone.lineality:
        out["skipped"] = "oracle needs a pointed cone"
        out["agree"] = True
        return out
    gens = [g for g in h.gens_M if any(g)]
    deg = min(b.degree, 12)
    holes_engine = saturation_holes(s, deg)
    holes_oracle = oracle.brute_holes(gens, deg, s.grading)
    out["holes_degree"] = deg
    out["holes_agree"] = holes_engine == holes_oracle
    agree = out["holes_agree"]
    witnesses = []
    mg = module_generators(s, b.module_degree)
    for rs in flexibility(h, b).ray_statuses:
        if isinstance(rs.status, AlmostSaturated):
            p = rs.status.witness
            bound = s.degree(p) + s.completeness_degree()
            ok = oracle.brute_saturation_point(gens, p, bound, s.grading)
            witnesses.append({"ray": list(rs.ray), "witness": list(p), "agree": ok})
            agree = agree and ok
    out["witnesses"] = witnesses
    if not h.group.simple_factors and h.rank == 2 and verdict is not None:
        toric = oracle.toric_flexible_2d(h.gens_M)
        out["toric_flexible"] = toric
        out["toric_agree"] = toric == (verdict == "FLEXIBLE")
        agree = agree and out["toric_agree"]
    out["agree"] = agree
    return out


# -- rendering ---------------------------------------------------------------------

def _text(obj: Any, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and not _flat(v):
                lines.append(f"{pad}-")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(pad + _scalar(obj))
    return lines


def _flat(v) -> bool:
    if isinstance(v, list):
        return all(not isinstance(x, (dict, list)) or (isinstance(x, list) and _flat(x)) for x in v)
    return False


def _scalar(v) -> str:
    if isinstance(v, list):
        return "(" + ", ".join(_scalar(x) for x in v) + ")"
    if v is None:
        return "-"
    return str(v)


COMMANDS = {
    "analyze": (cmd_analyze, "full analysis with replayable certificates"),
    "flexibility": (cmd_flexibility, "verdict and regularity cone"),
    "orbits": (cmd_orbits, "G-orbits with dimensions and closure order"),
    "holes": (cmd_holes, "holes, Hilbert basis and module generators"),
    "roots": (cmd_roots, "Demazure roots of sigma with their LND checks"),
    "lnd": (cmd_lnd, "homogeneous LND degrees for codimension-one rays"),
    "verify": (cmd_verify, "replay the certificates of a report"),
}


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", help="JSON document, or - for stdin")
    common.add_argument("--bounds", action="append", metavar="KEY=VALUE",
                        help="override a search bound (degree, module_degree, search_degree, root_height)")
    common.add_argument("--oracle", action="store_true", help="cross-check against brute-force oracles")
    common.add_argument("--strict", action="store_true", help="exit with status 3 on an UNDECIDED verdict")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--quiet", action="store_true", help="print only the verdict")
    parser = argparse.ArgumentParser(prog="horoflex",
                                     description="Flexibility of affine horospherical varieties.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        if name in ("roots", "lnd"):
            p.add_argument("--ray", type=int, help="index of a ray of sigma (default: all)")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    func = COMMANDS[args.command][0]
    try:
        doc, verdict = func(args)
    except Inconsistent as exc:
        print(f"horoflex: internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (UsageError, HoroflexError) as exc:
        print(f"horoflex: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    if args.quiet and verdict is not None:
        print(verdict)
    elif args.format == "text":
        print("\n".join(_text(doc)))
    else:
        sys.stdout.write(dumps(doc))
    if args.command == "verify" and not doc["ok"]:
        return EXIT_FAIL
    if doc.get("oracle", {}).get("agree") is False:
        print("horoflex: oracle disagreement", file=sys.stderr)
        return EXIT_FAIL
    if args.strict and verdict == UNDECIDED:
        return EXIT_UNDECIDED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
