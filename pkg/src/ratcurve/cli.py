"""Command-line front end.

    ratcurve construct --curve 14a2 --ell 3
    ratcurve circle --g "(2*z^3+(t+1)*z)/(z^2-t)" --field eisenstein
    ratcurve group-search --max-degree 9 --seed 7
    ratcurve plot --curve 14a2 --post "1/(1+z)" --svg curve.svg

Every command accepts --job FILE (TOML or JSON); flags override the file.
Exit codes: 0 success, 2 an Undecided verdict, 1 any error.
"""

import argparse
import json
import os
import sys
import time

from .errors import JobError, RatcurveError

DEFAULT_PRECISION = 128

COMMANDS = ("construct", "verify", "circle", "injective", "weak-injective", "group-search", "family", "plot")


def load_job(path):
    if not os.path.exists(path):
        raise JobError(f"job file not found: {path}")
    with open(path, "rb") as fh:
        raw = fh.read()
    if path.endswith(".json"):
        return json.loads(raw.decode("utf-8"))
    try:
        import tomllib
    except ImportError:  # Python < 3.11
        import tomli as tomllib
    return tomllib.loads(raw.decode("utf-8"))


def _precision(opts):
    if opts.get("precision") is not None:
        bits = int(opts["precision"])
    else:
        bits = int(os.environ.get("RATCURVE_PRECISION_BITS", DEFAULT_PRECISION))
    if not 32 <= bits <= 4096:
        raise JobError("precision must be between 32 and 4096 bits")
    return bits


def _field(opts):
    from .numfield import field_from_spec, get_field

    spec = opts.get("field")
    return field_from_spec(spec) if spec is not None else get_field("eisenstein")


def _function(opts, key="g", field=None):
    from .ratfunc import RationalFunction

    text = opts.get(key)
    if text is None:
        raise JobError(f"missing --{key}")
    return RationalFunction.parse(str(text), field or _field(opts))


def _curve_inputs(opts):
    """Catalog entry by name, or (E, c, w, ell) from explicit data."""
    from .elliptic import EllipticCurve, catalog_entry

    curve = opts.get("curve", "14a2")
    if isinstance(curve, str):
        entry = catalog_entry(curve)
        return entry, entry.curve, entry.c, entry.w, int(opts.get("ell") or entry.ell)
    K = _field(opts)
    E = EllipticCurve(K.parse(str(curve["a"])), K.parse(str(curve["b"])), K)
    c = E.point(*(K.parse(str(v)) for v in opts["c"]))
    w = E.point(*(K.parse(str(v)) for v in opts["w"]))
    if "ell" not in opts:
        raise JobError("explicit curves need ell")
    return None, E, c, w, int(opts["ell"])


def _has_undecided(obj):
    if isinstance(obj, dict):
        return obj.get("verdict") == "Undecided" or any(_has_undecided(v) for v in obj.values())
    if isinstance(obj, list):
        return any(_has_undecided(v) for v in obj)
    return False


# ---------------------------------------------------------------------------
# commands


def cmd_construct(opts):
    from .construction import attach_certificates, build_pair, match_reference, normalize_pair, replay_diagram
    from .ratfunc import RationalFunction

    entry, E, c, w, ell = _curve_inputs(opts)
    bits = _precision(opts)
    pair = build_pair(E, c, w, ell, certify=False)
    results = {"raw": {"f": str(pair.f), "g": str(pair.g), "h": str(pair.h)}}
    ok, n_g, n_f = replay_diagram(pair)
    results["replay"] = {"ok": ok, "points_g": n_g, "points_f": n_f}
    if entry is not None and entry.reference.get("h") and not opts.get("no_normalize"):
        K = entry.field
        fp, gp, hp = (RationalFunction.parse(entry.reference[k], K) for k in "fgh")
        match = match_reference(pair, fp, gp, hp, height=int(opts.get("height", 12)))
        results["reference_match"] = {k: (str(v) if not isinstance(v, bool) else v) for k, v in match.items()}
        if match.get("h_equivalent"):
            pair = normalize_pair(pair, match["inner"], match["outer"], match["mu"], certify=False)
    if not opts.get("no_certify"):
        attach_certificates(pair, precision=bits)
    results["pair"] = pair.describe()
    return results


def cmd_verify(opts):
    """Exact checks on a catalog curve: torsion, kernel, halving, dual identity, reference composition."""
    from .elliptic import (
        EllipticCurve, ec_mul, halving_obstruction, torsion_conjugate_check, velu, dual_isogeny, verify_dual,
    )
    from .ratfunc import RationalFunction, rf_compose

    entry, E, c, w, ell = _curve_inputs(opts)
    out = {
        "order_ell": ec_mul(ell, c).is_infinity(),
        "torsion_conjugate_check": torsion_conjugate_check(E, c, ell),
        "halving_obstruction": halving_obstruction(E, w),
    }
    phi = velu(E, c, ell)
    dual = dual_isogeny(phi, ell)
    out["dual_identity"] = verify_dual(phi, dual, ell, check_y=ell <= 3)
    if entry is not None and "a_prime" in entry.reference:
        Ep = EllipticCurve(entry.reference["a_prime"], entry.reference["b_prime"], entry.field)
        out["codomain_j_matches"] = phi.codomain.j_invariant() == Ep.j_invariant()
    if entry is not None and "h" in entry.reference:
        K = entry.field
        fp, gp, hp = (RationalFunction.parse(entry.reference[k], K) for k in "fgh")
        out["reference_composition"] = rf_compose(fp, gp) == hp
    out["ok"] = all(out.values())
    return out


def cmd_circle(opts):
    from .certificates import circle_test

    return circle_test(_function(opts)).to_dict()


def cmd_injective(opts):
    from .certificates import certify_injective

    return certify_injective(_function(opts), precision=_precision(opts)).to_dict()


def cmd_weak_injective(opts):
    from .certificates import certify_weakly_injective

    return certify_weakly_injective(_function(opts), height=int(opts.get("height", 5))).to_dict()


def cmd_group_search(opts):
    from .permcheck import search

    rep = search(
        max_degree=int(opts.get("max_degree", 9)),
        group_budget=int(opts.get("budget", 50)),
        order_cap=int(opts.get("order_cap", 20000)),
        seed=int(opts.get("seed", 0)),
    )
    if not opts.get("entries"):
        rep = {k: v for k, v in rep.items() if k != "entries"}
    return rep


def cmd_family(opts):
    from .families import family_instance

    spec = opts.get("spec")
    if not spec:
        raise JobError("missing --spec, e.g. pakovich:n=5,zeta_order=5")
    return family_instance(spec, samples=int(opts.get("samples") or 0)).describe()


def cmd_plot(opts):
    from .certificates import sample_curve
    from .elliptic import catalog_entry
    from .geometry import circle_fit_residual, count_self_intersections, is_closed
    from .ratfunc import RationalFunction
    from .report import emit_plot

    if opts.get("g"):
        K = _field(opts)
        g = _function(opts, "g", K)
    else:
        entry = catalog_entry(opts.get("curve") or "14a2")
        K = entry.field
        g = RationalFunction.parse(entry.reference["g"], K)
    post = RationalFunction.parse(opts["post"], K) if opts.get("post") else None
    n = int(opts.get("samples") or 2000)
    samples = sample_curve(g, post, n, _precision(opts))
    svg = opts.get("svg") or "curve.svg"
    svg_path, csv_path = emit_plot(samples, svg, opts.get("csv"))
    pts = [s.point() for s in samples]
    _, _, resid = circle_fit_residual(pts)
    results = {
        "svg": svg_path,
        "csv": csv_path,
        "samples": n,
        "skipped": sum(s.skipped for s in samples),
        "closed": is_closed(pts),
        "self_intersections": count_self_intersections(pts),
        "circle_fit_residual": round(resid, 6),
    }
    if opts.get("png"):
        from .figures import render_curve

        results["png"] = render_curve(samples, opts["png"])
    return results


HANDLERS = {
    "construct": cmd_construct,
    "verify": cmd_verify,
    "circle": cmd_circle,
    "injective": cmd_injective,
    "weak-injective": cmd_weak_injective,
    "group-search": cmd_group_search,
    "family": cmd_family,
    "plot": cmd_plot,
}


# ---------------------------------------------------------------------------
# argument handling


def build_parser():
    p = argparse.ArgumentParser(prog="ratcurve", description=__doc__.split("\n\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--job", help="TOML or JSON job file")
        sp.add_argument("--out", help="write the JSON report here instead of stdout")
        sp.add_argument("--precision", type=int, help="interval precision in bits")
        sp.add_argument("--field", help="field name, e.g. eisenstein, gaussian, cyclotomic:5")
        return sp

    sp = common(sub.add_parser("construct", help="run the isogeny construction"))
    sp.add_argument("--curve", help="catalog curve name (14a2, ell5)")
    sp.add_argument("--ell", type=int)
    sp.add_argument("--height", type=int, help="height bound of the normalisation search")
    sp.add_argument("--no-certify", action="store_true", default=None)
    sp.add_argument("--no-normalize", action="store_true", default=None)

    sp = common(sub.add_parser("verify", help="exact checks on a catalog curve"))
    sp.add_argument("--curve")
    sp.add_argument("--ell", type=int)

    for name in ("circle", "injective", "weak-injective"):
        sp = common(sub.add_parser(name))
        sp.add_argument("--g", help="rational function in z; t is the field generator")
        if name == "weak-injective":
            sp.add_argument("--height", type=int)

    sp = common(sub.add_parser("group-search", help="permutation-group sweep"))
    sp.add_argument("--max-degree", type=int)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--budget", type=int)
    sp.add_argument("--order-cap", type=int)
    sp.add_argument("--entries", action="store_true", default=None, help="include every checked pair")

    sp = common(sub.add_parser("family", help="explicit example families"))
    sp.add_argument("--spec", help="e.g. pakovich:n=5,zeta_order=5")
    sp.add_argument("--samples", type=int)

    sp = common(sub.add_parser("plot", help="sample g(R-hat) and write SVG + CSV"))
    sp.add_argument("--g")
    sp.add_argument("--curve")
    sp.add_argument("--post", help="post-composition, e.g. 1/(1+z)")
    sp.add_argument("--samples", type=int)
    sp.add_argument("--svg")
    sp.add_argument("--csv")
    sp.add_argument("--png", help="also render with matplotlib")
    return p


def _options(args):
    opts = {}
    if args.job:
        job = load_job(args.job)
        if job.get("command") not in (None, args.command):
            raise JobError(f"job file is for {job['command']!r}, not {args.command!r}")
        opts.update({k.replace("-", "_"): v for k, v in job.items()})
    for key, val in vars(args).items():
        if val is not None and key not in ("job", "command"):
            opts[key] = val
    return opts


def run(argv=None):
    """Parse ``argv``, run the command, and return (report, exit code)."""
    from .report import make_report

    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        opts = _options(args)
        results = HANDLERS[args.command](opts)
    except (RatcurveError, KeyError, ValueError) as exc:
        err = exc.to_dict() if isinstance(exc, RatcurveError) else {"error": type(exc).__name__, "message": str(exc)}
        return make_report(args.command, {}, err, seconds=time.perf_counter() - start), 1, args
    report = make_report(args.command, {k: v for k, v in opts.items() if k != "out"}, results,
                         seed=opts.get("seed"), seconds=time.perf_counter() - start)
    code = 2 if _has_undecided(report["results"]) else 0
    if args.command == "verify" and not results.get("ok"):
        code = 1
    if args.command == "group-search" and results["totals"]["violations"]:
        code = 1
    return report, code, args


def main(argv=None):
    from .report import dumps, write_json

    report, code, args = run(argv)
    out = getattr(args, "out", None) or (report["inputs"].get("out") if isinstance(report.get("inputs"), dict) else None)
    if out and code != 1:
        write_json(report, out)
    else:
        sys.stdout.write(dumps(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
