"""Command-line front end.

    homcr catalog [--tag T] [--type X]
    homcr verify ID [--params a=1/2 ...] [--order 8]
    homcr sphericity ID [--params ...] [--out FILE]
    homcr classify FILE
    homcr realize TAG [--q 1] [--matrix "1 0 0; 0 2 0; 0 0 3"] [--out FILE]
    homcr report --all [--jobs N] [--out FILE]

Parameters may also be given as ``--gamma 0`` style flags.  Every command
takes ``--format md|json``.  Exit status: 0 all checks as expected, 1 a
check failed, 2 usage error (unknown id, bad parameters, degenerate
input for sphericity).
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import catalog as _catalog
from .lie import LieAlgebraError, TypeTag, classify_type, loads_algebra, validate
from .realize import format_realization, realize_algebra, self_check
from .series import SeriesError
from .surfaces import Report, compile as compile_surface, automorphism_reports, total_nondegeneracy, verify_homogeneity

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- helpers
def _parse_params(pairs, extra):
    params = {}
    for item in pairs or ():
        name, sep, val = item.partition("=")
        if not sep or not name:
            raise UsageError(f"bad parameter {item!r}, expected name=p/q")
        params[name] = val
    it = iter(extra)
    for flag in it:
        if not flag.startswith("--") or len(flag) < 3:
            raise UsageError(f"unexpected argument {flag!r}")
        name, sep, val = flag[2:].partition("=")
        if not sep:
            try:
                val = next(it)
            except StopIteration:
                raise UsageError(f"{flag} needs a value") from None
        params[name] = val
    out = {}
    for k, v in params.items():
        try:
            out[k] = Fraction(v)
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"parameter {k} = {v!r} is not rational") from None
    return out


def _instance(fid, params):
    try:
        fam = _catalog.family(fid)
    except _catalog.CatalogError as exc:
        raise UsageError(str(exc)) from None
    if fam.parametric:
        merged = dict(fam.default_params)
        merged.update(params)
        params = merged
    try:
        return fam.instance(params)
    except _catalog.CatalogError as exc:
        raise UsageError(str(exc)) from None


def _emit(text, out=None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _report_md(rep: Report) -> str:
    lines = [f"## {rep.surface}", "", "| check | result | expected | detail |", "|---|---|---|---|"]
    for c in rep.checks:
        detail = c.detail.replace("|", "\\|").replace("\n", " ")
        lines.append(f"| {c.name} | {'pass' if c.passed else 'fail'} | {'pass' if c.expected else 'fail'} | {detail} |")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- commands
def cmd_catalog(args):
    fams = _catalog.families(args.tag, args.type)
    if args.format == "json":
        rows = [
            {"id": f.id, "name": f.name, "params": list(f.param_names), "eq_v2": f.eq_v2, "eq_v3": f.eq_v3,
             "type": f.type, "tags": list(f.tags)}
            for f in fams
        ]
        _emit(json.dumps(rows, indent=2) + "\n")
    else:
        lines = ["| id | name | v2 | v3 | type | tags |", "|---|---|---|---|---|---|"]
        for f in fams:
            lines.append(f"| {f.id} | {f.name} | {f.eq_v2 or '-'} | {f.eq_v3 or '-'} | {f.type or '-'} | {' '.join(f.tags)} |")
        _emit("\n".join(lines) + "\n")
    return EXIT_OK


def verify_report(spec, order, cutoff=None):
    if spec.has_basis():
        compiled = compile_surface(spec, cutoff) if cutoff else None
        rep = verify_homogeneity(spec, order, compiled)
    else:
        rep = Report(spec.label(), dict(spec.params), order)
    if not spec.in_range:
        rep.add("parameters in range", False, spec.range_note or "", expected=True)
    if spec.eq_v2:
        degenerate = "degenerate" in spec.tags
        verdict = total_nondegeneracy(spec)
        rep.add("totally non-degenerate", verdict == "totally_nondegenerate", verdict, expected=not degenerate)
    return rep


def cmd_verify(args, extra):
    spec = _instance(args.id, _parse_params(args.params, extra))
    if args.cutoff is not None and args.cutoff < args.order + 1:
        raise UsageError("--cutoff must exceed --order")
    rep = verify_report(spec, args.order, args.cutoff)
    if args.format == "json":
        _emit(json.dumps(rep.to_dict(), indent=2) + "\n", args.out)
    else:
        _emit(_report_md(rep), args.out)
    return EXIT_OK if rep.as_expected else EXIT_FAIL


def cmd_sphericity(args, extra):
    from .sphericity import JET_CUTOFF, SphericityError, certificate_text, is_spherical

    spec = _instance(args.id, _parse_params(args.params, extra))
    if not spec.eq_v2 or total_nondegeneracy(spec) != "totally_nondegenerate":
        raise UsageError(f"{spec.label()} is degenerate; sphericity is not defined")
    try:
        res = is_spherical(spec, max(args.cutoff or JET_CUTOFF, JET_CUTOFF))
    except SphericityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    cert = certificate_text(spec, res)
    if args.out:
        _emit(cert, args.out)
    if args.format == "json":
        body = {"surface": spec.label(), "verdict": res.verdict, "stage": res.stage,
                "systems": {str(k): list(v) for k, v in res.systems.items()},
                "witness": res.witness, "certificate": None if args.out else cert}
        _emit(json.dumps(body, indent=2) + "\n")
    else:
        msg = f"{spec.label()}: {res.verdict}"
        if res.stage:
            msg += f" (step {res.stage} system inconsistent)"
        dims = ", ".join(f"step {k}: {e} equations / {u} unknowns" for k, (e, u) in res.systems.items())
        _emit(msg + "\n" + dims + "\n" + ("" if args.out else cert))
    return EXIT_OK


def cmd_classify(args):
    try:
        with open(args.file) as fh:
            alg = loads_algebra(fh.read())
    except OSError as exc:
        raise UsageError(str(exc)) from None
    except LieAlgebraError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    rep = validate(alg)
    if not rep.ok:
        print(f"validation error: {rep.violation}", file=sys.stderr)
        return EXIT_FAIL
    res = classify_type(alg)
    if args.format == "json":
        _emit(json.dumps({"type": str(res.tag) if res.tag else "unknown", "note": res.note}) + "\n")
    else:
        _emit(f"{res.tag if res.tag else 'unknown'}\n")
    return EXIT_OK if res.tag else EXIT_FAIL


def cmd_realize(args):
    text = args.tag
    if args.q is not None:
        text = f"{args.tag}({args.q})"
    try:
        tag = TypeTag.parse(text)
        C = None
        if args.matrix:
            C = [[Fraction(v) for v in row.split()] for row in args.matrix.split(";")]
            if len(C) != 3 or any(len(r) != 3 for r in C):
                raise UsageError("--matrix needs three rows of three rationals")
        r = realize_algebra(tag, C)
    except (LieAlgebraError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    ok, alg, rank = self_check(r, C)
    _emit(format_realization(r, C), args.out)
    status = "pass" if ok else "fail"
    print(f"self-check {status}: closure {classify_type(alg).tag}, rank {rank} at the sample point", file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------- report --all
def _job(kind, fid, params, order):
    """One worker task; returns a plain dict."""
    spec = _catalog.family(fid).instance(params)
    if kind == "homogeneity":
        rep = verify_homogeneity(spec, order)
        return {"section": kind, "surface": spec.label(), "ok": rep.as_expected,
                "detail": "; ".join(f"{c.name}: {c.detail}" for c in rep.checks if not c.as_expected)}
    if kind == "nondegeneracy":
        got = total_nondegeneracy(spec)
        want = "degenerate" if "degenerate" in spec.tags else "totally_nondegenerate"
        return {"section": kind, "surface": spec.label(), "ok": got == want, "detail": got}
    if kind == "sphericity":
        from .sphericity import is_spherical, replay_certificate

        res = is_spherical(spec)
        want = "spherical" if "spherical" in spec.tags or spec.id == "2.1" else "non_spherical"
        ok = res.verdict == want
        if res.spherical:
            P = replay_certificate(spec, res.step0_maps, res.steps)
            ok = ok and P.is_zero(3)
        dims = " ".join(f"{e}x{u}" for e, u in res.systems.values())
        return {"section": kind, "surface": spec.label(), "ok": ok,
                "detail": f"{res.verdict} (systems {dims})"}
    raise ValueError(kind)


def _report_jobs():
    jobs = []
    for f in _catalog.families():
        specs = f.sample_instances() if f.eq_v2 else []
        for s in specs:
            if f.fields:
                jobs.append(("homogeneity", f.id, s.params))
            jobs.append(("nondegeneracy", f.id, s.params))
            if "degenerate" not in f.tags:
                jobs.append(("sphericity", f.id, s.params))
        for key, why in sorted(f.exceptions.items()):
            if why.startswith("spherical"):
                jobs.append(("sphericity", f.id, dict(zip(f.param_names, key))))
                break
    return jobs


def run_report(order=8, jobs=None):
    tasks = _report_jobs()
    rows = []
    if jobs == 1:
        rows = [_job(k, fid, p, order) for k, fid, p in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            futs = [ex.submit(_job, k, fid, p, order) for k, fid, p in tasks]
            rows = [f.result() for f in futs]
    for rep in automorphism_reports(order):
        rows.append({"section": "automorphisms", "surface": rep.surface, "ok": rep.as_expected,
                     "detail": "; ".join(f"{c.name}: {'pass' if c.passed else 'fail'}" for c in rep.checks)})
    for text, C in _realize_cases():
        r = realize_algebra(TypeTag.parse(text), C)
        ok, alg, rank = self_check(r, C)
        got = classify_type(alg).tag
        ok = ok and got is not None and (got.name == "VI" if text == "VI" else got == r.tag)
        rows.append({"section": "classifier", "surface": text + (f" C={C}" if C else ""), "ok": ok,
                     "detail": f"classified {got}, rank {rank}"})
    order_key = {s: i for i, s in enumerate(("homogeneity", "nondegeneracy", "sphericity", "automorphisms", "classifier"))}
    rows.sort(key=lambda r: order_key[r["section"]])
    return rows


def _realize_cases():
    out = [(t, None) for t in ("I(1)", "I(0)", "I(-1/2)", "II", "III(0)", "III(2)", "IV", "V", "VII", "VIII")]
    out.append(("VI", [[1, 0, 0], [0, 2, 0], [0, 0, 3]]))
    out.append(("VI", None))
    return out


def cmd_report(args):
    if not args.all:
        raise UsageError("report needs --all")
    rows = run_report(args.order, args.jobs)
    if args.format == "json":
        text = json.dumps({"passed": all(r["ok"] for r in rows), "rows": rows}, indent=2) + "\n"
    else:
        lines = ["| section | surface | result | detail |", "|---|---|---|---|"]
        for r in rows:
            lines.append(f"| {r['section']} | {r['surface']} | {'ok' if r['ok'] else 'MISMATCH'} | {r['detail']} |")
        n_bad = sum(not r["ok"] for r in rows)
        lines.append("")
        lines.append(f"{len(rows) - n_bad}/{len(rows)} rows match the declared outcome table")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_OK if all(r["ok"] for r in rows) else EXIT_FAIL


# ---------------------------------------------------------------- entry
def build_parser():
    p = argparse.ArgumentParser(prog="homcr", description="Locally homogeneous CR-manifolds in C^3")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("md", "json"), default="md")
    common.add_argument("--order", type=int, default=8)
    common.add_argument("--cutoff", type=int, default=None, help="series cutoff (default order + 2)")
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("catalog", parents=[common])
    c.add_argument("--tag", choices=_catalog.TAGS)
    c.add_argument("--type", choices=("I", "II", "III", "IV", "V", "VI", "VII", "VIII"))
    for name in ("verify", "sphericity"):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("id")
        s.add_argument("--params", nargs="*", default=[], metavar="NAME=P/Q")
        s.add_argument("--out")
    c = sub.add_parser("classify", parents=[common])
    c.add_argument("file")
    r = sub.add_parser("realize", parents=[common])
    r.add_argument("tag")
    r.add_argument("--q")
    r.add_argument("--matrix", help='3x3 matrix C for type VI, rows separated by ";"')
    r.add_argument("--out")
    r = sub.add_parser("report", parents=[common])
    r.add_argument("--all", action="store_true")
    r.add_argument("--jobs", type=int, default=None)
    r.add_argument("--out")
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args, extra = parser.parse_known_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.command in ("verify", "sphericity"):
            fn = cmd_verify if args.command == "verify" else cmd_sphericity
            return fn(args, extra)
        if extra:
            raise UsageError(f"unexpected arguments {extra}")
        return {"catalog": cmd_catalog, "classify": cmd_classify, "realize": cmd_realize,
                "report": cmd_report}[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SeriesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
