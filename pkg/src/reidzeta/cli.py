"""Command-line entry point: ``reidzeta <command> ...``.

Exit codes: 0 success, 2 input or validation error, 3 zeta requested for a
non-tame automorphism, 4 internal invariant violation.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import families, nilpotent, oracle, spectral, survey, zeta
from .exact import RatPoly, rat_to_str
from .io import (SchemaError, algebra_from_json, cayley_from_text, dump, endo_from_json,
                 graph_from_json, load_json, matrix_from_json, read_text)

EXIT_OK, EXIT_INPUT, EXIT_REFUSED, EXIT_INTERNAL = 0, 2, 3, 4
DEFAULT_R_TERMS = 10


class Refused(Exception):
    pass


def _r_str(value) -> str:
    return "infinite" if value == nilpotent.INFINITE else rat_to_str(value)


def _emit(text: str, out: Optional[str]) -> None:
    if out and out != "-":
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# analyze


def analyze(alg: nilpotent.NilAlgebra, matrix, terms: Optional[int]) -> dict:
    """Full pipeline for one automorphism; raises zeta.NotTame only when ``terms`` is given."""
    nilpotent.validate_algebra(alg)
    phi = nilpotent.check_automorphism(alg, matrix)
    gd = nilpotent.graded_data(phi)
    report = spectral.classify(gd.full_poly)
    n_r = terms if terms is not None else DEFAULT_R_TERMS
    rseq = nilpotent.reidemeister_sequence(phi, n_r)
    caveats = list(phi.caveats)
    out = {
        "algebra": {"dim": alg.dim, "class": gd.nilpotency_class,
                    "lcs_dims": list(gd.lcs_dims), "family": alg.family},
        "spectral": report.to_json(),
        "verdict": report.verdict,
        "graded_polys": [p.to_json() for p in gd.graded_polys],
        "reidemeister": [{"n": n, "R": _r_str(r)} for n, r in rseq],
        "zeta_series": None,
        "zeta_closed_form": None,
        "zeta_display": None,
        "verification": "skipped",
        "caveats": caveats,
    }
    if not report.tame:
        if terms is not None:
            raise zeta.NotTame(report.min_infinite_power)
        caveats.append(f"not tame: R(phi^{report.min_infinite_power}) is infinite; "
                       "zeta function undefined")
        return out
    n_z = terms if terms is not None else zeta.DEFAULT_TERMS
    series = zeta.zeta_series(phi, n_z)
    out["zeta_series"] = [rat_to_str(c) for c in series]
    if not phi.integer_like:
        caveats.append("closed form needs an integer-like automorphism; series only")
        return out
    form = zeta.zeta_closed_form(phi)
    check = zeta.verify_zeta(phi, n_z, form)
    out["zeta_closed_form"] = form.to_json()
    out["zeta_display"] = str(form)
    out["verification"] = "passed" if check.ok else (
        f"failed at index {check.index}: series {check.series_value}, "
        f"closed form {check.closed_value}")
    if not check.ok:
        raise spectral.InvariantViolation(out["verification"])
    return out


def format_analysis(res: dict) -> str:
    alg = res["algebra"]
    sp = res["spectral"]
    lines = [
        f"algebra      dim {alg['dim']}, class {alg['class']}, LCS dims {alg['lcs_dims']}"
        f" ({alg['family']})",
        f"char poly    {RatPoly(sp['poly'])}",
        "graded       " + ", ".join(str(RatPoly(p)) for p in res["graded_polys"]),
        f"verdict      {res['verdict']}  (tame={sp['tame']}, anosov={sp['anosov']}, "
        f"integer-like={sp['integer_like']})",
        f"n(phi)       {sp['min_infinite_power'] or '-'}",
        f"unit-circle  {sp['unit_circle_pairs']} pair(s); real >1: {sp['p_count']}, "
        f"real <-1: {sp['q_count']}",
        "",
        "  n  R(phi^n)",
    ]
    width = max(len(r["R"]) for r in res["reidemeister"]) if res["reidemeister"] else 1
    for r in res["reidemeister"]:
        lines.append(f"{r['n']:>3}  {r['R']:>{width}}")
    if res["zeta_series"] is not None:
        lines += ["", "zeta series  [" + ", ".join(res["zeta_series"]) + "]"]
    if res["zeta_display"]:
        lines.append(f"zeta         {res['zeta_display']}")
    lines.append(f"verification {res['verification']}")
    for c in res["caveats"]:
        lines.append(f"caveat       {c}")
    return "\n".join(lines) + "\n"


def cmd_analyze(args) -> int:
    alg = algebra_from_json(load_json(args.algebra), "algebra")
    m = matrix_from_json(load_json(args.matrix), "matrix")
    try:
        res = analyze(alg, m, args.terms)
    except zeta.NotTame as exc:
        print(f"error: {exc}; zeta function is undefined", file=sys.stderr)
        return EXIT_REFUSED
    _emit(dump(res) if args.json else format_analysis(res), None)
    return EXIT_OK


# make


def cmd_make(args) -> int:
    kind = args.kind
    if kind == "free":
        alg, _ = families.free_nilpotent(args.k, args.c)
    elif kind == "graph":
        alg = families.graph_algebra(_graph_arg(args))
    elif kind == "abelian":
        alg = families.abelian(args.n)
    elif kind == "heisenberg":
        alg = families.heisenberg()
    elif kind == "sum":
        a = algebra_from_json(load_json(args.first), args.first)
        b = algebra_from_json(load_json(args.second), args.second)
        alg = families.direct_sum(a, b)
    else:  # pragma: no cover - argparse restricts choices
        raise SchemaError(f"unknown family {kind}")
    nilpotent.validate_algebra(alg)
    _emit(dump(alg.to_json()), args.output)
    return EXIT_OK


# graph report


def _graph_arg(args) -> families.Graph:
    if getattr(args, "file", None):
        return graph_from_json(load_json(args.file), args.file)
    try:
        return families.Graph.parse(args.edges or "", getattr(args, "n", None))
    except ValueError as exc:
        raise SchemaError(f"--edges: {exc}") from exc


def graph_report(g: families.Graph) -> dict:
    res = families.graph_tameness(g)
    comps = []
    for comp, kind, ok in zip(res.partition.components, res.partition.kinds, res.verdicts):
        comps.append({"vertices": list(comp), "kind": kind.value, "size": len(comp),
                      "admits_tame": ok})
    return {"graph": g.to_json(), "components": comps, "profile": res.partition.profile(),
            "tame": res.tame}


def cmd_graph_report(args) -> int:
    rep = graph_report(_graph_arg(args))
    if args.json:
        _emit(dump(rep), None)
        return EXIT_OK
    g = rep["graph"]
    lines = [f"graph        n={g['n']}, edges={families.Graph(g['n'], g['edges']).spec() or '(none)'}",
             "component                  kind      size  admits tame"]
    for c in rep["components"]:
        verts = "{" + ",".join(map(str, c["vertices"])) + "}"
        lines.append(f"{verts:<26} {c['kind']:<9} {c['size']:>4}  {'yes' if c['admits_tame'] else 'no'}")
    lines.append(f"tame         {'yes' if rep['tame'] else 'no'}")
    _emit("\n".join(lines) + "\n", None)
    return EXIT_OK


# survey


def cmd_survey(args) -> int:
    if args.population != "graphs":
        raise SchemaError("only 'graphs' surveys are supported")
    if not args.exhaustive and args.samples is None:
        raise SchemaError("give --samples S or --exhaustive")
    config = survey.SurveyConfig(args.vertices, args.samples, args.seed, args.witness_budget,
                                 args.exhaustive, args.workers)
    rows = config.run()
    _emit(config.csv(rows), args.output)
    print(survey.summary(rows), file=sys.stderr)
    return EXIT_OK


# oracle


def _load_group(path: str) -> oracle.FiniteGroup:
    return cayley_from_text(read_text(path), path)


def cmd_oracle(args) -> int:
    if args.which == "lattice":
        m = matrix_from_json(load_json(args.matrix), args.matrix)
        if not m.is_integral():
            raise SchemaError(f"{args.matrix}: lattice oracle needs integer entries")
        rows = m.to_int_rows()
        count = oracle.twisted_count_lattice(rows)
        res = {"oracle": "lattice", "count": _r_str(count)}
        if count != oracle.INFINITE:
            enum_count = oracle.twisted_count_lattice_enumerated(rows)
            res["enumerated"] = _r_str(enum_count)
            if enum_count != count:
                raise spectral.InvariantViolation(
                    f"SNF index {count} != enumerated classes {enum_count}")
    else:
        g = _load_group(args.cayley)
        phi = endo_from_json(load_json(args.endo), g, args.endo)
        if args.which == "twisted":
            res = {"oracle": "twisted", "count": oracle.twisted_classes_finite(g, phi)}
        else:
            sub = oracle.check_subgroup_reduction(g, phi)
            quo = oracle.check_quotient_reduction(g, phi)
            res = {"oracle": "reductions", "ok": sub.ok and quo.ok,
                   "subgroup": {"ok": sub.ok, "G": sub.full_count, "H": sub.reduced_count},
                   "quotient": {"ok": quo.ok, "G": quo.full_count, "G/N": quo.reduced_count}}
            if not res["ok"]:
                _emit(dump(res) if args.json else f"counterexample: {res}\n", None)
                return EXIT_INTERNAL
    if args.json:
        _emit(dump(res), None)
    elif "count" in res:
        extra = f" (enumerated {res['enumerated']})" if "enumerated" in res else ""
        _emit(f"{res['count']}{extra}\n", None)
    else:
        _emit("ok\n", None)
    return EXIT_OK


# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="reidzeta", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="classify an automorphism and compute its zeta function")
    a.add_argument("--algebra", required=True, help="NilAlgebra JSON file ('-' for stdin)")
    a.add_argument("--matrix", required=True, help="automorphism matrix JSON file")
    a.add_argument("--terms", type=int, help="zeta terms; requesting them refuses non-tame input")
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=cmd_analyze)

    m = sub.add_parser("make", help="write a family algebra as JSON")
    ms = m.add_subparsers(dest="kind", required=True)
    f = ms.add_parser("free")
    f.add_argument("-k", type=int, required=True)
    f.add_argument("-c", type=int, required=True)
    g = ms.add_parser("graph")
    g.add_argument("--edges", required=True, help='edge list such as "1-2,2-3"')
    g.add_argument("-n", type=int, help="vertex count (default: largest label)")
    ab = ms.add_parser("abelian")
    ab.add_argument("-n", type=int, required=True)
    ms.add_parser("heisenberg")
    s = ms.add_parser("sum")
    s.add_argument("first")
    s.add_argument("second")
    for sp in (f, g, ab, s, ms.choices["heisenberg"]):
        sp.add_argument("-o", "--output", help="output file (default stdout)")
    m.set_defaults(func=cmd_make)

    gr = sub.add_parser("graph-report", help="coherent components and tameness of a graph")
    src = gr.add_mutually_exclusive_group(required=True)
    src.add_argument("--edges", help='edge list such as "1-2,2-3"')
    src.add_argument("--file", help="graph JSON file ('-' for stdin)")
    gr.add_argument("-n", type=int, help="vertex count for --edges")
    gr.add_argument("--json", action="store_true")
    gr.set_defaults(func=cmd_graph_report)

    sv = sub.add_parser("survey", help="tameness survey over random or all graphs")
    sv.add_argument("population", choices=["graphs"])
    sv.add_argument("--vertices", type=int, required=True)
    sv.add_argument("--samples", type=int)
    sv.add_argument("--exhaustive", action="store_true", help="every labelled graph once")
    sv.add_argument("--seed", type=int, default=0)
    sv.add_argument("--witness-budget", type=int, default=0)
    sv.add_argument("--workers", type=int, default=1)
    sv.add_argument("-o", "--output")
    sv.set_defaults(func=cmd_survey)

    o = sub.add_parser("oracle", help="brute-force twisted-conjugacy oracles")
    os_ = o.add_subparsers(dest="which", required=True)
    t = os_.add_parser("twisted")
    r = os_.add_parser("reductions")
    for sp in (t, r):
        sp.add_argument("--cayley", required=True, help="Cayley table JSON or CSV")
        sp.add_argument("--endo", required=True, help='endomorphism JSON {"images": [...]}')
    lat = os_.add_parser("lattice")
    lat.add_argument("--matrix", required=True)
    for sp in (t, r, lat):
        sp.add_argument("--json", action="store_true")
    o.set_defaults(func=cmd_oracle)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except spectral.InvariantViolation as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (SchemaError, nilpotent.AlgebraError, families.ScaleCapExceeded,
            oracle.GroupError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
