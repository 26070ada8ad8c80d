"""Command-line front door.

Every subcommand reads groups/systems from text files (or builtin names),
computes one verdict, and writes one structured report (stdout or --out).
Exit codes: 0 verdict computed, 1 input error, 2 cap or budget exceeded.
Reports never contain timestamps; identical inputs give identical bytes.
"""

from __future__ import annotations

import argparse
import os
import shlex
import sys
from fractions import Fraction

from . import approximation as approx
from . import coverage, equations, lengths
from .catalog import load_catalog_file, resolve_group
from .errors import BudgetExceeded, CapExceeded, ParseError
from .groups import DEFAULT_ELEMENT_CAP, consequences, is_n_separated
from .perm import cycle_string, hamming_length, parse_cycles
from .report import (
    certificate_from_data,
    dump_report,
    load_report,
    parse_rational,
    sofic_certificate_from_data,
    sofic_certificate_to_data,
)
from .words import word_str

MANIFEST_HEADER = "groupapprox-manifest"
MANIFEST_VERSION = 1

_FILE_FLAGS = {"--system", "--catalog", "--presentation", "--certificate", "--table"}
_OUT_FLAGS = {"--out", "--csv"}
_JOBS_COMMANDS = {"covering-constant", "support-cover", "eq-solve"}


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="groupapprox",
        description="Finite-group approximation workbench (exact rational arithmetic).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--out", help="write the report to this file")
        return p

    p = add("length", "evaluate a length function at a permutation")
    p.add_argument("--group", required=True)
    p.add_argument("--catalog", action="append", default=[])
    p.add_argument("--perm", required=True, help='cycle notation, e.g. "(1 2 3)"')
    p.add_argument("--length-kind", choices=["hamming", "cayley"], default="hamming")
    p.add_argument("--X", action="append", default=[], help="base elements for cayley")
    p.add_argument("--n", type=int, help="scale for the cayley construction")

    p = add("consequences", "exact-depth consequence set of a base set")
    p.add_argument("--group", required=True)
    p.add_argument("--catalog", action="append", default=[])
    p.add_argument("--X", action="append", default=[], required=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--cap", type=int, default=DEFAULT_ELEMENT_CAP)

    p = add("separate", "is Y disjoint from the depth-n consequences of X?")
    p.add_argument("--group", required=True)
    p.add_argument("--catalog", action="append", default=[])
    p.add_argument("--X", action="append", default=[])
    p.add_argument("--Y", action="append", default=[], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--cap", type=int, default=DEFAULT_ELEMENT_CAP)

    p = add("brenner-verify", "ball of radius (n-1)*eps/16 inside the depth-n set")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--X", action="append", default=[], required=True)
    p.add_argument("--n", type=int, required=True)

    p = add("support-cover", "fourth class power against the support of x")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--x", help="one element; default sweeps all class representatives")
    p.add_argument("--jobs", type=int, default=1)

    p = add("covering-constant", "empirical covering ratios over class pairs")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--csv", help="also write the table as CSV")

    p = add("axioms-check", "verify the three length-function axioms exhaustively")
    p.add_argument("--group", required=True)
    p.add_argument("--catalog", action="append", default=[])
    p.add_argument("--length-kind", choices=["hamming", "cayley", "table"], default="hamming")
    p.add_argument("--X", action="append", default=[])
    p.add_argument("--n", type=int)
    p.add_argument("--table", help="length-table report file")
    p.add_argument("--cap", type=int, default=DEFAULT_ELEMENT_CAP)

    p = add("approx-check", "re-verify a stored certificate")
    p.add_argument("--certificate", required=True)

    p = add("approx-search", "search for a separating homomorphism")
    p.add_argument("--presentation", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--catalog", action="append", default=[], required=True)
    p.add_argument("--budget", type=int, default=approx.DEFAULT_SEARCH_BUDGET)
    p.add_argument("--prune", action="store_true", help="skip conjugate image tuples")

    p = add("sofic-search", "search for a long-outside/short-inside homomorphism")
    p.add_argument("--presentation", required=True)
    p.add_argument("--eps", required=True, help="rational threshold p/q")
    p.add_argument("--catalog", action="append", default=[], required=True)
    p.add_argument("--budget", type=int, default=approx.DEFAULT_SEARCH_BUDGET)

    p = add("eq-solve", "universal-existential solvability in one group")
    p.add_argument("--group", required=True)
    p.add_argument("--catalog", action="append", default=[])
    p.add_argument("--system", required=True)
    p.add_argument("--budget", type=int, default=equations.DEFAULT_EQ_BUDGET)
    p.add_argument("--witnesses", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument(
        "--reduce-constants",
        action="store_true",
        help="scan one constant tuple per conjugation orbit",
    )

    p = add("eq-sys", "solvability across a whole catalog")
    p.add_argument("--catalog", action="append", default=[], required=True)
    p.add_argument("--system", required=True)
    p.add_argument("--budget", type=int, default=equations.DEFAULT_EQ_BUDGET)

    p = add("eq-over", "solvability over a group via supplied overgroup embeddings")
    p.add_argument("--group", required=True)
    p.add_argument("--catalog", action="append", default=[])
    p.add_argument("--system", required=True)
    p.add_argument(
        "--diagonal",
        action="append",
        type=int,
        default=[],
        required=True,
        help="diagonal embedding with this many copies (repeatable)",
    )
    p.add_argument("--budget", type=int, default=equations.DEFAULT_EQ_BUDGET)
    p.add_argument("--witnesses", action="store_true")

    p = add("manifest-replay", "re-run a pinned list of subcommands")
    p.add_argument("manifest")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--jobs", type=int, default=None)

    return parser


def _load_catalogs(paths):
    return [load_catalog_file(p) for p in paths]


def _get_group(args):
    catalogs = _load_catalogs(args.catalog)
    return resolve_group(args.group, catalogs)


def _parse_elements(texts, group, flag):
    out = []
    for t in texts:
        x = parse_cycles(t, group.degree)
        if x not in group:
            raise ParseError(f"{flag} element {t!r} is not in {group.name}")
        out.append(x)
    return out


def _read(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}", source=path)


def _emit(args, data):
    text = dump_report(data)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _sorted_cycles(elements):
    return [cycle_string(x) for x in sorted(elements, key=lambda p: p.sort_key())]


# --- command handlers ----------------------------------------------------------


def _cmd_length(args):
    G = _get_group(args)
    h = parse_cycles(args.perm, G.degree)
    if h not in G:
        raise ParseError(f"--perm element is not in {G.name}")
    if args.length_kind == "cayley":
        if args.n is None:
            raise ParseError("cayley length needs --n")
        base = _parse_elements(args.X, G, "--X")
        ell = lengths.cayley_conjugation_length(G, base, args.n)
        value = ell(h)
    else:
        value = hamming_length(h)
    data = {
        "command": "length",
        "params": {
            "group": G.name,
            "perm": h,
            "length-kind": args.length_kind,
            "X": [parse_cycles(t, G.degree) for t in args.X],
            "n": args.n,
        },
        "result": {"value": value},
    }
    _emit(args, data)
    return 0


def _cmd_consequences(args):
    G = _get_group(args)
    base = _parse_elements(args.X, G, "--X")
    cons = consequences(G, base, args.n, cap=args.cap)
    data = {
        "command": "consequences",
        "params": {
            "group": G.name,
            "X": list(map(cycle_string, base)),
            "n": args.n,
            "cap": args.cap,
        },
        "result": {
            "layer-sizes": list(cons.layer_sizes),
            "depth-size": len(cons.elements),
            "cumulative-size": len(cons.cumulative),
            "elements": _sorted_cycles(cons.elements)
            if len(cons.elements) <= 1000
            else [],
        },
    }
    _emit(args, data)
    return 0


def _cmd_separate(args):
    G = _get_group(args)
    base = _parse_elements(args.X, G, "--X")
    targets = _parse_elements(args.Y, G, "--Y")
    rep = is_n_separated(G, targets, base, args.n, cap=args.cap)
    data = {
        "command": "separate",
        "params": {
            "group": G.name,
            "X": list(map(cycle_string, base)),
            "Y": list(map(cycle_string, targets)),
            "n": args.n,
            "cap": args.cap,
        },
        "result": {
            "verdict": rep.verdict,
            "witness": rep.witness,
            "violated-depths": list(rep.violated_depths),
            "cumulative-separated": rep.cumulative_separated,
        },
    }
    _emit(args, data)
    return 0


def _cmd_brenner_verify(args):
    G = coverage._alternating(args.m)
    base = [parse_cycles(t, args.m) for t in args.X]
    rep = coverage.verify_brenner_bound(args.m, base, args.n)
    data = {
        "command": "brenner-verify",
        "params": {
            "m": args.m,
            "X": list(map(cycle_string, rep.base)),
            "n": args.n,
        },
        "result": {
            "epsilon": rep.epsilon,
            "threshold": rep.threshold,
            "ball-size": rep.ball_size,
            "holds": rep.holds,
            "violations": list(map(cycle_string, rep.violations)),
        },
    }
    _emit(args, data)
    return 0


def _cmd_support_cover(args):
    if args.x:
        reports = [coverage.verify_support_cover(args.m, parse_cycles(args.x, args.m))]
    else:
        reports = list(coverage.support_cover_sweep(args.m, jobs=args.jobs))
    # --jobs deliberately stays out of the report: replays with different
    # worker counts must produce identical bytes
    data = {
        "command": "support-cover",
        "params": {"m": args.m, "x": args.x},
        "result": {
            "all-hold": all(r.holds for r in reports),
            "cases": [
                {
                    "x": cycle_string(r.x),
                    "targets": r.target_size,
                    "holds": r.holds,
                    "violations": list(map(cycle_string, r.violations)),
                }
                for r in reports
            ],
        },
    }
    _emit(args, data)
    return 0


def _cmd_covering_constant(args):
    table = coverage.empirical_covering_constant(args.m, jobs=args.jobs)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write(coverage.covering_csv(table))
    data = {
        "command": "covering-constant",
        "params": {"m": args.m},
        "result": {
            "max-ratio": table.max_ratio,
            "rows": [
                {
                    "x": cycle_string(row.x),
                    "y": cycle_string(row.y),
                    "depth": row.depth,
                    "steps": row.steps,
                    "ratio": row.ratio,
                }
                for row in table.rows
            ],
        },
    }
    _emit(args, data)
    return 0


def _cmd_axioms_check(args):
    G = _get_group(args)
    if args.length_kind == "hamming":
        ell = lengths.hamming(G)
    elif args.length_kind == "cayley":
        if args.n is None:
            raise ParseError("cayley length needs --n")
        ell = lengths.cayley_conjugation_length(G, _parse_elements(args.X, G, "--X"), args.n)
    else:
        if not args.table:
            raise ParseError("table length needs --table FILE")
        table_data = load_report(_read(args.table), source=args.table)
        if table_data.get("kind") != "length-table":
            raise ParseError("not a length-table report", source=args.table)
        values = {
            parse_cycles(k, G.degree): Fraction(v)
            for k, v in table_data["values"].items()
        }
        ell = lengths.from_table(G, values)
    rep = lengths.verify_axioms(ell, cap=args.cap)
    data = {
        "command": "axioms-check",
        "params": {
            "group": G.name,
            "length-kind": args.length_kind,
            "X": args.X,
            "n": args.n,
            "cap": args.cap,
        },
        "result": {
            "valid": rep.valid,
            "pairs-checked": rep.pairs_checked,
            "violations": [
                {
                    "axiom": v.axiom,
                    "witness": [cycle_string(x) for x in v.witness],
                    "detail": v.detail,
                }
                for v in rep.violations
            ],
        },
    }
    _emit(args, data)
    return 0


def _cmd_approx_check(args):
    data_in = load_report(_read(args.certificate), source=args.certificate)
    kind = data_in.get("kind")
    if kind == "approximation-certificate":
        cert = certificate_from_data(data_in)
        if data_in["mode"]["type"] == "consequence":
            result = approx.check_consequence_instance(cert)
        else:
            result = approx.check_metric_instance(cert)
        body = {"holds": result.holds, "reason": result.reason}
        stored = data_in.get("verdict")
        if stored is not None:
            body["stored-verdict"] = stored
            body["matches-stored"] = stored == ("holds" if result.holds else "fails")
    elif kind == "sofic-certificate":
        cert = sofic_certificate_from_data(data_in)
        ok = approx.verify_sofic_certificate(cert)
        body = {"holds": ok, "reason": "recomputed all certificate quantities"}
    else:
        raise ParseError(f"unknown certificate kind {kind!r}", source=args.certificate)
    data = {
        "command": "approx-check",
        "params": {"certificate": os.path.basename(args.certificate)},
        "result": body,
    }
    _emit(args, data)
    return 0


def _cmd_approx_search(args):
    p = approx.parse_presentation(_read(args.presentation), source=args.presentation)
    catalogs = _load_catalogs(args.catalog)
    groups = [g for cat in catalogs for g in cat.values()]
    outcome = approx.search_separating_hom(
        p, args.n, groups, budget=args.budget, prune_conjugates=args.prune
    )
    params = {
        "presentation": os.path.basename(args.presentation),
        "n": args.n,
        "budget": args.budget,
        "prune": args.prune,
        "catalog-order": [g.name for g in groups],
    }
    if isinstance(outcome, approx.FoundHomomorphism):
        result = {
            "status": "found",
            "group": outcome.group.name,
            "images": [cycle_string(x) for x in outcome.images],
            "assignments": outcome.stats.assignments,
            "separation": {
                "verdict": outcome.separation.verdict,
                "violated-depths": list(outcome.separation.violated_depths),
            },
        }
    else:
        result = {
            "status": "exhausted",
            "assignments": outcome.stats.assignments,
            "per-group": [
                {"group": name, "assignments": n} for name, n in outcome.stats.per_group
            ],
        }
    _emit(args, {"command": "approx-search", "params": params, "result": result})
    return 0


def _cmd_sofic_search(args):
    p = approx.parse_presentation(_read(args.presentation), source=args.presentation)
    catalogs = _load_catalogs(args.catalog)
    groups = [g for cat in catalogs for g in cat.values()]
    eps = parse_rational(args.eps)
    outcome = approx.search_sofic_instance(p, eps, groups, budget=args.budget)
    params = {
        "presentation": os.path.basename(args.presentation),
        "eps": eps,
        "budget": args.budget,
        "catalog-order": [g.name for g in groups],
    }
    if isinstance(outcome, approx.SoficCertificate):
        result = {"status": "found", "certificate": sofic_certificate_to_data(outcome)}
        result["certificate"]["assignments"] = outcome.stats.assignments
    else:
        result = {
            "status": "exhausted",
            "assignments": outcome.stats.assignments,
            "per-group": [
                {"group": name, "assignments": n} for name, n in outcome.stats.per_group
            ],
        }
    _emit(args, {"command": "sofic-search", "params": params, "result": result})
    return 0


def _eq_report_body(report):
    body = {
        "verdict": report.verdict,
        "counterexample": list(map(cycle_string, report.counterexample))
        if report.counterexample
        else None,
        "reason": report.reason or None,
        "constants-domain": report.constants_domain,
        "variables-domain": report.variables_domain,
        "budget": report.budget,
    }
    if report.witnesses:
        body["witnesses"] = [
            {
                "constants": list(map(cycle_string, c)),
                "variables": list(map(cycle_string, v)),
            }
            for c, v in report.witnesses
        ]
    return body


def _cmd_eq_solve(args):
    G = _get_group(args)
    system = equations.parse_equation_system(_read(args.system), source=args.system)
    report = equations.solvable_in(
        G,
        system,
        budget=args.budget,
        want_witnesses=args.witnesses,
        jobs=args.jobs,
        constants_up_to_conjugacy=args.reduce_constants,
    )
    data = {
        "command": "eq-solve",
        "params": {
            "group": G.name,
            "system": os.path.basename(args.system),
            "words": [word_str(w, system.symbol_names()) for w in system.words],
            "budget": args.budget,
            "reduce-constants": args.reduce_constants,
        },
        "result": _eq_report_body(report),
    }
    _emit(args, data)
    return 2 if report.verdict == "unknown" else 0


def _cmd_eq_sys(args):
    catalogs = _load_catalogs(args.catalog)
    groups = [g for cat in catalogs for g in cat.values()]
    system = equations.parse_equation_system(_read(args.system), source=args.system)
    table = equations.sys_membership(groups, system, budget=args.budget)
    data = {
        "command": "eq-sys",
        "params": {
            "system": os.path.basename(args.system),
            "catalog-order": [g.name for g in groups],
            "budget": args.budget,
        },
        "result": {
            "overall": table.overall,
            "per-group": [
                {"group": name, "verdict": rep.verdict} for name, rep in table.entries
            ],
        },
    }
    _emit(args, data)
    return 2 if table.overall == "unknown" else 0


def _cmd_eq_over(args):
    G = _get_group(args)
    system = equations.parse_equation_system(_read(args.system), source=args.system)
    embeddings = [equations.diagonal_embedding(G, k) for k in args.diagonal]
    report = equations.solvable_over_bounded(
        G, system, embeddings, budget=args.budget, want_witnesses=args.witnesses
    )
    data = {
        "command": "eq-over",
        "params": {
            "group": G.name,
            "system": os.path.basename(args.system),
            "diagonal-copies": list(args.diagonal),
            "overgroups": [e.target.name for e in embeddings],
            "budget": args.budget,
        },
        "result": _eq_report_body(report),
    }
    _emit(args, data)
    budget_limited = report.verdict == "unknown" and "skipped over budget" in report.reason
    return 2 if budget_limited else 0


def _cmd_manifest_replay(args):
    text = _read(args.manifest)
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty manifest", line=1, source=args.manifest)
    head = lines[0].split()
    if len(head) != 2 or head[0] != MANIFEST_HEADER:
        raise ParseError("not a manifest file", line=1, source=args.manifest)
    if int(head[1]) != MANIFEST_VERSION:
        sys.stderr.write(
            f"manifest version mismatch: file says {head[1]}, tool speaks "
            f"{MANIFEST_VERSION}; replay aborted\n"
        )
        return 1
    manifest_dir = os.path.dirname(os.path.abspath(args.manifest))
    os.makedirs(args.out_dir, exist_ok=True)
    worst = 0
    for ln, raw in enumerate(lines[1:], start=2):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        argv = shlex.split(line)
        if "--out" not in argv:
            raise ParseError(
                "every manifest step needs --out", line=ln, source=args.manifest
            )
        argv = _rewrite_paths(argv, manifest_dir, args.out_dir)
        if args.jobs is not None and argv[0] in _JOBS_COMMANDS and "--jobs" not in argv:
            argv += ["--jobs", str(args.jobs)]
        code = run(argv)
        if code == 1:
            sys.stderr.write(f"{args.manifest}:{ln}: step failed with input error\n")
            return 1
        worst = max(worst, code)
    return worst


def _rewrite_paths(argv, manifest_dir, out_dir):
    out = list(argv)
    i = 0
    while i < len(out):
        flag = out[i]
        if flag in _FILE_FLAGS and i + 1 < len(out) and not os.path.isabs(out[i + 1]):
            out[i + 1] = os.path.join(manifest_dir, out[i + 1])
            i += 2
        elif flag in _OUT_FLAGS and i + 1 < len(out) and not os.path.isabs(out[i + 1]):
            out[i + 1] = os.path.join(out_dir, out[i + 1])
            i += 2
        else:
            i += 1
    return out


_HANDLERS = {
    "length": _cmd_length,
    "consequences": _cmd_consequences,
    "separate": _cmd_separate,
    "brenner-verify": _cmd_brenner_verify,
    "support-cover": _cmd_support_cover,
    "covering-constant": _cmd_covering_constant,
    "axioms-check": _cmd_axioms_check,
    "approx-check": _cmd_approx_check,
    "approx-search": _cmd_approx_search,
    "sofic-search": _cmd_sofic_search,
    "eq-solve": _cmd_eq_solve,
    "eq-sys": _cmd_eq_sys,
    "eq-over": _cmd_eq_over,
    "manifest-replay": _cmd_manifest_replay,
}


def run(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    try:
        return _HANDLERS[args.command](args)
    except (ParseError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except BudgetExceeded as exc:
        sys.stderr.write(f"budget exceeded: {exc}\n")
        return 2
    except CapExceeded as exc:
        sys.stderr.write(f"cap exceeded: {exc}\n")
        return 2


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
