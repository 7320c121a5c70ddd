"""Command-line front end.

    fimrank rank "s + adj(s)" --T 64
    fimrank monoid equal "[[x,0,1],[y,0,1]]" "[[x,0,1],[z,0,1]]"
    fimrank series zeros "1/(1-x^2)"
    fimrank suite hadamard --json report.json

Exit status: 0 when every check passes, 1 on a failed check, 2 on a usage
error, 3 when a resource bound is exceeded.
"""

import argparse
import json
import os
import re
import sys

from . import closure_calculus as cc
from . import free_inverse_monoid as fim
from . import lamplighter as lamp
from . import presented_monoid as pm
from . import rational_series as rs
from . import representation as rep
from . import skew_construction as sk
from .exact_linalg import rat, rat_str
from .expr_parser import ExprSyntaxError, parse_expression, to_text
from .suites import SUITES, SuiteOptions, run_suite

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3
REPORT_DIR_ENV = "FIMRANK_REPORT_DIR"
DEFAULTS = {"T": 64, "period_bound": 64}


class UsageError(Exception):
    pass


# -- input readers -------------------------------------------------------------

_BARE = re.compile(r"(?<![\"\w])([A-Za-z_]\w*)(?![\"\w])")


def read_word(text):
    """A monoid word as JSON [[name, index, mult], ...] (names may be bare)
    or as text like "x0 + 2y3"."""
    text = text.strip()
    try:
        if text.startswith("["):
            data = json.loads(_BARE.sub(lambda m: "null" if m.group(1) == "null" else f'"{m.group(1)}"', text))
            return pm.MWord.from_json(data)
        return pm.parse_word(text)
    except (ValueError, TypeError) as exc:
        raise UsageError(f"cannot read monoid word {text!r}: {exc}") from exc


def read_series(text):
    try:
        return rs.parse_series(text)
    except rs.SeriesSyntaxError as exc:
        raise UsageError(f"bad series {text!r}: {exc}") from exc


def read_polynomial(item):
    if isinstance(item, str):
        a = read_series(item)
        if rs.ptrim(a.den) != (1,):
            raise UsageError(f"{item!r} is not a polynomial")
        return tuple(a.num)
    return tuple(rat(c) for c in item)


def read_schedule(path):
    """JSON list of polynomials, each a coefficient list or text like "1-x+x^2"."""
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read schedule {path}: {exc}") from exc
    if not isinstance(data, list) or not data:
        raise UsageError("a schedule is a non-empty JSON list")
    try:
        return sk.SigmaSchedule([read_polynomial(f) for f in data])
    except sk.ScheduleError as exc:
        raise UsageError(str(exc)) from exc


def read_fim_word(text):
    """Letters s and s* (or S), whitespace ignored."""
    letters = re.sub(r"\s+", "", text).replace("s*", "S")
    if letters in ("", "1"):
        return ""
    if set(letters) - {"s", "S"}:
        raise UsageError(f"not a word in s and s*: {text!r}")
    return letters


def load_config(path):
    if path is None:
        return {}
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except (OSError, tomllib.TOMLDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    data = data.get("fimrank", data)
    unknown = set(data) - {"T", "period_bound", "schedule"}
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
    return data


def resolve_options(args):
    """Flags override the config file, which overrides the defaults."""
    cfg = load_config(args.config)
    opts = dict(DEFAULTS)
    opts.update({k: cfg[k] for k in ("T", "period_bound") if k in cfg})
    if args.T is not None:
        opts["T"] = args.T
    if args.period_bound is not None:
        opts["period_bound"] = args.period_bound
    for key in ("T", "period_bound"):
        if not isinstance(opts[key], int) or isinstance(opts[key], bool) or opts[key] < 0:
            raise UsageError(f"{key} must be a non-negative integer")
    if opts["period_bound"] < 1:
        raise UsageError("period bound must be at least 1")
    opts["explicit_T"] = args.T is not None or "T" in cfg
    sched = None
    if args.schedule:
        sched = read_schedule(args.schedule)
    elif "schedule" in cfg:
        try:
            sched = sk.SigmaSchedule([read_polynomial(f) for f in cfg["schedule"]])
        except sk.ScheduleError as exc:
            raise UsageError(str(exc)) from exc
    opts["schedule"] = sched
    return opts


# -- commands --------------------------------------------------------------------

def _expr(text):
    try:
        return parse_expression(text)
    except ExprSyntaxError as exc:
        raise UsageError(f"syntax error: {exc}") from exc


def cmd_rank(args, opts):
    e = _expr(args.expr)
    res = cc.expression_rank(e, opts["T"])
    report = res.to_json(to_text(e))
    report["ok"] = res.exact is not None
    if res.exact is not None:
        line = f"rank {rat_str(res.exact)} (exact, T={opts['T']})"
    else:
        line = (f"rank in [{rat_str(res.lower)}, {rat_str(res.upper)}] "
                f"(no exact pattern, T={opts['T']})")
    return report, line


def cmd_eval(args, opts):
    e = _expr(args.expr)
    val = cc.evaluate(e, opts["T"])
    ranks = rep.rank_sequence(val)
    comps = {}
    for n in args.component or []:
        if not 0 <= n <= opts["T"]:
            raise UsageError(f"component {n} is outside 0..{opts['T']}")
        comps[str(n)] = [[rat_str(x) for x in row] for row in val.comps[n].to_dense()]
    report = {"expr": to_text(e), "T": opts["T"], "ranks": ranks,
              "zero": val.is_zero(), "components": comps, "ok": True}
    lines = [f"{to_text(e)}: ranks {ranks}"]
    for n, rows in comps.items():
        lines.append(f"component {n}:")
        lines.extend("  " + " ".join(row) for row in rows)
    return report, "\n".join(lines)


def cmd_monoid(args, opts):
    op = args.op
    ws = [read_word(t) for t in args.words]
    need = {"normalize": 1, "equal": 2, "add": 2, "le": 2, "refine": 4, "project": 1}[op]
    if len(ws) != need:
        raise UsageError(f"monoid {op} takes {need} word(s), got {len(ws)}")
    try:
        if op == "normalize":
            c = pm.canonicalize_M(ws[0])
            return ({"word": ws[0].to_json(), "canonical": c.to_json(), "normal_word": str(c.to_word()),
                     "ok": True}, str(c.to_word()))
        if op == "equal":
            eq = pm.equals_M(*ws)
            return ({"words": [w.to_json() for w in ws], "equal": eq, "ok": True},
                    "equal" if eq else "not equal")
        if op == "add":
            c = pm.add_M(pm.canonicalize_M(ws[0]), pm.canonicalize_M(ws[1]))
            return {"canonical": c.to_json(), "normal_word": str(c.to_word()), "ok": True}, str(c.to_word())
        if op == "le":
            verdict, wit = pm.le_bounded(ws[0], ws[1], args.level_bound)
            return ({"verdict": verdict, "witness": wit.to_json() if wit is not None else None,
                     "level_bound": args.level_bound, "ok": True},
                    verdict + (f" (complement {wit})" if wit is not None else ""))
        if op == "refine":
            grid = pm.refine_bounded(*ws, level_bound=args.level_bound)
            if grid is None:
                return ({"refinement": None, "level_bound": args.level_bound, "ok": False},
                        "no refinement found within the level bound")
            return ({"refinement": [[z.to_json() for z in row] for row in grid],
                     "level_bound": args.level_bound, "ok": True},
                    "; ".join(" | ".join(str(z) for z in row) for row in grid))
        c = pm.mbar_project(ws[0])
        return {"canonical": {"r": c.r, "n": c.n, "s": c.s, "t": c.t}, "ok": True}, str(c)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _zero_set_json(zs, limit=64):
    return {"finite": sorted(zs.finite), "period": zs.period,
            "residues": sorted(zs.residues), "start": zs.start,
            "members_below": limit, "members": zs.members(limit),
            "certificate": zs.certificate}


def cmd_series(args, opts):
    op = args.op
    ss = [read_series(t) for t in args.series]
    need = {"hadamard": 2, "zeros": 1, "qinv": (1, 2)}[op]
    if len(ss) not in (need if isinstance(need, tuple) else (need,)):
        raise UsageError(f"series {op} takes {need} argument(s)")
    terms = args.terms
    if op == "hadamard":
        h = rs.hadamard(*ss)
        ok = all(h.coeff(n) == ss[0].coeff(n) * ss[1].coeff(n) for n in range(terms))
        return ({"a": ss[0].text(), "b": ss[1].text(), "hadamard": h.text(), "terms_checked": terms,
                 "ok": ok}, h.text())
    pb = opts["period_bound"]
    if op == "zeros":
        zs = rs.zero_set(ss[0], pb)
        rep_ = _zero_set_json(zs)
        rep_["series"] = ss[0].text()
        rep_["ok"] = rs.nonzero_fully_certified(zs)
        return rep_, f"zeros below 64: {zs.members(64)}"
    p = rs.QFraction(ss[0], ss[1] if len(ss) > 1 else rs.HADAMARD_ONE, period_bound=pb)
    q = rs.q_quasi_inverse(p, pb)
    pqp = rs.q_mul(rs.q_mul(p, q), p)
    qpq = rs.q_mul(rs.q_mul(q, p), q)
    checks = {"p q p = p": rs.q_equal(pqp, p), "q p q = q": rs.q_equal(qpq, q)}
    return ({"num": p.num.text(), "den": p.den.text(),
             "quasi_inverse": {"num": q.num.text(), "den": q.den.text()},
             "checks": checks, "ok": all(checks.values())},
            f"{q.num.text()} ./ {q.den.text()}")


def cmd_skew(args, opts):
    scheds = [opts["schedule"]] if opts["schedule"] else None
    parts = args.check or ["lemma", "stabilization", "corners", "ranks"]
    names = {"lemma": "skew-lemma", "stabilization": "skew-stabilization",
             "corners": "corner-support", "decomposition": "standard-decomposition",
             "ranks": "tau-ranks"}
    so = SuiteOptions(None, opts["period_bound"], scheds)
    report = {name: run_suite(names[name], so) for name in parts}
    report["ok"] = all(r["ok"] for r in report.values())
    return report, ", ".join(f"{n}: {'pass' if report[n]['ok'] else 'FAIL'}" for n in parts)


def cmd_lamplighter(args, opts):
    if args.op == "verify":
        r = lamp.verify_embedding_suite()
        return r, "embedding checks " + ("pass" if r["ok"] else "FAIL")
    if args.word is None:
        raise UsageError("lamplighter trace needs a word in s and s*")
    letters = read_fim_word(args.word)
    t = fim.evaluate(letters)
    tr = lamp.trace_of_triple(t)
    report = {"word": args.word, "normal_form": fim.normal_text(t), "trace": rat_str(tr), "ok": True}
    if args.image:
        report["image"] = lamp.embed_triple(t).to_json()
    return report, rat_str(tr)


def cmd_suite(args, opts):
    name = args.name
    if name not in SUITES:
        raise UsageError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    so = SuiteOptions(opts["T"] if opts["explicit_T"] else None, opts["period_bound"],
                      [opts["schedule"]] if opts["schedule"] else None)
    r = run_suite(name, so)
    r = {"suite": name, **r}
    return r, f"{name}: {'pass' if r['ok'] else 'FAIL'}"


# -- plumbing --------------------------------------------------------------------

def _jsonable(x):
    if isinstance(x, (set, frozenset)):
        return sorted(x)
    if hasattr(x, "numerator") and hasattr(x, "denominator"):
        return rat_str(x)
    if hasattr(x, "to_json"):
        return x.to_json()
    return str(x)


def dump_report(report):
    """Deterministic JSON text (sorted keys, exact rationals as strings)."""
    return json.dumps(report, sort_keys=True, indent=2, default=_jsonable) + "\n"


def write_report(report, dest):
    text = dump_report(report)
    if dest == "-":
        sys.stdout.write(text)
        return
    base = os.environ.get(REPORT_DIR_ENV)
    if base and not os.path.isabs(dest):
        os.makedirs(base, exist_ok=True)
        dest = os.path.join(base, dest)
    with open(dest, "w", encoding="utf-8") as fh:
        fh.write(text)


def _common_options(default):
    # subcommands repeat the options with suppressed defaults so a flag given
    # before the command name is not reset
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--T", type=int, default=default, help="truncation (default 64)")
    common.add_argument("--period-bound", type=int, default=default,
                        help="largest period tried for zero sets (default 64)")
    common.add_argument("--schedule", metavar="FILE", default=default, help="JSON schedule of polynomials")
    common.add_argument("--config", metavar="FILE", default=default,
                        help="TOML file with T, period_bound, schedule")
    common.add_argument("--json", metavar="PATH", default=default,
                        help="write the JSON report here ('-' for stdout)")
    return common


def build_parser():
    top = _common_options(None)
    common = _common_options(argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="fimrank", parents=[top],
                                description="Exact ranks and identities for the free inverse monoid algebra.")
    p.add_argument("--suite", metavar="NAME", help="shorthand for 'suite NAME'")
    sub = p.add_subparsers(dest="command")

    r = sub.add_parser("rank", parents=[common], help="weighted rank of an expression")
    r.add_argument("expr")
    r.set_defaults(func=cmd_rank)

    e = sub.add_parser("eval", parents=[common], help="component ranks of an expression")
    e.add_argument("expr")
    e.add_argument("--component", type=int, action="append", help="also print this component")
    e.set_defaults(func=cmd_eval)

    m = sub.add_parser("monoid", parents=[common], help="word problem in the refinement monoid")
    m.add_argument("op", choices=["normalize", "equal", "add", "le", "refine", "project"])
    m.add_argument("words", nargs="+")
    m.add_argument("--level-bound", type=int, default=6)
    m.set_defaults(func=cmd_monoid)

    s = sub.add_parser("series", parents=[common], help="rational series operations")
    s.add_argument("op", choices=["hadamard", "zeros", "qinv"])
    s.add_argument("series", nargs="+")
    s.add_argument("--terms", type=int, default=100)
    s.set_defaults(func=cmd_series)

    k = sub.add_parser("skew", parents=[common], help="skew shift pair checks")
    k.add_argument("op", choices=["verify"])
    k.add_argument("--check", action="append",
                   choices=["lemma", "stabilization", "corners", "decomposition", "ranks"])
    k.set_defaults(func=cmd_skew)

    lp = sub.add_parser("lamplighter", parents=[common], help="traces in the lamplighter group algebra")
    lp.add_argument("op", choices=["trace", "verify"])
    lp.add_argument("word", nargs="?")
    lp.add_argument("--image", action="store_true", help="include the embedded element")
    lp.set_defaults(func=cmd_lamplighter)

    su = sub.add_parser("suite", parents=[common], help="run a named verification suite")
    su.add_argument("name", help=", ".join(SUITES))
    su.set_defaults(func=cmd_suite)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.command is None:
        if not args.suite:
            parser.print_usage(sys.stderr)
            return EXIT_USAGE
        args.command, args.name, args.func = "suite", args.suite, cmd_suite
    try:
        opts = resolve_options(args)
        report, line = args.func(args, opts)
    except UsageError as exc:
        print(f"fimrank: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (rs.BoundExceeded, pm.OracleResourceError) as exc:
        report = {"ok": False, "error": {"kind": "resource", "cause": type(exc).__name__,
                                         "message": str(exc)}}
        if args.json:
            write_report(report, args.json)
        print(f"fimrank: resource bound exceeded: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ZeroDivisionError, ValueError) as exc:
        report = {"ok": False, "error": {"kind": "math", "cause": type(exc).__name__,
                                         "message": str(exc)}}
        if args.json:
            write_report(report, args.json)
        print(f"fimrank: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if args.json:
        write_report(report, args.json)
    if args.json != "-":
        print(line)
    return EXIT_OK if report.get("ok") else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
