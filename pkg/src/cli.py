# src/cli.py
"""`prozeta` command line.

Exit codes: 0 success, 1 verification mismatch or a negative result
(NOT_DIVISIBLE, NO_WITNESS), 2 usage or input error, 3 enumeration cap hit.
"""
import argparse
import logging
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from sympy import isprime

from . import config
from .appendix import run_appendix, render_report
from .arith import zeta_p, zsigmondy_set
from .audit import record_audit
from .dirichlet_ring import FiniteDirichletSeries, divide, render_power_form, to_text
from .errors import CapExceeded, FormatError, NoWitness, NotDivisible, NotPrime, ProzetaError
from .ingest import load_group, load_profile, load_series
from .lie_series import parse_form, render_trace, series_from_form, series_trace
from .metrics import COMMAND_LATENCY, write_metrics
from .perm_groups import (all_subgroups, conjugacy_classes_of_subgroups, generation_probability,
                          intersection_of_maximals_check, maximal_subgroups, mobius,
                          odd_supplement_series, overgroups_of, pg_series, supplement_series, sylow)
from .profinite_engine import (factor_series, lie_cascade, primes_of_profile, render_cascade,
                               sml_check, sporadic_cascade, truncated_PG)
from .sporadic_data import lookup, render_record, validate_tables

logger = logging.getLogger(__name__)

# (stdout text, exit code, audit summary)
Outcome = Tuple[str, int, Dict[str, Any]]


def _primes_list(text: str) -> List[int]:
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise FormatError(f"--pi expects comma-separated primes, got {text!r}")
    for p in values:
        if not isprime(p):
            raise NotPrime(f"{p} is not prime")
    return values


def _render_series(series: FiniteDirichletSeries, fmt: str) -> str:
    if fmt == "tsv":
        return to_text(series)
    return f"{series}\n{render_power_form(series)}\n"


# series
def cmd_series_lie(args) -> Outcome:
    form = parse_form(args.form)
    if args.trace:
        return render_trace(series_trace(form)), 0, {"form": form.descriptor()}
    series = series_from_form(form)
    return _render_series(series, args.format), 0, {"form": form.descriptor(), "series": str(series)}


def cmd_series_abelian(args) -> Outcome:
    values = {}
    for token in args.fields:
        key, sep, raw = token.partition("=")
        if not sep or key not in ("p", "r", "c") or key in values:
            raise FormatError(f"unexpected field {token!r}")
        try:
            values[key] = int(raw)
        except ValueError:
            raise FormatError(f"{key}={raw} is not an integer")
    if set(values) != {"p", "r", "c"}:
        raise FormatError("series abelian needs p=, r= and c=")
    if not isprime(values["p"]):
        raise NotPrime(f"{values['p']} is not prime")
    if values["r"] < 1:
        raise FormatError("r must be positive")
    if values["c"] < 0:
        raise FormatError("c must be nonnegative")
    series = FiniteDirichletSeries.binomial(values["p"] ** values["r"], -values["c"])
    return _render_series(series, args.format), 0, {"series": str(series)}


# ring
def cmd_ring(args) -> Outcome:
    a = load_series(args.a)
    if args.op in ("mul", "divide"):
        b = load_series(args.b)
        if args.op == "mul":
            result = a * b
        else:
            try:
                result = divide(a, b)
            except NotDivisible as exc:
                return f"{exc}\n", 1, {"result": exc.code}
    elif args.op == "pipart":
        result = a.pi_part(_primes_list(args.pi))
    elif args.op == "substitute":
        if args.r < 1:
            raise FormatError("--r must be positive")
        result = a.substitute(args.r)
    else:
        if args.t < 0:
            raise FormatError("--t must be nonnegative")
        value = a.evaluate(args.t)
        return f"{value}\n", 0, {"value": str(value)}
    return _render_series(result, args.format), 0, {"series": str(result)}


# arith
def cmd_zsigmondy(args) -> Outcome:
    result = zsigmondy_set(args.a, args.n)
    lines = [str(r) for r in result.primes]
    lines.append(f"exception\t{'yes' if result.is_exception else 'no'}")
    return "\n".join(lines) + "\n", 0, result.model_dump()


def cmd_zetap(args) -> Outcome:
    value = zeta_p(args.p, args.m)
    return f"{value}\n", 0, {"zeta": value}


# oracle
def cmd_oracle_lattice(args) -> Outcome:
    G = load_group(args.group, config.load_caps())
    lattice = all_subgroups(G)
    table = mobius(lattice)
    classes = conjugacy_classes_of_subgroups(lattice)
    series = pg_series(G, lattice)
    bad = intersection_of_maximals_check(lattice, table)
    lines = [
        f"group\t{G.name}",
        f"order\t{G.order}",
        f"subgroups\t{len(lattice)}",
        f"classes\t{len(classes)}",
        f"maximal\t{len(maximal_subgroups(lattice))}",
        "class\torder\tsize\tmu",
    ]
    for cls in classes:
        lines.append(f"\t{len(cls[0])}\t{len(cls)}\t{table[cls[0]]}")
    lines.append(f"P_G\t{series}")
    lines.append(f"P_G odd\t{series.pi_part({2})}")
    lines.append(f"mu-support check\t{'ok' if not bad else f'{len(bad)} failures'}")
    return "\n".join(lines) + "\n", (1 if bad else 0), {"subgroups": len(lattice), "series": str(series)}


def cmd_oracle_hall(args) -> Outcome:
    if args.t < 0:
        raise FormatError("--t must be nonnegative")
    G = load_group(args.group, config.load_caps())
    from_series = pg_series(G).evaluate(args.t)
    counted = generation_probability(G, args.t)
    agree = from_series == counted
    lines = [
        f"group\t{G.name}",
        f"P_G({args.t})\t{from_series}",
        f"counted\t{counted}",
        f"agree\t{'yes' if agree else 'no'}",
    ]
    return "\n".join(lines) + "\n", (0 if agree else 1), {"value": str(counted), "agree": agree}


def cmd_oracle_supplement(args) -> Outcome:
    caps = config.load_caps()
    X = load_group(args.x, caps)
    S_group = load_group(args.s, caps)
    if S_group.degree != X.degree:
        raise FormatError(f"{S_group.name} acts on {S_group.degree} points, {X.name} on {X.degree}")
    S = X.subgroup(S_group.generators)
    if not S <= X.elements():
        raise FormatError(f"{S_group.name} is not a subgroup of {X.name}")
    series = odd_supplement_series(X, S) if args.odd else supplement_series(X, S)
    return _render_series(series, args.format), 0, {"series": str(series)}


def cmd_oracle_sylow(args) -> Outcome:
    G = load_group(args.group, config.load_caps())
    P = sylow(G, args.p)
    interval = overgroups_of(G, P)
    lines = [f"group\t{G.name}", f"sylow\t{len(P)}", f"overgroups\t{len(interval)}", "index\torder"]
    lines.extend(f"{G.order // len(K)}\t{len(K)}" for K in interval)
    return "\n".join(lines) + "\n", 0, {"overgroups": len(interval)}


# profile
def cmd_profile_analyze(args) -> Outcome:
    profile = load_profile(args.file)
    pi = set(_primes_list(args.pi)) if args.pi else primes_of_profile(profile)
    lines = [f"pi\t{','.join(map(str, sorted(pi))) or '-'}"]
    for i, descriptor in enumerate(profile):
        fs = factor_series(descriptor, pi)
        lines.append(f"factor {i}\t{fs.label}\tr={fs.r}\t{'partial ' if fs.partial else ''}{fs.series}")
    sml = sml_check(profile)
    lines.append(f"r-values\t{','.join(map(str, sml.r_values))}\tt={sml.t}")
    if args.truncate:
        lines.append(f"P_G^pi <= {args.truncate}\t{truncated_PG(profile, pi, args.truncate)}")
    code = 0
    if args.cascade:
        try:
            report = lie_cascade(profile) if args.cascade == "lie" else sporadic_cascade(profile)
        except NoWitness as exc:
            lines.append(str(exc))
            code = 1
        else:
            lines.append(render_cascade(report).rstrip("\n"))
    return "\n".join(lines) + "\n", code, {"factors": len(profile)}


# sporadic
def cmd_sporadic_show(args) -> Outcome:
    record = lookup(args.name, args.aut)
    return render_record(record), 0, {"name": record.label}


def cmd_sporadic_validate(args) -> Outcome:
    report = validate_tables()
    lines = [f"rows\t{report.checked}"]
    lines.extend(f"violation\t{v}" for v in report.violations)
    lines.extend(f"flagged\t{f}" for f in report.flagged)
    lines.extend(f"note\t{n}" for n in report.notes)
    lines.append(f"status\t{'ok' if report.ok else 'failed'}")
    summary = {"violations": len(report.violations), "flagged": len(report.flagged)}
    return "\n".join(lines) + "\n", (0 if report.ok else 1), summary


# verify
def cmd_verify_appendix(args) -> Outcome:
    report = run_appendix(args.variant, args.oracle_s8)
    summary = {"rows": len(report.rows), "mismatches": report.mismatches}
    return render_report(report), (1 if report.mismatches else 0), summary


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="prozeta", description="Exact probabilistic zeta function toolkit")
    parser.add_argument("--log-level", default=None, help="root log level (default PROZETA_LOG_LEVEL)")
    parser.add_argument("--metrics-file", default=None, help="write Prometheus metrics here after the run")
    sub = parser.add_subparsers(dest="command", required=True)

    series = sub.add_parser("series").add_subparsers(dest="kind", required=True)
    p = series.add_parser("lie", help="P_S(s) of a finite group of Lie type")
    p.add_argument("form", nargs="+", help="key=value form descriptor")
    p.add_argument("--format", choices=("text", "tsv"), default="text")
    p.add_argument("--trace", action="store_true", help="print the per-subset breakdown")
    p.set_defaults(handler=cmd_series_lie, name="series lie")
    p = series.add_parser("abelian", help="1 - c/(p^r)^s")
    p.add_argument("fields", nargs="+")
    p.add_argument("--format", choices=("text", "tsv"), default="text")
    p.set_defaults(handler=cmd_series_abelian, name="series abelian")

    ring = sub.add_parser("ring").add_subparsers(dest="op", required=True)
    for op in ("mul", "divide"):
        p = ring.add_parser(op)
        p.add_argument("a")
        p.add_argument("b")
    p = ring.add_parser("pipart")
    p.add_argument("a")
    p.add_argument("--pi", required=True)
    p = ring.add_parser("substitute")
    p.add_argument("a")
    p.add_argument("--r", type=int, required=True)
    p = ring.add_parser("eval")
    p.add_argument("a")
    p.add_argument("--t", type=int, required=True)
    for op, p in ring.choices.items():
        p.add_argument("--format", choices=("text", "tsv"), default="text")
        p.set_defaults(handler=cmd_ring, name=f"ring {op}")

    p = sub.add_parser("zsigmondy", help="primitive prime divisors of a^n - 1")
    p.add_argument("a", type=int)
    p.add_argument("n", type=int)
    p.set_defaults(handler=cmd_zsigmondy, name="zsigmondy")
    p = sub.add_parser("zetap", help="zeta_p(m)")
    p.add_argument("p", type=int)
    p.add_argument("m", type=int)
    p.set_defaults(handler=cmd_zetap, name="zetap")

    oracle = sub.add_parser("oracle").add_subparsers(dest="kind", required=True)
    p = oracle.add_parser("lattice")
    p.add_argument("group")
    p.set_defaults(handler=cmd_oracle_lattice, name="oracle lattice")
    p = oracle.add_parser("hall")
    p.add_argument("group")
    p.add_argument("--t", type=int, default=2)
    p.set_defaults(handler=cmd_oracle_hall, name="oracle hall")
    p = oracle.add_parser("supplement")
    p.add_argument("x")
    p.add_argument("s")
    p.add_argument("--odd", action="store_true", help="odd-index part via the Sylow 2-overgroup interval")
    p.add_argument("--format", choices=("text", "tsv"), default="text")
    p.set_defaults(handler=cmd_oracle_supplement, name="oracle supplement")
    p = oracle.add_parser("sylow-overgroups")
    p.add_argument("group")
    p.add_argument("--p", type=int, default=2)
    p.set_defaults(handler=cmd_oracle_sylow, name="oracle sylow-overgroups")

    profile = sub.add_parser("profile").add_subparsers(dest="kind", required=True)
    p = profile.add_parser("analyze")
    p.add_argument("file")
    p.add_argument("--pi", default=None)
    p.add_argument("--truncate", type=int, default=None)
    p.add_argument("--cascade", choices=("lie", "sporadic"), default=None)
    p.set_defaults(handler=cmd_profile_analyze, name="profile analyze")

    sporadic = sub.add_parser("sporadic").add_subparsers(dest="kind", required=True)
    p = sporadic.add_parser("show")
    p.add_argument("name")
    p.add_argument("--aut", action="store_true")
    p.set_defaults(handler=cmd_sporadic_show, name="sporadic show")
    p = sporadic.add_parser("validate")
    p.set_defaults(handler=cmd_sporadic_validate, name="sporadic validate")

    verify = sub.add_parser("verify").add_subparsers(dest="kind", required=True)
    p = verify.add_parser("appendix")
    p.add_argument("--variant", choices=("ordinary", "twisted-pairs", "both"), default="both")
    p.add_argument("--oracle-s8", action="store_true", help="also run the S8 Sylow-interval comparison")
    p.set_defaults(handler=cmd_verify_appendix, name="verify appendix")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        config.configure_logging(args.log_level)
    except ValueError:
        print(f"FORMAT_ERROR: unknown log level {args.log_level!r}", file=sys.stderr)
        return 2

    handler: Callable[[argparse.Namespace], Outcome] = args.handler
    summary: Dict[str, Any] = {}
    try:
        with COMMAND_LATENCY.labels(command=args.name).time():
            text, code, summary = handler(args)
        sys.stdout.write(text)
    except CapExceeded as exc:
        print(str(exc), file=sys.stderr)
        code = 3
    except ProzetaError as exc:
        print(str(exc), file=sys.stderr)
        code = 2
    except FileNotFoundError as exc:
        print(f"FORMAT_ERROR: {exc}", file=sys.stderr)
        code = 2
    except ValueError as exc:
        print(f"FORMAT_ERROR: {exc}", file=sys.stderr)
        code = 2
    logger.info("%s exited %d", args.name, code)

    record_audit(args.name, argv, code, summary)
    metrics_file = args.metrics_file or config.METRICS_FILE
    if metrics_file:
        write_metrics(metrics_file)
    return code
