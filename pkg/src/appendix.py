# src/appendix.py
"""Regression of the characteristic-2 exceptional formulas.

Reference formulas are stored in their printed form, k(m)^(1-s) with m
factored, and compared term by term against series_from_form. Diffs are
reported on the multiplier k at each index m.
"""
import logging
import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from . import coxeter
from .dirichlet_ring import FiniteDirichletSeries, factored
from .lie_series import parse_form, series_from_form
from .metrics import VERIFY_MISMATCHES
from .models import AppendixReport, AppendixRowReport, TermDiff
from .sporadic_data import expand, parse_factored

logger = logging.getLogger(__name__)

VARIANTS = (coxeter.ORDINARY, coxeter.TWISTED_PAIRS)


@dataclass(frozen=True)
class AppendixRow:
    row: str
    label: str
    form: str
    graph: bool
    printed: str


ROWS: Tuple[AppendixRow, ...] = (
    AppendixRow("(i)", "PSL6(2)", "family=A rank=5 q=2 graph=2", True,
                "-(3^2*7*31) -(3*5*7^2*31) -(3^3*7*31) +2(3^4*7^2*31) +(3^3*5*7^2*31) -(3^4*5*7^2*31)"),
    AppendixRow("(i)", "PSL6(2)", "family=A rank=5 q=2", False,
                "-2(3^2*7) -(3^2*5*31) -2(3*7*31) +3(3^2*7*31) +6(3^2*5*7*31) +(3*5*7^2*31)"
                " -4(3^3*5*7*31) -6(3^2*5*7^2*31) +5(3^3*5*7^2*31) -(3^4*5*7^2*31)"),
    AppendixRow("(ii)", "PSL5(2)", "family=A rank=4 q=2 graph=2", True,
                "-(3*5*31) -(3^2*7*31) +(3^2*5*7*31)"),
    AppendixRow("(ii)", "PSL5(2)", "family=A rank=4 q=2", False,
                "-2(31) -2(5*31) +3(3*5*31) +3(5*7*31) -4(3*5*7*31) +(3^2*5*7*31)"),
    AppendixRow("(iii)", "PSL4(2)", "family=A rank=3 q=2 graph=2", True,
                "-(3^2*7) -(3*5*7) +(3^2*5*7)"),
    AppendixRow("(iii)", "PSL4(2)", "family=A rank=3 q=2", False,
                "-2(3*5) -(5*7) +3(3*5*7) -(3^2*5*7)"),
    AppendixRow("(iv)", "PSL3(2)", "family=A rank=2 q=2 graph=2", True, "-(3*7)"),
    AppendixRow("(iv)", "PSL3(2)", "family=A rank=2 q=2", False, "-2(7) +(3*7)"),
    AppendixRow("(v)", "PSL3(4)", "family=A rank=2 q=4 graph=2", True, "-(3*5*7)"),
    AppendixRow("(v)", "PSL3(4)", "family=A rank=2 q=4", False, "-2(3*7) +(3*5*7)"),
    AppendixRow("(vi)", "PSp6(2)", "family=C rank=3 q=2", False,
                "-(3^2*7) -(3^3*5) -(3^2*5*7) +3(3^3*5*7) -(3^4*5*7)"),
    AppendixRow("(vii)", "U4(2)", "family=A rank=3 q=2 twist=2", False,
                "-(3^3) -(3^2*5) +(3^3*5)"),
    AppendixRow("(viii)", "POmega8+(2)", "family=D rank=4 q=2", False,
                "-3(3^2*5) -(3*5^2*7) +3(3^3*5^2) +3(3^3*5^2*7) -4(3^4*5^2*7) +(3^5*5^2*7)"),
)

_TERM = re.compile(r"([+-])(\d*)\(([0-9^*]+)\)")


def printed_multipliers(text: str) -> Dict[int, int]:
    """index m -> k for the printed terms k(m)^(1-s); the leading 1 is implied."""
    out: Dict[int, int] = {}
    for sign, k, body in _TERM.findall(text):
        m = expand(parse_factored(body))
        out[m] = out.get(m, 0) + (-1 if sign == "-" else 1) * int(k or 1)
    return out


def printed_series(row: AppendixRow) -> FiniteDirichletSeries:
    terms = [(1, 1)] + [(m, k * m) for m, k in printed_multipliers(row.printed).items()]
    return FiniteDirichletSeries(terms)


def multipliers(series: FiniteDirichletSeries) -> Dict[int, int]:
    return {n: c // n for n, c in series.items() if n > 1}


def term_diffs(computed: FiniteDirichletSeries, printed: Dict[int, int]) -> List[TermDiff]:
    ours = multipliers(computed)
    return [TermDiff(index=m, computed=ours.get(m, 0), printed=printed.get(m, 0))
            for m in sorted(set(ours) | set(printed)) if ours.get(m, 0) != printed.get(m, 0)]


def check_row(row: AppendixRow, variant: Optional[str] = None) -> AppendixRowReport:
    tokens = row.form.split() + ([f"variant={variant}"] if variant else [])
    computed = series_from_form(parse_form(tokens))
    diffs = term_diffs(computed, printed_multipliers(row.printed))
    label = f"{row.label} {'graph' if row.graph else 'no graph'}"
    report = AppendixRowReport(row=row.row, label=label, variant=variant,
                               computed=sorted(multipliers(computed).items()), diffs=diffs)
    if diffs:
        VERIFY_MISMATCHES.labels(row=f"{row.row}{'-graph' if row.graph else ''}").inc()
        logger.warning("appendix %s %s [%s]: %d term diffs", row.row, label, variant or "-", len(diffs))
    return report


def worked_example() -> Dict[str, object]:
    """T_W(2) and the T_{W_J}(2) values for A3."""
    diagram = coxeter.DynkinDiagram.standard("A", 3)
    t_w = coxeter.evaluate(coxeter.poincare("A", 3), 2)
    values = {}
    for J in ((1, 2), (2, 3), (1, 3), (1,), (2,), (3,), ()):
        values["{" + ",".join(map(str, J)) + "}"] = coxeter.evaluate(coxeter.parabolic_poincare(diagram, J), 2)
    return {"T_W": t_w, "T_J": values}


def s8_comparison() -> Dict[str, object]:
    """Odd-index supplement series of A8 in S8 against the (iii) graph formula."""
    from .perm_groups import odd_supplement_series, preset

    S8, A8 = preset("S8"), preset("A8")
    oracle = odd_supplement_series(S8, A8.elements())
    row = next(r for r in ROWS if r.row == "(iii)" and r.graph)
    out: Dict[str, object] = {"series": str(oracle), "printed": printed_series(row) == oracle}
    for variant in VARIANTS:
        out[variant] = series_from_form(parse_form(row.form.split() + [f"variant={variant}"])) == oracle
    return out


def run_appendix(variant: str = "both", oracle_s8: bool = False) -> AppendixReport:
    variants: Sequence[str] = VARIANTS if variant == "both" else (variant,)
    report = AppendixReport()
    for row in ROWS:
        if row.graph:
            report.rows.extend(check_row(row, v) for v in variants)
        else:
            report.rows.append(check_row(row))
    example = worked_example()
    report.extra["worked_example"] = example
    if oracle_s8:
        report.extra["s8"] = s8_comparison()
    return report


def render_report(report: AppendixReport) -> str:
    lines = []
    example = report.extra.get("worked_example")
    if example:
        values = ", ".join(f"{k}={v}" for k, v in example["T_J"].items())
        lines.append(f"worked-example\tT_W(2)={example['T_W']}\t{values}")
    for row in report.rows:
        tag = f" [{row.variant}]" if row.variant else ""
        lines.append(f"row {row.row} {row.label}{tag}\t{'ok' if row.matches else 'MISMATCH'}")
        for d in row.diffs:
            lines.append(f"  ({factored(d.index)})^(1-s)\tcomputed {d.computed:+d}\tprinted {d.printed:+d}")
    s8 = report.extra.get("s8")
    if s8:
        lines.append(f"oracle S8/A8 odd part\t{s8['series']}")
        for key in ("printed",) + VARIANTS:
            lines.append(f"  agrees with {key}\t{'yes' if s8[key] else 'no'}")
    lines.append(f"rows {len(report.rows)}\tmismatches {report.mismatches}")
    return "\n".join(lines) + "\n"
