# src/lie_series.py
"""P^{p}_{X,S}(s) for almost simple groups of Lie type in characteristic p.

The series is the signed sum over orbit subsets J of the index
T_W(q)/T_{W_J}(q) raised to 1 - s, read off a parabolic index catalog.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, prod
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence

from sympy import factorint

from . import coxeter
from .arith import valuation, zeta_p, zsigmondy_set
from .coxeter import DynkinDiagram, ParabolicIndexCatalog
from .dirichlet_ring import FiniteDirichletSeries, factored
from .errors import FormatError, HypothesisViolation, NonIntegralIndex, UnsupportedForm
from .models import PrimitiveDivisorReport

logger = logging.getLogger(__name__)

CATALOG_DIR = Path(__file__).parent / "data" / "catalogs"
SHIPPED_CATALOGS = {("A", 3, 2): CATALOG_DIR / "2A3.cat"}

FORM_KEYS = ("family", "rank", "q", "twist", "graph", "variant")


@dataclass(frozen=True)
class LieForm:
    family: str
    rank: int
    q: int
    twist: int = 1               # 1 means none
    graph: int = 1
    variant: Optional[str] = None

    def __post_init__(self):
        family, rank = coxeter.normalize_family(self.family, self.rank)
        object.__setattr__(self, "family", family)
        if self.twist not in (1, 2, 3) or self.graph not in (1, 2, 3):
            raise FormatError("twist and graph take none, 2 or 3")
        if self.twist > 1 and self.graph > 1:
            raise UnsupportedForm("a twisted form with graph automorphisms is not modelled")
        factors = factorint(self.q)
        if self.q < 2 or len(factors) != 1:
            raise FormatError(f"q={self.q} is not a prime power")

    @property
    def p(self) -> int:
        return next(iter(factorint(self.q)))

    @property
    def f(self) -> int:
        return factorint(self.q)[self.p]

    @property
    def diagram(self) -> DynkinDiagram:
        return DynkinDiagram.standard(self.family, self.rank)

    @property
    def label(self) -> str:
        prefix = f"^{self.twist}" if self.twist > 1 else ""
        suffix = f".graph{self.graph}" if self.graph > 1 else ""
        return f"{prefix}{self.diagram.label}({self.q}){suffix}"

    def descriptor(self) -> str:
        def flag(v: int) -> str:
            return "none" if v == 1 else str(v)

        family = f"{self.family}{self.rank}" if self.family in "EFG" else self.family
        text = (f"family={family} "
                f"rank={self.rank} q={self.q} twist={flag(self.twist)} graph={flag(self.graph)}")
        return f"{text} variant={self.variant}" if self.variant else text


def parse_form(tokens: Iterable[str]) -> LieForm:
    """Parse `key=value` tokens of a form descriptor."""
    values: Dict[str, str] = {}
    for token in tokens:
        key, sep, value = token.partition("=")
        if not sep or key not in FORM_KEYS:
            raise FormatError(f"unknown form field {token!r}")
        if key in values:
            raise FormatError(f"repeated form field {key!r}")
        values[key] = value
    for key in ("family", "q"):
        if key not in values:
            raise FormatError(f"form descriptor needs {key}=")
    family = values["family"]
    if "rank" in values:
        try:
            rank = int(values["rank"])
        except ValueError:
            raise FormatError(f"rank={values['rank']} is not an integer")
    elif family[1:].isdigit():
        rank = int(family[1:])
    else:
        raise FormatError("form descriptor needs rank=")
    try:
        q = int(values["q"])
    except ValueError:
        raise FormatError(f"q={values['q']} is not an integer")

    def flag(name: str) -> int:
        raw = values.get(name, "none")
        if raw == "none":
            return 1
        if raw in ("2", "3"):
            return int(raw)
        raise FormatError(f"{name}={raw} is not one of none, 2, 3")

    variant = values.get("variant")
    if variant is not None and variant not in (coxeter.ORDINARY, coxeter.TWISTED_PAIRS) \
            and not variant.startswith("file:"):
        raise FormatError(f"variant={variant} is not ordinary, twisted-pairs or file:PATH")
    form = LieForm(family, rank, q, flag("twist"), flag("graph"), variant)
    if form.graph > 1 and variant is None:
        raise FormatError("graph automorphism forms need an explicit variant=")
    return form


def _load_catalog_file(path: Path, form: LieForm) -> ParabolicIndexCatalog:
    if not path.exists():
        raise FileNotFoundError(f"{path} not found")
    header, catalog = coxeter.parse_catalog(path.read_text(encoding="utf-8"), str(path))
    if (header.family, header.rank, header.twist, header.graph) != (form.family, form.rank, form.twist, form.graph):
        raise FormatError(f"{path}: catalog is for {header.family}{header.rank}, not {form.label}")
    return catalog


@lru_cache(maxsize=256)
def catalog_for(form: LieForm) -> ParabolicIndexCatalog:
    diagram = form.diagram
    if form.variant and form.variant.startswith("file:"):
        return _load_catalog_file(Path(form.variant[len("file:"):]), form)
    if form.twist > 1:
        coxeter.graph_symmetry(diagram, form.twist)
        shipped = SHIPPED_CATALOGS.get((form.family, form.rank, form.twist))
        if shipped is None or form.variant is not None:
            raise UnsupportedForm(f"no parabolic catalog ships for {form.label}")
        return _load_catalog_file(shipped, form)
    symmetry = coxeter.graph_symmetry(diagram, form.graph)
    return coxeter.build_catalog(diagram, symmetry, form.variant or coxeter.ORDINARY)


@dataclass(frozen=True)
class TraceRow:
    subset: str
    size: int
    t_j: int
    index: int
    sign: int


def series_trace(form: LieForm) -> List[TraceRow]:
    """Per-subset contributions before coefficients at equal indices merge."""
    catalog = catalog_for(form)
    t_w = coxeter.evaluate(catalog.t_w, form.q)
    rows = []
    for J in catalog.subsets():
        t_j = coxeter.evaluate(catalog.entries[J], form.q)
        if t_j == 0 or t_w % t_j:
            raise NonIntegralIndex(f"T_J({form.q}) = {t_j} does not divide T_W({form.q}) = {t_w}",
                                   subset=catalog.describe(J))
        sign = -1 if (len(catalog.orbits) + len(J)) % 2 else 1
        rows.append(TraceRow(catalog.describe(J), len(J), t_j, t_w // t_j, sign))
    return rows


def series_from_form(form: LieForm) -> FiniteDirichletSeries:
    series = FiniteDirichletSeries([(row.index, row.sign * row.index) for row in series_trace(form)])
    logger.debug("series %s: %d terms", form.label, len(series))
    return series


def render_trace(rows: Sequence[TraceRow]) -> str:
    lines = ["J\t|J|\tT_J(q)\tindex\tsign"]
    for row in sorted(rows, key=lambda r: (r.index, r.subset)):
        lines.append(f"{row.subset}\t{row.size}\t{row.t_j}\t{factored(row.index)}\t{'+' if row.sign > 0 else '-'}")
    return "\n".join(lines) + "\n"


def lift(series: FiniteDirichletSeries, r: int) -> FiniteDirichletSeries:
    return series.substitute(r)


# orders
def isogeny_divisor(form: LieForm) -> int:
    q, n = form.q, form.rank
    if form.twist == 2:
        if form.family == "A":
            return gcd(n + 1, q + 1)
        if form.family == "D":
            return gcd(4, q ** n + 1)
        if form.family == "E":
            return gcd(3, q + 1)
        return 1
    if form.twist == 3:
        return 1
    if form.family == "A":
        return gcd(n + 1, q - 1)
    if form.family in "BC":
        return gcd(2, q - 1)
    if form.family == "D":
        return gcd(4, q ** n - 1)
    if form.family == "E" and n == 6:
        return gcd(3, q - 1)
    if form.family == "E" and n == 7:
        return gcd(2, q - 1)
    return 1


def group_order(form: LieForm) -> int:
    """|S| for the simple socle of the form."""
    q, n = form.q, form.rank
    if form.twist == 1:
        degrees = coxeter.weyl_degrees(form.family, n)
        raw = q ** coxeter.positive_roots(form.family, n) * prod(q ** d - 1 for d in degrees)
    elif form.family == "A":
        raw = q ** (n * (n + 1) // 2) * prod(q ** i - (-1) ** i for i in range(2, n + 2))
    elif form.family == "D" and form.twist == 2:
        raw = q ** (n * (n - 1)) * (q ** n + 1) * prod(q ** (2 * i) - 1 for i in range(1, n))
    elif form.family == "D" and form.twist == 3 and n == 4:
        raw = q ** 12 * (q ** 8 + q ** 4 + 1) * (q ** 6 - 1) * (q ** 2 - 1)
    elif form.family == "E" and form.twist == 2 and n == 6:
        raw = (q ** 36 * (q ** 12 - 1) * (q ** 9 + 1) * (q ** 8 - 1) * (q ** 6 - 1)
               * (q ** 5 + 1) * (q ** 2 - 1))
    else:
        raise UnsupportedForm(f"no order formula for {form.label}")
    return raw // isogeny_divisor(form)


def order_factored(form: LieForm) -> Dict[int, int]:
    return dict(sorted(factorint(group_order(form)).items()))


def zeta_p_of_form(form: LieForm) -> int:
    return zeta_p(form.p, group_order(form))


# structural checks
def check_hypothesis(p: int, zeta: int) -> None:
    if zeta <= 1 or (p == 2 and zeta <= 6):
        raise HypothesisViolation(f"zeta_{p}(S) = {zeta} is outside the hypothesis", p=p, zeta=zeta)


def primitive_divisor_report(series: FiniteDirichletSeries, p: int, zeta: int, tau: int,
                             m_max: int = 30) -> PrimitiveDivisorReport:
    check_hypothesis(p, zeta)
    if tau not in zsigmondy_set(p, zeta).primes:
        raise HypothesisViolation(f"{tau} is not a primitive prime divisor of {p}^{zeta} - 1")
    target = valuation(tau, p ** zeta - 1)
    indices = [n for n in series.support() if n > 1]

    bad_a = [n for n in indices if valuation(tau, n) != target]
    bad_b = []
    for m in range(zeta + 1, m_max + 1):
        primes = zsigmondy_set(p, m).primes
        bad_b.extend(n for n in indices if any(n % r == 0 for r in primes))
    bad_c = [indices[0]] if indices and series.coefficient(indices[0]) >= 0 else []

    return PrimitiveDivisorReport(
        p=p, zeta=zeta, tau=tau,
        a_holds=not bad_a, b_holds=not bad_b, c_holds=not bad_c,
        witnesses={"a": bad_a, "b": sorted(set(bad_b)), "c": bad_c},
    )


def cyclotomic_witness(form: LieForm) -> Dict[str, object]:
    """Phi_{zeta/f} multiplicity in T_W and whether it divides any proper T_J."""
    zeta, f = zeta_p_of_form(form), form.f
    if zeta % f:
        raise HypothesisViolation(f"f={f} does not divide zeta={zeta}")
    u = zeta // f
    catalog = catalog_for(form)
    multiplicity = dict(coxeter.factor_cyclotomic(catalog.t_w)).get(u, 0)
    proper = [catalog.describe(J) for J in catalog.subsets()
              if J != catalog.full and dict(coxeter.factor_cyclotomic(catalog.entries[J])).get(u, 0)]
    return {"u": u, "multiplicity": multiplicity, "divides_proper": proper}

