# src/profinite_engine.py
"""Chief-factor profiles, their factor series, and the witness cascades.

A profile is a finite truncation of a chief series: each descriptor stands
for a non-Frattini chief factor S^r together with the almost simple (or
abelian) group it determines. Nothing here decides rationality of an
infinite product; the cascades only report the finite witnesses the
arguments run on.
"""
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple, Union

from sympy import integer_nthroot, isprime, primerange

from . import sporadic_data
from .arith import is_mersenne, valuation, zeta_p, zsigmondy_set
from .dirichlet_ring import FiniteDirichletSeries, ONE, factored, truncated_product
from .errors import (FormatError, NoWitness, NotPrime, PartialFactor, PowerOfP, PreconditionViolated,
                     UnsupportedForm)
from .lie_series import LieForm, lift, parse_form, series_from_form, zeta_p_of_form
from .models import CascadeReport, CascadeStep, ExtractionResult, SmlReport

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AbelianFactor:
    p: int
    r: int
    c: int
    alpha: Optional[int] = None      # alpha(T) when the factor has a q-power index supplement

    @property
    def label(self) -> str:
        return f"C{self.p}^{self.r}"


@dataclass(frozen=True)
class LieFactor:
    form: LieForm
    r: int

    @property
    def label(self) -> str:
        return f"{self.form.label}^{self.r}"


@dataclass(frozen=True)
class SporadicFactor:
    name: str
    aut: bool
    r: int

    @property
    def label(self) -> str:
        record = sporadic_data.lookup(self.name, self.aut)
        return f"{record.label}^{self.r}"


ChiefFactor = Union[AbelianFactor, LieFactor, SporadicFactor]


@dataclass(frozen=True)
class FactorSeries:
    series: FiniteDirichletSeries
    r: int
    partial: bool
    label: str


def _validate(descriptor: ChiefFactor) -> None:
    if descriptor.r < 1:
        raise FormatError(f"{descriptor.label}: r must be >= 1")
    if isinstance(descriptor, AbelianFactor):
        if not isprime(descriptor.p):
            raise NotPrime(f"{descriptor.p} is not prime")
        if descriptor.c < 0:
            raise FormatError("complement count c must be >= 0")
        if descriptor.alpha is not None and descriptor.alpha < 1:
            raise FormatError("alpha must be >= 1")
    if isinstance(descriptor, SporadicFactor):
        sporadic_data.lookup(descriptor.name, descriptor.aut)


# profile files
def _key_values(tokens: Iterable[str], allowed: Sequence[str], where: str) -> Dict[str, str]:
    out: Dict[str, str] = {}
    for token in tokens:
        key, sep, value = token.partition("=")
        if not sep or key not in allowed or key in out:
            raise FormatError(f"{where}: bad field {token!r}")
        out[key] = value
    return out


def _int(values: Dict[str, str], key: str, where: str, default: Optional[int] = None) -> int:
    if key not in values:
        if default is None:
            raise FormatError(f"{where}: missing {key}=")
        return default
    try:
        return int(values[key])
    except ValueError:
        raise FormatError(f"{where}: {key}={values[key]} is not an integer")


def parse_profile(text: str, source: str = "<profile>") -> List[ChiefFactor]:
    profile: List[ChiefFactor] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"{source}:{lineno}"
        kind, *tokens = line.split()
        if kind == "abelian":
            values = _key_values(tokens, ("p", "r", "c", "alpha"), where)
            alpha = _int(values, "alpha", where) if "alpha" in values else None
            descriptor: ChiefFactor = AbelianFactor(_int(values, "p", where), _int(values, "r", where),
                                                    _int(values, "c", where), alpha)
        elif kind == "lie":
            r_tokens = [t for t in tokens if t.startswith("r=")]
            if len(r_tokens) != 1:
                raise FormatError(f"{where}: lie factors need exactly one r=")
            r = _int({"r": r_tokens[0][2:]}, "r", where)
            descriptor = LieFactor(parse_form(t for t in tokens if not t.startswith("r=")), r)
        elif kind == "sporadic":
            values = _key_values(tokens, ("name", "aut", "r"), where)
            if "name" not in values:
                raise FormatError(f"{where}: missing name=")
            aut = _int(values, "aut", where, 0)
            if aut not in (0, 1):
                raise FormatError(f"{where}: aut must be 0 or 1")
            descriptor = SporadicFactor(sporadic_data.canonical_name(values["name"]), bool(aut),
                                        _int(values, "r", where))
        else:
            raise FormatError(f"{where}: unknown factor kind {kind!r}")
        _validate(descriptor)
        profile.append(descriptor)
    return profile


# factor series
def factor_series(descriptor: ChiefFactor, pi: Iterable[int]) -> FactorSeries:
    pi = set(pi)
    _validate(descriptor)
    if isinstance(descriptor, AbelianFactor):
        series = FiniteDirichletSeries.binomial(descriptor.p ** descriptor.r, -descriptor.c)
        return FactorSeries(series.pi_part(pi), descriptor.r, False, descriptor.label)
    if isinstance(descriptor, LieFactor):
        if descriptor.form.p not in pi:
            raise UnsupportedForm(f"{descriptor.label}: only the p-free part is modelled; add {descriptor.form.p} to pi")
        series = lift(series_from_form(descriptor.form), descriptor.r).pi_part(pi)
        return FactorSeries(series, descriptor.r, False, descriptor.label)
    record = sporadic_data.lookup(descriptor.name, descriptor.aut)
    witnesses = [record.m_int] + ([record.n_int] if record.n is not None else [])
    r = descriptor.r
    series = ONE + FiniteDirichletSeries([(x ** r, -(x ** r)) for x in witnesses])
    return FactorSeries(series.pi_part(pi), r, True, descriptor.label)


def truncated_PG(profile: Sequence[ChiefFactor], pi: Iterable[int], bound: int) -> FiniteDirichletSeries:
    pi = set(pi)
    factors = [factor_series(d, pi) for d in profile]
    for position, fs in enumerate(factors):
        if fs.partial:
            raise PartialFactor(f"factor {position} ({fs.label}) only carries table witness terms",
                                position=position)
    return truncated_product((fs.series for fs in factors), bound)


def _effective_r(descriptor: ChiefFactor) -> int:
    if isinstance(descriptor, AbelianFactor) and descriptor.alpha is not None:
        return descriptor.alpha * descriptor.r
    return descriptor.r


def sml_check(profile: Sequence[ChiefFactor], q: Optional[int] = None) -> SmlReport:
    """Finite-profile view of the two hypotheses on the exponents r_i."""
    r_values = sorted(_effective_r(d) for d in profile)
    counts = {n: sum(1 for r in r_values if n % r == 0) for n in sorted(set(r_values))}
    t = next(p for p in primerange(2, 2 * (max(r_values, default=1) + 2) + 3)
             if all(r % p for r in r_values))
    return SmlReport(r_values=r_values, divisor_counts=counts, t=t, q=q)


# extraction
def check_extraction_precondition(factors: Sequence[Tuple[FiniteDirichletSeries, int]], q: int, alpha: int) -> None:
    for i, (series, r) in enumerate(factors):
        for n, _ in series:
            if n % q:
                continue
            root, exact = integer_nthroot(n, r)
            if not exact or valuation(q, n) != alpha * r:
                raise PreconditionViolated(f"factor {i}: index {n} is not x^{r} with v_{q}(x) = {alpha}",
                                           factor=i, index=n)


def extraction(factors: Sequence[Tuple[FiniteDirichletSeries, int]], q: int, alpha: int) -> ExtractionResult:
    """w = least x with v_q(x) = alpha hitting some factor at x^{r_i}; F* collects those terms."""
    if not isprime(q):
        raise NotPrime(f"{q} is not prime")
    check_extraction_precondition(factors, q, alpha)
    candidates = [integer_nthroot(n, r)[0] for series, r in factors for n, _ in series if n % q == 0]
    if not candidates:
        raise NoWitness(f"no factor has an index divisible by {q}")
    w = min(candidates)
    terms = [series.coefficient(w ** r) for series, r in factors]
    F_star = ONE
    for (series, r), b in zip(factors, terms):
        F_star = F_star * FiniteDirichletSeries.binomial(w ** r, b)
    return ExtractionResult(q=q, alpha=alpha, w=w, terms=terms, F_star=F_star)


def gamma_classify(n: int, p: int, m: int) -> bool:
    """n in Gamma_m: some prime of <p,m> divides n and none of <p,u>, u > m, does."""
    try:
        return zeta_p(p, n) == m
    except PowerOfP:
        return False


# cascades
def _negative(terms: Sequence[int]) -> bool:
    return all(b <= 0 for b in terms) and any(b < 0 for b in terms)


def _lie_series(factors: Sequence[LieFactor]) -> List[Tuple[FiniteDirichletSeries, int]]:
    return [(lift(series_from_form(f.form), f.r).pi_part({f.form.p}), f.r) for f in factors]


def _beta(positions: Sequence[int], factors: Sequence[LieFactor], lifted: Dict[int, FiniteDirichletSeries],
          p: int, m: int) -> Tuple[Optional[int], Optional[int]]:
    r_min = min(factors[i].r for i in positions)
    star = [i for i in positions if factors[i].r == r_min]
    hits = sorted({n for i in star for n, _ in lifted[i] if n > 1 and gamma_classify(n, p, m)})
    if not hits:
        return None, None
    beta = hits[0]
    return beta, sum(lifted[i].coefficient(beta) for i in star)


def lie_cascade(profile: Sequence[ChiefFactor]) -> CascadeReport:
    if not profile:
        return CascadeReport(kind="lie")
    if not all(isinstance(d, LieFactor) for d in profile):
        raise PreconditionViolated("the Lie cascade takes Lie factors only")
    factors: List[LieFactor] = list(profile)  # type: ignore[arg-type]
    chars = {f.form.p for f in factors}
    if len(chars) != 1:
        raise PreconditionViolated(f"factors span characteristics {sorted(chars)}")
    p = chars.pop()
    zetas = [zeta_p_of_form(f.form) for f in factors]
    lifted = {i: s for i, (s, _) in enumerate(_lie_series(factors))}
    groups: Dict[int, List[int]] = {}
    for i, z in enumerate(zetas):
        groups.setdefault(z, []).append(i)
    m_min = min(groups)
    if m_min == 1:
        case = "1"
    elif p == 2 and m_min <= 5:
        case = "2"
    else:
        case = "3"
    report = CascadeReport(kind="lie", case=case, sml=sml_check(factors, p))
    report.notes.append(f"characteristic {p}; I_m occupied for m in {sorted(groups)}")

    if p == 2 and any(m <= 5 for m in groups):
        _char2_block(report, [i for i, z in enumerate(zetas) if z <= 5], factors, lifted)

    for m in sorted(groups):
        positions = groups[m]
        if p == 2 and m <= 5:
            continue
        if m == 1:
            note = ("CASE_1_SHORTCUT: zeta = 1" + (f" with p = {p} Mersenne" if is_mersenne(p) else "")
                    + "; I_1 is finite by the q-power index route, alpha(T) is an input datum")
            report.steps.append(CascadeStep(prime=p, members=positions, m=1, notes=[note]))
            continue
        primes = zsigmondy_set(p, m).primes
        if not primes:
            report.steps.append(CascadeStep(prime=p, members=positions, m=m,
                                            notes=[f"<{p},{m}> is empty; no witness prime"]))
            continue
        tau = primes[0]
        alpha = valuation(tau, p ** m - 1)
        result = extraction([(lifted[i], factors[i].r) for i in positions], tau, alpha)
        beta, c_beta = _beta(positions, factors, lifted, p, m)
        step = CascadeStep(prime=tau, members=positions, m=m, tau=tau, alpha=alpha, beta=beta,
                           w=result.w, terms=result.terms, F_star=result.F_star,
                           negative=_negative(result.terms))
        if beta is not None:
            step.notes.append(f"c_beta = {c_beta} at beta = {factored(beta)}")
            step.negative = step.negative and c_beta < 0
        report.steps.append(step)
        logger.debug("lie cascade m=%d tau=%d w=%d", m, tau, result.w)
    report.primes = [s.prime for s in report.steps]
    return report


U42_PATTERN = FiniteDirichletSeries([(1, 1), (27, -27)])


def _char2_block(report: CascadeReport, positions: List[int], factors: Sequence[LieFactor],
                 lifted: Dict[int, FiniteDirichletSeries]) -> None:
    remaining = list(positions)
    for prime in (31, 7):
        members = [i for i in remaining if prime in lifted[i].primes()]
        step = CascadeStep(prime=prime, members=members)
        if members:
            result = extraction([(lifted[i], factors[i].r) for i in members], prime, 1)
            step.w, step.terms, step.F_star = result.w, result.terms, result.F_star
            step.alpha = 1
            step.negative = _negative(result.terms)
            step.notes.append(f"Lambda_{prime} is emptied by the finite product on w = {factored(result.w)}")
        else:
            step.notes.append(f"Lambda_{prime} is empty")
        report.steps.append(step)
        remaining = [i for i in remaining if i not in members]

    step = CascadeStep(prime=5, members=remaining)
    for i in remaining:
        expected = lift(U42_PATTERN, factors[i].r)
        if lifted[i].pi_part({5}) == expected:
            step.notes.append(f"factor {i}: 1 - 3^(3r)/3^(3r s) with r = {factors[i].r}")
        else:
            step.notes.append(f"factor {i}: 5-free part {lifted[i].pi_part({5})} is not the U4(2) pattern")
            step.negative = False
    if remaining:
        step.w = 27
        step.terms = [lifted[i].pi_part({5}).coefficient(27 ** factors[i].r) for i in remaining]
        F_star = ONE
        for i in remaining:
            F_star = F_star * lifted[i].pi_part({5})
        step.F_star = F_star
    report.steps.append(step)


def sporadic_cascade(profile: Sequence[ChiefFactor]) -> CascadeReport:
    if not profile:
        return CascadeReport(kind="sporadic")
    if not all(isinstance(d, SporadicFactor) for d in profile):
        raise PreconditionViolated("the sporadic cascade takes sporadic factors only")
    factors: List[SporadicFactor] = list(profile)  # type: ignore[arg-type]
    records = [sporadic_data.lookup(f.name, f.aut) for f in factors]
    report = CascadeReport(kind="sporadic", sml=sml_check(factors, 2))
    remaining = list(range(len(factors)))
    for prime in sporadic_data.CASCADE_PRIMES:
        members = [i for i in remaining if sporadic_data.simple_record(records[i]).order_int % prime == 0]
        step = CascadeStep(prime=prime, members=members)
        if not members:
            report.steps.append(step)
            continue
        chosen = {}
        for i in members:
            value, column, notes = sporadic_data.cascade_column(records[i], prime)
            chosen[i] = value
            step.notes.extend(f"factor {i}: {n}" for n in notes)
            step.notes.append(f"factor {i}: m_{i} = {column} of {records[i].label} = {factored(value)}")
            if valuation(prime, value) != 1:
                line = f"factor {i}: v_{prime}({column}) = {valuation(prime, value)}, expected 1"
                step.notes.append("FLAGGED " + line)
                logger.warning("sporadic cascade %s", line)
        w = min(chosen.values())
        step.w = w
        step.terms = [-(w ** factors[i].r) if chosen[i] == w else 0 for i in members]
        F_star = ONE
        for i, b in zip(members, step.terms):
            F_star = F_star * FiniteDirichletSeries.binomial(w ** factors[i].r, b)
        step.F_star = F_star
        step.negative = _negative(step.terms)
        step.notes.append(f"{{i in Lambda_{prime} : m_i = w}} is finite, so Lambda_{prime} is emptied")
        report.steps.append(step)
        remaining = [i for i in remaining if i not in members]
    if remaining:
        report.notes.append(f"factors {remaining} divide none of the cascade primes")
    report.primes = [s.prime for s in report.steps]
    return report


def render_cascade(report: CascadeReport) -> str:
    lines = [f"cascade\t{report.kind}"]
    if report.case:
        lines.append(f"case\t{report.case}")
    if report.sml is not None:
        lines.append(f"r-values\t{','.join(map(str, report.sml.r_values))}")
        lines.append(f"t\t{report.sml.t}")
    for note in report.notes:
        lines.append(f"note\t{note}")
    for step in report.steps:
        head = f"step\tprime={step.prime}"
        if step.m is not None:
            head += f"\tm={step.m}"
        if step.tau is not None:
            head += f"\ttau={step.tau}\talpha={step.alpha}"
        lines.append(head)
        lines.append(f"  members\t{','.join(map(str, step.members)) or '-'}")
        if step.w is not None:
            lines.append(f"  w\t{factored(step.w)}")
            lines.append(f"  b\t{','.join(map(str, step.terms))}")
            lines.append(f"  F*\t{step.F_star}")
            lines.append(f"  negative\t{'yes' if step.negative else 'no'}")
        if step.beta is not None:
            lines.append(f"  beta\t{factored(step.beta)}")
        for note in step.notes:
            lines.append(f"  note\t{note}")
    return "\n".join(lines) + "\n"


def primes_of_profile(profile: Sequence[ChiefFactor]) -> Set[int]:
    """Default pi for analysis: the characteristics of the Lie factors."""
    return {d.form.p for d in profile if isinstance(d, LieFactor)}
