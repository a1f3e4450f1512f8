import pytest

from src.arith import ZSIGMONDY_MAX_EXPONENT, valuation, zsigmondy_set
from src.dirichlet_ring import FiniteDirichletSeries
from src.errors import (FormatError, NoWitness, NotPrime, PartialFactor, PreconditionViolated, UnknownSporadic,
                        UnsupportedForm)
from src.lie_series import LieForm, lift, series_from_form, zeta_p_of_form
from src.profinite_engine import (U42_PATTERN, AbelianFactor, LieFactor, SporadicFactor,
                                  check_extraction_precondition, extraction, factor_series, gamma_classify,
                                  lie_cascade, parse_profile, primes_of_profile, render_cascade, sml_check,
                                  sporadic_cascade, truncated_PG)
from src.sporadic_data import lookup

THREE_PSL33 = """\
# three copies of PSL3(3)
lie family=A rank=2 q=3 r=1
lie family=A rank=2 q=3 r=1
lie family=A rank=2 q=3 r=2
"""


def binomial(n, c):
    return FiniteDirichletSeries.binomial(n, c)


def test_parse_profile():
    profile = parse_profile("abelian p=2 r=1 c=1\nsporadic name=th aut=0 r=2\n" + THREE_PSL33)
    assert isinstance(profile[0], AbelianFactor)
    assert profile[1] == SporadicFactor("Th", False, 2)
    assert isinstance(profile[2], LieFactor) and profile[4].r == 2
    assert primes_of_profile(profile) == {3}


@pytest.mark.parametrize("text, error", [
    ("abelian p=4 r=1 c=1\n", NotPrime),
    ("abelian p=2 r=0 c=1\n", FormatError),
    ("lie family=A rank=2 q=3\n", FormatError),
    ("sporadic name=Foo r=1\n", UnknownSporadic),
    ("widget x=1\n", FormatError),
])
def test_parse_profile_rejects(text, error):
    with pytest.raises(error):
        parse_profile(text)


def test_factor_series():
    fs = factor_series(AbelianFactor(2, 3, 5), set())
    assert fs.series == binomial(8, -5) and not fs.partial
    lie = parse_profile(THREE_PSL33)[2]
    assert factor_series(lie, {3}).series == FiniteDirichletSeries([(1, 1), (169, -338), (2704, 2704)])
    with pytest.raises(UnsupportedForm):
        factor_series(lie, {2})
    sporadic = factor_series(SporadicFactor("M11", False, 1), {2})
    assert sporadic.partial and sporadic.series == binomial(11, -11)


def test_truncated_pg():
    profile = [AbelianFactor(2, 1, 1), AbelianFactor(3, 1, 2)]
    assert truncated_PG(profile, set(), 10) == FiniteDirichletSeries([(1, 1), (2, -1), (3, -2), (6, 2)])
    assert truncated_PG(profile, set(), 5) == FiniteDirichletSeries([(1, 1), (2, -1), (3, -2)])
    with pytest.raises(PartialFactor):
        truncated_PG(profile + [SporadicFactor("J2", False, 1)], {2}, 100)


def test_sml_check():
    report = sml_check(parse_profile(THREE_PSL33), 3)
    assert report.r_values == [1, 1, 2]
    assert report.t == 3
    assert report.divisor_counts == {1: 2, 2: 3}


def test_extraction_mixed_r():
    factors = [(binomial(7, -5), 1), (binomial(49, -245), 2), (binomial(3, 2), 1)]
    result = extraction(factors, 7, 1)
    assert result.w == 7
    assert result.terms == [-5, -245, 0]
    assert result.F_star == binomial(7, -5) * binomial(49, -245)


def test_extraction_single_power():
    factors = [(binomial(7, -7), 1), (binomial(441, -441), 2), (binomial(2, -2), 1)]
    result = extraction(factors, 7, 1)
    assert result.w == 7
    assert result.terms == [-7, 0, 0]
    assert result.F_star == binomial(7, -7)


def _lifted_lie_grid():
    families = [("A", n) for n in range(1, 5)] + [("B", 2), ("B", 3), ("C", 3), ("D", 4), ("G", 2)]
    for family, rank in families:
        for q in (2, 3, 4, 5, 7, 8, 9):
            form = LieForm(family, rank, q)
            zeta = zeta_p_of_form(form)
            if zeta <= 1 or (form.p == 2 and zeta <= 6) or zeta % form.f or zeta > ZSIGMONDY_MAX_EXPONENT:
                continue
            yield form, zeta


def test_extraction_precondition_holds_for_lifted_lie_series():
    checked = 0
    for form, zeta in _lifted_lie_grid():
        tau = zsigmondy_set(form.p, zeta).primes[0]
        alpha = valuation(tau, form.p ** zeta - 1)
        series = series_from_form(form)
        factors = [(lift(series, r), r) for r in (1, 2, 3)]
        check_extraction_precondition(factors, tau, alpha)
        assert extraction(factors, tau, alpha).w > 1
        checked += 1
    assert checked > 20


def test_extraction_precondition_and_no_witness():
    with pytest.raises(PreconditionViolated):
        extraction([(binomial(49, -49), 1)], 7, 1)
    with pytest.raises(NoWitness):
        extraction([(binomial(2, -2), 1)], 7, 1)


def test_gamma_classify():
    assert gamma_classify(13, 3, 3)
    assert gamma_classify(52, 3, 3)
    assert not gamma_classify(8, 2, 3)
    assert not gamma_classify(7, 2, 2)


def test_lie_cascade_three_psl33():
    report = lie_cascade(parse_profile(THREE_PSL33))
    assert report.case == "3"
    (step,) = report.steps
    assert (step.m, step.tau, step.alpha, step.w) == (3, 13, 1, 13)
    assert step.terms == [-26, -26, -338]
    assert step.F_star == binomial(13, -26) ** 2 * binomial(169, -338)
    assert step.beta == 13
    assert "c_beta = -52" in step.notes[0]
    assert step.negative


def test_lie_cascade_characteristic_two():
    report = lie_cascade(parse_profile("lie family=A rank=2 q=2 r=1\n"))
    assert report.case == "2"
    assert [s.prime for s in report.steps] == [31, 7, 5]
    seven = report.steps[1]
    assert seven.w == 7 and seven.terms == [-14]


@pytest.mark.parametrize("r", [1, 2])
def test_lie_cascade_unitary_five_step(r):
    report = lie_cascade(parse_profile(f"lie family=A rank=3 q=2 twist=2 r={r}\n"))
    assert report.case == "2"
    assert [s.prime for s in report.steps] == [31, 7, 5]
    assert report.steps[0].members == [] and report.steps[0].w is None
    assert report.steps[1].members == [] and report.steps[1].w is None
    five = report.steps[2]
    assert five.members == [0]
    assert five.w == 27
    assert five.terms == [-(27 ** r)]
    assert five.F_star == lift(U42_PATTERN, r) == binomial(27 ** r, -(27 ** r))
    assert five.negative
    text = render_cascade(report)
    assert text == (
        "cascade\tlie\n"
        "case\t2\n"
        f"r-values\t{r}\n"
        "t\t" + ("2" if r == 1 else "3") + "\n"
        "note\tcharacteristic 2; I_m occupied for m in [4]\n"
        "step\tprime=31\n"
        "  members\t-\n"
        "  note\tLambda_31 is empty\n"
        "step\tprime=7\n"
        "  members\t-\n"
        "  note\tLambda_7 is empty\n"
        "step\tprime=5\n"
        "  members\t0\n"
        "  w\t3^3\n"
        f"  b\t{-(27 ** r)}\n"
        f"  F*\t1 - {27 ** r}/{27 ** r}^s\n"
        "  negative\tyes\n"
        f"  note\tfactor 0: 1 - 3^(3r)/3^(3r s) with r = {r}\n"
    )


def test_lie_cascade_rejects_mixed_profiles():
    with pytest.raises(PreconditionViolated):
        lie_cascade([AbelianFactor(2, 1, 1)])


def test_sporadic_cascade_m11_th():
    report = sporadic_cascade(parse_profile("sporadic name=M11 r=1\nsporadic name=Th r=2\n"))
    steps = {s.prime: s for s in report.steps}
    assert steps[31].members == [1]
    assert steps[31].w == lookup("Th").n_int == 3 ** 8 * 5 ** 2 * 7 * 13 * 19 * 31
    assert steps[31].terms == [-(steps[31].w ** 2)]
    assert steps[11].w == 11
    assert all(s.negative for s in report.steps if s.w is not None)


def test_sporadic_cascade_j2_and_m23_m24():
    j2 = sporadic_cascade(parse_profile("sporadic name=J2 r=1\n"))
    assert [s.prime for s in j2.steps if s.w is not None] == [7]
    assert j2.steps[-1].w == 315
    pair = sporadic_cascade(parse_profile("sporadic name=M23 r=1\nsporadic name=M24 r=1\n"))
    step23 = next(s for s in pair.steps if s.prime == 23)
    assert step23.members == [0, 1] and step23.w == 23 and step23.terms == [-23, 0]


def test_sporadic_cascade_flags_fi24():
    report = sporadic_cascade(parse_profile("sporadic name=Fi24 r=1\n"))
    step23 = next(s for s in report.steps if s.prime == 23)
    assert any(note.startswith("FLAGGED") for note in step23.notes)


def test_render_cascade_is_deterministic():
    profile = parse_profile(THREE_PSL33)
    text = render_cascade(lie_cascade(profile))
    assert text == render_cascade(lie_cascade(profile))
    assert "w\t13" in text
