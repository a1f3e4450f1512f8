import random
from fractions import Fraction

import pytest

from src.dirichlet_ring import (FiniteDirichletSeries, ONE, ZERO, divide, factored, from_text,
                                render_power_form, sml_product, to_text, truncated_product)
from src.errors import DivisionByZero, FactorNotMonic, FormatError, NotDivisible

CASES = 200


def random_series(rng: random.Random, max_terms: int = 4, max_index: int = 60) -> FiniteDirichletSeries:
    terms = [(1, 1)]
    for _ in range(rng.randint(0, max_terms)):
        terms.append((rng.randint(2, max_index), rng.randint(-9, 9)))
    return FiniteDirichletSeries(terms)


def test_text_rendering():
    s = FiniteDirichletSeries([(1, 1), (7, -14), (21, 21)])
    assert str(s) == "1 - 14/7^s + 21/21^s"
    assert render_power_form(s) == "1 - 2*(7)^(1-s) + (3*7)^(1-s)"
    assert str(ZERO) == "0"


def test_zero_coefficients_are_dropped():
    s = FiniteDirichletSeries([(1, 1), (6, 3), (6, -3)])
    assert s.is_one()
    assert s.support() == [1]


def test_mul_and_pi_part():
    a = FiniteDirichletSeries.binomial(2, -2)
    b = FiniteDirichletSeries.binomial(3, -3)
    assert a * b == FiniteDirichletSeries([(1, 1), (2, -2), (3, -3), (6, 6)])
    assert (a * b).pi_part({2}) == b
    assert (a * b).primes() == {2, 3}


def test_substitute_and_evaluate():
    s = FiniteDirichletSeries([(1, 1), (7, -14), (21, 21)])
    assert s.substitute(2) == FiniteDirichletSeries([(1, 1), (49, -98), (441, 441)])
    assert s.evaluate(0) == 8
    assert s.evaluate(1) == Fraction(0)
    assert FiniteDirichletSeries.binomial(4, -6).evaluate(2) == Fraction(10, 16)


def test_int_coercion():
    assert ONE + 1 == 2
    assert 2 * FiniteDirichletSeries.binomial(3, 1) == FiniteDirichletSeries([(1, 2), (3, 2)])


def test_divide_exact():
    a = FiniteDirichletSeries.binomial(2, -2)
    b = FiniteDirichletSeries.binomial(3, -3)
    assert divide(a * b, b) == a
    assert divide(FiniteDirichletSeries({1: 6}), FiniteDirichletSeries({1: 3})) == 2


def test_divide_errors():
    with pytest.raises(NotDivisible):
        divide(FiniteDirichletSeries.binomial(2, -2), FiniteDirichletSeries.binomial(3, -3))
    with pytest.raises(DivisionByZero):
        divide(ONE, ZERO)


def test_mul_associative_and_commutative():
    rng = random.Random(1)
    for _ in range(CASES):
        a, b, c = (random_series(rng) for _ in range(3))
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)


def test_pi_part_is_multiplicative():
    rng = random.Random(2)
    for _ in range(CASES):
        a, b = random_series(rng), random_series(rng)
        pi = set(rng.sample([2, 3, 5, 7], rng.randint(1, 2)))
        assert (a * b).pi_part(pi) == a.pi_part(pi) * b.pi_part(pi)


def test_substitute_is_multiplicative():
    rng = random.Random(3)
    for _ in range(CASES):
        a, b = random_series(rng, max_index=20), random_series(rng, max_index=20)
        r = rng.randint(1, 3)
        assert (a * b).substitute(r) == a.substitute(r) * b.substitute(r)


def wide_series(rng: random.Random, max_terms: int = 5) -> FiniteDirichletSeries:
    terms = [(rng.randint(1, 10 ** 6), rng.randint(-1000, 1000)) for _ in range(rng.randint(1, max_terms))]
    if rng.random() < 0.5:
        terms.append((1, rng.randint(-1000, 1000)))
    return FiniteDirichletSeries(terms)


def test_ring_laws_over_wide_range():
    rng = random.Random(11)
    for _ in range(CASES):
        a, b, c = (wide_series(rng) for _ in range(3))
        assert a * (b + c) == a * b + a * c
        assert (a + b) * c == a * c + b * c
        assert (a * b) * c == a * (b * c)
        assert (a + b) + c == a + (b + c)


def test_evaluate_is_multiplicative():
    rng = random.Random(12)
    for _ in range(CASES):
        a, b = wide_series(rng), wide_series(rng)
        for t in range(6):
            assert (a * b).evaluate(t) == a.evaluate(t) * b.evaluate(t)
            assert (a + b).evaluate(t) == a.evaluate(t) + b.evaluate(t)


def test_divide_inverts_mul():
    rng = random.Random(4)
    for _ in range(CASES):
        a, b = random_series(rng, max_terms=3, max_index=30), random_series(rng, max_terms=3, max_index=30)
        assert divide(a * b, b) == a


def test_truncated_product_ignores_order():
    rng = random.Random(5)
    for _ in range(CASES):
        factors = [random_series(rng, max_terms=2, max_index=12) for _ in range(rng.randint(1, 4))]
        bound = rng.randint(1, 200)
        full = truncated_product(factors, bound)
        shuffled = list(factors)
        rng.shuffle(shuffled)
        assert truncated_product(shuffled, bound) == full
        expected = ONE
        for f in factors:
            expected = expected * f
        assert full == FiniteDirichletSeries({n: c for n, c in expected.items() if n <= bound})


def test_truncated_product_needs_monic_factors():
    with pytest.raises(FactorNotMonic):
        truncated_product([ONE, FiniteDirichletSeries([(1, 2), (3, 1)])], 10)


def test_sml_product():
    s = sml_product(2, [(1, 1), (2, 3)])
    assert s == FiniteDirichletSeries([(1, 1), (2, -1), (4, -3), (8, 3)])


def test_text_format():
    s = FiniteDirichletSeries([(1, 1), (15, -30), (35, -35)])
    assert to_text(s) == "1 1\n15 -30\n35 -35\n"
    assert from_text("# header\n1 1\n15 -30\n\n35 -35\n") == s


@pytest.mark.parametrize("text", ["1 1\n1 2\n", "1 0\n", "0 1\n", "1 x\n", "1 2 3\n", "3 1\n2 1\n"])
def test_text_format_rejects(text):
    with pytest.raises(FormatError):
        from_text(text)


def test_factored():
    assert factored(41013) == "3^3*7^2*31"
    assert factored(1) == "1"
