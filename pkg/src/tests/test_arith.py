import pytest

from src.arith import (is_mersenne, is_zsigmondy_exception, mult_order, primitive_part, valuation,
                       zeta_p, zsigmondy_set)
from src.errors import NotPrime, OutOfRange, PowerOfP, Undefined


def test_valuation():
    assert valuation(2, 40) == 3
    assert valuation(13, 52) == 1
    with pytest.raises(NotPrime):
        valuation(4, 8)


def test_mult_order():
    assert mult_order(2, 7) == 3
    assert mult_order(3, 13) == 3
    with pytest.raises(Undefined):
        mult_order(2, 2)


def test_zeta_p():
    assert zeta_p(2, 15) == 4
    assert zeta_p(3, 5616) == 3          # |PSL3(3)|
    assert zeta_p(2, 128 * 127 * 129) == 14
    with pytest.raises(PowerOfP):
        zeta_p(2, 64)


@pytest.mark.parametrize("a, n, primes", [(2, 4, [5]), (2, 3, [7]), (2, 5, [31]), (3, 3, [13]),
                                          (2, 14, [43]), (2, 6, []), (3, 2, [])])
def test_zsigmondy_examples(a, n, primes):
    assert zsigmondy_set(a, n).primes == primes


def test_zsigmondy_grid():
    for a in range(2, 41):
        for n in range(2, 17):
            result = zsigmondy_set(a, n)
            assert result.is_exception == (not result.primes)
            assert result.is_exception == ((a, n) == (2, 6) or (n == 2 and a in (3, 7, 15, 31)))
            assert all(r % n == 1 for r in result.primes)
            assert all(primitive_part(a, n) % r == 0 for r in result.primes)


def test_zsigmondy_primes_are_disjoint():
    for p in (2, 3, 5, 7):
        seen = set()
        for m in range(2, 17):
            primes = set(zsigmondy_set(p, m).primes)
            assert not primes & seen
            seen |= primes
            for r in primes:
                assert all(((p ** k - 1) % r == 0) == (k % m == 0) for k in range(1, 3 * m + 1))


def test_zsigmondy_bounds():
    with pytest.raises(OutOfRange):
        zsigmondy_set(1, 5)
    with pytest.raises(OutOfRange):
        zsigmondy_set(2, 41)


def test_mersenne_and_exceptions():
    assert is_mersenne(7) and is_mersenne(31)
    assert not is_mersenne(5)
    assert is_zsigmondy_exception(2, 6)
    assert is_zsigmondy_exception(7, 2)
    assert not is_zsigmondy_exception(5, 2)
