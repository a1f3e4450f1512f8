# src/arith.py
"""Multiplicative orders, zeta_p and Zsigmondy primitive prime divisors."""
import logging
from functools import lru_cache
from typing import Tuple

from sympy import factorint, isprime, multiplicity, primefactors
from sympy.ntheory import n_order
from sympy.polys.specialpolys import cyclotomic_poly

from .errors import NotPrime, OutOfRange, PowerOfP, Undefined
from .models import ZsigmondyResult

logger = logging.getLogger(__name__)

ZSIGMONDY_MAX_BASE = 1000
ZSIGMONDY_MAX_EXPONENT = 40


def valuation(q: int, n: int) -> int:
    if not isprime(q):
        raise NotPrime(f"{q} is not prime")
    if n < 1:
        raise ValueError("valuation is defined for n >= 1")
    return int(multiplicity(q, n))


@lru_cache(maxsize=None)
def mult_order(p: int, r: int) -> int:
    """zeta_p(r): multiplicative order of p modulo the prime r."""
    if not isprime(r) or r == p or p % r == 0:
        raise Undefined(f"order of {p} modulo {r} is undefined")
    return int(n_order(p, r))


def zeta_p(p: int, m: int) -> int:
    divisors = [r for r in primefactors(m) if r != p]
    if not divisors:
        raise PowerOfP(f"{m} is a power of {p}")
    return max(mult_order(p, r) for r in divisors)


def is_mersenne(p: int) -> bool:
    """p = 2^t - 1 with t >= 2."""
    return p >= 3 and (p + 1) & p == 0


def is_zsigmondy_exception(a: int, n: int) -> bool:
    return (n == 2 and a >= 3 and is_mersenne(a)) or (n == 6 and a == 2)


def primitive_part(a: int, n: int) -> int:
    """Phi_n(a): the cyclotomic part of a^n - 1 holding every primitive divisor."""
    return int(cyclotomic_poly(n, polys=True).eval(a))


@lru_cache(maxsize=None)
def _primitive_primes(a: int, n: int) -> Tuple[int, ...]:
    value = primitive_part(a, n)
    return tuple(sorted(r for r in factorint(value) if a % r and n_order(a, r) == n))


def zsigmondy_set(a: int, n: int) -> ZsigmondyResult:
    if a < 2 or n < 2:
        raise OutOfRange(f"<{a},{n}> needs a, n >= 2")
    if a > ZSIGMONDY_MAX_BASE or n > ZSIGMONDY_MAX_EXPONENT:
        raise OutOfRange(f"<{a},{n}> beyond a <= {ZSIGMONDY_MAX_BASE}, n <= {ZSIGMONDY_MAX_EXPONENT}")
    primes = list(_primitive_primes(a, n))
    exception = is_zsigmondy_exception(a, n)
    if bool(primes) == exception:
        raise OutOfRange(f"<{a},{n}>: factorization disagrees with the exception list")
    logger.debug("zsigmondy <%d,%d> = %s", a, n, primes)
    return ZsigmondyResult(a=a, n=n, primes=primes, is_exception=exception)
