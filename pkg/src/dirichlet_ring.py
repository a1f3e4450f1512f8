# src/dirichlet_ring.py
"""Finite Dirichlet series with integer coefficients.

A series is a finite map index -> coefficient standing for sum c_n / n^s.
Values are immutable; every operation returns a new series. Exact division
maps indices to prime-exponent monomials and hands the work to sympy's sparse
polynomial rings under the graded-lex order (generators = primes ascending).
"""
import logging
import operator
from fractions import Fraction
from types import MappingProxyType
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Set, Tuple, Union

from sympy import factorint, primefactors
from sympy.polys.domains import ZZ
from sympy.polys.orderings import grlex
from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.rings import PolyRing

from .errors import DivisionByZero, FactorNotMonic, FormatError, NotDivisible

logger = logging.getLogger(__name__)

TermsLike = Union[Mapping[int, int], Iterable[Tuple[int, int]], None]


class FiniteDirichletSeries:
    """sum_n c_n / n^s with finite support; zero coefficients are never stored."""

    __slots__ = ("_terms",)

    def __init__(self, terms: TermsLike = None):
        acc: Dict[int, int] = {}
        if terms is None:
            items: Iterable[Tuple[int, int]] = ()
        elif isinstance(terms, Mapping):
            items = terms.items()
        else:
            items = terms
        for n, c in items:
            n = operator.index(n)
            c = operator.index(c)
            if n < 1:
                raise ValueError(f"Dirichlet index must be >= 1, got {n}")
            acc[n] = acc.get(n, 0) + c
        self._terms = {n: c for n, c in sorted(acc.items()) if c}

    # constructors
    @classmethod
    def one(cls) -> "FiniteDirichletSeries":
        return cls({1: 1})

    @classmethod
    def zero(cls) -> "FiniteDirichletSeries":
        return cls()

    @classmethod
    def monomial(cls, index: int, coefficient: int) -> "FiniteDirichletSeries":
        return cls({index: coefficient})

    @classmethod
    def binomial(cls, index: int, coefficient: int) -> "FiniteDirichletSeries":
        """1 + coefficient / index^s"""
        return cls([(1, 1), (index, coefficient)])

    # access
    @property
    def terms(self) -> Mapping[int, int]:
        return MappingProxyType(self._terms)

    def coefficient(self, n: int) -> int:
        return self._terms.get(n, 0)

    def items(self) -> List[Tuple[int, int]]:
        return list(self._terms.items())

    def support(self) -> List[int]:
        return list(self._terms)

    def primes(self) -> Set[int]:
        """pi(F): primes dividing at least one index with nonzero coefficient."""
        out: Set[int] = set()
        for n in self._terms:
            out.update(primefactors(n))
        return out

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return self._terms == {1: 1}

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[Tuple[int, int]]:
        return iter(self._terms.items())

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = FiniteDirichletSeries({1: other})
        if not isinstance(other, FiniteDirichletSeries):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple(self._terms.items()))

    def __repr__(self) -> str:
        return f"FiniteDirichletSeries({self._terms!r})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for n, c in self._terms.items():
            body = str(abs(c)) if n == 1 else f"{abs(c)}/{n}^s"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"{'+' if c > 0 else '-'} {body}")
        return " ".join(parts)

    # ring structure
    def __add__(self, other: "FiniteDirichletSeries") -> "FiniteDirichletSeries":
        other = _coerce(other)
        return FiniteDirichletSeries(list(self._terms.items()) + list(other._terms.items()))

    __radd__ = __add__

    def __neg__(self) -> "FiniteDirichletSeries":
        return FiniteDirichletSeries({n: -c for n, c in self._terms.items()})

    def __sub__(self, other: "FiniteDirichletSeries") -> "FiniteDirichletSeries":
        return self + (-_coerce(other))

    def __rsub__(self, other: "FiniteDirichletSeries") -> "FiniteDirichletSeries":
        return _coerce(other) - self

    def __mul__(self, other: "FiniteDirichletSeries") -> "FiniteDirichletSeries":
        other = _coerce(other)
        acc: Dict[int, int] = {}
        for d, a in self._terms.items():
            for e, b in other._terms.items():
                n = d * e
                acc[n] = acc.get(n, 0) + a * b
        return FiniteDirichletSeries(acc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "FiniteDirichletSeries":
        if k < 0:
            raise ValueError("negative powers are not finite series")
        out = FiniteDirichletSeries.one()
        for _ in range(k):
            out = out * self
        return out

    # endomorphisms
    def pi_part(self, pi: Iterable[int]) -> "FiniteDirichletSeries":
        pi = tuple(pi)
        return FiniteDirichletSeries(
            {n: c for n, c in self._terms.items() if all(n % p for p in pi)}
        )

    def substitute(self, r: int) -> "FiniteDirichletSeries":
        """s -> r*s - r + 1: c/n^s becomes (c*n^(r-1)) / (n^r)^s."""
        if r < 1:
            raise ValueError(f"substitution exponent must be >= 1, got {r}")
        if r == 1:
            return self
        return FiniteDirichletSeries({n ** r: c * n ** (r - 1) for n, c in self._terms.items()})

    def evaluate(self, t: int) -> Fraction:
        if t < 0:
            raise ValueError("evaluation point must be a nonnegative integer")
        return sum((Fraction(c, n ** t) for n, c in self._terms.items()), Fraction(0))

    def divide(self, other: "FiniteDirichletSeries") -> "FiniteDirichletSeries":
        return divide(self, other)


def _coerce(value: Union[int, FiniteDirichletSeries]) -> FiniteDirichletSeries:
    if isinstance(value, FiniteDirichletSeries):
        return value
    if isinstance(value, int):
        return FiniteDirichletSeries({1: value})
    raise TypeError(f"cannot combine a Dirichlet series with {type(value).__name__}")


ONE = FiniteDirichletSeries.one()
ZERO = FiniteDirichletSeries.zero()


def add(a: FiniteDirichletSeries, b: FiniteDirichletSeries) -> FiniteDirichletSeries:
    return a + b


def mul(a: FiniteDirichletSeries, b: FiniteDirichletSeries) -> FiniteDirichletSeries:
    return a * b


def pi_part(a: FiniteDirichletSeries, pi: Iterable[int]) -> FiniteDirichletSeries:
    return a.pi_part(pi)


def substitute(a: FiniteDirichletSeries, r: int) -> FiniteDirichletSeries:
    return a.substitute(r)


def evaluate(a: FiniteDirichletSeries, t: int) -> Fraction:
    return a.evaluate(t)


def _monomial_ring(primes: Sequence[int]) -> PolyRing:
    return PolyRing([f"p{p}" for p in primes], ZZ, grlex)


def _to_poly(series: FiniteDirichletSeries, ring: PolyRing, primes: Sequence[int]):
    position = {p: i for i, p in enumerate(primes)}
    terms = {}
    for n, c in series.items():
        exps = [0] * len(primes)
        for p, e in factorint(n).items():
            exps[position[p]] = e
        terms[tuple(exps)] = c
    return ring.from_dict(terms)


def _from_poly(poly, primes: Sequence[int]) -> FiniteDirichletSeries:
    out = {}
    for monom, c in poly.items():
        n = 1
        for p, e in zip(primes, monom):
            n *= p ** e
        out[n] = int(c)
    return FiniteDirichletSeries(out)


def divide(a: FiniteDirichletSeries, b: FiniteDirichletSeries) -> FiniteDirichletSeries:
    """Exact quotient Q with b*Q == a; raises NotDivisible when none exists."""
    if b.is_zero():
        raise DivisionByZero("divisor has empty support")
    if a.is_zero():
        return ZERO
    primes = sorted(a.primes() | b.primes())
    if not primes:
        c, d = a.coefficient(1), b.coefficient(1)
        if c % d:
            raise NotDivisible(f"{d} does not divide {c}")
        return FiniteDirichletSeries({1: c // d})
    ring = _monomial_ring(primes)
    try:
        q = _to_poly(a, ring, primes).exquo(_to_poly(b, ring, primes))
    except ExactQuotientFailed:
        raise NotDivisible(f"({b}) does not divide ({a})")
    quotient = _from_poly(q, primes)
    logger.debug("divide: %d-term quotient over primes %s", len(quotient), primes)
    return quotient


def truncated_product(factors: Iterable[FiniteDirichletSeries], bound: int) -> FiniteDirichletSeries:
    """prod(factors) with every index > bound dropped; exact on [1, bound]."""
    acc: Dict[int, int] = {1: 1}
    for position, factor in enumerate(factors):
        if factor.coefficient(1) != 1:
            raise FactorNotMonic(f"factor {position} has coefficient {factor.coefficient(1)} at index 1",
                                 position=position)
        nxt: Dict[int, int] = {}
        for d, x in acc.items():
            for e, y in factor.items():
                n = d * e
                if n > bound:
                    break
                nxt[n] = nxt.get(n, 0) + x * y
        acc = {n: c for n, c in nxt.items() if c}
    return FiniteDirichletSeries({n: c for n, c in acc.items() if n <= bound})


def sml_product(q: int, pairs: Iterable[Tuple[int, int]]) -> FiniteDirichletSeries:
    """prod (1 - c_i / (q^r_i)^s) over (r_i, c_i) pairs."""
    out = ONE
    for r, c in pairs:
        out = out * FiniteDirichletSeries.binomial(q ** r, -c)
    return out


# text formats
def to_text(series: FiniteDirichletSeries) -> str:
    return "".join(f"{n} {c}\n" for n, c in series.items())


def from_text(text: str, source: str = "<series>") -> FiniteDirichletSeries:
    terms: List[Tuple[int, int]] = []
    last: Optional[int] = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 2:
            raise FormatError(f"{source}:{lineno}: expected '<index> <coefficient>'")
        try:
            n, c = int(fields[0]), int(fields[1])
        except ValueError:
            raise FormatError(f"{source}:{lineno}: non-integer field")
        if n < 1:
            raise FormatError(f"{source}:{lineno}: index must be >= 1")
        if c == 0:
            raise FormatError(f"{source}:{lineno}: zero coefficients are not written")
        if last is not None and n <= last:
            raise FormatError(f"{source}:{lineno}: indices must be strictly increasing")
        last = n
        terms.append((n, c))
    return FiniteDirichletSeries(terms)


def factored(n: int, sep: str = "*") -> str:
    if n == 1:
        return "1"
    return sep.join(f"{p}^{e}" if e > 1 else str(p) for p, e in sorted(factorint(n).items()))


def render_power_form(series: FiniteDirichletSeries) -> str:
    """Render c/m^s terms as k*(m)^(1-s) with m factored when m divides c."""
    parts = []
    for n, c in series.items():
        if n == 1:
            body, sign = str(abs(c)), c
        elif c % n == 0:
            k = abs(c // n)
            body = f"({factored(n)})^(1-s)" if k == 1 else f"{k}*({factored(n)})^(1-s)"
            sign = c
        else:
            body, sign = f"{abs(c)}/({factored(n)})^s", c
        if not parts:
            parts.append(body if sign > 0 else f"-{body}")
        else:
            parts.append(f"{'+' if sign > 0 else '-'} {body}")
    return " ".join(parts) if parts else "0"
