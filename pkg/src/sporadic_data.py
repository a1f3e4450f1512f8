# src/sporadic_data.py
"""Orders and odd supplement indices m(X), n(X) of the sporadic groups.

Values are kept as the printed prime-power products; X is either the simple
group S or its automorphism group S.2 where the latter is a separate row.
"""
import logging
from dataclasses import dataclass
from math import prod
from typing import Dict, List, Optional, Tuple

from sympy import factorint

from .arith import valuation
from .errors import UnknownSporadic
from .models import TableValidationReport

logger = logging.getLogger(__name__)

Factored = Tuple[Tuple[int, int], ...]


def parse_factored(text: str) -> Factored:
    """'2^4*3^2*5*11' -> ((2, 4), (3, 2), (5, 1), (11, 1))"""
    out = []
    for chunk in text.split("*"):
        base, _, exp = chunk.partition("^")
        out.append((int(base), int(exp) if exp else 1))
    return tuple(out)


def expand(factored: Factored) -> int:
    return prod(p ** e for p, e in factored)


def render_factored(factored: Factored) -> str:
    return "*".join(f"{p}^{e}" if e > 1 else str(p) for p, e in factored)


@dataclass(frozen=True)
class SporadicRecord:
    name: str
    aut: bool
    order: Factored
    m: Factored
    n: Optional[Factored] = None

    @property
    def label(self) -> str:
        return f"Aut({self.name})" if self.aut else self.name

    @property
    def order_int(self) -> int:
        return expand(self.order)

    @property
    def m_int(self) -> int:
        return expand(self.m)

    @property
    def n_int(self) -> Optional[int]:
        return expand(self.n) if self.n is not None else None


# name, aut, |X|, m(X), n(X)
_ROWS = (
    ("M11", False, "2^4*3^2*5*11", "11", None),
    ("M12", False, "2^6*3^3*5*11", "3^2*5*11", None),
    ("M12", True, "2^7*3^3*5*11", "3^2*5*11", None),
    ("M22", False, "2^7*3^2*5*7*11", "7*11", None),
    ("M22", True, "2^8*3^2*5*7*11", "7*11", None),
    ("M23", False, "2^7*3^2*5*7*11*23", "23", None),
    ("M24", False, "2^10*3^3*5*7*11*23", "3*11*23", None),
    ("J1", False, "2^3*3*5*7*11*19", "5*11*19", None),
    ("J2", False, "2^7*3^3*5^2*7", "3^2*5*7", None),
    ("J2", True, "2^8*3^3*5^2*7", "3^2*5*7", None),
    ("J3", False, "2^7*3^5*5*17*19", "3^4*17*19", None),
    ("J3", True, "2^8*3^5*5*17*19", "3^4*17*19", None),
    ("J4", False, "2^21*3^3*5*7*11^3*23*29*31*37*43", "11^2*29*31*37*43", None),
    ("HS", False, "2^9*3^2*5^3*7*11", "3*5^3*11", None),
    ("HS", True, "2^10*3^2*5^3*7*11", "3*5^3*11", None),
    ("Suz", False, "2^13*3^7*5^2*7*11*13", "3^3*5*7*11*13", None),
    ("Suz", True, "2^14*3^7*5^2*7*11*13", "3^3*5*7*11*13", None),
    ("McL", False, "2^7*3^6*5^3*7*11", "5^2*11", None),
    ("McL", True, "2^8*3^6*5^3*7*11", "5^2*11", None),
    ("Ru", False, "2^14*3^3*5^3*7*13*29", "3^2*5^3*13*29", None),
    ("He", False, "2^10*3^3*5^2*7^3*17", "5*7^3*17", None),
    ("He", True, "2^11*3^3*5^2*7^3*17", "3^2*5^2*7^2*17", None),
    ("Ly", False, "2^8*3^7*5^6*7*11*31*37*67", "5^3*31*37*67", None),
    ("O'N", False, "2^9*3^4*5*7^3*11*19*31", "3^2*7^2*11*19*31", None),
    ("O'N", True, "2^10*3^4*5*7^3*11*19*31", "3^2*7^2*11*19*31", None),
    ("Co1", False, "2^21*3^9*5^4*7^2*11*13*23", "3^6*5^3*7*13", "3^4*5^2*7*11*13*23"),
    ("Co2", False, "2^18*3^6*5^3*7*11*23", "3^4*5^2*23", None),
    ("Co3", False, "2^10*3^7*5^3*7*11*23", "3^3*5^2*11*23", None),
    ("Fi22", False, "2^17*3^9*5^2*7*11*13", "3^7*5*13", "3^5*5*7*11*13"),
    ("Fi22", True, "2^18*3^9*5^2*7*11*13", "3^7*5*13", None),
    ("Fi23", False, "2^18*3^13*5^2*7*11*13*17*23", "3^4*17*23", None),
    ("Fi24'", False, "2^21*3^16*5^2*7^3*11*13*17*23*29", "3^13*5*7^2*13*17*29",
     "3^9*5*11*7^2*13*17*23*29"),
    ("Fi24'", True, "2^22*3^16*5^2*7^3*11*13*17*29", "3^13*5*7^2*13*17*29",
     "3^9*5*11*7^2*13*17*23*29"),
    ("HN", False, "2^14*3^6*5^6*7*11*19", "3^4*5^4*7*11*19", None),
    ("HN", True, "2^15*3^6*5^6*7*11*19", "3^4*5^4*7*11*19", None),
    ("Th", False, "2^15*3^10*5^3*7^2*13*19*31", "3^8*5^2*7*13*19", "3^8*5^2*7*13*19*31"),
    ("BM", False, "2^41*3^13*5^6*7^2*11*13*17*19*23*31*47", "3^7*5^3*7*13*17*19*31*47", None),
    ("M", False, "2^46*3^20*5^9*7^6*11^2*13^3*17*19*23*29*31*41*47*59*71",
     "3^11*5^5*7^4*11*13^2*17*19*29*31*41*47*59*71", None),
)

RECORDS: Dict[Tuple[str, bool], SporadicRecord] = {
    (name, aut): SporadicRecord(name, aut, parse_factored(order), parse_factored(m),
                                parse_factored(n) if n else None)
    for name, aut, order, m, n in _ROWS
}

NAMES = tuple(dict.fromkeys(name for name, *_ in _ROWS))

ALIASES = {"ON": "O'N", "FI24": "Fi24'", "FI24P": "Fi24'", "FI'24": "Fi24'", "B": "BM"}

CASCADE_PRIMES = (31, 23, 11, 17, 29, 7)


def canonical_name(name: str) -> str:
    key = name.strip()
    for known in NAMES:
        if known.upper() == key.upper():
            return known
    alias = ALIASES.get(key.upper())
    if alias:
        return alias
    raise UnknownSporadic(f"{name!r} is not a sporadic group name")


def lookup(name: str, aut: bool = False) -> SporadicRecord:
    name = canonical_name(name)
    record = RECORDS.get((name, aut))
    if record is None:
        raise UnknownSporadic(f"no Aut({name}) row: {name} has no separate automorphism row")
    return record


def simple_record(record: SporadicRecord) -> SporadicRecord:
    return RECORDS[(record.name, False)]


def cascade_column(record: SporadicRecord, prime: int) -> Tuple[int, str, List[str]]:
    """m_i chosen at the given cascade prime, its column name, and notes."""
    notes: List[str] = []
    simple = simple_record(record)
    if prime == 31:
        if record.name == "Th":
            return simple.n_int, "n(S)", notes
        return simple.m_int, "m(S)", notes
    if prime == 23 and record.name == "Co1":
        return simple.n_int, "n(S)", notes
    if prime == 11 and record.name in ("Fi22", "Fi24'"):
        if record.n is not None:
            return record.n_int, "n(X)", notes
        notes.append(f"n({record.label}) is not tabled; using n({record.name})")
        return simple.n_int, "n(S)", notes
    return record.m_int, "m(X)", notes


def cascade_assignment() -> Dict[Tuple[str, bool], int]:
    """The cascade prime at which each table row is consumed."""
    out: Dict[Tuple[str, bool], int] = {}
    for prime in CASCADE_PRIMES:
        for key, record in RECORDS.items():
            if key not in out and simple_record(record).order_int % prime == 0:
                out[key] = prime
    return out


def validate_tables() -> TableValidationReport:
    violations: List[str] = []
    flagged: List[str] = []
    notes: List[str] = []
    for record in RECORDS.values():
        order, m = record.order_int, record.m_int
        if m % 2 == 0:
            violations.append(f"{record.label}: m is even")
        if order % m:
            violations.append(f"{record.label}: m does not divide |X|")
        elif valuation(2, order // m) != valuation(2, order):
            violations.append(f"{record.label}: |X:m| loses a factor of 2")
        if record.n is not None:
            if record.n_int % 2 == 0:
                violations.append(f"{record.label}: n is even")
            if order % record.n_int:
                notes.append(f"{record.label}: printed n does not divide printed |X|")
        if record.aut and order != 2 * simple_record(record).order_int:
            notes.append(f"{record.label}: printed |X| is not 2|S|")

    for key, prime in sorted(cascade_assignment().items(), key=lambda kv: (CASCADE_PRIMES.index(kv[1]), kv[0])):
        record = RECORDS[key]
        value, column, _ = cascade_column(record, prime)
        if valuation(prime, value) != 1:
            line = f"{record.label}: {column} = {value} is not exactly divisible by {prime}"
            (flagged if record.name == "Fi24'" else violations).append(line)

    th, co1, fi22 = lookup("Th"), lookup("Co1"), lookup("Fi22")
    expected_31 = {"J4", "Ly", "O'N", "BM", "M"}
    got_31 = {r.name for r in RECORDS.values() if r.m_int % 31 == 0}
    if got_31 != expected_31:
        violations.append(f"31 | m(X) for {sorted(got_31)}, expected {sorted(expected_31)}")
    if th.m_int % 31 == 0 or th.n_int % 31:
        violations.append("Th: expected 31 | n(Th) and 31 not dividing m(Th)")
    expected_23 = {"M23", "M24", "Co2", "Co3", "Fi23"}
    got_23 = {r.name for r in RECORDS.values() if r.m_int % 23 == 0}
    if got_23 != expected_23:
        violations.append(f"23 | m(X) for {sorted(got_23)}, expected {sorted(expected_23)}")
    if co1.m_int % 23 == 0 or co1.n_int % 23:
        violations.append("Co1: expected 23 | n(Co1) and 23 not dividing m(Co1)")
    if fi22.m_int % 11 == 0 or fi22.n_int % 11:
        violations.append("Fi22: expected 11 | n(Fi22) and 11 not dividing m(Fi22)")

    for line in flagged:
        logger.warning("flagged table row: %s", line)
    return TableValidationReport(checked=len(RECORDS), violations=violations, flagged=flagged, notes=notes)


def render_record(record: SporadicRecord) -> str:
    lines = [
        f"name\t{record.label}",
        f"order\t{render_factored(record.order)}",
        f"m\t{render_factored(record.m)}",
    ]
    if record.n is not None:
        lines.append(f"n\t{render_factored(record.n)}")
    return "\n".join(lines) + "\n"


def check_factored(record: SporadicRecord) -> bool:
    """The stored products are already in prime-power form."""
    return all(dict(f) == factorint(expand(f)) for f in (record.order, record.m) + ((record.n,) if record.n else ()))
