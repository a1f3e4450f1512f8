# src/coxeter.py
"""Dynkin diagrams, Weyl degrees, Poincare polynomials and parabolic catalogs.

Nodes are numbered 1..rank in Bourbaki order:
  A_n  1-2-...-n
  B_n  1-2-...-(n-1)=>n         C_n  1-2-...-(n-1)<=n
  D_n  1-2-...-(n-2)-(n-1), (n-2)-n
  E_n  1-3-4-5-...-n, 2-4
  F_4  1-2=>3-4                 G_2  1≡>2
"""
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from sympy import Poly, Symbol, ZZ, divisors, totient

from .errors import FormatError, InvalidRank, NotAnAutomorphism, NotCyclotomicProduct, UnsupportedForm

logger = logging.getLogger(__name__)

X = Symbol("x")

FAMILIES = ("A", "B", "C", "D", "E", "F", "G")
ORDINARY, TWISTED_PAIRS, HAND_ENTERED = "ordinary", "twisted-pairs", "hand-entered"

IntegerPolynomial = Poly
Component = Tuple[str, int]


# polynomials
def integer_poly(coefficients: Mapping[int, int]) -> Poly:
    """Build a ZZ polynomial from a degree -> coefficient map."""
    terms = {(d,): c for d, c in coefficients.items() if c}
    if not terms:
        return Poly(0, X, domain=ZZ)
    return Poly.from_dict(terms, X, domain=ZZ)


ONE = integer_poly({0: 1})


def evaluate(poly: Poly, x: int) -> int:
    return int(poly.eval(x))


def in_power(poly: Poly, k: int) -> Poly:
    """P(x) -> P(x^k)."""
    return integer_poly({m[0] * k: int(c) for m, c in poly.terms()})


def poly_to_text(poly: Poly) -> str:
    return ",".join(f"{m[0]}:{int(c)}" for m, c in sorted(poly.terms()))


def poly_from_text(text: str) -> Poly:
    coefficients: Dict[int, int] = {}
    for chunk in text.split(","):
        degree, sep, coef = chunk.partition(":")
        if not sep:
            raise FormatError(f"polynomial term {chunk!r} is not 'degree:coeff'")
        try:
            d, c = int(degree), int(coef)
        except ValueError:
            raise FormatError(f"polynomial term {chunk!r} is not integral")
        if d < 0 or d in coefficients:
            raise FormatError(f"bad or repeated degree in {chunk!r}")
        coefficients[d] = c
    return integer_poly(coefficients)


# families and degrees
def normalize_family(family: str, rank: int) -> Tuple[str, int]:
    """Accept `E6`-style or bare-letter names; check the rank bounds."""
    family = family.strip().upper()
    letter, suffix = family[:1], family[1:]
    if letter not in FAMILIES or (suffix and not suffix.isdigit()):
        raise InvalidRank(f"unknown family {family!r}")
    if suffix and int(suffix) != rank:
        raise InvalidRank(f"family {family} does not have rank {rank}")
    ok = {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 2,
        "D": rank >= 4,
        "E": 6 <= rank <= 8,
        "F": rank == 4,
        "G": rank == 2,
    }[letter]
    if not ok:
        raise InvalidRank(f"no diagram of type {letter}{rank}")
    return letter, rank


def family_label(family: str, rank: int) -> str:
    return f"{family}{rank}" if family in "EFG" else f"{family}_{rank}"


_EXCEPTIONAL_DEGREES = {
    ("E", 6): [2, 5, 6, 8, 9, 12],
    ("E", 7): [2, 6, 8, 10, 12, 14, 18],
    ("E", 8): [2, 8, 12, 14, 18, 20, 24, 30],
    ("F", 4): [2, 6, 8, 12],
    ("G", 2): [2, 6],
}


def weyl_degrees(family: str, rank: int) -> List[int]:
    family, rank = normalize_family(family, rank)
    if family == "A":
        return list(range(2, rank + 2))
    if family in "BC":
        return [2 * i for i in range(1, rank + 1)]
    if family == "D":
        return sorted([2 * i for i in range(1, rank)] + [rank])
    return list(_EXCEPTIONAL_DEGREES[(family, rank)])


@lru_cache(maxsize=None)
def _poincare(family: str, rank: int) -> Poly:
    out = ONE
    for d in weyl_degrees(family, rank):
        out = out * integer_poly({k: 1 for k in range(d)})
    return out


def poincare(family: str, rank: int) -> Poly:
    """T_W(x) = prod (x^d_i - 1)/(x - 1)."""
    return _poincare(*normalize_family(family, rank))


def positive_roots(family: str, rank: int) -> int:
    return sum(d - 1 for d in weyl_degrees(family, rank))


# diagrams
def _standard_edges(family: str, n: int) -> FrozenSet[Tuple[int, int, int]]:
    if family == "A":
        edges = [(i, i + 1, 1) for i in range(1, n)]
    elif family in "BC":
        edges = [(i, i + 1, 1) for i in range(1, n - 1)] + [(n - 1, n, 2)]
    elif family == "D":
        edges = [(i, i + 1, 1) for i in range(1, n - 1)] + [(n - 2, n, 1)]
    elif family == "E":
        edges = [(1, 3, 1), (2, 4, 1)] + [(i, i + 1, 1) for i in range(3, n)]
    elif family == "F":
        edges = [(1, 2, 1), (2, 3, 2), (3, 4, 1)]
    else:
        edges = [(1, 2, 3)]
    return frozenset(edges)


@dataclass(frozen=True)
class DynkinDiagram:
    family: str
    rank: int
    edges: FrozenSet[Tuple[int, int, int]] = field(default=frozenset())

    @classmethod
    def standard(cls, family: str, rank: int) -> "DynkinDiagram":
        family, rank = normalize_family(family, rank)
        return cls(family, rank, _standard_edges(family, rank))

    @property
    def nodes(self) -> Tuple[int, ...]:
        return tuple(range(1, self.rank + 1))

    @property
    def label(self) -> str:
        return family_label(self.family, self.rank)

    def bond(self, i: int, j: int) -> int:
        for a, b, m in self.edges:
            if {a, b} == {i, j}:
                return m
        return 0

    def neighbours(self, i: int, within: Optional[Iterable[int]] = None) -> List[int]:
        allowed = set(self.nodes if within is None else within)
        out = []
        for a, b, _ in self.edges:
            if a == i and b in allowed:
                out.append(b)
            elif b == i and a in allowed:
                out.append(a)
        return sorted(out)

    def cartan_matrix(self) -> List[List[int]]:
        n = self.rank
        rows = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
        for a, b, m in self.edges:
            rows[a - 1][b - 1] = -1
            rows[b - 1][a - 1] = -m
        return rows


@dataclass(frozen=True)
class DiagramSymmetry:
    rho: Tuple[int, ...]        # rho[i-1] is the image of node i

    @property
    def order(self) -> int:
        k, current = 1, self.rho
        while any(current[i] != i + 1 for i in range(len(current))):
            current = tuple(self.rho[c - 1] for c in current)
            k += 1
        return k

    def image(self, node: int) -> int:
        return self.rho[node - 1]

    @classmethod
    def identity(cls, diagram: DynkinDiagram) -> "DiagramSymmetry":
        return cls(diagram.nodes)


def check_symmetry(diagram: DynkinDiagram, symmetry: DiagramSymmetry) -> None:
    if sorted(symmetry.rho) != list(diagram.nodes):
        raise NotAnAutomorphism(f"{symmetry.rho} is not a permutation of the nodes of {diagram.label}")
    for a, b, m in diagram.edges:
        if diagram.bond(symmetry.image(a), symmetry.image(b)) != m:
            raise NotAnAutomorphism(f"{symmetry.rho} breaks the bond {a}-{b} of {diagram.label}")


def graph_symmetry(diagram: DynkinDiagram, order: int) -> DiagramSymmetry:
    """The standard diagram automorphism of the given order."""
    if order == 1:
        return DiagramSymmetry.identity(diagram)
    n, rho = diagram.rank, list(diagram.nodes)
    if diagram.family == "A" and order == 2 and n >= 2:
        rho = [n + 1 - i for i in diagram.nodes]
    elif diagram.family == "D" and order == 2:
        rho[n - 2], rho[n - 1] = n, n - 1
    elif diagram.family == "D" and order == 3 and n == 4:
        rho = [3, 2, 4, 1]
    elif diagram.family == "E" and order == 2 and n == 6:
        rho = [6, 2, 5, 4, 3, 1]
    elif (diagram.family, order) in (("B", 2), ("C", 2), ("F", 2), ("G", 2)):
        raise UnsupportedForm(f"order-2 symmetry of {diagram.label} needs a Suzuki/Ree form")
    else:
        raise NotAnAutomorphism(f"{diagram.label} has no diagram automorphism of order {order}")
    symmetry = DiagramSymmetry(tuple(rho))
    check_symmetry(diagram, symmetry)
    return symmetry


def orbit_structure(diagram: DynkinDiagram, symmetry: DiagramSymmetry) -> Tuple[FrozenSet[int], ...]:
    """Partition of the nodes into rho-orbits, ordered by least node."""
    check_symmetry(diagram, symmetry)
    seen, orbits = set(), []
    for node in diagram.nodes:
        if node in seen:
            continue
        orbit, current = set(), node
        while current not in orbit:
            orbit.add(current)
            current = symmetry.image(current)
        seen |= orbit
        orbits.append(frozenset(orbit))
    return tuple(orbits)


# sub-diagrams
def _connected_components(diagram: DynkinDiagram, subset: Iterable[int]) -> List[FrozenSet[int]]:
    remaining, out = set(subset), []
    while remaining:
        start = min(remaining)
        stack, comp = [start], {start}
        while stack:
            for nb in diagram.neighbours(stack.pop(), remaining):
                if nb not in comp:
                    comp.add(nb)
                    stack.append(nb)
        remaining -= comp
        out.append(frozenset(comp))
    return out


def _classify(diagram: DynkinDiagram, comp: FrozenSet[int]) -> Component:
    size = len(comp)
    bonds = [diagram.bond(a, b) for a, b in combinations(sorted(comp), 2)]
    if size == 1:
        return ("A", 1)
    if 3 in bonds:
        return ("G", 2)
    if 2 in bonds:
        if size == 4 and diagram.family == "F":
            return ("F", 4)
        if diagram.family == "F":
            return ("C", size) if 4 in comp else ("B", size)
        return (diagram.family if diagram.family in "BC" else "B", size)
    degrees = {i: len(diagram.neighbours(i, comp)) for i in comp}
    branch = [i for i, d in degrees.items() if d == 3]
    if not branch:
        return ("A", size)
    centre = branch[0]
    arms = []
    for start in diagram.neighbours(centre, comp):
        length, prev, current = 1, centre, start
        while True:
            nxt = [v for v in diagram.neighbours(current, comp) if v != prev]
            if not nxt:
                break
            prev, current, length = current, nxt[0], length + 1
        arms.append(length)
    arms.sort()
    if arms[:2] == [1, 1]:
        return ("D", size)
    return ("E", size)


def sub_diagram_components(diagram: DynkinDiagram, nodes: Iterable[int]) -> List[Component]:
    nodes = set(nodes)
    if not nodes <= set(diagram.nodes):
        raise ValueError(f"{sorted(nodes)} is not a node subset of {diagram.label}")
    return [_classify(diagram, comp) for comp in _connected_components(diagram, nodes)]


def parabolic_poincare(diagram: DynkinDiagram, nodes: Iterable[int]) -> Poly:
    out = ONE
    for family, rank in sub_diagram_components(diagram, nodes):
        out = out * poincare(family, rank)
    return out


def twisted_pairs_poincare(diagram: DynkinDiagram, symmetry: DiagramSymmetry, nodes: Iterable[int]) -> Poly:
    """A rho-orbit of k components contributes T_comp(x^k); stable components are ordinary."""
    comps = _connected_components(diagram, nodes)
    out, done = ONE, set()
    for comp in comps:
        if comp in done:
            continue
        orbit, current = [], comp
        while current not in orbit:
            orbit.append(current)
            current = frozenset(symmetry.image(i) for i in current)
        done.update(orbit)
        out = out * in_power(poincare(*_classify(diagram, comp)), len(orbit))
    return out


# cyclotomics
@lru_cache(maxsize=None)
def cyclotomic(u: int) -> Poly:
    if u < 1:
        raise ValueError("cyclotomic index must be >= 1")
    out = integer_poly({u: 1, 0: -1})
    for d in divisors(u)[:-1]:
        out = out.exquo(cyclotomic(d))
    return out


def factor_cyclotomic(poly: Poly) -> List[Tuple[int, int]]:
    """Multiset {(u, multiplicity)} with poly = +-x^k * prod Phi_u^mult."""
    if poly.is_zero:
        raise NotCyclotomicProduct("zero polynomial")
    low = min(m[0] for m in poly.monoms())
    rest = integer_poly({m[0] - low: int(c) for m, c in poly.terms()})
    if rest.LC() < 0:
        rest = -rest
    found: Dict[int, int] = {}
    u = 1
    while rest.degree() > 0:
        if u > 2 * rest.degree() ** 2 + 2:
            raise NotCyclotomicProduct(f"residual factor {rest.as_expr()} is not cyclotomic")
        if int(totient(u)) <= rest.degree():
            phi = cyclotomic(u)
            while True:
                q, r = rest.div(phi)
                if not r.is_zero:
                    break
                rest = q
                found[u] = found.get(u, 0) + 1
        u += 1
    if rest != ONE:
        raise NotCyclotomicProduct(f"unit part {rest.as_expr()} is not +-1")
    return sorted(found.items())


# catalogs
def _all_subsets(k: int) -> List[FrozenSet[int]]:
    return [frozenset(c) for size in range(k + 1) for c in combinations(range(k), size)]


@dataclass(frozen=True)
class ParabolicIndexCatalog:
    """J (a set of orbit positions) -> T_{W_{J*}}; J = all orbits gives T_W."""

    orbits: Tuple[FrozenSet[int], ...]
    entries: Mapping[FrozenSet[int], Poly]
    variant: str

    @property
    def full(self) -> FrozenSet[int]:
        return frozenset(range(len(self.orbits)))

    @property
    def t_w(self) -> Poly:
        return self.entries[self.full]

    def subsets(self) -> List[FrozenSet[int]]:
        return _all_subsets(len(self.orbits))

    def nodes_of(self, J: Iterable[int]) -> FrozenSet[int]:
        out: set = set()
        for position in J:
            out |= self.orbits[position]
        return frozenset(out)

    def describe(self, J: Iterable[int]) -> str:
        parts = ["+".join(map(str, sorted(self.orbits[i]))) for i in sorted(J)]
        return ",".join(parts) if parts else "{}"


def build_catalog(diagram: DynkinDiagram, symmetry: DiagramSymmetry, variant: str) -> ParabolicIndexCatalog:
    orbits = orbit_structure(diagram, symmetry)
    entries: Dict[FrozenSet[int], Poly] = {}
    for J in _all_subsets(len(orbits)):
        nodes = frozenset().union(*(orbits[i] for i in J)) if J else frozenset()
        if variant == ORDINARY:
            entries[J] = parabolic_poincare(diagram, nodes)
        elif variant == TWISTED_PAIRS:
            entries[J] = twisted_pairs_poincare(diagram, symmetry, nodes)
        else:
            raise UnsupportedForm(f"catalog variant {variant!r} is not computed")
    logger.debug("catalog %s/%s: %d orbits", diagram.label, variant, len(orbits))
    return ParabolicIndexCatalog(orbits, entries, variant)


@dataclass(frozen=True)
class CatalogHeader:
    family: str
    rank: int
    twist: int
    graph: int


def _parse_orbit_list(text: str, orbits: Sequence[FrozenSet[int]], where: str) -> FrozenSet[int]:
    if text == "{}":
        return frozenset()
    out = set()
    for chunk in text.split(","):
        try:
            orbit = frozenset(int(n) for n in chunk.split("+"))
        except ValueError:
            raise FormatError(f"{where}: bad orbit {chunk!r}")
        if orbit not in orbits:
            raise FormatError(f"{where}: {chunk!r} is not a rho-orbit")
        out.add(orbits.index(orbit))
    return frozenset(out)


def _twist_value(raw: str, where: str) -> int:
    if raw == "none":
        return 1
    if raw in ("2", "3"):
        return int(raw)
    raise FormatError(f"{where}: twist/graph must be none, 2 or 3")


def parse_catalog(text: str, source: str = "<catalog>") -> Tuple[CatalogHeader, ParabolicIndexCatalog]:
    """Read a hand-entered catalog (`form`, `TW`, then one `J` line per subset)."""
    header: Optional[CatalogHeader] = None
    orbits: Tuple[FrozenSet[int], ...] = ()
    t_w: Optional[Poly] = None
    entries: Dict[FrozenSet[int], Poly] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        where = f"{source}:{lineno}"
        fields = line.split()
        if fields[0] == "form":
            if header is not None or len(fields) != 5:
                raise FormatError(f"{where}: expected one 'form <family> <rank> <twist> <graph>' line")
            try:
                rank = int(fields[2])
            except ValueError:
                raise FormatError(f"{where}: rank is not an integer")
            family, rank = normalize_family(fields[1], rank)
            header = CatalogHeader(family, rank, _twist_value(fields[3], where), _twist_value(fields[4], where))
            diagram = DynkinDiagram.standard(family, rank)
            order = header.twist if header.twist > 1 else header.graph
            orbits = orbit_structure(diagram, graph_symmetry(diagram, order))
        elif header is None:
            raise FormatError(f"{where}: 'form' line must come first")
        elif fields[0] == "TW" and len(fields) == 2:
            t_w = poly_from_text(fields[1])
        elif fields[0] == "J" and len(fields) == 3:
            J = _parse_orbit_list(fields[1], orbits, where)
            if J in entries:
                raise FormatError(f"{where}: repeated subset {fields[1]}")
            entries[J] = poly_from_text(fields[2])
        else:
            raise FormatError(f"{where}: unrecognised line")
    if header is None or t_w is None:
        raise FormatError(f"{source}: missing 'form' or 'TW' line")
    full = frozenset(range(len(orbits)))
    if entries.setdefault(full, t_w) != t_w:
        raise FormatError(f"{source}: J at the full orbit set must equal TW")
    entries.setdefault(frozenset(), ONE)
    missing = [J for J in _all_subsets(len(orbits)) if J not in entries]
    if missing:
        raise FormatError(f"{source}: {len(missing)} orbit subsets have no J line")
    return header, ParabolicIndexCatalog(orbits, entries, HAND_ENTERED)


def catalog_to_text(header: CatalogHeader, catalog: ParabolicIndexCatalog) -> str:
    def flag(v: int) -> str:
        return "none" if v == 1 else str(v)

    lines = [f"form {header.family} {header.rank} {flag(header.twist)} {flag(header.graph)}",
             f"TW {poly_to_text(catalog.t_w)}"]
    for J in catalog.subsets():
        lines.append(f"J {catalog.describe(J)} {poly_to_text(catalog.entries[J])}")
    return "\n".join(lines) + "\n"
