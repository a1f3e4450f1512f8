# src/perm_groups.py
"""Brute-force permutation group oracle.

Permutations are 0-based image tuples; `mul(a, b)` applies a first, then b.
Subgroups are frozensets of permutations. Everything here is exhaustive and
bounded by the caps in config.
"""
import logging
import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from sympy import isprime
from sympy.combinatorics import Permutation, PermutationGroup

from .config import Caps, load_caps
from .dirichlet_ring import FiniteDirichletSeries
from .errors import CapExceeded, FormatError, NotNormal, NotPrime, PNotDividing
from .metrics import CLOSURE_COUNT, SUBGROUP_COUNT

logger = logging.getLogger(__name__)

Perm = Tuple[int, ...]
Subgroup = FrozenSet[Perm]


def mul(a: Perm, b: Perm) -> Perm:
    return tuple(b[i] for i in a)


def inverse(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, j in enumerate(a):
        out[j] = i
    return tuple(out)


def conjugate(h: Perm, g: Perm) -> Perm:
    """g^-1 h g"""
    return mul(mul(inverse(g), h), g)


def closure(generators: Iterable[Perm], degree: int, start: Iterable[Perm] = (),
            ceiling: Optional[int] = None) -> Optional[Subgroup]:
    """Subgroup generated by `start` and `generators`.

    With `ceiling` = |X| for an ambient X, stops as soon as more than half
    of X is reached; the caller then knows the result is X and gets None back.
    """
    CLOSURE_COUNT.inc()
    gens = list(dict.fromkeys(generators))
    identity = tuple(range(degree))
    seen = set(start) | {identity}
    queue = deque(seen)
    while queue:
        x = queue.popleft()
        for g in gens:
            y = mul(x, g)
            if y not in seen:
                seen.add(y)
                queue.append(y)
                if ceiling is not None and 2 * len(seen) > ceiling:
                    return None
    return frozenset(seen)


def cyclic(g: Perm) -> Subgroup:
    identity = tuple(range(len(g)))
    out, x = [identity], g
    while x != identity:
        out.append(x)
        x = mul(x, g)
    return frozenset(out)


def small_generators(H: Subgroup) -> List[Perm]:
    """A generating set of H picked greedily by cyclic extension."""
    degree = len(next(iter(H)))
    gens: List[Perm] = []
    current: Subgroup = frozenset([tuple(range(degree))])
    for h in sorted(H):
        if h not in current:
            gens.append(h)
            current = closure(gens, degree)
            if len(current) == len(H):
                break
    return gens


class PermGroup:
    def __init__(self, degree: int, generators: Sequence[Sequence[int]], name: Optional[str] = None,
                 caps: Optional[Caps] = None):
        if degree < 1:
            raise FormatError("degree must be >= 1")
        gens = []
        for g in generators:
            g = tuple(g)
            if sorted(g) != list(range(degree)):
                raise FormatError(f"{g} is not a permutation of {degree} points")
            gens.append(g)
        self.degree = degree
        self.generators: Tuple[Perm, ...] = tuple(gens)
        self.name = name or f"<{len(gens)} generators on {degree} points>"
        self.caps = caps or load_caps()
        self._elements: Optional[Subgroup] = None
        self._order: Optional[int] = None

    def __repr__(self) -> str:
        return f"PermGroup({self.name!r}, order={self.order})"

    @property
    def identity(self) -> Perm:
        return tuple(range(self.degree))

    def to_sympy(self) -> PermutationGroup:
        gens = [Permutation(list(g)) for g in self.generators] or [Permutation(list(range(self.degree)))]
        return PermutationGroup(gens)

    @property
    def order(self) -> int:
        if self._order is None:
            self._order = int(self.to_sympy().order())
        return self._order

    def elements(self) -> Subgroup:
        if self._elements is None:
            if self.order > self.caps.elements:
                raise CapExceeded(f"|{self.name}| = {self.order} exceeds the element cap {self.caps.elements}")
            self._elements = closure(self.generators, self.degree)
        return self._elements

    def subgroup(self, generators: Iterable[Perm]) -> Subgroup:
        return closure(generators, self.degree)


# presets and files
def _cycle(n: int) -> Perm:
    return tuple((i + 1) % n for i in range(n))


def _transposition(n: int, a: int, b: int) -> Perm:
    out = list(range(n))
    out[a], out[b] = b, a
    return tuple(out)


def _three_cycle(n: int, a: int, b: int, c: int) -> Perm:
    out = list(range(n))
    out[a], out[b], out[c] = b, c, a
    return tuple(out)


PSL32_GENERATORS = ((1, 2, 3, 4, 5, 6, 0), (0, 1, 4, 3, 2, 6, 5))
Q8_GENERATORS = ((2, 3, 1, 0, 6, 7, 5, 4), (4, 5, 7, 6, 1, 0, 2, 3))


def preset(name: str, caps: Optional[Caps] = None) -> PermGroup:
    """Named groups: C<n>, S<n>, A<n>, D<2n>, Q8, V4, PSL(3,2)."""
    key = name.strip()
    if key.upper() in ("PSL(3,2)", "PSL32", "L3(2)", "GL(3,2)"):
        return PermGroup(7, PSL32_GENERATORS, "PSL(3,2)", caps)
    if key.upper() == "Q8":
        return PermGroup(8, Q8_GENERATORS, "Q8", caps)
    if key.upper() in ("V4", "D4", "C2XC2"):
        return PermGroup(4, [(1, 0, 3, 2), (2, 3, 0, 1)], "C2xC2", caps)
    match = re.fullmatch(r"([CSAD])(\d+)", key.upper())
    if not match:
        raise FormatError(f"unknown group preset {name!r}")
    letter, n = match.group(1), int(match.group(2))
    if n < 1:
        raise FormatError(f"{name}: size must be positive")
    if letter == "C":
        return PermGroup(n, [_cycle(n)], f"C{n}", caps)
    if letter == "S":
        gens = [_cycle(n), _transposition(n, 0, 1)] if n >= 2 else []
        return PermGroup(n, gens, f"S{n}", caps)
    if letter == "A":
        gens = [_three_cycle(n, 0, 1, i) for i in range(2, n)]
        return PermGroup(n, gens, f"A{n}", caps)
    if n % 2 or n < 6:
        raise FormatError(f"{name}: dihedral presets are D<2n> with n >= 3")
    m = n // 2
    return PermGroup(m, [_cycle(m), tuple((-i) % m for i in range(m))], f"D{n}", caps)


def parse_group(text: str, source: str = "<group>", caps: Optional[Caps] = None) -> PermGroup:
    degree: Optional[int] = None
    gens: List[Perm] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        try:
            values = [int(v) for v in fields[1:]]
        except ValueError:
            raise FormatError(f"{source}:{lineno}: non-integer field")
        if fields[0] == "degree" and len(values) == 1 and degree is None:
            degree = values[0]
        elif fields[0] == "gen" and degree is not None:
            if len(values) != degree or sorted(values) != list(range(1, degree + 1)):
                raise FormatError(f"{source}:{lineno}: generator is not a permutation of 1..{degree}")
            gens.append(tuple(v - 1 for v in values))
        else:
            raise FormatError(f"{source}:{lineno}: expected 'degree <d>' then 'gen ...' lines")
    if degree is None:
        raise FormatError(f"{source}: missing degree line")
    return PermGroup(degree, gens, source, caps)


# lattice
@dataclass
class SubgroupLattice:
    group: PermGroup
    subgroups: List[Subgroup]                    # size descending, top first
    generators: Dict[Subgroup, Tuple[Perm, ...]] = field(default_factory=dict)

    @property
    def top(self) -> Subgroup:
        return self.subgroups[0]

    def index(self, H: Subgroup) -> int:
        return len(self.top) // len(H)

    def __len__(self) -> int:
        return len(self.subgroups)


def _sort_key(H: Subgroup):
    return (-len(H), sorted(H))


def all_subgroups(G: PermGroup) -> SubgroupLattice:
    if G.order > G.caps.lattice:
        raise CapExceeded(f"|{G.name}| = {G.order} exceeds the lattice cap {G.caps.lattice}")
    elements = G.elements()
    top = len(elements)
    cyclics: Dict[Subgroup, Perm] = {}
    for g in sorted(elements):
        cyclics.setdefault(cyclic(g), g)
    found: Dict[Subgroup, Tuple[Perm, ...]] = {C: (g,) for C, g in cyclics.items()}
    frontier = list(found)
    while frontier:
        nxt = []
        for H in frontier:
            for C, g in cyclics.items():
                if C <= H:
                    continue
                gens = found[H] + (g,)
                K = closure(gens, G.degree, start=H, ceiling=top)
                K = elements if K is None else K
                if K not in found:
                    found[K] = gens
                    nxt.append(K)
        frontier = nxt
    subgroups = sorted(found, key=_sort_key)
    SUBGROUP_COUNT.inc(len(subgroups))
    logger.info("lattice of %s: %d subgroups", G.name, len(subgroups))
    return SubgroupLattice(G, subgroups, found)


def mobius(lattice: SubgroupLattice) -> Dict[Subgroup, int]:
    table: Dict[Subgroup, int] = {}
    for i, H in enumerate(lattice.subgroups):
        if i == 0:
            table[H] = 1
            continue
        table[H] = -sum(table[K] for K in lattice.subgroups[:i] if len(K) > len(H) and H < K)
    return table


def pg_series(G: PermGroup, lattice: Optional[SubgroupLattice] = None) -> FiniteDirichletSeries:
    lattice = lattice or all_subgroups(G)
    table = mobius(lattice)
    return FiniteDirichletSeries([(lattice.index(H), mu) for H, mu in table.items() if mu])


def maximal_subgroups(lattice: SubgroupLattice) -> List[Subgroup]:
    proper = lattice.subgroups[1:]
    return [H for H in proper if not any(H < K for K in proper if len(K) > len(H))]


def intersection_of_maximals_check(lattice: SubgroupLattice, table: Dict[Subgroup, int]) -> List[Subgroup]:
    """Subgroups with nonzero Mobius value that are not intersections of maximal subgroups."""
    maximals = maximal_subgroups(lattice)
    bad = []
    for H, mu in table.items():
        if not mu or H == lattice.top:
            continue
        above = [M for M in maximals if H <= M]
        meet = frozenset.intersection(*above) if above else lattice.top
        if meet != H:
            bad.append(H)
    return bad


def conjugacy_classes_of_subgroups(lattice: SubgroupLattice) -> List[List[Subgroup]]:
    gens = lattice.group.generators
    classes, seen = [], set()
    for H in lattice.subgroups:
        if H in seen:
            continue
        orbit, queue = {H}, deque([H])
        while queue:
            K = queue.popleft()
            for g in gens:
                L = frozenset(conjugate(k, g) for k in K)
                if L not in orbit:
                    orbit.add(L)
                    queue.append(L)
        seen |= orbit
        classes.append(sorted(orbit, key=_sort_key))
    return classes


# Hall counting
def generation_probability(G: PermGroup, t: int) -> Fraction:
    """Exact share of t-tuples of G generating G."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    if G.order ** t > G.caps.tuples:
        raise CapExceeded(f"|{G.name}|^{t} exceeds the tuple cap {G.caps.tuples}")
    elements = G.elements()
    top = len(elements)
    weights: Dict[Subgroup, int] = {}
    reps: Dict[Subgroup, Perm] = {}
    for g in sorted(elements):
        C = cyclic(g)
        weights[C] = weights.get(C, 0) + 1
        reps.setdefault(C, g)
    joins: Dict[Tuple[Subgroup, Subgroup], Subgroup] = {}

    def join(H: Subgroup, C: Subgroup) -> Subgroup:
        if C <= H:
            return H
        if H <= C:
            return C
        key = (H, C)
        if key not in joins:
            K = closure(small_generators(H) + [reps[C]], G.degree, start=H, ceiling=top)
            joins[key] = elements if K is None else K
        return joins[key]

    states: Dict[Subgroup, int] = {frozenset([G.identity]): 1}
    for _ in range(t):
        nxt: Dict[Subgroup, int] = {}
        for H, count in states.items():
            for C, weight in weights.items():
                K = join(H, C)
                nxt[K] = nxt.get(K, 0) + count * weight
        states = nxt
    return Fraction(states.get(elements, 0), top ** t)


# normal subgroups, supplements, Sylow
def normalizer(G: PermGroup, H: Subgroup) -> Subgroup:
    gens = small_generators(H)
    return frozenset(g for g in G.elements() if all(conjugate(h, g) in H for h in gens))


def is_normal(G: PermGroup, H: Subgroup) -> bool:
    gens = small_generators(H)
    return all(conjugate(h, g) in H for g in G.generators for h in gens)


def _supplements(S: Subgroup, H: Subgroup, order: int) -> bool:
    return len(S) * len(H) == order * len(S & H)


def supplement_series(X: PermGroup, S: Subgroup, lattice: Optional[SubgroupLattice] = None) -> FiniteDirichletSeries:
    """sum over H with SH = X of mu_X(H) / |X:H|^s"""
    if not is_normal(X, S):
        raise NotNormal(f"subgroup of order {len(S)} is not normal in {X.name}")
    lattice = lattice or all_subgroups(X)
    table = mobius(lattice)
    order = len(lattice.top)
    return FiniteDirichletSeries(
        [(lattice.index(H), mu) for H, mu in table.items() if mu and _supplements(S, H, order)]
    )


def sylow(G: PermGroup, p: int) -> Subgroup:
    if not isprime(p):
        raise NotPrime(f"{p} is not prime")
    if G.order % p:
        raise PNotDividing(f"{p} does not divide |{G.name}| = {G.order}")
    P = G.to_sympy().sylow_subgroup(p)
    gens = []
    for g in P.generators:
        image = list(g.array_form)
        gens.append(tuple(image + list(range(len(image), G.degree))))
    return closure(gens, G.degree)


def overgroups_of(X: PermGroup, H: Subgroup) -> List[Subgroup]:
    """Every K with H <= K <= X, found by joining coset representatives."""
    elements = X.elements()
    top = len(elements)
    if top // len(H) > X.caps.interval:
        raise CapExceeded(f"|X:H| = {top // len(H)} exceeds the interval cap {X.caps.interval}")
    base = small_generators(H)
    ordered = sorted(elements)
    found: Dict[Subgroup, List[Perm]] = {H: base}
    frontier = [H]
    while frontier:
        nxt = []
        for K in frontier:
            covered = set(K)
            for g in ordered:
                if g in covered:
                    continue
                covered.update(mul(g, k) for k in K)
                gens = found[K] + [g]
                L = closure(gens, X.degree, start=K, ceiling=top)
                L = elements if L is None else L
                if L not in found:
                    found[L] = gens
                    nxt.append(L)
        frontier = nxt
    SUBGROUP_COUNT.inc(len(found))
    logger.info("overgroup interval in %s: %d subgroups above order %d", X.name, len(found), len(H))
    return sorted(found, key=_sort_key)


def odd_supplement_series(X: PermGroup, S: Subgroup) -> FiniteDirichletSeries:
    """pi_part(supplement_series(X, S), {2}) without building the lattice of X.

    Every odd-index subgroup contains a Sylow 2-subgroup P; members of the
    interval above P are weighted by |X:N_X(P)| * |N_H(P)| / |H| to count
    whole conjugacy classes.
    """
    if not is_normal(X, S):
        raise NotNormal(f"subgroup of order {len(S)} is not normal in {X.name}")
    P = sylow(X, 2) if X.order % 2 == 0 else frozenset([X.identity])
    interval = overgroups_of(X, P)
    order = len(interval[0])
    table: Dict[Subgroup, int] = {}
    for i, H in enumerate(interval):
        table[H] = 1 if i == 0 else -sum(table[K] for K in interval[:i] if len(K) > len(H) and H < K)
    p_gens = small_generators(P) if len(P) > 1 else []
    sylow_count = order // len(normalizer(X, P)) if p_gens else 1
    totals: Dict[int, Fraction] = {}
    for H, mu in table.items():
        if not mu or not _supplements(S, H, order):
            continue
        n_h = sum(1 for h in H if all(conjugate(x, h) in P for x in p_gens))
        index = order // len(H)
        totals[index] = totals.get(index, Fraction(0)) + Fraction(mu * sylow_count * n_h, len(H))
    for index, total in totals.items():
        if total.denominator != 1:
            raise ArithmeticError(f"class weight at index {index} is {total}, not an integer")
    return FiniteDirichletSeries([(index, int(total)) for index, total in totals.items()])
