from collections import deque
from math import prod

import numpy as np
import pytest
from sympy import divisors

from src import coxeter
from src.coxeter import DiagramSymmetry, DynkinDiagram
from src.errors import FormatError, InvalidRank, NotAnAutomorphism, NotCyclotomicProduct, UnsupportedForm


def weyl_length_counts(diagram: DynkinDiagram):
    """Elements of W per length, by breadth-first search over simple reflections."""
    n = diagram.rank
    cartan = np.array(diagram.cartan_matrix(), dtype=np.int64)
    reflections = []
    for i in range(n):
        s = np.eye(n, dtype=np.int64)
        s[i, :] -= cartan[i, :]
        reflections.append(s)
    identity = np.eye(n, dtype=np.int64)
    seen = {identity.tobytes(): 0}
    queue = deque([identity])
    while queue:
        w = queue.popleft()
        length = seen[w.tobytes()]
        for s in reflections:
            v = w @ s
            key = v.tobytes()
            if key not in seen:
                seen[key] = length + 1
                queue.append(v)
    counts = [0] * (max(seen.values()) + 1)
    for length in seen.values():
        counts[length] += 1
    return counts


@pytest.mark.parametrize("family, rank", [("A", 2), ("A", 3), ("B", 3), ("C", 3), ("D", 4), ("G", 2), ("F", 4)])
def test_poincare_matches_weyl_group(family, rank):
    poly = coxeter.poincare(family, rank)
    coefficients = [int(c) for c in reversed(poly.all_coeffs())]
    assert coefficients == weyl_length_counts(DynkinDiagram.standard(family, rank))


def test_poincare_values():
    assert coxeter.evaluate(coxeter.poincare("A", 3), 2) == 315
    assert coxeter.evaluate(coxeter.poincare("C", 3), 2) == 2835
    assert coxeter.evaluate(coxeter.poincare("D", 4), 2) == 42525
    assert coxeter.weyl_degrees("D", 4) == [2, 4, 4, 6]
    assert coxeter.weyl_degrees("E6", 6) == [2, 5, 6, 8, 9, 12]
    assert coxeter.positive_roots("E", 8) == 120


@pytest.mark.parametrize("family, rank", [("D", 3), ("E", 5), ("F", 3), ("B", 1), ("X", 2)])
def test_invalid_rank(family, rank):
    with pytest.raises(InvalidRank):
        DynkinDiagram.standard(family, rank)


def test_graph_symmetries():
    a3 = DynkinDiagram.standard("A", 3)
    flip = coxeter.graph_symmetry(a3, 2)
    assert flip.rho == (3, 2, 1)
    assert coxeter.orbit_structure(a3, flip) == (frozenset({1, 3}), frozenset({2}))
    triality = coxeter.graph_symmetry(DynkinDiagram.standard("D", 4), 3)
    assert triality.order == 3
    e6 = coxeter.graph_symmetry(DynkinDiagram.standard("E", 6), 2)
    assert len(coxeter.orbit_structure(DynkinDiagram.standard("E", 6), e6)) == 4


def test_graph_symmetry_errors():
    with pytest.raises(UnsupportedForm):
        coxeter.graph_symmetry(DynkinDiagram.standard("B", 3), 2)
    with pytest.raises(NotAnAutomorphism):
        coxeter.graph_symmetry(DynkinDiagram.standard("A", 3), 3)
    with pytest.raises(NotAnAutomorphism):
        coxeter.check_symmetry(DynkinDiagram.standard("A", 3), DiagramSymmetry((2, 1, 3)))


def test_sub_diagram_components():
    e6 = DynkinDiagram.standard("E", 6)
    assert coxeter.sub_diagram_components(e6, {2, 3, 4, 5}) == [("D", 4)]
    assert coxeter.sub_diagram_components(e6, {1, 3, 4, 5, 6}) == [("A", 5)]
    c3 = DynkinDiagram.standard("C", 3)
    assert coxeter.sub_diagram_components(c3, {2, 3}) == [("C", 2)]
    assert coxeter.sub_diagram_components(c3, {1, 3}) == [("A", 1), ("A", 1)]


def test_twisted_pairs_poincare():
    a5 = DynkinDiagram.standard("A", 5)
    flip = coxeter.graph_symmetry(a5, 2)
    assert coxeter.evaluate(coxeter.twisted_pairs_poincare(a5, flip, {1, 3, 5}), 2) == 15
    assert coxeter.evaluate(coxeter.parabolic_poincare(a5, {1, 3, 5}), 2) == 27


def test_factor_cyclotomic():
    assert coxeter.factor_cyclotomic(coxeter.poincare("A", 3)) == [(2, 2), (3, 1), (4, 1)]
    assert coxeter.factor_cyclotomic(coxeter.integer_poly({2: -1, 3: -1})) == [(2, 1)]
    with pytest.raises(NotCyclotomicProduct):
        coxeter.factor_cyclotomic(coxeter.integer_poly({0: 2, 1: 1, 2: 1}))


def test_build_catalog_ordinary():
    catalog = coxeter.build_catalog(DynkinDiagram.standard("A", 3),
                                    DiagramSymmetry.identity(DynkinDiagram.standard("A", 3)), coxeter.ORDINARY)
    values = sorted(coxeter.evaluate(catalog.entries[J], 2) for J in catalog.subsets())
    assert values == [1, 3, 3, 3, 9, 21, 21, 315]
    assert catalog.describe(frozenset({0, 2})) == "1,3"


SHIPPED = """\
form A 3 2 none
TW 0:1,1:1,2:1,3:2,4:1,5:1,6:1
J {} 0:1
J 1+3 0:1,2:1
J 2 0:1,1:1
"""


def test_parse_catalog():
    header, catalog = coxeter.parse_catalog(SHIPPED)
    assert (header.family, header.rank, header.twist, header.graph) == ("A", 3, 2, 1)
    assert coxeter.evaluate(catalog.t_w, 2) == 135
    assert catalog.variant == coxeter.HAND_ENTERED
    again = coxeter.parse_catalog(coxeter.catalog_to_text(header, catalog))[1]
    assert again.entries == catalog.entries


@pytest.mark.parametrize("text", [
    "TW 0:1\n",
    "form A 3 2 none\nTW 0:1,1:1\n",
    "form A 3 2 none\nTW 0:1\nJ 1+2 0:1\n",
    "form A 3 2 none\nTW 0:1\nJ 2 0:1\nJ 2 0:1\n",
    "form A 3 2 none\nTW 0:x\n",
])
def test_parse_catalog_rejects(text):
    with pytest.raises(FormatError):
        coxeter.parse_catalog(text)


def _ordinary_diagrams():
    for family, ranks in (("A", range(1, 7)), ("B", range(2, 7)), ("C", range(3, 7)), ("D", range(4, 7)),
                          ("E", [6]), ("F", [4]), ("G", [2])):
        for rank in ranks:
            diagram = DynkinDiagram.standard(family, rank)
            yield diagram, DiagramSymmetry.identity(diagram)


def _graph_diagrams():
    for family, rank, order in [("A", n, 2) for n in range(2, 7)] + [("D", n, 2) for n in range(4, 7)] + \
                               [("D", 4, 3), ("E", 6, 2)]:
        diagram = DynkinDiagram.standard(family, rank)
        yield diagram, coxeter.graph_symmetry(diagram, order)


@pytest.mark.parametrize("variant", [coxeter.ORDINARY, coxeter.TWISTED_PAIRS])
def test_catalog_entries_divide_tw(variant):
    pairs = list(_graph_diagrams())
    if variant == coxeter.ORDINARY:
        pairs += list(_ordinary_diagrams())
    for diagram, symmetry in pairs:
        catalog = coxeter.build_catalog(diagram, symmetry, variant)
        for J in catalog.subsets():
            _, remainder = catalog.t_w.div(catalog.entries[J])
            assert remainder.is_zero, (diagram.label, variant, catalog.describe(J))


def test_cyclotomic_products():
    for n in range(1, 31):
        for a in range(1, 11):
            assert prod(coxeter.evaluate(coxeter.cyclotomic(d), a) for d in divisors(n)) == a ** n - 1


def test_phi4_only_in_full_a3():
    a3 = DynkinDiagram.standard("A", 3)
    catalog = coxeter.build_catalog(a3, DiagramSymmetry.identity(a3), coxeter.ORDINARY)
    assert dict(coxeter.factor_cyclotomic(catalog.t_w))[4] == 1
    for J in catalog.subsets():
        if J != catalog.full:
            assert 4 not in dict(coxeter.factor_cyclotomic(catalog.entries[J])), catalog.describe(J)
