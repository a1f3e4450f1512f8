import pytest

from src.appendix import ROWS, printed_multipliers, printed_series, run_appendix, s8_comparison, worked_example
from src.dirichlet_ring import FiniteDirichletSeries


def mismatching(report):
    return {(row.row, row.label) for row in report.rows if not row.matches}


def test_printed_multipliers():
    assert printed_multipliers("-2(3*5) -(5*7) +3(3*5*7) -(3^2*5*7)") == {15: -2, 35: -1, 105: 3, 315: -1}
    row = next(r for r in ROWS if r.row == "(iv)" and not r.graph)
    assert printed_series(row) == FiniteDirichletSeries([(1, 1), (7, -14), (21, 21)])


def test_no_graph_rows_reproduce_except_d4():
    report = run_appendix("ordinary")
    for row in report.rows:
        if "no graph" in row.label and row.row != "(viii)":
            assert row.matches, (row.row, row.diffs)


def test_d4_discrepancy():
    report = run_appendix("ordinary")
    (row,) = [r for r in report.rows if r.row == "(viii)"]
    assert dict(row.computed) == {135: -3, 1575: -1, 2025: 3, 4725: 3, 14175: -4, 42525: 1}
    assert {d.index for d in row.diffs if d.printed} == {45, 525, 675}
    assert {d.index for d in row.diffs if d.computed} == {135, 1575, 2025}


def test_graph_rows_under_twisted_pairs():
    report = run_appendix("twisted-pairs")
    assert mismatching(report) == {("(i)", "PSL6(2) graph"), ("(viii)", "POmega8+(2) no graph")}
    (row,) = [r for r in report.rows if r.row == "(i)" and r.variant == "twisted-pairs"]
    assert [(d.index, d.computed, d.printed) for d in row.diffs] == [(22785, 0, -1), (41013, -1, 0)]


def test_graph_rows_under_ordinary():
    report = run_appendix("ordinary")
    assert mismatching(report) == {("(i)", "PSL6(2) graph"), ("(ii)", "PSL5(2) graph"),
                                   ("(iii)", "PSL4(2) graph"), ("(viii)", "POmega8+(2) no graph")}


def test_both_variants_are_labelled():
    report = run_appendix()
    graph_rows = [r for r in report.rows if r.variant is not None]
    assert len(graph_rows) == 10
    assert {r.variant for r in graph_rows} == {"ordinary", "twisted-pairs"}
    assert len(report.rows) == 18
    assert report.mismatches == 5


def test_worked_example():
    example = worked_example()
    assert example["T_W"] == 315
    assert set(example["T_J"].values()) == {21, 9, 3, 1}


@pytest.mark.slow
def test_s8_oracle():
    result = s8_comparison()
    assert result["series"] == "1 - 35/35^s - 105/105^s + 315/315^s"
    assert result["ordinary"] and not result["twisted-pairs"] and not result["printed"]
