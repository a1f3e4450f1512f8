import pytest

from src.errors import UnknownSporadic
from src.sporadic_data import (CASCADE_PRIMES, NAMES, RECORDS, cascade_assignment, cascade_column, check_factored,
                               lookup, parse_factored, render_factored, render_record, validate_tables)


def test_table_shape():
    assert len(NAMES) == 26
    assert lookup("Th").n_int == 3 ** 8 * 5 ** 2 * 7 * 13 * 19 * 31
    assert lookup("J2").m_int == 315
    assert all(check_factored(record) for record in RECORDS.values())


def test_lookup_aliases_and_errors():
    assert lookup("on").name == "O'N"
    assert lookup("Fi24").name == "Fi24'"
    assert lookup("M12", aut=True).label == "Aut(M12)"
    with pytest.raises(UnknownSporadic):
        lookup("M11", aut=True)
    with pytest.raises(UnknownSporadic):
        lookup("Monster2")


def test_validate_tables():
    report = validate_tables()
    assert report.ok, report.violations
    assert report.flagged
    assert all("Fi24'" in line for line in report.flagged)
    assert any("Aut(Fi24')" in note for note in report.notes)


def test_cascade_assignment():
    assignment = cascade_assignment()
    assert set(assignment) == set(RECORDS)
    assert assignment[("J2", False)] == 7
    assert assignment[("Ru", False)] == 29
    assert assignment[("He", True)] == 17
    assert assignment[("Co1", False)] == 23
    assert assignment[("Th", False)] == 31
    assert set(assignment.values()) == set(CASCADE_PRIMES)


def test_cascade_column_choices():
    assert cascade_column(lookup("Th"), 31)[1] == "n(S)"
    assert cascade_column(lookup("Co1"), 23)[1] == "n(S)"
    value, column, notes = cascade_column(lookup("Fi22", aut=True), 11)
    assert value == lookup("Fi22").n_int and column == "n(S)" and notes
    assert cascade_column(lookup("M24"), 23) == (3 * 11 * 23, "m(X)", [])


def test_factored_round_trip_and_render():
    assert render_factored(parse_factored("2^4*3^2*5*11")) == "2^4*3^2*5*11"
    assert render_record(lookup("M11")) == "name\tM11\norder\t2^4*3^2*5*11\nm\t11\n"
