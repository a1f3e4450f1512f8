import json
from pathlib import Path

import pytest

from src import audit, config
from src.config import Caps, load_caps
from src.errors import FormatError
from src.ingest import load_catalog, load_group, load_profile, load_series


def test_default_caps():
    caps = load_caps()
    assert caps == Caps()
    assert (caps.lattice, caps.tuples, caps.elements, caps.interval) == (10_000, 100_000_000, 100_000, 1_000)


def test_cap_overrides():
    caps = load_caps("lattice=500, interval=20")
    assert caps.lattice == 500 and caps.interval == 20 and caps.tuples == 100_000_000


def test_env_overrides(monkeypatch):
    monkeypatch.setattr(config, "CAPS_OVERRIDES", "elements=99")
    assert load_caps().elements == 99


@pytest.mark.parametrize("text", ["bogus=1", "lattice=0", "lattice=x", "lattice"])
def test_bad_overrides(text):
    with pytest.raises(FormatError):
        load_caps(text)


def test_audit_disabled_by_default(tmp_path):
    assert audit.record_audit("zetap", ["zetap", "2", "15"], 0) is None


def test_audit_ledger(tmp_path):
    path = tmp_path / "ledger" / "runs.jsonl"
    audit.record_audit("zetap", ["zetap", "2", "15"], 0, {"zeta": 4}, path=str(path))
    audit.record_audit("zetap", ["zetap", "2", "64"], 2, path=str(path))
    entries = [json.loads(line) for line in path.read_text().splitlines()]
    assert [e["exit_code"] for e in entries] == [0, 2]
    assert entries[0]["summary"] == {"zeta": 4}


def test_ingest_loaders(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_series(str(tmp_path / "missing.txt"))
    series_file = tmp_path / "a.txt"
    series_file.write_text("1 1\n7 -14\n")
    assert load_series(str(series_file)).coefficient(7) == -14
    group_file = tmp_path / "s3.grp"
    group_file.write_text("degree 3\ngen 2 1 3\ngen 2 3 1\n")
    assert load_group(str(group_file)).order == 6
    assert load_group("S4").order == 24
    with pytest.raises(FileNotFoundError):
        load_group(str(tmp_path / "nope.grp"))
    bad = tmp_path / "bad.profile"
    bad.write_text("abelian p=2 r=1 c=1\nwidget\n")
    with pytest.raises(FormatError, match="bad.profile:2"):
        load_profile(str(bad))


def test_load_shipped_catalog():
    path = Path(__file__).resolve().parents[1] / "data" / "catalogs" / "2A3.cat"
    header, catalog = load_catalog(str(path))
    assert (header.family, header.rank, header.twist, header.graph) == ("A", 3, 2, 1)
    assert len(catalog.subsets()) == 4
