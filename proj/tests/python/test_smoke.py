import json
from fractions import Fraction
from pathlib import Path

import pytest

import rsaudit

DATA = Path(__file__).resolve().parent.parent / "data"
CONFIGS = DATA.parent.parent / "configs"

TOY = """id,a,b,label,split
r1,x,p,1,train
r2,x,p,1,valid
r3,x,p,0,train
r4,x,q,0,train
r5,x,q,0,valid
r6,y,p,1,train
r7,y,q,1,valid
r8,y,q,0,test
"""

@pytest.fixture
def toy():
    return rsaudit.parse(TOY)


def test_regions_and_ceiling(toy):
    a = rsaudit.analyze(toy)
    assert a["universe_size"] == 8
    assert a["gamma"] == Fraction(3, 8)
    assert a["ceiling"] == Fraction(3, 4)
    assert [p["signature"] for p in a["inconsistent"]] == ["x|p", "y|q"]
    assert rsaudit.brute_force_ceiling(toy) == a["ceiling"]


def test_audit_report_is_json(toy):
    report = rsaudit.audit(toy, top_k=1)
    assert report["gamma"]["numerator"] == 3
    assert report["summary"]["boundary_count"] == 5
    assert len(report["top_profiles"]) == 1
    assert "Quality of classification" in rsaudit.audit_markdown(toy)


def test_filters(toy):
    sym = rsaudit.filter(toy, "symmetric")
    assert sym["retained"].ids == ["r4", "r5", "r6"]
    assert json.loads(sym["metrics"])["gamma"]["decimal"] == "1.0000"
    asym = rsaudit.filter(toy, strategy="asymmetric")
    assert sum(asym["retained"].labels) == sum(toy.labels)
    parts = rsaudit.filter_split_aware(toy)
    assert sorted(parts) == ["test", "train", "valid"]
    assert parts["valid"]["retained"].ids == ["r5"]
    with pytest.raises(ValueError):
        rsaudit.filter(toy, "lenient")


def test_wilson_interval():
    low, high = rsaudit.wilson_interval(3, 10)
    assert low == pytest.approx(0.1077912674, abs=1e-9)
    assert high == pytest.approx(0.6032218525, abs=1e-9)
    assert rsaudit.wilson_interval(0, 5)[0] == 0.0
    assert rsaudit.wilson_interval(5, 5)[1] == 1.0


def test_synth_round_trip():
    spec = (DATA / "plan.json").read_text()
    dataset, sidecar = rsaudit.synth(spec_json=spec)
    expected = json.loads(sidecar)
    a = rsaudit.analyze(rsaudit.parse(dataset.to_csv()))
    assert a["gamma"] == Fraction(9, 13) == Fraction(expected["gamma"]["numerator"], expected["gamma"]["denominator"])
    assert a["ceiling"] == Fraction(11, 13)


def test_errors_map_to_exceptions():
    with pytest.raises(rsaudit.ParseError):
        rsaudit.load(DATA / "corrupt.csv")
    with pytest.raises(rsaudit.SchemaError):
        rsaudit.load(DATA / "unmapped.csv", DATA / "reject_unmapped.json")
    with pytest.raises(rsaudit.IoError):
        rsaudit.load(DATA / "missing.csv")
    with pytest.raises(rsaudit.SpecError):
        rsaudit.synth()
    assert issubclass(rsaudit.SpecError, rsaudit.Error)


def test_derm7pt_layout_with_config():
    d = rsaudit.load(DATA / "derm7pt_like.csv", CONFIGS / "derm7pt.json")
    assert len(d) == 60
    assert "pigment_network" in d.attributes
    assert rsaudit.analyze(d)["gamma"] == Fraction(3, 20)
