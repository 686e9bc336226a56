import json

import pytest

from crosscap.ledger import (
    CHECKS,
    UnknownCheckError,
    records_to_markdown,
    run_check,
    run_suite,
)

SPEC_IDS = [
    "EX21-MATRICES",
    "GEN-FIX-ONES",
    "T2-EQ-YY",
    "THM23-ELEM",
    "THM23-OBSTRUCT",
    "THM23-KER",
    "PSI-O2",
    "THM31-MEMBER",
    "LEM42-3CHAIN",
    "LEM43-COMM",
    "RS-GAMMA24",
    "THM41-MEMBER",
    "THM41-MOD8",
    "TOWER-2L",
    "THETA-BASIS",
    "PROP34-TC",
    "PROP52-STALLINGS",
    "THM51-COUNTS",
]


def test_catalog_contains_all_named_checks():
    for check_id in SPEC_IDS:
        assert check_id in CHECKS
    assert "THM31-CLOSURE" in CHECKS  # companion of the membership check


def test_every_check_has_anchor_and_defaults():
    for spec in CHECKS.values():
        assert spec.anchor
        assert isinstance(spec.defaults, dict)


def test_unknown_id_raises():
    with pytest.raises(UnknownCheckError):
        run_check("NOPE")


def test_records_are_deterministic_modulo_runtime():
    a = run_check("THETA-BASIS", {"g": 4, "n": 1, "d": 2})
    b = run_check("THETA-BASIS", {"g": 4, "n": 1, "d": 2})
    assert (a.id, a.params, a.status, a.details, a.anchor) == (
        b.id,
        b.params,
        b.status,
        b.details,
        b.anchor,
    )


def test_examples_pass():
    assert run_check("EX21-MATRICES", {"gmax": 3, "dmax": 2}).status == "pass"
    record = run_check("RS-GAMMA24", {"g": 4, "sample": 20})
    assert record.status == "pass"
    assert record.details["order"] == 512
    record = run_check("PROP52-STALLINGS", {"g": 4, "n": 1, "d": 2})
    assert record.status == "pass"
    assert record.details["claimed_index"] == 8


def test_guard_yields_inconclusive():
    assert run_check("THM23-ELEM", {"g": 4, "d": 3}).status == "inconclusive"
    assert run_check("PSI-O2", {"g": 5}).status == "inconclusive"
    assert run_check("PROP52-STALLINGS", {"g": 8, "d": 7}).status == "inconclusive"


def test_unknown_params_are_ignored():
    record = run_check("THETA-BASIS", {"g": 4, "bogus": 99})
    assert "bogus" not in record.params


def test_record_json_schema():
    record = run_check("T2-EQ-YY", {"gmax": 4})
    data = record.to_json()
    assert set(data) == {"id", "params", "status", "details", "runtime_ms", "anchor"}
    json.dumps(data)


def test_run_suite_sorted_and_markdown():
    records = run_suite(["THETA-BASIS", "PROP34-TC"], {"g": 4, "n": 1, "d": 2})
    assert [r.id for r in records] == ["PROP34-TC", "THETA-BASIS"]
    md = records_to_markdown(records)
    assert md.splitlines()[0].startswith("| check ")
    assert "PROP34-TC" in md
