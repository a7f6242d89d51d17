"""Deterministic output formatting: floats, JSON, CSV, digests."""
import json
import math

import pytest

from prkit.reporting import RunManifest, dumps_json, format_csv, format_float, sha256_file


def test_format_float_six_significant_digits():
    assert format_float(0.5) == "0.500000"
    assert format_float(1 / 3) == "0.333333"
    assert format_float(2.0) == "2.00000"
    assert format_float(123456.78) == "123457."
    assert format_float(1e-7) == "1.00000e-07"
    assert format_float(-0.25) == "-0.250000"


def test_format_float_inf_token_and_nan_refusal():
    assert format_float(float("inf")) == "inf"
    assert format_float(float("-inf")) == "-inf"
    with pytest.raises(ValueError):
        format_float(float("nan"))


def test_dumps_json_is_valid_and_order_preserving():
    doc = {"b": 1, "a": [1.5, {"x": True, "y": None}], "c": "text"}
    text = dumps_json(doc)
    assert text.endswith("\n")
    parsed = json.loads(text)
    assert list(parsed) == ["b", "a", "c"]  # insertion order, not sorted
    assert parsed["a"][0] == 1.5
    assert parsed["a"][1] == {"x": True, "y": None}


def test_dumps_json_floats_and_inf():
    text = dumps_json({"v": 0.5, "w": float("inf"), "n": 3})
    assert '"v": 0.500000' in text
    assert '"w": "inf"' in text
    assert '"n": 3' in text
    assert json.loads(text)["w"] == "inf"


def test_dumps_json_identical_bytes_for_identical_input():
    doc = {"z": [1.0, 2.0, float("inf")], "k": {"nested": 0.1}}
    assert dumps_json(doc) == dumps_json({"z": [1.0, 2.0, float("inf")], "k": {"nested": 0.1}})


def test_dumps_json_rejects_unknown_types():
    with pytest.raises(TypeError):
        dumps_json({"oops": object()})


def test_format_csv_layout():
    text = format_csv(["a", "b", "c"], [[1, 0.5, "x"], [2, float("inf"), "y"]])
    assert text == "a,b,c\n1,0.500000,x\n2,inf,y\n"


def test_sha256_file_matches_hashlib(tmp_path):
    import hashlib

    path = tmp_path / "blob.bin"
    path.write_bytes(b"\x00\x01\x02" * 1000)
    assert sha256_file(path) == hashlib.sha256(path.read_bytes()).hexdigest()


def test_manifest_serialization_shape():
    m = RunManifest(
        command="compute",
        version="0.1.0",
        seed=7,
        parameters={"k": 3},
        inputs={"real": {"path": "r.epr", "sha256": "ab" * 32}},
        duration_seconds=1.25,
    )
    d = m.to_dict()
    assert list(d) == ["command", "version", "seed", "parameters", "inputs", "duration_seconds"]
    assert json.loads(dumps_json(d))["parameters"]["k"] == 3
    assert not math.isnan(d["duration_seconds"])
