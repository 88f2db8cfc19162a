"""Round-trip and exit-code tests for the file formats and the CLI."""

import json
import random

import pytest

from isocat.catalog import CATALOG_IDS, catalog_scenario
from isocat.cli import main
from isocat.extcat import simple_x_object, simple_y_object, universal_extension_of
from isocat.fileio import (
    FormatError,
    load_scenario,
    object_from_json,
    object_to_json,
    scenario_from_json,
    scenario_to_json,
)
from isocat.samples import random_object


# ----------------------------------------------------------------------
# round trips
# ----------------------------------------------------------------------

def test_scenario_roundtrip_catalog():
    for name in CATALOG_IDS:
        s = catalog_scenario(name)
        doc = scenario_to_json(s)
        again = scenario_from_json(json.loads(json.dumps(doc)))
        assert scenario_to_json(again) == doc
        assert again.x_ids == s.x_ids and again.y_ids == s.y_ids
        for key, bm in s.bimodules.items():
            bm2 = again.bimodules[key]
            assert bm2.dim == bm.dim
            assert bm2.left_action == bm.left_action
            assert bm2.right_action == bm.right_action


def test_object_roundtrip_bit_exact():
    rng = random.Random(5)
    for name in ("d4_elliptic", "c2", "g2_threefold", "b2_dual"):
        s = catalog_scenario(name)
        z = random_object(s, rng)
        doc = object_to_json(z)
        again = object_from_json(json.loads(json.dumps(doc)), s)
        assert again.data_key() == z.data_key()
        assert object_to_json(again) == doc


def test_rationals_serialized_as_strings():
    s = catalog_scenario("c2")
    doc = scenario_to_json(s)
    blob = json.dumps(doc)
    assert "." not in blob.replace("isocat/scenario-v1", "")  # no floats anywhere


def test_object_rejects_wrong_scenario():
    s = catalog_scenario("c2")
    z = simple_x_object(s, "u")
    doc = object_to_json(z)
    with pytest.raises(FormatError):
        object_from_json(doc, catalog_scenario("a2"))


def test_load_scenario_catalog_and_unknown():
    assert load_scenario("catalog:a2").name == "a2"
    with pytest.raises(FormatError):
        load_scenario("catalog:nope")


# ----------------------------------------------------------------------
# CLI exit codes and reports
# ----------------------------------------------------------------------

def test_cli_classify_exit_codes(capsys):
    assert main(["classify", "--scenario", "catalog:d4_elliptic"]) == 0
    assert main(["classify", "--scenario", "catalog:two_surfaces"]) == 3
    out = capsys.readouterr().out
    assert "D4" in out and "infinite" in out


def test_cli_classify_json(capsys):
    assert main(["classify", "--scenario", "catalog:g2_threefold", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["schema"] == "isocat/report-v1"
    assert doc["diagram"] == "G2" and doc["case"] == "G2"


def test_cli_malformed_file(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{ not json")
    assert main(["classify", "--scenario", str(bad)]) == 2


def test_cli_tampered_scenario_fails_validation(tmp_path):
    doc = scenario_to_json(catalog_scenario("c2"))
    doc["y_vertices"][0]["algebra"]["minpoly"] = ["-1", "0", "1"]  # t^2 - 1 splits
    path = tmp_path / "tampered.json"
    path.write_text(json.dumps(doc))
    assert main(["classify", "--scenario", str(path)]) == 2


def test_cli_tampered_bimodule_actions(tmp_path):
    doc = scenario_to_json(catalog_scenario("c2"))
    entry = doc["bimodules"][0]
    entry["left_action"] = [[["2", "0"], ["0", "2"]]]  # not unital
    entry["right_action"] = [[["1", "0"], ["0", "1"]], [["0", "2"], ["1", "0"]]]
    path = tmp_path / "tampered.json"
    path.write_text(json.dumps(doc))
    assert main(["classify", "--scenario", str(path)]) == 2


def _write_object(tmp_path, name, z):
    path = tmp_path / f"{name}.json"
    path.write_text(json.dumps(object_to_json(z)))
    return str(path)


def test_cli_ext_simple_on_simple(tmp_path, capsys):
    s = catalog_scenario("c2")
    a = _write_object(tmp_path, "ysimple", simple_y_object(s, "a1"))
    b = _write_object(tmp_path, "xsimple", simple_x_object(s, "u"))
    assert main(["ext", "--scenario", "catalog:c2", "--object", a, "--object", b,
                 "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["hom"] == 0
    assert doc["ext1"] == 2  # the bimodule's Q-dimension
    assert doc["euler_identity_holds"]


def test_cli_ext_self_hom_positive(tmp_path, capsys):
    s = catalog_scenario("a2")
    a = _write_object(tmp_path, "self", simple_y_object(s, "a1"))
    assert main(["ext", "--scenario", "catalog:a2", "--object", a, "--object", a,
                 "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["hom"] >= 1


def test_cli_ext_projective_source(tmp_path, capsys):
    s = catalog_scenario("a2")
    ey = universal_extension_of(simple_y_object(s, "a1"))
    a = _write_object(tmp_path, "ey", ey)
    rng = random.Random(8)
    b = _write_object(tmp_path, "probe", random_object(s, rng))
    assert main(["ext", "--scenario", "catalog:a2", "--object", a, "--object", b,
                 "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["ext1"] == 0


def test_cli_ext_scenario_mismatch(tmp_path):
    s = catalog_scenario("c2")
    a = _write_object(tmp_path, "obj", simple_x_object(s, "u"))
    assert main(["ext", "--scenario", "catalog:a2", "--object", a, "--object", a]) == 2


def test_cli_roots_infinite(capsys):
    assert main(["roots", "--scenario", "catalog:two_surfaces"]) == 3


def test_cli_roots_counts(capsys):
    assert main(["roots", "--scenario", "catalog:g2_threefold", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["count"] == 6


def test_cli_indec_requires_seed(capsys):
    assert main(["indec", "--scenario", "catalog:a2"]) == 2
    assert main(["indec", "--scenario", "catalog:a2", "--seed", "3"]) == 0


def test_cli_indec_infinite_type():
    assert main(["indec", "--scenario", "catalog:two_surfaces", "--seed", "1"]) == 3


def test_cli_resolve_and_decompose(tmp_path, capsys):
    s = catalog_scenario("d4_elliptic")
    from isocat.reptype import highest_root_d4
    z = highest_root_d4(s)
    path = _write_object(tmp_path, "hr", z)
    assert main(["resolve", "--scenario", "catalog:d4_elliptic", "--object", path,
                 "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["p1_projective"] and doc["p0_projective"] and doc["exact"]
    assert main(["decompose", "--scenario", "catalog:d4_elliptic", "--object", path,
                 "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["flag"] == "certified"
    assert doc["summands"] == [[2, 1, 1, 1]]


def test_cli_center(capsys):
    assert main(["center", "--scenario", "catalog:product_no_coupling",
                 "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["dim"] == 4


def test_cli_witt_partition_and_operator(tmp_path, capsys):
    assert main(["witt", "--partition", "3,2,1", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["partition"] == [3, 2, 1] and doc["roundtrip_ok"]
    op = tmp_path / "op.json"
    op.write_text(json.dumps({"schema": "isocat/matrix-v1",
                              "matrix": doc["operator"]}))
    assert main(["witt", "--op", str(op), "--format", "json"]) == 0
    doc2 = json.loads(capsys.readouterr().out)
    assert doc2["partition"] == [3, 2, 1]


def test_cli_witt_rejects_non_nilpotent(tmp_path):
    op = tmp_path / "op.json"
    op.write_text(json.dumps({"schema": "isocat/matrix-v1",
                              "matrix": [["1", "0"], ["0", "1"]]}))
    assert main(["witt", "--op", str(op)]) == 2


def test_cli_check_passes(capsys):
    assert main(["check", "--scenario", "catalog:c3_surface", "--seed", "1",
                 "--samples", "8", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["ok"] and all(s["passed"] > 0 for s in doc["suites"])


def test_cli_check_requires_seed():
    assert main(["check", "--scenario", "catalog:a2"]) == 2
