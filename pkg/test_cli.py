"""
Тесты командной строки: один JSON-документ в stdout и коды выхода 0/1/2
"""

import json

import pytest

import main


def run(capsys, *argv):
    code = main.main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_check_smp_holds_for_b12(capsys):
    code, payload = run_json(capsys, "check", "B12", "--prop", "smp")
    assert code == 0
    assert payload["holds"] is True
    assert payload["edges"] == 18
    assert payload["ssp_edge_lower_bound"] == 19
    assert payload["oml"] == [3, 5, 4]


def test_check_ssp_fails_for_b12(capsys):
    code, payload = run_json(capsys, "check", "B12")
    assert code == 1
    assert payload["property"] == "SSP"
    assert payload["holds"] is False


def test_check_with_json_matrix_and_graph(capsys):
    matrix = json.dumps({"n": 4, "rows": [[0, 1, 0, -1], [1, 0, 1, 0], [0, 1, 0, 1], [-1, 0, 1, 0]]})
    code, payload = run_json(capsys, "check", matrix, "--graph", "C4")
    assert code == 0
    assert payload["oml"] == [2, 2]
    assert payload["tolerances"]["strict_pattern"] is True


def test_oml_of_family(capsys):
    code, payload = run_json(capsys, "oml", "M5:a=2")
    assert code == 0
    assert payload["oml"] == [3, 1, 1]


def test_minor_exit_codes(capsys):
    code, payload = run_json(capsys, "minor", "C4", "C5")
    assert code == 0 and payload["is_minor"]
    assert payload["witness"][-1]["op"] == "embed"
    code, payload = run_json(capsys, "minor", "C5", "C4")
    assert code == 1 and not payload["is_minor"]


def test_family_check(capsys):
    code, payload = run_json(capsys, "family-check", "Campstool")
    assert code == 0 and payload["members"] == ["Campstool"]
    code, payload = run_json(capsys, "family-check", "P4")
    assert code == 1 and payload["members"] == []


def test_classify_reports_catalog_lists(capsys):
    code, payload = run_json(capsys, "classify", "K1_4")
    assert code == 0
    assert payload["generalized_star"] and payload["tree"]
    assert [1, 3, 1] in payload["attainable"]["ANY"]
    assert [1, 3, 1] not in payload["attainable"]["SSP"]


@pytest.mark.parametrize("argv,error_type", [
    (["check"], "UsageError"),
    (["frobnicate"], "UsageError"),
    (["check", "M1:t=2"], "FamilyDomainError"),
    (["check", "M4:a"], "MatrixError"),
    (["minor", "C4", "not a graph!"], "GraphError"),
    (["realize", "--graph", "K1_4", "--oml", "1,3,1"], "CatalogError"),
    (["realize", "--graph", "C5", "--oml", "2,2"], "CatalogError"),
    (["verify", "--scope", "order6"], "UsageError"),
])
def test_usage_and_input_errors(capsys, argv, error_type):
    code, payload = run_json(capsys, *argv)
    assert code == 2
    assert payload["type"] == error_type
    assert payload["error"]


def test_realize_on_cycle(capsys):
    code, payload = run_json(capsys, "realize", "--graph", "C5", "--oml", "2,2,1", "--spectrum=-2,1,5")
    assert code == 0
    assert payload["converged"] is True
    assert payload["certificates"]["SSP"]["holds"]
    assert payload["method"].startswith("catalog:")


def test_realize_any_mode(capsys):
    code, payload = run_json(capsys, "realize", "--graph", "K1_4", "--oml", "1,3,1", "--mode", "any",
                             "--spectrum=-1,0.5,3")
    assert code == 0
    assert payload["method"] == "catalog:star_block"


def test_catalog_entry_and_summary(capsys):
    code, payload = run_json(capsys, "catalog", "Butterfly")
    assert code == 0
    assert [1, 3, 1] in payload["attainable"]["ANY"]
    code, payload = run_json(capsys, "catalog")
    assert code == 0
    assert set(payload["orders"]) == {"1", "2", "3", "4", "5"}


def test_verify_order4(capsys):
    code, payload = run_json(capsys, "verify", "--scope", "order4")
    assert code == 0
    assert payload["holds"] and payload["failed"] == 0


def test_text_format(capsys):
    code, out = run(capsys, "check", "B12", "--prop", "smp", "--format", "text")
    assert code == 0
    assert "holds: true" in out
