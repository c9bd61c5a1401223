from __future__ import annotations

import json
import subprocess
import sys

import pytest

from contactalg.cli import EXIT_BUDGET, EXIT_FAIL, EXIT_INPUT, EXIT_OK, main
from contactalg.contact import overlap_algebra
from contactalg.fixtures import path3, pseudo_l
from contactalg.modelio import dump_model
from contactalg.topology import SpaceMap, chain_space, discrete_space, sierpinski_space


@pytest.fixture
def write(tmp_path):
    def _write(obj, name="m"):
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(obj if isinstance(obj, dict) else dump_model(obj)))
        return str(p)

    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


# -- check -------------------------------------------------------------------


def test_check_contact_algebra(capsys, write):
    code, doc = run_json(capsys, "check", write(overlap_algebra(3), "o3"))
    assert code == EXIT_OK
    assert doc["name"] == "o3" and doc["kind"] == "contact_algebra"
    assert doc["result"]["flags"]["CON"] is False
    assert doc["checks"]["asserted"]["C5<=><<5"] == "pass"


def test_check_space(capsys, write):
    code, doc = run_json(capsys, "check", write(sierpinski_space()))
    assert code == EXIT_OK
    assert doc["result"]["hausdorff"] is False and doc["result"]["rc_atom_count"] == 1


def test_check_asymmetric_relation_skips_lifted_equivalences(capsys, write):
    doc = {"kind": "contact_algebra", "atom_count": 1, "contact": {"pairs": [["1", "1"]]}}
    code, out = run_json(capsys, "check", write(doc))
    assert code == EXIT_OK
    assert out["checks"]["asserted"]["atom_lift"] == "pass"


def test_check_lca(capsys, write):
    code, doc = run_json(capsys, "check", write(pseudo_l()))
    assert code == EXIT_OK
    assert doc["result"]["flags"]["BC3"] is False
    assert doc["result"]["witnesses"]["BC3"] == "01"


# -- dual -------------------------------------------------------------------------


def test_dual_of_space(capsys, write):
    code, doc = run_json(capsys, "dual", write(discrete_space(2)))
    assert code == EXIT_OK
    assert doc["result"]["atom_count"] == 2 and doc["result"]["ideal_is_whole"]
    assert doc["result"]["elements"] == {"00": [], "10": [0], "01": [1], "11": [0, 1]}


def test_dual_of_algebra(capsys, write):
    code, doc = run_json(capsys, "dual", write(overlap_algebra(2)))
    assert code == EXIT_OK
    assert doc["result"]["space"] == {"point_count": 2, "opens": [[], [0], [1], [0, 1]]}
    assert doc["checks"]["asserted"] == {"complement_identity": "pass", "lambda_regular_closed": "pass"}


def test_dual_of_non_normal_algebra_skips(capsys, write):
    code, doc = run_json(capsys, "dual", write(path3()))
    assert code == EXIT_OK
    assert set(doc["checks"]["skipped"]) == {"complement_identity", "lambda_regular_closed"}


def test_dual_of_pseudo_l_reports_sigma_infinity(capsys, write):
    code, doc = run_json(capsys, "dual", write(pseudo_l()))
    assert doc["result"]["sigma_infinity"] == {"members": ["01", "11"], "is_cluster": True}
    assert doc["result"]["report"]["flags"]["exploratory"] is True


def test_dual_of_non_skeletal_map_is_skipped(capsys, write):
    f = SpaceMap(discrete_space(2), sierpinski_space(), (0, 1))
    code, doc = run_json(capsys, "dual", write(f))
    assert code == EXIT_OK and doc["result"] is None
    assert doc["checks"]["skipped"]["psi_t"].startswith("skipped: hypothesis unmet: skeletal")


def test_dual_of_map(capsys, write):
    f = SpaceMap(discrete_space(2), discrete_space(1), (0, 0))
    code, doc = run_json(capsys, "dual", write(f))
    assert doc["result"]["table"] == {"0": "00", "1": "11"}


def test_dual_of_hom(capsys, write):
    doc = {"kind": "hom", "source": dump_model(overlap_algebra(2)), "target": dump_model(overlap_algebra(3)), "atom_map": [0, 1, 1]}
    code, out = run_json(capsys, "dual", write(doc))
    assert code == EXIT_OK and out["result"]["func"] == [0, 1, 1]


# -- clusters ----------------------------------------------------------------------


def test_clusters(capsys, write):
    code, doc = run_json(capsys, "clusters", write(overlap_algebra(2)))
    assert code == EXIT_OK
    assert doc["result"]["clusters"] == [["10", "11"], ["01", "11"]]
    assert doc["checks"]["asserted"]["routes_agree"] == "pass"


def test_clusters_local(capsys, write):
    code, doc = run_json(capsys, "clusters", write(pseudo_l()))
    assert doc["result"]["bounded_clusters"] == [["10", "11"]]
    assert doc["result"]["sigma_infinity"]["members"] == ["01", "11"]


def test_clusters_golden_mismatch_fails(capsys, write, tmp_path):
    model = write(overlap_algebra(2), "o2")
    gdir = tmp_path / "g"
    code, _ = run_json(capsys, "clusters", model, "--golden-dir", str(gdir))
    assert code == EXIT_FAIL
    code, _ = run_json(capsys, "clusters", model, "--golden-dir", str(gdir), "--update-golden")
    assert code == EXIT_OK
    code, _ = run_json(capsys, "clusters", model, "--golden-dir", str(gdir))
    assert code == EXIT_OK
    (gdir / "o2.clusters.json").write_text("[]")
    code, doc = run_json(capsys, "clusters", model, "--golden-dir", str(gdir))
    assert code == EXIT_FAIL and doc["checks"]["asserted"]["golden"] == "fail"


def test_clusters_budget_exit_code(capsys, write):
    code, _, err = run(capsys, "clusters", write(path3()), "--budget-atoms", "2")
    assert code == EXIT_BUDGET and "budget" in err


def test_clusters_rejects_space(capsys, write):
    code, _, err = run(capsys, "clusters", write(discrete_space(1)))
    assert code == EXIT_INPUT


# -- classify / roundtrip -------------------------------------------------------------


def test_classify_map(capsys, write):
    f = SpaceMap(discrete_space(2), sierpinski_space(), (0, 1))
    code, doc = run_json(capsys, "classify", write(f))
    assert code == EXIT_OK
    assert doc["result"]["flags"]["skeletal_def"] is False
    assert doc["checks"]["asserted"]["skeletal_criteria_agree"] == "pass"


def test_classify_hom(capsys, write):
    doc = {"kind": "hom", "source": dump_model(overlap_algebra(2)), "target": dump_model(overlap_algebra(2)), "atom_map": [1, 0]}
    code, out = run_json(capsys, "classify", write(doc))
    assert code == EXIT_OK and out["checks"]["asserted"]["L1<=>EL1"] == "pass"


def test_classify_e_morphism(capsys, write):
    o2 = dump_model(overlap_algebra(2))
    doc = {"kind": "e_morphism", "source": o2, "target": o2, "table": {"00": "00", "10": "10", "01": "00", "11": "10"}}
    code, out = run_json(capsys, "classify", write(doc))
    assert code == EXIT_OK and out["result"]["flags"]["EF1"] is False


def test_roundtrip_space(capsys, write):
    code, doc = run_json(capsys, "roundtrip", write(discrete_space(2)))
    assert code == EXIT_OK and doc["checks"]["asserted"] == {"homeomorphism": "pass"}
    code, doc = run_json(capsys, "roundtrip", write(chain_space(3)))
    assert code == EXIT_OK and "homeomorphism" in doc["checks"]["skipped"]


def test_roundtrip_algebra(capsys, write):
    code, doc = run_json(capsys, "roundtrip", write(overlap_algebra(3)))
    assert code == EXIT_OK and doc["checks"]["asserted"] == {"III_ideal": "pass", "ca_isomorphism": "pass"}
    code, doc = run_json(capsys, "roundtrip", write(pseudo_l()))
    assert code == EXIT_OK and doc["checks"]["asserted"] == {}


# -- errors and formats --------------------------------------------------------------


def test_malformed_model_exit_code(capsys, write):
    code, _, err = run(capsys, "check", write({"kind": "space", "point_count": 2, "opens": [[0]]}))
    assert code == EXIT_INPUT and "$.opens" in err


def test_missing_file_and_unknown_command(capsys, tmp_path):
    assert run(capsys, "check", str(tmp_path / "nope.json"))[0] == EXIT_INPUT
    assert run(capsys, "frobnicate")[0] == EXIT_INPUT
    assert run(capsys)[0] == EXIT_INPUT


def test_text_format(capsys, write):
    code, out, _ = run(capsys, "check", write(overlap_algebra(2), "o2"), "--format", "text")
    assert code == EXIT_OK
    assert out.startswith("command: check\nkind: contact_algebra\nname: o2\n")
    assert "PASS C5<=><<5" in out


def test_json_output_is_deterministic(capsys, write):
    model = write(path3())
    first = run(capsys, "dual", model)[1]
    second = run(capsys, "dual", model)[1]
    assert first == second


def test_sweep_rejects_bad_criterion(capsys):
    assert run(capsys, "sweep", "builtin", "--only", "12")[0] == EXIT_INPUT


def test_sweep_single_criterion(capsys):
    code, doc = run_json(capsys, "sweep", "builtin", "--only", "1")
    assert code == EXIT_OK and doc["checks"]["asserted"] == {"criterion_1": "pass"}


def test_emit_then_sweep(capsys, tmp_path):
    code, doc = run_json(capsys, "fixtures", "emit", str(tmp_path / "corpus"))
    assert code == EXIT_OK and doc["result"]["fixtures"] == 133
    code, doc = run_json(capsys, "sweep", str(tmp_path / "corpus"), "--only", "1,2,7")
    assert code == EXIT_OK


def test_console_entry_point(tmp_path):
    p = tmp_path / "o1.json"
    p.write_text(json.dumps(dump_model(overlap_algebra(1))))
    proc = subprocess.run([sys.executable, "-m", "contactalg.cli", "check", str(p)], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["kind"] == "contact_algebra"
