import io
import json
import subprocess
import sys

import pytest

from artifact.cli import run
from artifact.documents import document_of, write
from helpers import s3_over_trivial


def call(*argv):
    out = io.StringIO()
    code = run(list(map(str, argv)), stdout=out)
    return code, json.loads(out.getvalue()), out.getvalue()


def test_validate_catalog_exits_zero(emitted):
    code, report, _ = call("validate", emitted / "catalog.json")
    assert code == 0 and report["ok"]
    assert all(r["ok"] for r in report["results"].values())


def test_failed_check_exits_one(tmp_path):
    write(document_of([("bad", s3_over_trivial())]), tmp_path / "bad.json")
    code, report, _ = call("validate", tmp_path / "bad.json")
    assert code == 1 and not report["ok"]
    checks = report["results"]["bad"]["checks"]
    assert checks["peiffer"]["witnesses"]


def test_inequivalent_groupoids_exit_one(emitted):
    code, report, _ = call("morita", emitted / "surj_3to2.json", emitted / "surj_5to3.json", "--via", "bitorsor")
    assert code == 1 and report["verdict"]["equivalent"] is False


def test_xi_on_non_base_trivial_input_exits_two(emitted):
    code, report, _ = call("functor", "--which", "xi", emitted / "trivial_gerbe.json")
    assert code == 2 and report["error"]["type"] == "NotBaseTrivial"


@pytest.mark.parametrize("argv", [["frobnicate"], ["validate", "/nonexistent.json"], ["aut"],
                                  ["functor", "--which", "chi", "x.json"]])
def test_input_errors_exit_two(argv):
    code, report, _ = call(*argv)
    assert code == 2 and "error" in report


def test_parse_error_exits_two(tmp_path):
    (tmp_path / "broken.json").write_text('{"kind": "document", "stanzas": [')
    code, report, _ = call("validate", tmp_path / "broken.json")
    assert code == 2 and report["error"]["type"] == "ParseError"


def test_aut_four_way_match(emitted):
    code, report, _ = call("aut", "--input", emitted / "pb_Z2_M2.json", "-k", "1", "--verify-square",
                           "--match-gerbe")
    assert code == 0
    res = report["results"]["pb_Z2_M2"]
    assert res["notes"]["ways"] == 4 and res["notes"]["order"] == 256


def test_aut_inverse_gamma_flag(emitted):
    code, report, _ = call("aut", emitted / "pb_Z3_M1.json", "-k", "1", "--verify-square", "--inverse-gamma")
    assert code == 0
    assert report["results"]["pb_Z3_M1"]["notes"]["square.gamma"] == "C_{g0^-1}"


@pytest.mark.parametrize("which,name", [("phi", "pb_Z2_M2.json"), ("xi", "pb_Z3_M1.json"),
                                        ("psi", "trivial_gerbe.json")])
def test_functor_outputs_revalidate(emitted, tmp_path, which, name):
    out = tmp_path / f"{which}.json"
    code, _, _ = call("functor", "--which", which, emitted / name, "--out", out)
    assert code == 0
    code, report, _ = call("validate", out)
    assert code == 0, [k for k, v in report["results"].items() if not v["ok"]]


@pytest.mark.parametrize("flags", [[], ["--partial"]])
def test_quotient(emitted, tmp_path, flags):
    code, report, _ = call("quotient", emitted / "pb_Z2_M2.json", *flags, "--out", tmp_path / "q.json")
    assert code == 0
    assert call("validate", tmp_path / "q.json")[0] == 0


def test_nerve_check(emitted):
    code, report, _ = call("nerve", "--input", emitted / "A3<S3.json", "-k", "3", "--check")
    assert code == 0
    assert report["results"]["A3<S3"]["notes"]["sizes"] == [6, 18, 54, 162]


def test_build_materializes(emitted, tmp_path):
    code, report, _ = call("build", emitted / "catalog.json", "--out", tmp_path / "built.json")
    assert code == 0 and report["built"]
    assert call("validate", tmp_path / "built.json")[0] == 0


def test_catalog_emit_and_check(tmp_path):
    code, report, _ = call("catalog", "--emit", tmp_path, "--check")
    assert code == 0
    assert (tmp_path / "catalog.json").exists() and "catalog.json" in report["written"]


def test_reports_are_deterministic(emitted):
    argv = ("aut", emitted / "pb_Z2_M1.json", "-k", "2", "--verify-square")
    assert call(*argv)[2] == call(*argv)[2]


def test_timing_is_opt_in(emitted):
    assert "timing_seconds" not in call("validate", emitted / "Z2.json")[1]
    assert "timing_seconds" in call("--timing", "validate", emitted / "Z2.json")[1]


def test_console_entry_point(emitted):
    proc = subprocess.run([sys.executable, "-m", "artifact.cli", "validate", str(emitted / "Z3.json")],
                          capture_output=True, text=True, timeout=60)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["ok"] is True
