"""Golden tests for the command line.

Each case runs in a fresh interpreter, twice, and the second run uses
another thread count; both outputs must match the stored golden file byte
for byte.  Set CUBELAB_REGEN_GOLDEN=1 to rewrite the golden files.
"""

import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

HERE = Path(__file__).parent
DATA = HERE / "data"
GOLDEN = HERE / "golden"
REGEN = os.environ.get("CUBELAB_REGEN_GOLDEN") == "1"


def run(args, threads=1):
    cmd = [sys.executable, "-m", "cubelab"] + args
    if args[0] in ("analyze", "raag", "verify-median", "cubulate"):
        cmd += ["--threads", str(threads)]
    p = subprocess.run(cmd, cwd=DATA, capture_output=True, text=True, timeout=600)
    return p.returncode, p.stdout, p.stderr


CASES = {
    "cubulate_tripod": (["cubulate", "--wallspace", "tripod.json"], 0),
    "cubulate_tripod_dot": (["cubulate", "--wallspace", "tripod.json", "--format", "dot"], 0),
    "verify_square": (["verify-median", "--graph", "square.json"], 0),
    "verify_triangle": (["verify-median", "--graph", "triangle.json"], 0),
    "z2_rank_one": (["analyze", "--complex", "z2.json", "--isometry", "t10.json", "rank-one",
                     "--L-max", "3", "--depth", "8"], 2),
    "p4_cross_validate": (["raag", "cross-validate", "--graph", "p4.json", "--word", "ad",
                           "--depth", "5"], 0),
    "p3_centralizer": (["raag", "centralizer", "--graph", "p3.json", "--word", "bac"], 0),
    "p3_normal_form": (["raag", "normal-form", "--graph", "p3.json", "--word", "b a b^-1 c"], 0),
    "lt3_classify": (["analyze", "--complex", "lt3.json", "--isometry", "t_rho.json", "classify",
                      "--depth", "3"], 0),
    "lt3_smin": (["analyze", "--complex", "lt3.json", "--isometry", "t_rho.json", "smin",
                  "--depth", "3", "--n-max", "3"], 0),
    "lt3_smin_dot": (["analyze", "--complex", "lt3.json", "--isometry", "t_rho.json", "smin",
                      "--depth", "2", "--n-max", "3", "--format", "dot"], 0),
    "lt3_decompose": (["analyze", "--complex", "lt3.json", "--isometry", "t_id.json", "decompose",
                       "--depth", "3", "--n-max", "2"], 0),
    "lt3_trichotomy": (["analyze", "--complex", "lt3.json", "--isometry", "t_id.json", "trichotomy",
                        "--context", "ctx_s.json", "--depth", "3"], 0),
    "lt3_fix_growth": (["analyze", "--complex", "lt3.json", "--isometry", "t_rho.json",
                        "fix-growth", "--depth", "3", "--n-max", "6"], 0),
    "f2_rank_one": (["analyze", "--complex", "f2.json", "--isometry", "f2_ab.json", "rank-one",
                     "--L-max", "0", "--depth", "4"], 0),
    "f2_min": (["analyze", "--complex", "f2.json", "--isometry", "f2_ab.json", "min",
                "--depth", "3", "--n", "2"], 0),
}


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name):
    args, code = CASES[name]
    rc1, out1, err1 = run(args, threads=1)
    assert rc1 == code, err1
    rc2, out2, _ = run(args, threads=4)
    assert (rc2, out2) == (rc1, out1)
    path = GOLDEN / (name + (".dot" if "--format" in args and "dot" in args else ".json"))
    if REGEN or not path.exists():
        GOLDEN.mkdir(exist_ok=True)
        path.write_text(out1)
    assert out1 == path.read_text()


def test_spec_examples_content():
    _, out, _ = run(CASES["z2_rank_one"][0])
    res = json.loads(out)["result"]
    assert res["verdict"] == "inconclusive" and res["evidence"] == "half-flat witness 10x5"
    _, out, _ = run(CASES["cubulate_tripod"][0])
    rep = json.loads(out)
    assert len(rep["vertices"]) == 4 and len(rep["edges"]) == 3
    centre = set.intersection(*(set(e) for e in rep["edges"]))
    assert len(centre) == 1  # a star


def test_p4_cross_validate_verdict():
    path = GOLDEN / "p4_cross_validate.json"
    if not path.exists():
        pytest.skip("golden file not generated yet")
    assert json.loads(path.read_text())["verdict"] == "agree: rank-one"


def test_emitted_certificate_rechecks(tmp_path):
    cert = tmp_path / "cert.json"
    rc, _, err = run(["analyze", "--complex", "f2.json", "--isometry", "f2_ab.json", "rank-one",
                      "--L-max", "0", "--depth", "4", "--emit-certificate", str(cert)])
    assert rc == 0, err
    rc, out, err = run(["check-certificate", "--certificate", str(cert)])
    assert rc == 0, err
    assert json.loads(out)["valid"]
    # a tampered certificate is rejected with exit status 1
    d = json.loads(cert.read_text())
    d["power"] = 1
    d["halfspace_A"], d["halfspace_B"] = d["halfspace_B"], d["halfspace_A"]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(d))
    rc, out, _ = run(["check-certificate", "--certificate", str(bad)])
    assert rc == 1 and not json.loads(out)["valid"]


def test_schema_errors_report_position(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "product",\n "factors": [{"kind": "line"},\n   {"kind": "tre"}]}\n')
    rc, _, err = run(["analyze", "--complex", str(bad), "--isometry", "t10.json", "classify"])
    assert rc == 1
    assert f"{bad}:3:13: /factors/1/kind" in err
    broken = tmp_path / "broken.json"
    broken.write_text('{"points": ["a",\n  ,"b"]}')
    rc, _, err = run(["cubulate", "--wallspace", str(broken)])
    assert rc == 1 and f"{broken}:2:3:" in err
    rc, _, err = run(["raag", "normal-form", "--graph", "p3.json", "--word", "az"])
    assert rc == 1 and "schema error" in err


def test_bad_parameters_and_budget():
    rc, _, err = run(["analyze", "--complex", "z2.json", "--isometry", "t10.json", "classify",
                      "--depth", "0"])
    assert rc == 1 and "--depth" in err
    rc, _, err = run(["analyze", "--complex", "f2.json", "--isometry", "f2_ab.json", "min",
                      "--depth", "6", "--vertex-cap", "50"])
    assert rc == 1 and "budget" in err


def test_out_file(tmp_path):
    out = tmp_path / "r.json"
    rc, stdout, _ = run(["verify-median", "--graph", "square.json", "--out", str(out)])
    assert rc == 0 and stdout == ""
    assert json.loads(out.read_text())["median"] is True
