import json
import re
import subprocess
import sys

import pytest

from superdom.cli import main
from superdom.families import certify
from superdom.graph import canonical_form, emit_edge_list, parse_edge_list, path_graph


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def p6_file(tmp_path):
    f = tmp_path / "p6.txt"
    f.write_text(emit_edge_list(path_graph(6)))
    return f


def test_compute_p6(capsys, p6_file):
    code, out, _ = run(capsys, "compute", str(p6_file))
    assert code == 0
    assert "gamma=2 " in out and "gamma_t=4 " in out and "gamma_sp=3 " in out


def test_compute_inline_shapes(capsys):
    assert "gamma_sp=1 " in run(capsys, "compute", "--path", "2", "--params", "gamma_sp")[1]
    assert "gamma_sp=3 " in run(capsys, "compute", "--star", "3", "--params", "gamma_sp")[1]


def test_text_and_json_same_numbers(capsys, p6_file):
    _, text, _ = run(capsys, "compute", str(p6_file))
    _, js, _ = run(capsys, "compute", str(p6_file), "--format", "json")
    d = json.loads(js)
    for row in d["params"]:
        assert f"{row['param']}={row['value']} witness={{{', '.join(map(str, row['witness']))}}}" in text


def test_csv(capsys, p6_file):
    _, out, _ = run(capsys, "compute", str(p6_file), "--format", "csv")
    lines = out.strip().splitlines()
    assert lines[0] == "param,value,witness" and len(lines) == 4


def test_parse_error_reports_line(capsys, tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text("3 2\n0 1\n1 q\n")
    code, _, err = run(capsys, "compute", str(f))
    assert code == 2 and "line 3" in err and "bad.txt" in err


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "compute", str(tmp_path / "nope.txt"))
    assert code == 2 and "cannot read" in err


def test_usage_errors(capsys):
    assert run(capsys, "compute")[0] == 2
    assert run(capsys, "compute", "--path", "3", "--star", "2")[0] == 2
    assert run(capsys, "compute", "--path", "3", "--params", "chi")[0] == 2
    assert run(capsys)[0] == 2


@pytest.mark.parametrize(
    "shape, sd, cls",
    [(("--path", "3"), 2, "Class2"), (("--path", "2"), 1, "Class1"), (("--path", "6"), 1, "Class1")],
)
def test_classify(capsys, shape, sd, cls):
    code, out, _ = run(capsys, "classify", *shape)
    assert code == 0
    assert f"sd={sd} " in out and f"class={cls}" in out
    assert ("in_U=yes" in out) == (sd == 2)


def test_classify_star_reports_exact_value(capsys):
    code, out, _ = run(capsys, "classify", "--star", "3")
    assert code == 0
    assert "sd=3 " in out and "class=unclassified" in out and "in_U_closure=yes" in out


def test_classify_non_tree(capsys, tmp_path):
    f = tmp_path / "c3.txt"
    f.write_text("3 3\n0 1\n1 2\n0 2\n")
    assert run(capsys, "classify", str(f))[0] == 2


def test_classify_json_matches_text(capsys):
    _, text, _ = run(capsys, "classify", "--path", "5")
    d = json.loads(run(capsys, "classify", "--path", "5", "--format", "json")[1])
    assert f"sd={d['sd']} " in text and f"gamma_sp={d['gamma_sp']}" in text
    assert f"new_gamma_sp={d['new_gamma_sp']}" in text


def test_family_recognize(capsys):
    code, out, _ = run(capsys, "family", "recognize", "corona", "--path", "4")
    assert code == 0 and "Corona: yes" in out and "H: n=2 edges=[0-1]" in out
    code, out, _ = run(capsys, "family", "recognize", "R", "--star", "3")
    assert code == 0 and "R: no" in out


def test_family_enumerate(capsys, tmp_path):
    code, out, _ = run(capsys, "family", "enumerate", "T_family", "12")
    assert code == 0 and out.startswith("T_family n<=12: 2 trees")
    d = tmp_path / "out"
    run(capsys, "family", "enumerate", "R", "8", "--out", str(d))
    files = sorted(d.iterdir())
    assert len(files) == len(re.findall(r"^n=", run(capsys, "family", "enumerate", "R", "8")[1], re.M))
    for f in files:
        assert canonical_form(parse_edge_list(f.read_text())).hex() + ".txt" == f.name


def test_family_build(capsys, tmp_path):
    cert = certify("R", path_graph(6))
    f = tmp_path / "cert.json"
    f.write_text(cert.to_json())
    code, out, _ = run(capsys, "family", "build", str(f))
    assert code == 0
    assert canonical_form(parse_edge_list(out)) == canonical_form(path_graph(6))


def test_family_build_bad_step(capsys, tmp_path):
    f = tmp_path / "cert.json"
    f.write_text(json.dumps({"family": "R", "base": {"kind": "P2"}, "steps": [{"attach": 1}, {"attach": 7}]}))
    code, _, err = run(capsys, "family", "build", str(f))
    assert code == 2 and "step 2" in err


def test_subdivide(capsys):
    code, out, _ = run(capsys, "subdivide", "--path", "2", "--edges", "0-1")
    assert code == 0 and "gamma_sp_before=1 gamma_sp_after=2 increased=yes" in out
    assert run(capsys, "subdivide", "--path", "3", "--edges", "0-2")[0] == 2


def test_transform(capsys):
    code, out, _ = run(capsys, "transform", "--path", "5", "--leaf", "0", "--set", "0,3,4")
    assert code == 0 and "output_set={1, 2, 4} size=3" in out
    assert run(capsys, "transform", "--path", "5", "--leaf", "2")[0] == 2


def test_verify_exit_codes(capsys):
    assert run(capsys, "verify", "thm2.5", "--nmax", "8")[0] == 0
    assert run(capsys, "verify", "bogus-id")[0] == 2
    assert run(capsys, "verify")[0] == 2
    # the stars K_{1,k}, k >= 3, break the two-edge bound
    assert run(capsys, "verify", "thm3.1", "--nmax", "5")[0] == 1


def test_verify_json_schema(capsys):
    code, out, _ = run(capsys, "verify", "thm3.1", "--nmax", "8", "--format", "json")
    reps = json.loads(out)
    assert code == 1 and len(reps) == 1
    assert set(reps[0]) == {
        "theorem_id", "n_min", "n_max", "instances_checked", "skipped_precondition",
        "violations", "elapsed_ms", "verdict",
    }
    assert all(set(v) == {"tree", "detail"} for v in reps[0]["violations"])


def test_verify_text_and_json_agree(capsys):
    args = ["verify", "--theorems", "bounds,obs2.3", "--nmax", "9", "--no-timing"]
    _, text, _ = run(capsys, *args)
    reps = json.loads(run(capsys, *args, "--format", "json")[1])
    for d in reps:
        assert (
            f"{d['theorem_id']}: {d['verdict'].upper()} n={d['n_min']}..{d['n_max']} "
            f"checked={d['instances_checked']} skipped={d['skipped_precondition']} "
            f"violations={len(d['violations'])} elapsed_ms={d['elapsed_ms']}"
        ) in text


def test_outputs_are_deterministic(capsys):
    for argv in (
        ["verify", "--all", "--nmax", "7", "--no-timing", "--format", "json"],
        ["classify", "--path", "7"],
        ["family", "enumerate", "U_family", "8", "--format", "json"],
    ):
        assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_out_file(capsys, tmp_path):
    f = tmp_path / "r.json"
    assert run(capsys, "compute", "--path", "4", "--format", "json", "--out", str(f))[0] == 0
    assert json.loads(f.read_text())["n"] == 4


def test_module_entry_point():
    r = subprocess.run(
        [sys.executable, "-m", "superdom", "compute", "--path", "6", "--params", "gamma_sp"],
        capture_output=True, text=True,
    )
    assert r.returncode == 0 and "gamma_sp=3 " in r.stdout
