import json
import subprocess
import sys

from conftest import FIXTURES

from rbgroups.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_enumerate_counts(capsys):
    code, out, _ = run_cli(capsys, "enumerate", "--group", "S3")
    assert code == 0
    assert json.loads(out)["count"] == 8
    code, out, _ = run_cli(capsys, "enumerate", "--group", "Z1")
    assert json.loads(out)["count"] == 1


def test_enumerate_byte_identical_across_workers(capsys):
    outs = []
    for w in ("1", "2", "4"):
        code, out, _ = run_cli(
            capsys, "enumerate", "--group", "S3", "--stream", "--workers", w
        )
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1] == outs[2]


def test_stream_roundtrips_schema(capsys):
    code, out, _ = run_cli(capsys, "enumerate", "--group", "Z4", "--stream")
    lines = out.strip().splitlines()
    *ops, summary = lines
    assert json.loads(summary)["count"] == len(ops) == 4
    from rbgroups.operators import operator_from_dict

    for line in ops:
        data = json.loads(line)
        op = operator_from_dict(data)
        assert len(op.images) == 4


def test_verify_exit_codes(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "--group", "S3", "--operator", str(FIXTURES / "s3" / "R7.json")
    )
    assert code == 0 and json.loads(out)["is_rb_operator"] is True
    code, out, _ = run_cli(capsys, "verify", "--group", "S3", "--operator", "id")
    assert code == 1
    data = json.loads(out)
    assert data["is_rb_operator"] is False and data["witness"] is not None


def test_brace_output(capsys):
    code, out, _ = run_cli(
        capsys, "brace", "--group", "S3", "--operator", str(FIXTURES / "s3" / "R4.json")
    )
    assert code == 0
    data = json.loads(out)
    assert data["is_skew_brace"] is True and data["order"] == 6
    code, _, _ = run_cli(capsys, "brace", "--group", "S3", "--operator", "id")
    assert code == 1


def test_cohomology_trivial_h(capsys):
    code, out, _ = run_cli(
        capsys, "cohomology", "--H", "Z1", "--I", "Z2", "--RH", "zero", "--RI", "id"
    )
    assert code == 0
    data = json.loads(out)
    assert data["order_H2"] == 1
    assert data["representatives"] == [{"g": {"arity": 1, "values": {}},
                                       "tau": {"arity": 2, "values": {}}}]


def test_classify_match(capsys):
    code, out, _ = run_cli(
        capsys,
        "classify",
        "--H", "Z2", "--I", "Z2", "--action", "trivial", "--RH", "zero", "--RI", "id",
    )
    assert code == 0
    data = json.loads(out)
    assert data["match"] is True and data["num_classes"] == data["h2_order"]


def test_split_command(tmp_path, capsys):
    action = tmp_path / "inv.json"
    action.write_text(json.dumps({"maps": [[0, 1, 2], [0, 2, 1]]}))
    gfile = tmp_path / "g.json"
    gfile.write_text(json.dumps({"images": [0, 1]}))
    code, out, _ = run_cli(
        capsys,
        "split",
        "--H", "Z2", "--I", "Z3",
        "--action", str(action), "--RH", "id", "--RI", "zero", "--g", str(gfile),
    )
    assert code == 0
    data = json.loads(out)
    assert data["verified"] is True and data["order"] == 6


def test_split_failure_exit_one(tmp_path, capsys):
    gfile = tmp_path / "g.json"
    gfile.write_text(json.dumps({"images": [0, 1, 0, 0]}))
    code, out, _ = run_cli(
        capsys,
        "split",
        "--H", "Z4", "--I", "Z4",
        "--action", "trivial", "--RH", "id", "--RI", "id", "--g", str(gfile),
    )
    if code != 0:
        assert code == 1 and "error" in json.loads(out)


def test_wells_command(capsys):
    code, out, _ = run_cli(
        capsys,
        "wells",
        "--H", "Z2", "--I", "Z4", "--action", "trivial", "--RH", "zero", "--RI", "zero",
    )
    assert code == 0
    data = json.loads(out)
    for key in ("z1_order", "autI_order", "autHI_order", "cmu_order", "h2_order"):
        assert key in data
    assert data["exact_at_autI"] and data["exact_at_cmu"] and data["omega_is_derivation"]


def test_budget_exit_code(capsys):
    code, _, err = run_cli(
        capsys,
        "cohomology",
        "--H", "Z2", "--I", "Z4", "--RH", "zero", "--RI", "zero",
        "--budget", "2",
    )
    assert code == 3 and "budget" in err


def test_usage_errors(capsys):
    code, _, err = run_cli(capsys, "enumerate", "--group", "NOPE")
    assert code == 2 and "error" in err
    code, _, _ = run_cli(capsys, "verify", "--group", "Z4", "--operator",
                         str(FIXTURES / "s3" / "R7.json"))
    assert code == 2


def test_console_script_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "rbgroups.cli", "enumerate", "--group", "Q8"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["count"] == 8


def test_text_format(capsys):
    code, out, _ = run_cli(capsys, "enumerate", "--group", "S3", "--format", "text")
    assert code == 0 and "count: 8" in out


def test_operator_file_with_inline_group(tmp_path, capsys):
    import rbgroups

    z6 = rbgroups.make_group("Z6")
    op = rbgroups.inversion_operator(z6)
    path = tmp_path / "op.json"
    path.write_text(json.dumps(rbgroups.operator_to_dict(op)))
    code, out, _ = run_cli(capsys, "verify", "--group", str(_write_group(tmp_path, z6)),
                           "--operator", str(path))
    assert code == 0 and json.loads(out)["is_rb_operator"] is True


def _write_group(tmp_path, g):
    import rbgroups

    path = tmp_path / "group.json"
    rbgroups.save_group(g, path)
    return path


def test_enumerate_stream_golden_s3(capsys):
    # golden output: canonical ordering end-to-end (labels, sort, JSON shape)
    code, out, _ = run_cli(capsys, "enumerate", "--group", "S3", "--stream")
    assert code == 0
    assert out.splitlines() == [
        '{"group": "S3", "images": [0, 0, 0, 0, 0, 0]}',
        '{"group": "S3", "images": [0, 0, 5, 4, 5, 4]}',
        '{"group": "S3", "images": [0, 1, 1, 1, 0, 0]}',
        '{"group": "S3", "images": [0, 1, 2, 3, 5, 4]}',
        '{"group": "S3", "images": [0, 2, 2, 2, 0, 0]}',
        '{"group": "S3", "images": [0, 3, 3, 3, 0, 0]}',
        '{"group": "S3", "images": [0, 4, 0, 5, 5, 4]}',
        '{"group": "S3", "images": [0, 5, 4, 0, 5, 4]}',
        '{"command": "enumerate", "count": 8, "group": "S3"}',
    ]
