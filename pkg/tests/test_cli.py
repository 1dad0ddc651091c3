import json

import numpy as np
import pytest

from qmask import GeneralLinearOp, MaskerParams, build_masker
from qmask import documents as docs
from qmask.cli import main
from _helpers import identity_embedding


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_operator(path, op):
    path.write_text(docs.dump(docs.operator_to_doc(op)), encoding="utf-8")
    return str(path)


def test_mask_command_reference_values(capsys):
    code, out, _ = run(capsys, "mask", "--alpha", "0", "--theta", "0", "--x", "1.0471975511965976", "--y", "0.7853981633974483")
    assert code == 0
    doc = json.loads(out)
    assert abs(doc["hbar"] - 0.5) < 1e-12
    rho_a = docs.matrix_from_doc(doc["rho_a"])
    assert abs(rho_a[0, 0] - 0.75) < 1e-12 and abs(rho_a[1, 1] - 0.25) < 1e-12
    # reported rho_A is the partial trace of the reported psi
    psi = np.array([complex(re, im) for re, im in doc["psi"]])
    m = psi.reshape(2, 2)
    assert np.abs(m @ m.conj().T - rho_a).max() < 1e-12


def test_mask_command_pole(capsys):
    code, out, _ = run(capsys, "mask", "--alpha", "0", "--theta", "0", "--x", "0", "--y", "0")
    assert code == 0
    assert json.loads(out)["hbar"] == 1.0


def test_mask_state_file(tmp_path, capsys):
    state = tmp_path / "state.json"
    state.write_text(docs.dump({"x": 0.5, "y": 0.25}), encoding="utf-8")
    code, out, _ = run(capsys, "mask", "--alpha", "0.5", "--theta", "1.5", "--state", str(state))
    assert code == 0
    assert json.loads(out)["state"] == {"x": 0.5, "y": 0.25}


def test_mask_rejects_both_state_forms(tmp_path, capsys):
    state = tmp_path / "state.json"
    state.write_text(docs.dump({"x": 0.5, "y": 0.25}), encoding="utf-8")
    code, _, err = run(capsys, "mask", "--alpha", "0", "--theta", "0", "--state", str(state), "--x", "1", "--y", "1")
    assert code == 1 and "not both" in err


def test_circle_command_csv(tmp_path, capsys):
    csv_path = tmp_path / "circle.csv"
    code, out, _ = run(
        capsys, "circle", "--alpha", "0", "--theta", "0",
        "--x", "1.0471975511965976", "--y", "0.7853981633974483",
        "--samples", "360", "--csv", str(csv_path),
    )
    assert code == 0
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "x,y,X,Y,Z"
    assert len(lines) == 361
    zs = [float(line.split(",")[4]) for line in lines[1:]]
    assert max(abs(z - 0.5) for z in zs) < 1e-12


def test_circle_command_single_sample(tmp_path, capsys):
    csv_path = tmp_path / "one.csv"
    code, out, _ = run(
        capsys, "circle", "--alpha", "0.9", "--theta", "2.0", "--x", "1.1", "--y", "0.3",
        "--samples", "1", "--csv", str(csv_path),
    )
    assert code == 0
    doc = json.loads(out)
    lines = csv_path.read_text().splitlines()
    assert len(lines) == 2
    x, y, bx, by, bz = map(float, lines[1].split(","))
    circle = docs.circle_from_doc(doc["circle"])
    assert circle.plane_residual(np.array([bx, by, bz])) < 1e-10


def test_analyze_masker_circle(tmp_path, capsys):
    op = GeneralLinearOp.from_isometry(build_masker(MaskerParams(0.0, 0.0)))
    op_path = write_operator(tmp_path / "op.json", op)
    code, out, _ = run(capsys, "analyze", "--operator", op_path, "--x", "1.0", "--y", "2.0")
    assert code == 0
    doc = json.loads(out)
    assert doc["maskable_set"]["class"] == "circle"
    assert abs(doc["maskable_set"]["mask_params"]["alpha"]) < 1e-9
    assert len(doc["constraints"]) == 8
    assert doc["product_form"]["is_product_form"] is False


def test_analyze_identity_embedding(tmp_path, capsys):
    op_path = write_operator(tmp_path / "op.json", identity_embedding())
    code, out, _ = run(capsys, "analyze", "--operator", op_path, "--x", "1.0", "--y", "2.0")
    assert code == 0
    doc = json.loads(out)
    assert doc["maskable_set"]["class"] == "single_point"
    assert abs(doc["maskable_set"]["state"]["x"] - 1.0) < 1e-9


def test_analyze_with_oracle_scan(tmp_path, capsys):
    rng = np.random.default_rng(0)
    op = GeneralLinearOp(*(rng.normal(size=8) + 1j * rng.normal(size=8)))
    op_path = write_operator(tmp_path / "op.json", op)
    code, out, _ = run(capsys, "analyze", "--operator", op_path, "--x", "1.2", "--y", "2.5", "--scan", "100")
    assert code == 0
    doc = json.loads(out)
    assert doc["oracle"]["agreement"] == "OK"
    assert doc["oracle"]["flagged"] >= 1


def test_analyze_rejects_zero_operator(tmp_path, capsys):
    doc = {k: {"re": 0.0, "im": 0.0} for k in docs.OPERATOR_KEYS}
    path = tmp_path / "zero.json"
    path.write_text(docs.dump(doc), encoding="utf-8")
    code, _, err = run(capsys, "analyze", "--operator", str(path), "--x", "1", "--y", "1")
    assert code == 1 and "zero operator" in err


def test_scan_command(tmp_path, capsys):
    op = GeneralLinearOp.from_isometry(build_masker(MaskerParams(0.0, 0.0)))
    op_path = write_operator(tmp_path / "op.json", op)
    csv_path = tmp_path / "hits.csv"
    code, out, _ = run(
        capsys, "scan", "--operator", op_path, "--x", "1.0471975511965976", "--y", "0.5",
        "--nx", "100", "--ny", "200", "--csv", str(csv_path),
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["flagged"] > 0
    lines = csv_path.read_text().splitlines()
    assert len(lines) == doc["flagged"] + 1


def test_scan_fractions_mode(tmp_path, capsys):
    op_path = write_operator(tmp_path / "op.json", identity_embedding())
    code, out, _ = run(
        capsys, "scan", "--operator", op_path, "--x", "1.2", "--y", "2.0",
        "--fractions", "50,100,200",
    )
    assert code == 0
    doc = json.loads(out)
    fr = [row["fraction"] for row in doc["fractions"]]
    assert len(fr) == 3 and fr[2] < fr[0]


def test_share_decode_round_trip(tmp_path, capsys):
    out_dir = tmp_path / "shares"
    code, out, _ = run(
        capsys, "share", "--scheme", "fig1_axes", "--x", "1.0472", "--y", "0.7854",
        "--out", str(out_dir),
    )
    assert code == 0
    paths = json.loads(out)["shares"]
    assert len(paths) == 3
    code, out, _ = run(capsys, "decode", *paths)
    assert code == 0
    doc = json.loads(out)
    assert doc["result"] == "unique"
    assert abs(doc["state"]["x"] - 1.0472) < 1e-8
    assert abs(doc["state"]["y"] - 0.7854) < 1e-8


def test_share_decode_vertical_two_candidates(tmp_path, capsys):
    out_dir = tmp_path / "shares"
    code, out, _ = run(
        capsys, "share", "--scheme", "fig2_vertical:8",
        "--x", str(np.pi / 6), "--y", str(np.pi / 4), "--out", str(out_dir),
    )
    paths = json.loads(out)["shares"]
    for subset in ([0, 1], [2, 5], [0, 3, 6], list(range(8))):
        code, out, _ = run(capsys, "decode", *[paths[i] for i in subset])
        assert code == 0
        doc = json.loads(out)
        assert doc["result"] == "two_candidates"
        xs = sorted(s["x"] for s in doc["states"])
        assert abs(xs[0] - np.pi / 6) < 1e-8 and abs(xs[1] - 5 * np.pi / 6) < 1e-8


def test_share_with_scheme_file(tmp_path, capsys):
    scheme_doc = {
        "label": "custom",
        "maskers": [
            {"alpha": 0.0, "theta": 0.0},
            {"alpha": np.pi / 2, "theta": 0.0},
            {"alpha": np.pi / 2, "theta": np.pi / 2},
        ],
    }
    scheme_path = tmp_path / "scheme.json"
    scheme_path.write_text(docs.dump(scheme_doc), encoding="utf-8")
    out_dir = tmp_path / "shares"
    code, out, _ = run(capsys, "share", "--scheme", str(scheme_path), "--x", "0.8", "--y", "2.6", "--out", str(out_dir))
    assert code == 0
    doc = json.loads(out)
    assert doc["scheme"] == "custom"
    code, out, _ = run(capsys, "decode", *doc["shares"])
    assert json.loads(out)["result"] == "unique"


def test_circle_vertical_family_csv(tmp_path, capsys):
    # vertical circles keep the anchor's plane: the X cos(t) + Y sin(t)
    # combination is constant along each sampled circle
    theta = 0.9
    csv_path = tmp_path / "vert.csv"
    code, out, _ = run(
        capsys, "circle", "--alpha", str(np.pi / 2), "--theta", str(theta),
        "--x", "0.6", "--y", "1.1", "--samples", "90", "--csv", str(csv_path),
    )
    assert code == 0
    rows = [list(map(float, line.split(","))) for line in csv_path.read_text().splitlines()[1:]]
    level = [bx * np.cos(theta) + by * np.sin(theta) for _, _, bx, by, _ in rows]
    assert max(level) - min(level) < 1e-10
    zs = [bz for *_, bz in rows]
    assert max(zs) > 0.5 and min(zs) < -0.5


def test_decode_single_share_ambiguous(tmp_path, capsys):
    out_dir = tmp_path / "shares"
    _, out, _ = run(capsys, "share", "--scheme", "fig3_pole:4", "--x", "0", "--y", "0", "--out", str(out_dir))
    paths = json.loads(out)["shares"]
    code, out, _ = run(capsys, "decode", paths[0])
    assert code == 0
    assert json.loads(out)["result"] == "ambiguous_circle"


def test_decode_corrupt_share_names_file(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(
        docs.dump({"alpha": 0.0, "theta": 0.0, "rho_b": [[[0.5, 0], [0, 0.7]], [[0, -0.7], [0.5, 0]]]}),
        encoding="utf-8",
    )
    code, _, err = run(capsys, "decode", str(bad))
    assert code == 1
    assert "bad.json" in err


def test_missing_file_exit_code(capsys):
    code, _, err = run(capsys, "decode", "does-not-exist.json")
    assert code == 2


def test_malformed_json_diagnostics(tmp_path, capsys):
    bad = tmp_path / "mangled.json"
    bad.write_text('{\n "alpha": ,\n}', encoding="utf-8")
    code, _, err = run(capsys, "decode", str(bad))
    assert code == 1
    assert "line 2" in err


def test_invariant_violation_exit_code(tmp_path, capsys, monkeypatch):
    from qmask import InvariantViolationError
    from qmask import cli as cli_module

    def boom(op, anchor):
        raise InvariantViolationError("forced for the exit-code contract")

    monkeypatch.setattr(cli_module, "maskable_set", boom)
    op_path = write_operator(tmp_path / "op.json", identity_embedding())
    code, _, err = run(capsys, "analyze", "--operator", op_path, "--x", "1", "--y", "1")
    assert code == 3
    assert "invariant" in err


def test_qmask_tol_env_override(tmp_path, capsys, monkeypatch):
    slightly_off = tmp_path / "off.json"
    slightly_off.write_text(
        docs.dump({"alpha": 0.0, "theta": 0.0, "rho_b": [[[0.52, 0], [0.1, 0]], [[0.1, 0], [0.48, 0]]]}),
        encoding="utf-8",
    )
    code, _, err = run(capsys, "decode", str(slightly_off))
    assert code == 1  # default tolerance rejects it
    monkeypatch.setenv("QMASK_TOL", "0.1")
    code, out, _ = run(capsys, "decode", str(slightly_off))
    assert code == 0
    assert json.loads(out)["result"] == "ambiguous_circle"
    monkeypatch.setenv("QMASK_TOL", "banana")
    code, _, err = run(capsys, "decode", str(slightly_off))
    assert code == 1 and "QMASK_TOL" in err


def test_presets_command(capsys):
    code, out, _ = run(capsys, "presets")
    assert code == 0
    assert "fig1_axes" in json.loads(out)


def test_deterministic_output(tmp_path, capsys):
    args = ("mask", "--alpha", "0.7", "--theta", "4.1", "--x", "2.2", "--y", "0.9")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second

    dir_a, dir_b = tmp_path / "a", tmp_path / "b"
    for d in (dir_a, dir_b):
        run(capsys, "share", "--scheme", "general:6", "--x", "1.1", "--y", "2.2", "--out", str(d))
    for pa, pb in zip(sorted(dir_a.iterdir()), sorted(dir_b.iterdir())):
        assert pa.read_bytes() == pb.read_bytes()


def test_out_flag_writes_file(tmp_path, capsys):
    out_file = tmp_path / "mask.json"
    code, out, _ = run(capsys, "mask", "--alpha", "0", "--theta", "0", "--x", "1", "--y", "1", "--out", str(out_file))
    assert code == 0 and out == ""
    assert json.loads(out_file.read_text())["hbar"] == pytest.approx(np.cos(1.0))
