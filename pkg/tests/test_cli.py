import json

import pytest

from qgraphgaps.cli import main

RECT = {
    "nu": 2,
    "vertices": [{"id": "v", "coupling": {"type": "delta", "alpha": 10}}],
    "edges": [{"id": "a", "from": "v", "to": "v", "length": "1", "z": [1, 0]},
              {"id": "b", "from": "v", "to": "v", "length": "1", "z": [0, 1]}],
}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_cf_golden(capsys):
    code, out, _ = run(capsys, "cf", "golden", "--depth", "8")
    assert code == 0
    assert "[1;1,1,1,1,1,1,1]" in out
    assert "1/1, 2/1, 3/2, 5/3, 8/5, 13/8, 21/13, 34/21" in out
    assert "[0.447213595499, 0.447213595500]" in out


def test_cf_trivial_and_family(capsys):
    code, out, _ = run(capsys, "cf", "(1+0*sqrt(2))/1")
    assert code == 0 and "terms        [1]\n" in out
    code, out, _ = run(capsys, "cf", "--family-t", "3", "--depth", "12")
    assert code == 0 and "[0;3,3,1,1,1,1,1,1,1,1,1]" in out


def test_cf_parse_failure_exit_2(capsys):
    code, _, err = run(capsys, "cf", "(1+sqrt(5)/2")
    assert code == 2 and "error" in err


def test_gaps_square(capsys):
    code, out, _ = run(capsys, "gaps", "--a", "1", "--b", "1", "--alpha", "10", "--kmax", "10",
                       "--format", "json")
    rep = json.loads(out)
    assert code == 0 and rep["count"] >= 2
    assert rep["gaps"][0]["k_hi"] == pytest.approx(4.21275134744, abs=1e-10)


def test_gaps_golden(capsys):
    code, out, _ = run(capsys, "gaps", "--golden", "--alpha", "-4.35", "--format", "json")
    rep = json.loads(out)
    assert code == 0 and rep["count"] == 1
    assert rep["kmax"] == pytest.approx(4 * 3.141592653589793 * 1.618033988749895)
    code, out, _ = run(capsys, "gaps", "--golden", "--alpha", "2", "--format", "json")
    assert json.loads(out)["count"] == 0


def test_gaps_zero_alpha_exit_3(capsys):
    code, _, err = run(capsys, "gaps", "--a", "1", "--b", "1", "--alpha", "0", "--kmax", "5")
    assert code == 3 and "spectrum is trivial" in err


def test_missing_lattice_exit_2(capsys):
    code, _, _ = run(capsys, "gaps", "--alpha", "1")
    assert code == 2
    with pytest.raises(SystemExit) as exc:
        main(["gaps", "--alpha", "x"])
    assert exc.value.code == 2


def test_classify_examples(capsys):
    code, out, _ = run(capsys, "classify", "--golden", "--alpha", "-4.35", "--format", "json")
    rep = json.loads(out)
    assert rep["report"]["regime"] == "finite-nonzero" and rep["golden"]["N"] == 1
    code, out, _ = run(capsys, "classify", "--golden", "--alpha", "-4.2")
    assert "regime       no-gaps" in out
    code, out, _ = run(capsys, "classify", "--theta-family", "3", "--alpha", "3.5")
    assert code == 0 and "finite-nonzero" in out


def test_classify_undecided_exit_0(capsys):
    code, out, _ = run(capsys, "classify", "--golden", "--alpha", "-4.2984735506776025")
    assert code == 0 and "boundary-undecided" in out


def test_thresholds_table(capsys):
    code, out, _ = run(capsys, "thresholds", "--golden", "--jmax", "3", "--format", "csv")
    lines = out.split("\r\n")
    assert code == 0 and lines[0] == "quantity,j,lo,hi,certified"
    assert lines[5].startswith("A,1,4.29847355067,4.29847355068")
    assert len([x for x in lines if x.startswith("A,")]) == 3


@pytest.mark.parametrize("argv", [
    ["cf", "golden", "--depth", "6"],
    ["gaps", "--a", "1", "--b", "1", "--alpha", "-6", "--kmax", "12"],
    ["classify", "--golden", "--alpha", "-4.35"],
    ["thresholds", "--theta-family", "4"],
])
def test_json_round_trip(capsys, argv):
    from qgraphgaps.cli import HANDLERS, parse_args
    code, out, _ = run(capsys, *argv, "--format", "json")
    args = parse_args(argv)
    assert code == 0 and json.loads(out) == HANDLERS[args.command][0](args)


def test_csv_deterministic(capsys, tmp_path):
    argv = ["gaps", "--a", "1", "--b", "0.7", "--alpha", "8", "--kmax", "30", "--format", "csv"]
    outs = [run(capsys, *argv)[1] for _ in range(2)]
    assert outs[0] == outs[1] and outs[0].startswith("k_lo,k_hi,E_lo,E_hi,certified\r\n")
    path = tmp_path / "g.csv"
    assert main(argv + ["--output", str(path)]) == 0
    assert path.read_bytes().decode() == outs[0]


def test_config_and_flag_precedence(capsys, tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"a": "1", "b": "1", "alpha": 10, "kmax": 10, "format": "json"}))
    code, out, _ = run(capsys, "gaps", "--config", str(cfg))
    assert code == 0 and json.loads(out)["count"] == 3
    code, out, _ = run(capsys, "gaps", "--config", str(cfg), "--kmax", "5")
    assert json.loads(out)["kmax"] == 5.0
    cfg.write_text(json.dumps({"alpha": 1, "colour": "red"}))
    code, _, err = run(capsys, "gaps", "--config", str(cfg))
    assert code == 2 and "colour" in err


def test_secular_commands(capsys, tmp_path):
    path = tmp_path / "rect.json"
    path.write_text(json.dumps(RECT))
    code, out, _ = run(capsys, "secular", str(path), "--kmin", "2", "--kmax", "10", "--dk", "0.05",
                       "--format", "json")
    rep = json.loads(out)
    assert code == 0 and rep["count"] == 3
    assert rep["gaps"][0]["k_lo"] == pytest.approx(3.14159265359, abs=1e-6)

    kirch = json.loads(json.dumps(RECT))
    kirch["vertices"][0]["coupling"]["alpha"] = 0
    path.write_text(json.dumps(kirch))
    code, out, _ = run(capsys, "secular", str(path), "--kmax", "8", "--dk", "0.1")
    assert "no gaps detected" in out
    assert "momentum period: 2*pi/L = 6.28318530718 (L = 1)" in out

    code, out, _ = run(capsys, "secular", str(path), "--kmax", "1", "--dk", "0.25", "--format", "csv")
    assert out.split("\r\n")[0] == "k,min_abs_F" and len(out.split("\r\n")) == 7


def test_secular_schema_error(capsys, tmp_path):
    bad = json.loads(json.dumps(RECT))
    bad["edges"][1]["z"] = [0]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    code, _, err = run(capsys, "secular", str(path))
    assert code == 2 and "edges[1].z" in err
