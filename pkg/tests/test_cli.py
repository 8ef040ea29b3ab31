import json
from pathlib import Path

from beliefnor.cli import _load_settings, main

DATA = Path(__file__).resolve().parents[1] / "data"


def _row(text, name):
    for line in text.splitlines():
        tokens = line.split()
        if tokens and tokens[0] == name:
            return tokens
    raise AssertionError(f"no row {name} in output:\n{text}")


def test_gate_lc_table(capsys):
    code = main(["gate", "--variant", "lc", "--link", "0.6:0.8", "--link", "0.7:0.9", "--eta", "0", "--eta", "0.1"])
    out = capsys.readouterr().out

    assert code == 0
    assert len(out.splitlines()) == 10
    assert _row(out, "T,TF") == ["T,TF", "0.6000", "0.0000", "0.4000", "ok", "0.8000"]
    assert _row(out, "T,T") == ["T,T", "0.8800", "0.0200", "0.1000", "ok", "0.9300"]


def test_gate_nor_prints_two_state_rows(capsys):
    code = main(["gate", "--variant", "nor", "--link", "0.6", "--link", "0.7"])
    out = capsys.readouterr().out

    assert code == 0
    assert len(out.splitlines()) == 5
    assert _row(out, "F,T")[1:4] == ["0.7000", "0.3000", "0.0000"]


def test_gate_lambda_out_of_range_is_usage_error(capsys):
    code = main(["gate", "--variant", "oc", "--lambda", "1.2", "--link", "0.6:0.8"])
    captured = capsys.readouterr()

    assert code == 2
    assert captured.out == ""


def test_gate_with_negative_disbelief_is_domain_error(capsys):
    code = main(["gate", "--variant", "obnor", "--link", "0.6:0.8", "--eta", "0.5"])
    captured = capsys.readouterr()

    assert code == 1
    assert captured.out == ""
    assert "beta" in captured.err


def test_reliability_oc_on_uncertain_network(capsys):
    code = main(["reliability", str(DATA / "five_node_uncertain.json"), "--variant", "oc", "--lambda", "0.6"])
    out = capsys.readouterr().out

    assert code == 0
    assert _row(out, "m_T")[1] == "0.9082"
    assert _row(out, "m_F")[1] == "0.0741"
    assert _row(out, "m_TF")[1] == "0.0177"
    assert _row(out, "betp_T")[1] == "0.9171"


def test_reliability_verify_on_point_network(capsys):
    code = main(["reliability", str(DATA / "five_node.json"), "--verify", "--model", "bn"])
    out = capsys.readouterr().out

    assert code == 0
    assert _row(out, "bel_T")[1] == _row(out, "pl_T")[1] == "0.9148"
    assert _row(out, "oracle")[1] == "0.9148"
    assert float(_row(out, "oracle_abs_diff")[1]) < 1e-12


def test_reliability_verify_notes_interval_networks(capsys):
    code = main(["reliability", str(DATA / "five_node_uncertain.json"), "--verify"])
    out = capsys.readouterr().out

    assert code == 0
    assert "defined only for point edge probabilities" in out


def test_malformed_file_is_parse_error(tmp_path, capsys):
    broken = tmp_path / "broken.json"
    broken.write_text('{"edges": [\n  {"id": "e1",, }\n]}')

    code = main(["reliability", str(broken)])
    captured = capsys.readouterr()

    assert code == 2
    assert captured.out == ""
    assert "broken.json:2:" in captured.err


def test_oc_without_lambda_is_domain_error(capsys):
    code = main(["reliability", str(DATA / "five_node.json"), "--variant", "oc"])
    assert code == 1
    assert capsys.readouterr().out == ""


def test_infer_with_verify(capsys):
    code = main(["infer", str(DATA / "alarm.json"), "--node", "alarm", "--verify"])
    out = capsys.readouterr().out

    assert code == 0
    assert _row(out, "m_T")[1] == "0.3996"
    assert _row(out, "m_TF")[1] == "0.1720"
    assert float(_row(out, "oracle_max_diff")[1]) < 1e-12


def test_infer_unknown_node(capsys):
    assert main(["infer", str(DATA / "alarm.json"), "--node", "ghost"]) == 1


def test_compare_prints_every_model(capsys):
    code = main(["compare", str(DATA / "five_node_uncertain.json")])
    out = capsys.readouterr().out

    assert code == 0
    assert out.splitlines()[0].split() == ["S", "ImNOR", "LC-BNOR", "PBNOR", "OBNOR", "TBNOR", "OCBNOR(lambda=0.6)"]
    assert _row(out, "m_T")[-1] == "0.9082"


def test_sweep_to_file(tmp_path, capsys):
    out_path = tmp_path / "lambda.csv"
    code = main(
        [
            "sweep",
            str(DATA / "five_node_uncertain.json"),
            "--parameter",
            "lambda",
            "--steps",
            "11",
            "--out",
            str(out_path),
        ]
    )

    assert code == 0
    assert capsys.readouterr().out == ""
    lines = out_path.read_text().splitlines()
    assert lines[0] == "param,m_T,m_F,m_TF,bel_T,pl_T,betp_T"
    assert len(lines) == 12
    assert lines[1].startswith("0.0000,0.9007,0.0828")
    assert lines[-1].startswith("1.0000,0.9133,0.0683")


def test_sweep_output_is_repeatable(capsys):
    argv = ["sweep", str(DATA / "five_node_uncertain.json"), "--parameter", "interval-width", "--stop", "0.05", "--steps", "6", "--edge", "e2"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    assert capsys.readouterr().out == first


def test_precision_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("BELIEFNOR_PRECISION", "2")
    code = main(["reliability", str(DATA / "five_node.json")])

    assert code == 0
    assert _row(capsys.readouterr().out, "m_T")[1] == "0.91"


def test_precision_flag_overrides_settings(monkeypatch, capsys):
    monkeypatch.setenv("BELIEFNOR_PRECISION", "2")
    main(["reliability", str(DATA / "five_node.json"), "--precision", "6"])

    assert _row(capsys.readouterr().out, "m_T")[1] == "0.914760"


def test_settings_env_overrides_config_file(tmp_path, monkeypatch):
    config = tmp_path / "beliefnor.json"
    config.write_text(json.dumps({"precision": 6, "workers": 3}))
    monkeypatch.delenv("BELIEFNOR_WORKERS", raising=False)
    monkeypatch.setenv("BELIEFNOR_PRECISION", "8")

    settings = _load_settings(config)

    assert settings.precision == 8
    assert settings.workers == 3


def test_settings_missing_config_uses_defaults(tmp_path, monkeypatch):
    monkeypatch.delenv("BELIEFNOR_PRECISION", raising=False)
    monkeypatch.delenv("BELIEFNOR_WORKERS", raising=False)

    settings = _load_settings(tmp_path / "absent.json")

    assert settings.precision == 4
    assert settings.workers == 1


def test_nan_prior_is_parse_error(tmp_path, capsys):
    path = tmp_path / "nan.json"
    path.write_text('{"nodes": [{"id": "x", "prior": [NaN, 0.0, 1.0]}]}')

    code = main(["infer", str(path), "--node", "x"])
    captured = capsys.readouterr()

    assert code == 2
    assert captured.out == ""
    assert "prior" in captured.err


def test_undecodable_file_is_parse_error(tmp_path, capsys):
    path = tmp_path / "binary.json"
    path.write_bytes(b'{"edges": [\xff\xfe]}')

    code = main(["reliability", str(path)])
    captured = capsys.readouterr()

    assert code == 2
    assert captured.out == ""
    assert "binary.json" in captured.err


def test_config_must_hold_an_object(tmp_path, capsys):
    config = tmp_path / "beliefnor.json"
    config.write_text("[1, 2]")

    code = main(["--config", str(config), "reliability", str(DATA / "five_node.json")])
    captured = capsys.readouterr()

    assert code == 2
    assert captured.out == ""
    assert "JSON object" in captured.err


def test_lambda_sweep_rejects_other_variants(capsys):
    argv = ["sweep", str(DATA / "five_node_uncertain.json"), "--parameter", "lambda", "--variant", "lc"]
    code = main(argv)
    captured = capsys.readouterr()

    assert code == 1
    assert captured.out == ""
    assert "oc variant" in captured.err
