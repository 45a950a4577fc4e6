import json

import pytest

from momentlab import cli
from momentlab.config import ConfigError, RunConfig, dump_config_text, parse_config_text


def test_parse_grammar():
    text = '''
# a comment
name = "scaling"      # trailing comment
q-max = 120
weight = 4
contour_t = 30.5
q_list = [5, 13, 17]
alpha = "0.01,0.02,0.03"
flag = true
z = 1+2j
'''
    got = parse_config_text(text)
    assert got == {"name": "scaling", "q_max": 120, "weight": 4, "contour_t": 30.5, "q_list": [5, 13, 17],
                   "alpha": "0.01,0.02,0.03", "flag": True, "z": 1 + 2j}


def test_parse_reports_every_problem():
    with pytest.raises(ConfigError) as exc:
        parse_config_text('weight 4\nq = [1, 2\nq = 3\nBad = 1\ns = "open\n')
    assert len(exc.value.problems) == 4


def test_dump_round_trip():
    values = {"name": "residual", "q_list": [11, 19], "threads": 2, "contour_T": 28.0, "data": None}
    back = parse_config_text(dump_config_text(values))
    assert RunConfig.from_mapping(back) == RunConfig.from_mapping({k: v for k, v in values.items() if v is not None})


def test_validation_lists_all_problems():
    cfg = RunConfig(command="experiment", name="nope", weight=3, alpha="0.6,0,0", threads=0, q_list=[9, 10])
    problems = cfg.problems()
    assert len(problems) == 6
    with pytest.raises(ConfigError):
        RunConfig.from_mapping({"bogus": 1})


def test_shift_and_grid_helpers():
    cfg = RunConfig(alpha="0.1, 0.2j, -0.05", t_grid="0:10:0.5")
    assert cfg.shifts() == (0.1, 0.2j, -0.05)
    assert cfg.t_values()[:3] == (0.0, 0.5, 1.0) and len(cfg.t_values()) == 21


def test_invalid_alpha_rejected_before_work(capsys, tmp_path):
    code = cli.main(["experiment", "scaling", "--alpha", "0.5,0,0", "--out", str(tmp_path / "o")])
    assert code == cli.EXIT_CONFIG
    assert "alpha" in capsys.readouterr().err
    assert not (tmp_path / "o").exists()


def test_config_file_and_flags(tmp_path, capsys):
    conf = tmp_path / "run.conf"
    conf.write_text('weight = 2\nq_list = [11, 19]\nout = "%s"\n' % (tmp_path / "out"))
    assert cli.main(["experiment", "scaling", "--config", str(conf)]) == 0
    lines = (tmp_path / "out" / "scaling.csv").read_text().splitlines()
    assert lines[0].startswith("# momentlab-csv schema=1 kind=scaling")
    assert lines[1] == "q,max_L,min_L,ratio"
    assert [row.split(",")[0] for row in lines[2:]] == ["11", "19"]
    plot = (tmp_path / "out" / "scaling.plot.csv").read_text().splitlines()
    assert plot[0].startswith("# momentlab-plot") and plot[1] == "q,ratio"


def test_missing_data_exit_code(tmp_path):
    broken = tmp_path / "broken.jsonl"
    broken.write_text('{"level": 11, "weight": 2, "label": "x", "an": [1, -2, -1')
    assert cli.main(["verify", "petersson", "--data", str(broken)]) == cli.EXIT_DATA
    assert cli.main(["experiment", "scaling", "--data", str(tmp_path / "absent.jsonl"),
                     "--out", str(tmp_path / "o")]) == cli.EXIT_DATA


def test_verify_charsums_passes(capsys):
    assert cli.main(["verify", "charsums"]) == 0
    out = capsys.readouterr().out
    assert out.count("PASS") == 2


def test_manifest_round_trip_and_determinism(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    args = ["experiment", "large-sieve", "--q-odd-squarefree-max", "21", "--t-grid", "0:2:0.5"]
    assert cli.main(args + ["--out", str(a), "--threads", "1"]) == 0
    assert cli.main(args + ["--out", str(b), "--threads", "4"]) == 0
    assert (a / "large-sieve.csv").read_bytes() == (b / "large-sieve.csv").read_bytes()
    manifest = json.loads((a / "large-sieve.manifest.json").read_text())
    assert manifest["config"]["q_odd_squarefree_max"] == 21
    assert manifest["outputs"]["large-sieve.csv"] == cli.git_blob_hash((a / "large-sieve.csv").read_bytes())
    assert cli.main(["rerun", str(a / "large-sieve.manifest.json")]) == 0


def test_git_blob_hash_matches_git():
    # `printf 'hello\n' | git hash-object --stdin`
    assert cli.git_blob_hash(b"hello\n") == "ce013625030ba8dba906f756967f9e9ca394464a"
