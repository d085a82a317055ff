import json

from cluster_dual import cli


def run(args, capsys):
    code = cli.main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_verify_pass_and_report(tmp_path, capsys):
    out = tmp_path / "report.json"
    code, stdout, _ = run(["verify", "PHI_REL", "--type", "A1", "--trials", "3",
                           "--out", str(out)], capsys)
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["reports"][0]["name"] == "PHI_REL"
    assert payload["reports"][0]["failures"] == []


def test_verify_config_errors(capsys):
    assert run(["verify", "NOT_A_CHECK", "--type", "A1"], capsys)[0] == 2
    assert run(["verify", "PHI_REL", "--prime", "10"], capsys)[0] == 2
    assert run(["verify", "PHI_REL", "--prime", "97"], capsys)[0] == 2  # < 2^31
    assert run(["verify", "BRAID", "--type", "G2", "--level", "matrix",
                "--trials", "1"], capsys)[0] == 2
    assert run(["verify"], capsys)[0] == 2


def test_verify_small_prime_override(capsys):
    code, _, _ = run(["verify", "PHI_REL", "--type", "A1", "--trials", "2",
                      "--prime", "97", "--allow-small-prime"], capsys)
    assert code == 0


def test_verify_seed_level(capsys):
    code, stdout, _ = run(["verify", "BRAID", "--type", "G2", "--level", "seed"],
                          capsys)
    assert code == 0


def test_verify_determinism(tmp_path, capsys):
    f1, f2 = tmp_path / "a.json", tmp_path / "b.json"
    for f in (f1, f2):
        code, _, _ = run(["verify", "PGL2_TABLE", "--type", "A1", "--trials", "3",
                          "--rng-seed", "7", "--out", str(f)], capsys)
        assert code == 0
    a = json.loads(f1.read_text())
    b = json.loads(f2.read_text())
    for rep in a["reports"] + b["reports"]:
        rep.pop("elapsed_ms")
    assert a == b


def test_compute_seed(capsys):
    code, stdout, _ = run(["compute", "seed", "--word", "1,1", "--type", "A1"],
                          capsys)
    assert code == 0
    payload = json.loads(stdout)
    assert payload["bracket"]["epsilon"] == [[[0, 1], [-1, 1], [0, 1]],
                                             [[1, 1], [0, 1], [0, 1]],
                                             [[0, 1], [0, 1], [0, 1]]]


def test_compute_artin_t_example(capsys):
    code, stdout, _ = run(["compute", "artin-T", "--word", "1,1", "--type", "A1",
                           "--j", "1", "--point", "2,3,5"], capsys)
    assert code == 0
    assert json.loads(stdout)["point"] == ["9/64", "5/3", "5"]


def test_compute_ev_hat_example(capsys):
    code, stdout, _ = run(["compute", "ev-hat", "--word=-1,1", "--type", "A1",
                           "--point", "1,1,1"], capsys)
    assert code == 0
    assert json.loads(stdout)["matrix"] == [[[3, 1], [-1, 1]], [[4, 1], [-1, 1]]]


def test_compute_dimension_error(capsys):
    code, _, err = run(["compute", "ev", "--word", "1,1", "--type", "A1",
                        "--point", "1,2"], capsys)
    assert code == 2


def test_words_path_examples(capsys):
    code, stdout, _ = run(["words", "path", "--from=-1,1", "--to=1,-1",
                           "--type", "A1", "--moves", "mixed2"], capsys)
    assert code == 0
    payload = json.loads(stdout)
    assert payload["length"] == 1 and payload["path"][0]["kind"] == "mixed2"
    assert payload["path"][0]["letters_before"] == "-1,1"
    assert payload["path"][0]["letters_after"] == "1,-1"

    code, stdout, _ = run(["words", "path", "--from", "1,2,1", "--to", "2,1,2",
                           "--type", "A2", "--moves", "d"], capsys)
    assert code == 0
    assert json.loads(stdout)["length"] == 1

    code, stdout, _ = run(["words", "path", "--from=-1,1", "--to", "1,1",
                           "--type", "A1", "--moves", "dhat"], capsys)
    assert code == 0
    assert json.loads(stdout)["length"] == 2

    code, stdout, _ = run(["words", "path", "--from=-1,1", "--to=1,-1",
                           "--type", "A1", "--moves", "dual"], capsys)
    assert code == 0
    payload = json.loads(stdout)
    assert payload["length"] == 1 and payload["path"][0]["kind"] == "dual"

    code, _, err = run(["words", "path", "--from=-1,1", "--to=1,-1",
                        "--type", "A1", "--moves", "d"], capsys)
    assert code == 0  # the mixed 2-move is a generalized d-move

    code, _, err = run(["words", "path", "--from", "1", "--to=-1",
                        "--type", "A1", "--moves", "mixed2"], capsys)
    assert code == 1


def test_env_seed_override(monkeypatch, tmp_path, capsys):
    monkeypatch.setenv("CLUSTER_DUAL_SEED", "99")
    out = tmp_path / "r.json"
    code, _, _ = run(["verify", "PHI_REL", "--type", "A1", "--trials", "2",
                      "--rng-seed", "3", "--out", str(out)], capsys)
    assert code == 0
    assert json.loads(out.read_text())["config"]["rng_seed"] == 99


def test_compute_mutate(capsys):
    code, stdout, _ = run(["compute", "mutate", "--word", "1,1", "--type", "A1",
                           "--point", "2,3,5", "--direction", "1:1"], capsys)
    assert code == 0
    assert json.loads(stdout)["point"] == ["8", "1/3", "15/4"]
    code, _, _ = run(["compute", "mutate", "--word", "1,1", "--type", "A1",
                      "--point", "2,3,5"], capsys)
    assert code == 2
