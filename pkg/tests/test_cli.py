import io
import json

import pytest

from klcat.cli import main


def run_cli(argv, env=None, monkeypatch=None):
    if env is not None:
        for key, value in env.items():
            monkeypatch.setenv(key, value)
    out = io.StringIO()
    code = main(argv, out=out)
    return code, out.getvalue()


def test_group_preset_a3():
    code, text = run_cli(["group", "--type", "A3"])
    assert code == 0
    assert "order: 24" in text
    assert "longest length: 6" in text
    assert "elements by length: 1,3,5,6,5,3,1" in text


def test_group_dihedral_preset():
    code, text = run_cli(["group", "--type", "I2(7)"])
    assert code == 0 and "order: 14" in text


def test_group_infinite_matrix_truncates():
    code, text = run_cli(
        ["group", "--matrix", '{"rank":2,"m":[[1,0],[0,1]]}', "--cap", "50"]
    )
    assert code == 0
    assert "partial, complete through length 24" in text


def test_bad_spec_exits_2(capsys):
    assert main(["group", "--type", "Z9"], out=io.StringIO()) == 2
    assert main(["group", "--matrix", "{bad json"], out=io.StringIO()) == 2
    assert main(["group", "--matrix", '{"rank":2,"m":[[1,1],[1,1]]}'], out=io.StringIO()) == 2
    assert main(["kl"], out=io.StringIO()) == 2
    assert main(["group", "--type", "A2", "--cap", "0"], out=io.StringIO()) == 2
    capsys.readouterr()


def test_kl_csv_a2_is_triangular_monomial():
    code, text = run_cli(["kl", "--type", "A2"])
    assert code == 0
    lines = text.strip().splitlines()
    assert lines[0] == "x,w,h,P,mu"
    assert len(lines) == 1 + 19  # pairs x <= w in the 6-element group
    for line in lines[1:]:
        _, _, h, p, _ = line.split(",")
        assert "+" not in h and p == "1*q^0"


def test_kl_csv_a3_golden_row():
    code, text = run_cli(["kl", "--type", "A3"])
    assert code == 0
    assert "s2,s2.s1.s3.s2,1*v^1+1*v^3,1*q^0+1*q^1,1" in text.splitlines()


def test_kl_json_is_deterministic_and_reloadable():
    code1, text1 = run_cli(["kl", "--type", "A3", "--format", "json"])
    code2, text2 = run_cli(["kl", "--type", "A3", "--format", "json"])
    assert code1 == code2 == 0
    assert text1 == text2
    obj = json.loads(text1)
    assert obj["header"]["tool_version"]
    assert obj["body"]["complete_up_to"] == 6


def test_kl_cache_round_trip(tmp_path):
    cache = tmp_path / "a3.json"
    code1, text1 = run_cli(["kl", "--type", "A3", "--format", "json", "--cache", str(cache)])
    assert code1 == 0 and cache.exists()
    cached_bytes = cache.read_bytes()
    code2, text2 = run_cli(["kl", "--type", "A3", "--format", "json", "--cache", str(cache)])
    assert code2 == 0
    assert text1 == text2
    assert cache.read_bytes() == cached_bytes
    # the dumped table and the cache file are the same canonical document
    assert text1.encode() == cached_bytes


def test_kl_cache_mismatch_exits_3(tmp_path, capsys):
    cache = tmp_path / "kl.json"
    assert main(["kl", "--type", "A3", "--cache", str(cache)], out=io.StringIO()) == 0
    # a cache produced for a different bound must be rejected, not reused
    code = main(
        ["kl", "--type", "A3", "--up-to-length", "3", "--cache", str(cache)],
        out=io.StringIO(),
    )
    assert code == 3
    # ... and so must a tampered tool version
    obj = json.loads(cache.read_text())
    obj["header"]["tool_version"] = "0.0.0"
    cache.write_text(json.dumps(obj))
    assert main(["kl", "--type", "A3", "--cache", str(cache)], out=io.StringIO()) == 3
    capsys.readouterr()


def test_kl_cache_dir_env(tmp_path, monkeypatch):
    code, text = run_cli(
        ["kl", "--type", "A2"], env={"KLCAT_CACHE_DIR": str(tmp_path)}, monkeypatch=monkeypatch
    )
    assert code == 0
    files = list(tmp_path.glob("kl-*.json"))
    assert len(files) == 1
    code2, text2 = run_cli(
        ["kl", "--type", "A2"], env={"KLCAT_CACHE_DIR": str(tmp_path)}, monkeypatch=monkeypatch
    )
    assert code2 == 0 and text2 == text


def test_cells_command():
    code, text = run_cli(["cells", "--type", "A2", "--word", "s1,s2"])
    assert code == 0
    obj = json.loads(text)
    assert obj["lambda0"] == ["s1.s2"]
    assert obj["pass"] is True


def test_cells_a3_chain_word():
    code, text = run_cli(["cells", "--type", "A3", "--word", "s2,s1,s3,s2"])
    assert code == 0
    obj = json.loads(text)
    assert obj["lambda0"] == ["s2.s1.s3.s2"]


def test_cells_non_reduced_exits_4(capsys):
    assert main(["cells", "--type", "A2", "--word", "s1,s1"], out=io.StringIO()) == 4
    assert main(["cells", "--type", "A2", "--word", "s9"], out=io.StringIO()) == 4
    capsys.readouterr()


@pytest.mark.parametrize("suite", ["kl", "leaves", "branch", "recursion", "all"])
def test_verify_suites_pass_on_a2(suite):
    code, text = run_cli(["verify", "--type", "A2", "--suite", suite])
    assert code == 0
    assert text.endswith("RESULT: PASS\n")


def test_verify_deterministic_across_runs_and_jobs():
    runs = [
        run_cli(["verify", "--type", "A2", "--suite", "all", "--format", "json"]),
        run_cli(["verify", "--type", "A2", "--suite", "all", "--format", "json"]),
        run_cli(["verify", "--type", "A2", "--suite", "all", "--format", "json", "--jobs", "4"]),
    ]
    assert all(code == 0 for code, _ in runs)
    assert runs[0][1] == runs[1][1] == runs[2][1]


def test_verify_json_summary_shape():
    code, text = run_cli(["verify", "--type", "I2(4)", "--suite", "recursion", "--format", "json"])
    assert code == 0
    obj = json.loads(text)
    assert obj["pass"] is True
    assert set(obj["summary"]) == {"derived_recursion", "correction_index_consistency"}
    assert all(counts["fail"] == 0 for counts in obj["summary"].values())


def test_verify_dihedral_recursion_suite():
    code, text = run_cli(["verify", "--type", "I2(6)", "--suite", "recursion"])
    assert code == 0 and text.endswith("RESULT: PASS\n")


def test_verify_failure_exits_1(monkeypatch, capsys):
    # exercise the exit-code contract without corrupting real data
    import klcat.cli as cli_mod

    def failing_suite(kl, suite, jobs=1):
        records = [{"identity": "synthetic", "word": "e", "pass": False, "lhs": "0", "rhs": "1"}]
        return {"suite": suite, "records": records, "summary": {"synthetic": {"pass": 0, "fail": 1}}, "pass": False}

    monkeypatch.setattr(cli_mod, "run_suite", failing_suite)
    out = io.StringIO()
    assert main(["verify", "--type", "A2", "--suite", "kl"], out=out) == 1
    assert "RESULT: FAIL" in out.getvalue()
    assert "FAIL synthetic" in out.getvalue()
    capsys.readouterr()


def test_group_presets_b3_a4():
    code, text = run_cli(["group", "--type", "B3"])
    assert code == 0 and "order: 48" in text
    code, text = run_cli(["group", "--type", "A4"])
    assert code == 0 and "order: 120" in text and "longest length: 10" in text


def test_verify_truncated_group_with_max_length():
    code, text = run_cli(
        [
            "verify",
            "--matrix",
            '{"rank":2,"m":[[1,0],[0,1]]}',
            "--cap",
            "60",
            "--max-length",
            "6",
            "--suite",
            "all",
        ]
    )
    assert code == 0 and text.endswith("RESULT: PASS\n")
