"""CLI surface: examples from the contract, exit codes, determinism."""

import json

import pytest

from univoque.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_alpha_integer_base(capsys):
    code, out, _ = run(capsys, "alpha", "--M", "1", "--q", "2", "--n", "6")
    assert code == 0
    assert out.splitlines() == ["111111"]


def test_alpha_seq_literal(capsys):
    code, out, _ = run(capsys, "alpha", "--M", "1", "--seq", "(10)", "--n", "6")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "101010"
    assert lines[1].startswith("q in [1.6180339887")


def test_alpha_m2(capsys):
    code, out, _ = run(capsys, "alpha", "--M", "2", "--q", "3", "--n", "4")
    assert code == 0
    assert out.splitlines() == ["2222"]


def test_alpha_decimal_is_widened(capsys):
    code, out, _ = run(capsys, "alpha", "--M", "1", "--q", "1.8", "--n", "10")
    assert code == 0
    assert out.splitlines() == ["1101010100"]


def test_alpha_precision_failure_exit_code(capsys):
    # a coarse enclosure at the golden ratio cannot certify the second digit
    code, out, err = run(
        capsys, "alpha", "--M", "1", "--q", "1.618034", "--precision", "2^-20", "--n", "10"
    )
    assert code == 3
    assert "certified prefix: 1" in err


def test_compose_decompose_classify(capsys):
    code, out, _ = run(capsys, "compose", "--M", "1", "10", "110")
    assert (code, out.strip()) == (0, "110100")
    code, out, _ = run(capsys, "decompose", "--M", "1", "110100")
    assert code == 0
    assert json.loads(out) == ["10", "110"]
    code, out, _ = run(capsys, "classify", "--M", "1", "110")
    assert (code, out.strip()) == (0, "irreducible")
    code, out, _ = run(capsys, "classify", "--M", "1", "110100")
    assert (code, out.strip()) == (0, "1-irreducible")


def test_domain_error_exit_code(capsys):
    code, _, err = run(capsys, "compose", "--M", "1", "11", "110")
    assert code == 2
    assert "error" in err


def test_entropy_seq(capsys):
    code, out, _ = run(capsys, "entropy", "--M", "1", "--seq", "(110)")
    assert code == 0
    assert out.startswith("h in [0.4812118250")


def test_entropy_json_deterministic(capsys):
    code1, out1, _ = run(capsys, "entropy", "--M", "1", "--seq", "(110)", "--format", "json")
    code2, out2, _ = run(capsys, "entropy", "--M", "1", "--seq", "(110)", "--format", "json")
    assert code1 == code2 == 0
    assert out1 == out2
    payload = json.loads(out1)
    assert set(payload) >= {"lo", "hi", "dec_lo", "dec_hi"}


def test_transitive(capsys):
    code, out, _ = run(capsys, "transitive", "--M", "1", "--seq", "(110)")
    assert (code, out.strip()) == (0, "transitive: true")
    code, out, _ = run(capsys, "transitive", "--M", "1", "--seq", "(110100)")
    assert (code, out.strip()) == (0, "transitive: false")


def test_bases(capsys):
    code, out, _ = run(capsys, "bases", "--M", "1", "--n", "3")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("q_G in [1.6180339887")
    assert lines[1].startswith("q_KL in [1.7872316501")
    assert lines[2].startswith("q_T in [1.8019377358")
    assert lines[3].startswith("q_2' in [")
    assert lines[4].startswith("q_3' in [")


def test_plateaus_jsonl(capsys):
    code, out, _ = run(capsys, "plateaus", "--M", "1", "--max-len", "4", "--format", "json")
    assert code == 0
    records = [json.loads(line) for line in out.splitlines()]
    by_word = {r["word"]: r for r in records}
    assert by_word["10"]["distinguished"] is True
    assert by_word["110"]["class"] == "irreducible"
    assert by_word["1100"]["boundary"] is True


def test_staircase_csv(capsys):
    code, out, _ = run(capsys, "staircase", "--M", "1", "--grid", "3/2:2:3", "--depth", "12")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "q_lo,q_hi,h_lo,h_hi,dim_lo,dim_hi,status"
    assert len(lines) == 4
    assert all(line.endswith(",ok") for line in lines[1:])


def test_output_file(tmp_path, capsys):
    target = tmp_path / "out.txt"
    code = main(["compose", "--M", "1", "--out", str(target), "10", "110"])
    capsys.readouterr()
    assert code == 0
    assert target.read_text().strip() == "110100"


def test_bases_rejects_bad_m(capsys):
    with pytest.raises(SystemExit) as info:
        main(["bases", "--M", "0"])
    assert info.value.code == 2
