import json
import re
from fractions import Fraction

import pytest

from bitangents.cli import main
from bitangents.corpus import QuarticRecord, trott, write_corpus


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def test_bitangents_trott(capsys):
    code, rep, _ = run(capsys, "bitangents", "trott")
    assert code == 0
    assert rep["schema"] == 1 and rep["command"] == "bitangents"
    res = rep["result"]
    assert res["total"] == 28 and res["real"] == 28 and res["real_split"] == 28
    for bt in res["bitangents"]:
        for lo, hi in bt["line"]:
            assert 0 <= Fraction(hi) - Fraction(lo) <= Fraction(1, 2**40)


def test_bitangents_fermat(capsys):
    code, rep, _ = run(capsys, "bitangents", "fermat")
    res = rep["result"]
    assert code == 0
    assert res["real_non_split"] == 4 and res["complex_pairs"] == 12 and res["total"] == 28
    assert len(res["bitangents"]) == 16


def test_signed_count(capsys):
    code, rep, _ = run(capsys, "signed-count", "trott", "--line", "0", "0", "1")
    assert code == 0
    assert rep["result"]["signed_count"] == 4
    assert rep["result"]["gw_str"] == "16<1> + 12<-1>"
    code, rep, _ = run(capsys, "signed-count", "trott", "--line", "-5/4", "1", "1233/1000")
    assert rep["result"]["signed_count"] == 6
    code, rep, _ = run(capsys, "signed-count", "fermat", "--line", "2", "-3", "7")
    assert rep["result"]["signed_count"] == 4


def test_band_and_all_counts(capsys):
    code, rep, _ = run(capsys, "band", "trott", "--slope", "5/4")
    assert code == 0 and rep["result"]["values"] == [0, 2, 4, 6, 8]
    code, rep, _ = run(capsys, "all-counts", "fermat")
    assert code == 0 and rep["result"]["counts"] == [4]


def test_report_to_file(tmp_path, capsys):
    out = tmp_path / "r.json"
    code = main(["signed-count", "fermat", "--line", "1", "2", "3", "--out", str(out)])
    assert code == 0 and capsys.readouterr().out == ""
    assert json.loads(out.read_text())["result"]["signed_count"] == 4


def test_corpus_file_input(tmp_path, capsys):
    path = tmp_path / "c.txt"
    write_corpus(path, [QuarticRecord("a", trott()), QuarticRecord("b", trott().scaled(2))])
    code, rep, _ = run(capsys, "signed-count", str(path), "--name", "b", "--line", "0", "0", "1")
    assert code == 0 and rep["inputs"]["quartic"] == "b" and rep["result"]["signed_count"] == 4


def test_input_errors_exit_2(tmp_path, capsys):
    assert main(["bitangents", str(tmp_path / "missing.txt")]) == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("x | 4,0,0:oops\n")
    assert main(["bitangents", str(bad)]) == 2
    sing = tmp_path / "sing.txt"
    sing.write_text("s | 4,0,0:1 0,4,0:1\n")
    assert main(["bitangents", str(sing)]) == 2
    assert main(["signed-count", "trott", "--line", "0", "0", "0"]) == 2
    # L_inf equal to a bitangent
    assert main(["signed-count", "fermat", "--line", "1", "1", "1"]) == 2
    capsys.readouterr()


def test_verify_suites(capsys):
    code, rep, _ = run(capsys, "verify", "--suite", "sametype", "--n", "20")
    assert code == 0 and rep["passed"] and rep["result"]["n_cases"] == 20
    code, rep, _ = run(capsys, "verify", "--suite", "klein")
    assert code == 0
    flex = {c["name"]: (c["real_flexes"], c["real_non_split"]) for c in rep["result"]["cases"]}
    assert flex == {"trott": (8, 0), "fermat": (0, 4)}


def test_verify_conjecture_prints_banner(tmp_path, capsys):
    path = tmp_path / "c.txt"
    write_corpus(path, [QuarticRecord("trott", trott())])
    code, rep, err = run(capsys, "verify", "--suite", "conjecture", "--corpus", str(path))
    assert code == 0
    assert "not a proof" in err
    assert rep["result"]["cases"][0]["counts"] == [0, 2, 4, 6, 8]


def test_plot(tmp_path, capsys):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    for p in (a, b):
        assert main(["plot", "trott", "--out", str(p), "--resolution", "128"]) == 0
    assert a.read_text() == b.read_text()
    svg = a.read_text()
    assert svg.count("#c0392b") == 16 and svg.count("#2e6fd1") == 12
    fermat_svg = tmp_path / "f.svg"
    assert main(["plot", "fermat", "--out", str(fermat_svg), "--resolution", "64"]) == 0
    text = fermat_svg.read_text()
    curve = re.search(r'<g id="curve">(.*?)</g>', text, re.S).group(1)
    assert 'class="curve"' not in curve
    assert text.count('class="bitangent"') == 4
    capsys.readouterr()


def test_plot_bad_window(tmp_path, capsys):
    assert main(["plot", "trott", "--out", str(tmp_path / "x.svg"), "--window", "1", "0", "0", "1"]) == 2
    capsys.readouterr()


def test_unknown_command_exits():
    with pytest.raises(SystemExit):
        main(["frobnicate"])
