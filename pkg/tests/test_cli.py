import json

import pytest

from errprop.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_eval_division(capsys):
    code, out, _ = run(capsys, "eval", "x/y", "x=5.00(1)", "y=1.00(1)")
    assert code == 0
    assert out == "5.00(5)\n"


def test_eval_exact_passthrough(capsys):
    code, out, _ = run(capsys, "eval", "x", "x=42")
    assert code == 0
    assert out == "42\n"


def test_eval_unbound_is_exit_2(capsys):
    code, out, err = run(capsys, "eval", "x/y", "x=5.00(1)")
    assert code == 2
    assert out == ""
    assert "unbound variable: y" in err


def test_eval_bad_expression_is_exit_2(capsys):
    code, _, err = run(capsys, "eval", "x +", "x=1")
    assert code == 2
    assert err


def test_eval_json_roundtrip(capsys):
    code, out, _ = run(capsys, "eval", "x/y", "x=5.00(1)", "y=1.00(1)",
                       "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["value"] == pytest.approx(5.0, rel=1e-12)
    assert doc["error"] == pytest.approx(0.050990195135927854, rel=1e-12)
    assert doc["formatted"] == "5.00(5)"


def test_eval_notation_flags(capsys):
    code, out, _ = run(capsys, "eval", "x", "x=5.00(5)",
                       "--notation", "plus-minus", "--digits", "2")
    assert code == 0
    assert out == "5.000 ± 0.050\n"


def test_eval_env_fallback(capsys, monkeypatch):
    monkeypatch.setenv("ERRPROP_NOTATION", "plus-minus")
    code, out, _ = run(capsys, "eval", "x", "x=5.00(5)")
    assert code == 0
    assert out == "5.00 ± 0.05\n"
    # flags win over the environment
    code, out, _ = run(capsys, "eval", "x", "x=5.00(5)", "--notation", "parenthesis")
    assert out == "5.00(5)\n"


def test_table_derive(tmp_path, capsys):
    src = tmp_path / "t.csv"
    # attach i/30 errors from a second column
    src.write_text(
        "x,e\n" + "\n".join(f"{i},{i/30!r}" for i in range(1, 9)) + "\n"
    )
    code, out, _ = run(
        capsys, "table", str(src), "--error-col", "x=e",
        "--derive", "3x=3*x", "--format", "csv",
    )
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "x,e,3x"
    assert lines[1].split(",")[0] == "1.00(3)"
    assert lines[1].split(",")[2] == "3.0(1)"
    assert lines[8].split(",")[2] == "24.0(8)"


def test_table_relative_error_iris_head(tmp_path, capsys):
    src = tmp_path / "iris.csv"
    src.write_text("Sepal.Length,Species\n5.1,setosa\n4.9,setosa\n")
    code, out, _ = run(capsys, "table", str(src),
                       "--rel-error", "Sepal.Length=0.02", "--format", "csv")
    assert code == 0
    assert out.split("\n")[1].split(",")[0] == "5.1(1)"


def test_table_empty(tmp_path, capsys):
    src = tmp_path / "empty.csv"
    src.write_text("a,b\n")
    code, out, _ = run(capsys, "table", str(src), "--format", "csv")
    assert code == 0
    assert out == "a,b\n"


def test_table_summarize(tmp_path, capsys):
    src = tmp_path / "t.csv"
    src.write_text("x\n1.00(3)\n2.00(3)\n3.00(3)\n")
    code, out, _ = run(capsys, "table", str(src), "--summarize", "mean(x)")
    assert code == 0
    assert "mean(x) = " in out


def test_table_missing_column_is_exit_2(tmp_path, capsys):
    src = tmp_path / "t.csv"
    src.write_text("x\n1\n")
    code, _, err = run(capsys, "table", str(src), "--rel-error", "y=0.02")
    assert code == 2
    assert "y" in err


def test_mc_determinism(tmp_path, capsys):
    args = ("mc", "x/y", "x=5.00(1)", "y=1.00(1)",
            "--samples", "20000", "--seed", "42", "--format", "json")
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2
    doc = json.loads(out1)
    assert doc["tsm_sd"] == pytest.approx(0.0509902, abs=1e-7)
    assert doc["mcm_sd"] == pytest.approx(0.0509902, rel=0.05)
    assert doc["relative_gap"] < 0.05


def test_mc_linear_gap_small(capsys):
    code, out, _ = run(capsys, "mc", "x+y", "x=1.0(1)", "y=2.0(1)",
                       "--samples", "100000", "--seed", "1", "--format", "json")
    assert code == 0
    assert json.loads(out)["relative_gap"] < 0.01


def test_plot_writes_deterministic_svg(tmp_path, capsys):
    src = tmp_path / "pts.csv"
    rows = [f"{1 + i/10!r},{2 + i/5!r},{'a' if i % 2 else 'b'}" for i in range(20)]
    src.write_text("x,y,g\n" + "\n".join(rows) + "\n")
    out1, out2 = tmp_path / "a.svg", tmp_path / "b.svg"
    for dest in (out1, out2):
        code = main(["plot", str(src), "--rel-error", "x=0.02",
                     "--rel-error", "y=0.02", "--x", "x", "--y", "y",
                     "--group", "g", "-o", str(dest)])
        assert code == 0
    svg = out1.read_text()
    assert svg == out2.read_text()
    assert svg.count('class="pt"') == 20


def test_plot_requires_uncertain_columns(tmp_path, capsys):
    src = tmp_path / "pts.csv"
    src.write_text("x,y\n1,2\n")
    code = main(["plot", str(src), "--x", "x", "--y", "y",
                 "-o", str(tmp_path / "o.svg")])
    assert code == 2


def test_plot_missing_column_is_exit_2(tmp_path, capsys):
    src = tmp_path / "pts.csv"
    src.write_text("x,y\n1,2\n")
    code = main(["plot", str(src), "--rel-error", "x=0.1", "--x", "x",
                 "--y", "nope", "-o", str(tmp_path / "o.svg")])
    assert code == 2
