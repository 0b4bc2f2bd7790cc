import csv

from oblivq.cli import main


def test_postfix(capsys):
    assert main(["postfix", "--expr", "2 3 4 * +", "--bound", "8"]) == 0
    assert capsys.readouterr().out.strip() == "14"


def test_postfix_renders_empty_as_dash(capsys):
    assert main(["postfix", "--expr", "+", "--bound", "2"]) == 0
    assert capsys.readouterr().out.strip() == "-"


def test_stockspan(capsys):
    assert main(["stockspan", "--prices", "100,80,60,70,60,75,85", "--bound", "9"]) == 0
    assert capsys.readouterr().out.strip() == "1,1,1,2,1,4,6"


def test_sort(capsys):
    assert main(["sort", "--alg", "merge", "--n", "50", "--seed", "3"]) == 0
    out = capsys.readouterr().out
    assert "sorted=True" in out
    assert main(["sort", "--alg", "quick", "--n", "300", "--seed", "3", "--print"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert "sorted=True" in out[0]
    vals = [int(v) for v in out[1].split()]
    assert vals == sorted(vals)


def test_bench_csv(tmp_path, capsys):
    path = tmp_path / "b.csv"
    assert main(["bench", "--structure", "lifo,linear", "--capacity", "16", "--ops", "100",
                 "--seed", "1", "--csv", str(path)]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "structure,capacity,ops,wall_ms,e_ops,c_ops,accesses"
    with path.open() as fh:
        rows = list(csv.DictReader(fh))
    assert [r["structure"] for r in rows] == ["lifo", "linear"]
    assert (tmp_path / "b.gp").exists()


def test_bench_unknown_structure(capsys):
    assert main(["bench", "--structure", "heap", "--capacity", "8"]) == 2
    assert "unknown structure" in capsys.readouterr().err


def test_verify(capsys):
    assert main(["verify", "--structure", "lifo", "--trials", "2"]) == 0
    assert "lifo: PASS" in capsys.readouterr().out
