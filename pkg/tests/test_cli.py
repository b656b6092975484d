import math

import pytest

from vnge.cli import main
from vnge.generators import ModelSpec, generate
from vnge.io import write_edge_list


@pytest.fixture
def files(tmp_path):
    def make(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return make


def rows(capsys):
    lines = capsys.readouterr().out.strip().splitlines()
    header = lines[0].split(",")
    return [dict(zip(header, line.split(","))) for line in lines[1:]]


def test_entropy_all_on_triangle(files, capsys):
    assert main(["entropy", files("k3.txt", "a b\nb c\nc a\n"), "--no-timing"]) == 0
    out = {r["kind"]: float(r["value"]) for r in rows(capsys)}
    assert out["exact"] == pytest.approx(math.log(2), abs=1e-12)
    assert out["hat"] == pytest.approx(0.5 * math.log(2), abs=1e-12)
    assert out["tilde"] == pytest.approx(-0.5 * math.log(2 / 3), abs=1e-12)
    assert out["bound_lower"] == pytest.approx(math.log(2)) == out["bound_upper"]


def test_exit_codes(files, tmp_path, capsys):
    assert main(["entropy", files("empty.txt", "# nothing\n")]) == 2
    assert main(["entropy", str(tmp_path / "missing.txt")]) == 2
    assert main(["entropy", files("k3.txt", "a b\nb c\nc a\n"), "--kind", "exact",
                 "--oracle-cap", "2"]) == 4
    assert main(["entropy", files("edge.txt", "a b\n"), "--kind", "hat"]) == 3
    with pytest.raises(SystemExit) as info:
        main(["entropy"])
    assert info.value.code == 2


def test_jsdist_identity_and_symmetry(files, capsys):
    k3, p3 = files("k3.txt", "a b\nb c\nc a\n"), files("p3.txt", "a b\nb c\n")
    main(["jsdist", k3, k3, "--kind", "exact", "--no-timing"])
    assert float(rows(capsys)[0]["distance"]) == pytest.approx(0.0, abs=1e-7)
    main(["jsdist", k3, p3, "--kind", "exact", "--no-timing"])
    d1 = rows(capsys)[0]["divergence"]
    main(["jsdist", p3, k3, "--kind", "exact", "--no-timing"])
    d2 = rows(capsys)[0]["divergence"]
    assert d1 == d2
    assert float(d1) == pytest.approx(0.045270504419879606, abs=1e-12)


def test_stream(files, capsys):
    p3 = files("p3.txt", "a b\nb c\n")
    assert main(["stream", p3, files("none.txt", "# empty\n"), "--no-timing"]) == 0
    assert capsys.readouterr().out == "step,H_tilde,Q,jsdist,divergence,wall_time_ns\n"
    assert main(["stream", p3, files("s.txt", "1 A a c\n"), "--no-timing"]) == 0
    (row,) = rows(capsys)
    assert float(row["H_tilde"]) == pytest.approx(-0.5 * math.log(2 / 3), abs=1e-12)
    assert float(row["divergence"]) == pytest.approx(0.0057426276037795873, abs=1e-12)


def test_stream_failure_names_step(files, capsys):
    code = main(["stream", files("p3.txt", "a b\nb c\n"), files("s.txt", "1 A a c\n7 M a b -3\n")])
    assert code == 3
    assert "step 7" in capsys.readouterr().err


def test_bench_rows_per_kind(capsys):
    assert main(["bench", "--n", "120", "--avg-degree", "6", "--no-timing"]) == 0
    out = rows(capsys)
    assert [r["kind"] for r in out] == ["hat", "tilde"]
    assert out[0]["time_exact"] == "" and float(out[0]["SAE"]) < float(out[1]["SAE"])


def test_anomaly_identical_graphs_score_zero(files, capsys):
    g = files("g.txt", "a b\nb c\nc d\nd a\na c\n")
    main(["anomaly", "--graphs", g, g, g, "--methods", "js_fast,ged,veo,lambda_lap,hellinger_deg",
          "--no-timing"])
    scores = [float(r["score"]) for r in rows(capsys) if r["score"]]
    assert scores and all(abs(s) < 1e-7 for s in scores)


def test_anomaly_reference_correlation(files, capsys):
    seq = [files(f"g{i}.txt", "a b\nb c\nc a\n" + "a d\n" * (i > 0) + "b d\n" * (i > 1)
                 + "c d\n" * (i > 2)) for i in range(4)]
    ref = files("ref.txt", "1\n4\n9\n")
    assert main(["anomaly", "--graphs", *seq, "--methods", "ged", "--reference", ref]) == 0
    out = rows(capsys)
    (summary,) = [r for r in out if r["record"] == "summary"]
    # ged series (2, 1, 1) against (1, 4, 9), worked by hand
    assert float(summary["pcc"]) == pytest.approx(-33 / 42, abs=1e-12)
    assert float(summary["srcc"]) == pytest.approx(-math.sqrt(3) / 2, abs=1e-12)


def test_anomaly_dos_detects(capsys):
    assert main(["anomaly", "--inject-dos", "10", "--trials", "2", "--methods", "js_fast",
                 "--n", "300"]) == 0
    (row,) = rows(capsys)
    assert float(row["detection_rate"]) == 1.0


def test_determinism(tmp_path, capsys):
    g = generate(ModelSpec("er", 150, 8, seed=1))
    path = tmp_path / "g.txt"
    write_edge_list(g, str(path))
    outs = []
    for _ in range(2):
        main(["entropy", str(path), "--no-timing"])
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]
