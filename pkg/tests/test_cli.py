import csv
import io
import json
from fractions import Fraction as F

import pytest

from riskodds.cli import EXIT_FAILED, EXIT_OK, EXIT_USAGE, main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_engagement_rational_over_outcome_count():
    code, text = run("engagement", "-m", "3", "-n", "2", "-a", "6", "-d", "6", "-k", "2", "--format", "rational")
    assert code == EXIT_OK
    lines = text.split()
    for value in ("2890/7776", "2611/7776", "2275/7776"):
        assert value in lines


def test_engagement_sure_defence():
    code, text = run("engagement", "-m", "1", "-n", "1", "-a", "1", "-d", "1", "-k", "1", "--format", "json")
    assert code == EXIT_OK
    assert json.loads(text) == [{"l": 1, "prob": "0/1"}, {"l": 0, "prob": "1/1"}]


def test_engagement_verify_agrees():
    code, text = run("engagement", "-m", "2", "-n", "2", "-a", "6", "-d", "10", "-k", "2", "--verify")
    assert code == EXIT_OK
    assert "false" not in text


def test_engagement_verify_reports_mismatch(monkeypatch):
    import riskodds.cli as cli
    from riskodds.engagement import LossDistribution

    real = cli.enumerate_engagement

    def skewed(rule):
        probs = dict(real(rule).probs)
        probs[0], probs[1] = probs[1], probs[0]
        return LossDistribution(rule, probs)

    monkeypatch.setattr(cli, "enumerate_engagement", skewed)
    code, _ = run("engagement", "-m", "2", "-n", "2", "-k", "2", "--verify")
    assert code == EXIT_FAILED


@pytest.mark.parametrize(
    "argv",
    [
        ("engagement", "-m", "3", "-n", "3", "-k", "3"),
        ("engagement", "-m", "1", "-n", "2", "-k", "2"),
        ("battle", "-A", "1", "-D", "3"),
        ("battle", "-A", "50", "-D", "50", "--exact"),
        ("battle", "-A", "50", "-D", "50", "--format", "rational"),
        ("threshold", "-D", "5", "-t", "0"),
        ("threshold", "-D", "5", "-t", "100"),
        ("dist", "-M", "0"),
        ("dist", "-M", "2", "--model", "1/2,1/2"),
        ("table", "vcac", "--format", "rational"),
    ],
)
def test_invalid_arguments_exit_2(argv):
    assert run(*argv)[0] == EXIT_USAGE


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["battle", "-A", "ten", "-D", "3"], out=io.StringIO())
    assert exc.value.code == EXIT_USAGE
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"], out=io.StringIO())
    assert exc.value.code == EXIT_USAGE


def test_battle_examples():
    _, text = run("battle", "-A", "10", "-D", "9", "--format", "json")
    report = json.loads(text)
    assert abs(float(F(report["vc_exact_strict"])) - 0.513) <= 0.002
    _, text = run("battle", "-A", "100", "-D", "90", "--format", "json")
    report = json.loads(text)
    assert abs(report["vc"] - 0.923) <= 0.002
    assert report["clt_ok"] is True


def test_battle_rational_two_vs_one():
    code, text = run("battle", "-A", "2", "-D", "1", "--format", "rational")
    assert code == EXIT_OK
    row = next(line for line in text.splitlines() if line.strip().startswith("ac_exact"))
    assert row.split()[-1] == "5/12"
    assert F(row.split()[-1]) == F(15, 36)


def test_battle_table_has_banner_and_four_decimals():
    code, text = run("battle", "-A", "10", "-D", "9")
    assert code == EXIT_OK
    assert text.startswith("riskodds ")
    row = next(line for line in text.splitlines() if line.strip().startswith("vc_exact_strict"))
    assert row.split()[-1] == "0.5136"


@pytest.mark.parametrize("dfn, target, mode, expected", [(6, 50, "ac", 7), (2, 20, "ac", 3), (15, 80, "vc", 20)])
def test_threshold_examples(dfn, target, mode, expected):
    code, text = run("threshold", "-D", str(dfn), "-t", str(target), "--mode", mode)
    assert code == EXIT_OK
    assert text.strip() == str(expected)


def _threshold(dfn, target, mode="ac"):
    return int(run("threshold", "-D", str(dfn), "-t", str(target), "--mode", mode)[1])


def test_threshold_monotone():
    for mode in ("ac", "vc"):
        values = [_threshold(7, t, mode) for t in (15, 35, 55, 75, 95)]
        assert values == sorted(values)
        values = [_threshold(d, 45, mode) for d in range(1, 12)]
        assert values == sorted(values)


def test_table_vcac_csv_shape_and_monotone():
    code, text = run("table", "vcac", "--format", "csv")
    assert code == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(text)))
    assert len(rows) == 28
    percents = [c for c in rows[0] if c.endswith("%")]
    for row in rows:
        values = [int(row[c]) for c in percents]
        assert values == sorted(values)
    for kind in ("VC", "AC"):
        for c in percents:
            column = [int(r[c]) for r in rows if r["odds"] == kind]
            assert column == sorted(column)


def test_table_vcac_diff_is_a_finding():
    code, text = run("table", "vcac", "--diff")
    assert code == EXIT_OK
    assert "18 of 196 cells differ" in text
    code, text = run("table", "vcac", "--diff", "--format", "json")
    payload = json.loads(text)
    assert payload["cells"] == 196
    assert len(payload["mismatches"]) == 18
    for cell in payload["mismatches"]:
        assert F(cell["odds_at_computed"]) >= F(cell["percent"], 100) > F(cell["odds_at_published"])


def test_table_engagement():
    code, text = run("table", "engagement", "-a", "6", "-d", "6", "--format", "rational")
    assert code == EXIT_OK
    assert "5/12" in text.split()
    code, text = run("table", "engagement", "-a", "1", "-d", "1", "--format", "json")
    rows = json.loads(text)
    assert len(rows) == 14
    for row in rows:
        assert F(row["prob"]) == (1 if row["l"] == 0 else 0)


def test_dist_columns():
    code, text = run("dist", "-M", "8")
    assert code == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(text)))
    assert list(rows[0]) == ["M", "j", "prob", "tail"]
    for M in range(1, 9):
        total = sum(float(r["prob"]) for r in rows if int(r["M"]) == M)
        assert abs(total - 1) <= 1e-12
    first = {int(r["j"]): float(r["prob"]) for r in rows if r["M"] == "1"}
    assert first == {0: 2275 / 7776, 1: 2611 / 7776, 2: 2890 / 7776}


def test_dist_explicit_model():
    _, text = run("dist", "-M", "2", "--model", "1/3,1/3,1/3", "--format", "rational")
    assert "1/9" in text.split()


def test_json_round_trip_is_exact():
    from riskodds.report import battle_report

    report = battle_report(100, 90)
    payload = json.loads(run("battle", "-A", "100", "-D", "90", "--format", "json")[1])
    assert payload["vc_exact_strict"] == report.vc_exact_strict
    assert payload["vc_normal"] == report.vc_normal
    exact = battle_report(12, 9)
    payload = json.loads(run("battle", "-A", "12", "-D", "9", "--format", "json")[1])
    assert F(payload["ac_exact"]) == exact.ac_exact


@pytest.mark.parametrize(
    "argv",
    [
        ("battle", "-A", "30", "-D", "20", "--format", "csv"),
        ("table", "engagement", "--format", "json"),
        ("dist", "-M", "5"),
    ],
)
def test_output_is_deterministic(argv):
    assert run(*argv) == run(*argv)


def test_verify_engagement_scope():
    code, text = run("verify", "engagement")
    assert code == EXIT_OK
    assert text.startswith("[engagement]")
