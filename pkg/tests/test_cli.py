import csv
import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

import golden
from gv4calc.cli import CommandRequest, RequestError, ResultRecord, dispatch, main, sweep_params
from gv4calc.localized import LocalizedRat
from gv4calc.series import QSeries


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_local_curve_single_case_emits_expressions(capsys):
    code, out, _ = run(capsys, "local-curve", "verify", "--l1", "8", "--l2", "6")
    assert code == 0
    rec, summary = [json.loads(line) for line in out.splitlines()]
    assert rec["verified"] and summary["exit_status"] == "verified"
    assert LocalizedRat.from_json(rec["dt4_1"]) == golden.DT4_1
    assert LocalizedRat.from_json(rec["dt4_2"]) == golden.DT4_2
    assert LocalizedRat.from_json(rec["gw2"]) == golden.GW2
    assert set(rec["expressions"]) == {"dt4_1", "dt4_2", "gw2"}


def test_raw_triple_is_normalized_with_notice(capsys):
    code, out, err = run(capsys, "local-curve", "verify", "--l1", "-3", "--l2", "2", "--l3", "-1")
    assert code == 0
    rec = json.loads(out.splitlines()[0])
    assert (rec["l1"], rec["l2"], rec["l3"]) == (2, -1, -3)
    assert rec["raw"] == [-3, 2, -1]
    assert "normalized" in err


def test_invalid_input_exit_code(capsys):
    assert run(capsys, "local-curve", "verify", "--l1", "1", "--l2", "1", "--l3", "1")[0] == 2
    assert run(capsys, "local-curve", "verify", "--l1", "1")[0] == 2
    assert run(capsys, "local-surface", "p2", "--degree", "5")[0] == 2
    assert run(capsys, "series", "p0", "--n1", '{"1": "1/2"}', "--order", "3")[0] == 2
    assert run(capsys, "invert", "cy3", "--data", "[1, 2]")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 2


def test_failed_check_exit_code(capsys):
    code, out, err = run(capsys, "invert", "check", "--gw", '{"1": "1", "2": "1"}',
                         "--dt4", '{"1": "1"}', "--power", "3")
    assert code == 1
    assert json.loads(out.splitlines()[-1])["exit_status"] == "failed"
    assert err


def test_range_sweep_csv(capsys):
    code, out, _ = run(capsys, "local-curve", "verify", "--range", "2", "--output-format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == ["l1", "l2", "l3", "verified", "wall_time_ms"]
    assert len(rows) == len(sweep_params(2))
    assert all(r["verified"] == "True" for r in rows)


def test_output_identical_across_parallelism(capsys, monkeypatch):
    _, serial, _ = run(capsys, "local-curve", "verify", "--range", "3", "--full")
    _, again, _ = run(capsys, "local-curve", "verify", "--range", "3", "--full")
    monkeypatch.setenv("GV4CALC_WORKERS", "3")
    _, parallel, _ = run(capsys, "local-curve", "verify", "--range", "3", "--full")
    assert serial == again == parallel


def test_env_workers_override(monkeypatch):
    from gv4calc.cli import build_parser, request_from_args
    monkeypatch.setenv("GV4CALC_WORKERS", "4")
    req = request_from_args(build_parser().parse_args(["elliptic", "c3", "--workers", "1"]))
    assert req.parallelism == 4
    with pytest.raises(RequestError):
        dispatch(CommandRequest("elliptic", "c3", parallelism=0))


def test_series_eta(capsys):
    code, out, _ = run(capsys, "series", "eta", "--exponent", "-12", "--order", "4", "--output-format", "human")
    assert code == 0
    assert out.splitlines()[0] == "1, 12, 90, 520, 2535"
    _, out, _ = run(capsys, "series", "eta", "--exponent", "-12", "--order", "4")
    s = QSeries.from_json(json.loads(out.splitlines()[0]))
    assert list(s.coeffs) == [1, 12, 90, 520, 2535]


def test_series_other_actions():
    rec = dispatch(CommandRequest("series", "macmahon", {"order": 5}))
    assert rec.results[0]["coeffs"] == ["1/1", "1/1", "3/1", "6/1", "13/1", "24/1"]
    rec = dispatch(CommandRequest("series", "p0", {"n1": '{"1": "1"}', "order": 5}))
    assert rec.results[0]["coeffs"][5] == "24/1"
    rec = dispatch(CommandRequest("series", "nnb", {"dt3": '{"1": "4", "2": "1"}', "n": 0, "d": 2}))
    assert Fraction(rec.results[0]["N"]) == 2


def test_invert_actions():
    rec = dispatch(CommandRequest("invert", "kp", {"n": 1, "data": '{"1": "1", "2": "1/4"}'}))
    assert rec.results[0] == {"1": "1/1", "2": "0/1"}
    rec = dispatch(CommandRequest("invert", "cy3", {"data": '{"1": "24", "2": "27"}'}))
    assert rec.results[0] == {"1": "24/1", "2": "24/1"}


def test_local_surface_and_elliptic():
    rec = dispatch(CommandRequest("local-surface", "p2", {"degree": 3}))
    assert abs(Fraction(rec.results[0]["value"])) == 1
    rec = dispatch(CommandRequest("local-surface", "p1xp1", {}))
    assert rec.results[0]["V_rank"] == 8
    rec = dispatch(CommandRequest("elliptic", "c3", {}))
    assert rec.exit_status == "verified"
    assert abs(Fraction(rec.results[0]["B.c3"])) == 960


def test_failed_record_needs_diagnostic():
    with pytest.raises(ValueError):
        ResultRecord({}, [], "failed")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "gv4calc", "elliptic", "c3", "--output-format", "human"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "status: verified" in proc.stdout
