from __future__ import annotations

import csv

from cpc.cli import main


def _run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_no_arguments_is_usage_error(capsys):
    code, _, _ = _run(capsys, *[])
    assert code == 2


def test_unknown_subcommand(capsys):
    code, _, _ = _run(capsys, "frobnicate")
    assert code == 2


def test_verify_good_fixture(capsys, fixture_dir):
    code, out, _ = _run(capsys, "verify", str(fixture_dir / "11-3-3.cpc"))
    assert code == 0
    assert out.strip() == "single-error correcting: yes, distance: 3"


def test_verify_flawed_fixture(capsys, fixture_dir):
    code, out, _ = _run(capsys, "verify", str(fixture_dir / "11-3-1.cpc"))
    assert code == 1
    assert "single-error correcting: no" in out
    assert "Z_b1" in out and "Z_p4" in out


def test_verify_general_fixture(capsys, fixture_dir):
    code, out, _ = _run(capsys, "verify", str(fixture_dir / "10-3-3.cpc"))
    assert code == 0 and "distance: 3" in out


def test_missing_file_is_input_error(capsys):
    code, _, err = _run(capsys, "verify", "no-such-file.cpc")
    assert code == 2 and "error" in err


def test_malformed_file_is_input_error(tmp_path, capsys):
    bad = tmp_path / "bad.cpc"
    bad.write_text("CPC split\ndata 1\nbit 1\nphase 0\nB\n2\nP\nC\n", encoding="utf-8")
    code, _, err = _run(capsys, "verify", str(bad))
    assert code == 2


def test_stabilizers_output(capsys, fixture_dir):
    code, out, _ = _run(capsys, "stabilizers", str(fixture_dir / "11-3-3.cpc"))
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 8
    assert "Z d1 d2 b1 p2 p4" in lines


def test_logicals_output(capsys, fixture_dir):
    code, out, _ = _run(capsys, "logicals", str(fixture_dir / "11-3-3.cpc"))
    assert code == 0
    assert "X d1 b1 b3" in out


def test_distance_command(capsys, fixture_dir):
    code, out, _ = _run(capsys, "distance", str(fixture_dir / "6-3-1.cpc"))
    assert code == 0 and out.strip() == "distance: 1"


def test_error_table_tsv(capsys, fixture_dir):
    code, out, _ = _run(capsys, "error-table", str(fixture_dir / "11-3-3.cpc"))
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "error\tsyndrome\tclass"
    assert "X_d1\t10100000\tcorrected" in lines
    assert len(lines) == 1 + 33


def test_decode_table_tsv(capsys, fixture_dir):
    code, out, _ = _run(capsys, "decode-table", str(fixture_dir / "11-3-3.cpc"))
    assert code == 0
    lines = out.strip().splitlines()
    assert "00110000\tcorrected\tX_d1 X_d2" in lines
    assert any(line.startswith("00000000\tno_error") for line in lines)


def test_decode_table_flawed_exits_one(capsys, fixture_dir):
    code, _, err = _run(capsys, "decode-table", str(fixture_dir / "11-3-1.cpc"))
    assert code == 1 and "not single-error correcting" in err


def test_cpc_to_css_and_back(tmp_path, capsys, fixture_dir):
    css_path = tmp_path / "pair.css"
    code, _, _ = _run(capsys, "cpc-to-css", str(fixture_dir / "11-3-3.cpc"), "--out", str(css_path))
    assert code == 0
    text = css_path.read_text(encoding="utf-8")
    assert text.startswith("CSS\nGZ\n")
    out_cpc = tmp_path / "round.cpc"
    code, _, _ = _run(capsys, "css-to-cpc", str(css_path), "--out", str(out_cpc))
    assert code == 0
    assert "CPC split" in out_cpc.read_text(encoding="utf-8")


def test_css_to_cpc_steane(capsys, fixture_dir):
    code, out, _ = _run(capsys, "css-to-cpc", str(fixture_dir / "steane.css"))
    assert code == 0
    assert "data 1" in out and "# column permutation:" in out


def test_ising_output(capsys, fixture_dir):
    code, out, _ = _run(
        capsys, "ising", str(fixture_dir / "6-3-1.cpc"), "--syndrome", "011", "--p-bit", "0.1"
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("field 0 -2.19722")
    assert any(l.startswith("check 0 1 ") for l in lines)
    # fired checks flip the coefficient sign to positive
    coeffs = [float(l.split()[-1]) for l in lines if l.startswith("check")]
    assert sorted(c > 0 for c in coeffs) == [False, True, True]


def test_ising_syndrome_length_check(capsys, fixture_dir):
    code, _, err = _run(
        capsys, "ising", str(fixture_dir / "6-3-1.cpc"), "--syndrome", "0110"
    )
    assert code == 2


def test_simulate_and_fit_round_trip(tmp_path, capsys, fixture_dir):
    csv_path = tmp_path / "series.csv"
    code, _, _ = _run(
        capsys,
        "simulate",
        str(fixture_dir / "6-3-1.cpc"),
        "--eps-bit", "2.0",
        "--rate", "10",
        "--t-max", "4",
        "--trials", "40",
        "--haar-states", "4",
        "--samples", "8",
        "--seed", "3",
        "--out", str(csv_path),
    )
    assert code == 0
    with open(csv_path, newline="", encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    assert rows[0]["time_s"] == "0"
    assert float(rows[0]["Frand"]) == 1.0
    assert set(rows[0]) == {
        "time_s", "F0", "F0_err", "Fplus", "Fplus_err", "Frand", "Frand_err"
    }
    code, out, _ = _run(capsys, "fit", str(csv_path), "--metric", "F0")
    assert code == 0
    assert "lambda_half:" in out


def test_search_command_writes_codes(tmp_path, capsys):
    out_dir = tmp_path / "hits"
    code, out, _ = _run(
        capsys,
        "search",
        "--data", "3", "--bit", "4", "--phase", "4",
        "--budget", "3000", "--seed", "2", "--out", str(out_dir),
    )
    assert code == 0
    assert "successes=" in out
    written = sorted(out_dir.glob("*.cpc"))
    assert written, "expected at least one found code"
    # determinism: same invocation reproduces the same files
    first = written[0].read_text(encoding="utf-8")
    code, _, _ = _run(
        capsys,
        "search",
        "--data", "3", "--bit", "4", "--phase", "4",
        "--budget", "3000", "--seed", "2", "--out", str(out_dir), "--threads", "4",
    )
    assert written[0].read_text(encoding="utf-8") == first


def test_emit_circuit(capsys, fixture_dir):
    code, out, _ = _run(capsys, "emit-circuit", str(fixture_dir / "11-3-3.cpc"))
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "qubits 11"
    assert len(lines) == 1 + 22
    assert lines[1].startswith("CNOT ")


def test_logical_h_command(capsys, fixture_dir):
    code, out, _ = _run(
        capsys, "logical-h", str(fixture_dir / "11-3-3.cpc"), "--qubit", "0"
    )
    assert code == 0
    assert "H 0" in out and "CCZX" in out and "CZ " in out


def test_logical_cnot_command(capsys, fixture_dir):
    code, out, _ = _run(
        capsys,
        "logical-cnot", str(fixture_dir / "11-3-3.cpc"),
        "--control", "0", "--target", "1",
    )
    assert code == 0
    assert out.splitlines()[1] == "CNOT 0 1"


def test_logical_h_on_general_code_is_input_error(capsys, fixture_dir):
    code, _, err = _run(
        capsys, "logical-h", str(fixture_dir / "10-3-3.cpc"), "--qubit", "0"
    )
    assert code == 2


def test_effective_listing_split(capsys, fixture_dir):
    code, out, _ = _run(capsys, "effective", str(fixture_dir / "11-3-3.cpc"))
    assert code == 0
    assert "bit-flip code:" in out and "phase code:" in out
    assert "  check 1: d1 d2 p2 p4" in out
    assert "harmless: p4" in out


def test_effective_listing_general(capsys, fixture_dir):
    code, out, _ = _run(capsys, "effective", str(fixture_dir / "10-3-3.cpc"))
    assert code == 0
    assert "combined code:" in out and "c7.phase" in out
