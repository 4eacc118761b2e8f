"""End-to-end CLI behaviour: commands, formats, and the exit-code contract."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np
import pytest

from ivprob import parse_document
from ivprob.cli import main

FIXTURES = Path(__file__).parent / "fixtures"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


# --------------------------------------------------------------- validate ---


def test_validate_ok(capsys):
    code, out, err = run(capsys, "validate", FIXTURES / "db_d.json")
    assert code == 0
    assert out.strip() == "OK"


def test_validate_reports_violations(capsys):
    code, out, err = run(capsys, "validate", FIXTURES / "bad_lower_gt_upper.json")
    assert code == 1
    assert "x1" in out


def test_validate_malformed_document(capsys):
    code, out, err = run(capsys, "validate", FIXTURES / "malformed.json")
    assert code == 2
    assert "error" in err


def test_missing_file_is_usage_error(capsys):
    code, out, err = run(capsys, "validate", FIXTURES / "no_such_file.json")
    assert code == 2


# ----------------------------------------------------------------- extend ---


def test_extend_interval_database_matches_fixture_bytes(capsys):
    code, out, err = run(capsys, "extend", FIXTURES / "db_i.json")
    assert code == 0
    assert out == (FIXTURES / "ei_star.json").read_text()


def test_extend_real_database_gives_joint_intervals(capsys):
    code, out, err = run(capsys, "extend", FIXTURES / "db_d.json")
    assert code == 0
    doc = parse_document(out)
    np.testing.assert_allclose(doc.lower, [0.3, 0.1, 0.0, 0.0], atol=1e-9)
    np.testing.assert_allclose(doc.upper, [0.6, 0.4, 0.3, 0.3], atol=1e-9)


def test_extend_inconsistent_database(capsys):
    code, out, err = run(capsys, "extend", FIXTURES / "inconsistent_db.json")
    assert code == 1
    assert "error" in err


# ---------------------------------------------------------------- project ---


def test_project_extension_onto_xz(capsys):
    code, out, err = run(capsys, "project", FIXTURES / "ei_star.json", "--onto", "X,Z")
    assert code == 0
    doc = parse_document(out)
    np.testing.assert_allclose(doc.lower, [0.2, 0.0, 0.0, 0.0], atol=1e-9)
    np.testing.assert_allclose(doc.upper, [0.7, 0.7, 0.3, 0.3], atol=1e-9)


def test_project_abc_onto_ab(capsys):
    code, out, err = run(capsys, "project", FIXTURES / "abc_i.json", "--onto", "A,B")
    assert code == 0
    doc = parse_document(out)
    np.testing.assert_allclose(doc.lower, [0.48, 0.08, 0.08, 0.28], atol=1e-9)
    np.testing.assert_allclose(doc.upper, [0.52, 0.12, 0.12, 0.32], atol=1e-9)


def test_project_onto_all_variables_echoes_tight_input(capsys):
    code, out, err = run(capsys, "project", FIXTURES / "ei_star.json", "--onto", "X,Y,Z")
    assert code == 0
    assert out == (FIXTURES / "ei_star.json").read_text()


def test_project_unknown_variable(capsys):
    code, out, err = run(capsys, "project", FIXTURES / "abc_i.json", "--onto", "A,Q")
    assert code == 2


def test_project_requires_database_free_input(capsys):
    code, out, err = run(capsys, "project", FIXTURES / "db_d.json", "--onto", "X")
    assert code == 2  # a multi-table document is not a single distribution


# ------------------------------------------------------------ reconstruct ---


def test_reconstruct_known_scheme(capsys):
    code, out, err = run(
        capsys, "reconstruct", FIXTURES / "abc_i.json", "--scheme", "A,B|B,C"
    )
    assert code == 0
    doc = parse_document(out)
    np.testing.assert_allclose(
        doc.lower, [0.16, 0.16, 0.0, 0.0, 0.0, 0.0, 0.06, 0.06], atol=1e-9
    )
    np.testing.assert_allclose(
        doc.upper, [0.32, 0.32, 0.12, 0.12, 0.12, 0.12, 0.22, 0.22], atol=1e-9
    )


def test_reconstruct_bad_scheme_syntax(capsys):
    with pytest.raises(SystemExit) as exc:
        run(capsys, "reconstruct", FIXTURES / "abc_i.json", "--scheme", "A,|B")
    assert exc.value.code == 2


# ---------------------------------------------------- measures and maxent ---


def test_measure_u0_degenerate(capsys):
    code, out, err = run(capsys, "measure", FIXTURES / "abc_mid.json", "u0")
    assert code == 0
    assert out.strip() == "0.000000000"


def test_measure_u0_interval(capsys):
    code, out, err = run(capsys, "measure", FIXTURES / "abc_i.json", "u0")
    assert code == 0
    assert out.strip() == "0.020000000"


def test_measure_u1_and_u2_run(capsys):
    code, u1_out, _ = run(capsys, "measure", FIXTURES / "abc_i.json", "u1")
    assert code == 0
    code, u2_out, _ = run(capsys, "measure", FIXTURES / "abc_i.json", "u2")
    assert code == 0
    assert float(u2_out) <= float(u1_out) + 1e-9


def test_measure_invalid_distribution(capsys):
    code, out, err = run(capsys, "measure", FIXTURES / "bad_lower_gt_upper.json", "u0")
    assert code == 1
    assert "error" in err


def test_distance_between_input_and_reconstruction(capsys, tmp_path):
    code, recon_text, _ = run(
        capsys, "reconstruct", FIXTURES / "abc_i.json", "--scheme", "A,B|B,C"
    )
    assert code == 0
    recon_file = tmp_path / "recon.json"
    recon_file.write_text(recon_text)
    code, out, err = run(capsys, "distance", FIXTURES / "abc_i.json", recon_file)
    assert code == 0
    assert out.strip() == "0.120000000"


def test_maxent_fit(capsys):
    code, out, err = run(capsys, "maxent", FIXTURES / "db_d.json")
    assert code == 0
    doc = parse_document(out)
    np.testing.assert_allclose(doc.lower, [0.42, 0.28, 0.18, 0.12], atol=1e-9)
    assert doc.is_degenerate


def test_mvd_conditional_independence(capsys):
    code, out, err = run(
        capsys, "mvd", FIXTURES / "abc_mid.json", "--w", "C", "--u", "B"
    )
    assert code == 0
    assert out.strip() == "0.000000000"
    code, out, err = run(
        capsys, "mvd", FIXTURES / "abc_mid.json", "--w", "B", "--u", "C"
    )
    assert code == 0
    assert float(out) > 0.01


def test_mvd_without_conditioning_set(capsys):
    code, out, err = run(capsys, "mvd", FIXTURES / "abc_mid.json", "--w", "B")
    assert code == 0
    assert float(out) >= 0.0


# ------------------------------------------------------------------- rank ---


def test_rank_known_schemes_in_order(capsys):
    code, out, err = run(
        capsys,
        "rank",
        FIXTURES / "abc_i.json",
        "--schemes",
        "A,C|B,C",
        "A,B|B,C",
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "A,B|B,C\t0.120000000"
    assert lines[1] == "A,C|B,C\t0.210000000"


def test_rank_enumerate_is_deterministic(capsys):
    outputs = set()
    for _ in range(3):
        code, out, err = run(
            capsys, "rank", FIXTURES / "abc_i.json", "--enumerate", "2"
        )
        assert code == 0
        outputs.add(out)
    assert len(outputs) == 1
    only = outputs.pop()
    assert "A,B|B,C\t" in only
    assert "A,C|B,C\t" in only
    losses = [float(line.split("\t")[1]) for line in only.splitlines()]
    assert losses == sorted(losses)


def test_rank_requires_scheme_source(capsys):
    with pytest.raises(SystemExit) as exc:
        run(capsys, "rank", FIXTURES / "abc_i.json")
    assert exc.value.code == 2


# ---------------------------------------------------------------- formats ---


def test_table_format_output(capsys):
    code, out, err = run(
        capsys, "extend", FIXTURES / "db_d.json", "--format", "table"
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split() == ["X", "Y", "p"]
    assert len(lines) == 5
    assert "x1" in lines[1]


def test_json_output_is_parseable_json(capsys):
    code, out, err = run(capsys, "maxent", FIXTURES / "db_d.json")
    payload = json.loads(out)
    assert "table" in payload


def test_unknown_command_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate", "x.json"])
    assert exc.value.code == 2
