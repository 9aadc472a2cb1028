"""End-to-end command-line behavior, including exit codes."""

import io
import json
from fractions import Fraction as F

import pytest

from mvkraw import cli, kappa


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_kappa(tmp_path, k, name="kappa.json"):
    path = tmp_path / name
    path.write_text(json.dumps(kappa.to_json_dict(k)))
    return str(path)


@pytest.fixture
def milch2_file(tmp_path):
    return write_kappa(
        tmp_path, kappa.family_milch([F(1, 2), F(1, 4), F(1, 4)]), "milch2.json"
    )


@pytest.fixture
def classical_file(tmp_path):
    return write_kappa(
        tmp_path, kappa.griffiths_from_p([F(1, 2), F(1, 2)]), "classical.json"
    )


class TestParamsVerbs:
    def test_family_ds(self, capsys):
        code, out, _ = run(capsys, "params-family", "--family", "ds", "--q", "2", "--d", "2")
        assert code == 0
        obj = json.loads(out)
        assert obj["p"] == ["1/4", "1/4", "1/2"]
        assert obj["d"] == 2

    def test_family_milch_to_file(self, capsys, tmp_path):
        out_path = tmp_path / "k.json"
        code, out, _ = run(
            capsys,
            "params-family", "--family", "milch", "--p", "1/3,2/3",
            "--output", str(out_path),
        )
        assert code == 0 and out == ""
        obj = json.loads(out_path.read_text())
        assert obj["nu"] == "3"

    def test_griffiths(self, capsys):
        code, out, _ = run(capsys, "params-griffiths", "--p", "1/2,1/2")
        assert code == 0
        obj = json.loads(out)
        assert obj["u"] == [["1", "1"], ["1", "-1"]]

    def test_validate_file(self, capsys, milch2_file):
        code, out, _ = run(capsys, "params-validate", "--input", milch2_file)
        assert code == 0
        assert json.loads(out)["d"] == 2

    def test_validate_stdin(self, capsys, monkeypatch):
        k = kappa.family_ds(F(2), 1)
        monkeypatch.setattr(
            "sys.stdin", io.StringIO(json.dumps(kappa.to_json_dict(k)))
        )
        code, out, _ = run(capsys, "params-validate", "--input", "-")
        assert code == 0

    def test_involute_swaps_weights(self, capsys, milch2_file):
        code, out, _ = run(capsys, "params-involute", "--kappa", milch2_file)
        assert code == 0
        obj = json.loads(out)
        orig = json.loads(open(milch2_file).read())
        assert obj["p"] == orig["pt"]
        assert obj["pt"] == orig["p"]

    def test_forbidden_family_params_exit_3(self, capsys):
        code, _, err = run(
            capsys, "params-family", "--family", "hoare-rahman",
            "--params", "1,1,1,1",
        )
        assert code == 3
        assert "1-p1-p2" in err

    def test_missing_family_args_exit_2(self, capsys):
        code, _, _ = run(capsys, "params-family", "--family", "hoare-rahman")
        assert code == 2
        code, _, _ = run(capsys, "params-family", "--family", "ds", "--q", "2")
        assert code == 2

    def test_invalid_set_exit_3(self, capsys, tmp_path):
        k = kappa.family_ds(F(2), 1)
        obj = kappa.to_json_dict(k)
        obj["nu"] = "7"  # breaks the defining identity
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(obj))
        code, _, err = run(capsys, "params-validate", "--input", str(path))
        assert code == 3

    def test_unreadable_input_exit_2(self, capsys, tmp_path):
        code, _, _ = run(
            capsys, "params-validate", "--input", str(tmp_path / "absent.json")
        )
        assert code == 2


class TestEval:
    def test_three_methods_agree(self, capsys, milch2_file):
        for method in ("hyper", "gen", "pairing"):
            code, out, _ = run(
                capsys,
                "eval", "--kappa", milch2_file, "--N", "2",
                "--m", "1,0", "--mt", "1,0", "--method", method,
            )
            assert code == 0
            assert out.strip() == "-1"

    def test_degree_bound_exit_2(self, capsys, milch2_file):
        code, _, err = run(
            capsys,
            "eval", "--kappa", milch2_file, "--N", "2",
            "--m", "2,1", "--mt", "0,0",
        )
        assert code == 2
        assert "exceeds" in err

    def test_bad_index_list_exit_2(self, capsys, milch2_file):
        code, _, _ = run(
            capsys,
            "eval", "--kappa", milch2_file, "--N", "2",
            "--m", "1,x", "--mt", "0,0",
        )
        assert code == 2


class TestCheck:
    def test_named_suites(self, capsys, milch2_file):
        code, out, _ = run(
            capsys,
            "check", "--kappa", milch2_file, "--N", "2",
            "--suite", "orthogonality,duality",
        )
        assert code == 0
        obj = json.loads(out)
        assert obj["pass"] is True
        assert [r["check"] for r in obj["reports"]] == ["orthogonality", "duality"]
        for r in obj["reports"]:
            assert set(r) == {"check", "kappa", "N", "pass", "failures", "details"}
            assert r["N"] == 2
            assert r["failures"] == []

    def test_default_runs_all_suites(self, capsys, classical_file):
        code, out, _ = run(capsys, "check", "--kappa", classical_file, "--N", "2")
        assert code == 0
        obj = json.loads(out)
        assert [r["check"] for r in obj["reports"]] == [
            "def11", "orthogonality", "duality", "recurrence", "universal",
            "commute", "lemma21", "lemma22", "norms", "adjacency",
            "transition", "threeway",
        ]

    def test_kappa_only_suite_reports_null_N(self, capsys, milch2_file):
        code, out, _ = run(
            capsys, "check", "--kappa", milch2_file, "--suite", "def11,lemma21"
        )
        assert code == 0
        obj = json.loads(out)
        assert all(r["N"] is None for r in obj["reports"])

    def test_lattice_suite_without_N_exit_2(self, capsys, milch2_file):
        code, _, err = run(
            capsys, "check", "--kappa", milch2_file, "--suite", "orthogonality"
        )
        assert code == 2
        assert "needs N" in err

    def test_unknown_suite_exit_2(self, capsys, milch2_file):
        code, _, _ = run(
            capsys, "check", "--kappa", milch2_file, "--N", "2",
            "--suite", "nonsense",
        )
        assert code == 2

    def test_needs_kappa_or_table_exit_2(self, capsys):
        code, _, _ = run(capsys, "check", "--N", "2")
        assert code == 2


class TestTableFlow:
    def test_table_then_check_reuses_it(self, capsys, milch2_file, tmp_path):
        tab_path = tmp_path / "table.json"
        code, _, _ = run(
            capsys,
            "table", "--kappa", milch2_file, "--N", "2",
            "--output", str(tab_path),
        )
        assert code == 0
        obj = json.loads(tab_path.read_text())
        assert obj["order"] == "grlex"
        assert len(obj["values"]) == 6

        # kappa and N come from the table when omitted
        code, out, _ = run(
            capsys,
            "check", "--table", str(tab_path), "--suite", "orthogonality,recurrence",
        )
        assert code == 0
        assert json.loads(out)["pass"] is True

    def test_corrupted_table_exit_1(self, capsys, milch2_file, tmp_path):
        tab_path = tmp_path / "table.json"
        run(capsys, "table", "--kappa", milch2_file, "--N", "2",
            "--output", str(tab_path))
        obj = json.loads(tab_path.read_text())
        obj["values"][1][2] = "9"
        tab_path.write_text(json.dumps(obj))
        code, out, _ = run(
            capsys, "check", "--table", str(tab_path), "--suite", "orthogonality"
        )
        assert code == 1
        report = json.loads(out)
        assert report["pass"] is False
        assert report["reports"][0]["failures"]

    def test_table_kappa_mismatch_exit_2(self, capsys, milch2_file, classical_file, tmp_path):
        tab_path = tmp_path / "table.json"
        run(capsys, "table", "--kappa", milch2_file, "--N", "2",
            "--output", str(tab_path))
        code, _, err = run(
            capsys,
            "check", "--kappa", classical_file, "--table", str(tab_path),
        )
        assert code == 2
        assert "disagree" in err

    def test_table_N_mismatch_exit_2(self, capsys, milch2_file, tmp_path):
        tab_path = tmp_path / "table.json"
        run(capsys, "table", "--kappa", milch2_file, "--N", "2",
            "--output", str(tab_path))
        code, _, err = run(
            capsys,
            "check", "--table", str(tab_path), "--N", "3",
            "--suite", "orthogonality",
        )
        assert code == 2
        assert "does not match" in err


class TestModes:
    def test_approx_eval(self, capsys, tmp_path):
        k = kappa.family_milch([F(1, 2), F(1, 4), F(1, 4)])
        obj = kappa.to_json_dict(k)
        path = tmp_path / "k.json"
        path.write_text(json.dumps(obj))
        code, out, _ = run(
            capsys,
            "--mode", "approx",
            "eval", "--kappa", str(path), "--N", "2",
            "--m", "1,0", "--mt", "1,0",
        )
        assert code == 0
        assert abs(float(out) + 1) < 1e-10

    def test_approx_check_passes(self, capsys, milch2_file):
        code, out, _ = run(
            capsys,
            "--mode", "approx", "--eps", "1e-10",
            "check", "--kappa", milch2_file, "--N", "2",
            "--suite", "orthogonality,recurrence,threeway",
        )
        assert code == 0
        assert json.loads(out)["pass"] is True

    def test_eps_requires_approx_exit_2(self, capsys, milch2_file):
        code, _, err = run(
            capsys,
            "--eps", "1e-8",
            "params-validate", "--input", milch2_file,
        )
        assert code == 2
        assert "approx" in err

    def test_bad_threads_exit_2(self, capsys, milch2_file):
        code, _, _ = run(
            capsys,
            "--threads", "0",
            "table", "--kappa", milch2_file, "--N", "2",
        )
        assert code == 2

    def test_threads_env(self, capsys, milch2_file, monkeypatch):
        monkeypatch.setenv("KRAW_THREADS", "3")
        code, out, _ = run(capsys, "table", "--kappa", milch2_file, "--N", "2")
        assert code == 0
        assert json.loads(out)["N"] == 2


class TestStencil:
    def test_dump_universal(self, capsys, milch2_file):
        code, out, _ = run(
            capsys,
            "stencil", "--kappa", milch2_file, "--N", "2",
            "--operator", "universal",
        )
        assert code == 0
        obj = json.loads(out)
        assert obj["operator"] == "universal"
        assert len(obj["terms"]) == 7

    def test_bad_generator_index_exit_2(self, capsys, milch2_file):
        code, _, _ = run(
            capsys,
            "stencil", "--kappa", milch2_file, "--N", "2", "--i", "0",
        )
        assert code == 2


class TestParser:
    def test_no_verb_exit_2(self, capsys):
        assert run(capsys, )[0] == 2

    def test_help_exit_0(self, capsys):
        assert run(capsys, "--help")[0] == 0
