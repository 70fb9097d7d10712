"""Command-line behaviour: subcommands, formats, exit codes, artifacts."""

import io
import json
from contextlib import redirect_stderr, redirect_stdout

import pytest

from conftest import FIXTURES

from metaplex.cli import main


def run_cli(*argv) -> tuple[int, str, str]:
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


K4_EDGES = str(FIXTURES / "k4_edges.txt")
K4_CONC = str(FIXTURES / "k4.conc")
K4_COMPLEX = str(FIXTURES / "k4_inferred.json")
TRIANGLE_EDGES = str(FIXTURES / "triangle_edges.txt")
TRIANGLE_CONC = str(FIXTURES / "triangle.conc")


class TestInfer:
    def test_text_trace_shows_decision(self):
        code, out, _ = run_cli("infer", "--edges", K4_EDGES, "--concentrations", K4_CONC)
        assert code == 0
        assert "threshold=6" in out
        assert "reject 0-1-2" in out
        assert "admit 0-1-3" in out

    def test_json_trace_matches_fixture(self):
        code, out, _ = run_cli(
            "infer", "--edges", K4_EDGES, "--concentrations", K4_CONC, "--format", "json"
        )
        assert code == 0
        assert out == (FIXTURES / "k4_trace.json").read_text()

    def test_non_strict_admits_equality(self):
        code, out, _ = run_cli(
            "infer",
            "--edges",
            TRIANGLE_EDGES,
            "--concentrations",
            TRIANGLE_CONC,
            "--non-strict",
        )
        assert code == 0
        assert "admit 0-1-2 W=6" in out

    def test_multiplier_flag(self):
        code, out, _ = run_cli(
            "infer",
            "--edges",
            TRIANGLE_EDGES,
            "--concentrations",
            TRIANGLE_CONC,
            "--multiplier",
            "5/2",
        )
        assert code == 0
        assert "threshold=5" in out
        assert "admit 0-1-2 W=6" in out

    def test_out_dir_artifacts(self, tmp_path):
        code, out, _ = run_cli(
            "infer",
            "--edges",
            K4_EDGES,
            "--concentrations",
            K4_CONC,
            "--format",
            "json",
            "--out",
            str(tmp_path),
        )
        assert code == 0
        names = {p.name for p in tmp_path.iterdir()}
        assert names == {"trace.json", "complex.json", "weights.json", "trace.png"}
        complex_doc = json.loads((tmp_path / "complex.json").read_text())
        assert complex_doc["facets"] == [[0, 1, 3], [0, 2, 3], [1, 2, 3]]
        weights_doc = json.loads((tmp_path / "weights.json").read_text())
        assert weights_doc["weights"]["0-1-3"] == "4"
        assert (tmp_path / "trace.png").stat().st_size > 0


class TestWeights:
    def test_text_output(self):
        code, out, _ = run_cli(
            "weights", "--facets", K4_COMPLEX, "--concentrations", K4_CONC
        )
        assert code == 0
        assert "0-3 10/3" in out
        assert "0-1-3 4" in out

    def test_edge_list_is_its_own_complex(self):
        # over a plain edge list the facets are the edges: no inference here
        code, out, _ = run_cli(
            "weights", "--edges", TRIANGLE_EDGES, "--concentrations", TRIANGLE_CONC
        )
        assert code == 0
        assert "0-1 3/2" in out
        assert "0-1-2" not in out


class TestCentrality:
    def test_k4_report_values(self):
        code, out, _ = run_cli(
            "centrality",
            "--facets",
            K4_COMPLEX,
            "--concentrations",
            K4_CONC,
            "--q",
            "1",
            "--alpha",
            "1",
            "--format",
            "csv",
        )
        assert code == 0
        rows = {line.split(",")[0]: line.split(",") for line in out.strip().splitlines()[1:]}
        assert rows["0-3"][1] == "4"          # k
        assert rows["0-3"][2] == "32"         # D
        assert rows["0-3"][4] == "0.740740740741"  # CC
        assert rows["0-1"][2] == "80/3"

    def test_incoming_switch_changes_closeness(self):
        _, outgoing, _ = run_cli(
            "centrality", "--facets", K4_COMPLEX, "--concentrations", K4_CONC,
            "--q", "1", "--alpha", "1", "--format", "csv",
        )
        _, incoming, _ = run_cli(
            "centrality", "--facets", K4_COMPLEX, "--concentrations", K4_CONC,
            "--q", "1", "--alpha", "1", "--format", "csv", "--incoming",
        )
        assert outgoing != incoming

    def test_figure_alongside_csv(self, tmp_path):
        code, _, _ = run_cli(
            "centrality", "--facets", K4_COMPLEX, "--concentrations", K4_CONC,
            "--q", "1", "--alpha", "0.5", "--format", "csv", "--out", str(tmp_path),
        )
        assert code == 0
        assert (tmp_path / "centrality.csv").exists()
        assert (tmp_path / "centrality.png").stat().st_size > 0


class TestMatrix:
    def test_binary_matrix(self):
        code, out, _ = run_cli(
            "matrix", "--facets", K4_COMPLEX, "--concentrations", K4_CONC, "--q", "1"
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "simplex,0-1,0-2,0-3,1-2,1-3,2-3"
        assert lines[1] == "0-1,0,0,1,0,1,0"

    def test_weighted_matrix(self):
        code, out, _ = run_cli(
            "matrix", "--facets", K4_COMPLEX, "--concentrations", K4_CONC,
            "--q", "1", "--weighted",
        )
        assert code == 0
        assert out.strip().splitlines()[1] == "0-1,0,0,4,0,4,0"


class TestValidate:
    def test_inferred_output_passes(self):
        code, out, _ = run_cli(
            "validate", "--facets", K4_COMPLEX, "--concentrations", K4_CONC
        )
        assert code == 0
        assert "FAIL" not in out
        assert "global-conservation" in out

    def test_bad_scheme_table_fails_validation(self, tmp_path):
        table = tmp_path / "table.json"
        table.write_text(
            json.dumps(
                [
                    {"tau": [0], "sigma": [0, 1], "fraction": "1/2"},
                    {"tau": [0], "sigma": [0, 2], "fraction": "1/2"},
                    {"tau": [1], "sigma": [0, 1], "fraction": "1/2"},
                    {"tau": [1], "sigma": [1, 2], "fraction": "1/2"},
                    {"tau": [2], "sigma": [0, 2], "fraction": "1"},
                    {"tau": [2], "sigma": [1, 2], "fraction": "1/2"},
                ]
            )
        )
        code, out, _ = run_cli(
            "validate",
            "--edges",
            TRIANGLE_EDGES,
            "--concentrations",
            TRIANGLE_CONC,
            "--scheme",
            f"table:{table}",
        )
        assert code == 1
        assert "FAIL" in out

    def test_json_format(self):
        code, out, _ = run_cli(
            "validate", "--facets", K4_COMPLEX, "--concentrations", K4_CONC,
            "--format", "json",
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["ok"] is True
        assert any(c["check"] == "global-conservation" for c in doc["checks"])


class TestClique:
    def test_k4_capped(self):
        code, out, _ = run_cli(
            "clique", "--edges", K4_EDGES, "--concentrations", K4_CONC, "--max-dim", "2"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["facets"] == [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]


class TestRandom:
    def test_seeded_instance_round_trips(self, tmp_path):
        code, _, _ = run_cli("random", "--seed", "7", "--out", str(tmp_path))
        assert code == 0
        edges = (tmp_path / "edges.txt").read_text()
        conc = (tmp_path / "concentrations.txt").read_text()
        code2, out, _ = run_cli(
            "infer",
            "--edges",
            str(tmp_path / "edges.txt"),
            "--concentrations",
            str(tmp_path / "concentrations.txt"),
        )
        assert code2 == 0
        assert edges and conc

    def test_same_seed_same_instance(self, tmp_path):
        run_cli("random", "--seed", "11", "--out", str(tmp_path / "a"))
        run_cli("random", "--seed", "11", "--out", str(tmp_path / "b"))
        assert (tmp_path / "a/edges.txt").read_bytes() == (tmp_path / "b/edges.txt").read_bytes()
        assert (
            tmp_path / "a/concentrations.txt"
        ).read_bytes() == (tmp_path / "b/concentrations.txt").read_bytes()


class TestExitCodes:
    def test_missing_file_is_input_error(self):
        code, _, err = run_cli(
            "infer", "--edges", "/nonexistent.txt", "--concentrations", K4_CONC
        )
        assert code == 2
        assert "input error" in err

    def test_missing_concentration_is_input_error(self, tmp_path):
        conc = tmp_path / "short.conc"
        conc.write_text("0 1\n1 1\n2 1\n")
        code, _, err = run_cli(
            "infer", "--edges", K4_EDGES, "--concentrations", str(conc)
        )
        assert code == 2
        assert "3" in err

    def test_parse_error_location_reported(self, tmp_path):
        bad = tmp_path / "bad.txt"
        bad.write_text("0 1\n0 zzz\n")
        code, _, err = run_cli(
            "infer", "--edges", str(bad), "--concentrations", K4_CONC
        )
        assert code == 2
        assert "line 2" in err

    def test_malformed_scheme_table_is_input_error(self, tmp_path):
        table = tmp_path / "table.json"
        table.write_text('[{"tau": [0], "sigma": [1, 2], "fraction": "1/2"}]')
        code, _, err = run_cli(
            "weights",
            "--edges",
            TRIANGLE_EDGES,
            "--concentrations",
            TRIANGLE_CONC,
            "--scheme",
            f"table:{table}",
        )
        assert code == 2

    def test_incomplete_scheme_table_is_validation_failure(self, tmp_path):
        # lawful entries, but vertex 2's row does not sum to 1 -> axiom (iii)
        table = tmp_path / "table.json"
        table.write_text(
            json.dumps(
                [
                    {"tau": [0], "sigma": [0, 1], "fraction": "1/2"},
                    {"tau": [0], "sigma": [0, 2], "fraction": "1/2"},
                    {"tau": [1], "sigma": [0, 1], "fraction": "1/2"},
                    {"tau": [1], "sigma": [1, 2], "fraction": "1/2"},
                    {"tau": [2], "sigma": [0, 2], "fraction": "1"},
                    {"tau": [2], "sigma": [1, 2], "fraction": "1/2"},
                ]
            )
        )
        code, _, err = run_cli(
            "weights",
            "--edges",
            TRIANGLE_EDGES,
            "--concentrations",
            TRIANGLE_CONC,
            "--scheme",
            f"table:{table}",
        )
        assert code == 1
        assert "validation failure" in err


class TestDeterminism:
    @pytest.mark.parametrize("fmt", ["text", "json", "csv"])
    def test_infer_byte_identical(self, fmt):
        first = run_cli(
            "infer", "--edges", K4_EDGES, "--concentrations", K4_CONC, "--format", fmt
        )
        second = run_cli(
            "infer", "--edges", K4_EDGES, "--concentrations", K4_CONC, "--format", fmt
        )
        assert first == second

    @pytest.mark.parametrize("fmt", ["text", "json", "csv"])
    def test_centrality_byte_identical(self, fmt):
        args = (
            "centrality", "--facets", K4_COMPLEX, "--concentrations", K4_CONC,
            "--q", "1", "--alpha", "0.5", "--format", fmt,
        )
        assert run_cli(*args) == run_cli(*args)
