"""CLI: graph grammar, commands, exit statuses, and byte-stable outputs."""

import json

import pytest

from permcap.cli import (
    EXIT_BUDGET,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VERIFICATION,
    main,
    parse_graph_spec,
)
from permcap.digraphs import (
    AlternatingPath,
    Explicit,
    OrientedPath,
    SymmetricComplete,
    SymmetricPath,
    Thrupath,
    block_gadget_digraph,
    restrict,
)
from permcap.errors import GraphSpecParseError
from permcap.permutations import PermutationFamily, read_family, write_family


class TestParseGraphSpec:
    def test_named_graphs(self):
        assert parse_graph_spec("Lsym") == SymmetricPath()
        assert parse_graph_spec("La") == AlternatingPath()
        assert parse_graph_spec("Lc") == Thrupath()
        assert parse_graph_spec("K") == SymmetricComplete()
        assert parse_graph_spec("B") == Explicit(block_gadget_digraph())

    def test_path_word(self):
        spec = parse_graph_spec("path:UU")
        assert spec == OrientedPath("UU")
        assert restrict(spec, 3).edges == restrict(Thrupath(), 3).edges

    def test_lex_power(self):
        spec = parse_graph_spec("C3^2")
        assert spec.graph.n == 9 and spec.graph.is_tournament()

    def test_file_graph(self, tmp_path):
        path = tmp_path / "g.json"
        path.write_text(block_gadget_digraph().to_json())
        assert parse_graph_spec(f"file:{path}") == Explicit(block_gadget_digraph())

    @pytest.mark.parametrize(
        "text,position",
        [("Lx", 0), ("path:UXD", 6), ("path:", 5), ("C3^x", 3), ("C3^0", 3)],
    )
    def test_parse_errors_carry_position(self, text, position):
        with pytest.raises(GraphSpecParseError) as exc_info:
            parse_graph_spec(text)
        assert exc_info.value.position == position


def run_cli(capsys, *argv):
    status = main(list(argv))
    captured = capsys.readouterr()
    return status, captured.out, captured.err


class TestConstruct:
    def test_alternating_family(self, capsys, tmp_path):
        out = tmp_path / "fam.txt"
        status, stdout, _ = run_cli(
            capsys, "construct", "--graph", "La", "--n", "5", "--out", str(out)
        )
        assert status == EXIT_OK
        summary = json.loads(stdout)
        assert summary["size"] == 8 and summary["rate"] == 0.6
        family = read_family(out)
        assert family.n == 5 and len(family) == 8

    def test_round_trip_with_verify(self, capsys, tmp_path):
        out = tmp_path / "fam.txt"
        run_cli(capsys, "construct", "--graph", "Lsym", "--n", "6", "--out", str(out))
        status, stdout, _ = run_cli(
            capsys,
            "verify",
            "--graph",
            "Lsym",
            "--mode",
            "robust",
            "--family",
            str(out),
        )
        assert status == EXIT_OK
        assert json.loads(stdout)["ok"] is True

    def test_ternary_words(self, capsys, tmp_path):
        out = tmp_path / "words.txt"
        status, stdout, _ = run_cli(
            capsys, "construct", "--graph", "B", "--n", "2", "--out", str(out)
        )
        assert status == EXIT_OK
        assert json.loads(stdout)["size"] == 3
        assert set(out.read_text().split()) == {"cc", "ab", "ba"}

    def test_block_embedding(self, capsys, tmp_path):
        out = tmp_path / "emb.txt"
        status, stdout, _ = run_cli(
            capsys,
            "construct",
            "--graph",
            "path:UUUUU",
            "--blocks",
            "2",
            "--out",
            str(out),
        )
        assert status == EXIT_OK
        assert json.loads(stdout)["size"] == 3
        assert read_family(out).n == 6

    def test_missing_out_is_usage_error(self, capsys):
        status, _, stderr = run_cli(capsys, "construct", "--graph", "La", "--n", "3")
        assert status == EXIT_USAGE
        assert json.loads(stderr)["error"] == "usage"

    def test_byte_stable(self, capsys, tmp_path):
        first = tmp_path / "a.txt"
        second = tmp_path / "b.txt"
        run_cli(capsys, "construct", "--graph", "Lc", "--n", "9", "--out", str(first))
        run_cli(capsys, "construct", "--graph", "Lc", "--n", "9", "--out", str(second))
        assert first.read_bytes() == second.read_bytes()


class TestVerify:
    def test_failure_exits_1(self, capsys, tmp_path):
        path = tmp_path / "bad.txt"
        write_family(PermutationFamily(3, [(1, 2, 3), (3, 2, 1)]), path)
        status, stdout, _ = run_cli(
            capsys, "verify", "--graph", "Lsym", "--family", str(path)
        )
        assert status == EXIT_VERIFICATION
        payload = json.loads(stdout)
        assert payload["ok"] is False
        assert payload["failure"] == {"i": 1, "j": 2, "missing": "both"}

    def test_ternary_verify(self, capsys, tmp_path):
        path = tmp_path / "words.txt"
        path.write_text("cc\nab\nba\n")
        status, stdout, _ = run_cli(capsys, "verify", "--graph", "B", "--family", str(path))
        assert status == EXIT_OK and json.loads(stdout)["ok"] is True

    def test_missing_family_flag(self, capsys):
        status, _, _ = run_cli(capsys, "verify", "--graph", "Lsym")
        assert status == EXIT_USAGE


class TestSearch:
    def test_search_json_and_witness(self, capsys, tmp_path):
        out = tmp_path / "witness.txt"
        status, stdout, _ = run_cli(
            capsys, "search", "--graph", "Lsym", "--n", "4", "--out", str(out)
        )
        assert status == EXIT_OK
        payload = json.loads(stdout)
        assert payload["value"] == 6 and payload["optimal"] is True
        assert payload["graph"] == "Lsym" and payload["mode"] == "symmetric"
        assert set(payload) == {
            "graph",
            "n",
            "mode",
            "value",
            "optimal",
            "rate",
            "witness_file",
            "nodes",
            "elapsed_s",
        }
        witness = read_family(out)
        assert len(witness) == 6

    def test_budget_exhaustion_exits_2(self, capsys):
        status, stdout, _ = run_cli(
            capsys,
            "search",
            "--graph",
            "Lsym",
            "--n",
            "5",
            "--time-limit",
            "0.000001",
        )
        assert status == EXIT_BUDGET
        assert json.loads(stdout)["optimal"] is False

    def test_n_above_budget_exits_2(self, capsys):
        status, _, stderr = run_cli(
            capsys, "search", "--graph", "Lsym", "--n", "8", "--max-n", "7"
        )
        assert status == EXIT_BUDGET
        assert json.loads(stderr)["error"] == "budget"


class TestRates:
    def test_csv_columns_and_stability(self, capsys, tmp_path):
        first = tmp_path / "a.csv"
        second = tmp_path / "b.csv"
        for out in (first, second):
            status, _, _ = run_cli(
                capsys,
                "rates",
                "--graph",
                "La",
                "--n",
                "6",
                "--max-n",
                "4",
                "--out",
                str(out),
            )
            assert status == EXIT_OK
        assert first.read_bytes() == second.read_bytes()
        lines = first.read_text().splitlines()
        assert lines[0] == "n,size,exact,rate,reference,reference_kind"
        assert lines[1] == "1,1,1,0.000000,1,bound"
        # exact column empty beyond the search limit
        assert lines[5].startswith("5,8,,0.600000,8,")

    def test_conjecture_column_for_symmetric_path(self, capsys):
        status, stdout, _ = run_cli(
            capsys, "rates", "--graph", "Lsym", "--n", "4", "--max-n", "3",
            "--format", "json",
        )
        assert status == EXIT_OK
        rows = json.loads(stdout)
        assert [r["reference"] for r in rows] == [1, 2, 3, 6]
        assert all(r["reference_kind"] == "conjecture" for r in rows)

    def test_unsupported_graph(self, capsys):
        status, _, _ = run_cli(capsys, "rates", "--graph", "K")
        assert status == EXIT_USAGE


class TestTournament:
    def test_lex_square_report(self, capsys):
        status, stdout, _ = run_cli(capsys, "tournament", "--graph", "C3^2")
        assert status == EXIT_OK
        payload = json.loads(stdout)
        assert payload["cyclic_triangles"] == 30
        assert payload["regular"] is True
        assert payload["regular_reference"] == 30

    def test_non_tournament_rejected(self, capsys, tmp_path):
        path = tmp_path / "g.json"
        path.write_text(restrict(SymmetricPath(), 3).to_json())
        status, _, _ = run_cli(capsys, "tournament", "--graph", f"file:{path}")
        assert status == EXIT_USAGE


class TestSurveyOrientations:
    def test_length_two_all_ok(self, capsys):
        status, stdout, _ = run_cli(
            capsys, "survey-orientations", "--len", "2", "--format", "json"
        )
        assert status == EXIT_OK
        rows = json.loads(stdout)
        assert len(rows) == 4
        assert all(row["ok"] for row in rows)

    def test_length_five_csv(self, capsys, tmp_path):
        out = tmp_path / "survey.csv"
        status, _, _ = run_cli(
            capsys,
            "survey-orientations",
            "--len",
            "5",
            "--blocks",
            "2",
            "--format",
            "csv",
            "--out",
            str(out),
        )
        assert status == EXIT_OK
        lines = out.read_text().splitlines()
        assert lines[0] == "word,size,ok"
        assert len(lines) == 33
        assert all(line.endswith(",3,True") for line in lines[1:])

    def test_blocks_too_large(self, capsys):
        status, _, _ = run_cli(capsys, "survey-orientations", "--len", "2", "--blocks", "2")
        assert status == EXIT_USAGE


class TestUsageErrors:
    def test_unknown_graph(self, capsys):
        status, _, stderr = run_cli(capsys, "search", "--graph", "Lz", "--n", "3")
        assert status == EXIT_USAGE
        assert json.loads(stderr)["error"] == "parse"

    def test_unknown_command(self, capsys):
        status, _, _ = run_cli(capsys, "frobnicate")
        assert status == EXIT_USAGE
