"""Tests for the parklaw command line."""

from __future__ import annotations

import json
from collections.abc import Iterator
from pathlib import Path

import pytest
from typer.testing import CliRunner

from parklaw.cli import app, run
from parklaw.cli.main import _exit_code
from parklaw.cli.selftest import SuiteResult
from parklaw.parking.functions import is_parking
from parklaw.utils.logging import configure_logging

runner = CliRunner()


@pytest.fixture(autouse=True)
def restore_logging() -> Iterator[None]:
    """Commands point logging at the runner's stderr; reset it afterwards."""
    yield
    configure_logging(level="DEBUG", log_format="console")


def _rows(stdout: str) -> list[list[str]]:
    return [line.split(",") for line in stdout.strip().splitlines()]


# =============================================================================
# Exact commands
# =============================================================================


class TestExactCommands:
    """Tests for enumerate, pmf, cdf and tv."""

    def test_pmf_first_place(self) -> None:
        result = runner.invoke(app, ["pmf", "--n", "2", "--k", "1"])
        assert result.exit_code == 0
        assert result.stdout == "i1,probability\n1,0.666666666667\n2,0.333333333333\n"

    def test_pmf_enumeration_agrees(self) -> None:
        dp = runner.invoke(app, ["pmf", "--n", "4", "--k", "2"])
        enum = runner.invoke(
            app, ["pmf", "--n", "4", "--k", "2", "--method", "exact-enumeration"]
        )
        assert dp.exit_code == enum.exit_code == 0
        pairs = zip(_rows(dp.stdout)[1:], _rows(enum.stdout)[1:], strict=True)
        for left, right in pairs:
            assert left[:2] == right[:2]
            assert float(left[2]) == pytest.approx(float(right[2]), abs=1e-11)

    def test_enumerate_count_only(self) -> None:
        result = runner.invoke(app, ["enumerate", "--n", "3", "--count-only"])
        assert result.exit_code == 0
        assert result.stdout == "n,count\n3,16\n"

    def test_enumerate_lists_parking_functions(self) -> None:
        result = runner.invoke(app, ["enumerate", "--n", "3"])
        rows = _rows(result.stdout)
        assert rows[0] == ["index", "n", "places"]
        assert len(rows) == 17
        assert all(is_parking([int(p) for p in row[2].split()]) for row in rows[1:])

    def test_cdf_every_gap(self) -> None:
        result = runner.invoke(app, ["cdf", "--n", "3", "--k", "2"])
        rows = _rows(result.stdout)
        assert rows[0] == ["n", "k", "a", "bound", "probability"]
        assert [row[2] for row in rows[1:]] == ["0", "1", "2"]
        assert float(rows[1][4]) == pytest.approx(1.0)

    def test_cdf_single_gap(self) -> None:
        result = runner.invoke(app, ["cdf", "--n", "2", "--a", "1"])
        assert result.stdout == "n,k,a,bound,probability\n2,1,1,1,0.666666666667\n"

    def test_tv_row(self) -> None:
        result = runner.invoke(app, ["tv", "--n", "2", "--k", "1"])
        assert result.exit_code == 0
        assert result.stdout == (
            "n,k,method,value,sqrt_n_times_value\n"
            "2,1,exact-dp,0.333333333333,0.471404520791\n"
        )

    def test_json_format(self) -> None:
        result = runner.invoke(app, ["pmf", "--n", "2", "--format", "json"])
        document = json.loads(result.stdout)
        assert document["config"]["command"] == "pmf"
        assert document["config"]["n"] == 2
        assert [r["i1"] for r in document["results"]] == [1, 2]
        assert document["results"][0]["probability"] == pytest.approx(2 / 3)


# =============================================================================
# Monte-Carlo commands
# =============================================================================


class TestMonteCarloCommands:
    """Tests for the seeded commands."""

    def test_sample_is_reproducible(self) -> None:
        args = ["sample", "--n", "9", "--samples", "1", "--seed", "0"]
        first = runner.invoke(app, args)
        again = runner.invoke(app, args)
        assert first.exit_code == 0
        assert first.stdout == again.stdout
        places = [int(p) for p in _rows(first.stdout)[1][2].split()]
        assert len(places) == 9
        assert is_parking(places)

    def test_sample_independent_of_threads(self) -> None:
        args = ["sample", "--n", "7", "--samples", "600", "--seed", "3"]
        serial = runner.invoke(app, args)
        parallel = runner.invoke(app, [*args, "--threads", "4"])
        assert serial.stdout == parallel.stdout
        assert len(_rows(serial.stdout)) == 601

    def test_kolmogorov_monte_carlo_is_byte_identical(self) -> None:
        args = ["kolmogorov", "--n", "12", "--k", "3"]
        args += ["--samples", "300", "--seed", "4"]
        first = runner.invoke(app, args)
        again = runner.invoke(app, [*args, "--threads", "2"])
        assert first.exit_code == 0
        assert first.stdout == again.stdout
        assert _rows(first.stdout)[1][-1] == "true"

    def test_limit_sum_without_verdict_at_k1(self) -> None:
        result = runner.invoke(
            app, ["limit-sum", "--n", "50", "--k", "1", "--samples", "200"]
        )
        rows = _rows(result.stdout)
        assert rows[0][-1] == "pass"
        assert rows[1][-1] == ""

    def test_tail_zero_gap(self) -> None:
        result = runner.invoke(
            app, ["tail", "--n", "40", "--c", "0.5", "--a", "0", "--samples", "100"]
        )
        assert result.exit_code == 0
        record = dict(zip(*_rows(result.stdout), strict=True))
        assert record["lhs"] == "1"
        assert record["rhs"] == "1"


# =============================================================================
# Exit codes and output targets
# =============================================================================


class TestRun:
    """Tests for run(argv) and its exit codes."""

    def test_success(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert run(["enumerate", "--n", "2", "--count-only"]) == 0
        assert capsys.readouterr().out == "n,count\n2,3\n"

    @pytest.mark.parametrize(
        "argv",
        [
            ["pmf", "--n", "2", "--bogus"],
            ["pmf"],
            ["pmf", "--n", "0"],
            ["sample", "--n", "3", "--seed", "-1"],
            ["sample", "--n", "3", "--seed", str(2**64)],
            ["pmf", "--n", "2", "--k", "3"],
            ["tv", "--n", "5", "--method", "fastest"],
            ["nonsense"],
        ],
    )
    def test_invalid_arguments_exit_2(self, argv: list[str]) -> None:
        assert run(argv) == 2

    @pytest.mark.parametrize(
        "argv",
        [
            ["tv", "--n", "10", "--k", "3", "--method", "exact-dp"],
            ["tv", "--n", "3", "--method", "monte-carlo"],
            ["pmf", "--n", "2000"],
            ["enumerate", "--n", "9"],
        ],
    )
    def test_guard_violations_exit_1(self, argv: list[str]) -> None:
        assert run(argv) == 1

    def test_full_width_seed(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert run(["sample", "--n", "4", "--seed", str(2**64 - 1)]) == 0
        assert capsys.readouterr().out.startswith("index,n,places\n0,4,")

    def test_out_file(self, tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
        target = tmp_path / "nested" / "pmf.csv"
        assert run(["pmf", "--n", "3", "--out", str(target)]) == 0
        assert capsys.readouterr().out == ""
        assert target.read_text(encoding="utf-8").startswith("i1,probability\n")

    def test_logs_stay_off_stdout(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert run(["tv", "--n", "3"]) == 0
        out = capsys.readouterr().out
        assert out.splitlines()[0] == "n,k,method,value,sqrt_n_times_value"
        assert len(out.splitlines()) == 2

    def test_unknown_option_is_reported_on_stderr(
        self, capsys: pytest.CaptureFixture[str]
    ) -> None:
        assert run(["pmf", "--n", "2", "--bogus"]) == 2
        captured = capsys.readouterr()
        assert captured.out == ""
        assert "--bogus" in captured.err

    def test_help_exits_0(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert run(["tail", "--help"]) == 0
        assert "--samples" in capsys.readouterr().out

    @pytest.mark.parametrize(
        ("code", "expected"), [(None, 0), (0, 0), (2, 2), ("fatal", 1)]
    )
    def test_exit_code_mapping(self, code: str | int | None, expected: int) -> None:
        assert _exit_code(code) == expected

    def test_no_command_prints_help(self) -> None:
        result = runner.invoke(app, [])
        assert result.exit_code == 0
        assert "parklaw" in result.stdout


class TestSelftest:
    """Tests for the selftest command."""

    def test_all_suites_pass(self) -> None:
        result = runner.invoke(app, ["selftest"])
        assert result.exit_code == 0
        rows = _rows(result.stdout)
        assert rows[0] == ["suite", "passed", "detail"]
        assert {row[0] for row in rows[1:]} >= {"bijection", "dp-oracle", "cycle-lemma"}
        assert all(row[1] == "true" for row in rows[1:])

    def test_failure_exits_1(self, monkeypatch: pytest.MonkeyPatch) -> None:
        def broken() -> SuiteResult:
            return SuiteResult("broken", False, "always fails")

        def crashing() -> SuiteResult:
            raise RuntimeError("boom")

        monkeypatch.setattr("parklaw.cli.selftest.SUITES", (broken, crashing))
        result = runner.invoke(app, ["selftest"])
        assert result.exit_code == 1
        assert "broken,false,always fails" in result.stdout
        assert "crashing,false,boom" in result.stdout
