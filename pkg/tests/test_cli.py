import json

import pytest
from click.testing import CliRunner

from sbmotives import (
    DivisionContext,
    GradedRankPoly,
    MotiveExpr,
    ProofTrace,
    SBVariety,
    classify_reduced_dimension,
    function_field_decomposition,
    gaussian_binomial,
    mu,
    rational_chow_order,
    type_bound,
)
from sbmotives.cli import cli
from sbmotives.verify import IdentityResult, SuiteReport


@pytest.fixture()
def runner(monkeypatch):
    monkeypatch.delenv("SBMOTIVES_FORMAT", raising=False)
    return CliRunner()


def invoke(runner, *args):
    return runner.invoke(cli, list(args))


class TestGaussianCommand:
    def test_json_matches_engine(self, runner):
        result = invoke(runner, "gaussian", "4", "2", "--format", "json")
        assert result.exit_code == 0
        assert result.output.strip() == '{"0":"1","1":"1","2":"2","3":"1","4":"1"}'
        parsed = GradedRankPoly.from_json_dict(json.loads(result.output))
        assert parsed == gaussian_binomial(4, 2)

    def test_text(self, runner):
        result = invoke(runner, "gaussian", "4", "2")
        assert result.exit_code == 0
        assert "1 + q + 2*q^2 + q^3 + q^4" in result.output
        assert "rank 6, dimension 4" in result.output

    def test_csv(self, runner):
        result = invoke(runner, "gaussian", "4", "1", "--format", "csv")
        assert result.output.splitlines() == [
            "degree,coefficient",
            "0,1",
            "1,1",
            "2,1",
            "3,1",
        ]

    def test_domain_error_exits_one(self, runner):
        result = invoke(runner, "gaussian", "2", "5")
        assert result.exit_code == 1
        assert "error:" in result.stderr

    def test_usage_error_exits_two(self, runner):
        result = invoke(runner, "gaussian", "two", "1")
        assert result.exit_code == 2

    def test_out_writes_file(self, runner, tmp_path):
        target = tmp_path / "poly.json"
        result = invoke(runner, "gaussian", "4", "2", "--format", "json", "--out", str(target))
        assert result.exit_code == 0
        assert json.loads(target.read_text()) == {"0": "1", "1": "1", "2": "2", "3": "1", "4": "1"}

    def test_format_from_environment(self, monkeypatch):
        monkeypatch.setenv("SBMOTIVES_FORMAT", "json")
        result = CliRunner().invoke(cli, ["gaussian", "4", "2"])
        assert result.output.strip().startswith("{")


class TestMuCommand:
    def test_single_value(self, runner):
        result = invoke(runner, "mu", "--p", "2", "--n", "1", "--k", "0", "--i", "2", "--format", "json")
        payload = json.loads(result.output)
        assert payload["values"] == [{"i": "2", "mu": "1"}]

    def test_all_matches_engine(self, runner):
        result = invoke(runner, "mu", "--p", "2", "--n", "1", "--k", "0", "--all", "--format", "json")
        payload = json.loads(result.output)
        context = DivisionContext(2, 1)
        for row in payload["values"]:
            assert int(row["mu"]) == mu(context, 0, int(row["i"]))

    def test_requires_exactly_one_selector(self, runner):
        assert invoke(runner, "mu", "--p", "2", "--n", "1", "--k", "0").exit_code == 2
        assert (
            invoke(runner, "mu", "--p", "2", "--n", "1", "--k", "0", "--i", "1", "--all").exit_code
            == 2
        )

    def test_non_prime_rejected_as_usage_error(self, runner):
        result = invoke(runner, "mu", "--p", "4", "--n", "1", "--k", "0", "--all")
        assert result.exit_code == 2

    def test_level_out_of_range_is_engine_error(self, runner):
        result = invoke(runner, "mu", "--p", "2", "--n", "1", "--k", "3", "--all")
        assert result.exit_code == 1


class TestChowOrderCommand:
    def test_round_trip(self, runner):
        result = invoke(runner, "chow-order", "--p", "2", "--n", "1", "--k", "0", "--format", "json")
        payload = json.loads(result.output)
        v = SBVariety(DivisionContext(2, 1), 0)
        assert len(payload["rows"]) == 3
        for row in payload["rows"]:
            report = rational_chow_order(v, int(row["i"]))
            assert row == report.to_json_obj()

    def test_csv_header(self, runner):
        result = invoke(runner, "chow-order", "--p", "2", "--n", "1", "--k", "0", "--format", "csv")
        lines = result.output.splitlines()
        assert lines[0] == "i,mu,order_exponent,literal_order"
        assert lines[1] == "0,0,0,0"


class TestDecomposeCommand:
    def test_text_shows_conservation(self, runner):
        result = invoke(runner, "decompose", "--p", "2", "--n", "2", "--k", "1")
        assert result.exit_code == 0
        assert "conservation: OK" in result.output
        assert "(twist 0)" in result.output
        assert "(twist 1)" in result.output
        assert "(twist 4)" in result.output

    def test_json_round_trips_to_engine_expr(self, runner):
        result = invoke(runner, "decompose", "--p", "2", "--n", "2", "--k", "1", "--format", "json")
        payload = json.loads(result.output)
        expr = MotiveExpr.from_json_obj(payload["terms"])
        engine = function_field_decomposition(SBVariety(DivisionContext(2, 2), 1))
        assert expr == engine
        assert payload["conservation"] == "ok"

    def test_odd_prime_exits_one(self, runner):
        result = invoke(runner, "decompose", "--p", "3", "--n", "2", "--k", "1")
        assert result.exit_code == 1


class TestTypeBoundCommand:
    def test_text(self, runner):
        result = invoke(runner, "type-bound", "--p", "2", "--n", "3", "--k", "1")
        assert "type bound" in result.output and ": -1" in result.output
        assert "indecomposability: indecomposable" in result.output
        assert "rigidity: conjecture-holds" in result.output

    def test_trace_round_trip(self, runner):
        result = invoke(
            runner, "type-bound", "--p", "2", "--n", "4", "--k", "2", "--trace", "--format", "json"
        )
        payload = json.loads(result.output)
        trace = ProofTrace.from_json_obj(payload["trace"])
        engine = type_bound(SBVariety(DivisionContext(2, 4), 2))
        assert trace == engine.trace
        assert int(payload["bound"]) == engine.bound
        assert trace.replay()

    def test_text_trace_rendering(self, runner):
        result = invoke(runner, "type-bound", "--p", "2", "--n", "3", "--k", "1", "--trace")
        assert "step 1: level-bound" in result.output
        assert "dimension-obstruction" in result.output


class TestConjectureCommand:
    def test_open_output(self, runner):
        result = invoke(runner, "conjecture", "--k", "8")
        assert result.output.strip() == "OPEN (blocking factor 8)"

    def test_covered_output(self, runner):
        result = invoke(runner, "conjecture", "--k", "12")
        lines = result.output.splitlines()
        assert lines[0] == "COVERED (4 x odd squarefree, odd part 3)"
        assert "  reduces to: SB_4 at p=2" in lines
        assert "  reduces to: SB_3 at p=3" in lines

    def test_json_round_trip(self, runner):
        result = invoke(runner, "conjecture", "--k", "12", "--format", "json")
        payload = json.loads(result.output)
        case = classify_reduced_dimension(12)
        assert payload["covered"] is True
        assert payload["reason"] == case.reason.value
        assert payload["odd_squarefree_part"] == "3"
        assert [(r["p"], r["reduced_dimension"]) for r in payload["reductions"]] == [
            (str(c.prime), str(c.reduced_dimension)) for c in case.reductions
        ]


class TestVerifyCommand:
    def test_passes_on_correct_build(self, runner):
        result = invoke(runner, "verify", "--max-n", "3")
        assert result.exit_code == 0
        assert "identities hold" in result.output
        assert "FAIL" not in result.output

    def test_json_report(self, runner):
        result = invoke(runner, "verify", "--max-n", "2", "--format", "json")
        payload = json.loads(result.output)
        assert payload["passed"] is True
        assert all(entry["passed"] for entry in payload["results"])
        from sbmotives import run_identity_suite

        engine = run_identity_suite(2)
        assert [entry["identity"] for entry in payload["results"]] == [
            r.identity for r in engine.results
        ]

    def test_failure_exits_three(self, runner, monkeypatch):
        fake = SuiteReport(
            max_n=2,
            results=(
                IdentityResult("demo/pass", True, ()),
                IdentityResult("demo/fail", False, ("broken",)),
            ),
        )
        monkeypatch.setattr("sbmotives.cli.run_identity_suite", lambda max_n: fake)
        result = invoke(runner, "verify", "--max-n", "2")
        assert result.exit_code == 3
        assert "FAIL demo/fail" in result.output
        assert "failing: demo/fail" in result.output
