import json

import pytest

from growthplan.cli import build_parser, run

from conftest import TABLE_MIXED, assert_close

PROPANE_CSV = (
    "period,PI,EM,PT,BD,output\n"
    "0,695262700,4000,2400,1200000,632057000\n"
)

MODEL_JSON = {
    "tfp": 9811,
    "elasticities": {"PI": 0.2, "EM": 0.3, "PT": 0.4, "BD": 0.1},
    "crts_imposed": True,
    "residual_variance": 0.0,
}


@pytest.fixture
def mixed_config(tmp_path):
    """Config for the mixed-strategy propane plan (5% TFP, 15% output)."""
    (tmp_path / "data.csv").write_text(PROPANE_CSV, encoding="utf-8")
    config = {
        "dataset_path": "data.csv",
        "model": MODEL_JSON,
        "target": {"kind": "explicit_rate", "rate": 0.15},
        "strategy": {"mode": "mixed", "tfp_growth": 0.05},
        "horizon_years": 5,
        "discrete_inputs": ["EM", "PT"],
    }
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(config), encoding="utf-8")
    return path


def growth_dataset(tmp_path):
    text = (
        "period,L,K,output\n"
        "2019,100,100,100\n"
        "2020,101,106,105\n"
    )
    path = tmp_path / "observed.csv"
    path.write_text(text, encoding="utf-8")
    return path


class TestTargetCommand:
    def test_catchup_required_rate(self):
        result = run([
            "target", "catchup",
            "--follower", "632057000", "--leader", "1097000000",
            "--leader-rate", "0.03", "--horizon", "5",
        ])
        assert result.exit_code == 0, result.stderr
        payload = json.loads(result.stdout)
        assert payload["required_rate"] == pytest.approx(0.15, abs=0.0005)

    def test_catchup_horizon(self):
        result = run([
            "target", "catchup",
            "--follower", "632.057", "--leader", "1097",
            "--leader-rate", "0.03", "--follower-rate", "0.07",
        ])
        payload = json.loads(result.stdout)
        assert payload["horizon_years"] == pytest.approx(14.47, abs=0.01)

    def test_multiple(self):
        result = run(["target", "multiple", "--m", "3", "--rate", "0.10"])
        payload = json.loads(result.stdout)
        assert payload["years"] == pytest.approx(11.53, abs=0.01)
        assert "rule70_years" not in payload

    def test_doubling_includes_rule70(self):
        result = run(["target", "multiple", "--m", "2", "--rate", "0.10"])
        payload = json.loads(result.stdout)
        assert payload["rule70_years"] == 7.0

    def test_domain_error_is_structured(self):
        result = run([
            "target", "catchup",
            "--follower", "1", "--leader", "2",
            "--leader-rate", "0.05", "--follower-rate", "0.02",
        ])
        assert result.exit_code == 1
        assert result.stdout == ""
        error = json.loads(result.stderr)["error"]
        assert error["code"] == "NeverCatches"
        assert error["message"]


class TestEstimateCommand:
    def test_fit_from_csv(self, tmp_path):
        rows = ["period,L,K,output"]
        for t in range(8):
            l, k = 10.0 + 3 * t, 40.0 - 2.5 * t
            rows.append(f"{t},{l},{k},{2.0 * l ** 0.3 * k ** 0.7}")
        data = tmp_path / "fit.csv"
        data.write_text("\n".join(rows) + "\n", encoding="utf-8")

        result = run(["estimate", "--data", str(data)])
        assert result.exit_code == 0, result.stderr
        model = json.loads(result.stdout)
        assert model["tfp"] == pytest.approx(2.0, rel=1e-6)
        assert model["elasticities"]["L"] == pytest.approx(0.3, abs=1e-6)
        assert model["crts_imposed"] is False

    def test_csv_format(self, tmp_path):
        rows = ["period,L,output"]
        for t in range(5):
            l = 5.0 + t
            rows.append(f"{t},{l},{3.0 * l ** 0.6}")
        data = tmp_path / "fit.csv"
        data.write_text("\n".join(rows) + "\n", encoding="utf-8")
        result = run(["estimate", "--data", str(data), "--format", "csv"])
        lines = result.stdout.strip().split("\n")
        assert lines[0] == "parameter,value"
        assert lines[1].startswith("tfp,")

    def test_missing_file_is_domain_error(self, tmp_path):
        result = run(["estimate", "--data", str(tmp_path / "nope.csv")])
        assert result.exit_code == 1
        assert json.loads(result.stderr)["error"]["code"] == "InvalidArgument"


class TestDecomposeCommand:
    def test_two_identical_rows_decompose_to_zero(self, tmp_path):
        text = "period,L,K,output\n0,10,20,30\n1,10,20,30\n"
        data = tmp_path / "flat.csv"
        data.write_text(text, encoding="utf-8")
        model = tmp_path / "model.json"
        model.write_text(json.dumps({"tfp": 1.0, "elasticities": {"L": 0.5, "K": 0.5}}),
                         encoding="utf-8")
        result = run(["decompose", "--data", str(data), "--model", str(model)])
        assert result.exit_code == 0, result.stderr
        steps = json.loads(result.stdout)["steps"]
        assert len(steps) == 1
        assert steps[0]["g_y"] == 0
        assert all(v == 0 for v in steps[0]["contributions"].values())
        assert steps[0]["shares"] is None

    def test_weights_from_model_file(self, tmp_path):
        data = growth_dataset(tmp_path)
        model = tmp_path / "model.json"
        model.write_text(json.dumps({"tfp": 1.0, "elasticities": {"L": 0.67, "K": 0.33}}),
                         encoding="utf-8")
        result = run(["decompose", "--data", str(data), "--model", str(model)])
        steps = json.loads(result.stdout)["steps"]
        assert steps[0]["residual"] == pytest.approx(0.0235, abs=1e-12)
        assert steps[0]["from"] == "2019" and steps[0]["to"] == "2020"

    def test_csv_format_one_row_per_source(self, tmp_path):
        data = growth_dataset(tmp_path)
        model = tmp_path / "model.json"
        model.write_text(json.dumps({"tfp": 1.0, "elasticities": {"L": 0.67, "K": 0.33}}),
                         encoding="utf-8")
        result = run(["decompose", "--data", str(data), "--model", str(model),
                      "--format", "csv"])
        lines = result.stdout.strip().split("\n")
        assert lines[0] == "from,to,source,contribution,share_of_total"
        assert len(lines) == 4


class TestPlanCommand:
    def test_mixed_plan_csv_matches_table(self, mixed_config):
        result = run(["plan", "--config", str(mixed_config), "--format", "csv"])
        assert result.exit_code == 0, result.stderr
        lines = result.stdout.strip().split("\n")
        header = lines[0].split(",")
        rows = {int(line.split(",")[0]): line.split(",") for line in lines[1:]}
        for year, cells in TABLE_MIXED.items():
            got = rows[year]
            assert_close(float(got[header.index("Y")]), cells["Y"], 1e-3, f"Y[{year}]")
            assert_close(float(got[header.index("TFP")]), cells["TFP"], 1e-3, f"TFP[{year}]")
            for key in ("PI", "EM", "PT", "BD"):
                assert_close(float(got[header.index(key)]), cells[key], 1e-3, f"{key}[{year}]")

    def test_json_default_output(self, mixed_config):
        result = run(["plan", "--config", str(mixed_config)])
        payload = json.loads(result.stdout)
        assert payload["common_input_growth"] == pytest.approx(0.095238, abs=1e-5)
        assert len(payload["rows"]) == 6

    def test_out_directory_writes_reports(self, mixed_config, tmp_path):
        out_dir = tmp_path / "reports"
        result = run(["plan", "--config", str(mixed_config), "--out", str(out_dir)])
        assert result.exit_code == 0
        assert (out_dir / "plan.json").exists()
        assert (out_dir / "plan.csv").exists()
        charts = json.loads((out_dir / "charts.json").read_text(encoding="utf-8"))
        assert any(entry["label"] == "output" for entry in charts)

    def test_infeasible_mix_is_domain_error(self, mixed_config, tmp_path):
        config = json.loads(mixed_config.read_text(encoding="utf-8"))
        config["strategy"] = {"mode": "mixed", "tfp_growth": 0.30}
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps(config), encoding="utf-8")
        result = run(["plan", "--config", str(bad)])
        assert result.exit_code == 1
        assert json.loads(result.stderr)["error"]["code"] == "InfeasibleMix"


class TestEvaluateCommand:
    def test_on_plan_realization(self, mixed_config, tmp_path):
        plan_result = run(["plan", "--config", str(mixed_config)])
        plan_path = tmp_path / "plan.json"
        plan_path.write_text(plan_result.stdout, encoding="utf-8")

        plan = json.loads(plan_result.stdout)
        year1 = plan["rows"][1]
        realized = tmp_path / "realized.csv"
        realized.write_text(
            "period,PI,EM,PT,BD,output\n"
            "1,{PI},{EM},{PT},{BD},{Y}\n".format(
                PI=year1["input_levels"]["PI"],
                EM=year1["input_levels"]["EM"],
                PT=year1["input_levels"]["PT"],
                BD=year1["input_levels"]["BD"],
                Y=year1["output"],
            ),
            encoding="utf-8",
        )
        result = run(["evaluate", "--plan", str(plan_path), "--realized", str(realized)])
        assert result.exit_code == 0, result.stderr
        evaluations = json.loads(result.stdout)["evaluations"]
        assert len(evaluations) == 1
        assert evaluations[0]["output_gap"] == pytest.approx(0.0, abs=1e-12)
        assert evaluations[0]["remaining_required_rate"] == pytest.approx(0.15, rel=1e-9)


class TestCliContract:
    def test_usage_error_exits_two(self):
        assert run(["target", "multiple", "--m", "3"]).exit_code == 2
        assert run(["bogus"]).exit_code == 2
        assert run([]).exit_code == 2

    def test_unknown_flag_rejected(self):
        result = run(["target", "multiple", "--m", "3", "--rate", "0.1", "--frobnicate"])
        assert result.exit_code == 2
        assert result.stderr

    def test_repeated_runs_are_byte_identical(self, mixed_config):
        commands = [
            ["target", "catchup", "--follower", "632057000", "--leader", "1097000000",
             "--leader-rate", "0.03", "--horizon", "5"],
            ["plan", "--config", str(mixed_config)],
            ["plan", "--config", str(mixed_config), "--format", "csv"],
        ]
        for argv in commands:
            outputs = {run(argv).stdout for _ in range(3)}
            assert len(outputs) == 1

    def test_serve_command_is_wired(self):
        parser = build_parser()
        args = parser.parse_args(["serve", "--port", "9100", "--store", "/tmp/x"])
        assert args.command == "serve"
        assert args.port == 9100
