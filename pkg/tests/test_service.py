import threading

import pytest
from fastapi.testclient import TestClient

from growthplan.service import JsonFileStore, build_app

from conftest import TABLE_MIXED, assert_close

PROPANE_CSV = (
    "period,PI,EM,PT,BD,output\n"
    "0,695262700,4000,2400,1200000,632057000\n"
)

MODEL = {
    "tfp": 9811,
    "elasticities": {"PI": 0.2, "EM": 0.3, "PT": 0.4, "BD": 0.1},
    "crts_imposed": True,
    "residual_variance": 0.0,
}

SCENARIO_BODY = {
    "model": MODEL,
    "target": {"kind": "explicit_rate", "rate": 0.15},
    "strategy": {"mode": "mixed", "tfp_growth": 0.05},
    "horizon_years": 5,
    "discrete_inputs": ["EM", "PT"],
}


@pytest.fixture
def store_dir(tmp_path):
    return tmp_path / "store"


@pytest.fixture
def client(store_dir):
    app = build_app(store_dir)
    with TestClient(app, raise_server_exceptions=False) as c:
        yield c


@pytest.fixture
def dataset_id(client):
    response = client.post("/datasets", json={"csv": PROPANE_CSV})
    assert response.status_code == 201
    return response.json()["id"]


@pytest.fixture
def scenario(client, dataset_id):
    body = dict(SCENARIO_BODY, dataset_ref=dataset_id)
    response = client.post("/scenarios", json=body)
    assert response.status_code == 201, response.text
    return response.json()


class TestDatasets:
    def test_round_trip_byte_identical(self, client, dataset_id):
        response = client.get(f"/datasets/{dataset_id}")
        assert response.status_code == 200
        assert response.json()["csv"] == PROPANE_CSV

    def test_invalid_csv_rejected_with_location(self, client):
        response = client.post("/datasets", json={"csv": "period,L,output\n0,1,0\n"})
        assert response.status_code == 400
        error = response.json()["error"]
        assert error["code"] == "NonPositiveLevel"
        assert error["detail"]["row"] == 2

    def test_duplicate_uploads_get_distinct_ids(self, client):
        first = client.post("/datasets", json={"csv": PROPANE_CSV}).json()["id"]
        second = client.post("/datasets", json={"csv": PROPANE_CSV}).json()["id"]
        assert first != second

    def test_unknown_dataset_is_404(self, client):
        response = client.get("/datasets/missing")
        assert response.status_code == 404
        assert response.json()["error"]["code"] == "NotFound"


class TestEstimateEndpoint:
    def test_fits_from_stored_dataset(self, client):
        rows = ["period,L,K,output"]
        for t in range(8):
            l, k = 10.0 + 3 * t, 40.0 - 2.5 * t
            rows.append(f"{t},{l},{k},{2.0 * l ** 0.3 * k ** 0.7}")
        dataset_id = client.post(
            "/datasets", json={"csv": "\n".join(rows) + "\n"}).json()["id"]
        response = client.post("/models/estimate",
                               json={"dataset_id": dataset_id, "crts": False})
        assert response.status_code == 200
        model = response.json()
        assert model["tfp"] == pytest.approx(2.0, rel=1e-6)
        assert model["elasticities"]["K"] == pytest.approx(0.7, abs=1e-6)


class TestScenarioLifecycle:
    def test_create_and_get(self, client, scenario):
        assert scenario["version"] == 1
        assert scenario["latest_plan"] is None
        fetched = client.get(f"/scenarios/{scenario['id']}").json()
        assert fetched == scenario

    def test_patch_with_if_match(self, client, scenario):
        response = client.patch(
            f"/scenarios/{scenario['id']}",
            json={"horizon_years": 8},
            headers={"If-Match": str(scenario["version"])},
        )
        assert response.status_code == 200
        body = response.json()
        assert body["horizon_years"] == 8
        assert body["version"] == scenario["version"] + 1

    def test_patch_with_stale_version_conflicts(self, client, scenario):
        response = client.patch(
            f"/scenarios/{scenario['id']}",
            json={"horizon_years": 8},
            headers={"If-Match": "99"},
        )
        assert response.status_code == 409
        assert response.json()["error"]["code"] == "VersionConflict"

    def test_patch_without_if_match_rejected(self, client, scenario):
        response = client.patch(f"/scenarios/{scenario['id']}", json={"horizon_years": 8})
        assert response.status_code == 409

    def test_patch_invalidates_stored_plan(self, client, scenario):
        client.post(f"/scenarios/{scenario['id']}/plan")
        version = client.get(f"/scenarios/{scenario['id']}").json()["version"]
        patched = client.patch(
            f"/scenarios/{scenario['id']}",
            json={"strategy": {"mode": "inputs_only", "tfp_growth": 0.0}},
            headers={"If-Match": str(version)},
        ).json()
        assert patched["latest_plan"] is None

    def test_concurrent_conflicting_patches(self, client, scenario):
        start = threading.Barrier(2)
        statuses = []

        def attempt(horizon):
            start.wait()
            response = client.patch(
                f"/scenarios/{scenario['id']}",
                json={"horizon_years": horizon},
                headers={"If-Match": str(scenario["version"])},
            )
            statuses.append(response.status_code)

        threads = [threading.Thread(target=attempt, args=(h,)) for h in (6, 7)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert sorted(statuses) == [200, 409]

    def test_unknown_scenario_is_404(self, client):
        assert client.get("/scenarios/none").status_code == 404
        assert client.post("/scenarios/none/plan").status_code == 404


class TestPlanEndpoint:
    def test_plan_matches_reference_table(self, client, scenario):
        response = client.post(f"/scenarios/{scenario['id']}/plan")
        assert response.status_code == 200, response.text
        plan = response.json()
        rows = {row["year"]: row for row in plan["rows"]}
        for year, cells in TABLE_MIXED.items():
            assert_close(rows[year]["output"], cells["Y"], 1e-3, f"Y[{year}]")
            assert_close(rows[year]["tfp"], cells["TFP"], 1e-3, f"TFP[{year}]")
            for key in ("PI", "EM", "PT", "BD"):
                display = rows[year]["input_levels_display"].get(key, rows[year]["input_levels"][key])
                assert_close(display, cells[key], 1e-3, f"{key}[{year}]")

    def test_plan_persists_and_bumps_version(self, client, scenario):
        client.post(f"/scenarios/{scenario['id']}/plan")
        after = client.get(f"/scenarios/{scenario['id']}").json()
        assert after["version"] == scenario["version"] + 1
        assert after["latest_plan"] is not None

    def test_repeated_compute_is_deterministic(self, client, scenario):
        first = client.post(f"/scenarios/{scenario['id']}/plan")
        second = client.post(f"/scenarios/{scenario['id']}/plan")
        assert first.text == second.text
        version = client.get(f"/scenarios/{scenario['id']}").json()["version"]
        assert version == scenario["version"] + 2  # one bump per compute

    def test_tfp_only_strategy_keeps_inputs_flat(self, client, dataset_id):
        body = dict(SCENARIO_BODY, dataset_ref=dataset_id,
                    strategy={"mode": "tfp_only", "tfp_growth": 0.0})
        scenario_id = client.post("/scenarios", json=body).json()["id"]
        plan = client.post(f"/scenarios/{scenario_id}/plan").json()
        base_levels = plan["rows"][0]["input_levels"]
        for row in plan["rows"]:
            assert row["input_levels"] == base_levels

    def test_infeasible_mix_is_422(self, client, dataset_id):
        body = dict(SCENARIO_BODY, dataset_ref=dataset_id,
                    strategy={"mode": "mixed", "tfp_growth": 0.40})
        scenario_id = client.post("/scenarios", json=body).json()["id"]
        response = client.post(f"/scenarios/{scenario_id}/plan")
        assert response.status_code == 422
        assert response.json()["error"]["code"] == "InfeasibleMix"

    def test_stale_if_match_conflicts(self, client, scenario):
        response = client.post(f"/scenarios/{scenario['id']}/plan",
                               headers={"If-Match": "41"})
        assert response.status_code == 409


class TestWhatIf:
    def test_tfp_override_drops_input_growth(self, client, dataset_id):
        body = dict(SCENARIO_BODY, dataset_ref=dataset_id,
                    strategy={"mode": "inputs_only", "tfp_growth": 0.0})
        scenario_id = client.post("/scenarios", json=body).json()["id"]
        baseline = client.post(f"/scenarios/{scenario_id}/plan").json()
        assert baseline["common_input_growth"] == pytest.approx(0.15, abs=1e-12)

        what_if = client.post(
            f"/scenarios/{scenario_id}/what-if",
            json={"strategy": {"mode": "mixed", "tfp_growth": 0.05}},
        ).json()
        assert what_if["common_input_growth"] == pytest.approx(0.095238, abs=1e-5)

    def test_empty_overrides_equal_latest_plan(self, client, scenario):
        planned = client.post(f"/scenarios/{scenario['id']}/plan")
        what_if = client.post(f"/scenarios/{scenario['id']}/what-if", json={})
        assert what_if.text == planned.text

    def test_longer_horizon_needs_lower_rate(self, client, dataset_id):
        body = dict(SCENARIO_BODY, dataset_ref=dataset_id,
                    target={"kind": "multiple", "multiple": 2.0},
                    strategy={"mode": "inputs_only", "tfp_growth": 0.0})
        scenario_id = client.post("/scenarios", json=body).json()["id"]
        base = client.post(f"/scenarios/{scenario_id}/plan").json()
        longer = client.post(f"/scenarios/{scenario_id}/what-if",
                             json={"horizon_years": 10}).json()
        assert longer["annual_output_growth"] < base["annual_output_growth"]

    def test_never_persists_a_byte(self, client, scenario, store_dir):
        client.post(f"/scenarios/{scenario['id']}/plan")
        store = JsonFileStore(store_dir)
        before = store.content_hash()
        for tfp_growth in (0.01, 0.03, 0.05):
            response = client.post(
                f"/scenarios/{scenario['id']}/what-if",
                json={"strategy": {"mode": "mixed", "tfp_growth": tfp_growth}},
            )
            assert response.status_code == 200
        assert store.content_hash() == before
        version = client.get(f"/scenarios/{scenario['id']}").json()["version"]
        assert version == scenario["version"] + 1  # only the plan call bumped

    def test_infeasible_merge_is_422(self, client, scenario):
        response = client.post(
            f"/scenarios/{scenario['id']}/what-if",
            json={"strategy": {"mode": "mixed", "tfp_growth": 0.40}},
        )
        assert response.status_code == 422


class TestRealized:
    def _realized_body(self, plan, year, output_scale=1.0):
        row = next(r for r in plan["rows"] if r["year"] == year)
        return {
            "year": year,
            "input_levels": row["input_levels"],
            "output_level": row["output"] * output_scale,
        }

    def test_on_plan_realization_has_zero_gaps(self, client, scenario):
        plan = client.post(f"/scenarios/{scenario['id']}/plan").json()
        response = client.post(f"/scenarios/{scenario['id']}/realized",
                               json=self._realized_body(plan, 1))
        assert response.status_code == 200, response.text
        evaluation = response.json()
        assert evaluation["output_gap"] == pytest.approx(0.0, abs=1e-12)
        assert evaluation["remaining_required_rate"] == pytest.approx(0.15, rel=1e-9)

    def test_shortfall_matches_loop_oracle(self, client, scenario):
        plan = client.post(f"/scenarios/{scenario['id']}/plan").json()
        response = client.post(f"/scenarios/{scenario['id']}/realized",
                               json=self._realized_body(plan, 1, output_scale=0.95))
        rate = response.json()["remaining_required_rate"]
        value = plan["rows"][1]["output"] * 0.95
        for _ in range(4):
            value *= 1.0 + rate
        assert value == pytest.approx(plan["rows"][5]["output"], rel=1e-9)

    def test_evaluations_accumulate(self, client, scenario):
        plan = client.post(f"/scenarios/{scenario['id']}/plan").json()
        client.post(f"/scenarios/{scenario['id']}/realized", json=self._realized_body(plan, 1))
        client.post(f"/scenarios/{scenario['id']}/realized", json=self._realized_body(plan, 2))
        record = client.get(f"/scenarios/{scenario['id']}").json()
        assert [ev["year"] for ev in record["evaluations"]] == [1, 2]

    def test_year_beyond_horizon_conflicts(self, client, scenario):
        plan = client.post(f"/scenarios/{scenario['id']}/plan").json()
        body = self._realized_body(plan, 5)
        body["year"] = 9
        response = client.post(f"/scenarios/{scenario['id']}/realized", json=body)
        assert response.status_code == 409
        assert response.json()["error"]["code"] == "PeriodMismatch"

    def test_requires_computed_plan(self, client, scenario):
        response = client.post(
            f"/scenarios/{scenario['id']}/realized",
            json={"year": 1, "input_levels": {"PI": 1, "EM": 1, "PT": 1, "BD": 1},
                  "output_level": 1},
        )
        assert response.status_code == 409
        assert response.json()["error"]["code"] == "MissingPlan"


class TestReport:
    def test_csv_report(self, client, scenario):
        client.post(f"/scenarios/{scenario['id']}/plan")
        response = client.get(f"/scenarios/{scenario['id']}/report", params={"format": "csv"})
        assert response.status_code == 200
        assert response.headers["content-type"].startswith("text/csv")
        assert response.text.startswith("year,Y,gY%,TFP,gTFP%")

    def test_json_report_equals_latest_plan(self, client, scenario):
        planned = client.post(f"/scenarios/{scenario['id']}/plan")
        report = client.get(f"/scenarios/{scenario['id']}/report")
        assert report.text == planned.text

    def test_report_without_plan_conflicts(self, client, scenario):
        response = client.get(f"/scenarios/{scenario['id']}/report")
        assert response.status_code == 409
        assert response.json()["error"]["code"] == "MissingPlan"


class TestStore:
    def test_write_then_read_identical(self, tmp_path):
        store = JsonFileStore(tmp_path / "s")
        payload = {"alpha": 0.2, "nested": {"values": [1, 2.5, None]}}
        store.put("dataset", "abc", payload)
        assert store.get("dataset", "abc") == payload

    def test_hash_changes_on_write(self, tmp_path):
        store = JsonFileStore(tmp_path / "s")
        store.put("dataset", "abc", {"v": 1})
        first = store.content_hash()
        store.put("dataset", "abc", {"v": 2})
        assert store.content_hash() != first

    def test_concurrent_writes_never_interleave(self, tmp_path):
        # Hammer one record from many threads; every read along the way and
        # the final file must be a complete, valid payload from some writer.
        store = JsonFileStore(tmp_path / "s")
        store.put("scenario", "x", {"writer": -1, "blob": "0" * 2048})
        seen = []

        def writer(i):
            for _ in range(20):
                store.put("scenario", "x", {"writer": i, "blob": str(i) * 2048})
                seen.append(store.get("scenario", "x"))

        threads = [threading.Thread(target=writer, args=(i,)) for i in range(4)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        for payload in seen:
            assert payload["blob"] == str(payload["writer"]) * 2048
        final = store.get("scenario", "x")
        assert final["blob"] == str(final["writer"]) * 2048
