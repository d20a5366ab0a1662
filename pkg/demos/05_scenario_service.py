"""Drive the HTTP scenario service end to end, in process.

Uploads a dataset, creates a scenario, computes its plan, asks two what-if
questions, and submits a realized year. Uses the FastAPI test client so no
port is opened; the same calls work against `growthplan serve`.

Run: python demos/05_scenario_service.py
"""

import tempfile

from fastapi.testclient import TestClient

from growthplan.service import build_app

DATASET_CSV = (
    "period,FL,ST,OH,output\n"
    "2024,551.3,71,12470,1742000\n"
)

SCENARIO = {
    "model": {
        "tfp": 2679.7,
        "elasticities": {"FL": 0.45, "ST": 0.30, "OH": 0.25},
        "crts_imposed": True,
        "residual_variance": 0.0,
    },
    "target": {"kind": "explicit_rate", "rate": 0.12},
    "strategy": {"mode": "mixed", "tfp_growth": 0.03},
    "horizon_years": 5,
    "discrete_inputs": ["ST"],
}


def main():
    with tempfile.TemporaryDirectory() as store_dir, \
            TestClient(build_app(store_dir)) as client:
        dataset_id = client.post("/datasets", json={"csv": DATASET_CSV}).json()["id"]
        print(f"dataset stored as {dataset_id}")

        scenario = client.post(
            "/scenarios", json=dict(SCENARIO, dataset_ref=dataset_id)).json()
        sid = scenario["id"]
        print(f"scenario {sid} at version {scenario['version']}")

        plan = client.post(f"/scenarios/{sid}/plan").json()
        print(f"plan: {100 * plan['annual_output_growth']:.1f}% output growth, "
              f"inputs at {100 * plan['common_input_growth']:.2f}%/year")

        flat = client.post(f"/scenarios/{sid}/what-if",
                           json={"strategy": {"mode": "tfp_only", "tfp_growth": 0.0}}).json()
        print(f"what-if all from productivity: inputs at "
              f"{100 * flat['common_input_growth']:.2f}%/year (flat)")

        slower = client.post(f"/scenarios/{sid}/what-if",
                             json={"horizon_years": 8}).json()
        print(f"what-if 8-year horizon: same rate target, "
              f"{len(slower['rows']) - 1} planned years")

        year1 = plan["rows"][1]
        evaluation = client.post(f"/scenarios/{sid}/realized", json={
            "year": 1,
            "input_levels": year1["input_levels"],
            "output_level": year1["output"] * 0.97,
        }).json()
        print(f"realized year 1 came in {100 * evaluation['output_gap']:+.1f}%; "
              f"remaining years need {100 * evaluation['remaining_required_rate']:.2f}%/year")

        report = client.get(f"/scenarios/{sid}/report", params={"format": "csv"})
        print("\nplan report (CSV):")
        for line in report.text.strip().split("\n"):
            print(" ", line)


if __name__ == "__main__":
    main()
