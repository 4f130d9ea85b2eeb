"""Regenerate the captured service fixtures for the frontend tests.

Drives the real HTTP service in process and stores the iso-12-1
scenario document, the initial session response, droplet payloads after
0, 15, and 30 of the 1 ms delays (16x32 grid), and the event log.
"""

import json
import pathlib

from fastapi.testclient import TestClient

from spindrops.service import create_app

OUT = pathlib.Path(__file__).parent


def main():
    client = TestClient(create_app())

    scenario = client.get("/scenarios/iso-12-1").json()
    (OUT / "iso-12-1.sequence.json").write_text(json.dumps(scenario, indent=1))

    payload = {
        "spins": scenario["system"]["spins"],
        "hamiltonian": scenario["hamiltonian"],
        "rho0": scenario["rho0"],
    }
    body = client.post("/sessions", json=payload).json()
    sid = body["session_id"]
    (OUT / "iso-12-1.session.json").write_text(json.dumps(body, indent=1))

    def droplets():
        return client.get(
            f"/sessions/{sid}/droplets", params={"grid": "16x32"}
        ).json()

    snapshots = {"0": droplets()}
    for k in range(1, 31):
        client.post(f"/sessions/{sid}/delay", json={"seconds": 0.001})
        if k in (15, 30):
            snapshots[str(k)] = droplets()
    (OUT / "iso-12-1.droplets.json").write_text(json.dumps(snapshots, indent=1))

    log = client.get(f"/sessions/{sid}/log").json()
    (OUT / "iso-12-1.log.json").write_text(json.dumps(log, indent=1))
    print("fixtures written to", OUT)


if __name__ == "__main__":
    main()
