import json
from fractions import Fraction as F

import pytest
from fastapi.testclient import TestClient

from diagonal_forge.service import create_app


@pytest.fixture()
def client():
    return TestClient(create_app())


class TestGameSessions:
    def test_create_interval_game(self, client):
        r = client.post("/games", json={"kind": "interval", "enum": "rationals_01"})
        assert r.status_code == 200
        body = r.json()
        assert body["id"] == "g1"
        assert body["status"] == "awaiting_alice"
        assert body["round"] == 1
        assert body["allowed"]["lo"] == "0"
        assert body["allowed"]["hi"] == "1"

    def test_alice_move_triggers_strategy_bob(self, client):
        sid = client.post(
            "/games", json={"kind": "interval", "enum": "rationals_01"}
        ).json()["id"]
        r = client.post(
            "/games/%s/moves" % sid, json={"role": "alice", "value": "1/2"}
        )
        assert r.status_code == 200
        body = r.json()
        # s_1 = 1/2 is not inside (1/2, 1), so Bob answers the midpoint 3/4
        assert body["history"]["a"] == ["1/2"]
        assert body["history"]["b"] == ["3/4"]
        assert body["status"] == "awaiting_alice"
        assert body["round"] == 2

    def test_illegal_move_gives_exact_inequality(self, client):
        sid = client.post(
            "/games", json={"kind": "interval", "enum": "rationals_01"}
        ).json()["id"]
        client.post("/games/%s/moves" % sid, json={"role": "alice", "value": "1/2"})
        r = client.post(
            "/games/%s/moves" % sid, json={"role": "alice", "value": "1/3"}
        )
        assert r.status_code == 400
        body = r.json()
        assert body["code"] == "illegal-move"
        assert body["message"] == "a_2 = 1/3 violates a_2 in (1/2,3/4)"

    def test_scripted_game_returns_certificate(self, client):
        r = client.post("/games", json={
            "kind": "interval", "enum": "rationals_01",
            "alice": "midpoint", "rounds": 8,
        })
        body = r.json()
        assert body["status"] == "closed"
        assert len(body["certificate"]["rounds"]) == 8
        assert body["result"]["type"] == "nested"

    def test_diagonal_game(self, client):
        grid = {
            "kind": "digit_grid",
            "entries": [
                {"stream": {"base": 10, "digits": [5] * 8}} for _ in range(8)
            ],
        }
        sid = client.post(
            "/games", json={"kind": "diagonal", "enum": grid}
        ).json()["id"]
        r = client.post("/games/%s/moves" % sid, json={"role": "alice", "value": 3})
        body = r.json()
        assert body["history"]["a_digits"] == [3]
        assert len(body["history"]["z_digits"]) == 1
        assert body["history"]["z_digits"][0] != 0

    def test_unknown_session_404(self, client):
        assert client.get("/games/g99").status_code == 404
        r = client.post("/games/nope/moves", json={"role": "alice", "value": "1/2"})
        assert r.status_code == 404

    def test_malformed_body_rejected(self, client):
        r = client.post(
            "/games", content=b"not json",
            headers={"content-type": "application/json"},
        )
        assert r.status_code == 400
        assert r.json()["code"] == "parse-error"


class TestConstructSessions:
    def test_trisect_run(self, client):
        r = client.post("/construct", json={
            "method": "trisect", "enum": "rationals_01", "depth": 8,
        })
        assert r.status_code == 200
        body = r.json()
        assert body["id"] == "c1"
        assert body["verified"] is True
        chain = body["result"]["chain"]
        assert len(chain) == 9
        # width law on the wire: |I_n| = 3^(1-n) for the stored chain
        lo, hi = F(chain[-1]["lo"]), F(chain[-1]["hi"])
        assert hi - lo == F(1, 3**8)

    def test_verify_endpoint(self, client):
        sid = client.post("/construct", json={
            "method": "cantor1874", "enum": "rationals_01", "depth": 6,
        }).json()["id"]
        r = client.get("/construct/%s/verify" % sid)
        assert r.json() == {"ok": True}

    def test_inline_verify_catches_tampering(self, client):
        body = client.post("/construct", json={
            "method": "trisect", "enum": "rationals_01", "depth": 6,
        }).json()
        cert = body["certificate"]
        cert["enclosure"]["lo"] = "0"
        cert["enclosure"]["hi"] = "1/100"
        r = client.post("/verify", json={
            "result": body["result"], "certificate": cert,
            "enum": "rationals_01",
        })
        out = r.json()
        assert out["ok"] is False
        assert "failure" in out

    def test_inline_verify_requires_parts(self, client):
        r = client.post("/verify", json={"enum": "rationals_01"})
        assert r.status_code == 400

    def test_wenner_over_wire(self, client):
        # constant sequences trivially satisfy the 2^-(3k+2) modulus
        reals = [["%d/10" % k] * 10 for k in range(1, 9)]
        r = client.post("/construct", json={
            "method": "wenner", "reals": reals, "depth": 8,
        })
        body = r.json()
        assert body["verified"] is True
        assert body["result"]["type"] == "cauchy"
        r2 = client.post("/verify", json={
            "result": body["result"], "certificate": body["certificate"],
            "reals": reals,
        })
        assert r2.json()["ok"] is True

    def test_unknown_method(self, client):
        r = client.post("/construct", json={"method": "zigzag", "enum": "rationals_01"})
        assert r.status_code == 400


class TestPersistenceReplay:
    def test_move_log_replays_to_identical_state(self, tmp_path):
        log = tmp_path / "events.jsonl"
        client = TestClient(create_app(persist=str(log)))
        sid = client.post(
            "/games", json={"kind": "interval", "enum": "rationals_01"}
        ).json()["id"]
        for _ in range(4):
            allowed = client.get("/games/%s" % sid).json()["allowed"]
            mid = (F(allowed["lo"]) + F(allowed["hi"])) / 2
            r = client.post(
                "/games/%s/moves" % sid,
                json={"role": "alice", "value": "%s" % mid},
            )
            assert r.status_code == 200
        final = client.get("/games/%s" % sid).json()

        events = [json.loads(line) for line in log.read_text().splitlines()]
        assert [e["event"] for e in events] == ["create"] + ["move"] * 4

        replay = TestClient(create_app())
        rid = replay.post("/games", json=events[0]["body"]).json()["id"]
        for e in events[1:]:
            replay.post("/games/%s/moves" % rid, json=e["body"])
        replayed = replay.get("/games/%s" % rid).json()
        assert json.dumps(replayed, sort_keys=True) == json.dumps(
            final, sort_keys=True
        )
