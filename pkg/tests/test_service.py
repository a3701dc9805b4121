"""HTTP API: validation, status codes and coherence with the engine."""
import pytest
from fastapi.testclient import TestClient

from fdes.engine import FdesEngine, Indicator
from fdes.service import create_app
from fdes.store import EvalStore, StudentRoster

ENGINE = FdesEngine()


@pytest.fixture
def client(tmp_path):
    store = EvalStore(tmp_path / "records.jsonl", ENGINE)
    roster = StudentRoster({"s1": {"name": "Roya Karimi", "course": "mathematics"}})
    with TestClient(create_app(store, roster)) as c:
        yield c
    store.close()


def post_eval(client, student="s1", **body):
    payload = {"indicator": "A", "day": 1, "value": "G"}
    payload.update(body)
    return client.post(f"/students/{student}/evaluations", json=payload)


class TestHealth:
    def test_healthz(self, client):
        res = client.get("/healthz")
        assert res.status_code == 200
        assert res.json()["status"] == "ok"


class TestPostEvaluation:
    def test_first_record(self, client):
        res = post_eval(client)
        assert res.status_code == 201
        doc = res.json()
        assert doc["seq"] == 1
        assert doc["indicators"]["A"] == pytest.approx(16.666667, abs=1e-6)
        assert doc["final"]["term"] == "G"
        assert doc["clamped"] is False

    def test_status_after_post_matches_engine(self, client):
        post_eval(client)
        res = client.get("/students/s1/status")
        assert res.status_code == 200
        doc = res.json()
        state = ENGINE.apply_record(ENGINE.fresh_state(), ENGINE.make_record("s1", "A", 1, "G"))
        assert doc["indicators"]["A"] == state.accumulators[0].current
        assert doc["final"]["value"] == state.final

    def test_out_of_range_value_is_clamped_and_flagged(self, client):
        res = post_eval(client, value=25.0)
        assert res.status_code == 201
        doc = res.json()
        assert doc["clamped"] is True
        assert doc["applied_value"] == 20.0

    def test_day_regression_conflicts(self, client):
        assert post_eval(client, day=10).status_code == 201
        res = post_eval(client, indicator="B", day=9, value=14.0)
        assert res.status_code == 409
        assert "day" in res.json()["detail"]

    def test_month_day_form(self, client):
        res = post_eval(client, day=None, month="ABAN", day_of_month=30)
        assert res.status_code == 201
        assert client.get("/students/s1/status").json()["last_update_day"] == 60

    def test_both_day_forms_rejected(self, client):
        res = post_eval(client, day=3, month="MEHR", day_of_month=3)
        assert res.status_code == 400

    def test_unknown_indicator_rejected(self, client):
        res = post_eval(client, indicator="Z")
        assert res.status_code == 400
        assert "indicator" in res.json()["detail"]

    def test_malformed_body_reports_fields(self, client):
        res = client.post("/students/s1/evaluations", json={"indicator": "A"})
        assert res.status_code == 400
        assert "value" in res.json()["detail"]

    def test_bad_term_label_rejected(self, client):
        res = post_eval(client, value="SUPERB")
        assert res.status_code == 400


class TestReads:
    def test_unknown_student_404(self, client):
        for path in ("status", "timeline", "report"):
            assert client.get(f"/students/ghost/{path}").status_code == 404

    def test_timeline(self, client):
        post_eval(client, day=1)
        post_eval(client, indicator="B", day=3, value=14.0)
        res = client.get("/students/s1/timeline", params={"from_day": 1, "to_day": 5})
        assert res.status_code == 200
        days = res.json()["days"]
        assert len(days) == 5
        assert days[0]["status"]["B"] is None
        assert days[2]["status"]["B"] == 14.0
        assert days[4]["term"] in {"NME", "AE", "G", "VG"}

    def test_timeline_validates_range(self, client):
        post_eval(client)
        res = client.get("/students/s1/timeline", params={"from_day": 9, "to_day": 3})
        assert res.status_code == 400

    def test_report(self, client):
        post_eval(client)
        res = client.get("/students/s1/report")
        assert res.status_code == 200
        doc = res.json()
        assert doc["student_id"] == "s1"
        assert doc["student_name"] == "Roya Karimi"
        assert doc["final"]["term"] == "G"
        assert doc["indicators"]["A"]["evaluations"] == 1

    def test_coherence_over_many_records(self, client):
        history = [
            ("A", 1, 18.0), ("E", 2, "G"), ("A", 5, "VG"), ("B", 31, 16.0), ("E", 40, 17.2),
        ]
        for ind, day, value in history:
            assert post_eval(client, indicator=ind, day=day, value=value).status_code == 201
        state = ENGINE.fresh_state()
        for ind, day, value in history:
            state = ENGINE.apply_record(state, ENGINE.make_record("s1", ind, day, value))
        doc = client.get("/students/s1/status").json()
        for k, ind in enumerate(Indicator):
            assert doc["indicators"][ind.value] == state.accumulators[k].current
        assert doc["final"]["value"] == state.final
