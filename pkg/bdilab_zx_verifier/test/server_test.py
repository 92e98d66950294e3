import json

from cloudevents.sdk.event import v1
from tornado.testing import AsyncHTTPTestCase

from bdilab_zx_verifier.protocols import Protocol
from bdilab_zx_verifier.server import VerifierServer, reply_event
from bdilab_zx_verifier.verifier_model import ParamEqModel

CE_HEADERS = {
    "ce-specversion": "1.0",
    "ce-id": "zxv-1",
    "ce-source": "test",
    "ce-type": "io.bdilab.zxv.request",
    "Content-Type": "application/json",
}


class TestServer(AsyncHTTPTestCase):
    def get_app(self):
        self.server = VerifierServer(Protocol.dsl_http, "io.bdilab.zxv.verdict", "zxv-test")
        self.server.register_model(ParamEqModel("param_eq_model"))
        return self.server.create_application()

    def post(self, body):
        text = body if isinstance(body, str) else json.dumps(body)
        return self.fetch("/", method="POST", body=text, headers=CE_HEADERS)

    def test_equation_holds(self):
        response = self.post({"lhs": "Z[1,1](a) ; Z[1,1](b)", "rhs": "Z[1,1](a + b)"})
        assert response.code == 200
        data = json.loads(response.body)
        assert data["holds"] is True
        assert data["method"] == "grid"
        assert data["witness"] is None

    def test_equation_fails(self):
        response = self.post({"lhs": "Z[1,1](a)", "rhs": "Z[1,1](-a)", "method": "projector"})
        assert response.code == 200
        data = json.loads(response.body)
        assert data["holds"] is False
        assert data["method"] == "projector"
        assert data["mu"] == {"a": 2}

    def test_bad_json(self):
        response = self.post("{lhs")
        assert response.code == 400

    def test_missing_key(self):
        response = self.post({"lhs": "H"})
        assert response.code == 400
        assert "rhs" in response.reason

    def test_unknown_method(self):
        response = self.post({"lhs": "H", "rhs": "H", "method": "guess"})
        assert response.code == 400

    def test_parse_error(self):
        response = self.post({"lhs": "Z[1,1](a", "rhs": "H"})
        assert response.code == 400
        assert response.reason.startswith("ParseError")

    def test_non_linear(self):
        response = self.post({"lhs": "Z[1,1](1/2 a)", "rhs": "id"})
        assert response.code == 400
        assert response.reason.startswith("NonLinearPhase")

    def test_liveness(self):
        response = self.fetch("/healthz")
        assert response.code == 200
        assert response.body == b"Alive"

    def test_protocol(self):
        assert self.fetch("/protocol").body == b"dsl.http"

    def test_metrics(self):
        self.post({"lhs": "Z[1,1](a)", "rhs": "Z[1,1](-a)"})
        response = self.fetch("/v1/metrics")
        assert response.code == 200
        text = response.body.decode("utf-8")
        assert "zxv_verdicts_total" in text
        assert "zxv_failed_verdicts_total" in text
        assert "zxv_decision_seconds_bucket" in text
        assert 'variable="a"' in text


def test_reply_event_reuses_request_id():
    request = v1.Event().SetEventID("zxv-7").SetSource("client").SetEventType("io.bdilab.zxv.request")
    reply = reply_event(request, {"holds": True}, "zxv-test", "io.bdilab.zxv.verdict")
    assert reply.EventID() == "zxv-7"
    assert reply.Source() == "zxv-test"
    assert reply.EventType() == "io.bdilab.zxv.verdict"
    assert reply.Data() == {"holds": True}


def test_reply_event_generates_missing_id():
    reply = reply_event(v1.Event(), {"holds": False}, "zxv-test", "io.bdilab.zxv.verdict")
    assert reply.EventID()
