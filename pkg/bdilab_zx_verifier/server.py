import json
import logging
import uuid
from datetime import datetime, timezone
from http import HTTPStatus
from typing import Dict, Optional

import requests
import tornado.httpserver
import tornado.ioloop
import tornado.web
from cloudevents.sdk import converters
from cloudevents.sdk import marshaller
from cloudevents.sdk.event import v1

from bdilab_zx_verifier import json_encoder
from bdilab_zx_verifier.base import CEModel, ModelResponse, VerificationRequest
from bdilab_zx_verifier.constants import DEFAULT_HTTP_PORT
from bdilab_zx_verifier.env_utils import get_log_level
from bdilab_zx_verifier.errors import ZxError
from bdilab_zx_verifier.prometheus_metrics.metrics import (
    PARAM_EQ_METRIC_METHOD_TAG,
    VerifierMetrics,
    validate_metrics,
)
from bdilab_zx_verifier.protocols import Protocol
from bdilab_zx_verifier.protocols.dsl_http import DslRequestHandler
from bdilab_zx_verifier.protocols.request_handler import RequestHandler

logging.basicConfig(level=get_log_level())
logger = logging.getLogger(__name__)

REQUEST_HANDLERS = {Protocol.dsl_http: DslRequestHandler}


class VerifierServer(object):
    def __init__(
        self,
        protocol: Protocol,
        event_type: str,
        event_source: str,
        http_port: int = DEFAULT_HTTP_PORT,
        reply_url: str = "",
    ):
        """
        HTTP front end deciding equations posted as CloudEvents

        Parameters
        ----------
        protocol
             format of the request bodies
        event_type
             type of the reply cloudevents
        event_source
             source of the reply cloudevents
        http_port
             http port to listen on
        reply_url
             when not empty, every verdict is also posted there as a cloudevent
        """
        self.protocol = protocol
        self.event_type = event_type
        self.event_source = event_source
        self.http_port = http_port
        self.reply_url = reply_url
        self.model: Optional[CEModel] = None
        self.metrics = VerifierMetrics()

    def register_model(self, model: CEModel):
        if not model.name:
            raise ValueError("Cannot register a model without a name")
        model.load()
        self.model = model
        logger.info("Serving model %s over %s", model.name, self.protocol)

    def create_application(self) -> tornado.web.Application:
        verify_args = dict(server=self)
        return tornado.web.Application(
            [
                (r"/", VerifyHandler, verify_args),
                (r"/protocol", ProtocolHandler, dict(protocol=self.protocol)),
                (r"/healthz", LivenessHandler),
                (r"/v1/metrics", MetricsHandler, dict(metrics=self.metrics)),
            ]
        )

    def start(self, model: CEModel):
        self.register_model(model)
        http_server = tornado.httpserver.HTTPServer(self.create_application())
        http_server.bind(self.http_port)
        # single process
        http_server.start(1)
        logger.info("Listening on port %s", self.http_port)
        tornado.ioloop.IOLoop.current().start()


def get_request_handler(protocol: Protocol, body: Dict) -> RequestHandler:
    handler = REQUEST_HANDLERS.get(protocol)
    if handler is None:
        raise ValueError(f"Unknown protocol {protocol}")
    return handler(body)


def reply_event(request: v1.Event, data: Dict, event_source: str, event_type: str) -> v1.Event:
    """The verdict as a CloudEvent; it reuses the request id and extensions."""
    return (
        v1.Event()
        .SetContentType("application/json")
        .SetData(data)
        .SetEventID(request.EventID() or uuid.uuid1().hex)
        .SetSource(event_source)
        .SetEventType(event_type)
        .SetEventTime(datetime.now(timezone.utc).isoformat())
        .SetExtensions(request.Extensions())
    )


def send_cloud_event(event: v1.Event, url: str):
    """
    POST ``event`` to ``url`` in binary mode

    Parameters
    ----------
    event
         CloudEvent to send
    url
         Url to send event
    """
    headers, data = marshaller.NewDefaultHTTPMarshaller().ToRequest(
        event, converters.TypeBinary, json_encoder.dumps
    )
    logger.debug("Sending verdict %s to %s with headers %s", event.EventID(), url, headers)
    response = requests.post(url, headers=headers, data=data)
    response.raise_for_status()


def _bad_request(reason: str) -> tornado.web.HTTPError:
    # reason phrases must stay on one line
    return tornado.web.HTTPError(status_code=HTTPStatus.BAD_REQUEST, reason=" ".join(reason.split()))


class VerifyHandler(tornado.web.RequestHandler):
    def initialize(self, server: VerifierServer):
        self.server = server

    def _extract(self) -> VerificationRequest:
        try:
            body = json.loads(self.request.body)
        except json.decoder.JSONDecodeError as e:
            raise _bad_request(f"Unrecognized request format: {e}")
        handler = get_request_handler(self.server.protocol, body)
        try:
            handler.validate()
        except ValueError as e:
            raise _bad_request(str(e))
        return handler.extract_request()

    def _record(self, response: ModelResponse):
        if response.metrics is None:
            return
        if validate_metrics(response.metrics):
            self.server.metrics.update(response.metrics, PARAM_EQ_METRIC_METHOD_TAG)
        else:
            logger.error("Model returned invalid metrics: %s", response.metrics)

    def post(self):
        """
        Decide the equation in the request body and answer with the verdict.
        """
        inputs = self._extract()
        event = marshaller.NewDefaultHTTPMarshaller().FromRequest(
            v1.Event(), self.request.headers, self.request.body, json.loads
        )
        headers = dict(self.request.headers.get_all())
        try:
            response = self.server.model.process_event(inputs, headers)
        except ZxError as e:
            logger.info("Rejected %s: %s", event.EventID(), e)
            raise _bad_request(f"{type(e).__name__}: {e}")

        self._record(response)
        if self.server.reply_url:
            send_cloud_event(
                reply_event(event, response.data, self.server.event_source, self.server.event_type),
                self.server.reply_url,
            )
        self.set_header("Content-Type", "application/json")
        self.write(json_encoder.dumps(response.data))


class LivenessHandler(tornado.web.RequestHandler):
    def get(self):
        self.write("Alive")


class ProtocolHandler(tornado.web.RequestHandler):
    def initialize(self, protocol: Protocol):
        self.protocol = protocol

    def get(self):
        self.write(str(self.protocol))


class MetricsHandler(tornado.web.RequestHandler):
    def initialize(self, metrics: VerifierMetrics):
        self.metrics = metrics

    def get(self):
        text, mimetype = self.metrics.generate_metrics()
        self.set_header("Content-Type", mimetype)
        self.write(text)
