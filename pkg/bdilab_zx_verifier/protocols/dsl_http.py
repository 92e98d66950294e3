from bdilab_zx_verifier.base import VerificationRequest
from bdilab_zx_verifier.projector import Method
from bdilab_zx_verifier.protocols.request_handler import RequestHandler

SUPPORTED_METHODS = (str(Method.grid), str(Method.projector), str(Method.both))


class DslRequestHandler(RequestHandler):
    """``{"lhs": dsl, "rhs": dsl, "method": "grid|projector|both"}``; method defaults to grid."""

    text_keys = ("lhs", "rhs")

    def validate(self):
        super().validate()
        method = self.request.get("method", str(Method.grid))
        if method not in SUPPORTED_METHODS:
            raise ValueError(f"Unknown method '{method}', expected one of {', '.join(SUPPORTED_METHODS)}")

    def extract_request(self) -> VerificationRequest:
        return self.request["lhs"], self.request["rhs"], self.request.get("method", str(Method.grid))
