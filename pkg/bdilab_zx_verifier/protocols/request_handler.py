from typing import Dict, Tuple

from bdilab_zx_verifier.base import VerificationRequest


class RequestHandler(object):
    """Checks a decoded request body and pulls the verification request out of it."""

    # keys that must be present and hold DSL text
    text_keys: Tuple[str, ...] = ()

    def __init__(self, request: Dict):
        self.request = request

    def validate(self):
        """
        Raise ValueError when the body is not an object or a text key is missing or not a string.
        """
        if not isinstance(self.request, dict):
            raise ValueError("Expected a JSON object in request body")
        for key in self.text_keys:
            if key not in self.request:
                raise ValueError(f"Expected key '{key}' in request body")
            if not isinstance(self.request[key], str):
                raise ValueError(f"Expected key '{key}' to hold a diagram string")

    def extract_request(self) -> VerificationRequest:
        raise NotImplementedError
