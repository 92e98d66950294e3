from enum import Enum


class Protocol(Enum):
    """Request body formats accepted by the verification server."""
    dsl_http = "dsl.http"

    def __str__(self):
        return self.value
