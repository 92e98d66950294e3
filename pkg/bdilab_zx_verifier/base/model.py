from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

# (lhs, rhs, method): both sides in the diagram DSL and the decision method name
VerificationRequest = Tuple[str, str, str]


@dataclass
class ModelResponse:
    """Verdict json and the metrics recorded for it."""
    data: Dict
    metrics: Optional[List[Dict]] = None


class CEModel(ABC):
    """A model answering verification requests delivered as CloudEvents."""

    def __init__(self, name: str):
        self.name = name
        self.ready = False

    @abstractmethod
    def load(self):
        """Build what the first request needs, such as the DSL parser."""

    @abstractmethod
    def process_event(self, inputs: VerificationRequest, headers: Dict) -> Optional[ModelResponse]:
        """
        Decide one verification request

        Parameters
        ----------
        inputs
             (lhs, rhs, method) as extracted by the protocol handler
        headers
             Headers from the request

        Returns
        -------
             A response carrying the verdict and its metrics, or None when there is nothing to reply

        """
