import logging
import time
from typing import Dict, Optional

from bdilab_zx_verifier.base import CEModel, ModelResponse, VerificationRequest
from bdilab_zx_verifier.dsl import get_parser, parse_zx
from bdilab_zx_verifier.projector import Method, decide_forall
from bdilab_zx_verifier.prometheus_metrics.metrics import verdict_metrics
from bdilab_zx_verifier.semantics import Functor

logger = logging.getLogger(__name__)


class ParamEqModel(CEModel):
    def __init__(self, name: str, functor: Functor = Functor()):
        """
        Decides universally quantified equations between two parametrised ZX diagrams

        Parameters
        ----------
        name
             The name of the model
        functor
             Interpretation the grid is evaluated under
        """
        super().__init__(name)
        self.functor = functor

    def load(self):
        get_parser()
        self.ready = True

    def process_event(self, inputs: VerificationRequest, headers: Dict) -> Optional[ModelResponse]:
        """
        Parse both sides and run decide_forall.

        Parameters
        ----------
        inputs
             (lhs, rhs, method) as extracted by the request handler
        headers
             Headers from the request

        Returns
        -------
             ModelResponse with the verdict json and verdict metrics

        """
        if not self.ready:
            self.load()
        lhs, rhs, method = inputs
        d1 = parse_zx(lhs)
        d2 = parse_zx(rhs)
        started = time.perf_counter()
        verdict = decide_forall(d1, d2, Method(method), self.functor)
        elapsed_ms = (time.perf_counter() - started) * 1000
        logger.info("Verdict for %s = %s: %s in %.1f ms", lhs, rhs,
                    "holds" if verdict.holds else "fails", elapsed_ms)
        metrics = verdict_metrics(verdict.holds, method, elapsed_ms, verdict.mu)
        return ModelResponse(data=verdict.to_json(), metrics=metrics)
