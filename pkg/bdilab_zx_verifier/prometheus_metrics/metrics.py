import logging
import numbers
import os
from multiprocessing import Manager
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np
from prometheus_client import exposition
from prometheus_client.core import (
    CollectorRegistry,
    CounterMetricFamily,
    GaugeMetricFamily,
    HistogramMetricFamily,
)
from prometheus_client.metrics_core import Metric
from prometheus_client.utils import floatToGoString

from bdilab_zx_verifier.env_utils import get_deployment_namespace

logger = logging.getLogger(__name__)

VERDICT_KEY = "zxv_verdicts_total"
FAILED_KEY = "zxv_failed_verdicts_total"
DECISION_TIME_KEY = "zxv_decision_seconds"
MULTIPLICITY_KEY = "zxv_multiplicity"

COUNTER = "COUNTER"
GAUGE = "GAUGE"
TIMER = "TIMER"
METRIC_TYPES = (COUNTER, GAUGE, TIMER)

# bucket upper bounds, seconds
DECISION_BUCKETS = np.array([0.001, 0.0025, 0.005, 0.01, 0.025, 0.05, 0.1, 0.25, 0.5,
                             1.0, 2.5, 5.0, 10.0, 30.0, 60.0, 300.0, np.inf])

PARAM_EQ_METRIC_METHOD_TAG = "param_eq"

SeriesKey = Tuple[str, str, Tuple[Tuple[str, str], ...]]


def _series_key(metric: Dict, tags: Dict[str, str]) -> SeriesKey:
    return metric.get("type", COUNTER), metric["key"], tuple(sorted(tags.items()))


def _observe(previous: Optional[Tuple[List[int], float]], seconds: float) -> Tuple[List[int], float]:
    counts, total = previous or ([0] * len(DECISION_BUCKETS), 0.0)
    counts = list(counts)
    counts[int(np.searchsorted(DECISION_BUCKETS, seconds))] += 1
    return counts, total + seconds


class VerifierMetrics:
    """
    Prometheus collector over verdict metrics.

    Every worker process writes its own series into a dict held by a ``multiprocessing.Manager``
    so that ``/v1/metrics`` reports the sum of all workers.
    """

    def __init__(self, worker_id_func=os.getpid, extra_default_labels: Optional[Dict] = None):
        # the manager must outlive the proxies
        self._manager = Manager()
        self._lock = self._manager.Lock()
        self.data = self._manager.dict()
        self.worker_id_func = worker_id_func
        self._labels = {"deployment_namespace": get_deployment_namespace(), **(extra_default_labels or {})}

    def __del__(self):
        self._manager.shutdown()

    def update(self, custom_metrics: List[Dict], method: str):
        """Fold ``custom_metrics`` into this worker's series; ``method`` becomes the method label."""
        worker = self.worker_id_func()
        # proxies are not thread safe
        with self._lock:
            series = dict(self.data.get(worker, {}))

        for metric in custom_metrics:
            tags = {**metric.get("tags", {}), "method": method}
            key = _series_key(metric, tags)
            kind = key[0]
            if kind == COUNTER:
                series[key] = (tags, series.get(key, ({}, 0))[1] + metric["value"])
            elif kind == GAUGE:
                series[key] = (tags, metric["value"])
            elif kind == TIMER:
                # timers are reported in milliseconds
                previous = series[key][1] if key in series else None
                series[key] = (tags, _observe(previous, metric["value"] / 1000))
            else:
                logger.error("Dropping metric %s of unknown type %s", metric["key"], kind)

        with self._lock:
            self.data[worker] = series
        logger.debug("Worker %s now holds %d series", worker, len(series))

    def collect(self) -> Iterator[Metric]:
        with self._lock:
            snapshot = dict(self.data)
        for worker, series in snapshot.items():
            for (kind, name, _), (tags, value) in series.items():
                labels = {**tags, **self._labels, "worker_id": str(worker)}
                yield _family(kind, name, labels, value)

    def generate_metrics(self) -> Tuple[str, str]:
        """Text exposition of every worker's series and its content type."""
        registry = CollectorRegistry()
        registry.register(self)
        return exposition.generate_latest(registry).decode("utf-8"), exposition.CONTENT_TYPE_LATEST

    def clear(self):
        worker = self.worker_id_func()
        with self._lock:
            self.data.pop(worker, None)
        logger.debug("Cleared metrics of worker %s", worker)


def _family(kind: str, name: str, labels: Dict[str, str], value) -> Metric:
    keys, values = list(labels.keys()), list(labels.values())
    if kind == TIMER:
        counts, total = value
        family = HistogramMetricFamily(name, "", labels=keys)
        buckets = [[floatToGoString(bound), float(c)] for bound, c in zip(DECISION_BUCKETS, np.cumsum(counts))]
        family.add_metric(values, buckets, sum_value=total)
        return family
    family = (CounterMetricFamily if kind == COUNTER else GaugeMetricFamily)(name, "", labels=keys)
    family.add_metric(values, value)
    return family


def create_counter(key: str, value: float, tags: Optional[Dict[str, str]] = None) -> Dict:
    """
    Build a counter metric

    Parameters
    ----------
    key
       Counter name
    value
       Increment
    tags
       Extra labels
    Returns
    -------
       Metric dict accepted by ``VerifierMetrics.update``
    """
    return {"key": key, "type": COUNTER, "value": value, "tags": tags or {}}


def create_gauge(key: str, value: float, tags: Optional[Dict[str, str]] = None) -> Dict:
    return {"key": key, "type": GAUGE, "value": value, "tags": tags or {}}


def create_timer(key: str, value: float, tags: Optional[Dict[str, str]] = None) -> Dict:
    """A timer metric; ``value`` is in milliseconds."""
    return {"key": key, "type": TIMER, "value": value, "tags": tags or {}}


def verdict_metrics(holds: bool, method: str, elapsed_ms: float, mu: Dict[str, int]) -> List[Dict]:
    """Metrics describing one decide_forall call."""
    tags = {"decision_method": method}
    metrics = [create_counter(VERDICT_KEY, 1, tags), create_timer(DECISION_TIME_KEY, elapsed_ms, tags)]
    if not holds:
        metrics.append(create_counter(FAILED_KEY, 1, tags))
    metrics.extend(create_gauge(MULTIPLICITY_KEY, value, {"variable": var}) for var, value in mu.items())
    return metrics


def validate_metrics(metrics: List[Dict]) -> bool:
    """True when ``metrics`` is a list whose entries all carry a key, a known type and a numeric value."""
    if not isinstance(metrics, list):
        return False
    for metric in metrics:
        if not {"key", "type", "value"} <= metric.keys():
            return False
        if metric["type"] not in METRIC_TYPES or not isinstance(metric["value"], numbers.Real):
            return False
    return True
