"""
Utilities to deal with Environment variables
"""
import os

from bdilab_zx_verifier.constants import DEFAULT_SAMPLE_BUDGET, DEFAULT_SEED

ENV_LOGLEVEL = "ZXV_LOGLEVEL"
ENV_SEED = "ZXV_SEED"
ENV_SAMPLE_BUDGET = "ZXV_SAMPLE_BUDGET"
ENV_DEPLOYMENT_NAMESPACE = "DEPLOYMENT_NAMESPACE"
NONIMPLEMENTED_MSG = "NOT_IMPLEMENTED"


def get_log_level(default_val: str = "INFO") -> str:
    """
    Get the logging level from `ZXV_LOGLEVEL`, upper-cased.
    """
    return os.environ.get(ENV_LOGLEVEL, default_val).upper()


def get_seed(default_val: int = DEFAULT_SEED) -> int:
    """
    Get the sampling seed from `ZXV_SEED`.
    If not set return `default_val`

    Parameters
    ----------
    default_val
        Default value to return if the environment variable is not set
    Returns
    -------
       int
    """
    return int(os.environ.get(ENV_SEED, default_val))


def get_sample_budget(default_val: int = DEFAULT_SAMPLE_BUDGET) -> int:
    """
    Get the number of side-condition samples per constrained rule from `ZXV_SAMPLE_BUDGET`.
    """
    return int(os.environ.get(ENV_SAMPLE_BUDGET, default_val))


def get_deployment_namespace(default_val: str = NONIMPLEMENTED_MSG) -> str:
    return os.environ.get(ENV_DEPLOYMENT_NAMESPACE, default_val)
