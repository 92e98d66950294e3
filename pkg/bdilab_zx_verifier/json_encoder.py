import json
from enum import Enum
from fractions import Fraction

import numpy as np

from bdilab_zx_verifier.exactnum import Cyclotomic


class VerdictEncoder(json.JSONEncoder):
    """
    JSON encoder for verdicts and reports: numpy scalars and arrays, Fractions (as strings),
    complex numbers (as [re, im]), cyclotomic values (as their symbolic text) and Enum members.
    """

    def default(self, obj):  # pylint: disable=arguments-differ,method-hidden
        if isinstance(obj, np.integer):
            return int(obj)
        elif isinstance(obj, np.floating):
            return float(obj)
        elif isinstance(obj, (complex, np.complexfloating)):
            return [float(obj.real), float(obj.imag)]
        elif isinstance(obj, (np.ndarray,)):
            if np.iscomplexobj(obj):
                return np.stack((obj.real, obj.imag), axis=-1).tolist()
            return obj.tolist()
        elif isinstance(obj, Fraction):
            return str(obj)
        elif isinstance(obj, Cyclotomic):
            return str(obj)
        elif isinstance(obj, Enum):
            return str(obj.value)
        return json.JSONEncoder.default(self, obj)


def dumps(obj, **kwargs) -> str:
    return json.dumps(obj, cls=VerdictEncoder, **kwargs)
