import hashlib
import json
import logging
from enum import Enum

import numpy as np

from uvstat.enums import StreamComponent

logger = logging.getLogger("uvstat.common")


class JsonEncoder(json.JSONEncoder):
    def default(self, obj):
        if isinstance(obj, np.integer):
            return int(obj)
        elif isinstance(obj, np.floating):
            return float(obj)
        elif isinstance(obj, np.bool_):
            return bool(obj)
        elif isinstance(obj, np.ndarray):
            return obj.tolist()
        elif isinstance(obj, Enum):
            return obj.value
        else:
            return super().default(obj)


def canonical_json(obj) -> str:
    return json.dumps(obj, cls=JsonEncoder, sort_keys=True, separators=(",", ":"))


def config_hash(obj) -> str:
    """
    sha256 of the canonical json rendering
    """
    return hashlib.sha256(canonical_json(obj).encode()).hexdigest()


def stream(seed: int, replicate_id: int, component: StreamComponent, n: int = 0) -> np.random.Generator:
    """
    independent random stream keyed by (seed, replicate_id, component, n)
    """
    seq = np.random.SeedSequence(entropy=seed, spawn_key=(replicate_id, int(component), n))
    return np.random.Generator(np.random.Philox(seq))


def pairwise_sum(terms, axis: int = -1):
    """
    sum along one axis with numpy's pairwise reduction, which applies to the contiguous last axis
    """
    terms = np.asarray(terms, dtype=np.float64)
    if terms.ndim == 0:
        return float(terms)
    terms = np.ascontiguousarray(np.moveaxis(terms, axis, -1))
    return np.add.reduce(terms, axis=-1)
