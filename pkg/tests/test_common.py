import json

import numpy as np

from uvstat.common import JsonEncoder, canonical_json, config_hash, pairwise_sum, stream
from uvstat.enums import LimitLaw, StreamComponent


def test_stream_is_reproducible():
    a = stream(42, 3, StreamComponent.path, 100).standard_normal(5)
    b = stream(42, 3, StreamComponent.path, 100).standard_normal(5)
    assert np.array_equal(a, b)


def test_stream_keys_are_independent():
    base = stream(42, 3, StreamComponent.path, 100).standard_normal(5)
    for other in (
        stream(43, 3, StreamComponent.path, 100),
        stream(42, 4, StreamComponent.path, 100),
        stream(42, 3, StreamComponent.tau, 100),
        stream(42, 3, StreamComponent.path, 101),
    ):
        assert not np.array_equal(base, other.standard_normal(5))


def test_config_hash_ignores_key_order():
    assert config_hash({"a": 1, "b": [1, 2]}) == config_hash({"b": [1, 2], "a": 1})
    assert config_hash({"a": 1}) != config_hash({"a": 2})
    assert len(config_hash({})) == 64


def test_json_encoder():
    data = {"law": LimitLaw.prop2, "x": np.float64(0.5), "k": np.int64(3), "ok": np.bool_(True)}
    assert json.loads(json.dumps(data, cls=JsonEncoder)) == {"law": "prop2", "x": 0.5, "k": 3, "ok": True}
    assert canonical_json({"b": 1, "a": np.arange(2)}) == '{"a":[0,1],"b":1}'


def test_pairwise_sum():
    terms = np.arange(12, dtype=np.float64).reshape(3, 4)
    assert np.array_equal(pairwise_sum(terms), terms.sum(axis=1))
    assert np.array_equal(pairwise_sum(terms, axis=0), terms.sum(axis=0))
    assert pairwise_sum(2.5) == 2.5
