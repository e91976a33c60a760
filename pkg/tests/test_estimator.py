import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import Pipeline

from sdree import RepetitionStats, SDREECipher, analyze, encrypt_with_key


def test_get_set_params_and_clone():
    est = SDREECipher(key=b"hello world")
    assert est.get_params() == {"key": b"hello world", "code": None, "power_ex": None}
    est.set_params(code=10, power_ex=4)
    twin = clone(est)
    assert twin.get_params() == est.get_params()
    assert not hasattr(twin, "params_")


def test_fit_derives_params():
    est = SDREECipher(key="hello world").fit()
    assert est.trace_.power_ex == 8
    assert est.params_.modulus == 6133


def test_overrides_take_precedence():
    est = SDREECipher(key=b"ignored", code=10, power_ex=4).fit()
    assert est.trace_ is None
    assert est.transform([b"aaaa"]) == [bytes.fromhex("6b6f7bab")]


@pytest.mark.parametrize(
    "kwargs",
    [{}, {"code": 10}, {"power_ex": 4}, {"key": b""}, {"code": 0, "power_ex": 4}],
)
def test_invalid_configuration(kwargs):
    with pytest.raises(ValueError):
        SDREECipher(**kwargs).fit()


def test_not_fitted():
    with pytest.raises(NotFittedError):
        SDREECipher(key=b"k").transform([b"x"])


def test_transform_round_trip():
    messages = [b"", b"aaaa", bytes(range(256)) * 3]
    est = SDREECipher(key=b"hello world")
    ct = est.fit_transform(messages)
    assert ct[1] == encrypt_with_key(b"hello world", b"aaaa")
    assert est.inverse_transform(ct) == messages


def test_single_message_must_be_wrapped():
    est = SDREECipher(key=b"k").fit()
    with pytest.raises(ValueError, match="wrap it in a list"):
        est.transform(b"aaaa")


def test_repetition_stats_features():
    X = [b"a" * 512, b"aab", b"a", b""]
    feats = RepetitionStats().fit_transform(X)
    assert feats.shape == (4, 5)
    assert list(RepetitionStats().fit(X).get_feature_names_out()) == [
        "total", "distinct_bytes", "max_run_length", "index_of_coincidence", "chi_square_uniform",
    ]
    r = analyze(b"aab")
    assert feats[1].tolist() == [3, 2, 2, r.index_of_coincidence, r.chi_square_uniform]
    assert feats[0, 3] == 1.0
    assert np.isnan(feats[2, 3]) and not np.isnan(feats[2, 4])
    assert np.isnan(feats[3, 3:]).all()


def test_pipeline_encrypt_then_measure():
    pipe = Pipeline([("enc", SDREECipher(key=b"hello world")), ("stats", RepetitionStats())])
    feats = pipe.fit_transform([b"a" * 512])
    assert feats[0].tolist()[:3] == [512, 222, 3]
    assert feats[0, 3] < 1.0
