import numpy as np
import pytest
from sklearn.base import clone
from sklearn.pipeline import make_pipeline

from restorekit import (
    AdaptiveMedianFilter,
    CenterWeightedMedianFilter,
    DecisionMedianFilter,
    HomomorphicFilter,
    MedianFilter,
    TriStateMedianFilter,
    adaptive_median,
    ndb_restore,
    smf,
)
from restorekit.degrade import inject_impulse
from restorekit.rng import Rng64

from conftest import smooth_scene

ESTIMATORS = [
    DecisionMedianFilter(),
    MedianFilter(),
    CenterWeightedMedianFilter(),
    TriStateMedianFilter(),
    AdaptiveMedianFilter(),
    HomomorphicFilter(),
]


@pytest.fixture(scope="module")
def noisy():
    return inject_impulse(smooth_scene((32, 32), seed=2), 0.2, Rng64(2))[0]


@pytest.mark.parametrize("est", ESTIMATORS, ids=lambda e: type(e).__name__)
def test_clone_preserves_params(est):
    twin = clone(est)
    assert twin is not est
    assert twin.get_params() == est.get_params()


@pytest.mark.parametrize("est", ESTIMATORS, ids=lambda e: type(e).__name__)
def test_stack_and_single(est, noisy):
    single = est.fit_transform(noisy)
    stacked = est.transform(np.stack([noisy, noisy[::-1]]))
    assert single.dtype == np.uint8 and single.shape == noisy.shape
    assert np.array_equal(stacked[0], single)
    assert np.array_equal(stacked[1], est.transform(noisy[::-1].copy()))


@pytest.mark.parametrize("est", ESTIMATORS, ids=lambda e: type(e).__name__)
def test_rejects_bad_input(est):
    with pytest.raises(ValueError):
        est.transform(np.zeros((2, 2, 2, 2), np.uint8))
    with pytest.raises(ValueError):
        est.transform(np.full((4, 4), 300.0))


def test_get_and_set_params():
    est = DecisionMedianFilter()
    params = est.get_params()
    assert params["case2_max"] == 4 and params["case3_max"] == 12 and params["recursive"] is True
    est.set_params(recursive=False)
    assert est.recursive is False
    assert MedianFilter(window=5).get_params() == {"window": 5}


def test_pipeline(noisy):
    pipe = make_pipeline(DecisionMedianFilter(), MedianFilter(3))
    out = pipe.fit_transform(noisy)
    assert np.array_equal(out, smf(ndb_restore(noisy)[0], 3))
    pipe.set_params(medianfilter__window=5)
    assert np.array_equal(pipe.transform(noisy), smf(ndb_restore(noisy)[0], 5))


def test_no_fit_required(noisy):
    assert np.array_equal(AdaptiveMedianFilter(5).transform(noisy), adaptive_median(noisy, 5))


def test_invalid_params_raise_on_use(noisy):
    est = CenterWeightedMedianFilter(center_weight=4)
    with pytest.raises(ValueError):
        est.fit(noisy)
