import numpy as np
import pytest

from fairdep import DataError, ForestConfig, RandomForest


def planted_problem(n, seed, flip=0.0):
    rng = np.random.default_rng(seed)
    y = np.where(rng.random(n) < 0.5, 1, -1)
    b = (y == 1).astype(float)
    if flip:
        mask = rng.random(n) < flip
        b = np.where(mask, 1 - b, b)
    X = np.column_stack([b, rng.standard_normal(n), rng.standard_normal(n)])
    return X, y


def test_config_validation():
    with pytest.raises(ValueError):
        ForestConfig(n_trees=0)
    with pytest.raises(ValueError):
        ForestConfig(max_features="half")


def test_features_per_split():
    cfg = ForestConfig()
    assert cfg.features_per_split(9) == 3
    assert cfg.features_per_split(10) == 3
    assert cfg.features_per_split(1) == 1
    assert ForestConfig(max_features="all").features_per_split(7) == 7
    assert ForestConfig(max_features=2).features_per_split(7) == 2


def test_single_class_training_rejected():
    X = np.random.default_rng(0).standard_normal((10, 2))
    with pytest.raises(DataError, match="single class"):
        RandomForest().fit(X, np.ones(10))


def test_perfectly_separable_reaches_full_accuracy():
    X, y = planted_problem(400, seed=1)
    Xt, yt = planted_problem(200, seed=2)
    model = RandomForest(ForestConfig(n_trees=100, seed=0)).fit(X, y)
    assert np.mean(model.predict(Xt) == yt) == 1.0


def test_deterministic_under_seed():
    X, y = planted_problem(300, seed=3, flip=0.2)
    Xt, _ = planted_problem(100, seed=4, flip=0.2)
    a = RandomForest(ForestConfig(n_trees=30, seed=5)).fit(X, y).predict(Xt)
    b = RandomForest(ForestConfig(n_trees=30, seed=5)).fit(X, y).predict(Xt)
    np.testing.assert_array_equal(a, b)


def test_different_seeds_differ_somewhere():
    X, y = planted_problem(300, seed=6, flip=0.35)
    Xt, _ = planted_problem(200, seed=7, flip=0.35)
    a = RandomForest(ForestConfig(n_trees=15, seed=0)).fit(X, y).predict(Xt)
    b = RandomForest(ForestConfig(n_trees=15, seed=1)).fit(X, y).predict(Xt)
    assert (a != b).any()


def test_noise_features_give_chance_level_accuracy():
    # empirical calibration: pooled 10-fold accuracy on pure noise
    from fairdep.validation import cross_validate

    accs = []
    for seed in range(10):
        rng = np.random.default_rng(100 + seed)
        X = rng.standard_normal((500, 5))
        y = np.where(rng.random(500) < 0.5, 1, -1)
        cv = cross_validate(X, y, folds=10, forest=ForestConfig(n_trees=30, seed=seed), seed=seed)
        accs.append(np.mean(cv.predictions == y))
    assert all(0.4 <= a <= 0.6 for a in accs)


def test_predictions_are_signs():
    X, y = planted_problem(200, seed=8, flip=0.1)
    model = RandomForest(ForestConfig(n_trees=9, seed=2)).fit(X, y)
    assert set(np.unique(model.predict(X))) <= {-1, 1}


def test_predict_before_fit_rejected():
    with pytest.raises(RuntimeError):
        RandomForest().predict(np.ones((3, 2)))


def test_max_depth_limits_tree():
    X, y = planted_problem(300, seed=9, flip=0.3)
    shallow = RandomForest(ForestConfig(n_trees=10, max_depth=1, seed=0)).fit(X, y)
    assert max(len(t.feature) for t in shallow.trees) <= 3  # root + two leaves
