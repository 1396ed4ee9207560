"""Random forest for binary labels, built on CART trees with Gini splits.

Kept dependency-free on purpose: trees are grown greedily to purity
(unless capped), each on a bootstrap resample, examining a random subset
of floor(sqrt(m)) features per split. Prediction is a majority vote over
trees; vote ties fall to the negative class. Everything is a pure
function of (data, config.seed), so refits reproduce bit-identically.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DataError


@dataclass(frozen=True)
class ForestConfig:
    n_trees: int = 100
    max_depth: int | None = None
    max_features: int | str = "sqrt"  # "sqrt", "all", or an int
    bootstrap: bool = True
    seed: int = 0

    def __post_init__(self):
        if self.n_trees < 1:
            raise ValueError(f"n_trees must be at least 1, got {self.n_trees}")
        if isinstance(self.max_features, str) and self.max_features not in ("sqrt", "all"):
            raise ValueError(f"max_features must be 'sqrt', 'all', or int, got {self.max_features!r}")

    def features_per_split(self, m: int) -> int:
        if self.max_features == "sqrt":
            return max(1, int(np.sqrt(m)))
        if self.max_features == "all":
            return m
        return min(max(int(self.max_features), 1), m)


class _Tree:
    """One CART tree stored as flat arrays (feature, threshold, children)."""

    __slots__ = ("feature", "threshold", "left", "right", "value")

    def __init__(self):
        self.feature: list[int] = []
        self.threshold: list[float] = []
        self.left: list[int] = []
        self.right: list[int] = []
        self.value: list[int] = []  # majority class at the node, 0 or 1

    def _new_node(self, value: int) -> int:
        self.feature.append(-1)
        self.threshold.append(np.nan)
        self.left.append(-1)
        self.right.append(-1)
        self.value.append(value)
        return len(self.feature) - 1

    def fit(self, X, b, idx, rng, mtry: int, max_depth: int | None):
        m = X.shape[1]
        root = self._new_node(_majority(b[idx]))
        stack = [(root, idx, 0)]
        while stack:
            node, rows, depth = stack.pop()
            k = rows.size
            pos = int(b[rows].sum())
            if pos == 0 or pos == k or k < 2:
                continue
            if max_depth is not None and depth >= max_depth:
                continue
            feats = rng.choice(m, size=mtry, replace=False)
            split = _best_split(X, b, rows, feats)
            if split is None:
                continue
            f, thr = split
            goes_left = X[rows, f] <= thr
            left_rows = rows[goes_left]
            right_rows = rows[~goes_left]
            self.feature[node] = f
            self.threshold[node] = thr
            left = self._new_node(_majority(b[left_rows]))
            right = self._new_node(_majority(b[right_rows]))
            self.left[node] = left
            self.right[node] = right
            stack.append((left, left_rows, depth + 1))
            stack.append((right, right_rows, depth + 1))

    def predict(self, X) -> np.ndarray:
        feature = np.asarray(self.feature)
        threshold = np.asarray(self.threshold)
        left = np.asarray(self.left)
        right = np.asarray(self.right)
        value = np.asarray(self.value)
        node = np.zeros(X.shape[0], dtype=np.int64)
        while True:
            internal = feature[node] >= 0
            if not internal.any():
                break
            rows = np.flatnonzero(internal)
            cur = node[rows]
            goes_left = X[rows, feature[cur]] <= threshold[cur]
            node[rows] = np.where(goes_left, left[cur], right[cur])
        return value[node]


def _majority(b) -> int:
    # ties fall to class 0 (the negative class)
    return int(b.sum() * 2 > b.size)


def _best_split(X, b, rows, feats):
    """Lowest weighted Gini over candidate features; None if nothing splits."""
    k = rows.size
    best_cost = np.inf
    best = None
    labels = b[rows]
    for f in feats:
        v = X[rows, f]
        order = np.argsort(v, kind="stable")
        vs = v[order]
        if vs[0] == vs[-1]:
            continue
        bs = labels[order]
        left_pos = np.cumsum(bs)[:-1]
        left_n = np.arange(1, k)
        right_n = k - left_n
        right_pos = left_pos[-1] + bs[-1] - left_pos
        p_l = left_pos / left_n
        p_r = right_pos / right_n
        cost = (left_n * 2 * p_l * (1 - p_l) + right_n * 2 * p_r * (1 - p_r)) / k
        cost[vs[1:] == vs[:-1]] = np.inf
        i = int(np.argmin(cost))
        if cost[i] < best_cost:
            best_cost = cost[i]
            best = (int(f), float((vs[i] + vs[i + 1]) / 2))
    return best


class RandomForest:
    """Bootstrap-aggregated CART trees voting on a {-1, +1} label."""

    def __init__(self, config: ForestConfig = ForestConfig()):
        self.config = config
        self.trees: list[_Tree] = []

    def fit(self, X, y) -> "RandomForest":
        X = np.asarray(X, dtype=np.float64)
        y = np.asarray(y).ravel()
        if X.ndim != 2 or X.shape[0] != y.size:
            raise ValueError(f"X {X.shape} and y {y.shape} disagree")
        classes = set(np.unique(y).tolist())
        if not classes <= {-1, 1}:
            raise ValueError(f"labels must lie in {{-1, +1}}, got {sorted(classes)}")
        if len(classes) < 2:
            raise DataError("training split contains a single class")
        b = (y == 1).astype(np.int64)
        n, m = X.shape
        mtry = self.config.features_per_split(m)
        self.trees = []
        for child in np.random.SeedSequence(self.config.seed).spawn(self.config.n_trees):
            rng = np.random.default_rng(child)
            idx = rng.integers(0, n, size=n) if self.config.bootstrap else np.arange(n)
            tree = _Tree()
            tree.fit(X, b, idx, rng, mtry, self.config.max_depth)
            self.trees.append(tree)
        return self

    def predict(self, X) -> np.ndarray:
        if not self.trees:
            raise RuntimeError("forest is not fitted")
        X = np.asarray(X, dtype=np.float64)
        votes = np.zeros(X.shape[0], dtype=np.int64)
        for tree in self.trees:
            votes += tree.predict(X)
        # votes counts trees saying +1; ties go to -1
        return np.where(2 * votes > len(self.trees), 1, -1).astype(np.int64)
