"""Prediction pipeline: feature tables, train/test split, the
30-tree/depth-10 random forest, F1/accuracy/AUROC metrics, and Gini
feature importance.

The forest itself is scikit-learn's (bootstrap resampling, sqrt feature
sampling, Gini splits at midpoints -- the exact protocol this pipeline
needs); metrics are computed here so they stay hand-checkable.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from sklearn.ensemble import RandomForestClassifier

DEFAULT_N_TREES = 30
DEFAULT_MAX_DEPTH = 10


@dataclass
class FeatureTable:
    """Per-subject feature matrix with named columns and optional binary
    labels.  NaNs (e.g. z-scores against an undefined population) are
    imputed to 0 at construction."""

    columns: list
    X: np.ndarray
    subjects: list
    labels: np.ndarray | None = None

    def __post_init__(self):
        self.X = np.nan_to_num(np.asarray(self.X, dtype=float), nan=0.0)
        if self.labels is not None:
            self.labels = np.asarray(self.labels, dtype=bool)
            if len(self.labels) != len(self.X):
                raise ValueError("labels and rows disagree in length")

    def __len__(self):
        return len(self.X)

    def select(self, columns) -> "FeatureTable":
        idx = [self.columns.index(c) for c in columns]
        return FeatureTable(list(columns), self.X[:, idx], self.subjects, self.labels)

    def with_labels(self, labels) -> "FeatureTable":
        return FeatureTable(self.columns, self.X, self.subjects, labels)

    def take(self, rows) -> "FeatureTable":
        labels = None if self.labels is None else self.labels[rows]
        return FeatureTable(self.columns, self.X[rows],
                            [self.subjects[i] for i in rows], labels)


@dataclass
class ForestModel:
    """A trained forest plus the schema it expects."""

    clf: RandomForestClassifier
    columns: list
    seed: int

    def predict_proba_positive(self, X) -> np.ndarray:
        X = np.nan_to_num(np.asarray(X, dtype=float), nan=0.0)
        proba = self.clf.predict_proba(X)
        classes = list(self.clf.classes_)
        return proba[:, classes.index(True)]


def split_train_test(table: FeatureTable, train_fraction: float, seed):
    """Uniform random split (no stratification), deterministic per seed."""
    if not 0 < train_fraction < 1:
        raise ValueError("train_fraction must be in (0, 1)")
    n = len(table)
    n_train = int(round(train_fraction * n))
    if n_train == 0 or n_train == n:
        raise ValueError(f"split of {n} rows at {train_fraction} leaves one side empty")
    perm = np.random.default_rng(seed).permutation(n)
    return table.take(perm[:n_train]), table.take(perm[n_train:])


def train_forest(train: FeatureTable, n_trees: int = DEFAULT_N_TREES,
                 max_depth: int = DEFAULT_MAX_DEPTH, seed: int = 0) -> ForestModel:
    """Fit the forest: bootstrap samples of training size, sqrt-many
    candidate features per split, Gini impurity, depth-capped trees."""
    if train.labels is None:
        raise ValueError("training table has no labels")
    if len(np.unique(train.labels)) < 2:
        raise ValueError("training data contains a single class")
    clf = RandomForestClassifier(
        n_estimators=n_trees, max_depth=max_depth, criterion="gini",
        max_features="sqrt", bootstrap=True, random_state=int(seed) & 0x7FFFFFFF,
        n_jobs=1)
    clf.fit(train.X, train.labels)
    return ForestModel(clf, list(train.columns), seed)


def f1_score(labels, predictions) -> float:
    labels = np.asarray(labels, dtype=bool)
    predictions = np.asarray(predictions, dtype=bool)
    tp = int(np.sum(labels & predictions))
    fp = int(np.sum(~labels & predictions))
    fn = int(np.sum(labels & ~predictions))
    if 2 * tp + fp + fn == 0:
        return 0.0
    return 2 * tp / (2 * tp + fp + fn)


def auroc(labels, scores) -> float | None:
    """Area under the ROC curve via the tie-corrected rank statistic.

    None when only one class is present (the curve is undefined).
    """
    from .stats import ranks

    labels = np.asarray(labels, dtype=bool)
    scores = np.asarray(scores, dtype=float)
    n_pos = int(labels.sum())
    n_neg = len(labels) - n_pos
    if n_pos == 0 or n_neg == 0:
        return None
    r = ranks(scores)
    u = r[labels].sum() - n_pos * (n_pos + 1) / 2
    return float(u / (n_pos * n_neg))


def evaluate(model: ForestModel, test: FeatureTable):
    """(f1, accuracy, auroc) on a labeled test table; positives are
    predicted at probability threshold 0.5; auroc is None when the test
    labels are single-class."""
    if test.labels is None or len(test) == 0:
        raise ValueError("test table must be non-empty and labeled")
    probs = model.predict_proba_positive(test.X)
    preds = probs >= 0.5
    f1 = f1_score(test.labels, preds)
    accuracy = float(np.mean(preds == test.labels))
    return f1, accuracy, auroc(test.labels, probs)


def gini_importance(model: ForestModel) -> np.ndarray | None:
    """Per-feature impurity-decrease importances, normalized to sum 1;
    None when no split occurred anywhere in the forest."""
    importances = model.clf.feature_importances_
    if importances.sum() == 0:
        return None
    return importances


@dataclass
class PredictionReport:
    """Mean/std of each metric over repeated split-train-evaluate runs."""

    feature_set: str
    runs: int
    f1: tuple
    accuracy: tuple
    auroc: tuple
    degenerate_runs: int = 0
    columns: list = field(default_factory=list)

    def as_dict(self):
        return {
            "feature_set": self.feature_set, "runs": self.runs,
            "f1_mean": self.f1[0], "f1_std": self.f1[1],
            "accuracy_mean": self.accuracy[0], "accuracy_std": self.accuracy[1],
            "auroc_mean": self.auroc[0], "auroc_std": self.auroc[1],
            "degenerate_runs": self.degenerate_runs,
        }


def _mean_std(values):
    if not values:
        return (float("nan"), float("nan"))
    return (float(np.mean(values)), float(np.std(values)))


def run_repeated(table: FeatureTable, feature_set: str, n_runs: int = 10,
                 train_fraction: float = 0.8, n_trees: int = DEFAULT_N_TREES,
                 max_depth: int = DEFAULT_MAX_DEPTH, seed: int = 0) -> PredictionReport:
    """The evaluation protocol: n_runs independent resplits, each with a
    freshly seeded forest; metrics averaged over the runs that admit both
    classes in train and test."""
    child_seeds = np.random.SeedSequence(seed).spawn(2 * n_runs)
    f1s, accs, aurocs, degenerate = [], [], [], 0
    for run in range(n_runs):
        train, test = split_train_test(table, train_fraction, child_seeds[2 * run])
        try:
            model = train_forest(train, n_trees, max_depth,
                                 seed=int(child_seeds[2 * run + 1].generate_state(1)[0]))
        except ValueError:
            degenerate += 1
            continue
        f1, acc, auc = evaluate(model, test)
        f1s.append(f1)
        accs.append(acc)
        if auc is None:
            degenerate += 1
        else:
            aurocs.append(auc)
    return PredictionReport(feature_set, n_runs, _mean_std(f1s), _mean_std(accs),
                            _mean_std(aurocs), degenerate, list(table.columns))
