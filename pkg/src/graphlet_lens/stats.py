"""Correlation and curve-shape utilities: Pearson, Spearman with average
ranks, and the non-linearity score of a time series (mean gap between its
best least-squares line and cubic)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import Polynomial


@dataclass(frozen=True)
class TimeSeries:
    """A sampled curve over strictly increasing x positions."""

    xs: tuple
    ys: tuple

    def __post_init__(self):
        if len(self.xs) != len(self.ys):
            raise ValueError("xs and ys must have equal length")
        if len(self.xs) < 2:
            raise ValueError("need at least 2 points")
        if any(b <= a for a, b in zip(self.xs, self.xs[1:])):
            raise ValueError("xs must be strictly increasing")


def pearson(xs, ys) -> float:
    """Pearson correlation coefficient; raises on zero variance."""
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.shape != y.shape or x.ndim != 1 or len(x) < 2:
        raise ValueError("need two equal-length vectors of >= 2 entries")
    xc = x - x.mean()
    yc = y - y.mean()
    denom = np.sqrt((xc * xc).sum() * (yc * yc).sum())
    if denom == 0.0:
        raise ValueError("correlation undefined: zero variance input")
    return float((xc * yc).sum() / denom)


def ranks(values) -> np.ndarray:
    """1-based ranks; tied values receive the average of their ranks."""
    v = np.asarray(values, dtype=float)
    order = np.argsort(v, kind="stable")
    out = np.empty(len(v), dtype=float)
    i = 0
    while i < len(v):
        j = i
        while j + 1 < len(v) and v[order[j + 1]] == v[order[i]]:
            j += 1
        out[order[i:j + 1]] = (i + j) / 2 + 1
        i = j + 1
    return out


def spearman(xs, ys) -> float:
    """Spearman rank correlation: Pearson over average-tied ranks."""
    return pearson(ranks(xs), ranks(ys))


def fit_polynomial(xs, ys, degree: int) -> Polynomial:
    """Least-squares polynomial fit (the domain is rescaled internally,
    which keeps the degree-3 Vandermonde system well conditioned)."""
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if len(np.unique(x)) <= degree:
        raise ValueError(f"degree-{degree} fit needs > {degree} distinct x values")
    return Polynomial.fit(x, y, degree)


def nonlinearity(series: TimeSeries, n_samples: int = 1000) -> float:
    """How far a curve is from its own best line.

    Fits a least-squares line and cubic to the series and returns the
    mean absolute gap between the two fits over `n_samples` equally
    spaced positions spanning the x range.  An exactly linear series
    scores 0 (the cubic collapses onto the line).
    """
    if len(series.xs) < 4:
        raise ValueError("need >= 4 points for an identifiable cubic fit")
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    line = fit_polynomial(series.xs, series.ys, 1)
    cubic = fit_polynomial(series.xs, series.ys, 3)
    grid = np.linspace(series.xs[0], series.xs[-1], n_samples)
    return float(np.mean(np.abs(line(grid) - cubic(grid))))


def mean_ratio_nonlinearity(count_series, n_samples: int = 1000) -> float:
    """Unweighted mean non-linearity over the 13 graphlet-ratio curves of
    a count series."""
    from .triad_atlas import N_GRAPHLETS

    scores = []
    for gid in range(1, N_GRAPHLETS + 1):
        xs, ys = count_series.ratio_series(gid)
        scores.append(nonlinearity(TimeSeries(tuple(xs), tuple(ys)), n_samples))
    return float(np.mean(scores))


def role_group_signals(ratio_matrix, groups):
    """Per-role Spearman correlation between centrality group index and
    the group-averaged role ratio.

    `ratio_matrix` holds one ratio vector per subject; `groups` the
    subjects' 1..6 bins.  Roles whose averaged ratios are constant across
    groups have no defined correlation and yield None.
    """
    ratio_matrix = np.asarray(ratio_matrix, dtype=float)
    groups = np.asarray(groups)
    present = sorted(set(groups.tolist()))
    if len(present) < 2:
        raise ValueError("need subjects from >= 2 groups")
    means = np.array([ratio_matrix[groups == g].mean(axis=0) for g in present])
    out = []
    for role in range(ratio_matrix.shape[1]):
        ys = means[:, role]
        if np.all(ys == ys[0]):
            out.append(None)
        else:
            out.append(spearman(present, ys))
    return out


def mean_abs_signal(signals) -> float:
    """Mean |Spearman| over the roles where the signal is defined."""
    vals = [abs(s) for s in signals if s is not None]
    if not vals:
        raise ValueError("no role has a defined signal")
    return float(np.mean(vals))
