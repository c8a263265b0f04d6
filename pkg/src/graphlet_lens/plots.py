"""Figure rendering for the report-producing pipeline stages.

Every report path writes its delimited output first; these helpers render
a companion PNG next to it.  All rendering targets files (Agg backend),
never a display.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def _finish(fig, path):
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_count_series(series, path, title="graphlet ratios over the stream"):
    """Stacked ratio curves of the 13 graphlet classes."""
    xs = [c[0] for c in series.checkpoints]
    mat = np.array([c[2] for c in series.checkpoints])
    fig, ax = plt.subplots(figsize=(7, 4.2))
    cmap = plt.get_cmap("tab20")
    for k in range(mat.shape[1]):
        ax.plot(xs, mat[:, k], label=f"g{k + 1}", color=cmap(k % 20), lw=1.2)
    ax.set_xlabel("evolution ratio")
    ax.set_ylabel("instance ratio")
    ax.set_title(title)
    ax.legend(ncol=5, fontsize=7, frameon=False)
    return _finish(fig, path)


def plot_profile(cp, path, title="characteristic profile"):
    """Bar chart of one 28-entry (or 13-entry) profile."""
    vec = np.asarray(cp, dtype=float)
    fig, ax = plt.subplots(figsize=(7, 3.2))
    ax.bar(np.arange(1, len(vec) + 1), vec, color="#33557a")
    ax.axhline(0, color="black", lw=0.6)
    ax.set_xlabel("transition type" if len(vec) == 28 else "graphlet")
    ax.set_ylabel("normalized significance")
    ax.set_title(title)
    return _finish(fig, path)


def plot_similarity_matrix(matrix, names, path, title="profile similarity"):
    matrix = np.asarray(matrix, dtype=float)
    fig, ax = plt.subplots(figsize=(5.5, 4.6))
    im = ax.imshow(matrix, vmin=-1, vmax=1, cmap="RdBu_r")
    ax.set_xticks(range(len(names)), names, rotation=45, ha="right", fontsize=8)
    ax.set_yticks(range(len(names)), names, fontsize=8)
    for i in range(len(names)):
        for j in range(len(names)):
            if not np.isnan(matrix[i, j]):
                ax.text(j, i, f"{matrix[i, j]:.2f}", ha="center", va="center", fontsize=6)
    fig.colorbar(im, ax=ax, shrink=0.85)
    ax.set_title(title)
    return _finish(fig, path)


def plot_nonlinearity(rows, path, title="ratio-curve non-linearity"):
    """Grouped bars: per dataset, observed stream vs. mean over shuffles."""
    names = [r["dataset"] for r in rows]
    real = [r["real"] for r in rows]
    rand = [r["random_mean"] for r in rows]
    x = np.arange(len(names))
    fig, ax = plt.subplots(figsize=(max(4.0, 1.2 * len(names)), 3.4))
    ax.bar(x - 0.2, real, width=0.4, label="observed", color="#33557a")
    ax.bar(x + 0.2, rand, width=0.4, label="shuffled mean", color="#c08a3e")
    ax.set_xticks(x, names, rotation=30, ha="right", fontsize=8)
    ax.set_ylabel("non-linearity")
    ax.set_title(title)
    ax.legend(frameon=False, fontsize=8)
    return _finish(fig, path)


def plot_signals(signal_rows, path, title="role-ratio signals vs. centrality groups"):
    """Bar chart of the per-role Spearman coefficients (NaN = undefined)."""
    roles = [r["role"] for r in signal_rows]
    rho = np.array([r["spearman"] if r["spearman"] is not None else np.nan
                    for r in signal_rows])
    fig, ax = plt.subplots(figsize=(7, 3.2))
    ax.bar(roles, rho, color=np.where(np.nan_to_num(rho) >= 0, "#33557a", "#a34343"))
    ax.axhline(0, color="black", lw=0.6)
    ax.set_xlabel("role")
    ax.set_ylabel("Spearman vs. group")
    ax.set_title(title)
    return _finish(fig, path)


def plot_metric_bars(reports, path, title="prediction performance"):
    """Mean F1 / accuracy / AUROC per feature set, with std whiskers."""
    names = [r.feature_set for r in reports]
    x = np.arange(len(names))
    fig, ax = plt.subplots(figsize=(max(4.5, 1.4 * len(names)), 3.6))
    for off, (label, attr) in enumerate((("F1", "f1"), ("accuracy", "accuracy"),
                                         ("AUROC", "auroc"))):
        means = [getattr(r, attr)[0] for r in reports]
        stds = [getattr(r, attr)[1] for r in reports]
        ax.bar(x + (off - 1) * 0.25, means, width=0.25, yerr=stds,
               label=label, capsize=2)
    ax.set_xticks(x, names, rotation=20, ha="right", fontsize=8)
    ax.set_ylim(0, 1.05)
    ax.set_title(title)
    ax.legend(frameon=False, fontsize=8)
    return _finish(fig, path)


def plot_gtg_weights(weights, endpoints, path, title="graphlet transition weights"):
    """Log-scaled bars over the 28 transition types, labeled src->dst."""
    weights = np.asarray(weights, dtype=float)
    labels = [f"{'*' if s is None else s}-{d}" for s, d in endpoints]
    fig, ax = plt.subplots(figsize=(8, 3.4))
    ax.bar(np.arange(1, len(weights) + 1), weights, color="#33557a")
    ax.set_yscale("symlog")
    ax.set_xticks(np.arange(1, len(weights) + 1), labels, rotation=60,
                  ha="right", fontsize=6)
    ax.set_xlabel("transition (source-dest; * = birth)")
    ax.set_ylabel("weight")
    ax.set_title(title)
    return _finish(fig, path)
