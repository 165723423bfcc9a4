"""Figure rendering for the CLI report path.

Each report command writes its delimited table and a PNG next to it: a
scatter of the synthetic dataset, the directional support/confidence curves
of a parameter sweep, and the rules-versus-coverage view of a threshold
sweep. Figures are regenerable from the CSVs; nothing downstream consumes
them.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .analysis import SweepRow, ThresholdRow  # noqa: E402
from .data import Dataset  # noqa: E402

_RULE_AB = "A=High → B=High"
_RULE_BA = "B=High → A=High"


def render_synth_scatter(dataset: Dataset, path: str | Path) -> None:
    a = dataset.column("A").values
    b = dataset.column("B").values
    fig, ax = plt.subplots(figsize=(5, 4))
    ax.scatter(a, b, s=6, alpha=0.5, linewidths=0)
    ax.set_xlabel("A")
    ax.set_ylabel("B")
    ax.set_title(f"synthetic dependency ({dataset.row_count} points)")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _maybe_log_x(ax, values) -> None:
    vals = [v for v in values if v != 0]
    if vals and min(vals) > 0 and max(vals) / min(vals) > 20:
        ax.set_xscale("log")
    elif vals and max(vals) < 0 and min(vals) / max(vals) > 20:
        # Negative-only axes (e.g. lambda sweeps) plot against |value|.
        ax.set_xscale("log")


def render_param_sweep(
    rows: Sequence[SweepRow], family: str, path: str | Path
) -> None:
    params = [row.param_value for row in rows]
    xs = [abs(p) for p in params] if all(p < 0 for p in params) else params
    xlabel = "|lambda|" if xs != params else (
        "p" if family == "lk_ip" else "parameter"
    )
    fig, (ax_s, ax_c) = plt.subplots(1, 2, figsize=(9, 3.6), sharex=True)
    ax_s.plot(xs, [r.supp_ab for r in rows], marker="o", label=_RULE_AB)
    ax_s.plot(xs, [r.supp_ba for r in rows], marker="s", label=_RULE_BA)
    ax_s.set_ylabel("fuzzy support")
    ax_c.plot(xs, [r.conf_ab for r in rows], marker="o", label=_RULE_AB)
    ax_c.plot(xs, [r.conf_ba for r in rows], marker="s", label=_RULE_BA)
    ax_c.set_ylabel("fuzzy confidence")
    for ax in (ax_s, ax_c):
        ax.set_xlabel(xlabel)
        _maybe_log_x(ax, xs)
        ax.legend(fontsize=8)
    fig.suptitle(f"directional rules across {family}")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_threshold_sweep(
    rows: Sequence[ThresholdRow], path: str | Path
) -> None:
    covs = [row.min_cov for row in rows]
    fig, ax = plt.subplots(figsize=(5.5, 4))
    ax.plot(covs, [r.mean_conf_top20 for r in rows], marker="o",
            label="mean confidence (top 20%)")
    ax.plot(covs, [r.mean_supp_top20 for r in rows], marker="s",
            label="mean support (top 20%)")
    ax.set_xlabel("minimum fuzzy coverage")
    ax.set_ylabel("quality")
    ax.set_ylim(0, 1.05)
    ax2 = ax.twinx()
    ax2.plot(covs, [r.n_rules for r in rows], marker="^", color="tab:gray",
             label="rules")
    ax2.set_ylabel("number of rules")
    handles1, labels1 = ax.get_legend_handles_labels()
    handles2, labels2 = ax2.get_legend_handles_labels()
    ax.legend(handles1 + handles2, labels1 + labels2, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
