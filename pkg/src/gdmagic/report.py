"""Survey rows, their delimited serialization, and the rendered figure."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

_VERDICT_COLORS = {
    "MAGIC": "#2e7d32",
    "NOT-MAGIC": "#c62828",
    "UNKNOWN": "#9e9e9e",
    "EXHAUSTED": "#ef6c00",
}


@dataclass(frozen=True)
class SurveyRow:
    graph_id: str
    group_spec: str
    verdict: str  # MAGIC | NOT-MAGIC | UNKNOWN | EXHAUSTED
    justification: str  # reason tag or SEARCH
    certificate: str | None  # relative path of the certificate file
    seconds: float


def survey_table(rows: list[SurveyRow]) -> str:
    """Deterministic TSV; wall times are kept out and go to the sidecar log."""
    lines = ["graph\tgroup\tverdict\tjustification\tcertificate"]
    for row in rows:
        lines.append(
            "\t".join(
                (
                    row.graph_id,
                    row.group_spec,
                    row.verdict,
                    row.justification,
                    row.certificate or "-",
                )
            )
        )
    return "\n".join(lines) + "\n"


def survey_log(rows: list[SurveyRow]) -> str:
    lines = [f"{row.graph_id}\t{row.group_spec}\t{row.seconds:.4f}s" for row in rows]
    return "\n".join(lines) + "\n"


def render_survey_figure(rows: list[SurveyRow], path: str | Path) -> None:
    """A verdict grid: one row per graph, one column per group spec."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    from matplotlib.patches import Patch

    graph_ids = sorted({row.graph_id for row in rows})
    group_specs = sorted({row.group_spec for row in rows})
    lookup = {(row.graph_id, row.group_spec): row.verdict for row in rows}

    fig_w = max(4.0, 0.6 * len(group_specs) + 2.5)
    fig_h = max(3.0, 0.28 * len(graph_ids) + 1.5)
    fig, ax = plt.subplots(figsize=(fig_w, fig_h))
    for gy, gid in enumerate(graph_ids):
        for gx, spec in enumerate(group_specs):
            verdict = lookup.get((gid, spec))
            color = _VERDICT_COLORS.get(verdict, "#ffffff") if verdict else "#ffffff"
            ax.add_patch(
                plt.Rectangle((gx, gy), 1, 1, facecolor=color, edgecolor="#dddddd")
            )
    ax.set_xlim(0, max(1, len(group_specs)))
    ax.set_ylim(0, max(1, len(graph_ids)))
    ax.invert_yaxis()
    ax.set_xticks([i + 0.5 for i in range(len(group_specs))])
    ax.set_xticklabels(group_specs, rotation=60, ha="right", fontsize=7)
    ax.set_yticks([i + 0.5 for i in range(len(graph_ids))])
    ax.set_yticklabels(graph_ids, fontsize=7)
    ax.set_title("magic labeling survey")
    ax.legend(
        handles=[
            Patch(facecolor=c, label=v) for v, c in _VERDICT_COLORS.items()
        ],
        loc="upper left",
        bbox_to_anchor=(1.01, 1.0),
        fontsize=7,
        frameon=False,
    )
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
