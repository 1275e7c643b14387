"""Replay reporting: delimited outputs plus matplotlib figures."""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from . import canonical  # noqa: E402
from .session import classify_trace, replay  # noqa: E402


def render_view(view: dict, ax) -> None:
    """Draw an abstract view model onto a matplotlib axes."""
    ct = view.get("chart_type")
    marks = view.get("marks", [])
    if ct is None or not marks:
        ax.set_title("empty view")
        ax.axis("off")
        return
    if ct == "histogram":
        for m in marks:
            ch = m["channels"]
            ax.bar(ch["x0"], ch["count"], width=ch["x1"] - ch["x0"], align="edge",
                   edgecolor="white")
    elif ct in ("bar", "grouped_bar", "stacked_bar"):
        series = sorted({m["channels"].get("series") for m in marks}, key=str)
        cats = []
        for m in marks:
            c = m["channels"]["category"]
            if c not in cats:
                cats.append(c)
        width = 0.8 / max(len(series), 1)
        bottoms = {c: 0.0 for c in cats}
        for si, s in enumerate(series):
            xs, ys, bots = [], [], []
            for ci, c in enumerate(cats):
                for m in marks:
                    ch = m["channels"]
                    if ch["category"] == c and ch.get("series") == s:
                        if ct == "stacked_bar":
                            xs.append(ci)
                            bots.append(bottoms[c])
                            bottoms[c] += ch["value"]
                        else:
                            xs.append(ci + si * width)
                            bots.append(0.0)
                        ys.append(ch["value"])
            if ct == "stacked_bar":
                ax.bar(xs, ys, width=0.8, bottom=bots, label=str(s))
            else:
                ax.bar(xs, ys, width=width, align="edge", label=str(s))
        ax.set_xticks(range(len(cats)))
        ax.set_xticklabels([str(c) for c in cats], rotation=45, ha="right", fontsize=7)
        if len(series) > 1:
            ax.legend(fontsize=6)
    elif ct == "line":
        series = sorted({m["channels"].get("series") for m in marks}, key=str)
        for s in series:
            pts = sorted(
                ((m["channels"]["x"], m["channels"]["value"]) for m in marks
                 if m["channels"].get("series") == s),
                key=lambda p: p[0])
            ax.plot([p[0] for p in pts], [p[1] for p in pts], marker="o", label=str(s))
        if len(series) > 1:
            ax.legend(fontsize=6)
    elif ct == "scatter":
        colors = sorted({str(m["channels"].get("color")) for m in marks})
        cmap = {c: i for i, c in enumerate(colors)}
        xs = [m["channels"]["x"] for m in marks]
        ys = [m["channels"]["y"] for m in marks]
        cs = [cmap[str(m["channels"].get("color"))] for m in marks]
        ax.scatter(xs, ys, c=cs, cmap="tab10", s=12)
    elif ct == "parallel_coordinates":
        axes = view.get("axes", [])
        for m in marks:
            values = m["channels"]["values"]
            ys = []
            for a in axes:
                lo, hi = a["domain"]
                v = values.get(a["attribute"])
                norm = 0.5 if hi == lo else (v - lo) / (hi - lo)
                if a.get("descending"):
                    norm = 1.0 - norm
                ys.append(norm)
            ax.plot(range(len(axes)), ys, alpha=0.4)
        ax.set_xticks(range(len(axes)))
        ax.set_xticklabels([a["attribute"] for a in axes], rotation=45, ha="right", fontsize=7)
    ax.set_title(ct)


def write_report(trace: list[dict], dataset, out_dir: str, config=None) -> dict:
    """Replay a trace and write snapshots.jsonl, taxonomy.csv, and figures."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    result = replay(trace, dataset, config)
    counts = classify_trace(trace, dataset, config)

    with open(out / "snapshots.jsonl", "w", encoding="utf-8") as fh:
        for snap in result.snapshots:
            fh.write(canonical.dumps(snap) + "\n")
    with open(out / "taxonomy.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["outcome", "count"])
        for key, value in counts.items():
            writer.writerow([key, value])

    fig, ax = plt.subplots(figsize=(7, 5))
    if result.final_snapshot:
        render_view(result.final_snapshot["view"], ax)
    else:
        ax.set_title("no snapshots")
        ax.axis("off")
    fig.tight_layout()
    fig.savefig(out / "final_view.png", dpi=120)
    plt.close(fig)

    fig, ax = plt.subplots(figsize=(7, 4))
    keys = list(counts)
    ax.bar(range(len(keys)), [counts[k] for k in keys])
    ax.set_xticks(range(len(keys)))
    ax.set_xticklabels(keys, rotation=45, ha="right", fontsize=7)
    ax.set_ylabel("feedback count")
    fig.tight_layout()
    fig.savefig(out / "taxonomy.png", dpi=120)
    plt.close(fig)

    return {"snapshots": len(result.snapshots), "divergences": len(result.divergences),
            "taxonomy": counts}
