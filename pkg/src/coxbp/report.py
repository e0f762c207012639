"""Run reports: structured results, delimited output, and rendered figures.

Every CLI command builds a ``RunReport``; ``verify-paper`` and ``bench``
additionally write a CSV of per-check rows and render matplotlib figures
next to it when an output directory is given.  Reports are deterministic
given identical inputs, seeds and package version.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

__all__ = [
    "CheckResult",
    "RunReport",
    "write_report_csv",
    "save_verify_figure",
    "save_bench_figure",
    "save_poset_figure",
    "save_interval_figure",
]


@dataclass
class CheckResult:
    name: str
    status: str  # "pass" | "fail" | "skip"
    seconds: float = 0.0
    details: str = ""
    data: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"name": self.name, "status": self.status,
               "seconds": round(self.seconds, 3)}
        if self.details:
            out["details"] = self.details
        if self.data:
            out["data"] = self.data
        return out


@dataclass
class RunReport:
    command: str
    inputs: dict
    results: list
    seed: Optional[int] = None

    @property
    def passed(self) -> bool:
        return all(r.status != "fail" for r in self.results)

    def to_json(self) -> dict:
        out = {
            "command": self.command,
            "inputs": self.inputs,
            "results": [r.to_json() for r in self.results],
            "passed": self.passed,
        }
        if self.seed is not None:
            out["seed"] = self.seed
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def write_report_csv(report: RunReport, path) -> None:
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["check", "status", "seconds", "details"])
        for r in report.results:
            writer.writerow([r.name, r.status, f"{r.seconds:.3f}", r.details])


def _matplotlib():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def save_verify_figure(report: RunReport, path) -> None:
    """Horizontal bars of per-check durations, colored by status."""
    plt = _matplotlib()
    results = report.results
    names = [r.name for r in results]
    secs = [r.seconds for r in results]
    colors = {"pass": "#2a9d8f", "fail": "#e76f51", "skip": "#bcbcbc"}
    fig, ax = plt.subplots(figsize=(8, max(2.5, 0.32 * len(names))))
    ax.barh(range(len(names)), secs,
            color=[colors.get(r.status, "#888888") for r in results])
    ax.set_yticks(range(len(names)))
    ax.set_yticklabels(names, fontsize=8)
    ax.invert_yaxis()
    ax.set_xlabel("seconds")
    ax.set_title(f"verification checks ({'all pass' if report.passed else 'FAILURES'})")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_bench_figure(rows: list, path) -> None:
    """Timing comparison of the naive family sweep vs the fast poset path.

    ``rows`` holds dicts with keys n, naive_mean, fast_mean (seconds;
    naive_mean may be None when skipped).
    """
    plt = _matplotlib()
    fig, ax = plt.subplots(figsize=(6, 4))
    ns = [r["n"] for r in rows]
    fast = [r["fast_mean"] for r in rows]
    ax.plot(ns, fast, "o-", label="BP poset (pattern path)")
    naive_pts = [(r["n"], r["naive_mean"]) for r in rows
                 if r.get("naive_mean") is not None]
    if naive_pts:
        ax.plot([p[0] for p in naive_pts], [p[1] for p in naive_pts],
                "s--", label="naive 2^(n-1) family sweep")
    ax.set_xlabel("n (symmetric group S_n)")
    ax.set_ylabel("mean seconds per element")
    ax.set_yscale("log")
    ax.legend()
    ax.set_title("BP poset computation: fast path vs naive sweep")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _layered_positions(num_layers, layer_sizes):
    pos = {}
    for layer, size in enumerate(layer_sizes):
        for i in range(size):
            pos[(layer, i)] = (i - (size - 1) / 2.0, layer)
    return pos


def save_poset_figure(poset, path, title: str = "BP poset") -> None:
    """Hasse diagram of a BP poset, layered by height."""
    plt = _matplotlib()
    n = len(poset.blocks)
    covers = poset.covers()
    height = [0] * n
    changed = True
    while changed:
        changed = False
        for lo, hi in covers:
            if height[hi] < height[lo] + 1:
                height[hi] = height[lo] + 1
                changed = True
    layers: dict = {}
    for i in range(n):
        layers.setdefault(height[i], []).append(i)
    coords = {}
    for h, blocks in sorted(layers.items()):
        for x, b in enumerate(sorted(blocks)):
            coords[b] = (x - (len(blocks) - 1) / 2.0, h)
    fig, ax = plt.subplots(figsize=(5, 4))
    for lo, hi in covers:
        (x1, y1), (x2, y2) = coords[lo], coords[hi]
        ax.plot([x1, x2], [y1, y2], "-", color="#555555", zorder=1)
    for i, b in enumerate(poset.blocks):
        x, y = coords[i]
        label = "{" + ",".join(map(str, sorted(b))) + "}"
        ax.scatter([x], [y], s=500, color="#f4f1de", edgecolor="black", zorder=2)
        ax.text(x, y, label, ha="center", va="center", fontsize=9, zorder=3)
    ax.set_axis_off()
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_interval_figure(iv, path, title: str = "Bruhat interval",
                         hasse_cap: int = 60) -> None:
    """Hasse diagram for small intervals, rank histogram otherwise."""
    plt = _matplotlib()
    if iv.size <= hasse_cap:
        coords = {}
        for rank in iv.ranks:
            for x, w in enumerate(rank):
                coords[iv.index[w]] = (x - (len(rank) - 1) / 2.0, w.length)
        fig, ax = plt.subplots(figsize=(7, 5))
        for lo, hi in iv.covers:
            (x1, y1), (x2, y2) = coords[lo], coords[hi]
            ax.plot([x1, x2], [y1, y2], "-", color="#777777",
                    linewidth=0.8, zorder=1)
        for i, w in enumerate(iv.elements):
            x, y = coords[i]
            ax.text(x, y, str(w), ha="center", va="center", fontsize=7,
                    bbox={"boxstyle": "round", "fc": "#f4f1de", "ec": "black",
                          "lw": 0.5}, zorder=2)
        ax.set_axis_off()
    else:
        fig, ax = plt.subplots(figsize=(6, 4))
        sizes = [len(r) for r in iv.ranks]
        ax.bar(range(len(sizes)), sizes, color="#2a9d8f")
        ax.set_xlabel("length")
        ax.set_ylabel("elements")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
