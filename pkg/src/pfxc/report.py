"""Run reports for the CLI: single-line JSON records, CSV tables, and
matplotlib figures rendered alongside the delimited output."""
from __future__ import annotations

import csv
import json
import math
import os
from dataclasses import asdict, dataclass
from fractions import Fraction

FIELDS = [
    "command",
    "mode",
    "family",
    "n",
    "param",
    "entropy_bits",
    "optimal_weighted",
    "codec_weighted",
    "bound",
    "model_bits",
    "payload_bits",
    "encode_ns_per_symbol",
    "decode_ns_per_symbol",
]


@dataclass
class RunReport:
    command: str
    mode: str
    family: str
    n: int
    param: str                 # exact rational as "num/den"
    entropy_bits: float
    optimal_weighted: int
    codec_weighted: int
    bound: int                 # ceil(eps*total) or floor(c*optimal); exact int
                               # so astronomically skewed counts survive JSON
    model_bits: int
    payload_bits: int
    encode_ns_per_symbol: float
    decode_ns_per_symbol: float

    def json_line(self) -> str:
        return json.dumps(asdict(self), sort_keys=False)


def write_csv(rows: list, path: str) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=FIELDS)
        writer.writeheader()
        for r in rows:
            writer.writerow(asdict(r))


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def _group(rows, key):
    out = {}
    for r in rows:
        out.setdefault(key(r), []).append(r)
    return out


def plot_model_scaling(rows: list, path: str) -> None:
    """Serialized model bits against n, with a sqrt(n)*log2(n) reference
    anchored at the smallest n of each series."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6, 4))
    for (mode, family, param), series in sorted(
        _group(rows, lambda r: (r.mode, r.family, r.param)).items()
    ):
        series = sorted(series, key=lambda r: r.n)
        ns = [r.n for r in series]
        bits = [r.model_bits for r in series]
        ax.plot(ns, bits, marker="o", label=f"{mode} {family} {param}")
        if mode == "multiplicative":
            k = bits[0] / (math.sqrt(ns[0]) * math.log2(ns[0]))
            ref = [k * math.sqrt(n) * math.log2(n) for n in ns]
            ax.plot(ns, ref, linestyle="--", alpha=0.5)
    ax.set_xscale("log", base=2)
    ax.set_yscale("log", base=2)
    ax.set_xlabel("alphabet size n")
    ax.set_ylabel("model bits")
    ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_redundancy(rows: list, path: str) -> None:
    """Measured redundancy against the allowed bound, one series per
    (mode, family, param)."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6, 4))
    for (mode, family, param), series in sorted(
        _group(rows, lambda r: (r.mode, r.family, r.param)).items()
    ):
        series = sorted(series, key=lambda r: r.n)
        ns = [r.n for r in series]
        if mode == "additive":
            ys = [
                float(Fraction(r.codec_weighted - r.optimal_weighted, r.bound))
                if r.bound else 0.0
                for r in series
            ]
        else:
            ys = [
                float(Fraction(r.codec_weighted, r.bound)) if r.bound else 0.0
                for r in series
            ]
        ax.plot(ns, ys, marker="o", label=f"{mode} {family} {param}")
    ax.axhline(1.0, color="k", linestyle=":", linewidth=1)
    ax.set_xscale("log", base=2)
    ax.set_xlabel("alphabet size n")
    ax.set_ylabel("redundancy / bound")
    ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_throughput(rows: list, path: str) -> None:
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6, 4))
    for (mode, family, param), series in sorted(
        _group(rows, lambda r: (r.mode, r.family, r.param)).items()
    ):
        series = sorted(series, key=lambda r: r.n)
        ns = [r.n for r in series]
        ax.plot(ns, [r.encode_ns_per_symbol for r in series], marker="o",
                label=f"enc {mode} {family} {param}")
        ax.plot(ns, [r.decode_ns_per_symbol for r in series], marker="s",
                linestyle="--", label=f"dec {mode} {family} {param}")
    ax.set_xscale("log", base=2)
    ax.set_xlabel("alphabet size n")
    ax.set_ylabel("ns / symbol")
    ax.legend(fontsize=6)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_report_dir(rows: list, directory: str, stem: str = "bench") -> list:
    """Write <stem>.csv plus the standard figures into a directory; returns
    the list of paths written."""
    os.makedirs(directory, exist_ok=True)
    paths = []
    csv_path = os.path.join(directory, f"{stem}.csv")
    write_csv(rows, csv_path)
    paths.append(csv_path)
    for name, fn in (
        ("model_scaling.png", plot_model_scaling),
        ("redundancy.png", plot_redundancy),
        ("throughput.png", plot_throughput),
    ):
        p = os.path.join(directory, f"{stem}_{name}")
        fn(rows, p)
        paths.append(p)
    return paths
