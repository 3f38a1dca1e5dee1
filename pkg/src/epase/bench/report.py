"""CSV tables and SVG plots for benchmark records.

The record CSV has the header::

    trial_id,algorithm,N_t,w,eps,outcome,cost,wall_time,edges_evaluated,states_expanded,threads_spawned

Floats are written with ``repr`` so that :func:`read_csv` reproduces the
records exactly and re-emitting the same records gives identical bytes.
"""
from __future__ import annotations

import csv
import math
import os
from dataclasses import astuple, fields
from typing import Iterable, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.figure import Figure  # noqa: E402

from .matrix import FIELDS, SUMMARY_FIELDS, BenchRecord, CellSummary, summarize  # noqa: E402

_TYPES = {f.name: f.type for f in fields(BenchRecord)}


def _fmt(v: object) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _write_rows(path: str | os.PathLike, header: Sequence[str], rows: Iterable[tuple]) -> None:
    with open(path, "w", newline="") as fh:
        wr = csv.writer(fh, lineterminator="\n")
        wr.writerow(header)
        for row in rows:
            wr.writerow([_fmt(v) for v in row])


def emit_csv(records: Sequence[BenchRecord], path: str | os.PathLike) -> None:
    if not records:
        raise ValueError("no records to write")
    _write_rows(path, FIELDS, (astuple(r) for r in records))


def read_csv(path: str | os.PathLike) -> list[BenchRecord]:
    out = []
    with open(path, newline="") as fh:
        rd = csv.DictReader(fh)
        if tuple(rd.fieldnames or ()) != FIELDS:
            raise ValueError(f"unexpected header {rd.fieldnames}")
        for row in rd:
            vals = {}
            for name in FIELDS:
                t = _TYPES[name]
                raw = row[name]
                if t in ("int", int):
                    vals[name] = int(raw)
                elif t in ("float", float):
                    vals[name] = float(raw)
                else:
                    vals[name] = raw
            out.append(BenchRecord(**vals))
    return out


def emit_summary_csv(records: Sequence[BenchRecord], path: str | os.PathLike) -> list[CellSummary]:
    summary = summarize(records)
    _write_rows(path, SUMMARY_FIELDS, (astuple(s) for s in summary))
    return summary


def _series(summary: Sequence[CellSummary], attr: str) -> dict[str, tuple[list[int], list[float]]]:
    by: dict[str, list[tuple[int, float]]] = {}
    multi_pair = len({(s.w, s.eps) for s in summary}) > 1
    for s in summary:
        label = f"{s.algorithm} (w={s.w:g}, eps={s.eps:g})" if multi_pair else s.algorithm
        by.setdefault(label, []).append((s.N_t, getattr(s, attr)))
    return {k: ([n for n, _ in sorted(v)], [y for _, y in sorted(v)]) for k, v in by.items()}


def _figure(series: dict, ylabel: str, title: str) -> Figure:
    fig, ax = plt.subplots(figsize=(6, 4))
    for label, (xs, ys) in series.items():
        ax.plot(xs, ys, marker="o", label=label)
    ax.set_xlabel("threads (N_t)")
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize="small")
    fig.tight_layout()
    return fig


def speedup_figure(records: Sequence[BenchRecord]) -> Figure:
    return _figure(_series(summarize(records), "speedup"), "speedup over weighted A*", "Speedup")


def edges_figure(records: Sequence[BenchRecord]) -> Figure:
    return _figure(_series(summarize(records), "mean_edges"), "mean edges evaluated", "Edge evaluations")


def _save(fig: Figure, path: str) -> None:
    matplotlib.rcParams["svg.hashsalt"] = "epase"
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def emit_plots(records: Sequence[BenchRecord], path: str | os.PathLike) -> list[str]:
    """Write ``speedup.svg`` and ``edges.svg`` into directory ``path``."""
    if not records:
        raise ValueError("no records to plot")
    os.makedirs(path, exist_ok=True)
    out = []
    for name, fig in (("speedup.svg", speedup_figure(records)), ("edges.svg", edges_figure(records))):
        p = os.path.join(path, name)
        _save(fig, p)
        out.append(p)
    return out


def format_table(summary: Sequence[CellSummary]) -> str:
    """Plain-text table for the terminal."""
    head = f"{'algorithm':<9} {'N_t':>4} {'w':>5} {'eps':>5} {'solved':>7} {'mean_s':>9} {'speedup':>8} {'edges':>9}"
    lines = [head, "-" * len(head)]
    for s in summary:
        sp = "nan" if math.isnan(s.speedup) else f"{s.speedup:.2f}"
        lines.append(
            f"{s.algorithm:<9} {s.N_t:>4} {s.w:>5g} {s.eps:>5g} {s.solved:>3}/{s.trials:<3}"
            f" {s.mean_time:>9.4f} {sp:>8} {s.mean_edges:>9.1f}"
        )
    return "\n".join(lines)
