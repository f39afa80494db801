"""Text, CSV and JSON renderings of harness results.

Text and CSV round to three decimals; JSON keeps full precision.
"""

from __future__ import annotations

import csv
import io
import json

from .harness import HIT_BUCKETS, CollisionStats, DiffusionStats, TrialConfig

FORMATS = ("text", "csv", "json")

DIFFUSION_FIELDS = ["hash_type", "k2", "B_mean", "P", "B_std", "P_std"]
COLLISION_FIELDS = (
    ["hash_type", "k2"]
    + [f"hits_{i}" for i in range(HIT_BUCKETS)]
    + [f"hits_{HIT_BUCKETS}_or_more", "d_sum", "d_per_char"]
)


def _k2_cell(cfg: TrialConfig) -> str:
    return "" if cfg.baseline else str(cfg.key.k2)


def _run_header(cfg: TrialConfig) -> dict:
    return {
        "hash_type": cfg.hash_type,
        "baseline": cfg.baseline,
        "k1": cfg.key.k1,
        "k2": cfg.key.k2,
        "k3": cfg.key.k3,
        "generator": cfg.generator.value,
        "trials": cfg.trials,
        "eval_seed": cfg.eval_seed,
    }


def _csv(fields: list[str], row: list) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(fields)
    writer.writerow(row)
    return buf.getvalue()


def render_diffusion(cfg: TrialConfig, stats: DiffusionStats, fmt: str = "text") -> str:
    if fmt == "json":
        doc = _run_header(cfg) | stats.as_dict()
        return json.dumps(doc, indent=2) + "\n"
    values = [stats.b_mean, stats.p_mean, stats.b_std, stats.p_std]
    if fmt == "csv":
        return _csv(DIFFUSION_FIELDS, [cfg.hash_type, _k2_cell(cfg)] + [f"{v:.3f}" for v in values])
    if fmt == "text":
        title = "standard hash" if cfg.baseline else f"keyed hash ({cfg.generator.value.upper()})"
        header = f"{'hash_type':<10}{'k2':>4}{'B_mean':>10}{'P(%)':>9}{'B_std':>9}{'P_std(%)':>10}"
        row = f"{cfg.hash_type:<10}{_k2_cell(cfg) or '-':>4}" + "".join(
            f"{v:>{w}.3f}" for v, w in zip(values, (10, 9, 9, 10))
        )
        return f"Diffusion, {title}, {cfg.trials} trials, L = {stats.length}\n{header}\n{row}\n"
    raise ValueError(f"unknown format {fmt!r}")


def render_collision(cfg: TrialConfig, stats: CollisionStats, fmt: str = "text") -> str:
    if fmt == "json":
        doc = _run_header(cfg) | stats.as_dict()
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "csv":
        row = (
            [cfg.hash_type, _k2_cell(cfg)]
            + stats.hits_buckets
            + [stats.hits_overflow, stats.d_sum, f"{stats.d_per_char:.3f}"]
        )
        return _csv(COLLISION_FIELDS, row)
    if fmt == "text":
        title = "standard hash" if cfg.baseline else f"keyed hash ({cfg.generator.value.upper()})"
        hits = "(" + ", ".join(str(h) for h in stats.hits_buckets) + ")"
        lines = [
            f"Collision, {title}, {cfg.trials} trials",
            f"{'hash_type':<10}{'number of hits':<24}{'sum of d':>12}{'avg d/char':>12}",
            f"{cfg.hash_type:<10}{hits:<24}{stats.d_sum:>12}{stats.d_per_char:>12.3f}",
        ]
        if stats.hits_overflow:
            lines.append(f"trials with {HIT_BUCKETS}+ hits: {stats.hits_overflow}")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def render_b_values(stats: DiffusionStats) -> str:
    return _table(["trial", "B"], list(enumerate(stats.b_values, 1)))


def _table(fields: list[str], rows: list) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(fields)
    writer.writerows(rows)
    return buf.getvalue()


def render_dump(dump: dict, fmt: str = "csv") -> str:
    if fmt == "json":
        return json.dumps(dump, indent=2) + "\n"
    rows = [("message", i, v) for i, v in dump["message"]]
    rows += [("digest", i, v) for i, v in dump["digest"]]
    if fmt == "csv":
        return _table(["set", "index", "value"], rows)
    if fmt == "text":
        return dump["bits"] + "\n"
    raise ValueError(f"unknown format {fmt!r}")
