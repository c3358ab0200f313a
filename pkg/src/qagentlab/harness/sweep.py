"""Run one agent over a range of seeds, optionally in parallel processes."""
from __future__ import annotations

import csv
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace

from .config import ExperimentConfig
from .logs import MAGIC, SCHEMA_VERSION
from .runner import run_experiment

# summary keys copied into the sweep table, per agent
SWEEP_COLUMNS = {
    "grover": ("chosen", "target"),
    "bandit": ("cumulative_reward", "modal_arm_last50"),
    "qie": ("final_entropy", "mean_reward_first10", "mean_reward_last10", "modal_action"),
}


def parse_seeds(text: str) -> list[int]:
    """``"0..19"`` (inclusive), ``"3,5,8"`` or a mix like ``"0..4,10"``."""
    seeds = []
    for part in text.split(","):
        part = part.strip()
        m = re.fullmatch(r"(-?\d+)\.\.(-?\d+)", part)
        if m:
            lo, hi = int(m.group(1)), int(m.group(2))
            if hi < lo:
                raise ValueError(f"empty seed range {part!r}")
            seeds.extend(range(lo, hi + 1))
        elif re.fullmatch(r"-?\d+", part):
            seeds.append(int(part))
        else:
            raise ValueError(f"bad seed list entry {part!r}")
    return seeds


def _run_one(config):
    return run_experiment(config).summary


def run_sweep(base: ExperimentConfig, seeds, jobs: int = 1):
    configs = [replace(base, seed=s, output_dir=base.output_dir / f"seed-{s:04d}") for s in seeds]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            summaries = list(pool.map(_run_one, configs))
    else:
        summaries = [_run_one(c) for c in configs]

    cols = SWEEP_COLUMNS[base.agent]
    base.output_dir.mkdir(parents=True, exist_ok=True)
    path = base.output_dir / "sweep.csv"
    with open(path, "w", newline="") as fh:
        seed_label = f"{seeds[0]}..{seeds[-1]}" if seeds else "none"
        fh.write(f"# {MAGIC} schema={SCHEMA_VERSION} agent={base.agent} seed={seeds[0] if seeds else 0}\n")
        fh.write(f"# sweep seeds={seed_label} n={len(seeds)}\n")
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["seed", *cols])
        for s in summaries:
            w.writerow([s["seed"], *(s.get(c, "") for c in cols)])
    return summaries, path
