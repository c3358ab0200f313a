"""Run one seeded experiment and write its logs, data files and summary."""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .. import bandit, grover, qie
from ..agent import Stream, stream
from ..imaging import GrayImage, read_pgm, shannon_entropy, write_pgm
from ..qsim import probabilities, run
from .config import ExperimentConfig
from .logs import write_csv, write_dat

LOG_NAMES = {"grover": "grover_shots.csv", "bandit": "bandit_episodes.csv", "qie": "qie_episodes.csv"}
ACTION_COLUMNS = ("xor", "qft", "scramble", "none")


@dataclass
class Trajectory:
    columns: list[str]
    rows: list[list]
    extras: dict = field(default_factory=dict)


@dataclass
class RunResult:
    config: ExperimentConfig
    summary: dict
    files: list[Path]

    @property
    def log_path(self) -> Path:
        return self.files[0]


def load_image(config: ExperimentConfig) -> GrayImage:
    if config.image is not None:
        return read_pgm(config.image)
    n = config.size
    if config.synthetic == "constant":
        return GrayImage.constant(n, n, 128)
    if config.synthetic == "gradient":
        return GrayImage.gradient(n, n)
    return GrayImage.noise(n, n, stream(config.seed, Stream.ENVIRONMENT))


def image_digest(img: GrayImage) -> str:
    h = hashlib.sha256(f"{img.width}x{img.height}:".encode())
    h.update(img.pixels.tobytes())
    return h.hexdigest()


def grover_trajectory(config: ExperimentConfig) -> Trajectory:
    task = grover.GroverTask(config.target, config.shots)
    chosen, hist = grover.select_action(task, stream(config.seed, Stream.MEASUREMENT))
    probs = probabilities(run(grover.grover_circuit(task.target)))
    rows = [[b, hist.counts.get(b, 0), float(p)] for b, p in zip(grover.ACTIONS, probs)]
    return Trajectory(["bitstring", "count", "probability"], rows,
                      {"chosen": chosen, "histogram": hist, "probabilities": probs})


def bandit_trajectory(config: ExperimentConfig) -> Trajectory:
    records = bandit.train(config.bandit_config())
    columns = (["episode", "action", "reward", "cumulative_reward"]
               + [f"p{a}" for a in bandit.ARMS]
               + [f"theta_{j}" for j in range(4)]
               + [f"est_{a}" for a in bandit.ARMS])
    rows = [[r.episode, r.action, r.reward, r.cumulative_reward,
             *r.policy_probs, *r.theta, *r.estimates] for r in records]
    return Trajectory(columns, rows, {"records": records})


def qie_trajectory(config: ExperimentConfig) -> Trajectory:
    img = load_image(config)
    agent = qie.QieAgent(config.lr, config.seed, config.segment_mode)
    for _ in range(config.episodes):
        agent.step(img)
    records = agent.memory
    columns = (["episode", "action", "reward_entropy_bits"]
               + [f"p_{a}" for a in ACTION_COLUMNS]
               + [f"theta_{j}" for j in range(4)]
               + [f"n_{a}" for a in ACTION_COLUMNS])
    rows = [[r.episode, r.action.name.lower(), r.reward, *r.action_probs, *r.theta, *r.action_counts]
            for r in records]
    return Trajectory(columns, rows, {"records": records, "image": img, "key": agent.key,
                                      "encrypted": agent.last_encrypted})


TRAJECTORIES = {"grover": grover_trajectory, "bandit": bandit_trajectory, "qie": qie_trajectory}


def trajectory(config: ExperimentConfig) -> Trajectory:
    return TRAJECTORIES[config.agent](config)


def log_config(config: ExperimentConfig, traj: Trajectory) -> dict:
    params = config.params()
    if config.agent == "qie":
        if params["image"] is not None:
            params["image"] = str(Path(params["image"]).resolve())
        params["image_sha256"] = image_digest(traj.extras["image"])
    return params


def run_experiment(config: ExperimentConfig) -> RunResult:
    out = config.output_dir
    out.mkdir(parents=True, exist_ok=True)
    traj = trajectory(config)
    log = write_csv(out / LOG_NAMES[config.agent], config.agent, config.seed,
                    traj.columns, traj.rows, log_config(config, traj))
    writer = {"grover": _grover_outputs, "bandit": _bandit_outputs, "qie": _qie_outputs}[config.agent]
    summary, files = writer(config, traj)
    summary = {"agent": config.agent, "seed": config.seed, "params": config.params(), **summary}
    files = [log, *files]
    summary_path = out / "summary.json"
    summary_path.write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    files.append(summary_path)
    if config.plots:
        from . import plotting
        files.extend(plotting.render(config.agent, traj, out))
    return RunResult(config, summary, files)


def _grover_outputs(config, traj):
    out = config.output_dir
    dat = write_dat(out / "grover_histogram.dat", "grover measurement histogram",
                    ["index", "bitstring", "count"],
                    [[i, r[0], r[1]] for i, r in enumerate(traj.rows)])
    hist = traj.extras["histogram"]
    summary = {"chosen": traj.extras["chosen"], "target": config.target, "shots": config.shots,
               "counts": hist.counts,
               "probabilities": [float(p) for p in traj.extras["probabilities"]]}
    return summary, [dat]


def _bandit_outputs(config, traj):
    out = config.output_dir
    records = traj.extras["records"]
    freq = bandit.arm_frequencies(records)
    tail = min(50, len(records))
    freq_tail = bandit.arm_frequencies(records, tail)
    estimates = dict(zip(bandit.ARMS, records[-1].estimates))
    freq_csv = write_csv(out / "bandit_arm_frequency.csv", "bandit", config.seed,
                         ["arm", "count", f"count_last{tail}", "reward_prob", "estimate"],
                         [[a, freq[a], freq_tail[a], float(config.probs[a]), estimates[a]]
                          for a in bandit.ARMS], config.params())
    files = [
        freq_csv,
        write_dat(out / "bandit_cumulative_reward.dat", "bandit cumulative reward",
                  ["episode", "cumulative_reward"],
                  [[r.episode, r.cumulative_reward] for r in records]),
        write_dat(out / "bandit_episode_reward.dat", "bandit per-episode reward",
                  ["episode", "reward"], [[r.episode, r.reward] for r in records]),
        write_dat(out / "bandit_arm_frequency.dat", "bandit arm selection frequency",
                  ["index", "arm", "count"],
                  [[i, a, freq[a]] for i, a in enumerate(bandit.ARMS)]),
    ]
    summary = {
        "episodes": len(records),
        "cumulative_reward": records[-1].cumulative_reward,
        "arm_frequencies": freq,
        f"arm_frequencies_last{tail}": freq_tail,
        f"modal_arm_last{tail}": bandit.modal_arm(records, tail),
        "final_policy": dict(zip(bandit.ARMS, records[-1].policy_probs)),
        "estimates": estimates,
        "theta": list(records[-1].theta),
    }
    return summary, files


def _qie_outputs(config, traj):
    out = config.output_dir
    records = traj.extras["records"]
    freq = {a.name.lower(): c for a, c in qie.action_frequencies(records).items()}
    rewards = np.array([r.reward for r in records])
    window = min(10, len(records))
    freq_csv = write_csv(out / "qie_action_frequency.csv", "qie", config.seed,
                         ["action", "count"], [[a, freq[a]] for a in ACTION_COLUMNS],
                         config.params())
    files = [
        freq_csv,
        write_dat(out / "qie_entropy.dat", "encrypted image entropy per episode",
                  ["episode", "entropy_bits"], [[r.episode, r.reward] for r in records]),
        write_dat(out / "qie_action_frequency.dat", "encryption action frequency",
                  ["index", "action", "count"],
                  [[i, a, freq[a]] for i, a in enumerate(ACTION_COLUMNS)]),
        write_pgm(traj.extras["encrypted"], out / "qie_final_encrypted.pgm"),
    ]
    summary = {
        "episodes": len(records),
        "input_entropy": shannon_entropy(traj.extras["image"]),
        "final_entropy": records[-1].reward,
        f"mean_reward_first{window}": float(rewards[:window].mean()),
        f"mean_reward_last{window}": float(rewards[-window:].mean()),
        "action_frequencies": freq,
        "modal_action": qie.modal_action(records).name.lower(),
        "key": traj.extras["key"],
        "final_policy": dict(zip(ACTION_COLUMNS, records[-1].action_probs)),
        "theta": list(records[-1].theta),
    }
    return summary, files
