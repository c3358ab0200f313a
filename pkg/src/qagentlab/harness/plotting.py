"""PNG figures drawn from the same series written to the .dat files."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from ..bandit import ARMS, arm_frequencies  # noqa: E402
from ..qie import EncryptionAction, action_frequencies  # noqa: E402

STYLE = {
    "figure.figsize": (6.0, 3.6),
    "figure.dpi": 120,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "font.size": 10,
}


def _save(fig, path):
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def _bars(ax, labels, values, highlight=None):
    colors = ["tab:orange" if lab == highlight else "tab:blue" for lab in labels]
    ax.bar(labels, values, color=colors)
    for x, v in zip(labels, values):
        ax.annotate(str(v), (x, v), ha="center", va="bottom", fontsize=8)


def grover_figures(traj, out):
    counts = [row[1] for row in traj.rows]
    labels = [row[0] for row in traj.rows]
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        _bars(ax, labels, counts, traj.extras["chosen"])
        ax.set_xlabel("measured bitstring")
        ax.set_ylabel("count")
        ax.set_title(f"Grover agent decision: {traj.extras['chosen']}")
        return [_save(fig, out / "grover_histogram.png")]


def bandit_figures(traj, out):
    records = traj.extras["records"]
    ep = np.array([r.episode for r in records])
    files = []
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        ax.plot(ep, [r.cumulative_reward for r in records])
        ax.set_xlabel("episode")
        ax.set_ylabel("cumulative reward")
        files.append(_save(fig, out / "bandit_cumulative_reward.png"))

        fig, ax = plt.subplots()
        ax.stem(ep, [r.reward for r in records], basefmt=" ")
        ax.set_xlabel("episode")
        ax.set_ylabel("reward")
        files.append(_save(fig, out / "bandit_episode_reward.png"))

        freq = arm_frequencies(records)
        best = max(freq, key=freq.get)
        fig, ax = plt.subplots()
        _bars(ax, list(ARMS), [freq[a] for a in ARMS], best)
        ax.set_xlabel("arm")
        ax.set_ylabel("times selected")
        files.append(_save(fig, out / "bandit_arm_frequency.png"))
    return files


def qie_figures(traj, out):
    records = traj.extras["records"]
    files = []
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        ax.plot([r.episode for r in records], [r.reward for r in records], marker="o", ms=3)
        ax.set_ylim(-0.2, 8.2)
        ax.set_xlabel("episode")
        ax.set_ylabel("ciphertext entropy (bits)")
        files.append(_save(fig, out / "qie_entropy.png"))

        freq = action_frequencies(records)
        labels = [a.name for a in EncryptionAction]
        best = max(freq, key=freq.get).name
        fig, ax = plt.subplots()
        _bars(ax, labels, [freq[a] for a in EncryptionAction], best)
        ax.set_xlabel("encryption action")
        ax.set_ylabel("times selected")
        files.append(_save(fig, out / "qie_action_frequency.png"))
    return files


def render(agent, traj, out):
    return {"grover": grover_figures, "bandit": bandit_figures, "qie": qie_figures}[agent](traj, out)
