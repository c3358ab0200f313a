"""``qagentlab`` command line.

Exit codes: 0 success, 1 usage error, 2 I/O or unreadable input file,
3 replay found a diverging trajectory.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from ..bandit import parse_probs
from ..errors import ImageError, LogParseError, QAgentError
from ..imaging import read_pgm, write_pgm
from ..qie import EncryptionAction, decrypt_image, encrypt_image
from ..agent import Stream, stream
from .config import AGENTS, SYNTHETIC_IMAGES, ExperimentConfig, load_config_file
from .replay import replay
from .runner import run_experiment
from .sweep import parse_seeds, run_sweep

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_DIVERGED = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common(p):
    p.add_argument("--seed", type=int, help="master seed (default 0)")
    p.add_argument("--out", help="output directory (default runs/<agent>-seed<seed>)")
    p.add_argument("--config", help="JSON file of settings; flags override it")
    p.add_argument("--no-plots", dest="plots", action="store_false", default=None,
                   help="skip PNG figures")


def _grover_flags(p):
    p.add_argument("--target", help="marked bitstring, one of 00 01 10 11 (default 10)")
    p.add_argument("--shots", type=int, help="measurement shots (default 1024)")


def _bandit_flags(p, episodes_help="episodes (default 100)"):
    p.add_argument("--episodes", type=int, help=episodes_help)
    p.add_argument("--lr", type=float, help="Adam learning rate (default 0.1)")
    p.add_argument("--probs", type=parse_probs, metavar="00=P,01=P,10=P,11=P",
                   help="arm reward probabilities (default 00=0.2,01=0.35,10=0.8,11=0.5)")


def _qie_flags(p):
    p.add_argument("--image", help="input PGM (P2 or P5, maxval <= 255)")
    p.add_argument("--synthetic", choices=SYNTHETIC_IMAGES, help="use a generated test image")
    p.add_argument("--size", type=int, help="synthetic image side in pixels (default 64)")
    p.add_argument("--segment-mode", choices=("image", "segment"),
                   help="one action per image (default) or per 4-bit segment")


def build_parser():
    parser = _Parser(prog="qagentlab", description="Seeded quantum-agent experiments.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("grover", help="Grover action selection")
    _grover_flags(p)
    _common(p)

    p = sub.add_parser("bandit", help="variational-policy multi-armed bandit")
    _bandit_flags(p)
    _common(p)

    p = sub.add_parser("qie", help="adaptive image encryption agent, or one-shot encrypt/decrypt")
    p.add_argument("mode", nargs="?", default="train", choices=("train", "encrypt", "decrypt"))
    _qie_flags(p)
    p.add_argument("--episodes", type=int, help="training episodes (default 30)")
    p.add_argument("--lr", type=float, help="Adam learning rate (default 0.1)")
    p.add_argument("--action", help="encrypt/decrypt: xor, qft, scramble or none")
    p.add_argument("--key", type=int, help="encrypt/decrypt: 4-bit key 0..15 (default 0)")
    _common(p)

    p = sub.add_parser("sweep", help="run one agent over many seeds")
    p.add_argument("--agent", required=True, choices=AGENTS)
    p.add_argument("--seeds", required=True, type=parse_seeds, help="e.g. 0..19 or 1,5,9")
    p.add_argument("--jobs", type=int, default=1, help="parallel worker processes")
    _grover_flags(p)
    _bandit_flags(p, "episodes (agent default)")
    _qie_flags(p)
    p.add_argument("--out", help="sweep directory (default runs/sweep-<agent>)")
    p.add_argument("--config", help="JSON file of settings; flags override it")
    p.add_argument("--plots", action="store_true", default=None, help="render figures per seed")

    p = sub.add_parser("replay", help="re-run a logged experiment and check it bit for bit")
    p.add_argument("log")
    return parser


CONFIG_FLAGS = ("seed", "plots", "target", "shots", "episodes", "lr", "probs",
                "image", "synthetic", "size", "segment_mode")


def make_config(agent, args, default_plots=True) -> ExperimentConfig:
    settings = {}
    if getattr(args, "config", None):
        settings.update(load_config_file(args.config))
    settings.update({k: getattr(args, k) for k in CONFIG_FLAGS
                     if getattr(args, k, None) is not None})
    settings.pop("agent", None)
    settings.setdefault("plots", default_plots)
    seed = settings.setdefault("seed", 0)
    if getattr(args, "out", None):
        settings["output_dir"] = args.out
    else:
        settings.setdefault("output_dir", f"runs/{agent}-seed{seed}")
    try:
        return ExperimentConfig(agent=agent, **settings)
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from None


def _qie_oneshot(args):
    if not args.image:
        raise UsageError(f"qie {args.mode} needs --image")
    if not args.action:
        raise UsageError(f"qie {args.mode} needs --action")
    try:
        action = EncryptionAction.parse(args.action)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    key = 0 if args.key is None else args.key
    if not 0 <= key <= 15:
        raise UsageError(f"--key must be in 0..15, got {key}")
    img = read_pgm(args.image)
    if args.mode == "encrypt":
        rng = stream(args.seed or 0, Stream.ENCRYPTION)
        result = encrypt_image(img, action, key, rng)
    else:
        try:
            result = decrypt_image(img, action, key)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    out = args.out or str(Path(args.image).with_suffix(f".{args.mode}-{action.name.lower()}.pgm"))
    write_pgm(result, out)
    print(out)
    return EXIT_OK


def _print_summary(summary):
    print(json.dumps(summary, sort_keys=True))


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "replay":
            res = replay(args.log)
            print(res.message)
            return EXIT_OK if res.identical else EXIT_DIVERGED
        if args.command == "sweep":
            base = make_config(args.agent, args, default_plots=False)
            base.output_dir = Path(args.out or f"runs/sweep-{args.agent}")
            summaries, path = run_sweep(base, args.seeds, args.jobs)
            print(path)
            return EXIT_OK
        if args.command == "qie" and args.mode != "train":
            return _qie_oneshot(args)
        result = run_experiment(make_config(args.command, args))
        _print_summary(result.summary)
        return EXIT_OK
    except UsageError as exc:
        print(f"qagentlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (LogParseError, ImageError) as exc:
        print(f"qagentlab: error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        where = exc.filename if exc.filename else ""
        print(f"qagentlab: I/O error: {where}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_IO
    except (QAgentError, ValueError) as exc:
        print(f"qagentlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
