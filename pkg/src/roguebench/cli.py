"""Command-line interface: gen, eval, replay, play, serve.

Exit codes: 0 success, 1 usage error, 2 validation or divergence failure,
3 I/O error. Seed ranges are half-open, written A..B with A < B.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .agents import GreedyDescendAgent, RandomAgent, SubprocessAgent
from .config import GameConfig, default_config, load_config, parse_config
from .dungeon import generate_floor, render_map_text, validate_floor
from .errors import (
    AgentProtocolError,
    ConfigError,
    ContractError,
    GenerationError,
    PlayError,
    ReplayDivergence,
    ReplayFormatError,
    ReplayTamperError,
    RogueBenchError,
)
from .harness import evaluate
from .replay import replay_file

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVALID = 2
EXIT_IO = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse that raises instead of exiting, so main controls exit codes."""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise _UsageError(f"{self.prog}: {message}")


def parse_seed_spec(spec: str) -> list[int]:
    """Either one seed 'N' or a half-open range 'A..B' with A < B."""
    if ".." in spec:
        left, _, right = spec.partition("..")
        try:
            a, b = int(left), int(right)
        except ValueError:
            raise _UsageError(f"bad seed range {spec!r}: expected integers around '..'") from None
        if a >= b:
            raise _UsageError(f"bad seed range {spec!r}: ranges are half-open A..B with A < B")
        return list(range(a, b))
    try:
        return [int(spec)]
    except ValueError:
        raise _UsageError(f"bad seed {spec!r}: expected an integer or a range A..B") from None


def _load_cli_config(args: argparse.Namespace) -> GameConfig:
    if getattr(args, "config_json", None):
        return parse_config(args.config_json)
    if getattr(args, "config", None):
        return load_config(args.config)
    return default_config()


def _add_config_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", metavar="PATH", help="JSON config file")
    parser.add_argument(
        "--config-json", metavar="JSON", help="inline JSON config (overrides --config)"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="roguebench", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate floors and print or validate them")
    _add_config_args(p_gen)
    p_gen.add_argument("--seed", default="0", help="seed N or half-open range A..B")
    p_gen.add_argument("--depth", type=int, default=1, help="floor depth (default 1)")
    p_gen.add_argument("--reveal-hidden", action="store_true", help="show hidden doors/passages")
    p_gen.add_argument("--validate", action="store_true", help="run checks instead of printing maps")
    p_gen.add_argument("--out", metavar="PATH", help="write output to a file instead of stdout")

    p_eval = sub.add_parser("eval", help="run the evaluation protocol over a seed set")
    _add_config_args(p_eval)
    p_eval.add_argument(
        "--agent",
        default="random",
        help="random, greedy, or cmd:<program ...> for an external agent",
    )
    p_eval.add_argument("--seeds", default="0..10", help="seed N or half-open range A..B")
    p_eval.add_argument("--episodes", type=int, default=10, help="episodes per seed")
    p_eval.add_argument("--eval-seed", type=int, default=0, help="root seed for policy streams")
    p_eval.add_argument("--workers", type=int, default=1, help="parallel seed shards")
    p_eval.add_argument(
        "--obs-format",
        choices=("chars", "channels"),
        default="chars",
        help="observation payload for cmd: agents",
    )
    p_eval.add_argument("--out", metavar="PREFIX", help="write PREFIX.csv and PREFIX.json")

    p_replay = sub.add_parser("replay", help="verify a replay log by re-executing it")
    p_replay.add_argument("log", help="replay log path")

    p_play = sub.add_parser("play", help="play interactively in the terminal")
    _add_config_args(p_play)
    p_play.add_argument("--seed", type=int, default=0)
    p_play.add_argument("--reveal", action="store_true", help="debug view of the whole floor")
    p_play.add_argument("--record", metavar="PATH", help="write the session transcript here")

    p_serve = sub.add_parser("serve", help="JSON-lines environment server on stdin/stdout")
    _add_config_args(p_serve)

    return parser


def _cmd_gen(args: argparse.Namespace) -> int:
    config = _load_cli_config(args)
    seeds = parse_seed_spec(args.seed)
    if args.depth < 1:
        raise _UsageError(f"--depth must be at least 1, got {args.depth}")
    chunks: list[str] = []
    failures = 0
    for seed in seeds:
        floor = generate_floor(config, seed, args.depth)
        if args.validate:
            report = validate_floor(floor)
            if report.ok:
                chunks.append(f"seed {seed}: PASS\n")
            else:
                failures += 1
                first = report.failures()[0]
                chunks.append(f"seed {seed}: FAIL {first.name}: {first.detail}\n")
        else:
            if len(seeds) > 1:
                chunks.append(f"# seed {seed}\n")
            chunks.append(render_map_text(floor, reveal_hidden=args.reveal_hidden))
    text = "".join(chunks)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_INVALID if failures else EXIT_OK


def _make_agent(spec: str, obs_format: str):
    if spec == "random":
        return RandomAgent()
    if spec == "greedy":
        return GreedyDescendAgent()
    if spec.startswith("cmd:"):
        command = spec[len("cmd:") :].split()
        if not command:
            raise _UsageError("cmd: agent needs a program, e.g. cmd:python agent.py")
        return SubprocessAgent(command, obs_format=obs_format)
    raise _UsageError(f"unknown agent {spec!r}: use random, greedy, or cmd:<program>")


def _cmd_eval(args: argparse.Namespace) -> int:
    config = _load_cli_config(args)
    agent = _make_agent(args.agent, args.obs_format)
    seeds = parse_seed_spec(args.seeds)
    if args.episodes < 1:
        raise _UsageError(f"--episodes must be at least 1, got {args.episodes}")
    if args.workers < 1:
        raise _UsageError(f"--workers must be at least 1, got {args.workers}")
    report = evaluate(
        agent,
        seeds,
        args.episodes,
        config=config,
        eval_seed=args.eval_seed,
        workers=args.workers,
    )
    if args.out:
        report.write_csv(args.out + ".csv")
        report.write_summary(args.out + ".json")
    else:
        sys.stdout.write(report.to_csv())
    entropy = report.mean_policy_entropy
    sys.stdout.write(
        f"aggregate_mean {report.aggregate_mean:.6f} over {len(report.per_seed)} seeds x "
        f"{report.episodes_per_seed} episodes"
        + (f", mean_policy_entropy {entropy:.6f}" if entropy is not None else "")
        + "\n"
    )
    return EXIT_OK


def _cmd_replay(args: argparse.Namespace) -> int:
    trajectory = replay_file(args.log)
    sys.stdout.write(
        f"OK: {len(trajectory.steps)} steps, seed {trajectory.seed}, "
        f"total reward {trajectory.total_reward}\n"
    )
    return EXIT_OK


def _cmd_play(args: argparse.Namespace) -> int:
    from .tui import play

    config = _load_cli_config(args)
    play(config, args.seed, reveal=args.reveal, record_path=args.record)
    return EXIT_OK


def _cmd_serve(args: argparse.Namespace) -> int:
    from .serve import serve

    config = _load_cli_config(args)
    return serve(config, sys.stdin, sys.stdout)


def _silence_stdout() -> None:
    """Point the stdout fd at devnull so the interpreter's exit-time flush
    cannot raise into a pipe the reader already closed."""
    try:
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
    except OSError:
        pass


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "gen":
            return _cmd_gen(args)
        if args.command == "eval":
            return _cmd_eval(args)
        if args.command == "replay":
            return _cmd_replay(args)
        if args.command == "play":
            return _cmd_play(args)
        if args.command == "serve":
            return _cmd_serve(args)
        raise _UsageError(f"unknown command {args.command!r}")
    except _UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except PlayError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ConfigError, GenerationError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except (ReplayFormatError, ReplayDivergence, ReplayTamperError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except (ContractError, AgentProtocolError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except BrokenPipeError:
        _silence_stdout()  # reader hung up (e.g. piped into head); not an error
        return EXIT_OK
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO
    except RogueBenchError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except KeyboardInterrupt:
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
