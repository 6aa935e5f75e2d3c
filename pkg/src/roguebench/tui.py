"""Interactive terminal play with transcript recording.

Runs raw single-key input on a real terminal; tests inject input_fn and a
write sink instead. Every session produces a replay transcript that the
verifier accepts.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Callable

from .config import GameConfig
from .dungeon import render_map
from .errors import PlayError
from .harness import Env
from .observe import Observation
from .replay import ReplayWriter
from .runtime import ACTION_KEYS, KEY_TO_ACTION

QUIT_KEY = "q"
_HELP = f"keys {ACTION_KEYS} ({QUIT_KEY} quits)"


@dataclass
class Session:
    env: Env
    transcript: str
    display: str


def _read_key_raw() -> str:
    import termios
    import tty

    fd = sys.stdin.fileno()
    saved = termios.tcgetattr(fd)
    try:
        tty.setcbreak(fd)
        return sys.stdin.read(1)
    finally:
        termios.tcsetattr(fd, termios.TCSADRAIN, saved)


def _frame(env: Env, obs: Observation, message: str, reveal: bool) -> str:
    status = obs.status
    parts = [
        f"depth {status['depth']}",
        f"gold {status['gold_collected']}",
        f"step {status['step_count']}/{env.config.max_steps}",
    ]
    if "hp" in status:
        parts.append(f"hp {status['hp']}")
    lines = ["  ".join(parts)]
    lines.extend(obs.chars)
    if reveal:
        assert env.state is not None
        full = [list(row) for row in render_map(env.state.floor, reveal_hidden=True)]
        px, py = env.state.player
        full[py][px] = "@"
        lines.append("reveal:")
        lines.extend("".join(row) for row in full)
    lines.append(message)
    return "\n".join(lines) + "\n"


def play(
    config: GameConfig | None = None,
    seed: int = 0,
    *,
    reveal: bool = False,
    record_path: str | None = None,
    input_fn: Callable[[], str | None] | None = None,
    write: Callable[[str], object] | None = None,
) -> Session:
    """Play one episode; returns the session with its replay transcript."""
    if input_fn is None:
        if not (sys.stdin.isatty() and sys.stdout.isatty()):
            raise PlayError(
                "play needs an interactive terminal; use the gen or eval subcommands "
                "in non-interactive contexts"
            )
        input_fn = _read_key_raw
    if write is None:
        write = sys.stdout.write

    env = Env(config, seed)
    obs = env.reset()
    writer = ReplayWriter(env.config, env.seed, reset_index=0)
    message = _HELP
    t = 0
    frame = _frame(env, obs, message, reveal)
    write(frame)
    while True:
        key = input_fn()
        if key is None or key == "" or key == QUIT_KEY:
            break
        if key not in KEY_TO_ACTION:
            message = f"unknown key {key!r}; {_HELP}"
            frame = _frame(env, obs, message, reveal)
            write(frame)
            continue
        obs, reward, done, _ = env.step(key)
        writer.record(t, key, reward, done)
        t += 1
        message = f"reward {reward}" if reward else _HELP
        if done:
            message = f"episode over: gold {obs.status['gold_collected']}"
        frame = _frame(env, obs, message, reveal)
        write(frame)
        if done:
            break

    transcript = writer.finish()
    if record_path is not None:
        with open(record_path, "w", encoding="utf-8", newline="") as f:
            f.write(transcript)
    return Session(env=env, transcript=transcript, display=frame)
