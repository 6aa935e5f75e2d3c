"""Replay logs: JSON lines, re-executable, tamper-evident.

Layout:
  line 1:   {"v": 1, "rng": "splitmix64/1", "config": {...}, "seed": S,
             "reset_index": R}
  line 2..: {"t": 0, "action_key": "l", "reward": 0, "done": false}
  last:     {"checksum": "<sha256 hex of every preceding byte>"}

Verification re-executes the actions and compares rewards and done flags
step by step (divergence names the first differing step), then checks the
checksum, so any single-byte edit is caught even when it leaves the reward
stream unchanged.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

from .config import GameConfig, config_from_dict, config_to_dict
from .errors import (
    ConfigError,
    ContractError,
    ReplayDivergence,
    ReplayFormatError,
    ReplayTamperError,
)
from .rng import STREAM_FORMAT
from .runtime import ACTION_KEYS, apply, new_game

REPLAY_VERSION = 1


@dataclass(frozen=True)
class ReplayStep:
    t: int
    action_key: str
    reward: int
    done: bool


@dataclass(frozen=True)
class Trajectory:
    config: GameConfig
    seed: int
    reset_index: int
    steps: tuple[ReplayStep, ...]

    @property
    def total_reward(self) -> int:
        return sum(s.reward for s in self.steps)


class ReplayWriter:
    """Accumulates one episode's log; finish() appends the checksum line."""

    def __init__(self, config: GameConfig, seed: int, reset_index: int = 0):
        header = {
            "v": REPLAY_VERSION,
            "rng": STREAM_FORMAT,
            "config": config_to_dict(config),
            "seed": seed,
            "reset_index": reset_index,
        }
        self._lines = [json.dumps(header, separators=(",", ":"))]
        self._finished = False

    def record(self, t: int, action_key: str, reward: int, done: bool) -> None:
        if self._finished:
            raise ContractError("replay writer already finished")
        step = {"t": t, "action_key": action_key, "reward": reward, "done": done}
        self._lines.append(json.dumps(step, separators=(",", ":")))

    def finish(self) -> str:
        if not self._finished:
            body = "\n".join(self._lines) + "\n"
            digest = hashlib.sha256(body.encode("utf-8")).hexdigest()
            self._lines.append(json.dumps({"checksum": digest}, separators=(",", ":")))
            self._finished = True
        return "\n".join(self._lines) + "\n"

    def write(self, path: str) -> None:
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write(self.finish())


def _parse_json_line(line: str, lineno: int) -> dict:
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as e:
        raise ReplayFormatError(f"line {lineno}: invalid JSON: {e.msg}") from None
    if not isinstance(obj, dict):
        raise ReplayFormatError(f"line {lineno}: expected a JSON object")
    return obj


def _step_field(obj: dict, key: str, types, lineno: int):
    if key not in obj:
        raise ReplayFormatError(f"line {lineno}: step record is missing {key!r}")
    value = obj[key]
    if isinstance(value, bool) and bool not in (types if isinstance(types, tuple) else (types,)):
        raise ReplayFormatError(f"line {lineno}: field {key!r} has the wrong type")
    if not isinstance(value, types):
        raise ReplayFormatError(f"line {lineno}: field {key!r} has the wrong type")
    return value


def replay(text: str) -> Trajectory:
    """Verify a replay log by re-executing it; return the parsed trajectory.

    Raises ReplayFormatError (malformed or truncated log, version mismatch),
    ReplayDivergence (re-execution disagrees), or ReplayTamperError
    (checksum failure).
    """
    if text and not text.endswith("\n"):
        raise ReplayFormatError(
            f"line {text.count(chr(10)) + 1}: log is truncated (no trailing newline)"
        )
    lines = text.splitlines()
    if not lines:
        raise ReplayFormatError("line 1: log is empty")

    header = _parse_json_line(lines[0], 1)
    version = header.get("v")
    if version != REPLAY_VERSION:
        raise ReplayFormatError(
            f"line 1: replay format version {version!r} is not supported (expected {REPLAY_VERSION})"
        )
    rng_tag = header.get("rng")
    if rng_tag != STREAM_FORMAT:
        raise ReplayFormatError(
            f"line 1: log was recorded with RNG {rng_tag!r}; this build replays {STREAM_FORMAT!r}"
        )
    if "config" not in header or "seed" not in header:
        raise ReplayFormatError("line 1: header must carry config and seed")
    try:
        config = config_from_dict(header["config"])
    except ConfigError as e:
        raise ReplayFormatError(f"line 1: bad config in header: {e}") from None
    seed = header["seed"]
    if isinstance(seed, bool) or not isinstance(seed, int):
        raise ReplayFormatError("line 1: seed must be an integer")
    reset_index = header.get("reset_index", 0)
    if isinstance(reset_index, bool) or not isinstance(reset_index, int):
        raise ReplayFormatError("line 1: reset_index must be an integer")

    state = new_game(config, seed, reset_index=reset_index)
    steps: list[ReplayStep] = []
    checksum_seen = False
    for lineno, line in enumerate(lines[1:], start=2):
        obj = _parse_json_line(line, lineno)
        if checksum_seen:
            raise ReplayFormatError(f"line {lineno}: data after the checksum line")
        if "checksum" in obj:
            body = "\n".join(lines[: lineno - 1]) + "\n"
            digest = hashlib.sha256(body.encode("utf-8")).hexdigest()
            if obj["checksum"] != digest:
                raise ReplayTamperError(
                    f"checksum mismatch: log says {obj['checksum']!r}, content hashes to {digest!r}"
                )
            checksum_seen = True
            continue

        t = _step_field(obj, "t", int, lineno)
        key = _step_field(obj, "action_key", str, lineno)
        reward = _step_field(obj, "reward", int, lineno)
        done = _step_field(obj, "done", bool, lineno)
        if t != len(steps):
            raise ReplayFormatError(
                f"line {lineno}: step index {t} out of order (expected {len(steps)})"
            )
        if key not in ACTION_KEYS:
            raise ReplayFormatError(f"line {lineno}: unknown action key {key!r}")
        if state.done:
            raise ReplayDivergence(
                t, f"step {t}: log continues after the episode already ended"
            )
        transition = apply(state, key)
        if transition.reward != reward or transition.done != done:
            raise ReplayDivergence(
                t,
                f"step {t}: log says reward={reward} done={done}, "
                f"re-execution gives reward={transition.reward} done={transition.done}",
            )
        steps.append(ReplayStep(t, key, reward, done))

    if not checksum_seen:
        raise ReplayFormatError(
            f"line {len(lines) + 1}: log is truncated (missing checksum line)"
        )
    return Trajectory(config, seed, reset_index, tuple(steps))


def replay_file(path: str) -> Trajectory:
    with open(path, "r", encoding="utf-8", newline="") as f:
        return replay(f.read())
