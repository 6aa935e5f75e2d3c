"""JSON-lines environment server on stdin/stdout.

One request object per line, one response per line. On startup the server
prints a hello banner describing the environment so clients can check
shapes and versions before playing:

  {"ok": true, "protocol": 1, "version": ..., "rng": ..., "width": ...,
   "height": ..., "max_steps": ..., "action_keys": ..., "symbols": [...]}

Commands:
  {"cmd": "reset", "seed": 3, "want": ["chars"]}
  {"cmd": "step", "action": "l", "want": ["chars", "channels"]}
  {"cmd": "render", "want": ["channels"]}
  {"cmd": "close"}

Errors come back as {"ok": false, "kind": ..., "error": ...} and leave the
session alive; only close (or EOF) ends it.
"""

from __future__ import annotations

import io
import json
import os
from typing import IO

from .config import GameConfig
from .errors import ContractError, RogueBenchError
from .harness import Env
from .observe import Observation, make_observation
from .rng import STREAM_FORMAT
from .runtime import ACTION_KEYS

PROTOCOL_VERSION = 1

_WANT_DEFAULT = ("chars", "status")
_WANT_ALLOWED = frozenset(("chars", "status", "channels"))


def _obs_payload(obs: Observation, want) -> dict:
    payload: dict = {}
    if "chars" in want:
        payload["chars"] = list(obs.chars)
    if "status" in want:
        payload["status"] = obs.status
    if "channels" in want:
        payload["channels"] = obs.channels.tolist()
    return payload


def _parse_want(request: dict):
    want = request.get("want", list(_WANT_DEFAULT))
    if not isinstance(want, list) or not set(want) <= _WANT_ALLOWED:
        raise ContractError(f"want must be a subset of {sorted(_WANT_ALLOWED)}")
    return want


def serve(config: GameConfig, stdin: IO[str], stdout: IO[str]) -> int:
    """Run the request loop until close or EOF; returns an exit code."""
    env = Env(config)

    class _ClientGone(Exception):
        pass

    def send(obj: dict) -> None:
        try:
            stdout.write(json.dumps(obj, separators=(",", ":")) + "\n")
            stdout.flush()
        except BrokenPipeError as e:
            # The client hung up; that ends the session, not an error.
            raise _ClientGone from e

    try:
        _loop(env, config, stdin, send)
    except _ClientGone:
        # Detach the broken pipe so the interpreter's exit-time flush of any
        # buffered output cannot raise again.
        try:
            os.dup2(os.open(os.devnull, os.O_WRONLY), stdout.fileno())
        except (OSError, AttributeError, io.UnsupportedOperation):
            pass
    return 0


def _loop(env: Env, config: GameConfig, stdin: IO[str], send) -> None:
    from . import __version__

    send(
        {
            "ok": True,
            "protocol": PROTOCOL_VERSION,
            "version": __version__,
            "rng": STREAM_FORMAT,
            "width": config.width,
            "height": config.height,
            "max_steps": config.max_steps,
            "action_keys": ACTION_KEYS,
            "symbols": list(config.symbol_table),
        }
    )

    for line in stdin:
        line = line.strip()
        if not line:
            continue
        try:
            try:
                request = json.loads(line)
            except json.JSONDecodeError as e:
                raise ContractError(f"request is not valid JSON: {e}") from e
            if not isinstance(request, dict):
                raise ContractError("request must be a JSON object")
            cmd = request.get("cmd")
            if cmd == "close":
                send({"ok": True, "bye": True})
                return
            elif cmd == "reset":
                seed = request.get("seed")
                if seed is not None and (isinstance(seed, bool) or not isinstance(seed, int)):
                    raise ContractError("seed must be an integer")
                obs = env.reset(seed)
                send(
                    {
                        "ok": True,
                        "seed": env.seed,
                        "reset_index": env.reset_count - 1,
                        "obs": _obs_payload(obs, _parse_want(request)),
                    }
                )
            elif cmd == "step":
                if "action" not in request:
                    raise ContractError("step request needs an action")
                tick = env.state.step_count if env.state is not None else 0
                obs, reward, done, info = env.step(request["action"])
                send(
                    {
                        "ok": True,
                        "t": tick,
                        "reward": reward,
                        "done": done,
                        "info": info,
                        "obs": _obs_payload(obs, _parse_want(request)),
                    }
                )
            elif cmd == "render":
                if env.state is None:
                    raise ContractError("render before reset: call reset first")
                obs = make_observation(env.state)
                send({"ok": True, "obs": _obs_payload(obs, _parse_want(request))})
            else:
                raise ContractError(f"unknown command {cmd!r}")
        except RogueBenchError as e:
            kind = "contract" if isinstance(e, ContractError) else "error"
            send({"ok": False, "kind": kind, "error": str(e)})
