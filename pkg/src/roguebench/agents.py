"""Baseline policies and the external child-process agent.

A policy gets a fresh stream at the start of every (seed, episode) pair and
returns an action index per step, optionally with its probability vector so
the harness can track policy entropy.
"""

from __future__ import annotations

import json
import subprocess
from typing import Protocol, Sequence, runtime_checkable

from .errors import AgentProtocolError
from .observe import Observation
from .rng import RngStream
from .runtime import NUM_ACTIONS, Action


@runtime_checkable
class AgentPolicy(Protocol):
    def begin_episode(self, rng: RngStream, seed: int, episode: int) -> None: ...

    def act(self, obs: Observation) -> int | tuple[int, Sequence[float]]: ...


_UNIFORM = tuple(1.0 / NUM_ACTIONS for _ in range(NUM_ACTIONS))


class RandomAgent:
    """Uniform over all actions; reports the uniform probability vector."""

    def __init__(self) -> None:
        self._rng: RngStream | None = None

    def begin_episode(self, rng: RngStream, seed: int, episode: int) -> None:
        self._rng = rng

    def act(self, obs: Observation) -> tuple[int, Sequence[float]]:
        if self._rng is None:
            raise AgentProtocolError("act called before begin_episode")
        return self._rng.randrange(NUM_ACTIONS), _UNIFORM


# Probe order for path steps; matches the BFS neighbour order below.
_STEP_ACTIONS = (
    ((0, -1), Action.UP),
    ((0, 1), Action.DOWN),
    ((-1, 0), Action.LEFT),
    ((1, 0), Action.RIGHT),
)

_PASSABLE = frozenset(".#+%*")


class GreedyDescendAgent:
    """Walk to the nearest seen stairs, else toward unexplored ground.

    Plans over the observed character grid only (cardinal moves). Blank
    cells can be either unseen ground or plain void, so the agent remembers
    where it has already stood: those cells have had their whole
    neighbourhood revealed and cannot be productive frontiers. With no
    stairs and no frontier left it alternates searching (for hidden doors)
    with random steps.
    """

    def __init__(self) -> None:
        self._rng: RngStream | None = None
        self._stood: set[tuple[int, int]] = set()
        self._restless = False

    def begin_episode(self, rng: RngStream, seed: int, episode: int) -> None:
        self._rng = rng
        self._stood = set()
        self._restless = False

    def act(self, obs: Observation) -> tuple[int, Sequence[float]]:
        action = self._plan(obs)
        probs = [0.0] * NUM_ACTIONS
        probs[action] = 1.0
        return int(action), probs

    def _plan(self, obs: Observation) -> Action:
        if obs.status["player_cell"] == "%":
            return Action.DESCEND
        grid = obs.chars
        height, width = len(grid), len(grid[0])
        start = None
        for y, row in enumerate(grid):
            x = row.find("@")
            if x >= 0:
                start = (x, y)
                break
        if start is None:
            return Action.SEARCH
        self._stood.add(start)

        # BFS over seen passable cells; remember the first move of each path.
        first_move: dict[tuple[int, int], Action] = {start: Action.NOOP}
        queue = [start]
        head = 0
        frontier_move: Action | None = None
        while head < len(queue):
            x, y = queue[head]
            head += 1
            if grid[y][x] == "%":
                return first_move[(x, y)]
            if frontier_move is None and (x, y) not in self._stood:
                for (dx, dy), _ in _STEP_ACTIONS:
                    ex, ey = x + dx, y + dy
                    if 0 <= ex < width and 0 <= ey < height and grid[ey][ex] == " ":
                        frontier_move = first_move[(x, y)]
                        break
            for (dx, dy), action in _STEP_ACTIONS:
                nx, ny = x + dx, y + dy
                if not (0 <= nx < width and 0 <= ny < height):
                    continue
                if (nx, ny) in first_move or grid[ny][nx] not in _PASSABLE:
                    continue
                first_move[(nx, ny)] = action if (x, y) == start else first_move[(x, y)]
                queue.append((nx, ny))
        if frontier_move is not None:
            return frontier_move
        # Nothing left to walk to: hunt for hidden doors.
        self._restless = not self._restless
        if self._restless or self._rng is None:
            return Action.SEARCH
        return Action(1 + self._rng.randrange(8))


class SubprocessAgent:
    """Line-delimited JSON bridge to an external agent process.

    Sends {"seed", "t", "chars"} (or "channels") per step and expects
    {"action": <index>} back, optionally with "probs".
    """

    def __init__(self, command: Sequence[str], obs_format: str = "chars"):
        if obs_format not in ("chars", "channels"):
            raise ValueError(f"obs_format must be 'chars' or 'channels', got {obs_format!r}")
        self.command = list(command)
        self.obs_format = obs_format
        self._proc: subprocess.Popen | None = None
        self._seed = 0

    def begin_episode(self, rng: RngStream, seed: int, episode: int) -> None:
        self._seed = seed

    def _ensure_proc(self) -> subprocess.Popen:
        if self._proc is None or self._proc.poll() is not None:
            self._proc = subprocess.Popen(
                self.command,
                stdin=subprocess.PIPE,
                stdout=subprocess.PIPE,
                text=True,
                bufsize=1,
            )
        return self._proc

    def act(self, obs: Observation) -> int | tuple[int, Sequence[float]]:
        proc = self._ensure_proc()
        request: dict = {"seed": self._seed, "t": obs.status["step_count"]}
        if self.obs_format == "chars":
            request["chars"] = list(obs.chars)
        else:
            request["channels"] = obs.channels.tolist()
        assert proc.stdin is not None and proc.stdout is not None
        proc.stdin.write(json.dumps(request, separators=(",", ":")) + "\n")
        proc.stdin.flush()
        line = proc.stdout.readline()
        if not line:
            raise AgentProtocolError(f"agent process {self.command[0]!r} closed its stdout")
        try:
            response = json.loads(line)
        except json.JSONDecodeError as e:
            raise AgentProtocolError(f"agent sent invalid JSON: {e.msg}") from None
        if not isinstance(response, dict) or "action" not in response:
            raise AgentProtocolError("agent response must be an object with an 'action' field")
        action = response["action"]
        if "probs" in response:
            return action, response["probs"]
        return action

    def close(self) -> None:
        if self._proc is not None:
            if self._proc.stdin is not None:
                self._proc.stdin.close()
            self._proc.terminate()
            self._proc.wait(timeout=5)
            self._proc = None

    def __getstate__(self) -> dict:
        return {"command": self.command, "obs_format": self.obs_format}

    def __setstate__(self, state: dict) -> None:
        self.command = state["command"]
        self.obs_format = state["obs_format"]
        self._proc = None
        self._seed = 0
