"""Turn runtime: actions, movement, search, descending, visibility.

Coordinates are screen-style: x grows right, y grows down. The vi movement
keys follow the classic layout (h left, j down, k up, l right; y/u/b/n the
diagonals). Every action costs exactly one step, including blocked moves
and no-ops.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from .config import GameConfig
from .dungeon import CellKind, Floor, RoomKind, WALKABLE, generate_floor
from .errors import ContractError
from .rng import RngStream, derive_stream


class Action(IntEnum):
    NOOP = 0
    LEFT = 1
    UP = 2
    DOWN = 3
    RIGHT = 4
    DOWN_RIGHT = 5
    DOWN_LEFT = 6
    UP_RIGHT = 7
    UP_LEFT = 8
    DESCEND = 9
    SEARCH = 10


# Key for each action, indexed by action value.
ACTION_KEYS = ".hkjlnbuy>s"
KEY_TO_ACTION = {key: Action(i) for i, key in enumerate(ACTION_KEYS)}
NUM_ACTIONS = len(ACTION_KEYS)

MOVE_DELTAS: dict[Action, tuple[int, int]] = {
    Action.LEFT: (-1, 0),
    Action.UP: (0, -1),
    Action.DOWN: (0, 1),
    Action.RIGHT: (1, 0),
    Action.DOWN_RIGHT: (1, 1),
    Action.DOWN_LEFT: (-1, 1),
    Action.UP_RIGHT: (1, -1),
    Action.UP_LEFT: (-1, -1),
}

# Search scans the 8-neighbourhood in this fixed row-major order.
_SEARCH_OFFSETS = tuple(
    (dx, dy) for dy in (-1, 0, 1) for dx in (-1, 0, 1) if (dx, dy) != (0, 0)
)


def action_from(value: int | str | Action) -> Action:
    """Accept an Action, its index, or its key character."""
    if isinstance(value, Action):
        return value
    if isinstance(value, str):
        try:
            return KEY_TO_ACTION[value]
        except KeyError:
            raise ContractError(f"unknown action key {value!r}; keys are {ACTION_KEYS!r}") from None
    if isinstance(value, (int, np.integer)):
        if 0 <= value < NUM_ACTIONS:
            return Action(int(value))
        raise ContractError(f"action index {value} out of range [0, {NUM_ACTIONS})")
    raise ContractError(f"cannot interpret {value!r} as an action")


@dataclass
class Enemy:
    x: int
    y: int
    hp: int


@dataclass(frozen=True)
class Transition:
    reward: int
    done: bool
    info: dict


class GameState:
    """Mutable per-episode state; build with new_game, advance with apply."""

    __slots__ = (
        "config",
        "root_seed",
        "reset_index",
        "depth",
        "floor",
        "player",
        "step_count",
        "gold_collected",
        "seen",
        "done",
        "rng",
        "enemies",
        "hp",
    )

    def __init__(self, config: GameConfig, root_seed: int, reset_index: int):
        self.config = config
        self.root_seed = root_seed
        self.reset_index = reset_index
        self.depth = 1
        self.floor: Floor = generate_floor(config, root_seed, 1)
        self.player: tuple[int, int] = self.floor.spawn
        self.step_count = 0
        self.gold_collected = 0
        self.seen = np.zeros((config.height, config.width), dtype=bool)
        self.done = False
        self.rng: RngStream = derive_stream(root_seed, f"runtime/{reset_index}")
        self.enemies: list[Enemy] = [
            Enemy(x, y, config.enemies.hp) for x, y in self.floor.enemy_spawns
        ]
        self.hp: int | None = config.enemies.player_hp if config.enemies.enabled else None
        visible_from(self)


def new_game(config: GameConfig, seed: int, reset_index: int = 0) -> GameState:
    """Fresh episode at depth 1. reset_index selects the runtime stream."""
    return GameState(config, seed, reset_index)


def visible_from(state: GameState) -> np.ndarray:
    """Merge the player's current sight into seen; return the newly seen mask.

    In a normal (lit) room the whole footprint is visible. Everywhere else,
    dark rooms and passages included, sight is the 3x3 block around the
    player.
    """
    floor = state.floor
    px, py = state.player
    vis = np.zeros_like(state.seen)
    ridx = int(floor.room_index[py, px])
    if ridx >= 0 and floor.rooms[ridx].kind == RoomKind.NORMAL:
        room = floor.rooms[ridx]
        vis[room.y : room.y + room.h, room.x : room.x + room.w] = True
    vis[max(0, py - 1) : py + 2, max(0, px - 1) : px + 2] = True
    newly = vis & ~state.seen
    state.seen |= vis
    return newly


def _can_enter(floor: Floor, px: int, py: int, nx: int, ny: int) -> bool:
    """Open walkable target; diagonals need both orthogonal cells open too."""
    if not floor.in_bounds(nx, ny):
        return False
    if not WALKABLE[floor.kind[ny, nx]] or floor.hidden[ny, nx]:
        return False
    if nx != px and ny != py:
        for cx, cy in ((nx, py), (px, ny)):
            if not WALKABLE[floor.kind[cy, cx]] or floor.hidden[cy, cx]:
                return False
    return True


def apply(state: GameState, action: int | str | Action) -> Transition:
    """Advance one turn. Raises ContractError if the episode is done."""
    if state.done:
        raise ContractError("episode is done; start a new game or reset")
    act = action_from(action)
    config = state.config
    reward = 0
    moved = False

    if act in MOVE_DELTAS:
        dx, dy = MOVE_DELTAS[act]
        px, py = state.player
        nx, ny = px + dx, py + dy
        if _can_enter(state.floor, px, py, nx, ny) and not _enemy_at(state, nx, ny):
            state.player = (nx, ny)
            moved = True
            pile = int(state.floor.gold[ny, nx])
            if pile > 0:
                reward += pile
                state.floor.gold[ny, nx] = 0
    elif act is Action.DESCEND:
        if state.player == state.floor.stairs:
            reward += config.pseudo_reward_descend
            state.depth += 1
            if config.amulet_depth is not None and state.depth >= config.amulet_depth:
                reward += config.amulet_bonus
                state.done = True
            state.floor = generate_floor(config, state.root_seed, state.depth)
            state.player = state.floor.spawn
            state.seen = np.zeros_like(state.seen)
            state.enemies = [
                Enemy(x, y, config.enemies.hp) for x, y in state.floor.enemy_spawns
            ]
            moved = True
    elif act is Action.SEARCH:
        px, py = state.player
        for dx, dy in _SEARCH_OFFSETS:
            sx, sy = px + dx, py + dy
            if state.floor.in_bounds(sx, sy) and state.floor.hidden[sy, sx]:
                if state.rng.chance(config.search_success_prob):
                    state.floor.hidden[sy, sx] = False
    # NOOP: nothing happens, the step still counts.

    if config.enemies.enabled and not state.done:
        enemy_turn(state)

    state.step_count += 1
    if state.step_count >= config.max_steps:
        state.done = True
    if moved:
        visible_from(state)
    state.gold_collected += reward

    info = {
        "depth": state.depth,
        "step_count": state.step_count,
        "gold_collected": state.gold_collected,
        "action_taken": ACTION_KEYS[act],
    }
    if state.hp is not None:
        info["hp"] = state.hp
    return Transition(reward=reward, done=state.done, info=info)


def _enemy_at(state: GameState, x: int, y: int) -> bool:
    return any(e.hp > 0 and e.x == x and e.y == y for e in state.enemies)


def _line_of_sight(floor: Floor, ax: int, ay: int, bx: int, by: int) -> bool:
    """Integer line walk; every intermediate cell must be open and walkable."""
    steps = max(abs(bx - ax), abs(by - ay))
    if steps <= 1:
        return True
    for i in range(1, steps):
        x = ax + round((bx - ax) * i / steps)
        y = ay + round((by - ay) * i / steps)
        if not WALKABLE[floor.kind[y, x]] or floor.hidden[y, x]:
            return False
    return True


def enemy_turn(state: GameState) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """Move every living enemy once; adjacent enemies bite instead of moving.

    Enemies with line of sight step toward the player, others wander. Returns
    (from, to) per enemy for display and tests.
    """
    moves: list[tuple[tuple[int, int], tuple[int, int]]] = []
    px, py = state.player
    for enemy in state.enemies:
        if enemy.hp <= 0:
            continue
        old = (enemy.x, enemy.y)
        if max(abs(enemy.x - px), abs(enemy.y - py)) == 1:
            if state.hp is not None:
                state.hp -= state.config.enemies.damage
                if state.hp <= 0:
                    state.done = True
            moves.append((old, old))
            continue
        if _line_of_sight(state.floor, enemy.x, enemy.y, px, py):
            sx = (px > enemy.x) - (px < enemy.x)
            sy = (py > enemy.y) - (py < enemy.y)
            candidates = [(sx, sy), (sx, 0), (0, sy)]
        else:
            candidates = [list(MOVE_DELTAS.values())[state.rng.randrange(8)]]
        for dx, dy in candidates:
            nx, ny = enemy.x + dx, enemy.y + dy
            if (dx, dy) == (0, 0) or (nx, ny) == (px, py):
                continue
            if _can_enter(state.floor, enemy.x, enemy.y, nx, ny) and not _enemy_at(state, nx, ny):
                enemy.x, enemy.y = nx, ny
                break
        moves.append((old, (enemy.x, enemy.y)))
    return moves
