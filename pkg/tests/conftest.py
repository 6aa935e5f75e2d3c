"""Shared helpers: build floors from ASCII art for hand-computed fixtures."""

from __future__ import annotations

import numpy as np
import pytest

from roguebench.config import GameConfig
from roguebench.dungeon import CellKind, Floor, Room, RoomKind
from roguebench.rng import derive_stream
from roguebench.runtime import Enemy, GameState, visible_from

_CHAR_TO_KIND = {
    " ": CellKind.VOID,
    ".": CellKind.FLOOR,
    "#": CellKind.PASSAGE,
    "-": CellKind.WALL_H,
    "|": CellKind.WALL_V,
    "+": CellKind.DOOR,
    "%": CellKind.STAIRS,
}


def floor_from_text(
    rows: list[str],
    *,
    rooms: list[Room] | None = None,
    gold: dict[tuple[int, int], int] | None = None,
    hidden: set[tuple[int, int]] | None = None,
    spawn: tuple[int, int] | None = None,
    depth: int = 1,
    enemy_spawns: list[tuple[int, int]] | None = None,
) -> Floor:
    """Build a Floor from ASCII art ('@' marks spawn on a floor cell).

    If rooms is omitted, one Normal room covering the whole grid is assumed;
    pass explicit rooms for multi-room or maze fixtures.
    """
    height = len(rows)
    width = len(rows[0])
    assert all(len(r) == width for r in rows), "ragged fixture rows"
    kind = np.zeros((height, width), dtype=np.uint8)
    stairs = None
    for y, row in enumerate(rows):
        for x, ch in enumerate(row):
            if ch == "@":
                assert spawn is None or spawn == (x, y)
                spawn = (x, y)
                ch = "."
            if ch == "*":
                ch = "."
            kind[y, x] = _CHAR_TO_KIND[ch]
            if ch == "%":
                stairs = (x, y)
    assert spawn is not None, "fixture needs a spawn ('@' or spawn=)"
    if stairs is None:
        stairs = spawn

    hidden_mask = np.zeros((height, width), dtype=bool)
    for x, y in hidden or ():
        hidden_mask[y, x] = True
    gold_grid = np.zeros((height, width), dtype=np.int32)
    for (x, y), amount in (gold or {}).items():
        gold_grid[y, x] = amount
        assert kind[y, x] in (CellKind.FLOOR, CellKind.PASSAGE), "gold on bad cell in fixture"

    if rooms is None:
        rooms = [Room(0, 0, width, height, RoomKind.NORMAL)]
    room_index = np.full((height, width), -1, dtype=np.int16)
    for i, room in enumerate(rooms):
        room_index[room.y : room.y + room.h, room.x : room.x + room.w] = i

    plain = np.frombuffer(b" .#-|+%", dtype=np.uint8)[kind]
    disguise = np.where(kind == CellKind.PASSAGE, np.uint8(ord(" ")), plain)
    for y in range(height):
        for x in range(width):
            if kind[y, x] == CellKind.DOOR:
                horizontal_wall = (
                    x + 1 < width and kind[y, x + 1] == CellKind.WALL_H
                ) or (x - 1 >= 0 and kind[y, x - 1] == CellKind.WALL_H)
                disguise[y, x] = ord("-") if horizontal_wall else ord("|")

    return Floor(
        width=width,
        height=height,
        depth=depth,
        kind=kind,
        hidden=hidden_mask,
        gold=gold_grid,
        rooms=rooms,
        spawn=spawn,
        stairs=stairs,
        room_index=room_index,
        plain=plain,
        disguise=disguise,
        enemy_spawns=list(enemy_spawns or ()),
    )


def state_on_floor(floor: Floor, config: GameConfig | None = None, seed: int = 0, **overrides) -> GameState:
    """GameState pinned to a handcrafted floor, bypassing generation.

    The config defaults to the floor's dimensions and may be tweaked via
    keyword overrides (validation is skipped, so tiny fixtures are fine).
    Don't descend from fixture states unless the config can really generate.
    """
    if config is None:
        config = GameConfig(width=floor.width, height=floor.height, **overrides)
    state = object.__new__(GameState)
    state.config = config
    state.root_seed = seed
    state.reset_index = 0
    state.depth = floor.depth
    state.floor = floor
    state.player = floor.spawn
    state.step_count = 0
    state.gold_collected = 0
    state.seen = np.zeros((floor.height, floor.width), dtype=bool)
    state.done = False
    state.rng = derive_stream(seed, "runtime/0")
    state.enemies = [Enemy(x, y, config.enemies.hp) for x, y in floor.enemy_spawns]
    state.hp = config.enemies.player_hp if config.enemies.enabled else None
    visible_from(state)
    return state


@pytest.fixture
def tiny_config():
    """Smallest single-slot arena: fast episodes for runtime tests."""
    from roguebench.config import config_from_dict

    return config_from_dict(
        {
            "width": 8,
            "height": 8,
            "max_steps": 50,
            "dungeon": {"room_num_x": 1, "room_num_y": 1, "gone_room_prob": 0.0},
        }
    )
