"""Game configuration: defaults, strict JSON parsing, validation.

Unknown keys are rejected; every validation message names the offending
field by its dotted path so CLI users can fix config files without reading
source.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Mapping

from .errors import ConfigError

# Canonical symbol order; channel index in encoded observations follows it.
BASE_SYMBOLS: tuple[str, ...] = (" ", "@", ".", "#", "|", "-", "%", "+", "*")
ENEMY_SYMBOL = "A"

# Characters the renderer can emit regardless of config.
_ALWAYS_REQUIRED = (" ", "@", ".", "#", "|", "-", "%", "+")

# Room slots must fit a 3x3 interior: walls (2) + interior (3) + margin (2).
_MIN_SLOT_SPAN = 7


@dataclass(frozen=True)
class DungeonConfig:
    style: str = "rogue"
    room_num_x: int = 2
    room_num_y: int = 2
    # None means depth-scaled: min(0.12 * depth, 0.5).
    dark_room_prob: float | None = None
    maze_room_prob: float = 0.05
    hidden_door_prob: float = 0.15
    gone_room_prob: float = 0.2


@dataclass(frozen=True)
class GoldConfig:
    enabled: bool = True
    per_room_prob: float = 0.5


@dataclass(frozen=True)
class EnemyConfig:
    enabled: bool = False
    count: int = 3
    hp: int = 8
    damage: int = 3
    player_hp: int = 10


@dataclass(frozen=True)
class GameConfig:
    width: int = 32
    height: int = 16
    max_steps: int = 500
    dungeon: DungeonConfig = field(default_factory=DungeonConfig)
    search_success_prob: float = 0.2
    gold: GoldConfig = field(default_factory=GoldConfig)
    pseudo_reward_descend: int = 50
    enemies: EnemyConfig = field(default_factory=EnemyConfig)
    amulet_depth: int | None = None
    amulet_bonus: int = 0
    symbol_table: tuple[str, ...] = BASE_SYMBOLS


def default_config() -> GameConfig:
    return GameConfig()


def dark_room_prob_at(config: GameConfig, depth: int) -> float:
    """Dark-room probability for a given depth; None means depth-scaled."""
    p = config.dungeon.dark_room_prob
    if p is None:
        return min(0.12 * depth, 0.5)
    return p


class _Section:
    """Strict view over one JSON object: typed getters, leftover detection."""

    def __init__(self, path: str, data: Mapping[str, Any]):
        if not isinstance(data, Mapping):
            raise ConfigError(f"{path or 'config'} must be an object, got {type(data).__name__}")
        self.path = path
        self.data = dict(data)

    def _name(self, key: str) -> str:
        return f"{self.path}.{key}" if self.path else key

    def _take(self, key: str, default: Any) -> Any:
        return self.data.pop(key, default)

    def get_int(self, key: str, default: int) -> int:
        v = self._take(key, default)
        if isinstance(v, bool) or not isinstance(v, int):
            raise ConfigError(f"{self._name(key)} must be an integer, got {v!r}")
        return v

    def get_opt_int(self, key: str, default: int | None) -> int | None:
        v = self._take(key, default)
        if v is None:
            return None
        if isinstance(v, bool) or not isinstance(v, int):
            raise ConfigError(f"{self._name(key)} must be an integer or null, got {v!r}")
        return v

    def get_float(self, key: str, default: float) -> float:
        v = self._take(key, default)
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ConfigError(f"{self._name(key)} must be a number, got {v!r}")
        return float(v)

    def get_opt_float(self, key: str, default: float | None) -> float | None:
        v = self._take(key, default)
        if v is None:
            return None
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ConfigError(f"{self._name(key)} must be a number or null, got {v!r}")
        return float(v)

    def get_bool(self, key: str, default: bool) -> bool:
        v = self._take(key, default)
        if not isinstance(v, bool):
            raise ConfigError(f"{self._name(key)} must be true or false, got {v!r}")
        return v

    def get_str(self, key: str, default: str) -> str:
        v = self._take(key, default)
        if not isinstance(v, str):
            raise ConfigError(f"{self._name(key)} must be a string, got {v!r}")
        return v

    def get_section(self, key: str) -> "_Section":
        v = self._take(key, {})
        return _Section(self._name(key), v if v is not None else {})

    def get_char_list(self, key: str, default: tuple[str, ...] | None) -> tuple[str, ...] | None:
        v = self._take(key, None)
        if v is None:
            return default
        if not isinstance(v, list) or not all(isinstance(c, str) for c in v):
            raise ConfigError(f"{self._name(key)} must be a list of characters")
        return tuple(v)

    def finish(self) -> None:
        if self.data:
            key = sorted(self.data)[0]
            raise ConfigError(f"unknown key {self._name(key)!r}")


def config_from_dict(data: Mapping[str, Any]) -> GameConfig:
    """Build a validated GameConfig from a plain dict; rejects unknown keys."""
    top = _Section("", data)
    dungeon_sec = top.get_section("dungeon")
    dungeon = DungeonConfig(
        style=dungeon_sec.get_str("style", "rogue"),
        room_num_x=dungeon_sec.get_int("room_num_x", 2),
        room_num_y=dungeon_sec.get_int("room_num_y", 2),
        dark_room_prob=dungeon_sec.get_opt_float("dark_room_prob", None),
        maze_room_prob=dungeon_sec.get_float("maze_room_prob", 0.05),
        hidden_door_prob=dungeon_sec.get_float("hidden_door_prob", 0.15),
        gone_room_prob=dungeon_sec.get_float("gone_room_prob", 0.2),
    )
    dungeon_sec.finish()

    gold_sec = top.get_section("gold")
    gold = GoldConfig(
        enabled=gold_sec.get_bool("enabled", True),
        per_room_prob=gold_sec.get_float("per_room_prob", 0.5),
    )
    gold_sec.finish()

    enemy_sec = top.get_section("enemies")
    enemies = EnemyConfig(
        enabled=enemy_sec.get_bool("enabled", False),
        count=enemy_sec.get_int("count", 3),
        hp=enemy_sec.get_int("hp", 8),
        damage=enemy_sec.get_int("damage", 3),
        player_hp=enemy_sec.get_int("player_hp", 10),
    )
    enemy_sec.finish()

    symbols = top.get_char_list("symbol_table", None)
    if symbols is None:
        symbols = BASE_SYMBOLS + ((ENEMY_SYMBOL,) if enemies.enabled else ())

    config = GameConfig(
        width=top.get_int("width", 32),
        height=top.get_int("height", 16),
        max_steps=top.get_int("max_steps", 500),
        dungeon=dungeon,
        search_success_prob=top.get_float("search_success_prob", 0.2),
        gold=gold,
        pseudo_reward_descend=top.get_int("pseudo_reward_descend", 50),
        enemies=enemies,
        amulet_depth=top.get_opt_int("amulet_depth", None),
        amulet_bonus=top.get_int("amulet_bonus", 0),
        symbol_table=symbols,
    )
    top.finish()
    validate_config(config)
    return config


def validate_config(config: GameConfig) -> None:
    """Raise ConfigError naming the field for any out-of-range value."""
    if config.width < 8:
        raise ConfigError(f"width must be at least 8, got {config.width}")
    if config.height < 8:
        raise ConfigError(f"height must be at least 8, got {config.height}")
    if config.max_steps < 1:
        raise ConfigError(f"max_steps must be at least 1, got {config.max_steps}")

    d = config.dungeon
    if d.style != "rogue":
        raise ConfigError(f"dungeon.style must be 'rogue', got {d.style!r}")
    if d.room_num_x < 1:
        raise ConfigError(f"dungeon.room_num_x must be at least 1, got {d.room_num_x}")
    if d.room_num_y < 1:
        raise ConfigError(f"dungeon.room_num_y must be at least 1, got {d.room_num_y}")
    if config.width // d.room_num_x < _MIN_SLOT_SPAN:
        raise ConfigError(
            f"dungeon.room_num_x: each room slot needs {_MIN_SLOT_SPAN} columns for a 3x3 "
            f"interior; width {config.width} supports at most {config.width // _MIN_SLOT_SPAN}"
        )
    if config.height // d.room_num_y < _MIN_SLOT_SPAN:
        raise ConfigError(
            f"dungeon.room_num_y: each room slot needs {_MIN_SLOT_SPAN} rows for a 3x3 "
            f"interior; height {config.height} supports at most {config.height // _MIN_SLOT_SPAN}"
        )

    probs = [
        ("dungeon.dark_room_prob", d.dark_room_prob),
        ("dungeon.maze_room_prob", d.maze_room_prob),
        ("dungeon.hidden_door_prob", d.hidden_door_prob),
        ("dungeon.gone_room_prob", d.gone_room_prob),
        ("search_success_prob", config.search_success_prob),
        ("gold.per_room_prob", config.gold.per_room_prob),
    ]
    for name, p in probs:
        if p is not None and not 0.0 <= p <= 1.0:
            raise ConfigError(f"{name} must be in [0, 1], got {p}")

    if config.pseudo_reward_descend < 0:
        raise ConfigError(
            f"pseudo_reward_descend must be non-negative, got {config.pseudo_reward_descend}"
        )

    e = config.enemies
    if e.count < 0:
        raise ConfigError(f"enemies.count must be non-negative, got {e.count}")
    if e.hp < 1:
        raise ConfigError(f"enemies.hp must be at least 1, got {e.hp}")
    if e.damage < 0:
        raise ConfigError(f"enemies.damage must be non-negative, got {e.damage}")
    if e.player_hp < 1:
        raise ConfigError(f"enemies.player_hp must be at least 1, got {e.player_hp}")

    if config.amulet_depth is not None and config.amulet_depth < 1:
        raise ConfigError(f"amulet_depth must be at least 1 or null, got {config.amulet_depth}")
    if config.amulet_bonus < 0:
        raise ConfigError(f"amulet_bonus must be non-negative, got {config.amulet_bonus}")

    table = config.symbol_table
    if not table:
        raise ConfigError("symbol_table must not be empty")
    for i, c in enumerate(table):
        if len(c) != 1:
            raise ConfigError(f"symbol_table[{i}] must be a single character, got {c!r}")
        if not c.isascii():
            raise ConfigError(f"symbol_table[{i}] must be ASCII, got {c!r}")
    if len(set(table)) != len(table):
        dup = next(c for i, c in enumerate(table) if c in table[:i])
        raise ConfigError(f"symbol_table has duplicate entry {dup!r}")
    required = list(_ALWAYS_REQUIRED)
    if config.gold.enabled:
        required.append("*")
    if config.enemies.enabled:
        required.append(ENEMY_SYMBOL)
    for c in required:
        if c not in table:
            raise ConfigError(f"symbol_table is missing required character {c!r}")


def parse_config(text: str | None) -> GameConfig:
    """Parse JSON config text; empty or None gives the defaults."""
    if text is None or not text.strip():
        return default_config()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from None
    return config_from_dict(data)


def load_config(path: str) -> GameConfig:
    with open(path, "r", encoding="utf-8") as f:
        return parse_config(f.read())


def config_to_dict(config: GameConfig) -> dict[str, Any]:
    """Full explicit dict; round-trips through config_from_dict."""
    return {
        "width": config.width,
        "height": config.height,
        "max_steps": config.max_steps,
        "dungeon": {
            "style": config.dungeon.style,
            "room_num_x": config.dungeon.room_num_x,
            "room_num_y": config.dungeon.room_num_y,
            "dark_room_prob": config.dungeon.dark_room_prob,
            "maze_room_prob": config.dungeon.maze_room_prob,
            "hidden_door_prob": config.dungeon.hidden_door_prob,
            "gone_room_prob": config.dungeon.gone_room_prob,
        },
        "search_success_prob": config.search_success_prob,
        "gold": {
            "enabled": config.gold.enabled,
            "per_room_prob": config.gold.per_room_prob,
        },
        "pseudo_reward_descend": config.pseudo_reward_descend,
        "enemies": {
            "enabled": config.enemies.enabled,
            "count": config.enemies.count,
            "hp": config.enemies.hp,
            "damage": config.enemies.damage,
            "player_hp": config.enemies.player_hp,
        },
        "amulet_depth": config.amulet_depth,
        "amulet_bonus": config.amulet_bonus,
        "symbol_table": list(config.symbol_table),
    }


def serialize_config(config: GameConfig) -> str:
    return json.dumps(config_to_dict(config), indent=2) + "\n"
