"""Seed-deterministic roguelike environment for studying policy generalization.

Floors are procedurally generated from an explicit seed, observations are
partial (visited areas plus current sight), and the harness scores agents
by mean episodic reward over arbitrary seed sets.
"""

from .agents import AgentPolicy, GreedyDescendAgent, RandomAgent, SubprocessAgent
from .config import (
    BASE_SYMBOLS,
    DungeonConfig,
    EnemyConfig,
    GameConfig,
    GoldConfig,
    config_from_dict,
    config_to_dict,
    default_config,
    load_config,
    parse_config,
    serialize_config,
)
from .dungeon import (
    Cell,
    CellKind,
    Floor,
    Room,
    RoomKind,
    ValidationReport,
    dump_floor,
    generate_floor,
    render_map,
    render_map_text,
    validate_floor,
)
from .errors import (
    AgentProtocolError,
    ConfigError,
    ContractError,
    EncodeError,
    GenerationError,
    PlayError,
    ReplayDivergence,
    ReplayFormatError,
    ReplayTamperError,
    RogueBenchError,
)
from .harness import Env, EvalReport, SeedResult, evaluate, record_episode
from .observe import Observation, decode, encode, make_observation, render_view
from .replay import ReplayStep, ReplayWriter, Trajectory, replay, replay_file
from .rng import STREAM_FORMAT, RngStream, derive_stream
from .runtime import (
    ACTION_KEYS,
    NUM_ACTIONS,
    Action,
    GameState,
    Transition,
    action_from,
    apply,
    enemy_turn,
    new_game,
    visible_from,
)

__version__ = "0.1.0"

__all__ = [
    "ACTION_KEYS",
    "Action",
    "AgentPolicy",
    "AgentProtocolError",
    "BASE_SYMBOLS",
    "Cell",
    "CellKind",
    "ConfigError",
    "ContractError",
    "DungeonConfig",
    "EncodeError",
    "EnemyConfig",
    "Env",
    "EvalReport",
    "Floor",
    "GameConfig",
    "GameState",
    "GenerationError",
    "GoldConfig",
    "GreedyDescendAgent",
    "NUM_ACTIONS",
    "Observation",
    "PlayError",
    "RandomAgent",
    "ReplayDivergence",
    "ReplayFormatError",
    "ReplayStep",
    "ReplayTamperError",
    "ReplayWriter",
    "RngStream",
    "RogueBenchError",
    "Room",
    "RoomKind",
    "STREAM_FORMAT",
    "SeedResult",
    "SubprocessAgent",
    "Trajectory",
    "Transition",
    "ValidationReport",
    "action_from",
    "apply",
    "config_from_dict",
    "config_to_dict",
    "decode",
    "default_config",
    "derive_stream",
    "dump_floor",
    "encode",
    "enemy_turn",
    "evaluate",
    "generate_floor",
    "load_config",
    "make_observation",
    "new_game",
    "parse_config",
    "record_episode",
    "render_map",
    "render_map_text",
    "render_view",
    "replay",
    "replay_file",
    "serialize_config",
    "validate_floor",
    "visible_from",
]
