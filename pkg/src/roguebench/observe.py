"""Observations: character view, one-hot channel tensor, status line.

The view shows exactly the cells the player has seen; everything else is
blank. '@' marks the player and occludes the cell underneath, whose
character is reported in status["player_cell"] instead.
"""

from __future__ import annotations

from functools import cached_property

import numpy as np

from .errors import EncodeError
from .runtime import GameState

_SPACE = ord(" ")
_AT = ord("@")
_GOLD = ord("*")
_ENEMY = ord("A")


class Observation:
    """Immutable snapshot: code grid plus lazily built char/channel forms."""

    def __init__(self, codes: np.ndarray, symbols: tuple[str, ...], status: dict):
        codes.setflags(write=False)
        self.codes = codes  # uint8 (H, W), ASCII codes
        self.symbols = symbols
        self.status = status

    @cached_property
    def chars(self) -> tuple[str, ...]:
        return tuple(
            bytes(self.codes[y]).decode("ascii") for y in range(self.codes.shape[0])
        )

    @cached_property
    def channels(self) -> np.ndarray:
        """One-hot uint8 tensor of shape (len(symbols), H, W)."""
        return encode(self.codes, self.symbols)

    @property
    def shape(self) -> tuple[int, int, int]:
        return (len(self.symbols), self.codes.shape[0], self.codes.shape[1])


def _symbol_codes(symbol_table: tuple[str, ...] | list[str]) -> np.ndarray:
    try:
        return np.frombuffer("".join(symbol_table).encode("ascii"), dtype=np.uint8)
    except UnicodeEncodeError:
        bad = next(c for c in symbol_table if not c.isascii())
        raise EncodeError(f"symbol table entry {bad!r} is not ASCII") from None


def _view_to_codes(view: np.ndarray | list | tuple) -> np.ndarray:
    if isinstance(view, np.ndarray):
        if view.dtype != np.uint8 or view.ndim != 2:
            raise EncodeError(f"view array must be a 2-D uint8 grid, got {view.dtype} {view.shape}")
        return view
    rows = list(view)
    if not rows:
        raise EncodeError("view has no rows")
    width = len(rows[0])
    for y, row in enumerate(rows):
        if not isinstance(row, str):
            raise EncodeError(f"view row {y} is not a string")
        if len(row) != width:
            raise EncodeError(f"view row {y} has length {len(row)}, expected {width}")
    try:
        data = "".join(rows).encode("ascii")
    except UnicodeEncodeError as e:
        pos = e.start
        raise EncodeError(
            f"non-ASCII character {e.object[pos]!r} at row {pos // width} column {pos % width}"
        ) from None
    return np.frombuffer(data, dtype=np.uint8).reshape(len(rows), width)


def encode(view, symbol_table) -> np.ndarray:
    """One-hot encode a character grid along the symbol table.

    Raises EncodeError naming the character and position if the grid holds
    anything outside the table.
    """
    codes = _view_to_codes(view)
    table = _symbol_codes(tuple(symbol_table))
    channels = (codes[None, :, :] == table[:, None, None]).astype(np.uint8)
    coverage = channels.sum(axis=0)
    if not coverage.all():
        ys, xs = np.nonzero(coverage == 0)
        y, x = int(ys[0]), int(xs[0])
        raise EncodeError(
            f"character {chr(int(codes[y, x]))!r} at row {y} column {x} is not in the symbol table"
        )
    channels.setflags(write=False)
    return channels


def decode(channels: np.ndarray, symbol_table) -> tuple[str, ...]:
    """Inverse of encode for valid one-hot input."""
    table = _symbol_codes(tuple(symbol_table))
    if channels.ndim != 3 or channels.shape[0] != len(table):
        raise EncodeError(
            f"channel tensor must have shape ({len(table)}, H, W), got {channels.shape}"
        )
    sums = channels.sum(axis=0)
    if not (sums == 1).all():
        ys, xs = np.nonzero(sums != 1)
        raise EncodeError(f"cell at row {int(ys[0])} column {int(xs[0])} is not one-hot")
    codes = table[channels.argmax(axis=0)]
    return tuple(bytes(codes[y]).decode("ascii") for y in range(codes.shape[0]))


def _raw_codes(state: GameState) -> np.ndarray:
    """Render codes for the current floor with seen-mask and overlays applied."""
    floor = state.floor
    codes = floor.plain.copy()
    codes[floor.gold > 0] = _GOLD
    mask = floor.hidden
    if mask.any():
        codes[mask] = floor.disguise[mask]
    codes[~state.seen] = _SPACE
    for enemy in state.enemies:
        if enemy.hp > 0 and state.seen[enemy.y, enemy.x]:
            codes[enemy.y, enemy.x] = _ENEMY
    return codes


def make_observation(state: GameState) -> Observation:
    codes = _raw_codes(state)
    px, py = state.player
    under = chr(int(codes[py, px]))
    codes[py, px] = _AT
    status = {
        "depth": state.depth,
        "gold_collected": state.gold_collected,
        "step_count": state.step_count,
        "player_cell": under,
    }
    if state.hp is not None:
        status["hp"] = state.hp
    return Observation(codes, state.config.symbol_table, status)


def render_view(state: GameState) -> tuple[str, ...]:
    """Character rows of what the player currently knows."""
    return make_observation(state).chars
