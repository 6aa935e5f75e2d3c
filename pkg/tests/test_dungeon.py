"""Generation determinism and the independent structural oracle."""

from __future__ import annotations

import numpy as np
import pytest

from conftest import floor_from_text
from roguebench.config import config_from_dict, default_config
from roguebench.dungeon import (
    CellKind,
    Room,
    RoomKind,
    dump_floor,
    generate_floor,
    render_map,
    render_map_text,
    validate_floor,
)


def _check(report, name):
    return next(c for c in report.checks if c.name == name)


def test_generation_deterministic_across_calls():
    config = default_config()
    for seed in range(20):
        for depth in (1, 2, 3):
            assert dump_floor(generate_floor(config, seed, depth)) == dump_floor(
                generate_floor(config, seed, depth)
            )


def test_default_floors_all_validate():
    config = default_config()
    for seed in range(300):
        for depth in (1, 2, 3):
            report = validate_floor(generate_floor(config, seed, depth))
            assert report.ok, f"seed {seed} depth {depth}:\n{report}"


def test_single_slot_floor_holds_spawn_and_stairs():
    config = config_from_dict(
        {
            "width": 8,
            "height": 8,
            "dungeon": {
                "room_num_x": 1,
                "room_num_y": 1,
                "gone_room_prob": 0.0,
                "dark_room_prob": 0.0,
                "maze_room_prob": 0.0,
            },
        }
    )
    for seed in (0, 5, 17):
        floor = generate_floor(config, seed, 1)
        assert len(floor.rooms) == 1
        room = floor.rooms[0]
        assert room.kind == RoomKind.NORMAL
        assert room.contains(*floor.spawn) and room.contains(*floor.stairs)
        assert floor.spawn != floor.stairs
        assert validate_floor(floor).ok


def test_floors_are_distinct_across_seeds():
    config = default_config()
    maps = {render_map_text(generate_floor(config, seed, 1), True) for seed in range(1000)}
    assert len(maps) >= 990


def test_room_count_and_kinds_within_bounds():
    config = default_config()
    for seed in range(50):
        floor = generate_floor(config, seed, 1)
        live = [r for r in floor.rooms if r.kind != RoomKind.GONE]
        assert 1 <= len(live) <= 4
        assert len(floor.rooms) == 4
        for room in floor.rooms:
            assert room.kind in (RoomKind.NORMAL, RoomKind.DARK, RoomKind.MAZE, RoomKind.GONE)
            if room.kind == RoomKind.GONE:
                assert (room.w, room.h) == (1, 1)
            else:
                assert room.w >= 5 and room.h >= 5


def test_render_uses_only_documented_symbols():
    config = default_config()
    seen_chars: set[str] = set()
    for seed in range(40):
        floor = generate_floor(config, seed, 2)
        for row in render_map(floor):
            seen_chars.update(row)
    assert seen_chars <= set(" .#|-%+*")
    assert "%" in seen_chars and "." in seen_chars


def _find_floor_with_hidden_door():
    config = config_from_dict({"dungeon": {"hidden_door_prob": 0.9}})
    for seed in range(100):
        floor = generate_floor(config, seed, 1)
        doors = np.argwhere((floor.kind == CellKind.DOOR) & floor.hidden)
        if len(doors):
            y, x = map(int, doors[0])
            return floor, (x, y)
    raise AssertionError("no hidden door found in 100 seeds at prob 0.9")


def test_hidden_door_renders_as_wall_until_revealed():
    floor, (x, y) = _find_floor_with_hidden_door()
    concealed = render_map(floor)
    revealed = render_map(floor, reveal_hidden=True)
    assert concealed[y][x] in "|-"
    assert revealed[y][x] == "+"


def test_hidden_passage_renders_blank():
    config = config_from_dict({"dungeon": {"hidden_door_prob": 0.9}})
    for seed in range(100):
        floor = generate_floor(config, seed, 1)
        cells = np.argwhere((floor.kind == CellKind.PASSAGE) & floor.hidden)
        if len(cells):
            y, x = map(int, cells[0])
            assert render_map(floor)[y][x] == " "
            assert render_map(floor, reveal_hidden=True)[y][x] == "#"
            return
    raise AssertionError("no hidden passage found")


def test_gold_amounts_scale_with_depth():
    config = config_from_dict({"gold": {"per_room_prob": 1.0}})
    for depth in (1, 3):
        top = 50 + 10 * depth
        found = 0
        for seed in range(30):
            floor = generate_floor(config, seed, depth)
            amounts = floor.gold[floor.gold > 0]
            for amount in amounts:
                assert 2 <= int(amount) <= top
            found += len(amounts)
        assert found > 0


def test_gold_never_on_spawn_stairs_or_hidden():
    config = config_from_dict({"gold": {"per_room_prob": 1.0}, "dungeon": {"hidden_door_prob": 0.9}})
    for seed in range(50):
        floor = generate_floor(config, seed, 1)
        assert floor.gold[floor.spawn[1], floor.spawn[0]] == 0
        assert floor.gold[floor.stairs[1], floor.stairs[0]] == 0
        assert not (floor.gold[floor.hidden] > 0).any()


def test_all_maze_floors_validate():
    config = config_from_dict({"dungeon": {"maze_room_prob": 1.0}})
    for seed in range(50):
        floor = generate_floor(config, seed, 1)
        assert validate_floor(floor).ok
        spawn_kind = floor.kind[floor.spawn[1], floor.spawn[0]]
        assert CellKind(spawn_kind) == CellKind.PASSAGE


def test_mostly_gone_floors_validate():
    config = config_from_dict({"dungeon": {"gone_room_prob": 1.0}})
    for seed in range(50):
        floor = generate_floor(config, seed, 1)
        assert validate_floor(floor).ok
        live = [r for r in floor.rooms if r.kind != RoomKind.GONE]
        assert len(live) == 1


def test_all_hidden_doors_still_reachable():
    config = config_from_dict({"dungeon": {"hidden_door_prob": 1.0}})
    for seed in range(50):
        assert validate_floor(generate_floor(config, seed, 1)).ok


def test_validator_flags_unreachable_stairs():
    floor = floor_from_text(
        [
            "---------",
            "|.@.|   %",
            "---------",
        ]
    )
    report = validate_floor(floor)
    assert not report.ok
    check = _check(report, "stairs-reachable")
    assert not check.passed
    assert "unreachable" in check.detail


def test_validator_flags_unreachable_gold():
    floor = floor_from_text(
        [
            "----- ---",
            "|.@%| |*|",
            "----- ---",
        ],
        gold={(7, 1): 12},
        rooms=[Room(0, 0, 5, 3, RoomKind.NORMAL), Room(6, 0, 3, 3, RoomKind.NORMAL)],
    )
    report = validate_floor(floor)
    check = _check(report, "gold-reachable")
    assert not check.passed
    assert "(7, 1)" in check.detail


def test_validator_flags_hidden_on_floor_cell():
    floor = floor_from_text(
        [
            "-----",
            "|.@.|",
            "-----",
        ],
        hidden={(1, 1)},
    )
    check = _check(validate_floor(floor), "hidden-kinds")
    assert not check.passed


def test_validator_flags_gold_on_wall():
    floor = floor_from_text(
        [
            "-----",
            "|.@.|",
            "-----",
        ]
    )
    floor.gold[0, 0] = 5
    check = _check(validate_floor(floor), "gold-kinds")
    assert not check.passed


def test_validator_flags_duplicate_stairs():
    floor = floor_from_text(
        [
            "------",
            "|.@.%|",
            "------",
        ]
    )
    floor.kind[1, 1] = CellKind.STAIRS
    check = _check(validate_floor(floor), "one-stairs")
    assert not check.passed


def test_validator_flags_overlapping_rooms():
    floor = floor_from_text(
        [
            "-------",
            "|.@..%|",
            "-------",
        ],
        rooms=[
            Room(0, 0, 5, 3, RoomKind.NORMAL),
            Room(3, 0, 4, 3, RoomKind.NORMAL),
        ],
    )
    check = _check(validate_floor(floor), "rooms-disjoint")
    assert not check.passed


def test_validator_flags_sealed_room_when_corridors_exist():
    floor = floor_from_text(
        [
            "----- ###",
            "|.@%| # #",
            "----- ###",
        ],
        rooms=[Room(0, 0, 5, 3, RoomKind.NORMAL)],
    )
    check = _check(validate_floor(floor), "room-openings")
    assert not check.passed
    assert "no opening" in check.detail


def test_validator_passes_room_with_door():
    floor = floor_from_text(
        [
            "-----    ",
            "|.@%+### ",
            "-----    ",
        ],
        rooms=[Room(0, 0, 5, 3, RoomKind.NORMAL)],
    )
    assert validate_floor(floor).ok


def test_render_map_text_format():
    floor = generate_floor(default_config(), 0, 1)
    text = render_map_text(floor)
    assert text.endswith("\n") and not text.endswith("\n\n")
    assert "\r" not in text
    rows = text.splitlines()
    assert len(rows) == floor.height
    assert all(len(row) == floor.width for row in rows)


def test_stairs_field_matches_grid():
    config = default_config()
    for seed in range(50):
        floor = generate_floor(config, seed, 1)
        ys, xs = np.nonzero(floor.kind == CellKind.STAIRS)
        assert len(xs) == 1
        assert (int(xs[0]), int(ys[0])) == floor.stairs
