"""Floor generation, validation, and map rendering.

A floor is generated on a slot grid (room_num_x by room_num_y). Each slot
holds a room (normal, dark, or maze) or is "gone" (a corridor waypoint).
Slots are joined by L-shaped corridors along a random spanning tree plus a
few extra edges; doors sit where corridors meet room walls and may be
hidden, as may the first corridor cell outside a door.

All randomness comes from the stream "worldgen/<depth>" of the floor seed,
in a fixed draw order, so identical (config, seed, depth) always produce
identical floors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum

import numpy as np

from .config import GameConfig, dark_room_prob_at
from .errors import GenerationError
from .rng import RngStream, derive_stream


class CellKind(IntEnum):
    VOID = 0
    FLOOR = 1
    PASSAGE = 2
    WALL_H = 3
    WALL_V = 4
    DOOR = 5
    STAIRS = 6


class RoomKind(IntEnum):
    NORMAL = 0
    DARK = 1
    MAZE = 2
    GONE = 3


# Render character per cell kind, indexed by CellKind value.
_KIND_TO_CHAR = np.frombuffer(b" .#-|+%", dtype=np.uint8)

# Whether each kind can be stood on, indexed by CellKind value.
WALKABLE = np.array([False, True, True, False, False, True, True], dtype=bool)

_SPACE = ord(" ")
_GOLD_CHAR = ord("*")


@dataclass(frozen=True)
class Cell:
    kind: CellKind
    hidden: bool
    gold: int


@dataclass
class Room:
    """Room footprint including walls; gone rooms are 1x1 corridor anchors."""

    x: int
    y: int
    w: int
    h: int
    kind: RoomKind
    doors: list[tuple[int, int]] = field(default_factory=list)

    def contains(self, x: int, y: int) -> bool:
        return self.x <= x < self.x + self.w and self.y <= y < self.y + self.h

    def overlaps(self, other: "Room") -> bool:
        return (
            self.x < other.x + other.w
            and other.x < self.x + self.w
            and self.y < other.y + other.h
            and other.y < self.y + self.h
        )


@dataclass
class Floor:
    width: int
    height: int
    depth: int
    kind: np.ndarray  # uint8 (H, W), CellKind values
    hidden: np.ndarray  # bool (H, W)
    gold: np.ndarray  # int32 (H, W), pile value or 0
    rooms: list[Room]
    spawn: tuple[int, int]
    stairs: tuple[int, int]
    room_index: np.ndarray  # int16 (H, W), room list index or -1
    plain: np.ndarray  # uint8 (H, W), render codes ignoring hidden/gold
    disguise: np.ndarray  # uint8 (H, W), code shown while a cell is hidden
    enemy_spawns: list[tuple[int, int]] = field(default_factory=list)

    def cell(self, x: int, y: int) -> Cell:
        return Cell(
            CellKind(int(self.kind[y, x])),
            bool(self.hidden[y, x]),
            int(self.gold[y, x]),
        )

    def in_bounds(self, x: int, y: int) -> bool:
        return 0 <= x < self.width and 0 <= y < self.height

    def is_walkable(self, x: int, y: int) -> bool:
        """Kind allows standing here; ignores the hidden flag."""
        return self.in_bounds(x, y) and bool(WALKABLE[self.kind[y, x]])


@dataclass
class _Slot:
    i: int
    j: int
    x0: int
    y0: int
    x1: int  # exclusive
    y1: int  # exclusive
    gone: bool = False
    room_idx: int = -1


def generate_floor(config: GameConfig, seed: int, depth: int) -> Floor:
    """Generate the floor for (config, seed, depth); pure per call."""
    rng = derive_stream(seed, f"worldgen/{depth}")
    w, h = config.width, config.height
    nx, ny = config.dungeon.room_num_x, config.dungeon.room_num_y

    kind = np.zeros((h, w), dtype=np.uint8)
    hidden = np.zeros((h, w), dtype=bool)
    gold = np.zeros((h, w), dtype=np.int32)
    room_index = np.full((h, w), -1, dtype=np.int16)

    slots = _partition_slots(w, h, nx, ny)
    gone_flags = [rng.chance(config.dungeon.gone_room_prob) for _ in slots]
    if all(gone_flags):
        gone_flags[rng.randrange(len(slots))] = False

    rooms: list[Room] = []
    door_disguise: dict[tuple[int, int], int] = {}
    dark_p = dark_room_prob_at(config, depth)
    for slot, gone in zip(slots, gone_flags):
        slot.gone = gone
        slot.room_idx = len(rooms)
        if gone:
            ax = rng.randint(slot.x0 + 1, slot.x1 - 2)
            ay = rng.randint(slot.y0 + 1, slot.y1 - 2)
            kind[ay, ax] = CellKind.PASSAGE
            room = Room(ax, ay, 1, 1, RoomKind.GONE)
        else:
            room = _place_room(rng, slot, config, dark_p, kind)
        room_index[room.y : room.y + room.h, room.x : room.x + room.w] = slot.room_idx
        rooms.append(room)

    _connect_slots(rng, config, slots, rooms, kind, hidden, door_disguise, nx, ny)

    spawn, stairs = _place_spawn_and_stairs(rng, kind, hidden, room_index, rooms)
    kind[stairs[1], stairs[0]] = CellKind.STAIRS

    if config.gold.enabled:
        for idx, room in enumerate(rooms):
            if room.kind == RoomKind.GONE:
                continue
            if not rng.chance(config.gold.per_room_prob):
                continue
            cells = _room_cells(kind, hidden, room_index, room, idx)
            cells = [c for c in cells if c != spawn]
            if not cells:
                continue
            gx, gy = cells[rng.randrange(len(cells))]
            gold[gy, gx] = rng.randint(2, 50 + 10 * depth)

    enemy_spawns: list[tuple[int, int]] = []
    if config.enemies.enabled and config.enemies.count > 0:
        pool = []
        for idx, room in enumerate(rooms):
            if room.kind == RoomKind.GONE:
                continue
            pool.extend(_room_cells(kind, hidden, room_index, room, idx))
        far = [c for c in pool if _chebyshev(c, spawn) >= 4]
        near = [c for c in pool if c != spawn and _chebyshev(c, spawn) >= 2]
        pool = far if len(far) >= config.enemies.count else near
        rng.shuffle(pool)
        enemy_spawns = pool[: config.enemies.count]

    plain = _KIND_TO_CHAR[kind]
    disguise = np.where(kind == CellKind.PASSAGE, np.uint8(_SPACE), plain)
    for (dx_, dy_), code in door_disguise.items():
        disguise[dy_, dx_] = code

    floor = Floor(
        width=w,
        height=h,
        depth=depth,
        kind=kind,
        hidden=hidden,
        gold=gold,
        rooms=rooms,
        spawn=spawn,
        stairs=stairs,
        room_index=room_index,
        plain=plain,
        disguise=disguise,
        enemy_spawns=enemy_spawns,
    )
    if not floor.is_walkable(*spawn) or hidden[spawn[1], spawn[0]]:
        raise GenerationError(f"spawn {spawn} is not an open walkable cell")
    return floor


def _partition_slots(w: int, h: int, nx: int, ny: int) -> list[_Slot]:
    """Even slot grid; remainder columns/rows go to the last slot."""
    xs = [i * (w // nx) for i in range(nx)] + [w]
    ys = [j * (h // ny) for j in range(ny)] + [h]
    return [
        _Slot(i=i, j=j, x0=xs[i], y0=ys[j], x1=xs[i + 1], y1=ys[j + 1])
        for j in range(ny)
        for i in range(nx)
    ]


def _place_room(
    rng: RngStream, slot: _Slot, config: GameConfig, dark_p: float, kind: np.ndarray
) -> Room:
    """Carve a room into the slot, leaving a 1-cell margin on every side."""
    avail_w = (slot.x1 - slot.x0) - 2
    avail_h = (slot.y1 - slot.y0) - 2
    rw = rng.randint(5, max(5, avail_w))
    rh = rng.randint(5, max(5, avail_h))
    rx = slot.x0 + 1 + rng.randrange(avail_w - rw + 1)
    ry = slot.y0 + 1 + rng.randrange(avail_h - rh + 1)
    # Both rolled every time to keep the draw count stable across configs.
    is_maze = rng.chance(config.dungeon.maze_room_prob)
    is_dark = rng.chance(dark_p)

    if is_maze:
        _carve_maze(rng, kind, rx, ry, rw, rh)
        return Room(rx, ry, rw, rh, RoomKind.MAZE)

    kind[ry, rx : rx + rw] = CellKind.WALL_H
    kind[ry + rh - 1, rx : rx + rw] = CellKind.WALL_H
    kind[ry + 1 : ry + rh - 1, rx] = CellKind.WALL_V
    kind[ry + 1 : ry + rh - 1, rx + rw - 1] = CellKind.WALL_V
    kind[ry + 1 : ry + rh - 1, rx + 1 : rx + rw - 1] = CellKind.FLOOR
    return Room(rx, ry, rw, rh, RoomKind.DARK if is_dark else RoomKind.NORMAL)


def _carve_maze(rng: RngStream, kind: np.ndarray, rx: int, ry: int, rw: int, rh: int) -> None:
    """Perfect maze over the odd lattice of the footprint (recursive backtracker)."""
    cols = (rw - 1) // 2 + 1
    rows = (rh - 1) // 2 + 1

    def cell_xy(cx: int, cy: int) -> tuple[int, int]:
        return rx + 2 * cx, ry + 2 * cy

    visited = [[False] * cols for _ in range(rows)]
    stack = [(0, 0)]
    visited[0][0] = True
    x0, y0 = cell_xy(0, 0)
    kind[y0, x0] = CellKind.PASSAGE
    while stack:
        cx, cy = stack[-1]
        options = []
        for dx, dy in ((0, -1), (0, 1), (-1, 0), (1, 0)):
            tx, ty = cx + dx, cy + dy
            if 0 <= tx < cols and 0 <= ty < rows and not visited[ty][tx]:
                options.append((tx, ty))
        if not options:
            stack.pop()
            continue
        tx, ty = options[rng.randrange(len(options))]
        visited[ty][tx] = True
        ax, ay = cell_xy(cx, cy)
        bx, by = cell_xy(tx, ty)
        kind[(ay + by) // 2, (ax + bx) // 2] = CellKind.PASSAGE
        kind[by, bx] = CellKind.PASSAGE
        stack.append((tx, ty))


def _connect_slots(
    rng: RngStream,
    config: GameConfig,
    slots: list[_Slot],
    rooms: list[Room],
    kind: np.ndarray,
    hidden: np.ndarray,
    door_disguise: dict[tuple[int, int], int],
    nx: int,
    ny: int,
) -> None:
    """Corridors along a random spanning tree plus extra edges (p = 0.3)."""
    if nx * ny == 1:
        return
    edges: list[tuple[int, int]] = []
    for j in range(ny):
        for i in range(nx):
            a = j * nx + i
            if i + 1 < nx:
                edges.append((a, a + 1))
            if j + 1 < ny:
                edges.append((a, a + nx))
    rng.shuffle(edges)

    parent = list(range(len(slots)))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    tree: list[tuple[int, int]] = []
    rest: list[tuple[int, int]] = []
    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra == rb:
            rest.append((a, b))
        else:
            parent[ra] = rb
            tree.append((a, b))

    for a, b in tree:
        _carve_corridor(rng, config, slots[a], slots[b], rooms, kind, hidden, door_disguise)
    for a, b in rest:
        if rng.chance(0.3):
            _carve_corridor(rng, config, slots[a], slots[b], rooms, kind, hidden, door_disguise)


def _attach_point(
    rng: RngStream,
    config: GameConfig,
    slot: _Slot,
    room: Room,
    side: str,
    kind: np.ndarray,
    hidden: np.ndarray,
    door_disguise: dict[tuple[int, int], int],
) -> tuple[int, int]:
    """Open the room toward `side`; return the first corridor cell outside it.

    Normal/dark rooms get a Door cell in the wall; maze rooms get a passage
    opening on the footprint edge. Both the opening and the cell just outside
    may be hidden (probabilities hidden_door_prob and hidden_door_prob / 2).
    """
    if room.kind == RoomKind.GONE:
        return room.x, room.y

    p_door = config.dungeon.hidden_door_prob
    if room.kind == RoomKind.MAZE:
        if side in ("east", "west"):
            ey = room.y + 2 * rng.randrange((room.h - 1) // 2 + 1)
            edge_x = room.x + room.w - 1 if side == "east" else room.x
            lat_x = room.x + 2 * ((room.w - 1) // 2) if side == "east" else room.x
            step = 1 if side == "east" else -1
            for x in range(lat_x, edge_x + step, step):
                if kind[ey, x] == CellKind.VOID:
                    kind[ey, x] = CellKind.PASSAGE
            opening = (edge_x, ey)
            outside = (edge_x + step, ey)
        else:
            ex = room.x + 2 * rng.randrange((room.w - 1) // 2 + 1)
            edge_y = room.y + room.h - 1 if side == "south" else room.y
            lat_y = room.y + 2 * ((room.h - 1) // 2) if side == "south" else room.y
            step = 1 if side == "south" else -1
            for y in range(lat_y, edge_y + step, step):
                if kind[y, ex] == CellKind.VOID:
                    kind[y, ex] = CellKind.PASSAGE
            opening = (ex, edge_y)
            outside = (ex, edge_y + step)
    else:
        if side in ("east", "west"):
            dy = rng.randint(room.y + 1, room.y + room.h - 2)
            dx = room.x + room.w - 1 if side == "east" else room.x
            outside = (dx + 1, dy) if side == "east" else (dx - 1, dy)
            door_disguise[(dx, dy)] = ord("|")
        else:
            dx = rng.randint(room.x + 1, room.x + room.w - 2)
            dy = room.y + room.h - 1 if side == "south" else room.y
            outside = (dx, dy + 1) if side == "south" else (dx, dy - 1)
            door_disguise[(dx, dy)] = ord("-")
        kind[dy, dx] = CellKind.DOOR
        opening = (dx, dy)

    room.doors.append(opening)
    if rng.chance(p_door):
        hidden[opening[1], opening[0]] = True
    ox, oy = outside
    if kind[oy, ox] == CellKind.VOID:
        kind[oy, ox] = CellKind.PASSAGE
    if rng.chance(p_door / 2.0):
        hidden[oy, ox] = True
    return outside


def _carve_corridor(
    rng: RngStream,
    config: GameConfig,
    sa: _Slot,
    sb: _Slot,
    rooms: list[Room],
    kind: np.ndarray,
    hidden: np.ndarray,
    door_disguise: dict[tuple[int, int], int],
) -> None:
    horizontal = sa.j == sb.j
    if horizontal:
        side_a, side_b = "east", "west"
    else:
        side_a, side_b = "south", "north"
    pa = _attach_point(rng, config, sa, rooms[sa.room_idx], side_a, kind, hidden, door_disguise)
    pb = _attach_point(rng, config, sb, rooms[sb.room_idx], side_b, kind, hidden, door_disguise)

    def carve(x: int, y: int) -> None:
        if kind[y, x] == CellKind.VOID:
            kind[y, x] = CellKind.PASSAGE

    if horizontal:
        mid = rng.randint(min(pa[0], pb[0]), max(pa[0], pb[0]))
        for x in range(min(pa[0], mid), max(pa[0], mid) + 1):
            carve(x, pa[1])
        for y in range(min(pa[1], pb[1]), max(pa[1], pb[1]) + 1):
            carve(mid, y)
        for x in range(min(mid, pb[0]), max(mid, pb[0]) + 1):
            carve(x, pb[1])
    else:
        mid = rng.randint(min(pa[1], pb[1]), max(pa[1], pb[1]))
        for y in range(min(pa[1], mid), max(pa[1], mid) + 1):
            carve(pa[0], y)
        for x in range(min(pa[0], pb[0]), max(pa[0], pb[0]) + 1):
            carve(x, mid)
        for y in range(min(mid, pb[1]), max(mid, pb[1]) + 1):
            carve(pb[0], y)


def _room_cells(
    kind: np.ndarray,
    hidden: np.ndarray,
    room_index: np.ndarray,
    room: Room,
    idx: int,
) -> list[tuple[int, int]]:
    """Open standable cells of a room, row-major: Floor, or Passage for mazes."""
    want = CellKind.PASSAGE if room.kind == RoomKind.MAZE else CellKind.FLOOR
    ys, xs = np.nonzero((room_index == idx) & (kind == want) & ~hidden)
    return [(int(x), int(y)) for x, y in zip(xs, ys)]


def _chebyshev(a: tuple[int, int], b: tuple[int, int]) -> int:
    return max(abs(a[0] - b[0]), abs(a[1] - b[1]))


def _place_spawn_and_stairs(
    rng: RngStream,
    kind: np.ndarray,
    hidden: np.ndarray,
    room_index: np.ndarray,
    rooms: list[Room],
) -> tuple[tuple[int, int], tuple[int, int]]:
    live = [(i, r) for i, r in enumerate(rooms) if r.kind != RoomKind.GONE]
    spawn_idx, spawn_room = live[rng.randrange(len(live))]
    cells = _room_cells(kind, hidden, room_index, spawn_room, spawn_idx)
    if not cells:
        raise GenerationError(f"room at {spawn_room.x},{spawn_room.y} has no open cells")
    spawn = cells[rng.randrange(len(cells))]

    if len(live) >= 2:
        others = [(i, r) for i, r in live if i != spawn_idx]
        sidx, sroom = others[rng.randrange(len(others))]
        scells = _room_cells(kind, hidden, room_index, sroom, sidx)
        stairs = scells[rng.randrange(len(scells))]
    else:
        pool = [c for c in cells if c != spawn]
        far = [c for c in pool if abs(c[0] - spawn[0]) + abs(c[1] - spawn[1]) >= 4]
        if not far:
            dmax = max(abs(c[0] - spawn[0]) + abs(c[1] - spawn[1]) for c in pool)
            far = [c for c in pool if abs(c[0] - spawn[0]) + abs(c[1] - spawn[1]) == dmax]
        stairs = far[rng.randrange(len(far))]
    return spawn, stairs


# --- validation ---------------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[CheckResult, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def __str__(self) -> str:
        return "\n".join(
            f"{'PASS' if c.passed else 'FAIL'} {c.name}" + (f": {c.detail}" if c.detail else "")
            for c in self.checks
        )


def _bfs_reach(floor: Floor) -> tuple[np.ndarray, np.ndarray]:
    """4-neighbour reachability from spawn; hidden cells count as open.

    Returns (reached bool grid, step-distance grid with -1 for unreached).
    Deliberately naive scalar BFS: this is the oracle the generator is
    checked against, so it shares no helper state with generation.
    """
    h, w = floor.kind.shape
    dist = np.full((h, w), -1, dtype=np.int32)
    sx, sy = floor.spawn
    queue = [(sx, sy)]
    dist[sy, sx] = 0
    head = 0
    while head < len(queue):
        x, y = queue[head]
        head += 1
        for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1)):
            nx_, ny_ = x + dx, y + dy
            if 0 <= nx_ < w and 0 <= ny_ < h and dist[ny_, nx_] < 0:
                if WALKABLE[floor.kind[ny_, nx_]]:
                    dist[ny_, nx_] = dist[y, x] + 1
                    queue.append((nx_, ny_))
    return dist >= 0, dist


def validate_floor(floor: Floor) -> ValidationReport:
    """Independent structural checks; BFS-based, no generator internals."""
    checks: list[CheckResult] = []
    kind, hidden, gold = floor.kind, floor.hidden, floor.gold

    stairs_cells = [(int(x), int(y)) for y, x in np.argwhere(kind == CellKind.STAIRS)]
    ok = len(stairs_cells) == 1 and stairs_cells[0] == floor.stairs
    checks.append(
        CheckResult(
            "one-stairs",
            ok,
            "" if ok else f"stairs cells {stairs_cells}, field {floor.stairs}",
        )
    )

    bad_hidden = [
        (int(x), int(y))
        for y, x in np.argwhere(hidden & ~np.isin(kind, (CellKind.DOOR, CellKind.PASSAGE)))
    ]
    checks.append(
        CheckResult(
            "hidden-kinds",
            not bad_hidden,
            "" if not bad_hidden else f"hidden non-door/passage cell at {bad_hidden[0]}",
        )
    )

    bad_gold = [
        (int(x), int(y))
        for y, x in np.argwhere(
            (gold > 0) & (~np.isin(kind, (CellKind.FLOOR, CellKind.PASSAGE)) | hidden)
        )
    ]
    checks.append(
        CheckResult(
            "gold-kinds",
            not bad_gold,
            "" if not bad_gold else f"gold on invalid cell at {bad_gold[0]}",
        )
    )

    sx, sy = floor.spawn
    spawn_room = next(
        (r for r in floor.rooms if r.kind != RoomKind.GONE and r.contains(sx, sy)), None
    )
    ok = (
        spawn_room is not None
        and floor.is_walkable(sx, sy)
        and not hidden[sy, sx]
        and kind[sy, sx] != CellKind.STAIRS
    )
    checks.append(
        CheckResult("spawn-placement", ok, "" if ok else f"spawn {floor.spawn} invalid")
    )

    overlap = ""
    for i, a in enumerate(floor.rooms):
        for b in floor.rooms[i + 1 :]:
            if a.overlaps(b):
                overlap = f"rooms at {a.x},{a.y} and {b.x},{b.y} overlap"
                break
        if overlap:
            break
    checks.append(CheckResult("rooms-disjoint", not overlap, overlap))

    reached, dist = _bfs_reach(floor)
    tx, ty = floor.stairs
    ok = bool(reached[ty, tx])
    checks.append(
        CheckResult(
            "stairs-reachable",
            ok,
            f"path length {int(dist[ty, tx])}" if ok else f"stairs {floor.stairs} unreachable",
        )
    )

    gold_cells = np.argwhere(gold > 0)
    missing = [(int(x), int(y)) for y, x in gold_cells if not reached[y, x]]
    checks.append(
        CheckResult(
            "gold-reachable",
            not missing,
            "" if not missing else f"gold at {missing[0]} unreachable",
        )
    )

    # Openings are only required when there is anywhere to go: corridor
    # cells outside every room footprint.
    outside_open = 0
    h, w = kind.shape
    for y in range(h):
        for x in range(w):
            if WALKABLE[kind[y, x]] and not any(r.contains(x, y) for r in floor.rooms):
                outside_open += 1
    detail = ""
    if outside_open > 0:
        for room in floor.rooms:
            if room.kind == RoomKind.GONE:
                continue
            if not _has_opening(floor, room):
                detail = f"room at {room.x},{room.y} has no opening"
                break
    checks.append(CheckResult("room-openings", not detail, detail))

    return ValidationReport(tuple(checks))


def _has_opening(floor: Floor, room: Room) -> bool:
    """Some boundary cell is walkable and leads to a walkable cell outside."""
    for y in range(room.y, room.y + room.h):
        for x in range(room.x, room.x + room.w):
            on_edge = x in (room.x, room.x + room.w - 1) or y in (room.y, room.y + room.h - 1)
            if not on_edge or not WALKABLE[floor.kind[y, x]]:
                continue
            for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                ox, oy = x + dx, y + dy
                if not room.contains(ox, oy) and floor.is_walkable(ox, oy):
                    return True
    return False


# --- rendering ----------------------------------------------------------


def render_map(floor: Floor, reveal_hidden: bool = False) -> tuple[str, ...]:
    """Character rows of the full floor, without player or enemies.

    Hidden cells show their disguise (wall or blank) unless reveal_hidden.
    """
    codes = floor.plain.copy()
    codes[floor.gold > 0] = _GOLD_CHAR
    if not reveal_hidden:
        mask = floor.hidden
        codes[mask] = floor.disguise[mask]
    return tuple(bytes(codes[y]).decode("ascii") for y in range(floor.height))


def render_map_text(floor: Floor, reveal_hidden: bool = False) -> str:
    """Golden-file form: LF separated rows, one trailing newline."""
    return "\n".join(render_map(floor, reveal_hidden)) + "\n"


def dump_floor(floor: Floor) -> str:
    """Canonical text dump of everything a floor contains."""
    lines = [
        f"depth {floor.depth}",
        f"spawn {floor.spawn[0]},{floor.spawn[1]}",
        f"stairs {floor.stairs[0]},{floor.stairs[1]}",
    ]
    for room in floor.rooms:
        doors = " ".join(f"{x},{y}" for x, y in sorted(room.doors))
        lines.append(
            f"room {room.x},{room.y} {room.w}x{room.h} {room.kind.name.lower()}"
            + (f" doors {doors}" if doors else "")
        )
    for x, y in floor.enemy_spawns:
        lines.append(f"enemy {x},{y}")
    for y, x in np.argwhere(floor.hidden):
        lines.append(f"hidden {x},{y}")
    for y, x in np.argwhere(floor.gold > 0):
        lines.append(f"gold {x},{y}={int(floor.gold[y, x])}")
    lines.append("map")
    lines.extend(render_map(floor, reveal_hidden=True))
    return "\n".join(lines) + "\n"
