"""Command line interface: subcommands, exit codes, files, golden maps."""

from __future__ import annotations

import json
import pathlib
import subprocess
import sys

import pytest

from roguebench.agents import RandomAgent
from roguebench.cli import main, parse_seed_spec
from roguebench.config import config_from_dict
from roguebench.harness import record_episode

GOLDEN = pathlib.Path(__file__).parent / "golden"

FAST_CONFIG = {
    "width": 16,
    "height": 8,
    "max_steps": 20,
    "dungeon": {"room_num_x": 2, "room_num_y": 1},
}


def _fast_config_file(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps(FAST_CONFIG))
    return str(path)


# ---------------------------------------------------------------------------
# seed specs
# ---------------------------------------------------------------------------


def test_seed_spec_single_and_range():
    assert parse_seed_spec("7") == [7]
    assert parse_seed_spec("3..6") == [3, 4, 5]


@pytest.mark.parametrize("spec", ["", "x", "5..", "..5", "9..3", "4..4", "1..2..3"])
def test_seed_spec_rejects_malformed_input(spec):
    with pytest.raises(Exception):
        parse_seed_spec(spec)


# ---------------------------------------------------------------------------
# gen
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("seed", [0, 1, 7, 42, 1008])
def test_gen_matches_golden_maps(capsys, seed):
    assert main(["gen", "--seed", str(seed), "--reveal-hidden"]) == 0
    out = capsys.readouterr().out
    assert out == (GOLDEN / f"map_seed_{seed}.txt").read_text()


def test_gen_is_deterministic(capsys):
    main(["gen", "--seed", "3"])
    first = capsys.readouterr().out
    main(["gen", "--seed", "3"])
    assert capsys.readouterr().out == first
    assert len(first.splitlines()) == 16
    assert all(len(line) == 32 for line in first.splitlines())


def test_gen_seed_range_prints_headers(capsys):
    assert main(["gen", "--seed", "0..3"]) == 0
    out = capsys.readouterr().out
    for seed in range(3):
        assert f"# seed {seed}" in out


def test_gen_validate_reports_pass_per_seed(capsys):
    assert main(["gen", "--seed", "10..14", "--validate"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines == [f"seed {s}: PASS" for s in range(10, 14)]


def test_gen_depth_changes_the_map(capsys):
    main(["gen", "--seed", "5", "--depth", "1"])
    shallow = capsys.readouterr().out
    main(["gen", "--seed", "5", "--depth", "3"])
    assert capsys.readouterr().out != shallow


def test_gen_out_writes_file(tmp_path, capsys):
    target = tmp_path / "map.txt"
    assert main(["gen", "--seed", "2", "--out", str(target)]) == 0
    main(["gen", "--seed", "2"])
    assert target.read_text() == capsys.readouterr().out


def test_gen_with_config_file(tmp_path, capsys):
    assert main(["gen", "--seed", "0", "--config", _fast_config_file(tmp_path)]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 8
    assert all(len(line) == 16 for line in lines)


def test_gen_rejects_invalid_config_json(tmp_path, capsys):
    path = tmp_path / "config.json"
    path.write_text('{"width": 4}')
    assert main(["gen", "--seed", "0", "--config", str(path)]) == 2
    assert "width" in capsys.readouterr().err


def test_gen_missing_config_file_is_io_error(capsys):
    assert main(["gen", "--seed", "0", "--config", "/nonexistent/cfg.json"]) == 3
    assert "cfg.json" in capsys.readouterr().err


def test_gen_bad_seed_spec_is_usage_error(capsys):
    assert main(["gen", "--seed", "9..3"]) == 1
    assert "seed" in capsys.readouterr().err


def test_unknown_subcommand_is_usage_error(capsys):
    assert main(["frobnicate"]) == 1


def test_config_json_inline_overrides(capsys):
    assert main(["gen", "--seed", "0", "--config-json",
                 json.dumps(FAST_CONFIG)]) == 0
    assert len(capsys.readouterr().out.splitlines()) == 8


# ---------------------------------------------------------------------------
# eval
# ---------------------------------------------------------------------------


def test_eval_prints_summary_and_writes_outputs(tmp_path, capsys):
    prefix = tmp_path / "run"
    code = main([
        "eval", "--agent", "random", "--seeds", "1..4", "--episodes", "2",
        "--eval-seed", "5", "--config", _fast_config_file(tmp_path),
        "--out", str(prefix),
    ])
    assert code == 0
    out = capsys.readouterr().out
    assert "aggregate_mean" in out
    assert "3 seeds x 2 episodes" in out
    csv_text = (tmp_path / "run.csv").read_text()
    assert csv_text.startswith("seed,episode,reward\n")
    assert len(csv_text.strip().splitlines()) == 1 + 3 * 2
    summary = json.loads((tmp_path / "run.json").read_text())
    assert summary["episodes"] == 6
    assert summary["eval_seed"] == 5


def test_eval_is_deterministic_across_runs_and_workers(tmp_path, capsys):
    config = _fast_config_file(tmp_path)
    texts = []
    for i, workers in enumerate(("1", "1", "3")):
        prefix = tmp_path / f"run{i}"
        assert main([
            "eval", "--agent", "random", "--seeds", "10..16",
            "--episodes", "2", "--eval-seed", "1", "--config", config,
            "--workers", workers, "--out", str(prefix),
        ]) == 0
        texts.append((
            (tmp_path / f"run{i}.csv").read_text(),
            (tmp_path / f"run{i}.json").read_text(),
        ))
    capsys.readouterr()
    assert texts[0] == texts[1] == texts[2]


def test_eval_greedy_agent_runs(tmp_path, capsys):
    assert main([
        "eval", "--agent", "greedy", "--seeds", "1..3", "--episodes", "1",
        "--config", _fast_config_file(tmp_path),
    ]) == 0
    assert "aggregate_mean" in capsys.readouterr().out


def test_eval_unknown_agent_is_usage_error(capsys):
    assert main(["eval", "--agent", "alphago", "--seeds", "1..3"]) == 1
    assert "alphago" in capsys.readouterr().err


def test_eval_cmd_agent_subprocess(tmp_path, capsys):
    program = tmp_path / "agent.py"
    program.write_text(
        "import json,sys\n"
        "for line in sys.stdin:\n"
        "    print(json.dumps({'action': 0}))\n"
        "    sys.stdout.flush()\n"
    )
    code = main([
        "eval", "--agent", f"cmd:{sys.executable} {program}",
        "--seeds", "1..2", "--episodes", "1",
        "--config", _fast_config_file(tmp_path),
    ])
    assert code == 0
    assert "aggregate_mean 0.0" in capsys.readouterr().out


def test_eval_agent_protocol_violation_exits_2(tmp_path, capsys):
    program = tmp_path / "agent.py"
    program.write_text(
        "import json,sys\n"
        "for line in sys.stdin:\n"
        "    print(json.dumps({'action': 99}))\n"
        "    sys.stdout.flush()\n"
    )
    code = main([
        "eval", "--agent", f"cmd:{sys.executable} {program}",
        "--seeds", "1..2", "--episodes", "1",
        "--config", _fast_config_file(tmp_path),
    ])
    assert code == 2
    assert "99" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# replay
# ---------------------------------------------------------------------------


def _write_log(tmp_path) -> pathlib.Path:
    config = config_from_dict(FAST_CONFIG)
    path = tmp_path / "episode.jsonl"
    path.write_text(record_episode(config, seed=3, agent=RandomAgent()),
                    newline="")
    return path


def test_replay_verifies_recorded_log(tmp_path, capsys):
    path = _write_log(tmp_path)
    assert main(["replay", str(path)]) == 0
    out = capsys.readouterr().out
    assert out.startswith("OK: 20 steps, seed 3")
    assert "total reward" in out


def test_replay_tampered_log_exits_2(tmp_path, capsys):
    path = _write_log(tmp_path)
    lines = path.read_text().splitlines()
    record = json.loads(lines[4])
    record["reward"] += 1
    lines[4] = json.dumps(record, separators=(",", ":"))
    path.write_text("\n".join(lines) + "\n", newline="")
    assert main(["replay", str(path)]) == 2
    assert "step 3" in capsys.readouterr().err


def test_replay_missing_file_exits_3(capsys):
    assert main(["replay", "/nonexistent/episode.jsonl"]) == 3


# ---------------------------------------------------------------------------
# play (non-interactive refusal) and serve (via subprocess)
# ---------------------------------------------------------------------------


def test_play_refuses_without_a_terminal():
    result = subprocess.run(
        [sys.executable, "-m", "roguebench", "play", "--seed", "0"],
        capture_output=True, text=True, stdin=subprocess.DEVNULL,
    )
    assert result.returncode == 1
    assert "terminal" in result.stderr


def test_serve_rejects_bad_config_with_exit_2():
    result = subprocess.run(
        [sys.executable, "-m", "roguebench", "serve", "--config-json",
         '{"width": 1}'],
        capture_output=True, text=True, input="",
    )
    assert result.returncode == 2
    assert "width" in result.stderr


def test_serve_smoke_over_pipes():
    script = "\n".join([
        json.dumps({"cmd": "reset", "seed": 0}),
        json.dumps({"cmd": "step", "action": "l"}),
        json.dumps({"cmd": "close"}),
    ]) + "\n"
    result = subprocess.run(
        [sys.executable, "-m", "roguebench", "serve"],
        capture_output=True, text=True, input=script,
    )
    assert result.returncode == 0
    lines = [json.loads(line) for line in result.stdout.splitlines()]
    assert lines[0]["ok"] and lines[0]["protocol"] == 1
    assert lines[1]["ok"] and len(lines[1]["obs"]["chars"]) == 16
    assert lines[2]["ok"] and lines[2]["t"] == 0
    assert lines[3] == {"ok": True, "bye": True}
