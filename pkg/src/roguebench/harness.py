"""Episodic Env wrapper and the seed-set evaluation harness.

evaluate() runs a policy for a fixed number of episodes on every seed and
reports per-seed mean episodic reward plus the aggregate mean over seeds.
Results are a pure function of (agent, seeds, episodes, config, eval_seed);
worker count only changes wall-clock time, never a byte of output.
"""

from __future__ import annotations

import json
import math
import multiprocessing
from dataclasses import dataclass
from typing import Iterable, Sequence

from .agents import AgentPolicy
from .config import GameConfig, default_config
from .errors import AgentProtocolError, ContractError
from .observe import Observation, make_observation
from .replay import ReplayWriter
from .rng import derive_stream
from .runtime import (
    ACTION_KEYS,
    NUM_ACTIONS,
    Action,
    GameState,
    action_from,
    apply,
    new_game,
)


class Env:
    """reset/step wrapper around the turn runtime.

    Each reset starts a fresh episode whose runtime stream is labelled by
    this Env's reset count, so re-resetting the same seed gives fresh but
    reproducible rolls.
    """

    def __init__(self, config: GameConfig | None = None, seed: int = 0):
        self.config = config if config is not None else default_config()
        self.seed = seed
        self.state: GameState | None = None
        self.reset_count = 0

    @property
    def num_actions(self) -> int:
        return NUM_ACTIONS

    @property
    def action_keys(self) -> str:
        return ACTION_KEYS

    def reset(self, seed: int | None = None) -> Observation:
        if seed is not None:
            self.seed = seed
        self.state = new_game(self.config, self.seed, reset_index=self.reset_count)
        self.reset_count += 1
        return make_observation(self.state)

    def step(self, action: int | str | Action) -> tuple[Observation, int, bool, dict]:
        if self.state is None:
            raise ContractError("step before reset: call reset() first")
        transition = apply(self.state, action)
        return make_observation(self.state), transition.reward, transition.done, transition.info


@dataclass(frozen=True)
class SeedResult:
    mean_reward: float
    rewards: tuple[int, ...]


@dataclass(frozen=True)
class EvalReport:
    per_seed: dict[int, SeedResult]  # ascending seed order
    episodes_per_seed: int
    eval_seed: int
    aggregate_mean: float
    aggregate_std: float
    mean_policy_entropy: float | None
    total_steps: int

    def to_csv(self) -> str:
        rows = ["seed,episode,reward"]
        for seed, result in self.per_seed.items():
            for episode, reward in enumerate(result.rewards):
                rows.append(f"{seed},{episode},{reward}")
        return "\n".join(rows) + "\n"

    def write_csv(self, path: str) -> None:
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write(self.to_csv())

    def summary(self) -> dict:
        return {
            "seeds": len(self.per_seed),
            "episodes_per_seed": self.episodes_per_seed,
            "episodes": len(self.per_seed) * self.episodes_per_seed,
            "eval_seed": self.eval_seed,
            "aggregate_mean": self.aggregate_mean,
            "aggregate_std": self.aggregate_std,
            "mean_policy_entropy": self.mean_policy_entropy,
            "total_steps": self.total_steps,
        }

    def to_json(self) -> str:
        return json.dumps(self.summary(), indent=2) + "\n"

    def write_summary(self, path: str) -> None:
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write(self.to_json())


def _checked_entropy(probs: Sequence[float], where: str) -> float:
    if len(probs) != NUM_ACTIONS:
        raise AgentProtocolError(
            f"{where}: probability vector has {len(probs)} entries, expected {NUM_ACTIONS}"
        )
    total = 0.0
    entropy = 0.0
    for p in probs:
        if p < 0.0:
            raise AgentProtocolError(f"{where}: negative probability {p}")
        total += p
        if p > 0.0:
            entropy -= p * math.log(p)
    if abs(total - 1.0) > 1e-6:
        raise AgentProtocolError(f"{where}: probabilities sum to {total}, expected 1")
    return entropy


def _run_seed(args: tuple) -> tuple[int, tuple[int, ...], float, int, int]:
    agent, config, seed, episodes, eval_seed = args
    env = Env(config, seed)
    rewards: list[int] = []
    entropy_sum = 0.0
    entropy_steps = 0
    env_steps = 0
    for episode in range(episodes):
        agent.begin_episode(derive_stream(eval_seed, f"agent/{seed}/{episode}"), seed, episode)
        obs = env.reset(seed)
        total = 0
        done = False
        last_probs: object = None
        last_entropy = 0.0
        while not done:
            where = f"seed {seed} episode {episode} step {obs.status['step_count']}"
            result = agent.act(obs)
            if isinstance(result, tuple):
                action, probs = result
            else:
                action, probs = result, None
            try:
                act = action_from(action)
            except ContractError as e:
                raise AgentProtocolError(f"{where}: {e}") from None
            if probs is not None:
                if probs is last_probs:
                    entropy = last_entropy
                else:
                    entropy = _checked_entropy(probs, where)
                    last_probs, last_entropy = probs, entropy
                entropy_sum += entropy
                entropy_steps += 1
            obs, reward, done, _ = env.step(act)
            total += reward
            env_steps += 1
        rewards.append(total)
    return seed, tuple(rewards), entropy_sum, entropy_steps, env_steps


def evaluate(
    agent: AgentPolicy,
    seeds: Iterable[int],
    episodes_per_seed: int,
    config: GameConfig | None = None,
    eval_seed: int = 0,
    workers: int = 1,
) -> EvalReport:
    """Run the evaluation protocol; deterministic for a given eval_seed."""
    config = config if config is not None else default_config()
    seed_list = list(seeds)
    if not seed_list:
        raise ValueError("seeds must not be empty")
    if len(set(seed_list)) != len(seed_list):
        raise ValueError("seeds must be distinct")
    if episodes_per_seed < 1:
        raise ValueError(f"episodes_per_seed must be at least 1, got {episodes_per_seed}")

    jobs = [(agent, config, seed, episodes_per_seed, eval_seed) for seed in seed_list]
    if workers <= 1 or len(jobs) == 1:
        results = [_run_seed(job) for job in jobs]
    else:
        with multiprocessing.Pool(processes=min(workers, len(jobs))) as pool:
            results = pool.map(_run_seed, jobs, chunksize=max(1, len(jobs) // (workers * 8)))

    # Merge in ascending seed order so float accumulation never depends on
    # scheduling.
    results.sort(key=lambda r: r[0])
    per_seed: dict[int, SeedResult] = {}
    entropy_sum = 0.0
    entropy_steps = 0
    total_steps = 0
    for seed, rewards, e_sum, e_steps, n_steps in results:
        per_seed[seed] = SeedResult(sum(rewards) / len(rewards), rewards)
        entropy_sum += e_sum
        entropy_steps += e_steps
        total_steps += n_steps

    means = [r.mean_reward for r in per_seed.values()]
    aggregate_mean = sum(means) / len(means)
    variance = sum((m - aggregate_mean) ** 2 for m in means) / len(means)
    return EvalReport(
        per_seed=per_seed,
        episodes_per_seed=episodes_per_seed,
        eval_seed=eval_seed,
        aggregate_mean=aggregate_mean,
        aggregate_std=math.sqrt(variance),
        mean_policy_entropy=(entropy_sum / entropy_steps) if entropy_steps else None,
        total_steps=total_steps,
    )


def record_episode(
    config: GameConfig,
    seed: int,
    agent: AgentPolicy,
    *,
    eval_seed: int = 0,
    episode: int = 0,
    reset_index: int = 0,
) -> str:
    """Play one episode and return its finished replay log text."""
    state = new_game(config, seed, reset_index=reset_index)
    agent.begin_episode(derive_stream(eval_seed, f"agent/{seed}/{episode}"), seed, episode)
    writer = ReplayWriter(config, seed, reset_index=reset_index)
    t = 0
    while not state.done:
        result = agent.act(make_observation(state))
        action = action_from(result[0] if isinstance(result, tuple) else result)
        transition = apply(state, action)
        writer.record(t, ACTION_KEYS[action], transition.reward, transition.done)
        t += 1
    return writer.finish()
