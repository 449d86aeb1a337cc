"""Search configuration, per-start seeding and order-independent merging."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from typing import Callable, Sequence

import numpy as np

from ..errors import DomainError


@dataclass(frozen=True)
class SearchConfig:
    seed: int = 0
    starts: int = 64
    inner_iterations: int = 150
    initial_step: float = 0.2
    shrink_factor: float = 0.5
    penalty_rounds: int = 7
    workers: int = 1

    def __post_init__(self):
        if not (0 <= int(self.seed) < 2**64):
            raise DomainError("seed must be a 64-bit unsigned integer")
        if self.starts < 1 or self.inner_iterations < 1 or self.penalty_rounds < 1:
            raise DomainError("starts, inner_iterations and penalty_rounds must be >= 1")
        if not (0.0 < self.shrink_factor < 1.0):
            raise DomainError("shrink_factor must lie in (0, 1)")
        if not self.initial_step > 0.0:
            raise DomainError("initial_step must be positive")
        if self.workers < 1:
            raise DomainError("workers must be >= 1")

    def with_(self, **changes) -> "SearchConfig":
        return replace(self, **changes)

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass
class SearchResult:
    best_value: float
    best_points: np.ndarray
    feasible: bool
    per_start_values: list[float]
    evaluations: int
    max_violation: float = 0.0
    extra: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "bestValue": self.best_value,
            "bestPoints": self.best_points.tolist(),
            "feasible": self.feasible,
            "maxViolation": self.max_violation,
            "perStartValues": list(self.per_start_values),
            "evaluations": self.evaluations,
        }


def start_rng(seed: int, start: int) -> np.random.Generator:
    """Independent stream for one start; depends only on (seed, start)."""
    return np.random.default_rng(np.random.SeedSequence([int(seed), int(start)]))


def penalty_schedule(rounds: int, first: float = 1e2, last: float = 1e8) -> list[float]:
    if rounds == 1:
        return [last]
    return list(np.geomspace(first, last, rounds))


def run_starts(task: Callable, args: Sequence[tuple], workers: int = 1) -> list:
    """Evaluate ``task(*a)`` for every argument tuple, preserving order."""
    if workers <= 1 or len(args) <= 1:
        return [task(*a) for a in args]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(task, *a) for a in args]
        return [f.result() for f in futures]


def merge_best(values: Sequence[float]) -> int:
    """Index of the maximum; ties go to the lowest start index."""
    best = 0
    for i, v in enumerate(values):
        if v > values[best]:
            best = i
    return best
