"""Shared plumbing for the two enumeration engines: budgets, stats, results."""

import time
from dataclasses import dataclass, field


@dataclass(frozen=True)
class Budget:
    """Resource cap for a whole enumeration run. None means unlimited."""

    max_conflicts: int | None = None
    max_ms: float | None = None

    def __post_init__(self):
        if self.max_conflicts is not None and self.max_conflicts < 0:
            raise ValueError("max_conflicts must be >= 0")
        if self.max_ms is not None and self.max_ms < 0:
            raise ValueError("max_ms must be >= 0")


class BudgetClock:
    """Running countdown against a Budget, shared by all solve calls of a run."""

    def __init__(self, budget: Budget | None):
        self.budget = budget or Budget()
        self.start = time.perf_counter()
        self.conflicts = 0

    @property
    def elapsed_ms(self) -> float:
        return (time.perf_counter() - self.start) * 1000.0

    @property
    def deadline(self) -> float | None:
        if self.budget.max_ms is None:
            return None
        return self.start + self.budget.max_ms / 1000.0

    def conflicts_left(self) -> int | None:
        if self.budget.max_conflicts is None:
            return None
        return max(0, self.budget.max_conflicts - self.conflicts)

    def exhausted(self) -> bool:
        if self.budget.max_conflicts is not None and self.conflicts >= self.budget.max_conflicts:
            return True
        deadline = self.deadline
        return deadline is not None and time.perf_counter() >= deadline


@dataclass
class SearchStats:
    """Effort counters for an enumeration run.

    The SAT engine counts solver invocations, conflicts and decisions; the
    branch-and-bound engine reports decision nodes in `decisions`, failure
    leaves in `conflicts`, and search segments (initial descent plus one per
    replay) in `solve_calls`.
    """

    solve_calls: int = 0
    conflicts: int = 0
    decisions: int = 0
    minimize_steps: int = 0
    elapsed_ms: float = 0.0
    timed_out: bool = False


@dataclass
class EnumerationResult:
    """Minimal place sets in discovery order, plus how hard they were to find."""

    sets: list[frozenset[int]] = field(default_factory=list)
    stats: SearchStats = field(default_factory=SearchStats)

    @property
    def complete(self) -> bool:
        return not self.stats.timed_out

    def __len__(self) -> int:
        return len(self.sets)
