"""Bandit indices and arm selection.

Two confidence-bound indices share the same exploitation term, the
running mean reward ``w`` of an arm, and differ in the exploration bonus:

* ``UCB``: ``w + c * sqrt(ln(t) / t_i)``, targeting cumulative regret;
* ``UCB_SQRT``: ``w + c * sqrt(sqrt(t) / t_i)``, whose bonus shrinks more
  slowly and therefore spreads pulls, targeting simple regret.

The index functions are compiled so search kernels call the very same
code as Python callers.
"""

import math
from dataclasses import dataclass
from enum import IntEnum

from numba import njit


class IndexKind(IntEnum):
    UCB = 0
    UCB_SQRT = 1


@njit(cache=True)
def ucb_index(w, t_i, t, c):
    if t_i < 1 or t < 1:
        raise ValueError("index needs t_i >= 1 and t >= 1")
    return w + c * math.sqrt(math.log(t) / t_i)


@njit(cache=True)
def ucb_sqrt_index(w, t_i, t, c):
    if t_i < 1 or t < 1:
        raise ValueError("index needs t_i >= 1 and t >= 1")
    return w + c * math.sqrt(math.sqrt(t) / t_i)


@njit(cache=True)
def bandit_index(kind, w, t_i, t, c):
    if kind == 0:
        return ucb_index(w, t_i, t, c)
    return ucb_sqrt_index(w, t_i, t, c)


@dataclass(frozen=True)
class ArmStats:
    """Running mean reward and pull count of one arm.

    ``mean_reward`` is meaningless while ``pulls == 0``.
    """

    mean_reward: float = 0.0
    pulls: int = 0


@dataclass(frozen=True)
class BanditPolicy:
    kind: IndexKind
    c: float = 1.0

    def __post_init__(self):
        if not self.c > 0:
            raise ValueError(f"exploration constant must be positive, got {self.c}")

    @classmethod
    def parse(cls, name: str, c: float = 1.0) -> "BanditPolicy":
        key = name.strip().lower().replace("-", "_").replace("√", "_sqrt")
        kinds = {"ucb": IndexKind.UCB, "ucb_sqrt": IndexKind.UCB_SQRT, "ucbsqrt": IndexKind.UCB_SQRT}
        if key not in kinds:
            raise ValueError(f"unknown policy {name!r}")
        return cls(kinds[key], c)

    @property
    def name(self) -> str:
        return "ucb" if self.kind == IndexKind.UCB else "ucb_sqrt"

    def index(self, w: float, t_i: int, t: int) -> float:
        return bandit_index(int(self.kind), w, t_i, t, self.c)


def _pick(candidates, rng):
    # a draw is consumed only when there is an actual tie
    if len(candidates) == 1:
        return candidates[0]
    return candidates[int(rng.integers(0, len(candidates)))]


def select_arm(stats, policy: BanditPolicy, t: int, rng) -> int:
    """Arm to pull next.

    Unpulled arms have absolute priority (uniform among them); otherwise the
    arm maximising the policy's index, ties broken uniformly by ``rng``.
    """
    if len(stats) == 0:
        raise ValueError("no arms")
    fresh = [i for i, s in enumerate(stats) if s.pulls == 0]
    if fresh:
        return _pick(fresh, rng)
    scores = [policy.index(s.mean_reward, s.pulls, t) for s in stats]
    best = max(scores)
    return _pick([i for i, v in enumerate(scores) if v == best], rng)


def update_arm(stats: ArmStats, reward: float) -> ArmStats:
    n = stats.pulls
    if n == 0:
        return ArmStats(float(reward), 1)
    return ArmStats((stats.mean_reward * n + reward) / (n + 1), n + 1)
