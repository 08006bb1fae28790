"""Biased-reward K-armed Gaussian bandit testbed.

Each problem draws K true means from N(0, 1). For every arm a reward
sequence of length T is pre-drawn from N(mean, 1) and optionally sorted
ascending or descending. With ``index_by="pull"`` the k-th pull of an arm
consumes element k of its sequence; with ``index_by="play"`` (the
experiment default) an arm pulled at play t serves its element t. Either
way every arm's served rewards are monotone, modelling the drifting
reward streams a tree node sees while its subtree is still being expanded.
"""

import csv
import io
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from numba import njit

from .bandit import BanditPolicy, IndexKind, bandit_index


class Bias(Enum):
    NONE = "none"
    ASCENDING = "ascending"
    DESCENDING = "descending"

    @classmethod
    def parse(cls, text):
        if isinstance(text, Bias):
            return text
        return cls(text.strip().lower())


class Recommend(Enum):
    EMPIRICAL_BEST = "empirical_best"
    MOST_PULLED = "most_pulled"


@dataclass(frozen=True)
class MabProblem:
    true_means: np.ndarray
    optimal_arm: int

    @classmethod
    def from_means(cls, means) -> "MabProblem":
        means = np.asarray(means, dtype=np.float64)
        if means.ndim != 1 or len(means) < 2:
            raise ValueError("a problem needs at least two arms")
        # argmax returns the lowest index on exact ties
        return cls(means, int(np.argmax(means)))

    @property
    def arms(self) -> int:
        return len(self.true_means)


@dataclass(frozen=True)
class RewardStream:
    per_arm: np.ndarray  # (K, T)
    bias: Bias

    @classmethod
    def from_draws(cls, draws, bias) -> "RewardStream":
        draws = np.asarray(draws, dtype=np.float64)
        if draws.ndim == 1:
            draws = draws[None, :]
        bias = Bias.parse(bias)
        if bias is Bias.ASCENDING:
            draws = np.sort(draws, axis=1)
        elif bias is Bias.DESCENDING:
            draws = np.sort(draws, axis=1)[:, ::-1]
        return cls(np.ascontiguousarray(draws), bias)


@dataclass
class PlayLog:
    chosen: np.ndarray
    rewards: np.ndarray
    recommendation_at: dict = field(default_factory=dict)


def generate_problem(K: int, rng: np.random.Generator) -> MabProblem:
    if K < 2:
        raise ValueError(f"need K >= 2 arms, got {K}")
    return MabProblem.from_means(rng.standard_normal(K))


def generate_stream(problem: MabProblem, T: int, bias, rng: np.random.Generator) -> RewardStream:
    if T < 1:
        raise ValueError("T must be positive")
    draws = rng.normal(problem.true_means[:, None], 1.0, size=(problem.arms, T))
    return RewardStream.from_draws(draws, bias)


@njit(cache=True)
def _recommend(mean, pulls, rule):
    best = 0
    for a in range(1, mean.shape[0]):
        if rule == 0:
            better = mean[a] > mean[best] or (mean[a] == mean[best] and pulls[a] > pulls[best])
        else:
            better = pulls[a] > pulls[best] or (pulls[a] == pulls[best] and mean[a] > mean[best])
        if better:
            best = a
    return best


@njit(cache=True)
def _play(stream, kind, c, T, checkpoints, rng, rule, by_play, chosen, rewards, recs):
    K = stream.shape[0]
    mean = np.zeros(K)
    pulls = np.zeros(K, dtype=np.int64)
    scores = np.empty(K)
    ci = 0
    for play in range(1, T + 1):
        if play <= K:
            arm = play - 1
        else:
            t = play - 1
            top = -np.inf
            for a in range(K):
                scores[a] = bandit_index(kind, mean[a], pulls[a], t, c)
                if scores[a] > top:
                    top = scores[a]
            ties = 0
            for a in range(K):
                if scores[a] == top:
                    ties += 1
            k = 0 if ties == 1 else rng.integers(0, ties)
            arm = -1
            for a in range(K):
                if scores[a] == top:
                    if k == 0:
                        arm = a
                        break
                    k -= 1
        n = pulls[arm]
        r = stream[arm, play - 1] if by_play else stream[arm, n]
        mean[arm] = (mean[arm] * n + r) / (n + 1)
        pulls[arm] = n + 1
        chosen[play - 1] = arm
        rewards[play - 1] = r
        while ci < checkpoints.shape[0] and checkpoints[ci] == play:
            recs[ci] = _recommend(mean, pulls, rule)
            ci += 1


def run_policy(stream: RewardStream, problem: MabProblem, policy: BanditPolicy, T: int,
               checkpoints, rng, recommend=Recommend.EMPIRICAL_BEST, index_by="pull") -> PlayLog:
    """Play ``T`` rounds: one pull per arm in index order, then index-driven."""
    K = problem.arms
    if T < K:
        raise ValueError(f"T={T} is shorter than the {K}-pull initialisation")
    if stream.per_arm.shape[1] < T:
        raise ValueError("reward stream shorter than T")
    cps = np.unique(np.asarray(list(checkpoints), dtype=np.int64))
    if len(cps) and (cps[0] < 1 or cps[-1] > T):
        raise ValueError("checkpoints must lie in [1, T]")
    if index_by not in ("pull", "play"):
        raise ValueError(f"index_by must be 'pull' or 'play', got {index_by!r}")
    rule = 0 if Recommend(recommend) is Recommend.EMPIRICAL_BEST else 1
    chosen = np.empty(T, dtype=np.int64)
    rewards = np.empty(T)
    recs = np.empty(len(cps), dtype=np.int64)
    _play(stream.per_arm, int(policy.kind), float(policy.c), T, cps, rng, rule, index_by == "play",
          chosen, rewards, recs)
    return PlayLog(chosen, rewards, dict(zip(cps.tolist(), recs.tolist())))


def cumulative_regret(log: PlayLog, problem: MabProblem) -> np.ndarray:
    """Expected-value regret: gaps of the chosen arms' true means, summed."""
    gaps = problem.true_means.max() - problem.true_means[log.chosen]
    return np.cumsum(gaps)


def simple_regret(log: PlayLog, problem: MabProblem, checkpoint: int) -> float:
    if checkpoint not in log.recommendation_at:
        raise KeyError(f"no recommendation recorded at play {checkpoint}")
    arm = log.recommendation_at[checkpoint]
    return float(problem.true_means.max() - problem.true_means[arm])


# -- experiment runner --------------------------------------------------------

def default_checkpoints(T: int, n: int = 100) -> list[int]:
    step = max(1, T // n)
    points = set(range(step, T + 1, step))
    points.update({1, T})
    return sorted(points)


@dataclass
class ExperimentConfig:
    problems: int = 2000
    arms: int = 20
    plays: int = 5000
    biases: tuple = (Bias.ASCENDING, Bias.DESCENDING)
    policies: tuple = (BanditPolicy(IndexKind.UCB, 1.0), BanditPolicy(IndexKind.UCB_SQRT, 1.0))
    checkpoints: tuple = ()
    seed: int = 0
    recommend: Recommend = Recommend.EMPIRICAL_BEST
    index_by: str = "play"

    def resolved_checkpoints(self) -> list[int]:
        return sorted(set(self.checkpoints)) if self.checkpoints else default_checkpoints(self.plays)

    def to_dict(self) -> dict:
        return {
            "problems": self.problems,
            "arms": self.arms,
            "plays": self.plays,
            "biases": [Bias.parse(b).value for b in self.biases],
            "policies": [{"policy": p.name, "c": p.c} for p in self.policies],
            "checkpoints": self.resolved_checkpoints(),
            "seed": self.seed,
            "recommend": Recommend(self.recommend).value,
            "index_by": self.index_by,
        }


@dataclass
class MetricRow:
    policy: str
    bias: str
    play: int
    optimal_pct: float
    cum_regret: float
    simple_regret: float


def _problem_metrics(config: ExperimentConfig, p: int, cps: np.ndarray):
    """Per-problem (optimal hit, cumulative regret, simple regret) at each checkpoint."""
    base = np.random.SeedSequence(config.seed, spawn_key=(p,))
    draw_seq, *run_seqs = base.spawn(1 + len(config.biases) * len(config.policies))
    draw_rng = np.random.default_rng(draw_seq)
    problem = generate_problem(config.arms, draw_rng)
    raw = draw_rng.normal(problem.true_means[:, None], 1.0, size=(config.arms, config.plays))
    out = np.empty((len(config.biases), len(config.policies), 3, len(cps)))
    for bi, bias in enumerate(config.biases):
        stream = RewardStream.from_draws(raw, bias)
        for pi, policy in enumerate(config.policies):
            rng = np.random.default_rng(run_seqs[bi * len(config.policies) + pi])
            log = run_policy(stream, problem, policy, config.plays, cps, rng, config.recommend,
                             config.index_by)
            out[bi, pi, 0] = log.chosen[cps - 1] == problem.optimal_arm
            out[bi, pi, 1] = cumulative_regret(log, problem)[cps - 1]
            out[bi, pi, 2] = [simple_regret(log, problem, int(c)) for c in cps]
    return out


def _chunk(args):
    config, lo, hi, cps = args
    return np.stack([_problem_metrics(config, p, cps) for p in range(lo, hi)])


def run_experiment(config: ExperimentConfig, workers: int = 1) -> list[MetricRow]:
    """Average optimal-arm percentage, cumulative and simple regret over problems.

    Results depend only on the config: each problem seeds its own streams
    from ``(seed, problem index)``, so ``workers`` never changes the output.
    """
    if config.problems < 1:
        raise ValueError("need at least one problem")
    cps = np.asarray(config.resolved_checkpoints(), dtype=np.int64)
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        bounds = np.linspace(0, config.problems, workers + 1).astype(int)
        jobs = [(config, lo, hi, cps) for lo, hi in zip(bounds[:-1], bounds[1:]) if hi > lo]
        with ProcessPoolExecutor(workers) as pool:
            per_problem = np.concatenate(list(pool.map(_chunk, jobs)))
    else:
        per_problem = _chunk((config, 0, config.problems, cps))
    means = per_problem.mean(axis=0)
    rows = []
    for pi, policy in enumerate(config.policies):
        for bi, bias in enumerate(config.biases):
            for ci, play in enumerate(cps.tolist()):
                hit, cr, sr = means[bi, pi, :, ci]
                rows.append(MetricRow(policy.name, Bias.parse(bias).value, play, 100.0 * hit, cr, sr))
    return rows


CSV_COLUMNS = ("policy", "bias", "play", "optimal_pct", "cum_regret", "simple_regret")


def _g6(x: float) -> str:
    return format(x, ".6g")


def metrics_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in rows:
        writer.writerow([r.policy, r.bias, r.play, _g6(r.optimal_pct), _g6(r.cum_regret), _g6(r.simple_regret)])
    return buf.getvalue()


def final_row(rows, policy: str, bias: str) -> MetricRow:
    candidates = [r for r in rows if r.policy == policy and r.bias == bias]
    return max(candidates, key=lambda r: r.play)
