"""Engine-vs-engine matches, parameter sweeps and result files.

Game ``i`` of a match draws all its randomness from
``SeedSequence(seed, spawn_key=(i,))``, so a match gives the same result
whatever the number of worker processes or their scheduling order.
"""

import csv
import io
import json
import math
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from pathlib import Path
from statistics import NormalDist

import numpy as np

from .games import GAMES, make_game
from .games.base import Outcome, Player, reward
from .mcts import Recommend, Scheme, SearchScheme, run_search
from .testbed import ExperimentConfig, metrics_csv, run_experiment

# tuned constants: (ASYMMETRIC c_r, c_s), UCT c, SR_CR root c_s
GAME_DEFAULTS = {
    "go": {"asymmetric": (0.5, 0.4), "uct": 0.3, "sr_cr_cs": 0.9},
    "nogo": {"asymmetric": (0.5, 0.4), "uct": 0.4, "sr_cr_cs": 0.9},
    "othello": {"asymmetric": (0.7, 0.4), "uct": 0.6, "sr_cr_cs": 0.4},
}

PRESETS = {
    "desk": {"games": 200, "playouts": 1000},
    "full": {"games": 2300, "playouts": 5000},
}

SWEEP_PARAMS = ("c", "c_r", "c_s", "playouts")


def win_rate_ci(successes: float, n: int, confidence: float = 0.95) -> tuple[float, float]:
    """Normal-approximation binomial interval: ``(p, z * sqrt(p (1 - p) / n))``.

    >>> p, h = win_rate_ci(1150, 2300)
    >>> round(h, 5)
    0.02043
    """
    if n <= 0:
        raise ValueError("n must be positive")
    if not 0 <= successes <= n:
        raise ValueError("successes must lie in [0, n]")
    if not 0 < confidence < 1:
        raise ValueError("confidence must lie in (0, 1)")
    z = NormalDist().inv_cdf(0.5 + confidence / 2)
    p = successes / n
    return p, z * math.sqrt(p * (1 - p) / n)


@dataclass(frozen=True)
class MatchConfig:
    game: str
    engine_a: SearchScheme
    engine_b: SearchScheme
    playouts: int = 1000
    games: int = 200
    seed: int = 0
    alternate_colors: bool = True
    recommend: Recommend = Recommend.ROBUST
    eye_filter: bool = True  # Go playouts only

    def __post_init__(self):
        if self.game not in GAMES:
            raise ValueError(f"unknown game {self.game!r}; choose from {sorted(GAMES)}")
        if self.games < 1:
            raise ValueError("games must be at least 1")
        if self.playouts < 1:
            raise ValueError("playouts must be at least 1")

    @classmethod
    def default(cls, game: str, **kw) -> "MatchConfig":
        """ASYMMETRIC vs UCT with the game's tuned constants."""
        d = GAME_DEFAULTS[game]
        return cls(game, SearchScheme.asymmetric(*d["asymmetric"]), SearchScheme.uct(d["uct"]), **kw)

    def to_dict(self) -> dict:
        def scheme(s):
            out = {"scheme": s.kind.name.lower(), "c_r": s.c_r}
            if s.kind != Scheme.UCT:
                out["c_s"] = s.c_s
            return out

        return {
            "game": self.game,
            "engine_a": scheme(self.engine_a),
            "engine_b": scheme(self.engine_b),
            "playouts": self.playouts,
            "games": self.games,
            "seed": self.seed,
            "alternate_colors": self.alternate_colors,
            "recommend": Recommend(self.recommend).name.lower(),
            "eye_filter": self.eye_filter,
        }

    def make_game(self):
        if self.game == "go":
            return make_game("go", eye_filter=self.eye_filter)
        return make_game(self.game)


@dataclass(frozen=True)
class GameRecord:
    index: int
    a_color: str
    moves: int
    outcome: str
    score_a: float


@dataclass
class MatchResult:
    config: MatchConfig
    wins_a: int
    wins_b: int
    draws: int
    win_rate_a: float
    ci_halfwidth: float
    per_game: list = field(default_factory=list)

    @property
    def games(self) -> int:
        return self.wins_a + self.wins_b + self.draws

    @property
    def ci(self) -> tuple[float, float]:
        return self.win_rate_a - self.ci_halfwidth, self.win_rate_a + self.ci_halfwidth


def play_game(game, black: SearchScheme, white: SearchScheme, playouts: int, rng,
              recommend=Recommend.ROBUST):
    """Play one game with a fresh search per move; returns (Outcome, move count)."""
    state = game.initial_state()
    moves = 0
    while not game.is_terminal(state):
        scheme = black if game.to_move(state) == Player.FIRST else white
        result = run_search(game, state, scheme, playouts, rng, recommend)
        state = game.apply(state, result.best_move)
        moves += 1
    return Outcome.from_value(game.terminal_value(state)), moves


def game_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def _one_game(config: MatchConfig, i: int) -> GameRecord:
    game = config.make_game()
    a_black = i % 2 == 0 or not config.alternate_colors
    black, white = (config.engine_a, config.engine_b) if a_black else (config.engine_b, config.engine_a)
    outcome, n = play_game(game, black, white, config.playouts, game_rng(config.seed, i), config.recommend)
    a_player = Player.FIRST if a_black else Player.SECOND
    return GameRecord(i, "black" if a_black else "white", n, outcome.name.lower(), reward(outcome, a_player))


def _games_chunk(args):
    config, indices = args
    return [_one_game(config, i) for i in indices]


def play_match(config: MatchConfig, workers: int = 1, progress=None) -> MatchResult:
    indices = list(range(config.games))
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        jobs = [(config, indices[k::workers]) for k in range(workers)]
        with ProcessPoolExecutor(workers) as pool:
            records = [r for chunk in pool.map(_games_chunk, jobs) for r in chunk]
        records.sort(key=lambda r: r.index)
    else:
        records = []
        for i in indices:
            records.append(_one_game(config, i))
            if progress:
                progress(records[-1])
    return summarize(config, records)


def summarize(config: MatchConfig, records) -> MatchResult:
    wins_a = sum(r.score_a == 1.0 for r in records)
    wins_b = sum(r.score_a == 0.0 for r in records)
    draws = len(records) - wins_a - wins_b
    p, h = win_rate_ci(wins_a + 0.5 * draws, len(records))
    return MatchResult(config, wins_a, wins_b, draws, p, h, list(records))


def with_parameter(base: MatchConfig, parameter: str, value) -> MatchConfig:
    """``c`` is engine B's UCT constant; ``c_r``/``c_s`` belong to engine A."""
    if parameter == "playouts":
        return replace(base, playouts=int(value))
    if parameter == "c":
        return replace(base, engine_b=replace(base.engine_b, c_r=float(value)))
    if parameter in ("c_r", "c_s"):
        return replace(base, engine_a=replace(base.engine_a, **{parameter: float(value)}))
    raise ValueError(f"unknown sweep parameter {parameter!r}; choose from {SWEEP_PARAMS}")


def sweep(base: MatchConfig, parameter: str, values, workers: int = 1) -> list[tuple]:
    """One match per value; every row reuses the base seed."""
    if parameter not in SWEEP_PARAMS:
        raise ValueError(f"unknown sweep parameter {parameter!r}; choose from {SWEEP_PARAMS}")
    configs = [(v, with_parameter(base, parameter, v)) for v in values]
    return [(v, play_match(cfg, workers)) for v, cfg in configs]


def scaling(base: MatchConfig, playouts_list, workers: int = 1) -> list[tuple]:
    return sweep(base, "playouts", playouts_list, workers)


def run_testbed(config: ExperimentConfig, workers: int = 1) -> str:
    return metrics_csv(run_experiment(config, workers))


# -- serialisation ------------------------------------------------------------

def _g6(x) -> str:
    return format(float(x), ".6g")


MATCH_COLUMNS = ("game", "engine_a", "engine_b", "playouts", "games", "wins_a", "wins_b", "draws",
                 "win_rate_a", "ci_halfwidth", "ci_low", "ci_high")
SWEEP_COLUMNS = ("parameter", "value") + MATCH_COLUMNS


def _match_fields(res: MatchResult) -> list:
    c = res.config
    lo, hi = res.ci
    return [c.game, c.engine_a.describe(), c.engine_b.describe(), c.playouts, res.games, res.wins_a,
            res.wins_b, res.draws, _g6(res.win_rate_a), _g6(res.ci_halfwidth), _g6(lo), _g6(hi)]


def _csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def match_csv(result: MatchResult) -> str:
    return _csv(MATCH_COLUMNS, [_match_fields(result)])


def games_csv(result: MatchResult) -> str:
    rows = [[r.index, r.a_color, r.moves, r.outcome, _g6(r.score_a)] for r in result.per_game]
    return _csv(("index", "a_color", "moves", "outcome", "score_a"), rows)


def sweep_csv(parameter: str, rows) -> str:
    return _csv(SWEEP_COLUMNS, [[parameter, _g6(v)] + _match_fields(res) for v, res in rows])


def default_output_path(experiment: str, root="results") -> Path:
    stamp = datetime.now(timezone.utc).strftime("%Y%m%dT%H%M%S%fZ")
    return Path(root) / experiment / f"{stamp}.csv"


def write_results(path, csv_text: str, config: dict) -> Path:
    """Write ``csv_text`` to ``path`` and the resolved config to ``path`` + ``.json``."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(csv_text)
    sidecar = path.with_name(path.name + ".json")
    with open(sidecar, "w", encoding="utf-8", newline="") as f:
        f.write(json.dumps(config, indent=2, sort_keys=True) + "\n")
    return path
