"""Command-line front end: ``asymmcts {testbed,match,sweep,scaling}``."""

import argparse
import logging
import sys

from .bandit import BanditPolicy
from .harness import (GAME_DEFAULTS, PRESETS, MatchConfig, default_output_path, games_csv, match_csv,
                      play_match, run_testbed, sweep, sweep_csv, write_results)
from .mcts import Recommend, SearchScheme
from .testbed import Bias, ExperimentConfig, Recommend as TestbedRecommend

log = logging.getLogger("asymmcts")


class ConfigError(Exception):
    pass


def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as e:
        raise ConfigError(f"bad number list {text!r}") from e


def _add_match_args(p: argparse.ArgumentParser):
    p.add_argument("--game", default="go", help="go, nogo or othello")
    p.add_argument("--a-scheme", default="asymmetric", help="engine A: uct, sr_cr or asymmetric")
    p.add_argument("--a-cr", type=float, help="engine A UCB constant (default: tuned per game)")
    p.add_argument("--a-cs", type=float, help="engine A UCB-sqrt constant (default: tuned per game)")
    p.add_argument("--b-scheme", default="uct")
    p.add_argument("--b-c", type=float, help="engine B UCB constant (default: tuned per game)")
    p.add_argument("--b-cs", type=float, help="engine B UCB-sqrt constant, unless B is uct")
    p.add_argument("--preset", choices=sorted(PRESETS), default="desk")
    p.add_argument("--playouts", type=int)
    p.add_argument("--games", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-alternate", action="store_true", help="engine A always plays first")
    p.add_argument("--recommend", choices=["robust", "max_mean"], default="robust")
    p.add_argument("--no-eye-filter", action="store_true", help="Go: let playouts fill own eyes")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", help="output CSV path (default: results/<experiment>/<timestamp>.csv)")


def _match_config(args) -> MatchConfig:
    if args.game not in GAME_DEFAULTS:
        raise ConfigError(f"unknown game {args.game!r}; choose from {sorted(GAME_DEFAULTS)}")
    d = GAME_DEFAULTS[args.game]
    preset = PRESETS[args.preset]

    def scheme(name, c_r, c_s):
        key = name.lower().replace("-", "_")
        if c_r is None:
            c_r = d["asymmetric"][0] if key.startswith("asym") else d["uct"]
        if c_s is None:
            c_s = d["sr_cr_cs"] if key in ("sr_cr", "srcr") else d["asymmetric"][1]
        return SearchScheme.parse(name, c_r, c_s)

    return MatchConfig(
        args.game,
        scheme(args.a_scheme, args.a_cr, args.a_cs),
        scheme(args.b_scheme, args.b_c, args.b_cs),
        playouts=args.playouts if args.playouts is not None else preset["playouts"],
        games=args.games if args.games is not None else preset["games"],
        seed=args.seed,
        alternate_colors=not args.no_alternate,
        recommend=Recommend.ROBUST if args.recommend == "robust" else Recommend.MAX_MEAN,
        eye_filter=not args.no_eye_filter,
    )


def _emit(args, experiment: str, text: str, config: dict):
    path = args.out or default_output_path(experiment)
    write_results(path, text, config)
    print(f"wrote {path}")


def cmd_testbed(args):
    biases = [Bias.ASCENDING, Bias.DESCENDING] if args.bias == "both" else [Bias.parse(args.bias)]
    names = ["ucb", "ucb_sqrt"] if args.policy == "both" else [args.policy]
    config = ExperimentConfig(
        problems=args.problems, arms=args.arms, plays=args.plays, biases=tuple(biases),
        policies=tuple(BanditPolicy.parse(n, args.c) for n in names),
        checkpoints=tuple(int(v) for v in _floats(args.checkpoints)) if args.checkpoints else (),
        seed=args.seed, recommend=TestbedRecommend(args.recommend), index_by=args.index_by,
    )
    if config.problems < 1 or config.arms < 2 or config.plays < config.arms:
        raise ConfigError("need problems >= 1, arms >= 2 and plays >= arms")
    text = run_testbed(config, args.workers)
    _emit(args, "testbed", text, {"experiment": "testbed", **config.to_dict()})


def _report(res):
    lo, hi = res.ci
    print(f"{res.config.engine_a.describe()} vs {res.config.engine_b.describe()} on {res.config.game}, "
          f"{res.config.playouts} playouts: A scores {res.win_rate_a:.4f} +- {res.ci_halfwidth:.4f} "
          f"[{lo:.4f}, {hi:.4f}] over {res.games} games")


def cmd_match(args):
    config = _match_config(args)

    def progress(rec):
        log.info("game %d: A as %s, %d moves, %s", rec.index, rec.a_color, rec.moves, rec.outcome)

    res = play_match(config, args.workers, progress)
    _report(res)
    meta = {"experiment": "match", **config.to_dict()}
    if args.per_game:
        meta["per_game_csv"] = games_csv(res)
    _emit(args, "match", match_csv(res), meta)


def _cmd_sweep(args, parameter, values, experiment):
    base = _match_config(args)
    if parameter == "playouts" and any(v < 1 or v != int(v) for v in values):
        raise ConfigError("playouts must be positive integers")
    if parameter != "playouts" and any(v <= 0 for v in values):
        raise ConfigError("constants must be positive")
    rows = sweep(base, parameter, [int(v) if parameter == "playouts" else v for v in values], args.workers)
    for _, res in rows:
        _report(res)
    meta = {"experiment": experiment, "parameter": parameter, "values": values, **base.to_dict()}
    _emit(args, experiment, sweep_csv(parameter, rows), meta)


def cmd_sweep(args):
    if args.param not in ("c", "c_r", "c_s", "playouts"):
        raise ConfigError(f"unknown sweep parameter {args.param!r}")
    _cmd_sweep(args, args.param, _floats(args.values), "sweep")


def cmd_scaling(args):
    _cmd_sweep(args, "playouts", _floats(args.playouts_list), "scaling")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="asymmcts", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("testbed", help="biased-reward bandit experiment")
    p.add_argument("--problems", type=int, default=200)
    p.add_argument("--arms", type=int, default=20)
    p.add_argument("--plays", type=int, default=2000)
    p.add_argument("--bias", choices=["ascending", "descending", "none", "both"], default="both")
    p.add_argument("--policy", choices=["ucb", "ucb_sqrt", "both"], default="both")
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--checkpoints", help="comma-separated plays to report (default: 100 even steps)")
    p.add_argument("--recommend", choices=["empirical_best", "most_pulled"], default="empirical_best")
    p.add_argument("--index-by", choices=["pull", "play"], default="play",
                   help="serve an arm's k-th sorted reward at its k-th pull or at play k")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_testbed)

    p = sub.add_parser("match", help="engine A vs engine B tournament")
    _add_match_args(p)
    p.add_argument("--per-game", action="store_true", help="store per-game records in the JSON sidecar")
    p.set_defaults(func=cmd_match)

    p = sub.add_parser("sweep", help="one match per value of a constant")
    _add_match_args(p)
    p.add_argument("--param", required=True, help="c (engine B), c_r or c_s (engine A), or playouts")
    p.add_argument("--values", required=True, help="comma-separated values")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("scaling", help="one match per playout budget")
    _add_match_args(p)
    p.add_argument("--playouts-list", required=True, help="comma-separated playout budgets")
    p.set_defaults(func=cmd_scaling)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        args.func(args)
    except (ConfigError, ValueError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
