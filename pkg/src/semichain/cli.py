"""Command-line front door.

Subcommands: value, play, sweep, verify, prooflab, adversary, serve.
All outputs are deterministic given flags and seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .arena import GameConfig, Transcript, replay, run_game
from .errors import SemichainError
from .oracle import exhaustive_adversary, min_chain_partition
from .spoiler import SPOILER_MODES, game_value


def _positive(value: str) -> int:
    n = int(value)
    if n < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semichain",
        description="On-line chain partition game on semi-orders",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_value = sub.add_parser("value", help="tabulate the game value")
    p_value.add_argument("--max-w", type=_positive, required=True)

    p_play = sub.add_parser("play", help="run one game and write its transcript")
    p_play.add_argument("--w", type=_positive, required=True)
    p_play.add_argument("--mode", choices=("up_growing", "general"), default="up_growing")
    p_play.add_argument("--spoiler", default="golden")
    p_play.add_argument("--algorithm", default="alg")
    p_play.add_argument("--seed", type=int, default=0)
    p_play.add_argument("--n-points", type=_positive, default=None)
    p_play.add_argument("--out", default=None)

    p_sweep = sub.add_parser("sweep", help="game value sweep over widths")
    p_sweep.add_argument("--max-w", type=_positive, required=True)
    p_sweep.add_argument("--algorithms", default="alg")
    p_sweep.add_argument("--spoiler", default="golden")
    p_sweep.add_argument("--mode", choices=("up_growing", "general"), default="up_growing")
    p_sweep.add_argument("--seed", type=int, default=0)

    p_verify = sub.add_parser("verify", help="re-validate a transcript file")
    p_verify.add_argument("path")

    p_lab = sub.add_parser("prooflab", help="structural diagnostics for a transcript")
    p_lab.add_argument("path")
    p_lab.add_argument("--out", default=None)

    p_adv = sub.add_parser("adversary", help="exhaustive minimum over all replies")
    p_adv.add_argument("--w", type=_positive, required=True)
    p_adv.add_argument("--spoiler", default="golden")
    p_adv.add_argument("--mode", choices=("up_growing", "general"), default=None)

    p_serve = sub.add_parser("serve", help="run the HTTP session service")
    p_serve.add_argument(
        "--port", type=int, default=int(os.environ.get("GC_PORT", "8000"))
    )
    p_serve.add_argument("--host", default="127.0.0.1")

    return parser


def _cmd_value(args) -> int:
    for w in range(1, args.max_w + 1):
        print(f"{w}\t{game_value(w)}")
    return 0


def _cmd_play(args) -> int:
    config = GameConfig(
        mode=args.mode,
        w=args.w,
        spoiler=args.spoiler,
        algorithm=args.algorithm,
        seed=args.seed,
        n_points=args.n_points,
    )
    transcript = run_game(config)
    if args.out:
        transcript.save(args.out)
    else:
        print(transcript.dumps())
    print(f"chains={transcript.chains_used} bound={game_value(args.w)}")
    if transcript.outcome != "completed":
        fault_at = len(transcript.events)
        print(f"{transcript.outcome} at event {fault_at}", file=sys.stderr)
        return 1
    return 0


def _cmd_sweep(args) -> int:
    algorithms = [a for a in args.algorithms.split(",") if a]
    bad = 0
    for w in range(1, args.max_w + 1):
        for algorithm in algorithms:
            config = GameConfig(
                mode=args.mode,
                w=w,
                spoiler=args.spoiler,
                algorithm=algorithm,
                seed=args.seed,
            )
            transcript = run_game(config)
            bound = game_value(w)
            print(f"{w}\t{algorithm}\t{transcript.chains_used}\t{bound}")
            if transcript.outcome != "completed":
                bad += 1
    return 1 if bad else 0


def _cmd_verify(args) -> int:
    verdict = replay(Transcript.load(args.path))
    if verdict.ok:
        print("ok")
        return 0
    where = "" if verdict.event_index is None else f" at event {verdict.event_index}"
    print(f"{verdict.fault}{where}: {verdict.message}")
    return 1


def _cmd_prooflab(args) -> int:
    from .arena import materialize
    from .prooflab import (
        alternating_paths,
        check_bounds,
        check_structure,
        layers,
        path_statistics,
    )

    transcript = Transcript.load(args.path)
    order, _ = materialize(transcript)
    decomposition = layers(transcript)
    opt = min_chain_partition(order)
    paths = alternating_paths(transcript, opt)
    stats = path_statistics(decomposition, paths)
    structure = check_structure(transcript, decomposition, paths, opt)
    bounds = check_bounds(stats, transcript.config.w)
    report = {
        "ok": structure.ok and bounds.ok,
        "up_paths": stats.up_paths,
        "down_paths": stats.down_paths,
        "chains_used": transcript.chains_used,
        "checks": structure.to_json_obj()["checks"] + bounds.to_json_obj()["checks"],
    }
    text = json.dumps(report, separators=(",", ":"))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0 if report["ok"] else 1


def _cmd_adversary(args) -> int:
    mode = args.mode
    if mode is None:
        modes = SPOILER_MODES.get(args.spoiler, frozenset({"up_growing"}))
        mode = "up_growing" if "up_growing" in modes else "general"
    print(exhaustive_adversary(args.spoiler, args.w, mode))
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = {
        "value": _cmd_value,
        "play": _cmd_play,
        "sweep": _cmd_sweep,
        "verify": _cmd_verify,
        "prooflab": _cmd_prooflab,
        "adversary": _cmd_adversary,
        "serve": _cmd_serve,
    }[args.command]
    try:
        return handler(args)
    except SemichainError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(str(exc), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
