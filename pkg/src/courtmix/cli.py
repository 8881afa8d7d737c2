"""``courtmix`` command line.

Exit codes: 0 success, 1 a verification failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import analytics, chains, verify
from .court import Configuration, IllegalStep, InvalidConfiguration, reference_configuration
from .dsl import SequenceSyntaxError, UnknownMacro, apply_sequence, step_count

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2

CHAINS = {
    "friend": chains.build_friend_chain,
    "big-friend": chains.build_big_friend_chain,
    "lazy": chains.build_lazy_cyclic_walk_chain,
}


class InputError(Exception):
    pass


def _round(obj):
    """Floats to 6 significant digits, recursively, for stable JSON."""
    if isinstance(obj, float):
        return float(f"{obj:.6g}")
    if isinstance(obj, dict):
        return {k: _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    return obj


def _dump(obj) -> str:
    return json.dumps(_round(obj), indent=2)


def _emit_records(records: list[dict], fmt: str) -> str:
    if fmt == "csv":
        return analytics.records_to_csv(records).rstrip("\n")
    return _dump(records)


def _default_seed(fallback: int = 0) -> int:
    raw = os.environ.get("COURTMIX_SEED")
    if raw is None:
        return fallback
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"COURTMIX_SEED must be an integer, not {raw!r}") from None


def _load_state(path: str | None) -> Configuration:
    if path is None:
        return reference_configuration()
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read state file: {exc}") from None
    try:
        return Configuration.from_json(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: not valid JSON ({exc})") from None
    except InvalidConfiguration as exc:
        where = f" (position {exc.position})" if exc.position is not None else ""
        raise InputError(f"{path}: {exc}{where}") from None


# -- commands ----------------------------------------------------------------


def cmd_tables(args) -> tuple[str, int]:
    if args.table == "distances":
        report = analytics.distance_table(CHAINS[args.chain](), args.max_n)
        return _emit_records(report.as_records(), args.format), EXIT_OK
    friend = chains.build_friend_chain()
    if args.table == "mean-games":
        return _emit_records(analytics.mean_games_table(friend, args.horizon), args.format), EXIT_OK
    if args.table == "never":
        return _emit_records(analytics.never_table(friend, args.event, args.horizon), args.format), EXIT_OK
    records = [
        {"event": e, "games": args.games, "probability": analytics.independent_baseline(e, args.games)}
        for e in ("never_opposite", "never_same")
    ]
    return _emit_records(records, args.format), EXIT_OK


def cmd_simulate(args) -> tuple[str, int]:
    from .dynamics import estimate_encounter_all

    seed = args.seed if args.seed is not None else _default_seed()
    est = estimate_encounter_all(args.court, args.games, args.trials, seed=seed, workers=args.workers)
    return _dump(est.as_dict()), EXIT_OK


def cmd_apply(args) -> tuple[str, int]:
    start = _load_state(args.state)
    try:
        result = apply_sequence(start, args.sequence)
        n = step_count(args.sequence)
    except (SequenceSyntaxError, UnknownMacro, IllegalStep) as exc:
        raise InputError(str(exc)) from None
    if args.pretty:
        return result.configuration.pretty(), EXIT_OK
    out = {
        "configuration": list(result.configuration.seating),
        "steps": n,
        "pending": {q.value: k for q, k in result.pending.items()},
    }
    return json.dumps(out), EXIT_OK


def cmd_plan(args) -> tuple[str, int]:
    from .planner import plan_to_reference

    start = _load_state(args.state)
    plan = plan_to_reference(start)
    ok = plan.verify()
    out = {
        "steps": len(plan),
        "verified": ok,
        "provenance": [{"label": lab, "start": a, "end": b} for lab, a, b in plan.provenance],
    }
    if args.emit_sequence:
        out["sequence"] = plan.text()
    if args.pretty:
        out["start"] = start.pretty()
    return _dump(out), EXIT_OK if ok else EXIT_FAILED


def cmd_verify(args) -> tuple[str, int]:
    seed = args.seed if args.seed is not None else _default_seed(verify.DEFAULT_SEED)
    runners = {
        "all": lambda: verify.verify_all(args.trials, seed),
        "irreducibility": lambda: verify.verify_irreducibility_suite(args.trials, seed),
        "aperiodicity": verify.verify_aperiodicity,
        "friend-matrix": verify.verify_friend_matrix,
        "lumpability": lambda: verify.verify_lumpability(seed),
    }
    cert = runners[args.target]()
    return _dump(cert), EXIT_OK if cert["pass"] else EXIT_FAILED


def cmd_export_chain(args) -> tuple[str, int]:
    chain = CHAINS[args.chain]()
    if args.format == "csv":
        return chain.to_csv().rstrip("\n"), EXIT_OK
    return chain.to_json(indent=None), EXIT_OK


# -- parser ------------------------------------------------------------------


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {n}")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="courtmix", description="Volleyball team-mixing chain toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("tables", help="emit the analytic tables")
    tsub = t.add_subparsers(dest="table", required=True)
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("csv", "json"), default="csv")
    d = tsub.add_parser("distances", parents=[fmt])
    d.add_argument("--chain", choices=tuple(CHAINS), default="friend")
    d.add_argument("--max-n", type=_positive, default=9)
    m = tsub.add_parser("mean-games", parents=[fmt])
    m.add_argument("--horizon", type=_positive, default=8)
    n = tsub.add_parser("never", parents=[fmt])
    n.add_argument("--event", choices=("opponent", "teammate"), required=True)
    n.add_argument("--horizon", type=_positive, default=8)
    b = tsub.add_parser("baselines", parents=[fmt])
    b.add_argument("--games", type=_positive, default=8)
    t.set_defaults(func=cmd_tables)

    s = sub.add_parser("simulate", help="Monte Carlo estimates")
    ssub = s.add_subparsers(dest="observable", required=True)
    e = ssub.add_parser("encounter-all")
    e.add_argument("--court", choices=("first", "second"), default="first")
    e.add_argument("--games", type=_positive, default=8)
    e.add_argument("--trials", type=_positive, default=1_000_000)
    e.add_argument("--seed", type=int, default=None)
    e.add_argument("--workers", type=_positive, default=1)
    s.set_defaults(func=cmd_simulate)

    a = sub.add_parser("apply", help="apply a move sequence")
    a.add_argument("--sequence", required=True)
    a.add_argument("--state")
    a.add_argument("--pretty", action="store_true")
    a.set_defaults(func=cmd_apply)

    pl = sub.add_parser("plan", help="plan a walk to the reference seating")
    pl.add_argument("--state", required=True)
    pl.add_argument("--emit-sequence", action="store_true")
    pl.add_argument("--pretty", action="store_true")
    pl.set_defaults(func=cmd_plan)

    v = sub.add_parser("verify", help="run certificates")
    v.add_argument("target", choices=("all", "irreducibility", "aperiodicity", "friend-matrix", "lumpability"))
    v.add_argument("--trials", type=_positive, default=1000)
    v.add_argument("--seed", type=int, default=None)
    v.set_defaults(func=cmd_verify)

    x = sub.add_parser("export-chain", help="export a reduced chain")
    x.add_argument("--chain", choices=tuple(CHAINS), default="friend")
    x.add_argument("--format", choices=("json", "csv"), default="json")
    x.set_defaults(func=cmd_export_chain)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text, code = args.func(args)
    except InputError as exc:
        print(f"courtmix: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
