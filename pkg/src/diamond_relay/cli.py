"""Command-line front end.

Exit status: 0 on success, 1 when the computation rejects its input (bad
network, unreadable file, LP failure), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path

from diamond_relay import capacity, experiments, network, theory, worstcase
from diamond_relay.errors import DiamondRelayError, InvalidArgumentError

log = logging.getLogger("diamond_relay")


def fmt(x) -> str:
    return f"{float(x):.9g}"


def _emit(text: str, path: str | None) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _load(args) -> network.DiamondNetwork:
    return network.load_network(args.input, exact=getattr(args, "exact", False))


def _mode(args) -> str:
    return "exact" if args.exact else "float"


def cmd_capacity(args) -> None:
    net = _load(args)
    res = capacity.approximate_capacity(net, _mode(args))
    if args.output:
        Path(args.output).write_text(json.dumps(res.to_dict(), indent=2) + "\n")
    print(fmt(res.value))
    if args.exact:
        print(res.value)


def cmd_best_relay(args) -> None:
    k, c1 = network.best_relay(_load(args))
    print(f"{k},{fmt(c1)}")


def cmd_ratio(args) -> None:
    r = capacity.ratio(_load(args), _mode(args))
    print(fmt(r))


def cmd_bound(args) -> None:
    n = args.n
    print(f"{n},{fmt(theory.bound(n))},{fmt(theory.opt4(n))}")


def cmd_worst(args) -> None:
    net = worstcase.worst_network(args.family, args.n, args.L)
    extra = {"family": args.family, "n": args.n}
    if worstcase.FamilyId(args.family).uses_L:
        extra["L"] = args.L
    text = network.dump_network(net, extra=extra)
    _emit(text, args.output)


def cmd_verify(args) -> None:
    rep = worstcase.verify_tightness(args.family, args.n, args.L, args.tol)
    if args.header:
        print(",".join(worstcase.TightnessReport.FIELDS))
    print(rep.csv_row())


def _load_schedule(path: str, exact: bool) -> dict:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InvalidArgumentError(f"{path}: invalid JSON: {exc}") from exc
    if isinstance(data, dict) and "schedule" in data:
        data = data["schedule"]
    if not isinstance(data, dict):
        raise InvalidArgumentError('schedule JSON must map state bitmasks to time fractions')
    sched = {}
    for key, v in data.items():
        try:
            s = int(key)
            w = Fraction(v) if exact else float(Fraction(v) if isinstance(v, str) else v)
        except (TypeError, ValueError) as exc:
            raise InvalidArgumentError(f"bad schedule entry {key!r}: {v!r}") from exc
        sched[s] = w
    return sched


def cmd_schedule_rate(args) -> None:
    net = _load(args)
    rate = capacity.schedule_rate(net, _load_schedule(args.schedule, args.exact))
    print(fmt(rate))


def cmd_normalize(args) -> None:
    norm = network.normalize(_load(args))
    extra = {"z": [float(z) for z in norm.z], "permutation": list(norm.permutation)}
    _emit(network.dump_network(norm.network, extra=extra), args.output)


def cmd_montecarlo(args) -> None:
    if args.n_min > args.n_max:
        raise InvalidArgumentError("--n-min must not exceed --n-max")
    res = experiments.monte_carlo(range(args.n_min, args.n_max + 1), args.trials, args.seed,
                                  sigma=args.sigma, workers=args.workers)
    _emit(experiments.stats_csv(res), args.output)
    if args.raw:
        Path(args.raw).write_text(experiments.raw_csv(res))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="diamond-relay",
                                 description="Best-relay guarantees for half-duplex diamond relay networks")
    ap.add_argument("-v", "--verbose", action="count", default=0, help="more logging (repeatable)")
    sub = ap.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def with_input(p, exact=True):
        p.add_argument("-i", "--input", required=True, help="network JSON file")
        if exact:
            p.add_argument("--exact", action="store_true", help="rational arithmetic throughout")
        return p

    p = with_input(sub.add_parser("capacity", help="approximate capacity via the cut-set LP"))
    p.add_argument("-o", "--output", help="write value, schedule and tight cuts as JSON")
    p.set_defaults(func=cmd_capacity)

    p = with_input(sub.add_parser("best-relay", help="index and capacity of the best single relay"), exact=False)
    p.set_defaults(func=cmd_best_relay)

    p = with_input(sub.add_parser("ratio", help="best single relay capacity over network capacity"))
    p.set_defaults(func=cmd_ratio)

    p = sub.add_parser("bound", help="guaranteed fraction for n relays")
    p.add_argument("-n", type=int, required=True)
    p.set_defaults(func=cmd_bound)

    families = [f.value for f in worstcase.FamilyId]
    for name, func, help_text in (("worst", cmd_worst, "build a network that meets the bound"),
                                  ("verify", cmd_verify, "check that a family meets the bound")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--family", required=True, choices=families)
        p.add_argument("-n", type=int, required=True)
        p.add_argument("--L", type=float, default=worstcase.DEFAULT_L, help="stand-in for an unbounded link")
        if name == "worst":
            p.add_argument("-o", "--output", help="network JSON path (default stdout)")
        else:
            p.add_argument("--tol", type=float, default=1e-6)
            p.add_argument("--header", action="store_true", help="print the CSV header first")
        p.set_defaults(func=func)

    p = with_input(sub.add_parser("schedule-rate", help="rate of a fixed schedule"))
    p.add_argument("-s", "--schedule", required=True, help='JSON mapping state bitmask -> fraction')
    p.set_defaults(func=cmd_schedule_rate)

    p = with_input(sub.add_parser("normalize", help="rescale to unit single-relay capacities"), exact=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("montecarlo", help="Rayleigh-fading ratio statistics")
    p.add_argument("--n-min", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--sigma", type=float, default=1.0, help="Rayleigh scale parameter")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("-o", "--output", help="stats CSV path (default stdout)")
    p.add_argument("--raw", help="also write per-trial ratios to this CSV")
    p.set_defaults(func=cmd_montecarlo)
    return ap


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        args.func(args)
    except (DiamondRelayError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
