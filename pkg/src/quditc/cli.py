"""Command-line driver: ``quditc bench|compile|verify|sweep``.

Exit codes: 0 ok, 1 verification failed, 2 usage or parse error,
3 circuit does not fit the device.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import analyzer, qdformat, sim, timing
from .bench import gen_cnx
from .qdformat import QDParseError
from .topology import CapacityError, Topology

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    """``5,10,20`` or ``lo-hi`` or ``lo-hi:step``."""
    try:
        if "-" in text:
            span, _, step = text.partition(":")
            lo, hi = (int(x) for x in span.split("-"))
            return list(range(lo, hi + 1, int(step) if step else 1))
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}") from None


def _grid(text: str) -> Topology:
    try:
        return Topology.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _write(text: str, path) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load_timing(path):
    return timing.load_overrides(path) if path else timing.load_default()


def cmd_bench(args) -> int:
    c = gen_cnx(args.controls, args.radix)
    _write(qdformat.dumps(c), args.out)
    return EXIT_OK


def cmd_compile(args) -> int:
    c = qdformat.load(args.input)
    t = _load_timing(args.timing)
    native, mapping, routed = analyzer.compile_circuit(c, args.grid, t)
    row = analyzer.metrics(native, routed, t)
    _write(qdformat.dumps(routed), args.out)
    if args.report:
        report = {
            **row.as_dict(),
            "name": c.name,
            "grid": str(args.grid),
            "placement": {str(v): s for v, s in enumerate(routed.metadata["initial_mapping"])},
            "final_mapping": {str(v): s for v, s in enumerate(routed.metadata["final_mapping"])},
        }
        with open(args.report, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return EXIT_OK


def _parse_mapping(text: str) -> tuple[int, ...]:
    if os.path.exists(text):
        if text.endswith(".json"):
            with open(text, encoding="utf-8") as fh:
                fm = json.load(fh)["final_mapping"]
            return tuple(fm[str(v)] for v in range(len(fm)))
        return qdformat.load(text).metadata["final_mapping"]
    pairs = sorted(tuple(int(x) for x in tok.split("@")) for tok in text.split())
    if [v for v, _ in pairs] != list(range(len(pairs))):
        raise UsageError(f"mapping {text!r} must cover virtual ids 0..N-1")
    return tuple(s for _, s in pairs)


def cmd_verify(args) -> int:
    pre = qdformat.load(args.pre)
    post = qdformat.load(args.post)
    unpermute = _parse_mapping(args.mapping) if args.mapping else None
    try:
        ok, cex = sim.equivalent(pre, post, args.domain, unpermute)
    except sim.DomainTooLarge as exc:
        raise UsageError(f"refusing to verify: {exc}") from None
    except sim.SimulationError as exc:
        print(f"verify: FAIL ({exc})")
        return EXIT_VERIFY
    if ok:
        print("verify: OK")
        return EXIT_OK
    inp, o1, o2 = cex
    print("verify: FAIL")
    print(f"  input:     {' '.join(map(str, inp))}")
    print(f"  expected:  {' '.join(map(str, o1))}")
    print(f"  got:       {' '.join(map(str, o2))}")
    return EXIT_VERIFY


def cmd_sweep(args) -> int:
    t = _load_timing(args.timing)
    rows = analyzer.sweep(args.radix, args.controls, args.grid, t, jobs=args.jobs)
    _write(analyzer.rows_to_csv(rows), args.csv)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quditc", description="Intermediate-qudit compiler and metrics harness.")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bench", help="generate an n-controlled X benchmark")
    b.add_argument("--radix", type=int, required=True, choices=range(2, 8), metavar="{2..7}")
    b.add_argument("--controls", type=int, required=True)
    b.add_argument("--out", help="output QD file (default stdout)")
    b.set_defaults(func=cmd_bench)

    c = sub.add_parser("compile", help="decompose, place and route a QD circuit")
    c.add_argument("input")
    c.add_argument("--grid", type=_grid, default=Topology(12, 12))
    c.add_argument("--timing", help="CSV of timing overrides")
    c.add_argument("--out", help="routed QD file (default stdout)")
    c.add_argument("--report", help="JSON metrics report")
    c.set_defaults(func=cmd_compile)

    v = sub.add_parser("verify", help="exhaustively compare two circuits")
    v.add_argument("pre")
    v.add_argument("post")
    v.add_argument("--mapping", help="final mapping: 'v@site ...', a JSON report, or a routed QD file")
    v.add_argument("--domain", choices=("binary", "full"), default="binary")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sweep", help="metrics CSV over radices and control counts")
    s.add_argument("--radix", type=_int_list, default=[2, 3, 4, 5], help="e.g. 2,3,4,5")
    s.add_argument("--controls", type=_int_list, default=list(range(5, 66, 5)), help="e.g. 5-65:5")
    s.add_argument("--grid", type=_grid, default=Topology(12, 12))
    s.add_argument("--timing", help="CSV of timing overrides")
    s.add_argument("--csv", help="output CSV (default stdout)")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_sweep)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"quditc: capacity: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except QDParseError as exc:
        print(f"quditc: parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, timing.TimingError, ValueError, OSError) as exc:
        print(f"quditc: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
