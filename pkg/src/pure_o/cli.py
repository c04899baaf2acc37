"""Command-line front end.

Exit codes: 0 answered, 1 answered negatively (check-o false, NotPure,
sweep disagreement), 2 usage or input error, 3 inconclusive.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import __version__
from .classify import (
    FlatQuery,
    WitnessRangeError,
    decide_flat,
    pq_profile,
    witness_flat,
    witness_socle2,
    witness_socle3,
)
from .decision import INCONCLUSIVE, NOT_PURE, PURE, Decision, dumps
from .macaulay import is_o_sequence
from .monomial import format_monomial
from .order_ideal import (
    GeneratorSet,
    HVectorError,
    closure,
    format_generators,
    h_vector,
    parse_generators,
    parse_hvector,
)
from .search import SearchLimits, decide_pure_o_sequence, enumerate_pure_hvectors, verify_theorem_range, write_catalog

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    argv: list[str] = []

    def error(self, message):
        for i, tok in enumerate(self.argv):
            if f"'{tok}'" in message:
                message += f" (argument position {i + 1})"
                break
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def load_generators(path: str | Path) -> GeneratorSet:
    """Read a generator file; duplicates and empty files are errors."""
    text = Path(path).read_text(encoding="utf-8")
    return parse_generators(text)


def _sequence(text: str):
    try:
        return parse_hvector(text)
    except HVectorError as exc:
        raise argparse.ArgumentTypeError(f"invalid sequence {text!r}: {exc}") from None


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"{text!r} must be positive")
    return value


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a number") from None
    if value <= 0:
        raise argparse.ArgumentTypeError(f"{text!r} must be positive")
    return value


def _default_jobs() -> int:
    raw = os.environ.get("PURE_O_JOBS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def build_parser(argv: list[str]) -> argparse.ArgumentParser:
    bound = type("_BoundParser", (_Parser,), {"argv": list(argv)})
    parser = bound(prog="pure-o", description="Pure O-sequence checks, witnesses and sweeps.")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--format", choices=("json", "text"), default="json")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=bound)

    def limits_flags(p):
        p.add_argument("--nodes", type=_positive, default=10**7, help="node budget")
        p.add_argument("--seconds", type=_positive_float, default=60.0, help="time budget")
        p.add_argument("--max-vars", type=_positive, default=8)
        p.add_argument("--jobs", type=_positive, default=_default_jobs())

    p = sub.add_parser("check-o", help="Macaulay O-sequence test")
    p.add_argument("h", type=_sequence)

    p = sub.add_parser("check-pure", help="decide purity by exhaustive search")
    p.add_argument("h", type=_sequence)
    p.add_argument("--witness", action="store_true")
    limits_flags(p)

    p = sub.add_parser("classify-flat", help="closed-form decision for (1,a,...,a,b)")
    for name in ("n", "a", "b"):
        p.add_argument(name, type=_positive)

    p = sub.add_parser("witness", help="explicit generators for a flat sequence")
    p.add_argument("kind", choices=("flat", "socle2", "socle3"))
    p.add_argument("params", type=_positive, nargs="+", help="flat: N A B; socle2/socle3: A B")
    p.add_argument("--out", type=Path)

    for name in ("hvector", "pq"):
        p = sub.add_parser(name, help=f"{name} of a generator file")
        p.add_argument("--gens", type=Path, required=True)

    p = sub.add_parser("enumerate", help="catalog pure h-vectors")
    for name in ("s", "n", "g"):
        p.add_argument(name, type=_positive)
    p.add_argument("--catalog", type=Path)
    p.add_argument("--jobs", type=_positive, default=_default_jobs())

    p = sub.add_parser("verify", help="sweep the flat classification against search")
    for name in ("n", "a_max", "b_max"):
        p.add_argument(name, type=_positive)
    limits_flags(p)
    return parser


def _limits(args) -> SearchLimits:
    return SearchLimits(max_variables=args.max_vars, node_budget=args.nodes, time_budget=args.seconds)


def _decision_exit(d: Decision) -> int:
    return {PURE: EXIT_OK, NOT_PURE: EXIT_NEGATIVE, INCONCLUSIVE: EXIT_INCONCLUSIVE}[d.verdict]


def _text_decision(d: Decision, with_witness: bool = True) -> str:
    line = f"{d.verdict} ({d.rule}"
    line += f", {d.reason})" if d.reason else ")"
    if with_witness and d.witness:
        line += "\n" + "\n".join(format_monomial(m) for m in d.witness)
    return line


def _cmd(args) -> tuple[object, str, int]:
    """Return (json payload, text summary, exit code)."""
    cmd = args.command
    if cmd == "check-o":
        ok = is_o_sequence(args.h)
        seq = ",".join(map(str, args.h))
        return ({"h": list(args.h), "o_sequence": ok},
                f"{seq}: {'O-sequence' if ok else 'not an O-sequence'}",
                EXIT_OK if ok else EXIT_NEGATIVE)
    if cmd == "check-pure":
        d = decide_pure_o_sequence(args.h, _limits(args), jobs=args.jobs)
        return d.to_dict(args.witness), _text_decision(d, args.witness), _decision_exit(d)
    if cmd == "classify-flat":
        d = decide_flat(FlatQuery(args.n, args.a, args.b))
        return d.to_dict(), _text_decision(d), _decision_exit(d)
    if cmd == "witness":
        arity = 3 if args.kind == "flat" else 2
        if len(args.params) != arity:
            raise UsageError(f"witness {args.kind} takes {arity} integers, got {len(args.params)}")
        try:
            if args.kind == "flat":
                n, a, b = args.params
                if n < 2:
                    raise UsageError("witness flat needs N >= 2")
                gens = witness_flat(n, a, b)
                params = {"n": n, "a": a, "b": b}
            else:
                a, b = args.params
                gens = (witness_socle2 if args.kind == "socle2" else witness_socle3)(a, b)
                params = {"a": a, "b": b}
        except WitnessRangeError as exc:
            raise UsageError(str(exc)) from None
        if args.out:
            args.out.write_text(format_generators(gens), encoding="utf-8")
        h = h_vector(closure(gens))
        payload = {"kind": args.kind, "params": params, "h": list(h),
                   "witness": [format_monomial(m) for m in gens]}
        return payload, format_generators(gens).rstrip("\n"), EXIT_OK
    if cmd == "hvector":
        h = h_vector(closure(_load(args.gens)))
        return {"h": list(h)}, ",".join(map(str, h)), EXIT_OK
    if cmd == "pq":
        prof = pq_profile(_load(args.gens))
        payload = {"p": list(prof.p), "q": list(prof.q), "sum_p": prof.sum_p, "sum_q": prof.sum_q}
        return payload, f"p={list(prof.p)} q={list(prof.q)} sums={prof.sum_p},{prof.sum_q}", EXIT_OK
    if cmd == "enumerate":
        entries = enumerate_pure_hvectors(args.s, args.n, args.g, jobs=args.jobs)
        if args.catalog:
            write_catalog(entries, args.catalog)
        payload = {"s": args.s, "n": args.n, "g": args.g, "count": len(entries),
                   "entries": [{"h": list(e.h), "witness": [format_monomial(m) for m in e.witness],
                                "vars": e.variables_used, "gens": e.generator_count, "nodes": e.nodes}
                               for e in entries]}
        text = "\n".join(",".join(map(str, e.h)) for e in entries)
        return payload, text, EXIT_OK
    if cmd == "verify":
        report = verify_theorem_range(args.n, args.a_max, args.b_max, _limits(args), jobs=args.jobs)
        code = EXIT_OK
        if report["disagreements"]:
            code = EXIT_NEGATIVE
        elif report["inconclusive"]:
            code = EXIT_INCONCLUSIVE
        text = (f"n={args.n}: {report['agreements']} agree, "
                f"{len(report['disagreements'])} disagree, {len(report['inconclusive'])} inconclusive")
        return report, text, code
    raise UsageError(f"unknown command {cmd!r}")


def _load(path: Path) -> GeneratorSet:
    try:
        return load_generators(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from None


def run(argv: list[str] | None = None, out=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    out = out or sys.stdout
    try:
        args = build_parser(argv).parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        payload, text, code = _cmd(args)
    except UsageError as exc:
        print(f"pure-o: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out.write((text if args.format == "text" else dumps(payload)) + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
