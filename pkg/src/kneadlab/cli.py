"""Command-line front end: ``kneadlab <subcommand> ...``.

Exit codes: 0 success, 1 a verified claim failed, 2 usage error, 3 a
computation budget ran out.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from contextlib import contextmanager
from fractions import Fraction
from typing import Sequence

from . import __version__
from .automaton import (
    Automaton,
    AutomatonError,
    automaton_from_kneading_sequence,
    automaton_to_dict,
    classify,
    is_planar,
    kneading_sequence_of,
    parse_automaton_text,
)
from .growth import count_bad_words, enumerate_ball
from .lengthfunc import Calculus, LengthBoundExceeded, WeightAssignment, parse_weights
from .treeaction import CapExceeded
from .verify import CASES, WEIGHTS_0011, ORDER_0011, families_0011, families_110, run_case, weights_10k

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- inputs ---------------------------------------------------------------------


def _load_automaton(args) -> tuple[Automaton, str | None]:
    if (args.sequence is None) == (args.automaton is None):
        raise UsageError("give exactly one of a kneading sequence or --automaton FILE")
    if args.automaton is not None:
        try:
            with open(args.automaton, encoding="utf-8") as fh:
                a = parse_automaton_text(fh.read())
        except OSError as e:
            raise UsageError(f"cannot read {args.automaton}: {e.strerror}") from e
        try:
            ks = str(kneading_sequence_of(a))
        except AutomatonError:
            ks = None
        return a, ks
    a = automaton_from_kneading_sequence(args.sequence)
    return a, str(kneading_sequence_of(a))


def _standard_weights(a: Automaton, ks: str | None) -> dict[str, Fraction]:
    """The weights used for the worked examples; unit weights elsewhere."""
    if ks == "0(011)":
        return dict(WEIGHTS_0011)
    if ks and ks.startswith("1(") and set(ks[2:-1]) == {"0"} and len(ks) >= 5:
        return weights_10k(len(ks) - 3)
    return WeightAssignment.uniform(a).weights


def _standard_order(ks: str | None) -> tuple[str, ...] | None:
    return ORDER_0011 if ks == "0(011)" else None


def _calculus(args, a: Automaton, ks: str | None) -> Calculus:
    text = args.weights
    if text in (None, "unit"):
        weights = WeightAssignment.uniform(a).weights
    elif text == "standard":
        weights = _standard_weights(a, ks)
    else:
        weights = parse_weights(text)
    order = tuple(args.order.split(",")) if args.order else _standard_order(ks)
    return Calculus(a, weights, order=order, cap=args.cap, max_ball=args.max_ball)


def _read_words(path: str) -> list[str]:
    try:
        with open(path, encoding="utf-8") as fh:
            return [line.split("#", 1)[0].strip() for line in fh if line.split("#", 1)[0].strip()]
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from e


def _standard_u(ks: str | None, calc: Calculus) -> list:
    if ks == "11(0)":
        fams = families_110()[0]
    elif ks == "0(011)":
        fams = families_0011()[0]
    elif ks and ks.startswith("1(") and set(ks[2:-1]) == {"0"}:
        full = tuple(sorted(s for s in calc.automaton.generators if s != calc.t))
        return [(calc.t,) + w + (calc.t,) for w in calc.transversal.reps if w != full]
    else:
        raise UsageError("no standard word list for this automaton; pass --words FILE")
    return [w for ws in fams.values() for w in ws]


@contextmanager
def _cap_env(cap: int | None):
    old = os.environ.get("KNEADLAB_CAP_STEPS")
    if cap:
        os.environ["KNEADLAB_CAP_STEPS"] = str(cap)
    try:
        yield
    finally:
        if old is None:
            os.environ.pop("KNEADLAB_CAP_STEPS", None)
        else:
            os.environ["KNEADLAB_CAP_STEPS"] = old


# -- subcommands ------------------------------------------------------------------


def _show(w) -> str:
    return "".join(w) or "1"


def cmd_parse(args) -> tuple[int, dict, str]:
    a, _ = _load_automaton(args)
    d = automaton_to_dict(a)
    lines = [f"{t['state']} {t['input']} -> {t['output']} {t['target']}" for t in d["transitions"]]
    return EXIT_OK, d, "\n".join(lines) + "\n"


def cmd_check(args) -> tuple[int, dict, str]:
    a, ks = _load_automaton(args)
    cls = classify(a)
    planar, ordering = is_planar(a) if cls.kneading else (False, None)
    d = {"schema": 1, **cls.to_dict(), "planar": planar,
         "planar_ordering": list(ordering) if ordering else None}
    text = "".join(f"{k}: {v}\n" for k, v in sorted(d.items()) if k != "schema")
    return EXIT_OK, d, text


def cmd_growth(args) -> tuple[int, dict, str]:
    a, ks = _load_automaton(args)
    calc = _calculus(args, a, ks)
    table = enumerate_ball(a, calc.weights, args.radius, max_elements=args.max_elements, cap=args.cap)
    if table.partial:
        print(f"warning: budget exhausted, table truncated at radius {table.radius}", file=sys.stderr)
    lines = [f"{n:>4} {b:>10} {c:>12} {'' if r is None else f'{r:.6f}'}" for n, b, c, r in table.rows()]
    text = "   n       b(n)   cumulative log2_ratio\n" + "\n".join(lines) + "\n"
    return (EXIT_CAP if table.partial else EXIT_OK), table.to_dict(), text, table.to_csv()


def cmd_admissible(args) -> tuple[int, dict, str]:
    a, ks = _load_automaton(args)
    calc = _calculus(args, a, ks)
    ok, bad = calc.is_admissible()
    rows = [{"word": _show(r.word), "production": str(r.production), "lhs": str(r.lhs), "rhs": str(r.rhs),
             "slack": str(r.slack)} for r in calc.admissibility_table()]
    d = {"schema": 1, "admissible": ok, "violating_word": None if ok else _show(bad),
         "weights": calc.weights.to_dict(), "table": rows}
    text = "".join(f"{r['word']:>10}  {r['production']:<24} {r['lhs']:>8} {r['rhs']:>8}\n" for r in rows)
    text += f"admissible: {ok}" + ("" if ok else f" (violated at {_show(bad)})") + "\n"
    return EXIT_OK, d, text


def cmd_good(args) -> tuple[int, dict, str]:
    a, ks = _load_automaton(args)
    calc = _calculus(args, a, ks)
    word = calc.word(args.word)
    cert = calc.search_goodness(word, args.max_depth)
    if cert is None:
        d = {"schema": 1, "word": " ".join(word), "good": False, "max_depth": args.max_depth, "certificate": None}
        return EXIT_OK, d, f"no certificate for {_show(word)} up to depth {args.max_depth}\n"
    d = {"schema": 1, "word": " ".join(word), "good": True, "max_depth": args.max_depth,
         "certificate": cert.to_dict(), "valid": bool(calc.verify_goodness(cert))}
    text = (f"{_show(word)} is good at depth {cert.depth}\n"
            f"chain: {' -> '.join(_show(u) for u in cert.chain)}\n"
            f"reducing subword: {_show(cert.reducing)} at offset {cert.offset}\n"
            f"production: ({_show(cert.production[0])}, {_show(cert.production[1])})"
            f"  lengths {cert.lengths[0]} + {cert.lengths[1]} < {cert.star}\n")
    return EXIT_OK, d, text


def cmd_badwords(args) -> tuple[int, dict, str]:
    a, ks = _load_automaton(args)
    calc = _calculus(args, a, ks)
    words = _read_words(args.words) if args.words else _standard_u(ks, calc)
    report = count_bad_words(calc, words, args.max_blocks, list_limit=args.list_limit)
    text = "".join(f"m={m:<3} {c}\n" for m, c in sorted(report.counts.items()))
    text += f"max {report.max_count}, constant from m={report.stable_from()}\n"
    return EXIT_OK, report.to_dict(), text


def cmd_verify(args) -> tuple[int, dict, str]:
    with _cap_env(args.cap):
        report = run_case(args.case, k=args.k, seed=args.seed, samples=args.samples)
    verdicts = {c.verdict for c in report.claims}
    code = EXIT_OK if report.passed else EXIT_FAIL if "fail" in verdicts else EXIT_CAP
    return code, report.to_dict(), report.to_text()


# -- argument parsing -------------------------------------------------------------


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "text", "csv"), default="json")
    common.add_argument("--out", metavar="FILE", help="write output here instead of stdout")
    common.add_argument("--cap", type=_positive, help="step budget for exact searches")

    source = _Parser(add_help=False)
    source.add_argument("sequence", nargs="?", help="kneading sequence such as 0(011)")
    source.add_argument("--automaton", metavar="FILE", help="automaton in 'state letter -> letter state' format")

    calc = _Parser(add_help=False)
    calc.add_argument("--weights", help="'unit', 'standard' or name=rational pairs such as a=7,b=7,c=6,t=3")
    calc.add_argument("--order", help="comma-separated tie order of the inactive states")
    calc.add_argument("--max-ball", type=_positive, default=30_000, help="soft size of the length ball")

    p = _Parser(prog="kneadlab", description="Calculus of groups generated by kneading automata.")
    p.add_argument("--version", action="version", version=f"kneadlab {__version__}")
    sub = p.add_subparsers(dest="command", parser_class=_Parser, required=True)

    sub.add_parser("parse", parents=[common, source], help="sequence to automaton")
    sub.add_parser("check", parents=[common, source], help="classification and planarity")
    g = sub.add_parser("growth", parents=[common, source, calc], help="ball sizes by radius")
    g.add_argument("--radius", type=int, required=True)
    g.add_argument("--max-elements", type=_positive)
    sub.add_parser("admissible", parents=[common, source, calc], help="admissibility table and verdict")
    g = sub.add_parser("good", parents=[common, source, calc], help="search for a goodness certificate")
    g.add_argument("--word", required=True)
    g.add_argument("--max-depth", type=int, default=3)
    g = sub.add_parser("badwords", parents=[common, source, calc], help="count words avoiding a word list")
    g.add_argument("--words", metavar="FILE", help="one word per line; defaults to the standard families")
    g.add_argument("--max-blocks", type=_positive, default=20)
    g.add_argument("--list-limit", type=int, default=200)
    g = sub.add_parser("verify", parents=[common], help="re-check a worked example")
    g.add_argument("case", choices=CASES)
    g.add_argument("--k", type=int, default=3, help="k for the 10k case")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--samples", type=_positive, default=50)
    return p


COMMANDS = {
    "parse": cmd_parse, "check": cmd_check, "growth": cmd_growth, "admissible": cmd_admissible,
    "good": cmd_good, "badwords": cmd_badwords, "verify": cmd_verify,
}


def _emit(args, data: dict, text: str, csv: str | None) -> None:
    if args.format == "json":
        out = json.dumps(data, indent=2, sort_keys=True, default=str) + "\n"
    elif args.format == "csv":
        if csv is None:
            raise UsageError("--format csv is only available for growth")
        out = csv
    else:
        out = text
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "radius", 0) < 0:
            raise UsageError("--radius must be non-negative")
        result = COMMANDS[args.command](args)
        code, data, text = result[:3]
        _emit(args, data, text, result[3] if len(result) > 3 else None)
        return code
    except UsageError as e:
        print(f"kneadlab: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (CapExceeded, LengthBoundExceeded) as e:
        print(f"kneadlab: budget exhausted: {e}", file=sys.stderr)
        return EXIT_CAP
    except (ValueError, AutomatonError) as e:
        print(f"kneadlab: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
