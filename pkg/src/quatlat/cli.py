"""Command-line front end: ``quatlat field|classify|reproduce|corpus|schema``."""

import argparse
import json
import logging
import sys
from typing import Any, Dict, List, Optional

from . import __version__
from .classify import FINITE, INFINITE
from .config import load_config
from .corpus import Corpus
from .errors import QuatlatError
from .report import render_json, render_text
from .reproduce import run_target
from .schema import problem_json_schema, report_json_schema
from .tools import classify_spec, field_factor, field_info
from .utils import setup_logging

logger = logging.getLogger(__name__)

EXIT_FINITE = 0
EXIT_INFINITE = 1
EXIT_INPUT_ERROR = 2
EXIT_INCONCLUSIVE = 3
EXIT_MISMATCH = 1


def exit_code_for(status: str) -> int:
    if status == FINITE:
        return EXIT_FINITE
    if status == INFINITE:
        return EXIT_INFINITE
    return EXIT_INCONCLUSIVE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quatlat",
        description="Commensurability classes of arithmetic sublattices of "
                    "quaternion-algebra lattices.",
    )
    parser.add_argument("-V", "--version", action="version", version=f"quatlat {__version__}")
    parser.add_argument("--log-level", default=None,
                        help="Logging level (default: $LOG_LEVEL or WARNING)")
    parser.add_argument("--corpus", default=None, help="Corpus directory (default: bundled)")
    commands = parser.add_subparsers(dest="command", required=True)

    field_cmd = commands.add_parser("field", help="Inspect a number field")
    field_sub = field_cmd.add_subparsers(dest="field_command", required=True)
    for name, help_text in (("info", "Signature, discriminant and ramified primes"),
                            ("factor", "Decomposition of a prime")):
        sub = field_sub.add_parser(name, help=help_text)
        source = sub.add_mutually_exclusive_group(required=True)
        source.add_argument("--label", help="Corpus label, e.g. a5-sextic")
        source.add_argument("--poly", help='Polynomial string, e.g. "t^2-t-1"')
        sub.add_argument("--p", type=int, action="append", default=[],
                         required=(name == "factor"),
                         help="Prime to decompose (repeatable for info)")
        sub.add_argument("--seed", type=int, default=None)
        sub.add_argument("--json", action="store_true", help="Machine-readable output")

    classify_cmd = commands.add_parser("classify", help="Classify sublattices for a problem spec")
    classify_cmd.add_argument("--spec", required=True, help="Spec path or bundled spec name")
    classify_cmd.add_argument("--json", action="store_true", help="Machine-readable output")
    classify_cmd.add_argument("--prime-bound", type=int, default=None)
    classify_cmd.add_argument("--seed", type=int, default=None)
    classify_cmd.add_argument("--workers", type=int, default=None)

    reproduce_cmd = commands.add_parser("reproduce", help="Scripted checks of headline results")
    reproduce_cmd.add_argument("target", choices=["a5", "cyclic", "kleinian-degree"])
    reproduce_cmd.add_argument("--n", type=int, default=3, help="Degree for the cyclic target")
    reproduce_cmd.add_argument("--primes", type=int, nargs="+", default=None,
                               help="Even set S of primes below 50 for the a5 target (default 2 3)")
    reproduce_cmd.add_argument("--prime-bound", type=int, default=None)
    reproduce_cmd.add_argument("--seed", type=int, default=None)

    corpus_cmd = commands.add_parser("corpus", help="Corpus operations")
    corpus_sub = corpus_cmd.add_subparsers(dest="corpus_command", required=True)
    corpus_sub.add_parser("list", help="List labels with provenance")

    schema_cmd = commands.add_parser("schema", help="Print a JSON Schema")
    schema_cmd.add_argument("which", nargs="?", choices=["problem", "report"], default="problem")
    return parser


def _print_field(info: Dict[str, Any]) -> None:
    print(f"Field: {info['label']}   f = {info['poly']}")
    print(f"degree {info['degree']}   signature (r1,r2) = {tuple(info['signature'])}")
    print(f"disc(f) = {info['discriminant']}")
    print(f"ramified primes: {info['ramified_primes']}")
    if info["unresolved_primes"]:
        print(f"unresolved (index-divisible) primes: {info['unresolved_primes']}")
    if info["irreducibility"] != "certified":
        print(f"irreducibility: {info['irreducibility']}")
    for item in info.get("decompositions", []):
        _print_decomposition(item)


def _print_decomposition(item: Dict[str, Any]) -> None:
    if "error" in item:
        print(f"p = {item['p']}: {item['error']}")
        return
    places = ", ".join(f"{w['label']} (e={w['e']}, f={w['f']})" for w in item["places"])
    print(f"p = {item['p']}: type {tuple(item['type'])}   {places}")


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    config = load_config(
        corpus_dir=args.corpus,
        log_level=args.log_level,
        prime_bound=getattr(args, "prime_bound", None),
        seed=getattr(args, "seed", None),
        workers=getattr(args, "workers", None),
    )
    setup_logging(config.get("log_level", "WARNING"))

    try:
        corpus = Corpus(config.get("corpus_dir"))
        if args.command == "field":
            seed = config["seed"]
            if args.field_command == "info":
                info = field_info(corpus, args.label, args.poly, args.p, seed)
                if args.json:
                    print(json.dumps(info, indent=2, sort_keys=True))
                else:
                    _print_field(info)
            else:
                for p in args.p:
                    item = field_factor(corpus, p, args.label, args.poly, seed)
                    if args.json:
                        print(json.dumps(item, indent=2, sort_keys=True))
                    else:
                        _print_decomposition(item)
            return EXIT_FINITE

        if args.command == "classify":
            report = classify_spec(corpus, args.spec, args.prime_bound, args.seed,
                                   config["workers"], config["refine_cap"],
                                   config["prime_bound"], config["seed"])
            print(render_json(report) if args.json else render_text(report))
            return exit_code_for(report.status)

        if args.command == "reproduce":
            result = run_target(args.target, corpus, args.n, config["prime_bound"],
                                config["seed"], args.primes)
            print(result)
            return EXIT_FINITE if result.passed else EXIT_MISMATCH

        if args.command == "corpus":
            for entry in corpus.list_entries():
                print(f"{entry['label']:<16} degree {entry['degree']:<3} {entry['provenance']}")
            return EXIT_FINITE

        schema = problem_json_schema() if args.which == "problem" else report_json_schema()
        print(json.dumps(schema, indent=2, sort_keys=True))
        return EXIT_FINITE

    except QuatlatError as e:
        logger.debug("input error", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
