import argparse
import logging
import sys
from typing import Optional, Sequence

from mzlab import main as handlers
from mzlab.config import settings
from mzlab.errors import EXIT_OK, EXIT_USAGE, MzlabError, UsageError
from mzlab.services.registry import list_examples

logger = logging.getLogger("mzlab")


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ring", default="q", help="q, z, fp:<p> or qlaurent")
    common.add_argument("--vars", default="x", help="comma-separated variable names")
    common.add_argument("--laurent", action="store_true", help="allow negative exponents")
    common.add_argument("--max-degree", type=int, help="window degree N")
    common.add_argument("--max-power", type=int, help="power bound M")
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--log-level", type=str.upper, choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    common.add_argument("--seed", type=int, help="seed for randomized checks")
    common.add_argument("--algebra", help="structure-constant file")
    common.add_argument("--subspace", help="spanning vectors, rows separated by ';'")
    common.add_argument("--matrix", help="operator matrix, rows separated by ';'")
    common.add_argument("--side", choices=["two-sided", "left", "right"], default="two-sided")
    common.add_argument("--left", default="1", help="left witness for ms-falsify")
    common.add_argument("--right", default="1", help="right witness for ms-falsify")
    common.add_argument("--subspace-from-derivation", help="derivation images, one per variable, ';'-separated")
    common.add_argument("--subspace-from-endo", help="endomorphism images; the subspace is Im(I - phi)")
    common.add_argument("--kind", choices=["additive", "multiplicative"], default="multiplicative")

    parser = _Parser(prog="mzlab", description="Exact computations with Mathieu subspaces and E-derivations")
    verbs = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    verbs.add_parser("image", parents=[common], help="windowed image of a derivation or I - phi")
    for verb, help_text in (
        ("radical-probe", "powers of a candidate against a subspace"),
        ("ms-falsify", "bounded certificate that a subspace is not a Mathieu subspace"),
        ("polytope", "Newton polytope test for a Laurent polynomial"),
    ):
        verbs.add_parser(verb, parents=[common], help=help_text).add_argument("target", help="polynomial or element")
    verbs.add_parser("ms-decide", parents=[common], help="decide the Mathieu property in a finite algebra")
    verbs.add_parser("decompose", parents=[common], help="eigenspace decomposition of an operator")
    verbs.add_parser("verify", parents=[common], help="run a registry example").add_argument("target", help="example id")
    verbs.add_parser("list-examples", parents=[common], help="list registry examples")
    return parser


def _overrides(args: argparse.Namespace) -> dict:
    values = {
        "max_degree": args.max_degree,
        "max_power": args.max_power,
        "random_seed": args.seed,
        "log_level": args.log_level,
    }
    for key in ("max_degree", "max_power"):
        if values[key] is not None and values[key] < 0:
            raise UsageError(f"--{key.replace('_', '-')} must be non-negative")
    return {k: v for k, v in values.items() if v is not None}


def run(args: argparse.Namespace) -> int:
    if args.command == "list-examples":
        sys.stdout.write(handlers.render_examples(list_examples(), args.format))
        return EXIT_OK
    report = handlers.HANDLERS[args.command](args)
    sys.stdout.write(handlers.render_report(report, args.format))
    return report.exit_code


def main(argv: Optional[Sequence[str]] = None) -> int:
    saved = settings.model_dump()
    try:
        args = build_parser().parse_args(argv)
        for key, value in _overrides(args).items():
            setattr(settings, key, value)
        logging.basicConfig(
            stream=sys.stderr, level=settings.log_level.upper(), format="%(levelname)s %(name)s: %(message)s"
        )
        logger.setLevel(settings.log_level.upper())
        return run(args)
    except MzlabError as exc:
        print(f"error: {exc.detail}", file=sys.stderr)
        return exc.exit_code
    except SystemExit as exc:
        # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    finally:
        for key, value in saved.items():
            setattr(settings, key, value)


if __name__ == "__main__":
    sys.exit(main())
