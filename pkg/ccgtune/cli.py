"""Command-line entry point.
"""

import argparse
import json
import logging
import sys

from ccgtune import __version__
from ccgtune.pipeline import EXIT_LOAD
from ccgtune.pipeline import EXIT_USAGE
from ccgtune.pipeline import PipelineConfig
from ccgtune.pipeline import run_pipeline
from ccgtune.schema import SchemaValidationError
from ccgtune.semantics import NOTATIONS

lgr = logging.getLogger(__name__)

LOG_FORMAT = "%(levelname)s:%(name)s:%(message)s"


class ArgumentParser(argparse.ArgumentParser):
    """Exit with the usage code rather than argparse's 2.
    """

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, "{}: error: {}\n".format(self.prog, message))


def build_parser():
    parser = ArgumentParser(
        prog="ccgtune",
        description="""Answer tone-annotated database questions with
        tone-annotated responses.  Each blank-line-separated block of the
        input holds one question on its last line, written as
        `word[@marker]` items (e.g. `urinalysis@hstar address@llb`).""")
    parser.add_argument(
        "input", nargs="?", default="-",
        help="query file; '-' (the default) reads standard input")
    parser.add_argument(
        "--lexicon", metavar="PATH",
        help="JSON lexicon to use instead of the bundled one")
    parser.add_argument(
        "--kb", metavar="PATH",
        help="knowledge base file to use instead of the bundled one")
    parser.add_argument(
        "--mode", choices=["marker", "pretty", "trace"], default="marker",
        help="""output the marker line, a word/tone table, or the full
        derivation and response plan [default: %(default)s]""")
    parser.add_argument(
        "--all-parses", action="store_true",
        help="also print every analysis of each question")
    parser.add_argument(
        "--notation", choices=NOTATIONS,
        default="functional",
        help="""how terms are printed, "logic" being nltk's notation
        [default: %(default)s]""")
    parser.add_argument(
        "--style", metavar="PATH",
        help="JSON file with theme and rheme styles for --mode=pretty")
    parser.add_argument(
        "--max-workers", type=int, metavar="N",
        help="number of questions answered concurrently")
    parser.add_argument(
        "--stop-on-failure", action="store_true",
        help="stop at the first question that cannot be answered")
    parser.add_argument(
        "--log-level", default="WARNING",
        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        type=str.upper,
        help="logging level [default: %(default)s]")
    parser.add_argument(
        "--version", action="version",
        version="%(prog)s {}".format(__version__))
    return parser


def _read_style(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def main(argv=None):
    """Run the command line, returning its exit code.
    """
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=getattr(logging, args.log_level),
                        format=LOG_FORMAT, stream=sys.stderr)

    settings = {"input": args.input,
                "lexicon": args.lexicon,
                "kb": args.kb,
                "mode": args.mode,
                "all_parses": args.all_parses,
                "notation": args.notation,
                "max_workers": args.max_workers,
                "continue_on_failure": not args.stop_on_failure}
    try:
        if args.style:
            settings["style"] = _read_style(args.style)
        cfg = PipelineConfig(settings)
    except (OSError, ValueError, SchemaValidationError) as exc:
        sys.stderr.write("ccgtune: {}\n".format(exc))
        return EXIT_LOAD
    lgr.debug("Configuration: %r", cfg)
    return run_pipeline(cfg)


if __name__ == "__main__":
    sys.exit(main())
