"""Answer tone-annotated questions: parse, plan, realize and emit.
"""

from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor as Pool
from logging import getLogger
import os
import sys

from ccgtune.display import ToneTable
from ccgtune.generator import NoAnswer
from ccgtune.generator import NoFocusInRheme
from ccgtune.generator import Unrealizable
from ccgtune.generator import emit_tts
from ccgtune.generator import format_plan
from ccgtune.generator import plan_response
from ccgtune.generator import realize
from ccgtune.knowledge import KnowledgeBase
from ccgtune.knowledge import KnowledgeBaseError
from ccgtune.knowledge import UnknownEntity
from ccgtune.knowledge import UnknownRelation
from ccgtune.lexicon import Lexicon
from ccgtune.lexicon import LexiconError
from ccgtune.lexicon import UnknownWord
from ccgtune.parser import NoParse
from ccgtune.parser import NotAWhQuestion
from ccgtune.parser import format_info
from ccgtune.parser import format_state
from ccgtune.parser import format_tokens
from ccgtune.parser import parse_all
from ccgtune.parser import read_tokens
from ccgtune.parser import select_analysis
from ccgtune.parser import shift_reduce_steps
from ccgtune.prosody import UnknownMarker
from ccgtune.schema import SchemaValidationError
from ccgtune.schema import defaults
from ccgtune.schema import validate

lgr = getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_LOAD = 2
EXIT_PARSE = 3
EXIT_KNOWLEDGE = 4
EXIT_REALIZE = 5

# Exception families in the order they are checked.
FAILURES = [
    (EXIT_LOAD, (LexiconError, KnowledgeBaseError, SchemaValidationError,
                 OSError)),
    (EXIT_PARSE, (NoParse, UnknownWord, UnknownMarker)),
    (EXIT_KNOWLEDGE, (NoAnswer, NotAWhQuestion, UnknownRelation,
                      UnknownEntity)),
    (EXIT_REALIZE, (Unrealizable, NoFocusInRheme)),
]

HANDLED = tuple(exc for _, excs in FAILURES for exc in excs)
LOAD_FAILURES = FAILURES[0][1]


def exit_code(exc):
    """Return the exit code for a handled exception `exc`.

    >>> exit_code(UnknownWord("zebra"))
    3
    """
    for code, excs in FAILURES:
        if isinstance(exc, excs):
            return code
    raise ValueError("Unhandled exception type: {}".format(type(exc)))


class PipelineConfig(dict):
    """Pipeline settings with defaults filled from the config schema.

    Raises
    ------
    SchemaValidationError
    """

    def __init__(self, *args, **kwargs):
        settings = defaults("config")
        settings.update(dict(*args, **kwargs))
        validate(settings, "config")
        super(PipelineConfig, self).__init__(settings)

    @property
    def max_workers(self):
        value = self["max_workers"]
        if value is None:
            value = min(32, (os.cpu_count() or 1) + 4)
        return value


Resources = namedtuple("Resources", ["lexicon", "kb"])


def load_resources(cfg):
    """Load the lexicon and knowledge base named by `cfg`.

    Raises
    ------
    LexiconError, KnowledgeBaseError, SchemaValidationError
    """
    lexicon = Lexicon.from_file(cfg["lexicon"])
    kb = KnowledgeBase.from_file(cfg["kb"])
    lgr.debug("Loaded %d words and %d entities",
              len(lexicon), len(kb.entities))
    return Resources(lexicon, kb)


def read_queries(text):
    """Return the last line of each blank-line-separated block of `text`.

    The earlier lines of a block give context for a human reader.

    >>> read_queries("Context.\\nq1?\\n\\n\\nq2?\\n")
    ['q1?', 'q2?']
    """
    queries = []
    block = []
    for line in text.splitlines() + [""]:
        line = line.strip()
        if line:
            block.append(line)
        elif block:
            queries.append(block[-1])
            block = []
    return queries


class Answerer(object):
    """Produce the output text for single queries.

    Parameters
    ----------
    resources : Resources
    cfg : PipelineConfig
    table : ToneTable, optional
        Renderer for the "pretty" mode.
    """

    def __init__(self, resources, cfg, table=None):
        self.lexicon = resources.lexicon
        self.kb = resources.kb
        self.mode = cfg["mode"]
        self.all_parses = cfg["all_parses"]
        self.notation = cfg["notation"]
        if table is None and self.mode == "pretty":
            table = ToneTable(cfg["style"], interactive=False)
        self.table = table

    def __call__(self, line):
        """Answer the question on `line`.

        Returns
        -------
        The output text, without a trailing newline.

        Raises
        ------
        Any of the exceptions in HANDLED.
        """
        tokens = read_tokens(line)
        analyses = parse_all(tokens, self.lexicon)
        info = select_analysis(analyses)
        plan = plan_response(info, self.kb)
        annotated = realize(plan, self.lexicon)

        lines = []
        if self.mode == "trace":
            lines.append("Query: {}".format(format_tokens(tokens)))
            lines.extend(format_state(state, self.notation)
                         for state in shift_reduce_steps(info.sign, tokens))
            lines.append(format_info(info, self.notation))
        if self.all_parses:
            for idx, other in enumerate(analyses, 1):
                lines.append("Analysis {} of {}{}:".format(
                    idx, len(analyses),
                    " (selected)" if other is info else ""))
                lines.append(format_info(other, self.notation))
        if self.mode == "trace":
            lines.append(format_plan(plan, self.notation))
        if self.mode == "pretty":
            lines.append(self.table.render(annotated))
        else:
            lines.append(emit_tts(annotated))
        return "\n".join(lines)


def _read_input(cfg, stdin):
    if cfg["input"] == "-":
        return stdin.read()
    with open(cfg["input"], encoding="utf-8") as fh:
        return fh.read()


def run_pipeline(cfg, stdin=None, stdout=None, stderr=None):
    """Answer every query of the configured input.

    Parameters
    ----------
    cfg : PipelineConfig or dict
    stdin, stdout, stderr : file objects, optional
        Default to the sys streams.

    Returns
    -------
    An exit code.  With several failures, the first in input order decides.
    """
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr

    try:
        if not isinstance(cfg, PipelineConfig):
            cfg = PipelineConfig(cfg)
        resources = load_resources(cfg)
        queries = read_queries(_read_input(cfg, stdin))
        table = None
        if cfg["mode"] == "pretty":
            table = ToneTable(cfg["style"], stream=stdout)
    except LOAD_FAILURES as exc:
        stderr.write("ccgtune: {}\n".format(exc))
        return EXIT_LOAD

    answer = Answerer(resources, cfg, table=table)

    status = EXIT_OK
    if not queries:
        return status

    lgr.debug("Answering %d queries with max workers=%s",
              len(queries), cfg.max_workers)
    pool = Pool(max_workers=cfg.max_workers)
    try:
        futures = [pool.submit(answer, q) for q in queries]
        for idx, (query, future) in enumerate(zip(queries, futures), 1):
            try:
                text = future.result()
            except HANDLED as exc:
                stderr.write("ccgtune: query {} ({}): {}\n"
                             .format(idx, query, exc))
                if status == EXIT_OK:
                    status = exit_code(exc)
                if not cfg["continue_on_failure"]:
                    for f in futures[idx:]:
                        f.cancel()
                    break
                continue
            stdout.write(text + "\n")
    finally:
        pool.shutdown(wait=True)
        lgr.debug("Pool shut down")
    return status

