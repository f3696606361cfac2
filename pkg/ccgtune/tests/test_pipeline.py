from io import StringIO
import os

import pytest

from ccgtune.generator import NoAnswer
from ccgtune.generator import NoFocusInRheme
from ccgtune.lexicon import UnknownWord
from ccgtune.parser import NoParse
from ccgtune.parser import SeveralRhemes
from ccgtune.pipeline import Answerer
from ccgtune.pipeline import EXIT_KNOWLEDGE
from ccgtune.pipeline import EXIT_LOAD
from ccgtune.pipeline import EXIT_OK
from ccgtune.pipeline import EXIT_PARSE
from ccgtune.pipeline import EXIT_REALIZE
from ccgtune.pipeline import PipelineConfig
from ccgtune.pipeline import exit_code
from ccgtune.pipeline import load_resources
from ccgtune.pipeline import read_queries
from ccgtune.pipeline import run_pipeline
from ccgtune.schema import SchemaValidationError
from ccgtune.tests.utils import kb_path

QUESTION = "which@lhstar condition@lh does urinalysis@hstar address@llb"
ANSWER = "urinalysis@lhstar addresses@lh hematuria@hstarllb"
NO_ANSWER = "which@lhstar procedure@lh does urinalysis@hstar address@llb"


def run(text, **settings):
    settings.setdefault("kb", kb_path("urinalysis"))
    stdout, stderr = StringIO(), StringIO()
    status = run_pipeline(settings, stdin=StringIO(text), stdout=stdout,
                          stderr=stderr)
    return status, stdout.getvalue(), stderr.getvalue()


def test_read_queries():
    text = "\n".join(["A system recommends lavage.", "Which system?",
                      "   ", "", QUESTION, "", "", ""])
    assert read_queries(text) == ["Which system?", QUESTION]
    assert read_queries("") == []
    assert read_queries("\n\n") == []


@pytest.mark.parametrize("exc,code", [
    (UnknownWord("zebra"), EXIT_PARSE),
    (NoParse([], 0), EXIT_PARSE),
    (SeveralRhemes([], 0, [(0, 1), (1, 2)]), EXIT_PARSE),
    (NoFocusInRheme(["lavage"]), EXIT_REALIZE),
    (OSError("gone"), EXIT_LOAD),
])
def test_exit_code(exc, code):
    assert exit_code(exc) == code


def test_exit_code_unhandled():
    with pytest.raises(ValueError):
        exit_code(RuntimeError())


def test_config_defaults():
    cfg = PipelineConfig()
    assert cfg["mode"] == "marker"
    assert cfg["continue_on_failure"]
    assert cfg.max_workers == min(32, (os.cpu_count() or 1) + 4)
    assert PipelineConfig(max_workers=2).max_workers == 2


def test_config_invalid():
    with pytest.raises(SchemaValidationError):
        PipelineConfig(mode="verbose")


def test_answerer():
    cfg = PipelineConfig(kb=kb_path("urinalysis"))
    answer = Answerer(load_resources(cfg), cfg)
    assert answer(QUESTION) == ANSWER
    with pytest.raises(NoAnswer):
        answer(NO_ANSWER)


def test_run_pipeline():
    status, out, err = run(QUESTION + "\n")
    assert status == EXIT_OK
    assert out == ANSWER + "\n"
    assert err == ""


def test_run_pipeline_single_alternative():
    status, out, err = run(QUESTION + "\n", kb=kb_path("single"))
    assert status == EXIT_OK
    assert out == ANSWER + "\n"
    assert err == ""


def test_run_pipeline_bundled_kb():
    status, out, err = run(
        "which@lhstar procedure@lh addresses@hstar hemorrhage@llb\n",
        kb=None)
    assert status == EXIT_OK
    assert err == ""
    words = [token.split("@")[0] for token in out.split()]
    assert words == ["a", "scan", "addresses", "hemorrhage"]
    assert "scan@h" in out


def test_run_pipeline_context_lines():
    status, out, _ = run("Urinalysis can be done.\n" + QUESTION + "\n")
    assert status == EXIT_OK
    assert out == ANSWER + "\n"


def test_run_pipeline_empty_input():
    assert run("") == (EXIT_OK, "", "")


def test_run_pipeline_input_file(tmp_path):
    path = tmp_path / "queries.txt"
    path.write_text(QUESTION + "\n\n" + QUESTION + "\n")
    status, out, _ = run("", input=str(path))
    assert status == EXIT_OK
    assert out == (ANSWER + "\n") * 2


@pytest.mark.parametrize("settings", [
    {"kb": "/no/such/file.kb"},
    {"lexicon": "/no/such/lexicon.json"},
    {"input": "/no/such/queries.txt"},
    {"mode": "verbose"},
    {"style": {"theme": {"color": "mauve"}}, "mode": "pretty"},
])
def test_run_pipeline_load_failure(settings):
    status, out, err = run(QUESTION + "\n", **settings)
    assert status == EXIT_LOAD
    assert out == ""
    assert err.startswith("ccgtune: ")


def test_run_pipeline_failures_continue():
    text = "\n\n".join([QUESTION, "zebra@hstarllb", NO_ANSWER, QUESTION])
    status, out, err = run(text)
    assert status == EXIT_PARSE
    assert out == (ANSWER + "\n") * 2
    lines = err.splitlines()
    assert lines[0].startswith("ccgtune: query 2 (zebra@hstarllb): ")
    assert lines[1].startswith("ccgtune: query 3 ({}): ".format(NO_ANSWER))
    assert len(lines) == 2


def test_run_pipeline_first_failure_decides():
    text = "\n\n".join([NO_ANSWER, "zebra@hstarllb"])
    status, _, _ = run(text)
    assert status == EXIT_KNOWLEDGE


def test_run_pipeline_stop_on_failure():
    text = "\n\n".join([QUESTION, "zebra@hstarllb", NO_ANSWER, QUESTION])
    status, out, err = run(text, continue_on_failure=False)
    assert status == EXIT_PARSE
    assert out == ANSWER + "\n"
    assert len(err.splitlines()) == 1


def test_run_pipeline_keeps_input_order():
    queries = [QUESTION, NO_ANSWER, "lavage@hstarllb"] * 4
    expected = []
    for query in queries:
        _, out, _ = run(query + "\n", kb=None)
        expected.append(out)
    status, out, _ = run("\n\n".join(queries), kb=None, max_workers=4)
    assert out == "".join(expected)


def test_run_pipeline_pretty():
    status, out, _ = run(QUESTION + "\n", mode="pretty")
    assert status == EXIT_OK
    assert out.splitlines() == ["urinalysis addresses hematuria",
                                "L+H*       LH%       H* LL$"]


def test_run_pipeline_trace():
    status, out, _ = run(QUESTION + "\n", mode="trace")
    assert status == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "Query: " + QUESTION
    assert lines[1].startswith("shift which@lhstar")
    assert "Proposition: s:λx[condition(x) & address(*urinalysis, x)]" \
        in lines
    assert "Answer: hematuria (alternatives: hematuria, hemorrhage)" in lines
    assert lines[-1] == ANSWER
    assert len([l for l in lines if l.startswith("Theme: ")]) == 1
    assert len([l for l in lines if l.startswith("Rheme: ")]) == 1
    assert "Rheme: s:address(*urinalysis, x)/np:x" in lines
    assert "Response theme: s:address(*urinalysis, x)/np:x" in lines


def test_run_pipeline_trace_curried():
    _, out, _ = run(QUESTION + "\n", mode="trace", notation="curried")
    assert "Response rheme: NP:*hematuria'" in out.splitlines()


def test_run_pipeline_all_parses():
    _, out, _ = run(QUESTION + "\n", all_parses=True)
    lines = out.splitlines()
    headers = [line for line in lines if line.startswith("Analysis ")]
    assert headers
    assert len([h for h in headers if h.endswith("(selected):")]) == 1
    assert lines[-1] == ANSWER
