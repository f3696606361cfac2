from io import StringIO

import pytest

from ccgtune.display import Field
from ccgtune.display import Nothing
from ccgtune.display import StyleFunctionError
from ccgtune.display import TermProcessors
from ccgtune.display import ToneTable
from ccgtune.display import tone_labels
from ccgtune.generator import AnnotatedString
from ccgtune.parser import read_tokens
from ccgtune.schema import SchemaValidationError
from ccgtune.tests.terminal import Terminal
from ccgtune.tests.terminal import capres
from ccgtune.tests.terminal import styled
from ccgtune.tests.utils import assert_eq_repr

MARKED = "traumaid@lhstar recommends@lh lavage@hstarllb"


def annotated(line, parts=("theme", "theme", "rheme")):
    return AnnotatedString(tuple(read_tokens(line)), parts)


def test_field_base():
    assert Field()("ok") == "ok        "
    assert Field(width=5, align="right")("ok") == "   ok"


def test_field_bad_align():
    with pytest.raises(ValueError):
        Field(align="top")


def test_field_processors():
    field = Field(width=6, align="center", default_keys=["core", "extra"])
    field.add("post", "core", lambda _, result: result.upper())
    assert field("ok") == "  OK  "
    assert field("ok", keys=[]) == "  ok  "

    field.add("pre", "extra", lambda _, result: result * 2)
    assert field("ok", keys=["extra", "core"]) == " OKOK "

    with pytest.raises(ValueError):
        field.add("pre", "not registered", lambda _, result: result)
    with pytest.raises(ValueError):
        field.add("not pre or post", "core", lambda _, result: result)
    with pytest.raises(ValueError):
        field("ok", keys=["not registered"])


def test_nothing():
    nothing = Nothing()
    assert not nothing
    assert str(nothing) == ""
    assert "{:>3}".format(nothing) == "   "
    assert nothing + "x" == "x"
    assert "x" + nothing == "x"


def test_tone_labels():
    tokens = read_tokens("which@lhstar condition@lh does")
    assert [tone_labels(t) for t in tokens] == [["L+H*"], ["LH%"], []]


def test_plain_table():
    out = StringIO()
    table = ToneTable(stream=out)
    assert table.render(annotated(MARKED)) == (
        "traumaid recommends lavage\n"
        "L+H*     LH%        H* LL$")
    assert out.getvalue() == ""


def test_plain_table_unmarked_theme():
    table = ToneTable(stream=StringIO(), interactive=False)
    words, tones = table.rows(annotated("traumaid recommends lavage@hstarllb"))
    assert words == "traumaid recommends lavage"
    assert tones == " " * 20 + "H* LL$"


def test_plain_table_separator():
    table = ToneTable(style={"separator": " | "}, stream=StringIO())
    words, _ = table.rows(annotated(MARKED))
    assert words == "traumaid | recommends | lavage"


def test_invalid_style():
    with pytest.raises(SchemaValidationError):
        ToneTable(style={"theme": {"color": "mauve"}}, stream=StringIO())


def test_styled_table():
    table = ToneTable(stream=StringIO(), term=Terminal())
    words, tones = table.rows(annotated(MARKED))
    assert_eq_repr(
        words,
        capres("blue", "traumaid") + " " + capres("blue", "recommends") +
        " " + styled(["bold", "red"], "lavage"))
    assert_eq_repr(
        tones,
        capres("blue", "L+H*") + "    " + " " +
        capres("blue", "LH%") + "       " + " " +
        styled(["bold", "red"], "H* LL$"))


def test_styled_table_lookup_misses():
    table = ToneTable(stream=StringIO(), term=Terminal(),
                      style={"theme": {"underline": {"lookup": {"H*": True}}},
                             "rheme": {"color": {"lookup": {"L+H*": "red"}}}})
    words, tones = table.rows(annotated(MARKED))
    assert words == "traumaid recommends lavage"
    assert tones == "L+H*     LH%        H* LL$"


def test_styled_table_skips_missing_tones():
    table = ToneTable(stream=StringIO(), term=Terminal(),
                      style={"theme": {"underline": True}})
    words, tones = table.rows(
        annotated("traumaid recommends lavage@hstarllb"))
    assert_eq_repr(
        words,
        capres("smul", "traumaid") + " " + capres("smul", "recommends") +
        " " + styled(["bold", "red"], "lavage"))
    assert_eq_repr(tones, " " * 20 + styled(["bold", "red"], "H* LL$"))


def test_style_function_error():
    class Broken(TermProcessors):
        def render(self, style_attr, value):
            raise KeyError(style_attr)

    procs = list(Broken(Terminal()).post_from_style({"color": "red"}))
    token = read_tokens("lavage@hstar")[0]
    with pytest.raises(StyleFunctionError) as excinfo:
        result = "lavage"
        for proc in procs:
            result = proc((token, "lavage"), result)
    assert "KeyError" in str(excinfo.value)
