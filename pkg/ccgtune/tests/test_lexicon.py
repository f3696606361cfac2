import json

import pytest

from ccgtune.categories import format_category
from ccgtune.categories import lower_raised
from ccgtune.categories import parse_category
from ccgtune.lexicon import FORMS
from ccgtune.lexicon import Lexicon
from ccgtune.lexicon import LexiconError
from ccgtune.lexicon import UnknownWord
from ccgtune.lexicon import raised_forms
from ccgtune.schema import SchemaValidationError
from ccgtune.tests.utils import assert_contains
from ccgtune.tests.utils import lexicon


def printed(cats, features=False):
    return [format_category(c, "curried", features=features) for c in cats]


def test_bundled_lexicon():
    lex = lexicon()
    assert len(lex) == len(lex.words)
    for word in ["which", "does", "is", "address", "addresses", "a", "the",
                 "left", "thoracostomy", "urinalysis", "traumaid"]:
        assert word in lex
    assert "zebra" not in lex


def test_lookup_is_case_insensitive():
    lex = lexicon()
    assert printed(lex.lookup("URINALYSIS")) == printed(lex.lookup("urinalysis"))


def test_lookup_returns_fresh_variables():
    lex = lexicon()
    first = lex.lookup("addresses")[0]
    second = lex.lookup("addresses")[0]
    assert first != second
    assert printed([first], True) == printed([second], True)


def test_lookup_unknown_word():
    with pytest.raises(UnknownWord) as excinfo:
        lexicon().lookup("zebra")
    assert "zebra" in str(excinfo.value)
    assert isinstance(excinfo.value, KeyError)


def test_raised_forms_of_np():
    forms = dict(raised_forms(parse_category("NP:lavage'")))
    assert set(forms) == set(FORMS[1:])
    assert printed([forms["subject"]], True) == \
        ["S[X]:y/(S[X]:y\\NP:lavage')"]
    assert printed([forms["object"]], True) == \
        ["S[X]:y\\(S[X]:y/NP:lavage')"]
    assert printed([forms["vp_object"]], True) == \
        ["(S[X]:y\\NP:z)\\((S[X]:y\\NP:z)/NP:lavage')"]
    for cat in forms.values():
        if cat.arg.arg == parse_category("NP:lavage'"):
            assert format_category(lower_raised(cat)) == "np:lavage"


def test_raised_forms_of_determiner():
    forms = dict(raised_forms(parse_category("NP:a' n/N:n")))
    assert printed([forms["subject"]]) == ["(S:x/(S:x\\NP:a' y))/N:y"]


def test_raised_forms_rejects_other_categories():
    with pytest.raises(ValueError):
        raised_forms(parse_category("N:thoracostomy'"))


def test_raised_entry_expands():
    lex = Lexicon.from_dict(
        {"words": {"Lavage": [{"category": "NP:lavage'", "raised": True}]}})
    entries = list(lex.entries())
    assert [e.form for e in entries] == list(FORMS)
    assert all(e.word == "lavage" for e in entries)


def test_constants():
    lex = lexicon()
    assert lex.constants("recommended") == {"recommended_for"}
    assert lex.constants("is") == set()
    assert lex.constants("left") == {"left"}
    with pytest.raises(UnknownWord):
        lex.constants("zebra")


def test_from_dict_bad_category():
    with pytest.raises(LexiconError) as excinfo:
        Lexicon.from_dict({"words": {"x": [{"category": "S:p/"}]}},
                          source="test")
    assert "test" in str(excinfo.value)


def test_from_dict_raising_non_np():
    with pytest.raises(LexiconError):
        Lexicon.from_dict({"words": {"x": [{"category": "N:x'",
                                            "raised": True}]}})


def test_from_dict_invalid_document():
    with pytest.raises(SchemaValidationError):
        Lexicon.from_dict({"words": {"x": [{"cat": "N:x'"}]}})


def test_from_file(tmp_path):
    path = tmp_path / "lexicon.json"
    path.write_text(json.dumps(
        {"words": {"lavage": [{"category": "NP:lavage'"}]}}))
    lex = Lexicon.from_file(str(path))
    assert lex.words == ["lavage"]


@pytest.mark.parametrize("content", [None, "{not json"])
def test_from_file_errors(tmp_path, content):
    path = tmp_path / "lexicon.json"
    if content is not None:
        path.write_text(content)
    with pytest.raises(LexiconError):
        Lexicon.from_file(str(path))


def test_wh_words_have_both_question_forms():
    lex = lexicon()
    cats = printed(lex.lookup("which"), features=True)
    assert_contains(cats, "(S[wq]:λx[y x & z]/(S[dcl]:z\\NP:x))/N:y",
                    "(S[wq]:λx[y x & z]/(S[q]:z/NP:x))/N:y")
