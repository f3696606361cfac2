import pytest

from unittest import mock
from ccgtune.schema import SchemaValidationError
from ccgtune.schema import defaults
from ccgtune.schema import validate
from ccgtune.schema import value_type


@pytest.mark.parametrize("kind", ["lexicon", "kb", "style", "config"])
def test_validate_error(kind):
    # With caching we want to ensure that we do not cache the error
    # somehow and do raise it again
    for _ in range(3):
        with pytest.raises(SchemaValidationError) as excinfo:
            validate("not ok", kind)
        assert excinfo.value.kind == kind
        assert excinfo.value.__cause__ is None


def test_validate_ok():
    with mock.patch("jsonschema.validate") as mock_validate:
        for i in range(3):
            validate({}, "style")
        # With caching we must not revalidate
        mock_validate.assert_called_once()
        mock_validate.reset_mock()

        for _ in range(3):
            validate({"words": {"a": [{"category": "NP:a'"}]}}, "lexicon")
        mock_validate.assert_called_once()


@pytest.mark.parametrize("document", [
    {"words": {}},
    {"words": {"lavage": [{"category": "NP:lavage'", "raised": True}]}},
])
def test_validate_lexicon(document):
    validate(document, "lexicon")


@pytest.mark.parametrize("document", [
    {},
    {"words": {"lavage": []}},
    {"words": {"lavage": [{"category": ""}]}},
    {"words": {"lavage": [{"category": "NP", "raised": "yes"}]}},
    {"words": {"lavage": [{"category": "NP", "extra": 1}]}},
])
def test_validate_lexicon_invalid(document):
    with pytest.raises(SchemaValidationError):
        validate(document, "lexicon")


def test_validate_kb():
    validate({"entities": [{"id": "lavage", "type": "procedure",
                            "properties": [{"name": "lavage",
                                            "lexeme": "lavage"}]}],
              "facts": [{"relation": "recommend",
                         "args": ["traumaid", "lavage"]}]},
             "kb")


@pytest.mark.parametrize("document", [
    {"entities": [], "facts": [{"relation": "r", "args": ["a"]}]},
    {"entities": [{"id": "Lavage", "type": "procedure", "properties": []}],
     "facts": []},
    {"entities": [{"id": "lavage", "properties": []}], "facts": []},
])
def test_validate_kb_invalid(document):
    with pytest.raises(SchemaValidationError):
        validate(document, "kb")


@pytest.mark.parametrize("document", [
    {"theme": {"color": "green", "underline": True}},
    {"rheme": {"bold": {"lookup": {"H*": True}},
               "color": {"lookup": {"LL$": "red"}}}},
    {"separator": " | "},
])
def test_validate_style(document):
    validate(document, "style")


@pytest.mark.parametrize("document", [
    {"theme": {"color": "mauve"}},
    {"theme": {"bold": "yes"}},
    {"theme": {"blink": True}},
    {"focus": {}},
])
def test_validate_style_invalid(document):
    with pytest.raises(SchemaValidationError):
        validate(document, "style")


@pytest.mark.parametrize("document", [
    {"mode": "verbose"},
    {"max_workers": 0},
    {"notation": "lisp"},
    {"unknown": 1},
])
def test_validate_config_invalid(document):
    with pytest.raises(SchemaValidationError):
        validate(document, "config")


def test_defaults():
    config = defaults()
    assert config["mode"] == "marker"
    assert defaults("style")["separator"] == " "
    validate(config, "config")
    assert config["input"] == "-"
    assert config["continue_on_failure"] is True
    assert config["max_workers"] is None


def test_defaults_are_copies():
    style = defaults("style")
    style["theme"]["color"] = "green"
    assert defaults("style")["theme"] == {"color": "blue"}


def test_value_type():
    assert value_type(True) == "simple"
    assert value_type("red") == "simple"
    assert value_type({"lookup": {"H*": "red"}}) == "lookup"

    with pytest.raises(ValueError):
        value_type({"unknown": 1})
