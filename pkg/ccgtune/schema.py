"""JSON schemas for lexicons, knowledge bases, configuration and styles.
"""

from copy import deepcopy
import functools
import hashlib

import jsonschema

from ccgtune.semantics import NOTATIONS

_words = {
    "description": "Lexical entries keyed by lower-case word",
    "type": "object",
    "additionalProperties": {
        "type": "array",
        "minItems": 1,
        "items": {"$ref": "#/definitions/entry"}},
}

lexicon_schema = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "definitions": {
        "entry": {
            "type": "object",
            "properties": {
                "category": {
                    "description": """Category in the curried notation, for
                    example "(S[dcl]:address' x y\\NP:y)/NP:x".  Primed
                    identifiers are constants, other identifiers are
                    variables.  Feature names starting with an upper case
                    letter are feature variables.""",
                    "type": "string",
                    "minLength": 1},
                "raised": {
                    "description": """Also provide the type-raised forms of
                    an NP (or NP/N) entry.""",
                    "type": "boolean",
                    "default": False}},
            "required": ["category"],
            "additionalProperties": False},
    },
    "type": "object",
    "properties": {"words": _words},
    "required": ["words"],
    "additionalProperties": False,
}

kb_schema = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "definitions": {
        "identifier": {"type": "string", "pattern": "^[a-z_][a-z0-9_]*$"},
        "property": {
            "type": "object",
            "properties": {
                "name": {"$ref": "#/definitions/identifier"},
                "lexeme": {"type": "string", "minLength": 1},
                "variant": {
                    "description": """Pronunciation used when the property
                    is contrasted.  Upper-case letters mark the shifted
                    stress.""",
                    "type": ["string", "null"],
                    "default": None}},
            "required": ["name", "lexeme"],
            "additionalProperties": False},
        "entity": {
            "type": "object",
            "properties": {
                "id": {"$ref": "#/definitions/identifier"},
                "type": {"$ref": "#/definitions/identifier"},
                "determiner": {
                    "description": """Determiner used to refer to the
                    entity.  Null refers with the bare head noun.""",
                    "type": ["string", "null"],
                    "default": None},
                "properties": {
                    "description": """Head noun first, then modifiers
                    nearest first""",
                    "type": "array",
                    "items": {"$ref": "#/definitions/property"}}},
            "required": ["id", "type", "properties"],
            "additionalProperties": False},
        "fact": {
            "type": "object",
            "properties": {
                "relation": {"$ref": "#/definitions/identifier"},
                "args": {"type": "array",
                         "items": {"$ref": "#/definitions/identifier"},
                         "minItems": 2,
                         "maxItems": 2}},
            "required": ["relation", "args"],
            "additionalProperties": False},
    },
    "type": "object",
    "properties": {
        "entities": {"type": "array",
                     "items": {"$ref": "#/definitions/entity"}},
        "facts": {"type": "array",
                  "items": {"$ref": "#/definitions/fact"}},
        "relations": {"type": "array",
                      "items": {"$ref": "#/definitions/identifier"}}},
    "required": ["entities", "facts"],
    "additionalProperties": False,
}

style_schema = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "definitions": {
        "bold": {
            "description": "Whether text is bold",
            "oneOf": [{"type": "boolean"},
                      {"$ref": "#/definitions/lookup"}],
            "default": False},
        "color": {
            "description": "Foreground color of text",
            "oneOf": [{"type": "string",
                       "enum": ["black", "red", "green", "yellow",
                                "blue", "magenta", "cyan", "white"]},
                      {"$ref": "#/definitions/lookup"}],
            "default": "black"},
        "underline": {
            "description": "Whether text is underlined",
            "oneOf": [{"type": "boolean"},
                      {"$ref": "#/definitions/lookup"}],
            "default": False},
        "lookup": {
            "description": "Map a tone label (such as 'L+H*') to a style",
            "type": "object",
            "properties": {"lookup": {"type": "object"}},
            "additionalProperties": False},
        "part": {
            "type": "object",
            "properties": {"bold": {"$ref": "#/definitions/bold"},
                           "color": {"$ref": "#/definitions/color"},
                           "underline": {"$ref": "#/definitions/underline"}},
            "additionalProperties": False},
    },
    "type": "object",
    "properties": {
        "theme": {
            "description": "Style of words in the theme",
            "$ref": "#/definitions/part",
            "default": {"color": "blue"}},
        "rheme": {
            "description": "Style of words in the rheme",
            "$ref": "#/definitions/part",
            "default": {"color": "red",
                        "bold": {"lookup": {"H*": True}}}},
        "separator": {
            "description": "Separator used between columns",
            "type": "string",
            "default": " "},
    },
    "additionalProperties": False,
}

config_schema = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "properties": {
        "lexicon": {
            "description": """Path to a lexicon file.  With the default
            null value, the bundled lexicon is used.""",
            "type": ["string", "null"],
            "default": None},
        "kb": {
            "description": """Path to a knowledge base file.  With the
            default null value, the bundled knowledge base is used.""",
            "type": ["string", "null"],
            "default": None},
        "input": {
            "description": "Path to the query file, or '-' for stdin",
            "type": "string",
            "default": "-"},
        "mode": {
            "description": """'marker' prints the toned answer, 'pretty' a
            styled word/tone table, and 'trace' the full analysis.""",
            "type": "string",
            "enum": ["marker", "pretty", "trace"],
            "default": "marker"},
        "all_parses": {
            "description": "Report every analysis of each query",
            "type": "boolean",
            "default": False},
        "notation": {
            "description": "How terms and categories are printed",
            "type": "string",
            "enum": list(NOTATIONS),
            "default": "functional"},
        "max_workers": {
            "description": """Number of queries processed concurrently.
            Null picks a value from the number of processors.""",
            "oneOf": [{"type": "integer", "minimum": 1},
                      {"type": "null"}],
            "default": None},
        "continue_on_failure": {
            "description": "Keep processing queries after one fails",
            "type": "boolean",
            "default": True},
        "style": {
            "description": "Styles for the 'pretty' mode",
            "type": "object",
            "default": {}},
    },
    "additionalProperties": False,
}

SCHEMAS = {"lexicon": lexicon_schema,
           "kb": kb_schema,
           "style": style_schema,
           "config": config_schema}


def defaults(kind="config"):
    """Return a new dict of the default value of each schema property.

    Parameters
    ----------
    kind : {"config", "style"}
    """
    return {key: deepcopy(value["default"])
            for key, value in SCHEMAS[kind]["properties"].items()
            if "default" in value}


class SchemaValidationError(Exception):
    """Exception raised if a document does not validate.
    """
    def __init__(self, kind, original_exception):
        self.kind = kind
        msg = ("Invalid {}\n\n{}\n\n\n"
               "See ccgtune.schema for the {} definition."
               .format(kind, original_exception, kind))
        super(SchemaValidationError, self).__init__(msg)


class StrHasher():
    """A wrapper for objects that hashes based on the string representation.

    Its @StrHasher.lru_cache decorator caches calls on unhashable arguments
    such as the dicts read from JSON documents.
    """
    def __init__(self, obj):
        self.value = obj
        self.hash = hashlib.md5(str(obj).encode()).hexdigest()

    def __hash__(self):
        return hash(self.hash)

    def __eq__(self, other):
        return self.hash == other.hash

    @staticmethod
    def _to(func):
        def cached_func(*args, **kwargs):
            return func(StrHasher((args, kwargs)))
        return cached_func

    @staticmethod
    def _from(func):
        def cached_func(wrapper):
            return func(*wrapper.value[0], **wrapper.value[1])
        return cached_func

    @classmethod
    def lru_cache(cls, maxsize=128):
        """LRU cache decorator keyed on the string form of the arguments.
        """
        def decorator(func):
            lru_cached_func = functools.lru_cache(maxsize=maxsize)(
                cls._from(func))
            cached_func = functools.wraps(func)(cls._to(lru_cached_func))
            for op in dir(lru_cached_func):
                if op.startswith('cache_'):
                    setattr(cached_func, op, getattr(lru_cached_func, op))
            return cached_func
        return decorator


@StrHasher.lru_cache()  # lexicons and styles are often checked repeatedly
def validate(document, kind):
    """Check `document` against the schema for `kind`.

    Parameters
    ----------
    document : dict
    kind : {"lexicon", "kb", "style", "config"}

    Raises
    ------
    SchemaValidationError if `document` is not valid.
    """
    try:
        jsonschema.validate(document, SCHEMAS[kind])
    except jsonschema.ValidationError as exc:
        new_exc = SchemaValidationError(kind, exc)
        # The original exception is already part of the message.
        new_exc.__cause__ = None
        raise new_exc


def value_type(value):
    """Classify the value of a bold, color, or underline key.

    Returns
    -------
    str, {"simple", "lookup"}
    """
    try:
        keys = list(value.keys())
    except AttributeError:
        return "simple"
    if keys == ["lookup"]:
        return "lookup"
    raise ValueError("Type of `value` could not be determined")
