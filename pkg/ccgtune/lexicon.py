"""Word to category lexicons.
"""

from collections import namedtuple
import json
from logging import getLogger
import os.path as op

from ccgtune.categories import Atom
from ccgtune.categories import BACKWARD
from ccgtune.categories import FORWARD
from ccgtune.categories import Slash
from ccgtune.categories import category_constants
from ccgtune.categories import format_category
from ccgtune.categories import freshen
from ccgtune.categories import parse_category
from ccgtune.schema import validate
from ccgtune.semantics import TermSyntaxError
from ccgtune.semantics import Var
from ccgtune.semantics import const_name
from ccgtune.semantics import fresh_name

lgr = getLogger(__name__)

BUNDLED_LEXICON = op.join(op.dirname(__file__), "data", "lexicon.json")

FORMS = ("plain", "subject", "object", "vp_object")

LexicalEntry = namedtuple("LexicalEntry", ["word", "category", "form"])


class UnknownWord(KeyError):
    def __init__(self, word):
        self.word = word
        super(UnknownWord, self).__init__(word)

    def __str__(self):
        return "Word not in lexicon: {!r}".format(self.word)


class LexiconError(Exception):
    """A lexicon document could not be loaded.
    """
    def __init__(self, source, detail):
        self.source = source
        super(LexiconError, self).__init__(
            "Could not load lexicon {}: {}".format(source, detail))


def raised_forms(cat):
    """Return the type-raised forms of an NP or NP/N category.

    Returns
    -------
    A list of (form, category) pairs, see FORMS.
    """
    wrap = None
    np = cat
    if isinstance(cat, Slash):
        np = cat.result
        wrap = cat.arg
    if not (isinstance(np, Atom) and np.kind == "NP"):
        raise ValueError("Only NP categories can be raised: {}"
                         .format(format_category(cat)))
    s = Atom("S", Var(fresh_name()), Var(fresh_name()))
    vp = Slash(s, BACKWARD, Atom("NP", Var(fresh_name())))
    forms = [("subject", Slash(s, FORWARD, Slash(s, BACKWARD, np))),
             ("object", Slash(s, BACKWARD, Slash(s, FORWARD, np))),
             ("vp_object", Slash(vp, BACKWARD, Slash(vp, FORWARD, np)))]
    if wrap is not None:
        forms = [(form, Slash(raised, FORWARD, wrap))
                 for form, raised in forms]
    return forms


class Lexicon(object):
    """Categories of each known word.

    Parameters
    ----------
    entries : dict
        Lower-case word -> list of LexicalEntry.
    """

    def __init__(self, entries):
        self._entries = entries

    @classmethod
    def from_dict(cls, document, source="<dict>"):
        """Build a lexicon from a document of the lexicon schema.

        Raises
        ------
        SchemaValidationError, LexiconError
        """
        validate(document, "lexicon")
        entries = {}
        for word, items in document["words"].items():
            word = word.lower()
            for item in items:
                try:
                    cat = parse_category(item["category"])
                except TermSyntaxError as exc:
                    raise LexiconError(source,
                                       "entry for {!r}: {}".format(word, exc))
                forms = [("plain", cat)]
                if item.get("raised"):
                    try:
                        forms.extend(raised_forms(cat))
                    except ValueError as exc:
                        raise LexiconError(source, exc)
                entries.setdefault(word, []).extend(
                    LexicalEntry(word, c, form) for form, c in forms)
        lgr.debug("Loaded %d words from %s", len(entries), source)
        return cls(entries)

    @classmethod
    def from_file(cls, path=None):
        """Load a JSON lexicon, the bundled one by default.

        Raises
        ------
        SchemaValidationError, LexiconError
        """
        path = path or BUNDLED_LEXICON
        try:
            with open(path, encoding="utf-8") as fh:
                document = json.load(fh)
        except (OSError, ValueError) as exc:
            raise LexiconError(path, exc)
        return cls.from_dict(document, source=path)

    def __contains__(self, word):
        return word.lower() in self._entries

    def __len__(self):
        return len(self._entries)

    @property
    def words(self):
        return sorted(self._entries)

    def lookup(self, word):
        """Return the categories of `word` with fresh variables.

        Raises
        ------
        UnknownWord
        """
        try:
            entries = self._entries[word.lower()]
        except KeyError:
            raise UnknownWord(word) from None
        lgr.debug("Lookup %r: %d categories", word, len(entries))
        return [freshen(e.category) for e in entries]

    def entries(self):
        """Yield every LexicalEntry, with fresh variables.
        """
        for word in self.words:
            for entry in self._entries[word]:
                yield entry._replace(category=freshen(entry.category))

    def constants(self, word):
        """Return the names of the constants `word` contributes.

        Raises
        ------
        UnknownWord
        """
        try:
            entries = self._entries[word.lower()]
        except KeyError:
            raise UnknownWord(word) from None
        return {const_name(c) for e in entries
                for c in category_constants(e.category)}
