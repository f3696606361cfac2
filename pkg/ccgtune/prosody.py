"""Tones, prosodic categories and signs.

A sign pairs a syntactic category with a prosodic one.  Two signs combine
only when a syntactic rule and a prosodic rule both succeed on them.
Promotion of complete intonational phrases records their syntactic category
as the theme or rheme of the clause.
"""

from collections import namedtuple
from collections import OrderedDict
from enum import Enum
from logging import getLogger

from ccgtune.categories import RULES
from ccgtune.categories import RuleInapplicable
from ccgtune.categories import TaggedTuple
from ccgtune.categories import apply_binding
from ccgtune.categories import focus_category
from ccgtune.semantics import BinderClash
from ccgtune.semantics import Var
from ccgtune.semantics import VariableNamer
from ccgtune.semantics import fresh_name
from ccgtune.semantics import is_ground
from ccgtune.semantics import is_var
from ccgtune.semantics import resolve
from ccgtune.semantics import var_name
from ccgtune.semantics import walk

lgr = getLogger(__name__)


class Tone(Enum):
    HSTAR = "H*"
    LHSTAR = "L+H*"
    L = "L"
    LL = "LL%"
    LLB = "LL$"
    LH = "LH%"
    LHB = "LH$"
    NULL = "null"

    @property
    def is_accent(self):
        return self in (Tone.HSTAR, Tone.LHSTAR)

    @property
    def is_boundary(self):
        return self not in (Tone.HSTAR, Tone.LHSTAR, Tone.NULL)

    @property
    def is_final(self):
        """Whether the tone may only end an utterance.
        """
        return self in (Tone.LLB, Tone.LHB)

    @property
    def marker(self):
        for marker, tone in MARKERS.items():
            if tone is self:
                return marker
        return ""


# Input and output spelling of tones.  A word carrying an accent and a
# boundary is marked with the accent's spelling followed by the boundary's.
MARKERS = OrderedDict([
    ("hstar", Tone.HSTAR),
    ("lhstar", Tone.LHSTAR),
    ("l", Tone.L),
    ("ll", Tone.LL),
    ("lh", Tone.LH),
    ("llb", Tone.LLB),
    ("lhb", Tone.LHB),
])


class UnknownMarker(ValueError):
    def __init__(self, marker):
        self.marker = marker
        super(UnknownMarker, self).__init__(
            "Unknown tone marker: {!r} (known: {})".format(
                marker, ", ".join(MARKERS)))


def parse_marker(marker):
    """Split a tone marker into its accent and boundary.

    Returns
    -------
    A tuple (accent, boundary) where each item is a Tone or None.

    Raises
    ------
    UnknownMarker

    >>> parse_marker("hstarllb")
    (<Tone.HSTAR: 'H*'>, <Tone.LLB: 'LL$'>)
    """
    accent = None
    rest = marker
    for name in ("lhstar", "hstar"):
        if marker.startswith(name):
            accent = MARKERS[name]
            rest = marker[len(name):]
            break
    boundary = None
    if rest:
        boundary = MARKERS.get(rest)
        if boundary is None or not boundary.is_boundary:
            raise UnknownMarker(marker)
    if accent is None and boundary is None:
        raise UnknownMarker(marker)
    return accent, boundary


def format_marker(accent, boundary):
    return "".join(t.marker for t in (accent, boundary) if t is not None)


# Prosodic categories

UTTERANCE = "utterance"
LEVELS = ("p", "u", "b", UTTERANCE)
INFOS = ("theme", "rheme", "lh", "ll")


class PAtom(TaggedTuple, namedtuple("PAtom", ["level", "info"])):
    """Prosodic atom such as p:theme.

    Either field may be a Var, which makes the atom the X:Y form.
    """
    __slots__ = ()


class PSlash(TaggedTuple, namedtuple("PSlash",
                                     ["result", "direction", "arg"])):
    __slots__ = ()


UTTERANCE_ATOM = PAtom(UTTERANCE, None)


def pvar():
    """Return an X:Y atom with fresh variables.
    """
    return PAtom(Var(fresh_name()), Var(fresh_name()))


def tone_category(tone):
    """Return the prosodic category of `tone`.
    """
    if tone is Tone.NULL:
        x = pvar()
        return PSlash(x, "/", x)
    if tone is Tone.HSTAR:
        return PSlash(PAtom("p", "rheme"), "/", PAtom("b", "ll"))
    if tone is Tone.LHSTAR:
        return PSlash(PAtom("p", "theme"), "/", PAtom("b", "lh"))
    if tone in (Tone.L, Tone.LL, Tone.LLB):
        level = "u" if tone is Tone.LLB else "p"
        return PSlash(PAtom(level, "rheme"), "\\",
                      tone_category(Tone.HSTAR))
    level = "u" if tone is Tone.LHB else "p"
    return PSlash(PAtom(level, "theme"), "\\", tone_category(Tone.LHSTAR))


def _walk_field(value, binding):
    if is_var(value):
        return walk(value, binding)
    return value


def _unify_field(a, b, binding):
    a = _walk_field(a, binding)
    b = _walk_field(b, binding)
    if is_var(a):
        if not (is_var(b) and var_name(a) == var_name(b)):
            binding[var_name(a)] = b
        return True
    if is_var(b):
        binding[var_name(b)] = a
        return True
    return a == b


def _unify_pros(a, b, binding):
    if isinstance(a, PAtom) and isinstance(b, PAtom):
        # utterance unifies only with itself.
        if (a.level == UTTERANCE) != (b.level == UTTERANCE):
            return False
        return (_unify_field(a.level, b.level, binding) and
                _unify_field(a.info, b.info, binding))
    if isinstance(a, PSlash) and isinstance(b, PSlash):
        return (a.direction == b.direction and
                _unify_pros(a.result, b.result, binding) and
                _unify_pros(a.arg, b.arg, binding))
    return False


def unify_pros(a, b, binding=None):
    """Return a binding unifying `a` and `b`, or None.
    """
    binding = dict(binding or {})
    if _unify_pros(a, b, binding):
        return binding
    return None


def _resolve_pros(cat, binding):
    if isinstance(cat, PAtom):
        return PAtom(_walk_field(cat.level, binding),
                     _walk_field(cat.info, binding))
    return PSlash(_resolve_pros(cat.result, binding), cat.direction,
                  _resolve_pros(cat.arg, binding))


def pros_combine(a, b, rule):
    """Combine prosodic categories `a` and `b` (in that order) by `rule`.

    Parameters
    ----------
    a, b : PAtom or PSlash
    rule : {"fwd_apply", "bwd_apply", "fwd_compose"}

    Returns
    -------
    The resulting category, or None if the rule does not apply.
    """
    if rule == "fwd_apply":
        if isinstance(a, PSlash) and a.direction == "/":
            binding = unify_pros(a.arg, b)
            if binding is not None:
                return _resolve_pros(a.result, binding)
    elif rule == "bwd_apply":
        if isinstance(b, PSlash) and b.direction == "\\":
            binding = unify_pros(b.arg, a)
            if binding is not None:
                return _resolve_pros(b.result, binding)
    elif rule == "fwd_compose":
        if (isinstance(a, PSlash) and a.direction == "/" and
                isinstance(b, PSlash) and b.direction == "/"):
            binding = unify_pros(a.arg, b.result)
            if binding is not None:
                return _resolve_pros(PSlash(a.result, "/", b.arg), binding)
    else:
        raise ValueError("Unknown rule: {!r}".format(rule))
    return None


def is_null_tone(cat):
    """Return true if `cat` is the pure X:Y/X:Y form.
    """
    return (isinstance(cat, PSlash) and cat.direction == "/" and
            isinstance(cat.result, PAtom) and
            is_var(cat.result.level) and
            is_var(cat.result.info) and
            cat.result == cat.arg)


def format_pros(cat, namer=None):
    """Return the printed form of a prosodic category.

    >>> format_pros(tone_category(Tone.LHB))
    'u:theme\\\\(p:theme/b:lh)'
    >>> format_pros(tone_category(Tone.NULL))
    'X:Y/X:Y'
    """
    namer = namer or VariableNamer(("X", "Y", "Z", "W", "V", "U"))
    if isinstance(cat, PAtom):
        if cat.level == UTTERANCE:
            return UTTERANCE
        return ":".join(namer(var_name(f)) if is_var(f) else f
                        for f in (cat.level, cat.info))
    parts = []
    for part in (cat.result, cat.arg):
        text = format_pros(part, namer)
        parts.append("(" + text + ")" if isinstance(part, PSlash) else text)
    return parts[0] + cat.direction + parts[1]


# Signs

RecordEntry = namedtuple("RecordEntry", ["category", "start", "end"])


class InfoRecord(namedtuple("InfoRecord", ["themes", "rhemes"])):
    """Themes and rhemes recorded by promotion, as tuples of RecordEntry.
    """
    __slots__ = ()

    def __new__(cls, themes=(), rhemes=()):
        return super(InfoRecord, cls).__new__(cls, tuple(themes),
                                              tuple(rhemes))

    def __add__(self, other):
        return InfoRecord(self.themes + other.themes,
                          self.rhemes + other.rhemes)

    def instantiate(self, binding):
        """Return the record with `binding` applied to every category.
        """
        if not binding:
            return self

        def update(entries):
            return tuple(e._replace(category=apply_binding(e.category,
                                                           binding))
                         for e in entries)
        return InfoRecord(update(self.themes), update(self.rhemes))


EMPTY_RECORD = InfoRecord()


class Sign(namedtuple("Sign", ["start", "end", "syn", "pros", "record",
                               "rule", "children"])):
    """A syntactic and prosodic category spanning tokens [start, end).

    `rule` names how the sign was built ("lex", "promote", "null_theme", or
    a pair of syntactic and prosodic rule names) and `children` holds the
    signs it was built from.
    """
    __slots__ = ()


class NotAPhrase(ValueError):
    def __init__(self, pros):
        super(NotAPhrase, self).__init__(
            "Not a complete phrase: {}".format(format_pros(pros)))


class NotNullTone(ValueError):
    def __init__(self, pros):
        super(NotNullTone, self).__init__(
            "Not a null-tone category: {}".format(format_pros(pros)))


def open_binding(binding):
    """Restrict `binding` to the variables whose value stays open.

    Every retained variable is mapped to its fully resolved value.  Variables
    resolving to a ground term are left out.
    """
    result = {}
    for name in binding:
        try:
            value = resolve(Var(name), binding)
        except BinderClash:
            continue
        if isinstance(value, str):
            # Feature values are always ground.
            continue
        if is_var(value) or not is_ground(value):
            result[name] = value
    return result


def combine_signs(a, b):
    """Return every sign built from adjacent signs `a` and `b`.

    A result is produced for each pair of a successful syntactic rule and a
    successful prosodic rule.
    """
    if a.end != b.start:
        raise ValueError("Signs are not adjacent: {}-{} and {}-{}"
                         .format(a.start, a.end, b.start, b.end))
    pros_results = []
    for pros_rule in RULES:
        pros = pros_combine(a.pros, b.pros, pros_rule)
        if pros is not None:
            pros_results.append((pros_rule, pros))
    if not pros_results:
        return []

    signs = []
    for syn_rule, fn in RULES.items():
        try:
            syn, binding = fn(a.syn, b.syn)
        except RuleInapplicable:
            continue
        try:
            record = (a.record + b.record).instantiate(open_binding(binding))
        except BinderClash:
            lgr.debug("Dropping %s result: recorded category clashes",
                      syn_rule)
            continue
        for pros_rule, pros in pros_results:
            signs.append(Sign(a.start, b.end, syn, pros, record,
                              (syn_rule, pros_rule), (a, b)))
    return signs


def promote_phrase(sign):
    """Turn a complete phrase into an utterance constituent.

    Returns
    -------
    A tuple (sign, delta).  A p-level phrase becomes utterance/utterance and
    a u-level one becomes utterance.  `delta` is the InfoRecord entry added
    for the phrase.

    Raises
    ------
    NotAPhrase
    """
    pros = sign.pros
    if not (isinstance(pros, PAtom) and pros.level in ("p", "u") and
            pros.info in ("theme", "rheme")):
        raise NotAPhrase(pros)
    entry = RecordEntry(sign.syn, sign.start, sign.end)
    if pros.info == "theme":
        delta = InfoRecord(themes=[entry])
    else:
        delta = InfoRecord(rhemes=[entry])
    if pros.level == "p":
        new_pros = PSlash(UTTERANCE_ATOM, "/", UTTERANCE_ATOM)
    else:
        new_pros = UTTERANCE_ATOM
    return (sign._replace(pros=new_pros, record=sign.record + delta,
                          rule="promote", children=(sign,)),
            delta)


def promote_null_theme(sign):
    """Treat a null-tone sign as an unmarked theme phrase.

    Raises
    ------
    NotNullTone
    """
    if not is_null_tone(sign.pros):
        raise NotNullTone(sign.pros)
    return sign._replace(pros=PAtom("p", "theme"), rule="null_theme",
                         children=(sign,))


def word_pros(accent=None, boundary=None):
    """Return the prosodic category of a word, or None if its accent and
    boundary do not combine.
    """
    if accent is not None and boundary is not None:
        return pros_combine(tone_category(accent), tone_category(boundary),
                            "bwd_apply")
    return tone_category(accent or boundary or Tone.NULL)


def lexical_sign(word, lexicon, accent=None, boundary=None, position=0):
    """Return a sign for each lexical category of `word`.

    An accent marks every constant of the category as focused.

    Raises
    ------
    UnknownWord
    """
    signs = []
    for cat in lexicon.lookup(word):
        pros = word_pros(accent, boundary)
        if pros is None:
            lgr.debug("Accent %s and boundary %s do not combine on %r",
                      accent, boundary, word)
            return []
        if accent is not None:
            cat = focus_category(cat)
        signs.append(Sign(position, position + 1, cat, pros, EMPTY_RECORD,
                          "lex", ()))
    return signs
