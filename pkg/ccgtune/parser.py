"""Parse tone-annotated word sequences into information structures.

Parsing is exhaustive: a chart holds every distinct sign over each span,
built bottom-up with the combinatory rules and closed under the phrase
promotion rules.  Complete analyses are read off the signs spanning the
whole input.
"""

from collections import namedtuple
from collections import OrderedDict
from logging import getLogger

from nltk.sem.logic import AndExpression
from nltk.sem.logic import LambdaExpression

from ccgtune.categories import Atom
from ccgtune.categories import Slash
from ccgtune.categories import canonical_key
from ccgtune.categories import format_category
from ccgtune.categories import lower_raised
from ccgtune.categories import map_sems
from ccgtune.categories import size
from ccgtune.categories import to_lambda
from ccgtune.categories import unify_syn
from ccgtune.prosody import NotAPhrase
from ccgtune.prosody import Tone
from ccgtune.prosody import UTTERANCE_ATOM
from ccgtune.prosody import combine_signs
from ccgtune.prosody import format_marker
from ccgtune.prosody import format_pros
from ccgtune.prosody import is_null_tone
from ccgtune.prosody import lexical_sign
from ccgtune.prosody import parse_marker
from ccgtune.prosody import promote_null_theme
from ccgtune.prosody import promote_phrase
from ccgtune.semantics import App
from ccgtune.semantics import OccursCheck
from ccgtune.semantics import VariableNamer
from ccgtune.semantics import beta_normalize
from ccgtune.semantics import format_term

lgr = getLogger(__name__)

PUNCTUATION = "?,."


class AnnotatedToken(namedtuple("AnnotatedToken",
                                ["word", "accent", "boundary"])):
    __slots__ = ()

    def __new__(cls, word, accent=None, boundary=None):
        return super(AnnotatedToken, cls).__new__(cls, word, accent,
                                                  boundary)

    @property
    def marker(self):
        return format_marker(self.accent, self.boundary)

    def __str__(self):
        marker = self.marker
        return "{}@{}".format(self.word, marker) if marker else self.word


def read_tokens(line):
    """Read a line of `word[@marker]` items.

    >>> [str(t) for t in read_tokens("does urinalysis@hstar address@llb?")]
    ['does', 'urinalysis@hstar', 'address@llb']

    Raises
    ------
    UnknownMarker
    """
    tokens = []
    for item in line.split():
        word, _, marker = item.partition("@")
        word = word.strip(PUNCTUATION)
        marker = marker.strip(PUNCTUATION)
        if not word:
            continue
        accent, boundary = parse_marker(marker) if marker else (None, None)
        tokens.append(AnnotatedToken(word, accent, boundary))
    return tokens


def format_tokens(tokens):
    return " ".join(str(t) for t in tokens)


class InfoStructure(namedtuple("InfoStructure",
                               ["proposition", "theme", "rheme", "category",
                                "theme_span", "rheme_span", "marked",
                                "sign"])):
    """One analysis of an utterance.

    `theme` is None when the whole utterance is the rheme.  Spans are
    (start, end) token offsets.  `marked` is true when the theme contains an
    accented word.
    """
    __slots__ = ()


OpenProposition = namedtuple("OpenProposition",
                             ["variable", "restrictor", "matrix"])

ParserState = namedtuple("ParserState", ["stack", "input", "record",
                                         "action"])


class NoParse(Exception):
    """No complete analysis was found.

    `position` is the end of the longest prefix of the input that forms a
    constituent.
    """
    def __init__(self, tokens, position, reason=None):
        self.tokens = tokens
        self.position = position
        message = ("No analysis of {!r}; longest constituent prefix ends at "
                   "token {}".format(format_tokens(tokens), position))
        if reason:
            message += "; " + reason
        super(NoParse, self).__init__(message)


class SeveralRhemes(NoParse):
    """The input spans a sentence only with more than one rheme.

    `spans` holds the (start, end) token spans of the rhemes.
    """
    def __init__(self, tokens, position, spans):
        self.spans = spans
        super(SeveralRhemes, self).__init__(
            tokens, position,
            "the tune marks {} rhemes ({}) where one is allowed".format(
                len(spans),
                ", ".join(repr(" ".join(t.word for t in tokens[s:e]))
                          for s, e in spans)))


class NotAWhQuestion(ValueError):
    def __init__(self, proposition):
        super(NotAWhQuestion, self).__init__(
            "Not a wh-question: {}".format(format_term(proposition)))


# Chart

def sign_key(sign):
    """Return a key identifying `sign` up to variable renaming.
    """
    namer = VariableNamer()
    parts = [canonical_key(sign.syn, namer), format_pros(sign.pros)]
    for label, entries in (("theme", sign.record.themes),
                           ("rheme", sign.record.rhemes)):
        for entry in entries:
            parts.append("{}[{}:{}]{}".format(
                label, entry.start, entry.end,
                canonical_key(entry.category, namer)))
    return " | ".join(parts)


def close_cell(signs, null_theme=False):
    """Close `signs` under the unary promotion rules, dropping duplicates.

    Parameters
    ----------
    signs : list of Sign
    null_theme : bool, optional
        Whether null-tone signs may be promoted to unmarked themes.
    """
    closed = OrderedDict()
    agenda = list(signs)
    while agenda:
        sign = agenda.pop(0)
        key = sign_key(sign)
        if key in closed:
            continue
        closed[key] = sign
        if null_theme and is_null_tone(sign.pros):
            agenda.append(promote_null_theme(sign))
        try:
            agenda.append(promote_phrase(sign)[0])
        except NotAPhrase:
            pass
    return list(closed.values())


def allows_null_theme(tokens):
    return not any(t.accent is Tone.LHSTAR for t in tokens)


def build_chart(tokens, lexicon):
    """Return a dict mapping each span (start, end) to its signs.

    Raises
    ------
    UnknownWord
    """
    null_theme = allows_null_theme(tokens)
    chart = {}
    for i, token in enumerate(tokens):
        signs = lexical_sign(token.word, lexicon, token.accent,
                             token.boundary, position=i)
        chart[(i, i + 1)] = close_cell(signs, null_theme)
    n = len(tokens)
    for width in range(2, n + 1):
        for start in range(n - width + 1):
            end = start + width
            signs = []
            for mid in range(start + 1, end):
                for left in chart[(start, mid)]:
                    for right in chart[(mid, end)]:
                        signs.extend(combine_signs(left, right))
            chart[(start, end)] = close_cell(signs, null_theme)
            lgr.debug("Span %d-%d: %d signs", start, end,
                      len(chart[(start, end)]))
    return chart


# Analyses

def _normalized(cat):
    return map_sems(cat, beta_normalize)


def info_from_sign(sign, tokens):
    """Build the InfoStructure of a complete sign.
    """
    record = sign.record
    rheme = record.rhemes[0]
    theme = record.themes[0] if record.themes else None
    category = _normalized(sign.syn)
    marked = False
    theme_cat = theme_span = None
    if theme is not None:
        theme_cat = _normalized(theme.category)
        theme_span = (theme.start, theme.end)
        marked = any(t.accent is not None
                     for t in tokens[theme.start:theme.end])
    return InfoStructure(proposition=category.sem,
                         theme=theme_cat,
                         rheme=_normalized(rheme.category),
                         category=category,
                         theme_span=theme_span,
                         rheme_span=(rheme.start, rheme.end),
                         marked=marked,
                         sign=sign)


def is_sentence(sign):
    """Whether `sign` is an utterance of category S, whatever its record.
    """
    return (sign.pros == UTTERANCE_ATOM and
            isinstance(sign.syn, Atom) and sign.syn.kind == "S")


def is_complete(sign):
    """Whether `sign` is a complete utterance with one rheme and at most
    one theme.
    """
    return (is_sentence(sign) and
            len(sign.record.rhemes) == 1 and
            len(sign.record.themes) <= 1)


def info_key(info):
    """Key identifying an analysis up to variable renaming and NP raising.
    """
    def cat_key(cat):
        if cat is None:
            return ""
        return format_category(lower_raised(cat), notation="curried")
    return (format_term(info.proposition, notation="curried"),
            info.theme_span or (-1, -1), cat_key(info.theme),
            info.rheme_span, cat_key(info.rheme))


def _total_size(info):
    return (size(info.theme) if info.theme is not None else 0) + \
        size(info.rheme)


def collect_analyses(signs, tokens):
    """Return the distinct analyses among the complete `signs`, in a
    deterministic order.

    Analyses differing only in whether an NP was type-raised are merged,
    keeping the smaller categories.
    """
    found = {}
    for sign in signs:
        if not is_complete(sign):
            continue
        info = info_from_sign(sign, tokens)
        key = info_key(info)
        known = found.get(key)
        if known is None or _total_size(info) < _total_size(known):
            found[key] = info
    return [found[key] for key in sorted(found)]


def longest_prefix(chart, n):
    return max([j for j in range(1, n + 1) if chart.get((0, j))],
               default=0)


def parse_all(tokens, lexicon):
    """Return every analysis of `tokens`.

    Parameters
    ----------
    tokens : list of AnnotatedToken
    lexicon : Lexicon

    Returns
    -------
    A non-empty list of InfoStructure.

    Raises
    ------
    NoParse
        SeveralRhemes when the only sentence analyses carry more than one
        rheme.
    UnknownWord
    """
    if not tokens:
        raise ValueError("Nothing to parse")
    chart = build_chart(tokens, lexicon)
    n = len(tokens)
    analyses = collect_analyses(chart[(0, n)], tokens)
    if not analyses:
        position = longest_prefix(chart, n)
        for sign in chart[(0, n)]:
            if is_sentence(sign) and len(sign.record.rhemes) > 1:
                raise SeveralRhemes(
                    tokens, position,
                    [(e.start, e.end) for e in sign.record.rhemes])
        raise NoParse(tokens, position)
    lgr.debug("%d analyses of %r", len(analyses), format_tokens(tokens))
    return analyses


def selection_key(info):
    """Sort key placing the preferred analysis first.

    Marked themes come first, then longer themes, then themes starting
    further left.  The rest is a stable tie-break.
    """
    if info.theme is None:
        theme_len, theme_start = 0, 0
    else:
        theme_len = info.theme_span[1] - info.theme_span[0]
        theme_start = info.theme_span[0]
    return (not info.marked, -theme_len, theme_start, _total_size(info),
            info_key(info))


def select_analysis(analyses):
    """Pick the preferred analysis.
    """
    if not analyses:
        raise ValueError("No analyses to select from")
    best = min(analyses, key=selection_key)
    lgr.debug("Selected analysis with theme span %s of %d",
              best.theme_span, len(analyses))
    return best


def question_form(info):
    """Split a wh-question into its variable, restrictor and matrix.

    Raises
    ------
    NotAWhQuestion
    """
    prop = info.proposition
    if not (isinstance(prop, LambdaExpression) and
            isinstance(prop.term, AndExpression)):
        raise NotAWhQuestion(prop)
    return OpenProposition(prop.variable.name, prop.term.first,
                           prop.term.second)


def recombine(info):
    """Rebuild the proposition from the theme and the rheme.

    Whichever of the two takes the other as argument is applied to it.
    """
    if info.theme is None:
        return beta_normalize(to_lambda(info.rheme))
    for functor, arg in ((info.theme, info.rheme), (info.rheme, info.theme)):
        if not isinstance(functor, Slash):
            continue
        try:
            binding = unify_syn(functor.arg, arg)
        except OccursCheck:
            binding = None
        if binding is not None:
            return beta_normalize(App(to_lambda(functor), to_lambda(arg)))
    raise ValueError("Theme and rheme do not combine")


# Derivation replay

def _stack_record(stack):
    record = None
    for sign in stack:
        record = sign.record if record is None else record + sign.record
    return record


def shift_reduce_steps(sign, tokens):
    """Replay the derivation of `sign` as shift-reduce parser states.

    Returns
    -------
    A list of ParserState, one per shift, reduce or promote action.
    """
    steps = []
    stack = []

    def push(new, action, pop=0):
        for _ in range(pop):
            stack.pop()
        stack.append(new)
        steps.append(ParserState(tuple(stack), tuple(tokens[new.end:]),
                                 _stack_record(stack), action))

    def visit(node):
        if node.rule == "lex":
            push(node, "shift {}".format(tokens[node.start]))
        elif node.rule == "promote":
            visit(node.children[0])
            push(node, "promote", pop=1)
        elif node.rule == "null_theme":
            visit(node.children[0])
            push(node, "promote unmarked theme", pop=1)
        else:
            left, right = node.children
            visit(left)
            visit(right)
            push(node, "reduce {} / {}".format(*node.rule), pop=2)

    visit(sign)
    return steps


def format_state(state, notation="functional"):
    stack = "  ".join(
        "[{} {}]".format(format_category(s.syn, notation),
                         format_pros(s.pros))
        for s in state.stack)
    return "{:<28} {} || {}".format(state.action, stack,
                                    format_tokens(state.input))


def format_info(info, notation="functional"):
    """Return the Proposition/Theme/Rheme block of `info`.
    """
    theme = ("none" if info.theme is None
             else format_category(info.theme, notation))
    return "\n".join([
        "Proposition: {}".format(format_category(info.category, notation)),
        "Theme: {}".format(theme),
        "Rheme: {}".format(format_category(info.rheme, notation))])
