"""Plan responses to wh-questions and realize them with intonation.

The rheme of the question becomes the theme of the response.  The rheme of
the response describes the answer entity, with focus placed on the
properties that set it apart from its alternatives.  Realization searches
for word strings for each part and keeps the first toned string that parses
back to the planned information structure.
"""

from collections import Counter
from collections import deque
from collections import namedtuple
from logging import getLogger

from nltk.sem.logic import LambdaExpression

from ccgtune.categories import Atom
from ccgtune.categories import BACKWARD
from ccgtune.categories import RULES
from ccgtune.categories import RuleInapplicable
from ccgtune.categories import Slash
from ccgtune.categories import atoms
from ccgtune.categories import canonical_key
from ccgtune.categories import categories_equivalent
from ccgtune.categories import category_constants
from ccgtune.categories import format_category
from ccgtune.categories import freshen
from ccgtune.categories import lower_raised
from ccgtune.categories import result_atom
from ccgtune.categories import to_lambda
from ccgtune.categories import unfocus_category
from ccgtune.categories import unify_syn
from ccgtune.categories import with_feature
from ccgtune.knowledge import AlternativeSet
from ccgtune.knowledge import UnknownEntity
from ccgtune.knowledge import contrast_steps
from ccgtune.knowledge import initial_alternatives
from ccgtune.knowledge import kb_query
from ccgtune.knowledge import stress_shift
from ccgtune.parser import AnnotatedToken
from ccgtune.parser import NoParse
from ccgtune.parser import format_tokens
from ccgtune.parser import parse_all
from ccgtune.parser import question_form
from ccgtune.prosody import Tone
from ccgtune.semantics import App
from ccgtune.semantics import Lam
from ccgtune.semantics import OccursCheck
from ccgtune.semantics import VariableNamer
from ccgtune.semantics import alpha_equal
from ccgtune.semantics import beta_normalize
from ccgtune.semantics import const_name
from ccgtune.semantics import constants
from ccgtune.semantics import focused_names
from ccgtune.semantics import format_term
from ccgtune.semantics import is_ground
from ccgtune.semantics import subterms
from ccgtune.semantics import unify_terms

lgr = getLogger(__name__)


class ResponsePlan(namedtuple("ResponsePlan",
                              ["proposition", "theme", "rheme", "category",
                               "focus_marks", "question", "answer",
                               "answers", "alternatives", "contrast",
                               "pronunciations"])):
    """Content of a response.

    `contrast` holds the ContrastStep list for the answer entity and
    `pronunciations` maps lower-case lexemes to contrastive spellings.
    """
    __slots__ = ()


Partition = namedtuple("Partition", ["theme", "rheme", "theme_first"])


class AnnotatedString(namedtuple("AnnotatedString", ["tokens", "parts"])):
    """Toned words of a response.

    `parts` gives "theme" or "rheme" for each token.
    """
    __slots__ = ()

    @property
    def words(self):
        return [t.word for t in self.tokens]


class NoAnswer(Exception):
    def __init__(self, question):
        self.question = question
        super(NoAnswer, self).__init__(
            "No answer for {} in the knowledge base".format(
                format_term(Lam(question.variable, question.matrix))))


class Unrealizable(Exception):
    def __init__(self, plan):
        self.plan = plan
        super(Unrealizable, self).__init__(
            "Cannot realize {} as theme {} and rheme {}".format(
                format_term(plan.proposition),
                format_category(plan.theme),
                format_category(plan.rheme)))


class NoFocusInRheme(ValueError):
    def __init__(self, words):
        super(NoFocusInRheme, self).__init__(
            "No word of the rheme {!r} is focused".format(" ".join(words)))


# Content

def _theme_pronunciations(theme, kb):
    """Contrastive spellings for focused descriptions inside `theme`.
    """
    found = {}
    seen = set()
    for atom in atoms(theme):
        for sub in subterms(atom.sem):
            focused = focused_names(sub)
            if not focused or not is_ground(sub):
                continue
            try:
                entity = kb.resolve(sub, partial=False)
            except UnknownEntity:
                continue
            if entity.id in seen:
                continue
            seen.add(entity.id)
            alts = AlternativeSet(kb.of_type(entity.type))
            for step in contrast_steps(entity, alts):
                if step.property.name not in focused:
                    continue
                variant = stress_shift(step.property, step.members_before,
                                       entity)
                if variant:
                    found[step.property.lexeme.lower()] = variant
    return found


def plan_response(info, kb):
    """Plan the response to the wh-question analysed as `info`.

    Raises
    ------
    NotAWhQuestion, UnknownRelation, UnknownEntity, NoAnswer
    """
    question = question_form(info)
    answers = [b[question.variable] for b in kb_query(question, kb)]
    if not answers:
        raise NoAnswer(question)
    if len(answers) > 1:
        lgr.warning("Several answers (%s), using %s",
                    ", ".join(e.id for e in answers), answers[0].id)
    x = answers[0]
    alts = initial_alternatives(x, question.restrictor, kb)
    steps = contrast_steps(x, alts)
    focused = {s.property.name for s in steps if s.focused}
    if not x.properties:
        # Referred to by its id, which carries the rheme accent.
        focused = {x.id}
    elif not focused:
        # Nothing to contrast with: the head noun carries the accent.
        lgr.debug("No contrast for %s, focusing %s", x.id,
                  x.properties[0].name)
        focused = {x.properties[0].name}
    rheme_term = kb.describe(x, focused)
    rheme = Atom("NP", rheme_term)
    theme = with_feature(info.rheme, "dcl")
    proposition = beta_normalize(App(to_lambda(theme), rheme_term))

    pronunciations = _theme_pronunciations(theme, kb)
    for step in steps:
        if step.focused:
            variant = stress_shift(step.property, step.members_before, x)
            if variant:
                pronunciations[step.property.lexeme.lower()] = variant

    marks = focused_names(proposition)
    return ResponsePlan(proposition=proposition,
                        theme=theme,
                        rheme=rheme,
                        category=Atom("S", proposition, "dcl"),
                        focus_marks=frozenset(marks),
                        question=question,
                        answer=x,
                        answers=answers,
                        alternatives=alts,
                        contrast=steps,
                        pronunciations=pronunciations)


# Realization

Edge = namedtuple("Edge", ["words", "category", "consts", "transparent"])


def _usable(cat):
    """Whether a lexical category may be used in a declarative answer.
    """
    if result_atom(cat).feature in ("q", "wq"):
        return False
    return not any(isinstance(t, LambdaExpression)
                   for a in atoms(cat) for t in subterms(a.sem))


def _const_counts(cat):
    return Counter(const_name(c) for c in category_constants(cat))


def _fits(consts, goal):
    return all(n <= goal[name] for name, n in consts.items())


def _unifies(a, b):
    try:
        return unify_syn(a, b) is not None
    except OccursCheck:
        return False


class _Plausible(object):
    """Test whether an edge can be part of a realization of `target`.
    """

    def __init__(self, target):
        self.shapes = [t for a in atoms(target) for t in subterms(a.sem)]

    def __call__(self, edge):
        sem = result_atom(edge.category).sem
        if not constants(sem):
            return True
        for shape in self.shapes:
            try:
                if unify_terms(sem, shape, {}):
                    return True
            except OccursCheck:
                continue
        return False


def generate(target, lexicon, max_edges=50000):
    """Return word sequences whose category matches `target`.

    Parameters
    ----------
    target : Atom or Slash
        Focus marks are ignored.
    lexicon : Lexicon
    max_edges : int, optional
        Stop the search after this many distinct edges.

    Returns
    -------
    A list of word tuples, shortest first.
    """
    target = unfocus_category(target)
    goal = _const_counts(target)
    plausible = _Plausible(target)
    lowered = lower_raised(target)

    lexical = []
    for entry in lexicon.entries():
        cat = entry.category
        if not _usable(cat):
            continue
        consts = _const_counts(cat)
        if not _fits(consts, goal):
            continue
        transparent = frozenset() if consts else frozenset([entry.word])
        lexical.append(Edge((entry.word,), cat, consts, transparent))
    n_transparent = len({w for e in lexical for w in e.transparent})
    max_len = sum(goal.values()) + n_transparent

    chart = []
    seen = set()
    agenda = deque(e for e in lexical if plausible(e))
    while agenda:
        edge = agenda.popleft()
        key = (edge.words, canonical_key(edge.category, VariableNamer()))
        if key in seen:
            continue
        seen.add(key)
        for other in list(chart):
            for left, right in ((other, edge), (edge, other)):
                for new in _combine_edges(left, right, goal, max_len):
                    if plausible(new):
                        agenda.append(new)
        chart.append(edge)
        if len(chart) >= max_edges:
            lgr.warning("Stopping realization search after %d edges",
                        len(chart))
            break

    found = set()
    for edge in chart:
        if edge.consts == goal and \
                _unifies(lower_raised(edge.category), lowered):
            found.add(edge.words)
    lgr.debug("Realizations of %s: %s", format_category(target),
              sorted(found))
    return sorted(found, key=lambda w: (len(w), w))


def _combine_edges(left, right, goal, max_len):
    if left.transparent & right.transparent:
        return []
    words = left.words + right.words
    if len(words) > max_len:
        return []
    consts = left.consts + right.consts
    if not _fits(consts, goal):
        return []
    transparent = left.transparent | right.transparent
    right_cat = freshen(right.category)
    edges = []
    for rule in RULES.values():
        try:
            cat, _ = rule(left.category, right_cat)
        except RuleInapplicable:
            continue
        edges.append(Edge(words, cat, consts, transparent))
    return edges


def assign_tones(partition, focus):
    """Place accents and boundaries on the words of a response.

    Parameters
    ----------
    partition : Partition
    focus : sequence of bool
        Whether each word, in surface order, is focused.

    Returns
    -------
    AnnotatedString

    Raises
    ------
    NoFocusInRheme
    """
    parts = [("theme", list(partition.theme)),
             ("rheme", list(partition.rheme))]
    if not partition.theme_first:
        parts.reverse()
    parts = [(label, words) for label, words in parts if words]
    total = sum(len(words) for _, words in parts)

    tokens = []
    labels = []
    offset = 0
    for label, words in parts:
        part_focus = list(focus[offset:offset + len(words)])
        is_rheme = label == "rheme"
        if is_rheme and not any(part_focus):
            raise NoFocusInRheme(words)
        marked = any(part_focus)
        for idx, word in enumerate(words):
            accent = boundary = None
            if part_focus[idx]:
                accent = Tone.HSTAR if is_rheme else Tone.LHSTAR
            if idx == len(words) - 1 and marked:
                final = offset + idx == total - 1
                if is_rheme:
                    boundary = Tone.LLB if final else Tone.L
                else:
                    boundary = Tone.LHB if final else Tone.LH
            tokens.append(AnnotatedToken(word, accent, boundary))
            labels.append(label)
        offset += len(words)
    return AnnotatedString(tuple(tokens), tuple(labels))


def emit_tts(annotated):
    """Return the marker line of an AnnotatedString.

    >>> emit_tts(AnnotatedString((AnnotatedToken("lavage", Tone.HSTAR,
    ...                                          Tone.LLB),), ("rheme",)))
    'lavage@hstarllb'
    """
    return format_tokens(annotated.tokens)


def _word_focus(words, names, lexicon):
    return [bool(lexicon.constants(w) & names) for w in words]


def verify(tokens, plan, lexicon):
    """Return the analysis of `tokens` matching `plan`, or None.
    """
    try:
        analyses = parse_all(list(tokens), lexicon)
    except NoParse:
        return None
    for info in analyses:
        if info.theme is None:
            continue
        if (alpha_equal(info.proposition, plan.proposition) and
                categories_equivalent(info.theme, plan.theme) and
                categories_equivalent(info.rheme, plan.rheme)):
            return info
    return None


def _pronounce(annotated, pronunciations):
    tokens = tuple(t._replace(word=pronunciations.get(t.word.lower(),
                                                      t.word))
                   for t in annotated.tokens)
    return annotated._replace(tokens=tokens)


def preferred_orders(plan):
    """Return the surface orders to try, as theme_first flags.

    A theme looking leftward for its argument follows the rheme.
    """
    if isinstance(plan.theme, Slash) and plan.theme.direction == BACKWARD:
        return [False, True]
    return [True, False]


def realize(plan, lexicon):
    """Find a toned word string expressing `plan`.

    Raises
    ------
    Unrealizable, NoFocusInRheme
    """
    theme_words = generate(plan.theme, lexicon)
    rheme_words = generate(plan.rheme, lexicon)
    theme_names = focused_names_of(plan.theme)
    rheme_names = focused_names_of(plan.rheme)
    for attempt, theme_first in enumerate(preferred_orders(plan)):
        for theme in theme_words:
            for rheme in rheme_words:
                partition = Partition(theme, rheme, theme_first)
                theme_focus = _word_focus(theme, theme_names, lexicon)
                rheme_focus = _word_focus(rheme, rheme_names, lexicon)
                if theme_first:
                    focus = theme_focus + rheme_focus
                else:
                    focus = rheme_focus + theme_focus
                annotated = assign_tones(partition, focus)
                if verify(annotated.tokens, plan, lexicon) is None:
                    lgr.debug("Rejected %s", emit_tts(annotated))
                    continue
                if attempt:
                    lgr.warning("Realized %s in the non-preferred order",
                                emit_tts(annotated))
                return _pronounce(annotated, plan.pronunciations)
    raise Unrealizable(plan)


def focused_names_of(cat):
    return {name for a in atoms(cat) for name in focused_names(a.sem)}


def format_plan(plan, notation="functional"):
    """Return a printable summary of `plan`.
    """
    lines = [
        "Response proposition: {}".format(
            format_category(plan.category, notation)),
        "Response theme: {}".format(format_category(plan.theme, notation)),
        "Response rheme: {}".format(format_category(plan.rheme, notation)),
        "Answer: {} (alternatives: {})".format(
            plan.answer.id, ", ".join(plan.alternatives.ids))]
    for step in plan.contrast:
        lines.append("  {}: {} -> {}{}".format(
            step.property.name, step.before, step.after,
            " focused" if step.focused else ""))
    for lexeme, variant in sorted(plan.pronunciations.items()):
        lines.append("Pronunciation: {} -> {}".format(lexeme, variant))
    return "\n".join(lines)
