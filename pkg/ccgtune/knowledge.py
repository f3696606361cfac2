"""Knowledge base, alternative sets and contrastive focus.
"""

from collections import namedtuple
from collections import OrderedDict
from logging import getLogger
import os.path as op

from ccgtune.schema import SchemaValidationError
from ccgtune.schema import validate
from ccgtune.semantics import App
from ccgtune.semantics import Const
from ccgtune.semantics import const_name
from ccgtune.semantics import constants
from ccgtune.semantics import format_term
from ccgtune.semantics import is_const
from ccgtune.semantics import is_ground
from ccgtune.semantics import is_var
from ccgtune.semantics import spine
from ccgtune.semantics import subterms
from ccgtune.semantics import unfocus
from ccgtune.semantics import var_name

lgr = getLogger(__name__)

BUNDLED_KB = op.join(op.dirname(__file__), "data", "traumaid.kb")


class Property(namedtuple("Property",
                          ["name", "lexeme", "contrast_pronunciation"])):
    __slots__ = ()

    def __new__(cls, name, lexeme=None, contrast_pronunciation=None):
        return super(Property, cls).__new__(cls, name, lexeme or name,
                                            contrast_pronunciation)


class Entity(namedtuple("Entity", ["id", "type", "properties",
                                   "determiner"])):
    """An object of the domain.

    `properties` lists the head noun property first, then the modifiers
    nearest first.
    """
    __slots__ = ()

    def __new__(cls, id, type, properties=(), determiner=None):
        return super(Entity, cls).__new__(cls, id, type, tuple(properties),
                                          determiner)

    @property
    def property_names(self):
        return [p.name for p in self.properties]

    def has(self, name):
        return name in self.property_names


Fact = namedtuple("Fact", ["relation", "args"])


class AlternativeSet(tuple):
    """Entities that `x` may be contrasted with, `x` included.
    """

    @property
    def ids(self):
        return [e.id for e in self]

    def restrict(self, name):
        """Return the members bearing property `name`.
        """
        return AlternativeSet(e for e in self if e.has(name))

    def __contains__(self, entity):
        return any(e.id == entity.id for e in self)


ContrastStep = namedtuple("ContrastStep", ["property", "before", "after",
                                           "focused", "members_before"])


class KnowledgeBaseError(Exception):
    """A knowledge base could not be loaded.
    """
    def __init__(self, source, line, detail):
        self.source = source
        self.line = line
        where = source if line is None else "{}:{}".format(source, line)
        super(KnowledgeBaseError, self).__init__(
            "Invalid knowledge base {}: {}".format(where, detail))


class UnknownRelation(KeyError):
    def __init__(self, relation):
        self.relation = relation
        super(UnknownRelation, self).__init__(relation)

    def __str__(self):
        return "Relation not in knowledge base: {!r}".format(self.relation)


class UnknownEntity(KeyError):
    def __init__(self, what):
        self.what = what
        super(UnknownEntity, self).__init__(what)

    def __str__(self):
        return "No entity matches {}".format(self.what)


def _parse_property(text):
    name, sep, spelling = text.partition(":")
    if not sep or not name:
        raise ValueError("expected <name>:<lexeme>, got {!r}".format(text))
    lexeme, _, variant = spelling.partition("|")
    return {"name": name, "lexeme": lexeme or name,
            "variant": variant or None}


def parse_lines(lines, source="<lines>"):
    """Read the line format into a document of the knowledge base schema.

    Raises
    ------
    KnowledgeBaseError
    """
    document = {"entities": [], "facts": [], "relations": []}
    for lineno, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        kind = fields[0]
        try:
            if kind == "entity":
                if len(fields) < 3:
                    raise ValueError("entity needs an id and a type")
                entity = {"id": fields[1], "type": fields[2],
                          "properties": []}
                for field in fields[3:]:
                    if field.startswith("det="):
                        entity["determiner"] = field[len("det="):]
                    else:
                        entity["properties"].append(_parse_property(field))
                document["entities"].append(entity)
            elif kind == "fact":
                if len(fields) != 4:
                    raise ValueError("fact needs a relation and two "
                                     "arguments")
                document["facts"].append({"relation": fields[1],
                                          "args": fields[2:]})
            elif kind == "relation":
                if len(fields) != 2:
                    raise ValueError("relation needs exactly one name")
                document["relations"].append(fields[1])
            else:
                raise ValueError("unknown declaration {!r}".format(kind))
        except ValueError as exc:
            raise KnowledgeBaseError(source, lineno, exc)
    return document


class KnowledgeBase(object):
    """Entities and binary facts about them.

    Parameters
    ----------
    entities : list of Entity
    facts : list of Fact
    relations : collection of str, optional
        Relation names, in addition to those used by `facts`.
    """

    def __init__(self, entities, facts, relations=()):
        self.entities = OrderedDict((e.id, e) for e in entities)
        self.facts = list(facts)
        self.relations = set(relations) | {f.relation for f in self.facts}

    @classmethod
    def from_dict(cls, document, source="<dict>"):
        """Build a knowledge base from a document of the kb schema.

        Raises
        ------
        KnowledgeBaseError
        """
        try:
            validate(document, "kb")
        except SchemaValidationError as exc:
            raise KnowledgeBaseError(source, None, exc)
        entities = []
        seen = set()
        for item in document["entities"]:
            if item["id"] in seen:
                raise KnowledgeBaseError(
                    source, None, "duplicate entity {!r}".format(item["id"]))
            seen.add(item["id"])
            properties = []
            for prop in item["properties"]:
                variant = prop.get("variant")
                if variant and variant.lower() != prop["lexeme"].lower():
                    raise KnowledgeBaseError(
                        source, None,
                        "variant {!r} does not spell {!r}".format(
                            variant, prop["lexeme"]))
                properties.append(Property(prop["name"], prop["lexeme"],
                                           variant))
            entities.append(Entity(item["id"], item["type"], properties,
                                   item.get("determiner")))
        facts = []
        for item in document["facts"]:
            missing = [a for a in item["args"] if a not in seen]
            if missing:
                raise KnowledgeBaseError(
                    source, None,
                    "fact {} refers to unknown {}".format(
                        item["relation"], ", ".join(missing)))
            facts.append(Fact(item["relation"], tuple(item["args"])))
        lgr.debug("Loaded %d entities and %d facts from %s",
                  len(entities), len(facts), source)
        return cls(entities, facts, document.get("relations", ()))

    @classmethod
    def from_lines(cls, lines, source="<lines>"):
        return cls.from_dict(parse_lines(lines, source), source)

    @classmethod
    def from_file(cls, path=None):
        """Load a knowledge base file, the bundled one by default.

        Raises
        ------
        KnowledgeBaseError
        """
        path = path or BUNDLED_KB
        try:
            with open(path, encoding="utf-8") as fh:
                lines = fh.readlines()
        except OSError as exc:
            raise KnowledgeBaseError(path, None, exc)
        return cls.from_lines(lines, source=path)

    def entity(self, entity_id):
        try:
            return self.entities[entity_id]
        except KeyError:
            raise UnknownEntity(repr(entity_id)) from None

    def of_type(self, type_name):
        return [e for e in self.entities.values() if e.type == type_name]

    @property
    def types(self):
        return {e.type for e in self.entities.values()}

    def describe(self, entity, focused=()):
        """Return the referring expression of `entity` as a term.

        Parameters
        ----------
        entity : Entity
        focused : collection of str
            Names of the properties to mark as focused.

        Returns
        -------
        A term such as the(simple(pneumothorax)).  An entity without
        properties is referred to by its id.
        """
        if not entity.properties:
            return Const(entity.id, entity.id in focused)
        term = None
        for prop in entity.properties:
            const = Const(prop.name, prop.name in focused)
            term = const if term is None else App(const, term)
        if entity.determiner:
            term = App(Const(entity.determiner), term)
        return term

    def _determiners(self):
        return {e.determiner for e in self.entities.values()
                if e.determiner}

    def resolve(self, term, partial=True):
        """Return the entity that `term` refers to.

        `term` is an entity id or a description built like the ones
        `describe` returns.  With `partial`, a description naming only some
        of an entity's properties is accepted if it fits a single entity.

        Raises
        ------
        UnknownEntity
        """
        term = unfocus(term)
        chain = []
        while True:
            head, args = spine(term)
            if not is_const(head) or len(args) > 1:
                raise UnknownEntity(format_term(term))
            chain.append(const_name(head))
            if not args:
                break
            term = args[0]
        if len(chain) == 1 and chain[0] in self.entities:
            return self.entities[chain[0]]
        determiners = self._determiners()
        while len(chain) > 1 and chain[0] in determiners:
            chain.pop(0)
        chain.reverse()
        exact = [e for e in self.entities.values()
                 if e.property_names == chain]
        if len(exact) == 1:
            return exact[0]
        if partial:
            fits = [e for e in self.entities.values()
                    if e.property_names[:1] == chain[:1] and
                    set(chain) <= set(e.property_names)]
            if len(fits) == 1:
                return fits[0]
        raise UnknownEntity(" ".join(reversed(chain)))

    def satisfies(self, entity, predicate):
        """Whether `entity` is of type `predicate` or bears it as a property.
        """
        return entity.type == predicate or entity.has(predicate)


def _restrictor_names(restrictor):
    """Return the predicate names applied in a restrictor such as
    simple(pneumothorax)(x).
    """
    head, args = spine(unfocus(restrictor))
    names = [const_name(head)] if is_const(head) else []
    for arg in args:
        if is_ground(arg):
            names.extend(const_name(c) for c in constants(arg))
    return names


def kb_query(question, kb):
    """Find the entities answering an open proposition.

    Parameters
    ----------
    question : OpenProposition
    kb : KnowledgeBase

    Returns
    -------
    A list of {variable: Entity} bindings in fact order.

    Raises
    ------
    UnknownRelation, UnknownEntity
    """
    matrix = unfocus(question.matrix)
    head, args = spine(matrix)
    relation = const_name(head) if is_const(head) else None
    if relation not in kb.relations:
        raise UnknownRelation(format_term(head))
    # Curried arguments are applied object first.
    args = list(reversed(args))
    fixed = {}
    for position, arg in enumerate(args):
        if not (is_var(arg) and var_name(arg) == question.variable):
            fixed[position] = kb.resolve(arg).id
    names = _restrictor_names(question.restrictor)
    answers = []
    for fact in kb.facts:
        if fact.relation != relation or len(fact.args) != len(args):
            continue
        if any(fact.args[i] != eid for i, eid in fixed.items()):
            continue
        for position, arg in enumerate(args):
            if position in fixed:
                continue
            entity = kb.entity(fact.args[position])
            if all(kb.satisfies(entity, n) for n in names) and \
                    entity not in answers:
                answers.append(entity)
    lgr.debug("Query %s: %s", format_term(matrix), [e.id for e in answers])
    return [{question.variable: e} for e in answers]


def _mentioned_entities(term, kb):
    found = []
    for sub in subterms(term):
        if not is_ground(sub) or not constants(sub):
            continue
        try:
            entity = kb.resolve(sub, partial=False)
        except UnknownEntity:
            continue
        if entity not in found:
            found.append(entity)
    return found


def initial_alternatives(x, theme, kb):
    """Return the entities `x` is contrasted with, `x` included.

    Entities of x's type that are mentioned in `theme` form the set.  Failing
    that, properties of x's type mentioned in `theme` restrict the type's
    extension.  Mentions of other types are ignored.

    Parameters
    ----------
    x : Entity
    theme : term
    kb : KnowledgeBase
    """
    candidates = kb.of_type(x.type)
    mentioned = [e for e in _mentioned_entities(theme, kb)
                 if e.type == x.type]
    if mentioned:
        members = [e for e in candidates if e in mentioned or e.id == x.id]
    else:
        type_props = {n for e in candidates for n in e.property_names}
        names = {const_name(c) for c in constants(theme)} & type_props
        members = [e for e in candidates
                   if e.id == x.id or all(e.has(n) for n in names)]
    alts = AlternativeSet(members)
    lgr.debug("Alternatives of %s: %s", x.id, alts.ids)
    return alts


def contrast_steps(x, alts):
    """Restrict `alts` by each property of `x` in turn.

    Returns
    -------
    A list of ContrastStep.  A property is focused when its restriction
    makes the set smaller.
    """
    steps = []
    current = alts
    for prop in x.properties:
        restricted = current.restrict(prop.name)
        focused = len(restricted) < len(current)
        lgr.debug("Restrict by %s: %d -> %d", prop.name, len(current),
                  len(restricted))
        steps.append(ContrastStep(prop, len(current), len(restricted),
                                  focused, current))
        current = restricted
    return steps


def contrast_focus(x, alts):
    """Return (Property, focused) for each property of `x`.
    """
    return [(s.property, s.focused) for s in contrast_steps(x, alts)]


def _common_prefix(a, b):
    n = 0
    for ca, cb in zip(a, b):
        if ca != cb:
            break
        n += 1
    return n


def _upper_span(word):
    idx = [i for i, c in enumerate(word) if c.isupper()]
    if not idx:
        return None
    return idx[0], idx[-1] + 1


MIN_AFFIX = 3


def stress_shift(prop, alts_before, x):
    """Return the contrastive pronunciation of `prop`, if called for.

    The variant is used when an alternative removed by `prop` has, in the
    same property slot, a lexeme that shares a prefix or suffix of at least
    three letters with the lexeme of `prop`, and the stressed (upper-case)
    part of the variant falls inside the part that differs.

    Returns
    -------
    str or None
    """
    variant = prop.contrast_pronunciation
    if not variant:
        return None
    span = _upper_span(variant)
    if span is None:
        return None
    slot = x.property_names.index(prop.name)
    lexeme = prop.lexeme.lower()
    for alt in alts_before:
        if alt.has(prop.name) or len(alt.properties) <= slot:
            continue
        other = alt.properties[slot].lexeme.lower()
        prefix = _common_prefix(lexeme, other)
        suffix = _common_prefix(lexeme[::-1], other[::-1])
        if max(prefix, suffix) < MIN_AFFIX:
            continue
        start = prefix if prefix < len(lexeme) else 0
        end = len(lexeme) - suffix if suffix < len(lexeme) else len(lexeme)
        if start <= span[0] and span[1] <= end:
            lgr.debug("Stress shift %s -> %s against %s",
                      prop.lexeme, variant, alt.id)
            return variant
    return None
