"""Syntactic categories and the combinatory rules over them.

A category is either an `Atom` (S, NP, N or PP, with an optional feature and
an interpretation) or a `Slash` functor.  Interpretations live on the atoms,
so combining two categories by unification also builds the interpretation of
the result.
"""

from collections import namedtuple
from collections import OrderedDict
from logging import getLogger

from ccgtune.semantics import BinderClash
from ccgtune.semantics import Lam
from ccgtune.semantics import OccursCheck
from ccgtune.semantics import TermSyntaxError
from ccgtune.semantics import Tokens
from ccgtune.semantics import Var
from ccgtune.semantics import VariableNamer
from ccgtune.semantics import apply_all
from ccgtune.semantics import constants
from ccgtune.semantics import focus
from ccgtune.semantics import format_term
from ccgtune.semantics import fresh_name
from ccgtune.semantics import is_var
from ccgtune.semantics import read_term
from ccgtune.semantics import rename
from ccgtune.semantics import replace_var
from ccgtune.semantics import resolve
from ccgtune.semantics import unfocus
from ccgtune.semantics import unify_terms
from ccgtune.semantics import var_name
from ccgtune.semantics import walk

lgr = getLogger(__name__)

FORWARD = "/"
BACKWARD = "\\"

KINDS = ("S", "NP", "N", "PP")
FEATURES = ("dcl", "b", "q", "wq", "pss")


class TaggedTuple(object):
    """Mixin giving namedtuple-based categories type-aware equality.

    Without it an Atom could compare equal to a prosodic atom with the same
    fields.
    """

    __slots__ = ()

    def __eq__(self, other):
        return type(self) is type(other) and tuple.__eq__(self, other)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((type(self).__name__, tuple.__hash__(self)))


class Atom(TaggedTuple, namedtuple("Atom", ["kind", "sem", "feature"])):
    """Basic category.

    `feature` is None (matches any feature), a str or a Var.
    """
    __slots__ = ()

    def __new__(cls, kind, sem, feature=None):
        return super(Atom, cls).__new__(cls, kind, sem, feature)


class Slash(TaggedTuple, namedtuple("Slash", ["result", "direction", "arg"])):
    __slots__ = ()


class RuleInapplicable(Exception):
    """A combinatory rule does not apply to a pair of categories.
    """
    def __init__(self, rule, left, right):
        self.rule = rule
        super(RuleInapplicable, self).__init__(
            "{} does not apply to {} and {}".format(
                rule,
                format_category(left, features=True),
                format_category(right, features=True)))


class CategorySyntaxError(TermSyntaxError):
    pass


# Structure

def atoms(cat):
    """Return the atoms of `cat` in printed order.
    """
    if isinstance(cat, Atom):
        return [cat]
    return atoms(cat.result) + atoms(cat.arg)


def size(cat):
    return len(atoms(cat))


def result_atom(cat):
    while isinstance(cat, Slash):
        cat = cat.result
    return cat


def arguments(cat):
    """Return the arguments `cat` takes, the first one consumed first.
    """
    args = []
    while isinstance(cat, Slash):
        args.append(cat.arg)
        cat = cat.result
    return args


def map_sems(cat, fn):
    """Return `cat` with `fn` applied to the interpretation of each atom.
    """
    if isinstance(cat, Atom):
        return Atom(cat.kind, fn(cat.sem), cat.feature)
    return Slash(map_sems(cat.result, fn), cat.direction,
                 map_sems(cat.arg, fn))


def category_constants(cat):
    return [c for a in atoms(cat) for c in constants(a.sem)]


def focus_category(cat, names=None):
    return map_sems(cat, lambda sem: focus(sem, names))


def unfocus_category(cat):
    return map_sems(cat, unfocus)


def with_feature(cat, feature):
    """Return `cat` with the feature of its result atom set to `feature`.
    """
    if isinstance(cat, Atom):
        return Atom(cat.kind, cat.sem, feature)
    return Slash(with_feature(cat.result, feature), cat.direction, cat.arg)


def freshen(cat, mapping=None):
    """Rename every variable of `cat`, features included, to fresh names.

    Parameters
    ----------
    cat : Atom or Slash
    mapping : dict, optional
        Old name -> new name.  Pass the same dict to freshen several
        categories consistently.
    """
    mapping = {} if mapping is None else mapping

    def new_feature(feature):
        if is_var(feature):
            return rename(feature, mapping)
        return feature

    if isinstance(cat, Atom):
        return Atom(cat.kind, rename(cat.sem, mapping),
                    new_feature(cat.feature))
    return Slash(freshen(cat.result, mapping), cat.direction,
                 freshen(cat.arg, mapping))


def lower_raised(cat):
    """Undo lexical type raising of an NP.

    T/(T\\NP:c) and T\\(T/NP:c) become NP:c.  Any other category is returned
    unchanged.
    """
    if (isinstance(cat, Slash) and isinstance(cat.arg, Slash) and
            cat.arg.direction != cat.direction and
            isinstance(cat.arg.arg, Atom) and cat.arg.arg.kind == "NP" and
            cat.result == cat.arg.result):
        return cat.arg.arg
    return cat


# Unification

def _resolve_feature(feature, binding):
    if is_var(feature):
        return walk(feature, binding)
    return feature


def _unify_feature(a, b, binding):
    a = _resolve_feature(a, binding)
    b = _resolve_feature(b, binding)
    if a is None or b is None:
        return True
    if is_var(a):
        if not (is_var(b) and var_name(a) == var_name(b)):
            binding[var_name(a)] = b
        return True
    if is_var(b):
        binding[var_name(b)] = a
        return True
    return a == b


def _unify(a, b, binding):
    if isinstance(a, Atom) and isinstance(b, Atom):
        return (a.kind == b.kind and
                _unify_feature(a.feature, b.feature, binding) and
                unify_terms(a.sem, b.sem, binding))
    if isinstance(a, Slash) and isinstance(b, Slash):
        return (a.direction == b.direction and
                _unify(a.result, b.result, binding) and
                _unify(a.arg, b.arg, binding))
    return False


def unify_syn(a, b, binding=None):
    """Unify two categories.

    Parameters
    ----------
    a, b : Atom or Slash
    binding : dict, optional
        Bindings to start from.  It is not modified.

    Returns
    -------
    A new binding dict, or None if the categories do not unify.

    Raises
    ------
    OccursCheck
    """
    binding = dict(binding or {})
    if _unify(a, b, binding):
        return binding
    return None


def apply_binding(cat, binding):
    """Instantiate the variables of `cat` (features included) from `binding`.

    Raises
    ------
    BinderClash
    """
    if isinstance(cat, Atom):
        return Atom(cat.kind, resolve(cat.sem, binding),
                    _resolve_feature(cat.feature, binding))
    return Slash(apply_binding(cat.result, binding), cat.direction,
                 apply_binding(cat.arg, binding))


# Rules

def _match(rule, wanted, given, left, right):
    try:
        binding = unify_syn(wanted, given)
    except OccursCheck:
        binding = None
    if binding is None:
        raise RuleInapplicable(rule, left, right)
    return binding


def _instantiate(rule, cat, binding, left, right):
    try:
        return apply_binding(cat, binding)
    except BinderClash:
        raise RuleInapplicable(rule, left, right)


def forward_application(left, right):
    """X/Y Y => X.  Return the result and the binding used.
    """
    rule = "forward application"
    if not (isinstance(left, Slash) and left.direction == FORWARD):
        raise RuleInapplicable(rule, left, right)
    binding = _match(rule, left.arg, right, left, right)
    return _instantiate(rule, left.result, binding, left, right), binding


def backward_application(left, right):
    """Y X\\Y => X.  Return the result and the binding used.
    """
    rule = "backward application"
    if not (isinstance(right, Slash) and right.direction == BACKWARD):
        raise RuleInapplicable(rule, left, right)
    binding = _match(rule, right.arg, left, left, right)
    return _instantiate(rule, right.result, binding, left, right), binding


def forward_composition(left, right):
    """X/Y Y/Z => X/Z.  Return the result and the binding used.
    """
    rule = "forward composition"
    if not (isinstance(left, Slash) and left.direction == FORWARD and
            isinstance(right, Slash) and right.direction == FORWARD):
        raise RuleInapplicable(rule, left, right)
    binding = _match(rule, left.arg, right.result, left, right)
    result = Slash(left.result, FORWARD, right.arg)
    return _instantiate(rule, result, binding, left, right), binding


# Rule name -> function taking the left and right categories.  The names are
# shared with the prosodic rules.
RULES = OrderedDict([
    ("fwd_apply", forward_application),
    ("bwd_apply", backward_application),
    ("fwd_compose", forward_composition),
])


def apply_forward(fn, arg):
    """Forward application.

    Raises
    ------
    RuleInapplicable
    """
    return forward_application(fn, arg)[0]


def apply_backward(arg, fn):
    """Backward application, with the argument on the left.

    Raises
    ------
    RuleInapplicable
    """
    return backward_application(arg, fn)[0]


def compose_forward(f, g):
    """Forward composition of `f` (X/Y) with `g` (Y/Z).

    Raises
    ------
    RuleInapplicable
    """
    return forward_composition(f, g)[0]


# Interpretation of a whole category

def to_lambda(cat):
    """Return the interpretation of `cat` as a single lambda term.

    Each argument slot becomes an abstraction.  An argument that is itself a
    functor is abstracted as a function variable applied to the
    interpretations of that functor's own arguments.
    """
    if isinstance(cat, Atom):
        return cat.sem
    body = to_lambda(cat.result)
    arg = cat.arg
    if isinstance(arg, Atom):
        if is_var(arg.sem):
            return Lam(var_name(arg.sem), body)
        return Lam(fresh_name(), body)
    fn = fresh_name("F")
    head = result_atom(arg).sem
    if is_var(head):
        applied = apply_all(Var(fn), [to_lambda(a) for a in arguments(arg)])
        body = replace_var(body, var_name(head), applied)
    return Lam(fn, body)


# Printing and reading

def format_category(cat, notation="functional", features=False,
                    semantics=True, namer=None):
    """Return the printed form of `cat`.

    Parameters
    ----------
    cat : Atom or Slash
    notation : {"functional", "curried", "logic"}
        "functional" writes atoms in lower case (`s:address(*urinalysis,
        x)`), the others in upper case (`S:address' x *urinalysis'`).
    features : bool, optional
        Include features in brackets.
    semantics : bool, optional
        Include the interpretation of each atom.
    namer : VariableNamer, optional
    """
    namer = namer or VariableNamer()
    return _format(cat, notation, features, semantics, namer)


def _format(cat, notation, features, semantics, namer):
    if isinstance(cat, Atom):
        text = cat.kind.lower() if notation == "functional" else cat.kind
        if features and cat.feature is not None:
            feature = cat.feature
            if is_var(feature):
                feature = namer(var_name(feature)).upper()
            text += "[{}]".format(feature)
        if semantics:
            text += ":" + format_term(cat.sem, notation, namer)
        return text
    parts = []
    for part in (cat.result, cat.arg):
        text = _format(part, notation, features, semantics, namer)
        parts.append("(" + text + ")" if isinstance(part, Slash) else text)
    return parts[0] + cat.direction + parts[1]


def parse_category(text):
    """Read a category written as in `S[dcl]:address' x y\\NP:y`.

    Feature names starting with an upper case letter are variables.  An atom
    without an interpretation gets a fresh variable.

    >>> format_category(parse_category("S:p/(S:p\\\\NP:x)"))
    's:x/(s:x\\\\np:y)'
    """
    tokens = Tokens(text)
    cat = _read_category(tokens)
    if not tokens.at_end():
        raise CategorySyntaxError(text, tokens.position(), "end of input")
    return cat


def _read_category(tokens):
    cat = _read_primary(tokens)
    while tokens.peek() in (FORWARD, BACKWARD):
        direction = tokens.next()
        cat = Slash(cat, direction, _read_primary(tokens))
    return cat


def _read_primary(tokens):
    if tokens.peek() == "(":
        tokens.next()
        cat = _read_category(tokens)
        tokens.expect(")")
        return cat
    kind = tokens.peek()
    if kind not in KINDS:
        raise CategorySyntaxError(tokens.text, tokens.position(),
                                  "one of " + ", ".join(KINDS))
    tokens.next()
    feature = None
    if tokens.peek() == "[":
        tokens.next()
        name = tokens.next()
        if not name or not name.isalnum():
            raise CategorySyntaxError(tokens.text, tokens.position(),
                                      "a feature")
        feature = Var(name) if name[0].isupper() else name
        tokens.expect("]")
    if tokens.peek() == ":":
        tokens.next()
        sem = read_term(tokens)
    else:
        sem = Var(fresh_name())
    return Atom(kind, sem, feature)


def categories_equivalent(a, b):
    """Return true if `a` and `b` print identically once raised NPs are
    lowered and variables are named canonically.
    """
    return (_canonical(lower_raised(a)) == _canonical(lower_raised(b)))


def _canonical(cat):
    return format_category(cat, notation="curried", features=False)


def canonical_key(cat, namer):
    """Printed form of `cat`, features included, using a shared `namer`.
    """
    return format_category(cat, notation="curried", features=True,
                           namer=namer)


