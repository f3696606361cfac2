"""Lambda terms used as category interpretations.

Terms are `nltk.sem.logic` expressions.  nltk provides beta reduction,
capture-avoiding substitution and alpha-equivalence.  This module adds what
categorial derivations need on top of that: focus marks on constants,
unification with variables doubling as logic variables, and the curried
and functional notations terms are read and printed in.

A focused constant is a constant whose name carries a leading "*".  Fresh
variable names come from nltk's `unique_variable`, so terms built from
separate lexical lookups never share variables by accident.
"""

from logging import getLogger
import re
import sys

from nltk.sem.logic import AbstractVariableExpression
from nltk.sem.logic import AndExpression
from nltk.sem.logic import ApplicationExpression
from nltk.sem.logic import ConstantExpression
from nltk.sem.logic import Expression
from nltk.sem.logic import IndividualVariableExpression
from nltk.sem.logic import LambdaExpression
from nltk.sem.logic import LogicalExpressionException
from nltk.sem.logic import Variable
from nltk.sem.logic import is_eventvar
from nltk.sem.logic import is_funcvar
from nltk.sem.logic import is_indvar
from nltk.sem.logic import unique_variable

lgr = getLogger(__name__)

FOCUS_MARK = "*"


def fresh_name(pattern="z"):
    """Return a variable name that has not been returned before.

    Parameters
    ----------
    pattern : str, optional
        "z" for an individual variable, "F" for a function variable.
    """
    return unique_variable(pattern=Variable(pattern)).name


def is_variable_name(name):
    """Whether nltk reads `name` as a variable rather than a constant.
    """
    return is_indvar(name) or is_funcvar(name) or is_eventvar(name)


# Construction

def Const(name, focused=False):
    return ConstantExpression(
        Variable(FOCUS_MARK + name if focused else name))


def Var(name):
    return IndividualVariableExpression(Variable(name))


def App(fn, arg):
    return ApplicationExpression(fn, arg)


def Lam(var, body):
    """Abstraction of `body` over the variable named `var`.
    """
    return LambdaExpression(Variable(var), body)


def Conj(left, right):
    return AndExpression(left, right)


def is_var(term):
    return (isinstance(term, AbstractVariableExpression) and
            not isinstance(term, ConstantExpression))


def is_const(term):
    return isinstance(term, ConstantExpression)


def var_name(term):
    return term.variable.name


def const_name(const):
    """Name of `const` without its focus mark.
    """
    return const.variable.name.lstrip(FOCUS_MARK)


def is_focused(const):
    return const.variable.name.startswith(FOCUS_MARK)


class NormalizationDepthExceeded(Exception):
    """Beta normalization did not finish within the recursion limit.
    """
    def __init__(self, limit):
        super(NormalizationDepthExceeded, self).__init__(
            "No normal form reached within a recursion depth of {}"
            .format(limit))


class OccursCheck(Exception):
    """A variable would be bound to a structure containing itself.
    """
    def __init__(self, name, value):
        super(OccursCheck, self).__init__(
            "Variable {} occurs in {}".format(name, value))


class BinderClash(Exception):
    """A lambda-bound variable was bound to a non-variable term.
    """
    def __init__(self, name, value):
        super(BinderClash, self).__init__(
            "Cannot abstract over {} bound to {}".format(name, value))


class TermSyntaxError(ValueError):
    """Text could not be read as a term or category.
    """
    def __init__(self, text, position, expected):
        where = "" if position is None else " at position {}".format(position)
        super(TermSyntaxError, self).__init__(
            "Expected {}{} in {!r}".format(expected, where, text))


# Traversal

def subterms(term):
    """Yield `term` and all of its subterms, parents before children.
    """
    yield term
    if isinstance(term, ApplicationExpression):
        yield from subterms(term.function)
        yield from subterms(term.argument)
    elif isinstance(term, AndExpression):
        yield from subterms(term.first)
        yield from subterms(term.second)
    elif isinstance(term, LambdaExpression):
        yield from subterms(term.term)


def constants(term):
    """Return the constant nodes of `term` in left-to-right order.

    Unlike nltk's `constants()`, predicates are included and repeated
    constants are listed once per occurrence.
    """
    return [t for t in subterms(term) if is_const(t)]


def is_ground(term):
    return not term.free()


def spine(term):
    """Split an application chain into its head and its arguments.

    The arguments are returned in application order, so `f a b` gives
    (f, [a, b]).
    """
    if isinstance(term, ApplicationExpression):
        return term.uncurry()
    return term, []


def apply_all(head, args):
    """Inverse of `spine`.
    """
    return head(*args) if args else head


def _map_consts(term, fn):
    if is_const(term):
        return fn(term)
    if isinstance(term, ApplicationExpression):
        return App(_map_consts(term.function, fn),
                   _map_consts(term.argument, fn))
    if isinstance(term, AndExpression):
        return Conj(_map_consts(term.first, fn), _map_consts(term.second, fn))
    if isinstance(term, LambdaExpression):
        return LambdaExpression(term.variable, _map_consts(term.term, fn))
    return term


def focus(term, names=None):
    """Mark constants of `term` as focused.

    Parameters
    ----------
    term : Expression
    names : collection of str, optional
        Only mark constants with these names.  By default every constant is
        marked.
    """
    def mark(const):
        name = const_name(const)
        if names is None or name in names:
            return Const(name, True)
        return const
    return _map_consts(term, mark)


def unfocus(term):
    """Return `term` with all focus marks removed.
    """
    return _map_consts(term, lambda c: Const(const_name(c)))


def focused_names(term):
    return {const_name(c) for c in constants(term) if is_focused(c)}


# Substitution and beta normalization

def replace_var(term, name, by):
    """Replace free occurrences of variable `name` with `by`.

    No renaming is done, so a free variable of `by` can end up bound.  This
    is what is wanted when a logic variable stands for an open term whose
    variables are meant to be captured.
    """
    return term.replace(Variable(name), by, alpha_convert=False)


def beta_normalize(term):
    """Reduce `term` to beta normal form.

    Returns
    -------
    An Expression with no redex left.  Binder names in the result are
    distinct from each other.

    Raises
    ------
    NormalizationDepthExceeded if reduction recurses past the interpreter's
    recursion limit.

    >>> format_term(beta_normalize(parse_term("(λx[address' x u]) hematuria'")))
    'address(u, hematuria)'
    """
    try:
        normal = term.simplify()
    except RecursionError:
        raise NormalizationDepthExceeded(sys.getrecursionlimit()) from None
    return _distinct_binders(normal, set())


def _distinct_binders(term, seen):
    if isinstance(term, ApplicationExpression):
        return App(_distinct_binders(term.function, seen),
                   _distinct_binders(term.argument, seen))
    if isinstance(term, AndExpression):
        return Conj(_distinct_binders(term.first, seen),
                    _distinct_binders(term.second, seen))
    if isinstance(term, LambdaExpression):
        if term.variable in seen:
            term = term.alpha_convert(Variable(fresh_name()))
        seen.add(term.variable)
        return LambdaExpression(term.variable,
                                _distinct_binders(term.term, seen))
    return term


def alpha_equal(a, b):
    """Return true if `a` and `b` differ at most in bound-variable names.

    nltk's equality already compares binders up to renaming.  Comparing the
    free variables as well rules out a free variable of one term matching a
    bound one of the other.

    >>> alpha_equal(Lam("x", Var("x")), Lam("y", Var("y")))
    True
    """
    return a == b and a.free() == b.free()


# Unification

def walk(term, binding):
    """Follow variable bindings until reaching an unbound variable or a
    non-variable value.
    """
    while is_var(term) and var_name(term) in binding:
        term = binding[var_name(term)]
    return term


def resolve(term, binding):
    """Apply `binding` to `term` throughout.

    Raises
    ------
    BinderClash if a lambda binder is bound to a non-variable.
    """
    term = walk(term, binding)
    if isinstance(term, ApplicationExpression):
        return App(resolve(term.function, binding),
                   resolve(term.argument, binding))
    if isinstance(term, AndExpression):
        return Conj(resolve(term.first, binding),
                    resolve(term.second, binding))
    if isinstance(term, LambdaExpression):
        binder = walk(Var(term.variable.name), binding)
        if not is_var(binder):
            raise BinderClash(term.variable.name, binder)
        return LambdaExpression(binder.variable, resolve(term.term, binding))
    return term


def occurs(name, term, binding):
    term = walk(term, binding)
    if is_var(term):
        return var_name(term) == name
    if isinstance(term, ApplicationExpression):
        return (occurs(name, term.function, binding) or
                occurs(name, term.argument, binding))
    if isinstance(term, AndExpression):
        return (occurs(name, term.first, binding) or
                occurs(name, term.second, binding))
    if isinstance(term, LambdaExpression):
        return occurs(name, term.term, binding)
    return False


def bind(name, value, binding):
    """Extend `binding` in place with `name` -> `value`.

    Raises
    ------
    OccursCheck
    """
    if occurs(name, value, binding):
        raise OccursCheck(name, resolve(value, binding))
    binding[name] = value


def unify_terms(a, b, binding):
    """Unify two terms, extending `binding` in place.

    Returns
    -------
    True on success.  On failure, False is returned and `binding` may hold
    partial bindings, so callers pass a copy they can throw away.

    Raises
    ------
    OccursCheck
    """
    a = walk(a, binding)
    b = walk(b, binding)
    if is_var(a):
        if is_var(b) and var_name(a) == var_name(b):
            return True
        bind(var_name(a), b, binding)
        return True
    if is_var(b):
        bind(var_name(b), a, binding)
        return True
    if is_const(a) or is_const(b):
        return is_const(a) and is_const(b) and a.variable == b.variable
    if isinstance(a, ApplicationExpression):
        return (isinstance(b, ApplicationExpression) and
                unify_terms(a.function, b.function, binding) and
                unify_terms(a.argument, b.argument, binding))
    if isinstance(a, AndExpression):
        return (isinstance(b, AndExpression) and
                unify_terms(a.first, b.first, binding) and
                unify_terms(a.second, b.second, binding))
    if isinstance(a, LambdaExpression) and isinstance(b, LambdaExpression):
        # Binders are logic variables too.
        return (unify_terms(Var(a.variable.name), Var(b.variable.name),
                            binding) and
                unify_terms(a.term, b.term, binding))
    return False


def _rename(term, new):
    if is_var(term):
        return Var(new(var_name(term)))
    if isinstance(term, ApplicationExpression):
        return App(_rename(term.function, new), _rename(term.argument, new))
    if isinstance(term, AndExpression):
        return Conj(_rename(term.first, new), _rename(term.second, new))
    if isinstance(term, LambdaExpression):
        return Lam(new(term.variable.name), _rename(term.term, new))
    return term


def rename(term, mapping):
    """Rename variables (free and bound) following `mapping`.

    Names missing from `mapping` get a fresh name, which is added to it.
    """
    def new(name):
        if name not in mapping:
            mapping[name] = fresh_name()
        return mapping[name]
    return _rename(term, new)


# Printing

class VariableNamer(object):
    """Assign display names to variables in order of first appearance.

    Parameters
    ----------
    names : sequence of str, optional
        Base names to hand out.  Once they run out, the sequence is reused
        with a numeric suffix.
    """

    def __init__(self, names=("x", "y", "z", "w", "v", "u")):
        self._names = names
        self._assigned = {}

    def __call__(self, name):
        try:
            return self._assigned[name]
        except KeyError:
            idx = len(self._assigned)
            base = self._names[idx % len(self._names)]
            suffix = idx // len(self._names)
            display = base + str(suffix) if suffix else base
            self._assigned[name] = display
            return display


NOTATIONS = ("functional", "curried", "logic")


def format_term(term, notation="functional", namer=None):
    """Return the printed form of `term`.

    Parameters
    ----------
    term : Expression
    notation : {"functional", "curried", "logic"}
        "functional" prints `address(*urinalysis, x)`, with the arguments of
        a curried application listed last-applied first.  "curried" prints
        constants primed and applications by juxtaposition, as in
        `address' x *urinalysis'`.  "logic" is nltk's own notation,
        `address(x,*urinalysis)`, which `Expression.fromstring` reads back.
    namer : VariableNamer, optional
        Shared when several terms are printed as one unit.
    """
    namer = namer or VariableNamer()
    if notation == "functional":
        return _functional(term, namer)
    if notation == "curried":
        return _curried(term, namer)
    if notation == "logic":
        return str(_rename(term, namer))
    raise ValueError("Unknown notation: {!r}".format(notation))


def _const(const, prime):
    return "{}{}{}".format(FOCUS_MARK if is_focused(const) else "",
                           const_name(const), "'" if prime else "")


def _functional(term, namer):
    if is_const(term):
        return _const(term, False)
    if is_var(term):
        return namer(var_name(term))
    if isinstance(term, LambdaExpression):
        return "λ{}[{}]".format(namer(term.variable.name),
                                _functional(term.term, namer))
    if isinstance(term, AndExpression):
        return "{} & {}".format(_functional(term.first, namer),
                                _functional(term.second, namer))
    head, args = spine(term)
    if isinstance(head, AbstractVariableExpression):
        head_text = _functional(head, namer)
    else:
        head_text = "(" + _functional(head, namer) + ")"
    return "{}({})".format(
        head_text,
        ", ".join(_functional(a, namer) for a in reversed(args)))


def _curried(term, namer, arg_position=False):
    if is_const(term):
        return _const(term, True)
    if is_var(term):
        return namer(var_name(term))
    if isinstance(term, LambdaExpression):
        text = "λ{}[{}]".format(namer(term.variable.name),
                                _curried(term.term, namer))
    elif isinstance(term, AndExpression):
        text = "{} & {}".format(_curried(term.first, namer),
                                _curried(term.second, namer))
    else:
        fn = _curried(term.function, namer,
                      arg_position=isinstance(term.function,
                                              (LambdaExpression,
                                               AndExpression)))
        text = "{} {}".format(fn, _curried(term.argument, namer,
                                           arg_position=True))
    if arg_position and not isinstance(term, LambdaExpression):
        return "(" + text + ")"
    return text


# Reading

_TOKEN_RE = re.compile(r"""\s*(?:
    (?P<lam>λ)
  | (?P<punct>[()\[\]/\\:&])
  | (?P<ident>\*?[A-Za-z_][A-Za-z0-9_]*'?)
)""", re.VERBOSE)


class Tokens(object):
    """Token stream over term and category text.
    """

    def __init__(self, text):
        self.text = text
        self.items = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            match = _TOKEN_RE.match(text, pos)
            if not match or match.end() == pos:
                raise TermSyntaxError(self.text, pos, "a token")
            self.items.append((match.group(match.lastgroup), match.start()))
            pos = match.end()
        self.index = 0

    def peek(self):
        if self.index < len(self.items):
            return self.items[self.index][0]
        return None

    def position(self):
        if self.index < len(self.items):
            return self.items[self.index][1]
        return len(self.text)

    def next(self):
        token = self.peek()
        self.index += 1
        return token

    def expect(self, token):
        if self.peek() != token:
            raise TermSyntaxError(self.text, self.position(), repr(token))
        return self.next()

    def at_end(self):
        return self.index >= len(self.items)


def _is_ident(token):
    return (token is not None and token != "λ" and
            (token[0].isalpha() or token[0] in "*_"))


def read_term(tokens):
    """Read a term from `tokens`, stopping before the first token that
    cannot continue it (a slash or an unmatched closing parenthesis).
    """
    left = _read_app(tokens)
    if tokens.peek() == "&":
        tokens.next()
        return Conj(left, read_term(tokens))
    return left


def _read_app(tokens):
    term = _read_atom(tokens)
    while _is_ident(tokens.peek()) or tokens.peek() in ("(", "λ"):
        term = App(term, _read_atom(tokens))
    return term


def _read_variable(tokens, name):
    if not is_variable_name(name):
        raise TermSyntaxError(tokens.text, tokens.position(),
                              "a variable such as x, x1 or P")
    return name


def _read_atom(tokens):
    token = tokens.peek()
    if token == "(":
        tokens.next()
        term = read_term(tokens)
        tokens.expect(")")
        return term
    if token == "λ":
        tokens.next()
        var = tokens.next()
        if not _is_ident(var) or var.endswith("'"):
            raise TermSyntaxError(tokens.text, tokens.position(),
                                  "a variable after λ")
        _read_variable(tokens, var)
        tokens.expect("[")
        body = read_term(tokens)
        tokens.expect("]")
        return Lam(var, body)
    if _is_ident(token):
        tokens.next()
        focused = token.startswith(FOCUS_MARK)
        name = token.lstrip(FOCUS_MARK)
        if name.endswith("'"):
            return Const(name[:-1], focused)
        if focused:
            raise TermSyntaxError(tokens.text, tokens.position(),
                                  "a constant after '*'")
        return Var(_read_variable(tokens, name))
    raise TermSyntaxError(tokens.text, tokens.position(), "a term")


_SUPPORTED = (AbstractVariableExpression, ApplicationExpression,
              LambdaExpression, AndExpression)


def _read_logic(text):
    try:
        term = Expression.fromstring(text)
    except LogicalExpressionException as exc:
        raise TermSyntaxError(text, None, "a logic expression") from exc
    for sub in subterms(term):
        if not isinstance(sub, _SUPPORTED):
            raise TermSyntaxError(
                text, None,
                "only constants, variables, application, abstraction "
                "and conjunction")
    return term


def parse_term(text, notation="curried"):
    """Read a term.

    Parameters
    ----------
    text : str
    notation : {"curried", "logic"}
        In the curried notation primed identifiers are constants and other
        identifiers are variables.  The logic notation is read with nltk's
        `Expression.fromstring`.

    >>> format_term(parse_term("address' x *urinalysis'"))
    'address(*urinalysis, x)'
    >>> format_term(parse_term(r"\\x.address(x,*urinalysis)", "logic"))
    'λx[address(*urinalysis, x)]'
    """
    if notation == "logic":
        return _read_logic(text)
    if notation != "curried":
        raise ValueError("Cannot read notation: {!r}".format(notation))
    tokens = Tokens(text)
    term = read_term(tokens)
    if not tokens.at_end():
        raise TermSyntaxError(text, tokens.position(), "end of input")
    return term
