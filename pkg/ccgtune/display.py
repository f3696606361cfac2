"""Render toned responses as a styled word/tone table.

Each word of a response is a column.  The first row holds the words and
the second the tones placed on them.  Cells are built by Field instances,
which run a value through pre-format processors, a width-and-alignment
format step, and post-format processors that add the styling.
"""

from collections import defaultdict
from collections import OrderedDict
from itertools import chain
from logging import getLogger
import re
import sys

# Eventually we may want to retire blessings.
try:
    from blessed import Terminal
except ImportError:
    from blessings import Terminal

from ccgtune.schema import defaults
from ccgtune.schema import validate
from ccgtune.schema import value_type

lgr = getLogger(__name__)


class Field(object):
    """Render values based on a list of processors.

    A Field instance is a template for a cell that is defined by its width,
    text alignment, and its "processors".

    When a field is called with a value, the value is rendered in three steps.

                       pre -> format -> post

    The pre-format processors turn the value into the text of the cell.
    That text is padded to the field's width.  The post-format processors
    then add styling.  The rendered string is the result returned by the
    last processor.

    Parameters
    ----------
    width : int, optional
    align : {'left', 'right', 'center'}, optional
    default_keys : sequence, optional
        The processor keys that can be used in the `pre` and `post` dicts,
        called in this order when the instance is called without `keys`.

    Attributes
    ----------
    width : int
    default_keys : list
    pre, post : dict of lists
        These map each key to a list of processors.  Each processor is called
        with the original value and the current result.
    """

    _align_values = {"left": "<", "right": ">", "center": "^"}

    def __init__(self, width=10, align="left", default_keys=None):
        if align not in self._align_values:
            raise ValueError("Unknown alignment: {!r}".format(align))
        self.width = width
        self._fmt = "".join(["{:", self._align_values[align], str(width), "}"])
        self.default_keys = list(default_keys or [])

        self.pre = defaultdict(list)
        self.post = defaultdict(list)

    def _check_if_registered(self, key):
        if key not in self.default_keys:
            raise ValueError(
                "key '{}' was not specified at initialization".format(key))

    def add(self, kind, key, *values):
        """Add processor functions, replacing any for `kind` and `key`.

        Parameters
        ----------
        kind : {"pre", "post"}
        key : str
        *values : callables
        """
        if kind == "pre":
            procs = self.pre
        elif kind == "post":
            procs = self.post
        else:
            raise ValueError("kind is not 'pre' or 'post'")
        self._check_if_registered(key)
        procs[key] = values

    def _format(self, _, result):
        return self._fmt.format(str(result))

    def __call__(self, value, keys=None):
        """Render `value` by feeding it through the processors.

        Parameters
        ----------
        value : object
        keys : sequence, optional
            Processor lists to call, in order.  Defaults to `default_keys`.
        """
        if keys is None:
            keys = self.default_keys
        for key in keys:
            self._check_if_registered(key)

        pre_funcs = chain(*(self.pre[k] for k in keys))
        post_funcs = chain(*(self.post[k] for k in keys))
        result = value
        for fn in chain(pre_funcs, [self._format], post_funcs):
            result = fn(value, result)
        return result


class Nothing(object):
    """Stand-in for an absent tone.

    It behaves like the string `text` (empty by default) when formatted, but
    is falsy and is skipped by the style processors.
    """

    def __init__(self, text=""):
        self._text = text

    def __str__(self):
        return self._text

    def __add__(self, right):
        return str(self) + right

    def __radd__(self, left):
        return left + str(self)

    def __bool__(self):
        return False

    def __format__(self, format_spec):
        return self._text.__format__(format_spec)


class StyleFunctionError(Exception):
    """Signal that a style processor failed.
    """
    def __init__(self, function, exc_type, exc_value):
        msg = "{} raised {}\n  {}".format(function, exc_type.__name__,
                                          exc_value)
        super(StyleFunctionError, self).__init__(msg)


def tone_labels(token):
    """Return the labels of the tones on `token`, accent first.

    >>> from ccgtune.parser import read_tokens
    >>> tone_labels(read_tokens("lavage@hstarllb")[0])
    ['H*', 'LL$']
    """
    return [t.value for t in (token.accent, token.boundary) if t is not None]


class StyleProcessors(object):
    """A base class for generating Field.processors for styled output.

    The values passed to the processors are the (token, text) cells built by
    ToneTable.  Lookups are keyed by the token's tone labels.

    Attributes
    ----------
    style_types : OrderedDict
        Style attribute name -> type of a simple value.
    """

    style_types = OrderedDict([("bold", bool),
                               ("underline", bool),
                               ("color", str)])

    def render(self, style_attr, value):
        """Return an output-specific styling of `value` for `style_attr`.
        """
        raise NotImplementedError

    def by_key(self, style_key, style_value):
        """Return a processor for a "simple" style value.
        """
        if self.style_types[style_key] is bool:
            if not style_value:
                return lambda _, result: result
            style_attr = style_key
        else:
            style_attr = style_value

        def proc(_, result):
            return self.render(style_attr, result)
        return proc

    def by_lookup(self, style_key, style_value):
        """Return a processor that picks the style from a tone mapping.

        The first of the cell token's tone labels found in the mapping wins.
        """
        style_attr = style_key if self.style_types[style_key] is bool else None
        mapping = style_value["lookup"]

        def proc(value, result):
            token, _ = value
            lookup_value = None
            for label in tone_labels(token):
                if label in mapping:
                    lookup_value = mapping[label]
                    break
            else:
                lgr.debug("by_lookup: No tone of %r in mapping %s",
                          token, mapping)
            if not lookup_value:
                return result
            return self.render(style_attr or lookup_value, result)
        return proc

    @staticmethod
    def cell_text(_, result):
        """Pre-format processor extracting the text of a cell.
        """
        token, text = result
        return text

    def pre_from_style(self, part_style):
        yield self.cell_text

    def post_from_style(self, part_style):
        """Yield post-format processors based on `part_style`.

        Parameters
        ----------
        part_style : dict
            Style of a theme or rheme, keyed by attributes such as "bold".
        """
        flanks = Flanks()
        yield flanks.split_flanks

        fns = {"simple": self.by_key,
               "lookup": self.by_lookup}

        for key in self.style_types:
            if key not in part_style:
                continue
            fn = fns[value_type(part_style[key])]
            yield _guard(fn(key, part_style[key]))

        yield flanks.join_flanks


def _guard(proc):
    """Wrap errors of a style processor in StyleFunctionError.
    """
    def wrapped(value, result):
        if isinstance(value[1], Nothing):
            return result
        try:
            return proc(value, result)
        except Exception:
            exctype, exc, tb = sys.exc_info()
            try:
                raise StyleFunctionError(
                    proc, exctype, exc).with_traceback(tb) from None
            finally:
                del tb
    wrapped.__name__ = proc.__name__
    return wrapped


class Flanks(object):
    """A pair of processors that split and rejoin flanking whitespace.
    """

    flank_re = re.compile(r"(\s*)(.*\S)(\s*)\Z", flags=re.DOTALL)

    def __init__(self):
        self.left, self.right = None, None

    def split_flanks(self, _, result):
        if not result.strip():
            self.left, self.right = "", ""
            return result

        match = self.flank_re.match(result)
        if not match:
            raise RuntimeError(
                "Flank regexp unexpectedly did not match result: "
                "{!r} (type: {})"
                .format(result, type(result)))
        self.left, self.right = match.group(1), match.group(3)
        return match.group(2)

    def join_flanks(self, _, result):
        return self.left + result + self.right


class PlainProcessors(StyleProcessors):
    """Ignore color, bold, or underline styling.
    """

    style_types = {}


class TermProcessors(StyleProcessors):
    """Generate Field.processors for styled Terminal output.

    Parameters
    ----------
    term : blessed.Terminal or blessings.Terminal
    """

    def __init__(self, term):
        self.term = term

    def render(self, style_attr, value):
        """Prepend the terminal code for `style_attr` to `value`.
        """
        if not value.strip():
            return value
        return str(getattr(self.term, style_attr)) + value

    def _maybe_reset(self):
        def proc(_, result):
            if "\x1b" in result:
                return result + self.term.normal
            return result
        return proc

    def post_from_style(self, part_style):
        for proc in super(TermProcessors, self).post_from_style(part_style):
            if proc.__name__ == "join_flanks":
                # Reset any codes before adding back whitespace.
                yield self._maybe_reset()
            yield proc


class ToneTable(object):
    """Render AnnotatedString instances as a two-row word/tone table.

    Parameters
    ----------
    style : dict, optional
        A document of the "style" schema.  Missing keys take their schema
        defaults.
    stream : file object, optional
        Where the rendered table is going, standard output by default.
    interactive : bool, optional
        Whether to emit terminal codes.  Defaults to `stream.isatty()`.
    term : Terminal, optional
        Use this terminal instead of creating one for `stream`.

    Raises
    ------
    SchemaValidationError
    """

    def __init__(self, style=None, stream=None, interactive=None, term=None):
        full = defaults("style")
        full.update(style or {})
        validate(full, "style")
        self.style = full

        self.stream = stream or sys.stdout
        if interactive is None:
            isatty = getattr(self.stream, "isatty", None)
            interactive = bool(isatty and isatty())
        self.interactive = interactive
        if term is None and interactive:
            term = Terminal(stream=self.stream,
                            # interactive=False maps to force_styling=None.
                            force_styling=True)
        if term is None:
            self._procs = PlainProcessors()
        else:
            self._procs = TermProcessors(term)

    def _field(self, width, part):
        field = Field(width=width, default_keys=["core", "style"])
        field.add("pre", "core", *self._procs.pre_from_style(self.style[part]))
        field.add("post", "style",
                  *self._procs.post_from_style(self.style[part]))
        return field

    def rows(self, annotated):
        """Return the word row and the tone row of `annotated`.
        """
        words, tones = [], []
        for token, part in zip(annotated.tokens, annotated.parts):
            label = " ".join(tone_labels(token)) or Nothing()
            width = max(len(token.word), len(str(label)))
            field = self._field(width, part)
            words.append(field((token, token.word)))
            tones.append(field((token, label)))
        sep = self.style["separator"]
        return sep.join(words).rstrip(), sep.join(tones).rstrip()

    def render(self, annotated):
        return "\n".join(self.rows(annotated))

