import pytest

from ccgtune.categories import Atom
from ccgtune.categories import format_category
from ccgtune.categories import parse_category
from ccgtune.prosody import EMPTY_RECORD
from ccgtune.prosody import InfoRecord
from ccgtune.prosody import NotAPhrase
from ccgtune.prosody import NotNullTone
from ccgtune.prosody import PAtom
from ccgtune.prosody import PSlash
from ccgtune.prosody import RecordEntry
from ccgtune.prosody import Sign
from ccgtune.prosody import Tone
from ccgtune.prosody import UTTERANCE_ATOM
from ccgtune.prosody import UnknownMarker
from ccgtune.prosody import combine_signs
from ccgtune.prosody import format_marker
from ccgtune.prosody import format_pros
from ccgtune.prosody import is_null_tone
from ccgtune.prosody import lexical_sign
from ccgtune.prosody import open_binding
from ccgtune.prosody import parse_marker
from ccgtune.prosody import promote_null_theme
from ccgtune.prosody import promote_phrase
from ccgtune.prosody import pros_combine
from ccgtune.prosody import tone_category
from ccgtune.prosody import unify_pros
from ccgtune.prosody import word_pros
from ccgtune.semantics import Const
from ccgtune.semantics import Var
from ccgtune.semantics import parse_term
from ccgtune.tests.utils import lexicon


@pytest.mark.parametrize("marker,accent,boundary", [
    ("hstar", Tone.HSTAR, None),
    ("lhstar", Tone.LHSTAR, None),
    ("l", None, Tone.L),
    ("llb", None, Tone.LLB),
    ("lhstarlh", Tone.LHSTAR, Tone.LH),
    ("hstarllb", Tone.HSTAR, Tone.LLB),
    ("lhstarlhb", Tone.LHSTAR, Tone.LHB),
])
def test_parse_marker(marker, accent, boundary):
    assert parse_marker(marker) == (accent, boundary)
    assert format_marker(accent, boundary) == marker


@pytest.mark.parametrize("marker", ["", "h", "hstarhstar", "lhstarx",
                                    "llbl", "HSTAR"])
def test_parse_marker_unknown(marker):
    with pytest.raises(UnknownMarker):
        parse_marker(marker)


def test_tone_properties():
    assert Tone.HSTAR.is_accent
    assert not Tone.HSTAR.is_boundary
    assert Tone.LH.is_boundary
    assert Tone.LHB.is_final
    assert not Tone.LH.is_final
    assert not Tone.NULL.is_accent and not Tone.NULL.is_boundary
    assert Tone.NULL.marker == ""


@pytest.mark.parametrize("tone,expected", [
    (Tone.HSTAR, "p:rheme/b:ll"),
    (Tone.LHSTAR, "p:theme/b:lh"),
    (Tone.L, "p:rheme\\(p:rheme/b:ll)"),
    (Tone.LL, "p:rheme\\(p:rheme/b:ll)"),
    (Tone.LLB, "u:rheme\\(p:rheme/b:ll)"),
    (Tone.LH, "p:theme\\(p:theme/b:lh)"),
    (Tone.LHB, "u:theme\\(p:theme/b:lh)"),
    (Tone.NULL, "X:Y/X:Y"),
])
def test_tone_category(tone, expected):
    assert format_pros(tone_category(tone)) == expected


def test_null_tone_variables_are_fresh():
    a = tone_category(Tone.NULL)
    b = tone_category(Tone.NULL)
    assert a != b
    assert is_null_tone(a) and is_null_tone(b)
    assert not is_null_tone(tone_category(Tone.HSTAR))


def test_utterance_unifies_only_with_itself():
    assert unify_pros(UTTERANCE_ATOM, UTTERANCE_ATOM) == {}
    assert unify_pros(PAtom(Var("L"), Var("I")), UTTERANCE_ATOM) is None
    assert unify_pros(PAtom(Var("L"), Var("I")),
                      PAtom("p", "theme")) == {"L": "p", "I": "theme"}


def test_pros_combine_accent_and_boundary():
    phrase = pros_combine(tone_category(Tone.HSTAR),
                          tone_category(Tone.LLB), "bwd_apply")
    assert phrase == PAtom("u", "rheme")
    assert pros_combine(tone_category(Tone.HSTAR),
                        tone_category(Tone.LH), "bwd_apply") is None


def test_pros_combine_null_tone_spreads():
    null = tone_category(Tone.NULL)
    accent = tone_category(Tone.LHSTAR)
    assert format_pros(pros_combine(null, accent, "fwd_compose")) == \
        "p:theme/b:lh"
    assert pros_combine(null, PAtom("p", "rheme"), "fwd_apply") == \
        PAtom("p", "rheme")


def test_pros_combine_unknown_rule():
    with pytest.raises(ValueError):
        pros_combine(UTTERANCE_ATOM, UTTERANCE_ATOM, "bwd_compose")


def test_word_pros():
    assert word_pros() is not None
    assert is_null_tone(word_pros())
    assert word_pros(Tone.LHSTAR, Tone.LH) == PAtom("p", "theme")
    assert word_pros(Tone.LHSTAR, Tone.LL) is None


def test_info_record_add_and_instantiate():
    entry = RecordEntry(parse_category("S:p/NP:x"), 0, 2)
    record = InfoRecord(themes=[entry]) + InfoRecord(
        rhemes=[RecordEntry(Atom("NP", Const("lavage")), 2, 3)])
    assert len(record.themes) == 1 and len(record.rhemes) == 1
    new = record.instantiate({"p": parse_term("recommend' x traumaid'")})
    assert format_category(new.themes[0].category, "curried") == \
        "S:recommend' x traumaid'/NP:x"
    assert record.instantiate({}) is record


def test_open_binding_keeps_open_values():
    binding = {"a": Const("lavage"),
               "b": parse_term("recommend' x traumaid'"),
               "c": Var("d"),
               "F": "dcl"}
    assert open_binding(binding) == {"b": binding["b"], "c": Var("d")}


def sign(text, pros, start=0, end=1):
    return Sign(start, end, parse_category(text), pros, EMPTY_RECORD,
                "lex", ())


def test_combine_signs_requires_both_rules():
    subj = sign("S:p/(S:p\\NP:traumaid')", tone_category(Tone.NULL), 0, 1)
    verb = sign("(S:recommend' x y\\NP:y)/NP:x", tone_category(Tone.NULL),
                1, 2)
    combined = combine_signs(subj, verb)
    assert combined
    assert all(s.start == 0 and s.end == 2 for s in combined)
    assert ("fwd_compose", "fwd_compose") in [s.rule for s in combined]

    # Prosody blocks what syntax allows: a complete rheme phrase cannot be
    # followed by a theme accent.
    subj = sign("S:p/(S:p\\NP:traumaid')", PAtom("u", "rheme"), 0, 1)
    verb = sign("(S:recommend' x y\\NP:y)/NP:x", tone_category(Tone.LHSTAR),
                1, 2)
    assert combine_signs(subj, verb) == []


def test_combine_signs_not_adjacent():
    a = sign("NP:a'", UTTERANCE_ATOM, 0, 1)
    b = sign("NP:b'", UTTERANCE_ATOM, 2, 3)
    with pytest.raises(ValueError):
        combine_signs(a, b)


def test_promote_phrase():
    theme = sign("S:recommend' x traumaid'/NP:x", PAtom("p", "theme"), 0, 2)
    promoted, delta = promote_phrase(theme)
    assert promoted.pros == PSlash(UTTERANCE_ATOM, "/", UTTERANCE_ATOM)
    assert delta.themes == (RecordEntry(theme.syn, 0, 2),)
    assert promoted.record.themes == delta.themes
    assert promoted.children == (theme,)

    rheme = sign("NP:lavage'", PAtom("u", "rheme"), 2, 3)
    promoted, delta = promote_phrase(rheme)
    assert promoted.pros == UTTERANCE_ATOM
    assert delta.rhemes == (RecordEntry(rheme.syn, 2, 3),)


def test_promote_phrase_incomplete():
    with pytest.raises(NotAPhrase):
        promote_phrase(sign("NP:lavage'", tone_category(Tone.HSTAR)))


def test_promote_null_theme():
    null = sign("S:p/(S:p\\NP:traumaid')", tone_category(Tone.NULL))
    assert promote_null_theme(null).pros == PAtom("p", "theme")
    with pytest.raises(NotNullTone):
        promote_null_theme(sign("NP:a'", tone_category(Tone.HSTAR)))


def test_lexical_sign_focus():
    signs = lexical_sign("lavage", lexicon(), Tone.HSTAR, Tone.LLB, 3)
    assert len(signs) == 4
    for s in signs:
        assert (s.start, s.end) == (3, 4)
        assert s.pros == PAtom("u", "rheme")
        assert "*lavage" in format_category(s.syn)
    plain = lexical_sign("lavage", lexicon())
    assert all("*" not in format_category(s.syn) for s in plain)


def test_lexical_sign_bad_tune():
    assert lexical_sign("lavage", lexicon(), Tone.HSTAR, Tone.LH) == []
