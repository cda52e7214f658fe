import pytest

from fo2levels.corpus import curated, curated_languages
from fo2levels.errors import PreconditionError
from fo2levels.languages import RecognizedLanguage, combine_infty
from fo2levels.monoid import cyclic_group, is_linked
from fo2levels.topology import TopologyKind, is_open

ALL = list(TopologyKind)


def lang(name):
    return combine_infty(*curated(name).automata())


# Hand derivations.  A language is Cantor-open when every member has a prefix
# u with uA^inf (or uA^w) inside it; alphabetic-open when u C^inf works with C
# the letters of the period.
EXPECTED = {
    # any word containing a keeps containing it
    ("contains_a", "cantor-infty"): True,
    ("contains_a", "alphabetic-infty"): True,
    ("contains_ab", "cantor-infty"): True,
    ("starts_with_a", "cantor-infty"): True,
    # a b^w: every u A^w contains u (ab)^w; but u {b}^w stays inside
    ("finitely_many_a", "cantor-omega"): False,
    ("finitely_many_a", "alphabetic-omega"): True,
    # over A^inf the basic set u {b}^inf contains the finite word u
    ("finitely_many_a", "alphabetic-infty"): False,
    # (ab)^w: every u {a,b}^w contains u b^w
    ("infinitely_many_a", "cantor-omega"): False,
    ("infinitely_many_a", "alphabetic-omega"): False,
    ("eventually_b", "cantor-omega"): False,
    ("eventually_b", "alphabetic-omega"): True,
}


@pytest.mark.parametrize("key", sorted(EXPECTED))
def test_hand_derived_openness(key):
    name, kind = key
    assert is_open(lang(name), TopologyKind(kind)).open == EXPECTED[key]


@pytest.mark.parametrize("name", ["empty", "everything"])
def test_trivial_languages_open_everywhere(name):
    L = lang(name)
    for kind in ALL:
        assert is_open(L, kind).open


def test_witness_shape():
    L = lang("infinitely_many_a")
    res = is_open(L, TopologyKind.CANTOR_OMEGA)
    (s, e), (t, f) = res.witness
    assert (s, e) in L.accept and (t, f) not in L.accept
    assert is_linked(L.monoid, (s, e)) and is_linked(L.monoid, (t, f))
    assert e != L.monoid.neutral and f != L.monoid.neutral


def test_cantor_implies_alphabetic():
    for c in curated_languages():
        L = combine_infty(*c.automata())
        for universe in ("infty", "omega"):
            if is_open(L, TopologyKind.of("cantor", universe)).open:
                assert is_open(L, TopologyKind.of("alphabetic", universe)).open, c.name


def test_non_alphabetic_recognizer_rejected():
    # g*g = 1 maps the word gg onto the empty word's element
    L = RecognizedLanguage(cyclic_group(2), frozenset({(0, 0)}))
    with pytest.raises(PreconditionError):
        is_open(L, TopologyKind.CANTOR_INFTY)


def test_kind_lookup():
    assert TopologyKind.of("alphabetic", "omega") is TopologyKind.ALPHABETIC_OMEGA
    assert TopologyKind.ALPHABETIC_OMEGA.omega and TopologyKind.ALPHABETIC_OMEGA.alphabetic
    assert not TopologyKind.CANTOR_INFTY.omega
