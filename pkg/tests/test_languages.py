import random

import numpy as np
import pytest

from fo2levels.automata import (UpWord, buchi_accepts, buchi_transition_monoid, nfa, nfa_accepts,
                                parse_upword)
from fo2levels.corpus import curated, curated_languages
from fo2levels.errors import InputError
from fo2levels.languages import (combine_infty, language_from_dict, letter_content,
                                 make_alphabetic, member_up_monoid, sample_upwords,
                                 syntactic_quotient, validate_recognition)
from fo2levels.monoid import are_isomorphic, lesssim_matrix, validate


def test_parse_upword():
    assert parse_upword("ab(ba)^w") == UpWord("ab", "ba")
    assert parse_upword("ab") == UpWord("ab")
    assert parse_upword("eps") == UpWord("")
    assert parse_upword("(a)^w").infinite
    for bad in ["a(b", "a()^w", "(a)(b)^w"]:
        with pytest.raises(InputError):
            parse_upword(bad)


def test_nfa_membership():
    N = curated("contains_a").finite
    assert nfa_accepts(N, "ab")
    assert not nfa_accepts(N, "bbb")
    assert not nfa_accepts(N, "")


def test_buchi_lasso():
    B = curated("infinitely_many_a").infinite
    assert buchi_accepts(B, UpWord("", "ab"))
    assert buchi_accepts(B, UpWord("bbb", "a"))
    assert not buchi_accepts(B, UpWord("aaa", "b"))
    F = curated("finitely_many_a").infinite
    assert buchi_accepts(F, UpWord("aba", "b"))
    assert not buchi_accepts(F, UpWord("b", "ba"))


def test_member_examples():
    L = combine_infty(*curated("contains_a").automata())
    assert member_up_monoid(L, UpWord("ab"))
    assert not member_up_monoid(L, UpWord("b", "b"))
    assert member_up_monoid(L, UpWord("", "ba"))


def test_recognition_oracle_every_curated_language():
    for c in curated_languages():
        for pair in [c.automata()] + ([c.alternative] if c.alternative else []):
            L = combine_infty(*pair)
            assert validate(L.monoid).ok
            rep = validate_recognition(L, samples=300, seed=3)
            assert rep.ok, (c.name, rep.to_dict())


def test_combined_recognizer_is_alphabetic():
    for c in curated_languages():
        L = combine_infty(*c.automata())
        content = letter_content(L.monoid)
        assert content is not None
        for w in ["", "a", "ab", "ba", "bbb"]:
            if set(w) <= set(L.alphabet):
                mask = sum(1 << L.alphabet.index(a) for a in set(w))
                assert content[L.monoid.image(w)] == mask


def test_syntactic_finitely_many_a():
    # classes: the empty word, b+, and the words containing an a
    L = combine_infty(*curated("finitely_many_a").automata())
    S = syntactic_quotient(L)
    assert S.monoid.size == 3
    M = S.monoid
    one, b, a = M.image(""), M.image("b"), M.image("a")
    assert len({one, b, a}) == 3
    assert M.image("bbb") == b
    assert M.image("ab") == M.image("ba") == M.image("bab") == a
    # a <= 1 <= b: inserting a can only lose membership, inserting b only gain
    assert M.leq[a, one] and M.leq[one, b] and not M.leq[b, one]


def test_buchi_monoid_of_finitely_many_a():
    L = buchi_transition_monoid(curated("finitely_many_a").infinite)
    assert L.monoid.size <= 9
    rep = validate_recognition(L, samples=500)
    assert rep.ok
    S = syntactic_quotient(make_alphabetic(L))
    assert S.monoid.size == 3


def test_syntactic_infinitely_many_a():
    # b acts as the identity in every context, so only 1 and a remain, with 1 <= a
    S = syntactic_quotient(combine_infty(*curated("infinitely_many_a").automata()))
    M = S.monoid
    assert M.size == 2
    assert M.image("b") == M.image("") and M.image("ab") == M.image("a")
    assert M.leq[M.image(""), M.image("a")]


def test_syntactic_parity_is_c2():
    S = syntactic_quotient(combine_infty(*curated("even_a").automata()), finite_only=True)
    M = S.monoid
    assert M.size == 2
    assert M.image("aa") == M.image("") != M.image("a")


def test_syntactic_quotient_idempotent_and_no_larger():
    for c in curated_languages():
        star = c.universe == "star"
        L = combine_infty(*c.automata())
        S = syntactic_quotient(L, finite_only=star)
        S2 = syntactic_quotient(S, finite_only=star)
        assert S.monoid.size <= L.monoid.size
        assert are_isomorphic(S.monoid, S2.monoid)
        assert S.accept == S2.accept


def test_syntactic_quotient_recognizes_same_language():
    rng = random.Random(7)
    for c in curated_languages():
        star = c.universe == "star"
        L = combine_infty(*c.automata())
        S = syntactic_quotient(L, finite_only=star)
        for w in sample_upwords(L.alphabet, rng, 300, infinite_ratio=0 if star else 0.5):
            assert member_up_monoid(S, w) == member_up_monoid(L, w), (c.name, str(w))


def test_recognizer_invariance_of_syntactic_monoid():
    for c in curated_languages():
        if c.alternative is None:
            continue
        star = c.universe == "star"
        S1 = syntactic_quotient(combine_infty(*c.automata()), finite_only=star)
        S2 = syntactic_quotient(combine_infty(*c.alternative), finite_only=star)
        assert are_isomorphic(S1.monoid, S2.monoid), c.name


def test_make_alphabetic_idempotent():
    for c in curated_languages()[:5]:
        L = combine_infty(*c.automata())
        A1 = make_alphabetic(L)
        A2 = make_alphabetic(A1)
        assert are_isomorphic(A1.monoid, A2.monoid)
        assert A1.is_alphabetic()


def test_accept_closed_under_lesssim():
    for c in curated_languages():
        L = combine_infty(*c.automata())
        pairs, mat = lesssim_matrix(L.monoid)
        for i, p in enumerate(pairs):
            if p in L.accept:
                for j in np.nonzero(mat[i])[0]:
                    assert pairs[j] in L.accept, (c.name, p, pairs[j])


def test_language_file_errors():
    with pytest.raises(InputError):
        language_from_dict({})
    with pytest.raises(InputError, match="transitions"):
        language_from_dict({"finite": {"states": [0], "alphabet": ["a"], "initial": [0],
                                       "final": [0], "transitions": [[0, "a"]]}})
    with pytest.raises(InputError, match="alphabet"):
        language_from_dict({"finite": {"states": [0], "alphabet": ["a"], "initial": [0],
                                       "final": [0], "transitions": []},
                            "infinite": {"states": [0], "alphabet": ["b"], "initial": [0],
                                         "accepting": [0], "transitions": []}})


def test_alternative_automata_differ_but_agree():
    c = curated("contains_ab")
    assert c.finite != c.alternative[0]
    rng = random.Random(1)
    L1, L2 = combine_infty(*c.automata()), combine_infty(*c.alternative)
    for w in sample_upwords(L1.alphabet, rng, 200):
        assert member_up_monoid(L1, w) == member_up_monoid(L2, w)


def test_finite_membership_on_small_nfa():
    N = nfa([0, 1], "ab", [(0, "a", 1), (1, "b", 0)], [0], [0])
    L = combine_infty(N, None)
    for w in ["", "ab", "abab", "a", "ba", "aab"]:
        assert member_up_monoid(L, UpWord(w)) == nfa_accepts(N, w)
