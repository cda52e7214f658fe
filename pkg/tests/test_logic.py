import itertools
import random

import pytest

from fo2levels.errors import InputError
from fo2levels.logic import (And, Bottom, Exists, FragmentIndex, Letter, Not, Or, Top, VarEq, VarLt,
                             disj, eval_finite, forall, fragment_of, parse_formula,
                             remove_double_negations, subword_formula, to_text)


def words(alphabet, max_len):
    for k in range(max_len + 1):
        for w in itertools.product(alphabet, repeat=k):
            yield "".join(w)


def is_subword(s, w):
    it = iter(w)
    return all(c in it for c in s)


@pytest.mark.parametrize("text, expected", [
    ("E x a(x)", (1, 1)),
    ("!E x a(x)", (2, 1)),
    ("E x !E y (x<y & a(y))", (2, 2)),
    ("a(x) & !b(x)", (0, 0)),
    ("E x (a(x) & E y (x<y & b(y)))", (1, 2)),
    ("!!E x a(x)", (3, 1)),
    ("A x a(x)", (2, 1)),     # !E x !a(x); the inner negation is quantifier-free
    ("E x a(x) | !E y b(y)", (2, 1)),
])
def test_fragment_of(text, expected):
    assert fragment_of(parse_formula(text)) == FragmentIndex(*expected)


def test_fragment_rejects_third_variable():
    with pytest.raises(InputError):
        fragment_of(Exists("z", Letter("z", "a")))


@pytest.mark.parametrize("text, word, expected", [
    ("E x a(x)", "ba", True),
    ("E x a(x)", "bb", False),
    ("E x (a(x) & E y (x<y & b(y)))", "ab", True),
    ("E x (a(x) & E y (x<y & b(y)))", "ba", False),
    ("A x a(x)", "", True),
    ("A x a(x)", "aab", False),
    ("E x E y (x<y & y<=x)", "aaa", False),
    ("E x E y (x=y & a(y))", "ba", True),
    ("true", "", True),
    ("false", "ab", False),
])
def test_eval_examples(text, word, expected):
    assert eval_finite(parse_formula(text), word) == expected


def test_eval_free_variable():
    with pytest.raises(InputError):
        eval_finite(Letter("x", "a"), "a")


def test_requantified_variable():
    # y is rebound inside; the inner x refers to the inner binding
    f = parse_formula("E x (a(x) & E y (x<y & E x (y<x & a(x))))")
    assert eval_finite(f, "aba")
    assert not eval_finite(f, "ab")


def test_parse_round_trip():
    texts = ["E x (a(x) & E y (x<y & b(y)))", "!E x !E y (y<x | x=y)", "A y (b(y) | a(y))",
             "true & false", "E x (x<=x)"]
    for text in texts:
        f = parse_formula(text)
        assert parse_formula(to_text(f)) == f


@pytest.mark.parametrize("bad", ["E z a(z)", "a(z)", "E x (a(x)", "x <", "E x a(x) b(x)", "x < a"])
def test_parse_errors(bad):
    with pytest.raises(InputError):
        parse_formula(bad)


def test_subword_formula_semantics():
    for u in words("ab", 3):
        f = subword_formula(u)
        assert fragment_of(f) == FragmentIndex(min(len(u), 1), len(u))
        for w in words("ab", 5):
            assert eval_finite(f, w) == is_subword(u, w), (u, w)


def test_subword_formula_shape():
    assert subword_formula("") == Top()
    assert subword_formula("a") == Exists("x", Letter("x", "a"))
    assert to_text(subword_formula("ab")) == "E x (a(x) & E y (x<y & b(y)))"
    assert disj([]) == Bottom()


def random_formula(rng, depth):
    if depth == 0 or rng.random() < 0.2:
        var = rng.choice("xy")
        return rng.choice([Letter(var, rng.choice("ab")), VarLt("x", "y"), VarEq("x", "y"), Top()])
    kind = rng.choice(["not", "notnot", "and", "or", "exists"])
    if kind == "not":
        return Not(random_formula(rng, depth - 1))
    if kind == "notnot":
        return Not(Not(random_formula(rng, depth - 1)))
    if kind == "and":
        return And(random_formula(rng, depth - 1), random_formula(rng, depth - 1))
    if kind == "or":
        return Or(random_formula(rng, depth - 1), random_formula(rng, depth - 1))
    return Exists(rng.choice("xy"), random_formula(rng, depth - 1))


def test_double_negation_removal_keeps_truth():
    rng = random.Random(11)
    for _ in range(300):
        f = Exists("x", Exists("y", random_formula(rng, 4)))
        g = remove_double_negations(f)
        assert fragment_of(g).m <= fragment_of(f).m
        for w in ["", "a", "ab", "bba", "abab"]:
            assert eval_finite(f, w) == eval_finite(g, w)


def test_forall_is_negated_exists():
    f = forall("x", Letter("x", "a"))
    assert f == Not(Exists("x", Not(Letter("x", "a"))))
