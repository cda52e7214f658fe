"""Two-variable first-order formulas over words with the order predicate.

Text syntax::

    E x (a(x) & E y (x<y & b(y)))     existential quantifier, letter atoms
    A x phi                           universal quantifier, read as !E x !phi
    !phi   phi & psi   phi | psi      negation, conjunction, disjunction
    x<y  x=y  x<=y  true  false
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .errors import InputError

VARIABLES = ("x", "y")


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Bottom:
    pass


@dataclass(frozen=True)
class Letter:
    var: str
    symbol: str


@dataclass(frozen=True)
class VarEq:
    left: str
    right: str


@dataclass(frozen=True)
class VarLt:
    left: str
    right: str


@dataclass(frozen=True)
class Not:
    child: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


Formula = Union[Top, Bottom, Letter, VarEq, VarLt, Not, And, Or, Exists]


def conj(*fs):
    out = fs[0]
    for f in fs[1:]:
        out = And(out, f)
    return out


def disj(fs):
    fs = list(fs)
    if not fs:
        return Bottom()
    out = fs[0]
    for f in fs[1:]:
        out = Or(out, f)
    return out


def forall(var, body):
    return Not(Exists(var, Not(body)))


def to_text(f) -> str:
    if isinstance(f, Top):
        return "true"
    if isinstance(f, Bottom):
        return "false"
    if isinstance(f, Letter):
        return f"{f.symbol}({f.var})"
    if isinstance(f, VarEq):
        return f"{f.left}={f.right}"
    if isinstance(f, VarLt):
        return f"{f.left}<{f.right}"
    if isinstance(f, Not):
        return f"!{_wrap(f.child)}"
    if isinstance(f, And):
        return f"{_wrap(f.left, And)} & {_wrap(f.right, And)}"
    if isinstance(f, Or):
        return f"{_wrap(f.left, Or)} | {_wrap(f.right, Or)}"
    return f"E {f.var} {_wrap(f.body)}"


def _wrap(f, same=None):
    text = to_text(f)
    if isinstance(f, (And, Or)) and not isinstance(f, same or ()):
        return f"({text})"
    return text


def variables_used(f) -> set:
    if isinstance(f, (Top, Bottom)):
        return set()
    if isinstance(f, Letter):
        return {f.var}
    if isinstance(f, (VarEq, VarLt)):
        return {f.left, f.right}
    if isinstance(f, Not):
        return variables_used(f.child)
    if isinstance(f, (And, Or)):
        return variables_used(f.left) | variables_used(f.right)
    return {f.var} | variables_used(f.body)


def free_variables(f) -> set:
    if isinstance(f, (Top, Bottom)):
        return set()
    if isinstance(f, Letter):
        return {f.var}
    if isinstance(f, (VarEq, VarLt)):
        return {f.left, f.right}
    if isinstance(f, Not):
        return free_variables(f.child)
    if isinstance(f, (And, Or)):
        return free_variables(f.left) | free_variables(f.right)
    return free_variables(f.body) - {f.var}


@dataclass(frozen=True, order=True)
class FragmentIndex:
    m: int      # negation nesting level
    n: int      # quantifier depth


def fragment_of(f) -> FragmentIndex:
    """Least ``(m, n)`` with ``f`` in the negation-nesting fragment of depth n."""
    extra = variables_used(f) - set(VARIABLES)
    if extra:
        raise InputError(f"formula uses variables {sorted(extra)}; only x and y are allowed")
    return _fragment(f)


def _fragment(f):
    if isinstance(f, (Top, Bottom, Letter, VarEq, VarLt)):
        return FragmentIndex(0, 0)
    if isinstance(f, Not):
        inner = _fragment(f.child)
        if inner == FragmentIndex(0, 0):
            return inner
        return FragmentIndex(inner.m + 1, inner.n)
    if isinstance(f, (And, Or)):
        a, b = _fragment(f.left), _fragment(f.right)
        return FragmentIndex(max(a.m, b.m), max(a.n, b.n))
    inner = _fragment(f.body)
    return FragmentIndex(max(inner.m, 1), inner.n + 1)


def eval_finite(f, word) -> bool:
    """Truth of a sentence on a finite word (positions ``0..len-1``)."""
    free = free_variables(f)
    if free:
        raise InputError(f"formula has free variables {sorted(free)}")
    return _eval(f, word, {})


def _eval(f, w, env):
    if isinstance(f, Top):
        return True
    if isinstance(f, Bottom):
        return False
    if isinstance(f, Letter):
        return w[env[f.var]] == f.symbol
    if isinstance(f, VarEq):
        return env[f.left] == env[f.right]
    if isinstance(f, VarLt):
        return env[f.left] < env[f.right]
    if isinstance(f, Not):
        return not _eval(f.child, w, env)
    if isinstance(f, And):
        return _eval(f.left, w, env) and _eval(f.right, w, env)
    if isinstance(f, Or):
        return _eval(f.left, w, env) or _eval(f.right, w, env)
    saved = env.get(f.var)
    try:
        for i in range(len(w)):
            env[f.var] = i
            if _eval(f.body, w, env):
                return True
        return False
    finally:
        if saved is None:
            env.pop(f.var, None)
        else:
            env[f.var] = saved


def subword_formula(word):
    """Sentence true exactly on words having ``word`` as a scattered subword."""
    if not word:
        return Top()
    f = None
    for i in range(len(word) - 1, -1, -1):
        var = VARIABLES[i % 2]
        prev = VARIABLES[(i + 1) % 2]
        body = Letter(var, word[i])
        if f is not None:
            body = And(body, f)
        if i > 0:
            body = And(VarLt(prev, var), body)
        f = Exists(var, body)
    return f


def remove_double_negations(f):
    if isinstance(f, Not):
        if isinstance(f.child, Not):
            return remove_double_negations(f.child.child)
        return Not(remove_double_negations(f.child))
    if isinstance(f, And):
        return And(remove_double_negations(f.left), remove_double_negations(f.right))
    if isinstance(f, Or):
        return Or(remove_double_negations(f.left), remove_double_negations(f.right))
    if isinstance(f, Exists):
        return Exists(f.var, remove_double_negations(f.body))
    return f


# -- parser -----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(<=|[()!&|<=]|true\b|false\b|[EA](?=\s)|[a-z]\w*|\S)")


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _TOKEN.findall(text)
        self.i = 0

    def peek(self, k=0):
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise InputError(f"expected {expected or 'more input'!r}, found {tok!r} in {self.text!r}")
        self.i += 1
        return tok

    def formula(self):
        f = self.conjunction()
        while self.peek() == "|":
            self.take()
            f = Or(f, self.conjunction())
        return f

    def conjunction(self):
        f = self.unary()
        while self.peek() == "&":
            self.take()
            f = And(f, self.unary())
        return f

    def unary(self):
        tok = self.peek()
        if tok == "!":
            self.take()
            return Not(self.unary())
        if tok in ("E", "A"):
            self.take()
            var = self.take()
            if var not in VARIABLES:
                raise InputError(f"quantified variable must be x or y, got {var!r}")
            body = self.unary()
            return Exists(var, body) if tok == "E" else forall(var, body)
        if tok == "(":
            self.take()
            f = self.formula()
            self.take(")")
            return f
        return self.atom()

    def atom(self):
        tok = self.take()
        if tok == "true":
            return Top()
        if tok == "false":
            return Bottom()
        if tok in VARIABLES and self.peek() in ("<", "=", "<="):
            op = self.take()
            other = self.take()
            if other not in VARIABLES:
                raise InputError(f"expected a variable after {op!r}, got {other!r}")
            if op == "<":
                return VarLt(tok, other)
            if op == "=":
                return VarEq(tok, other)
            return Or(VarEq(tok, other), VarLt(tok, other))
        if len(tok) == 1 and self.peek() == "(":
            self.take("(")
            var = self.take()
            if var not in VARIABLES:
                raise InputError(f"letter predicate needs variable x or y, got {var!r}")
            self.take(")")
            return Letter(var, tok)
        raise InputError(f"unexpected token {tok!r} in {self.text!r}")


def parse_formula(text) -> Formula:
    p = _Parser(text)
    f = p.formula()
    if p.peek() is not None:
        raise InputError(f"trailing input {p.peek()!r} in {text!r}")
    return f
