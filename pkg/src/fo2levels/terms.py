"""Omega-terms, identities and their vectorised evaluation in finite monoids."""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import InputError


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class One:
    def __str__(self):
        return "1"


@dataclass(frozen=True)
class Prod:
    left: "Term"
    right: "Term"

    def __str__(self):
        return f"{self.left}*{self.right}"


@dataclass(frozen=True)
class Omega:
    child: "Term"

    def __str__(self):
        if isinstance(self.child, (Var, One)):
            return f"{self.child}^w"
        return f"({self.child})^w"


Term = Union[Var, One, Prod, Omega]


@dataclass(frozen=True)
class Identity:
    lhs: Term
    rhs: Term
    kind: str = "<="    # "<=" or "="

    def __str__(self):
        return f"{self.lhs} {self.kind} {self.rhs}"

    @property
    def variables(self):
        return sorted(variables(self.lhs) | variables(self.rhs))


def product(*terms):
    out = terms[0]
    for t in terms[1:]:
        out = Prod(out, t)
    return out


def variables(term) -> set:
    if isinstance(term, Var):
        return {term.name}
    if isinstance(term, One):
        return set()
    if isinstance(term, Prod):
        return variables(term.left) | variables(term.right)
    return variables(term.child)


def variable_counts(term) -> Counter:
    """Occurrences of each variable in the term tree (no sharing)."""
    if isinstance(term, Var):
        return Counter({term.name: 1})
    if isinstance(term, One):
        return Counter()
    if isinstance(term, Prod):
        return variable_counts(term.left) + variable_counts(term.right)
    return variable_counts(term.child)


def eval_vec(term, env, M, memo=None):
    """Evaluate ``term`` for many interpretations at once.

    ``env`` maps variable names to equal-shaped integer arrays of elements.
    Shared subterms are evaluated once per call.
    """
    if memo is None:
        memo = {}
    key = id(term)
    hit = memo.get(key)
    if hit is not None:
        return hit[1]
    if isinstance(term, Var):
        try:
            out = env[term.name]
        except KeyError:
            raise InputError(f"variable {term.name!r} has no interpretation") from None
    elif isinstance(term, One):
        shape = next(iter(env.values())).shape if env else ()
        out = np.full(shape, M.neutral, dtype=np.int64)
    elif isinstance(term, Prod):
        out = M.mul[eval_vec(term.left, env, M, memo), eval_vec(term.right, env, M, memo)]
    else:
        out = M.idempotent_powers[eval_vec(term.child, env, M, memo)]
    memo[key] = (term, out)     # keep term alive so its id stays unique
    return out


def eval_term(term, interpretation, M) -> int:
    env = {k: np.asarray(v, dtype=np.int64) for k, v in interpretation.items()}
    return int(eval_vec(term, env, M))


# -- text syntax ------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(<=|=|\^w|\*|\(|\))|([a-z][a-z0-9]*)|(1))")


def _tokenize(text):
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise InputError(f"unexpected character {text[pos:].strip()[:1]!r} at offset {pos} in {text!r}")
        out.append(m.group(1) or m.group(2) or m.group(3))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise InputError(f"expected {expected or 'a term'!r} but found {tok!r} in {self.text!r}")
        self.i += 1
        return tok

    def term(self):
        t = self.factor()
        while self.peek() == "*":
            self.take()
            t = Prod(t, self.factor())
        return t

    def factor(self):
        t = self.atom()
        while self.peek() == "^w":
            self.take()
            t = Omega(t)
        return t

    def atom(self):
        tok = self.take()
        if tok == "(":
            t = self.term()
            self.take(")")
            return t
        if tok == "1":
            return One()
        if re.fullmatch(r"[a-z][a-z0-9]*", tok):
            return Var(tok)
        raise InputError(f"unexpected token {tok!r} in {self.text!r}")


def parse_term(text) -> Term:
    p = _Parser(text)
    t = p.term()
    if p.peek() is not None:
        raise InputError(f"trailing input {p.peek()!r} in {text!r}")
    return t


def parse_identity(text) -> Identity:
    """Parse e.g. ``(z*x2)^w * z * (y2*z)^w <= (z*x2)^w * (y2*z)^w``."""
    p = _Parser(text)
    lhs = p.term()
    kind = p.take()
    if kind not in ("<=", "="):
        raise InputError(f"expected '<=' or '=' in {text!r}")
    rhs = p.term()
    if p.peek() is not None:
        raise InputError(f"trailing input {p.peek()!r} in {text!r}")
    return Identity(lhs, rhs, kind)


def build_um_vm(m):
    """The pair of terms ``(U_m, V_m)`` over ``x2..xm, y2..ym, z``."""
    if m < 1:
        raise InputError("m must be at least 1")
    u, v = One(), Var("z")
    for i in range(2, m + 1):
        left = Omega(Prod(v, Var(f"x{i}")))
        right = Omega(Prod(Var(f"y{i}"), v))
        u, v = product(left, u, right), product(left, v, right)
    return u, v


A_IDENTITY = parse_identity("x^w*x = x^w")
DA_IDENTITY = parse_identity("(x*y*z)^w*y*(x*y*z)^w = (x*y*z)^w")
JPLUS_IDENTITY = parse_identity("1 <= z")
