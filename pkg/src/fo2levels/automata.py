"""Finite and Büchi automata, ultimately periodic words, and transition monoids."""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .monoid import DEFAULT_SIZE_CAP, generate_monoid

NO_PATH, PATH, ACC_PATH = 0, 1, 2


@dataclass(frozen=True)
class Automaton:
    """Nondeterministic automaton; ``accepting`` is the final set for an NFA
    and the Büchi set for a Büchi automaton."""

    states: tuple
    alphabet: tuple
    transitions: frozenset      # of (q, a, q')
    initial: frozenset
    accepting: frozenset

    def __post_init__(self):
        if not self.alphabet:
            raise InputError("automaton.alphabet: must be nonempty")
        states = set(self.states)
        if len(states) != len(self.states):
            raise InputError("automaton.states: duplicate state")
        for q in self.initial | self.accepting:
            if q not in states:
                raise InputError(f"automaton: undeclared state {q!r}")
        for q, a, r in self.transitions:
            if q not in states or r not in states:
                raise InputError(f"automaton.transitions: undeclared state in {[q, a, r]!r}")
            if a not in self.alphabet:
                raise InputError(f"automaton.transitions: letter {a!r} not in alphabet")

    def successors(self, qs, a):
        return frozenset(r for q, b, r in self.transitions if b == a and q in qs)

    def to_dict(self, accepting_key="accepting"):
        return {
            "states": list(self.states),
            "alphabet": list(self.alphabet),
            "initial": sorted(self.initial, key=str),
            "transitions": sorted(([q, a, r] for q, a, r in self.transitions), key=str),
            accepting_key: sorted(self.accepting, key=str),
        }

    @classmethod
    def from_dict(cls, data, where="automaton"):
        if not isinstance(data, dict):
            raise InputError(f"{where}: expected an object")
        for key in ("states", "alphabet", "initial", "transitions"):
            if not isinstance(data.get(key), list):
                raise InputError(f"{where}.{key}: expected a list")
        acc = data.get("accepting", data.get("final"))
        if not isinstance(acc, list):
            raise InputError(f"{where}: expected an 'accepting' or 'final' list")
        trans = []
        for k, t in enumerate(data["transitions"]):
            if not isinstance(t, list) or len(t) != 3 or not isinstance(t[1], str):
                raise InputError(f"{where}.transitions[{k}]: expected [state, letter, state]")
            trans.append(tuple(t))
        for a in data["alphabet"]:
            if not isinstance(a, str) or len(a) != 1:
                raise InputError(f"{where}.alphabet: letters must be single characters, got {a!r}")
        return cls(tuple(data["states"]), tuple(sorted(data["alphabet"])), frozenset(trans),
                   frozenset(data["initial"]), frozenset(acc))


# the two roles share one representation
Nfa = Automaton
BuchiAutomaton = Automaton


def nfa(states, alphabet, transitions, initial, final):
    return Automaton(tuple(states), tuple(sorted(alphabet)), frozenset(map(tuple, transitions)),
                     frozenset(initial), frozenset(final))


buchi = nfa


# -- ultimately periodic words ----------------------------------------------

@dataclass(frozen=True)
class UpWord:
    prefix: str
    period: str = ""

    @property
    def infinite(self):
        return bool(self.period)

    def alph(self):
        return set(self.prefix) | set(self.period)

    def im(self):
        return set(self.period)

    def prefix_of_length(self, k):
        if not self.period:
            return self.prefix[:k]
        w = self.prefix
        while len(w) < k:
            w += self.period
        return w[:k]

    def __str__(self):
        if self.period:
            return f"{self.prefix}({self.period})^w"
        return self.prefix or "eps"


_UP = re.compile(r"^([^()^]*)(?:\(([^()^]*)\)\^w)?$")


def parse_upword(text) -> UpWord:
    """``ab(ba)^w`` is ``ab`` followed by ``ba`` repeated forever; ``ab`` is finite."""
    text = text.strip()
    if text in ("", "eps", "ε"):
        return UpWord("")
    m = _UP.match(text)
    if not m:
        raise InputError(f"cannot parse ultimately periodic word {text!r}; expected u(v)^w or u")
    prefix, period = m.group(1), m.group(2)
    if period is not None and period == "":
        raise InputError(f"empty period in {text!r}; write the finite word without ()^w")
    return UpWord(prefix, period or "")


# -- membership directly on automata ----------------------------------------

def nfa_accepts(N: Automaton, word) -> bool:
    qs = N.initial
    for a in word:
        qs = N.successors(qs, a)
    return bool(qs & N.accepting)


def buchi_accepts(B: Automaton, w: UpWord) -> bool:
    """Lasso search for ``u v^w`` on the product of B with positions of ``v``."""
    qs = B.initial
    for a in w.prefix:
        qs = B.successors(qs, a)
    v = w.period
    k = len(v)
    edges = {}
    for q, a, r in B.transitions:
        edges.setdefault((q, a), []).append(r)

    def succ(node):
        q, i = node
        return [(r, (i + 1) % k) for r in edges.get((q, v[i]), ())]

    start = [(q, 0) for q in qs]
    reach = set(start)
    stack = list(start)
    while stack:
        node = stack.pop()
        for nxt in succ(node):
            if nxt not in reach:
                reach.add(nxt)
                stack.append(nxt)
    for node in reach:
        if node[0] not in B.accepting:
            continue
        seen = set()
        stack = succ(node)
        while stack:
            x = stack.pop()
            if x == node:
                return True
            if x not in seen:
                seen.add(x)
                stack.extend(succ(x))
    return False


def member_up_automaton(N, B, w: UpWord) -> bool:
    if w.infinite:
        return B is not None and buchi_accepts(B, w)
    return N is not None and nfa_accepts(N, w.prefix)


# -- transition monoids -----------------------------------------------------

def _state_index(A):
    return {q: i for i, q in enumerate(A.states)}


def boolean_letter_matrices(A: Automaton):
    idx = _state_index(A)
    k = len(A.states)
    mats = {a: np.zeros((k, k), dtype=np.int8) for a in A.alphabet}
    for q, a, r in A.transitions:
        mats[a][idx[q], idx[r]] = 1
    return mats


def buchi_letter_matrices(A: Automaton):
    """Letter matrices over {no path, path, path through an accepting state}."""
    idx = _state_index(A)
    k = len(A.states)
    mats = {a: np.zeros((k, k), dtype=np.int8) for a in A.alphabet}
    for q, a, r in A.transitions:
        val = ACC_PATH if (q in A.accepting or r in A.accepting) else PATH
        i, j = idx[q], idx[r]
        mats[a][i, j] = max(mats[a][i, j], val)
    return mats


def boolean_product(x, y):
    return (x.astype(np.int32) @ y.astype(np.int32) > 0).astype(np.int8)


def buchi_product(x, y):
    # max over q of combine(x[p,q], y[q,r]); combine = 0 if either is 0, else max
    both = (x[:, :, None] > 0) & (y[None, :, :] > 0)
    val = np.maximum(x[:, :, None], y[None, :, :]) * both
    return val.max(axis=1).astype(np.int8)


class _Mat:
    """Hashable wrapper for a small integer matrix."""

    __slots__ = ("a", "_key")

    def __init__(self, a):
        self.a = a
        self._key = (a.shape, a.tobytes())

    def __hash__(self):
        return hash(self._key)

    def __eq__(self, other):
        return self._key == other._key


def nfa_transition_monoid(N: Automaton, cap=DEFAULT_SIZE_CAP):
    """Boolean transition monoid and the set of elements leading initial -> final."""
    mats = boolean_letter_matrices(N)
    k = len(N.states)
    ident = _Mat(np.eye(k, dtype=np.int8))
    M, values = generate_monoid({a: _Mat(m) for a, m in mats.items()},
                                lambda x, y: _Mat(boolean_product(x.a, y.a)), ident, cap)
    idx = _state_index(N)
    ini = [idx[q] for q in N.initial]
    fin = [idx[q] for q in N.accepting]
    final = {i for i, v in enumerate(values) if v.a[np.ix_(ini, fin)].any()}
    return M, final


def buchi_transition_monoid(B: Automaton, cap=DEFAULT_SIZE_CAP):
    """Recognizing monoid of L(B) in A^omega with linked-pair acceptance."""
    from .languages import RecognizedLanguage
    from .monoid import linked_pairs

    mats = buchi_letter_matrices(B)
    k = len(B.states)
    ident = _Mat(np.eye(k, dtype=np.int8))
    M, values = generate_monoid({a: _Mat(m) for a, m in mats.items()},
                                lambda x, y: _Mat(buchi_product(x.a, y.a)), ident, cap)
    arrays = [v.a for v in values]
    accept = frozenset(p for p in linked_pairs(M) if _buchi_pair_accepted(B, arrays, *p))
    return RecognizedLanguage(M, accept, source=(None, B))


def _buchi_pair_accepted(B, arrays, s, e):
    idx = _state_index(B)
    ini = [idx[q] for q in B.initial]
    loops = np.nonzero(arrays[e].diagonal() == ACC_PATH)[0]
    if not len(ini) or not len(loops):
        return False
    return bool((arrays[s][np.ix_(ini, loops)] > 0).any())
