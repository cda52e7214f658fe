"""Languages over finite and infinite words recognized by ordered monoids.

A language is stored as a monoid with a letter map plus the set of accepted
linked pairs ``(s, e)``, meaning that every word in ``[s][e]^w`` belongs to it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .automata import (ACC_PATH, Automaton, UpWord, _Mat, _state_index, boolean_letter_matrices,
                       boolean_product, buchi_letter_matrices, buchi_product, member_up_automaton)
from .errors import InputError, InvariantViolation, PreconditionError
from .monoid import (DEFAULT_SIZE_CAP, OrderedMonoid, conjugacy_classes, generate_monoid,
                     is_linked, linked_pairs, quotient)


@dataclass(frozen=True, eq=False)
class RecognizedLanguage:
    monoid: OrderedMonoid
    accept: frozenset
    source: tuple | None = None     # (nfa or None, buchi or None) when built from automata
    finite_words_only: bool = False

    @property
    def alphabet(self):
        return self.monoid.alphabet

    def accept_matrix(self):
        acc = np.zeros((self.monoid.size, self.monoid.size), dtype=bool)
        for s, e in self.accept:
            acc[s, e] = True
        return acc

    def is_alphabetic(self):
        """Each element determines the set of letters of its words."""
        return letter_content(self.monoid) is not None

    def to_dict(self):
        data = self.monoid.to_dict()
        data["accept"] = sorted([int(s), int(e)] for s, e in self.accept)
        return data


def letter_content(M: OrderedMonoid):
    """Bitmask of ``alph(u)`` for each element ``mu(u)``, over the sorted alphabet.

    Returns None when the content is not a function of the element, that is,
    when the recognizer is not alphabetic.
    """
    alphabet = M.alphabet
    content = [None] * M.size
    content[M.neutral] = 0
    stack = [M.neutral]
    while stack:
        s = stack.pop()
        for i, a in enumerate(alphabet):
            t = int(M.mul[s, M.letters[a]])
            c = content[s] | (1 << i)
            if content[t] is None:
                content[t] = c
                stack.append(t)
            elif content[t] != c:
                return None
    return content


def _check_alphabets(N, B):
    if N is None and B is None:
        raise InputError("language: at least one of 'finite' and 'infinite' must be given")
    if N is not None and B is not None and set(N.alphabet) != set(B.alphabet):
        raise InputError(f"language: alphabet mismatch {list(N.alphabet)} vs {list(B.alphabet)}")
    return tuple(sorted((N or B).alphabet))


def combine_infty(N: Automaton | None, B: Automaton | None, cap=DEFAULT_SIZE_CAP):
    """Alphabetic recognizer of ``L(N) ∪ L(B)`` (finite words from N, infinite from B)."""
    alphabet = _check_alphabets(N, B)
    bit = {a: 1 << i for i, a in enumerate(alphabet)}
    nmats = boolean_letter_matrices(N) if N is not None else None
    bmats = buchi_letter_matrices(B) if B is not None else None

    def gen(a):
        return (_Mat(nmats[a]) if nmats else None, _Mat(bmats[a]) if bmats else None, bit[a])

    def multiply(x, y):
        return (_Mat(boolean_product(x[0].a, y[0].a)) if nmats else None,
                _Mat(buchi_product(x[1].a, y[1].a)) if bmats else None,
                x[2] | y[2])

    ident = (_Mat(np.eye(len(N.states), dtype=np.int8)) if N else None,
             _Mat(np.eye(len(B.states), dtype=np.int8)) if B else None, 0)
    M, values = generate_monoid({a: gen(a) for a in alphabet}, multiply, ident, cap)

    n = M.size
    leq = np.zeros((n, n), dtype=bool)
    for i, vi in enumerate(values):
        for j, vj in enumerate(values):
            leq[i, j] = vi[0] == vj[0] and vi[1] == vj[1] and (vi[2] & ~vj[2]) == 0
    M = M.with_order(leq)

    if N is not None:
        idx = _state_index(N)
        ini, fin = [idx[q] for q in N.initial], [idx[q] for q in N.accepting]
        nfinal = [bool(v[0].a[np.ix_(ini, fin)].any()) if ini and fin else False for v in values]
    if B is not None:
        idx = _state_index(B)
        bini = [idx[q] for q in B.initial]

    accept = set()
    for s, e in linked_pairs(M):
        if e == M.neutral:
            if N is not None and nfinal[s]:
                accept.add((s, e))
        elif B is not None and bini:
            loops = np.nonzero(values[e][1].a.diagonal() == ACC_PATH)[0]
            if len(loops) and (values[s][1].a[np.ix_(bini, loops)] > 0).any():
                accept.add((s, e))
    L = RecognizedLanguage(M, frozenset(accept), source=(N, B))
    rep = validate_recognition(L, samples=0)
    if not rep.ok:
        raise InvariantViolation(f"combined recognizer is not closed: {rep.violations[0]}")
    return L


def make_alphabetic(L: RecognizedLanguage, cap=DEFAULT_SIZE_CAP) -> RecognizedLanguage:
    """Replace the recognizer by the accessible part of ``M x 2^A``."""
    M = L.monoid
    alphabet = M.alphabet
    bit = {a: 1 << i for i, a in enumerate(alphabet)}
    P, values = generate_monoid({a: (M.letters[a], bit[a]) for a in alphabet},
                                lambda x, y: (int(M.mul[x[0], y[0]]), x[1] | y[1]),
                                (M.neutral, 0), cap)
    first = np.array([v[0] for v in values])
    mask = np.array([v[1] for v in values])
    leq = M.leq[first[:, None], first[None, :]] & ((mask[:, None] & ~mask[None, :]) == 0)
    P = P.with_order(leq)
    acc = L.accept_matrix()
    accept = frozenset((s, e) for s, e in linked_pairs(P) if acc[first[s], first[e]])
    return RecognizedLanguage(P, accept, L.source, L.finite_words_only)


def member_up_monoid(L: RecognizedLanguage, w: UpWord) -> bool:
    M = L.monoid
    if not w.infinite:
        return (M.image(w.prefix), M.neutral) in L.accept
    e = int(M.idempotent_powers[M.image(w.period)])
    s = int(M.mul[M.image(w.prefix), e])
    return (int(M.mul[s, e]), e) in L.accept


def _acceptance_table(L):
    """``F[p, q]``: words of ``[p][q]^w`` are accepted."""
    M = L.monoid
    acc = L.accept_matrix()
    idem = M.idempotent_powers
    pe = M.mul[:, idem]                      # pe[p, q] = p * q^pi
    return acc[pe, idem[None, :]]


def syntactic_preorder(L: RecognizedLanguage, finite_only=False) -> np.ndarray:
    """Context preorder on the elements of the recognizer.

    ``le[s, t]`` iff every context accepting ``s`` accepts ``t``: finite and
    ``x s y z^w`` contexts (z ranging over M, the neutral element giving
    finite words) and ``x (s y)^w`` contexts.  With ``finite_only`` only
    ``x s y`` contexts over finite words are used.
    """
    M = L.monoid
    n = M.size
    F = _acceptance_table(L)
    if finite_only:
        F = F[:, [M.neutral]]
    Fi = F.astype(np.int64)
    row_incl = (Fi @ (1 - Fi).T) == 0         # F[p] subset of F[q]
    T = M.triple                               # T[x, s, y]
    le = np.ones((n, n), dtype=bool)
    Ts = T.transpose(1, 0, 2)                  # [s, x, y]
    for s in range(n):
        le[s] = row_incl[Ts[s][None, :, :], Ts].reshape(n, -1).all(axis=1)
    if not finite_only:
        col_incl = (Fi.T @ (1 - Fi)) == 0      # F[:, q1] subset of F[:, q2]
        le &= col_incl[M.mul[:, None, :], M.mul[None, :, :]].all(axis=2)
    return le


def syntactic_quotient(L: RecognizedLanguage, finite_only=False) -> RecognizedLanguage:
    """The syntactic ordered monoid of L with the induced acceptance."""
    M = L.monoid
    if not M.letters:
        raise PreconditionError("syntactic quotient needs a letter map")
    le = syntactic_preorder(L, finite_only)
    eq = le & le.T
    classes, seen = [], set()
    for s in range(M.size):
        if s not in seen:
            cls = [int(t) for t in np.nonzero(eq[s])[0]]
            seen.update(cls)
            classes.append(cls)
    reps = [c[0] for c in classes]
    Q, proj = quotient(M, classes, le[np.ix_(reps, reps)])
    if not np.array_equal(proj[M.mul], Q.mul[proj[:, None], proj[None, :]]):
        raise InvariantViolation("syntactic congruence is not a congruence")
    left_ok = Q.leq[Q.mul[:, :, None], Q.mul[:, None, :]] | ~Q.leq[None, :, :]
    right_ok = Q.leq[Q.mul.T[:, :, None], Q.mul.T[:, None, :]] | ~Q.leq[None, :, :]
    if not (left_ok.all() and right_ok.all()):
        raise InvariantViolation("syntactic preorder is not stable")

    acc = L.accept_matrix()
    accept = set()
    if finite_only:
        for S in range(Q.size):
            if acc[reps[S], M.neutral]:
                accept.add((S, Q.neutral))
        for s in range(M.size):
            if acc[s, M.neutral] != ((int(proj[s]), Q.neutral) in accept):
                raise InvariantViolation("finite acceptance is not saturated by the quotient")
    else:
        idem = M.idempotent_powers
        for S, E in linked_pairs(Q):
            e = int(idem[reps[E]])
            s = int(M.mul[reps[S], e])
            if acc[s, e]:
                accept.add((S, E))
        for s, e in linked_pairs(M):
            if acc[s, e] != ((int(proj[s]), int(proj[e])) in accept):
                raise InvariantViolation("acceptance is not saturated by the quotient")
    return RecognizedLanguage(Q, frozenset(accept), L.source, finite_only or L.finite_words_only)


# -- validation -------------------------------------------------------------

@dataclass
class RecognitionReport:
    violations: list = field(default_factory=list)
    sampled: int = 0
    disagreements: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations and not self.disagreements

    def to_dict(self):
        return {"valid": self.ok, "violations": self.violations,
                "sampled_words": self.sampled, "sample_disagreements": self.disagreements}


def validate_recognition(L: RecognizedLanguage, samples=1000, seed=0, max_len=8):
    """Check the closure properties of the accept set; optionally sample words."""
    rep = RecognitionReport()
    M = L.monoid
    for p in sorted(L.accept):
        if not is_linked(M, p):
            rep.violations.append({"kind": "not linked", "witness": [list(p)]})
    cls = conjugacy_classes(M)
    by_class = {}
    for p, c in cls.items():
        by_class.setdefault(c, []).append(p)
    for c, members in sorted(by_class.items()):
        inside = [p for p in members if p in L.accept]
        if inside and len(inside) != len(members):
            outside = next(p for p in members if p not in L.accept)
            rep.violations.append({"kind": "conjugacy closure",
                                   "witness": [list(inside[0]), list(outside)]})
    for s, e in sorted(L.accept):
        for t in np.nonzero(M.leq[s])[0]:
            t = int(t)
            if M.mul[t, e] == t and (t, e) not in L.accept:
                rep.violations.append({"kind": "upward closure", "witness": [[s, e], [t, e]]})
                break
    if samples and L.source is not None:
        N, B = L.source
        rng = random.Random(seed)
        for w in sample_upwords(L.alphabet, rng, samples, max_len):
            rep.sampled += 1
            if member_up_monoid(L, w) != member_up_automaton(N, B, w):
                rep.disagreements.append(str(w))
    return rep


def sample_upwords(alphabet, rng, count, max_len=8, infinite_ratio=0.5):
    out = []
    for _ in range(count):
        u = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, max_len)))
        if rng.random() < infinite_ratio:
            v = "".join(rng.choice(alphabet) for _ in range(rng.randint(1, max_len)))
        else:
            v = ""
        out.append(UpWord(u, v))
    return out


# -- files ------------------------------------------------------------------

def automata_from_dict(data):
    if not isinstance(data, dict):
        raise InputError("language: expected an object with 'finite' and 'infinite'")
    if "finite" not in data and "infinite" not in data:
        raise InputError("language: expected keys 'finite' and/or 'infinite'")
    N = Automaton.from_dict(data["finite"], "finite") if data.get("finite") is not None else None
    B = Automaton.from_dict(data["infinite"], "infinite") if data.get("infinite") is not None else None
    _check_alphabets(N, B)
    return N, B


def language_from_dict(data, cap=DEFAULT_SIZE_CAP) -> RecognizedLanguage:
    N, B = automata_from_dict(data)
    return combine_infty(N, B, cap)
