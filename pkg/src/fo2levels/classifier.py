"""Minimal quantifier-alternation level of FO² for a recognized language."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import InputError, PreconditionError
from .languages import RecognizedLanguage, make_alphabetic, syntactic_quotient
from .logic import disj, subword_formula
from .topology import TopologyKind, is_open
from .varieties import min_level

UNIVERSES = ("infty", "omega", "star")


@dataclass
class Classification:
    universe: str
    fo2_definable: bool
    level: int | None
    evidence: dict = field(default_factory=dict)

    def to_dict(self):
        return {"universe": self.universe, "fo2": self.fo2_definable, "level": self.level,
                "evidence": self.evidence}


def check_universe(L: RecognizedLanguage, universe):
    if universe not in UNIVERSES:
        raise InputError(f"universe must be one of {list(UNIVERSES)}, got {universe!r}")
    one = L.monoid.neutral
    finite = sorted(p for p in L.accept if p[1] == one)
    infinite = sorted(p for p in L.accept if p[1] != one)
    if universe == "omega" and finite:
        raise InputError(f"universe omega but the language accepts finite words (pair {list(finite[0])})")
    if universe == "star" and infinite:
        raise InputError(f"universe star but the language accepts infinite words (pair {list(infinite[0])})")


def classify(L: RecognizedLanguage, universe="infty") -> Classification:
    check_universe(L, universe)
    if not L.is_alphabetic():
        L = make_alphabetic(L)
    S = syntactic_quotient(L, finite_only=(universe == "star"))
    chain = min_level(S.monoid)
    evidence = {"syntactic_size": S.monoid.size, "min_level": chain.to_dict()}
    if chain.level is None:
        return Classification(universe, False, None, evidence)
    level = chain.level
    if universe != "star":
        openness = {}
        for topology in ("cantor", "alphabetic"):
            kind = TopologyKind.of(topology, universe)
            openness[kind.value] = is_open(L, kind).to_dict()
        evidence["open"] = openness
        cantor = openness[f"cantor-{universe}"]["open"]
        alphabetic = openness[f"alphabetic-{universe}"]["open"]
        if level == 1 and not cantor:
            level = 2
        if level == 2 and not alphabetic:
            level = 3
    return Classification(universe, True, level, evidence)


def minimal_subwords(L: RecognizedLanguage, max_words=10_000):
    """Subword-minimal finite words of L, in length-lexicographic order.

    Repeatedly finds the shortest word of L outside the upward closure of the
    words kept so far, by breadth-first search over pairs (element, greedy
    match progress into each kept word).
    """
    M = L.monoid
    alphabet = M.alphabet
    accepting = {s for s, e in L.accept if e == M.neutral}
    kept = []
    while len(kept) < max_words:
        if "" in kept:
            return kept
        start = (M.neutral, (0,) * len(kept))
        parent = {start: None}
        queue = deque([start])
        found = None
        while queue:
            state = queue.popleft()
            if state[0] in accepting:
                found = state
                break
            s, prog = state
            for a in alphabet:
                nprog = tuple(p + (p < len(k) and k[p] == a) for p, k in zip(prog, kept))
                if any(p == len(k) for p, k in zip(nprog, kept)):
                    continue
                nxt = (int(M.mul[s, M.letters[a]]), nprog)
                if nxt not in parent:
                    parent[nxt] = (state, a)
                    queue.append(nxt)
        if found is None:
            return kept
        word = []
        while parent[found] is not None:
            found, a = parent[found]
            word.append(a)
        kept.append("".join(reversed(word)))
    raise PreconditionError(f"more than {max_words} minimal words")


def synthesize_sigma21_formula(L: RecognizedLanguage):
    """Disjunction of subword formulas for the minimal words of a level-1 language.

    Returns ``(formula, minimal_words)``.
    """
    cls = classify(L, "infty")
    if cls.level != 1:
        raise PreconditionError(f"language is not at level 1 (classification {cls.to_dict()})")
    words = minimal_subwords(L)
    return disj(subword_formula(w) for w in words), words
