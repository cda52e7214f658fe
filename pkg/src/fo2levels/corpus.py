"""Test corpora: small ordered monoids and a curated set of languages.

Monoids are submonoids of the full transformation monoids on up to three
points, each paired with the equality order and with stable orders obtained by
closing seed pairs under multiplication and transitivity.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

import numpy as np

from .automata import nfa
from .monoid import OrderedMonoid, generate_monoid, transitive_closure


def _compose(f, g):
    # right action: apply f, then g
    return tuple(g[i] for i in f)


def transformation_submonoids(points=3, max_gens=3, max_size=6):
    """Distinct (up to isomorphism) submonoids of T_k, k <= points, as unordered monoids."""
    seen = {}
    for k in range(1, points + 1):
        maps = list(itertools.product(range(k), repeat=k))
        ident = tuple(range(k))
        for r in range(1, max_gens + 1):
            for gens in itertools.combinations(maps, r):
                try:
                    M, _ = generate_monoid({chr(97 + i): g for i, g in enumerate(gens)},
                                           _compose, ident, cap=max_size)
                except Exception:
                    continue
                key = canonical_table(M)
                if key not in seen:
                    seen[key] = OrderedMonoid(M.size, 0, np.array(key[1]).reshape(M.size, M.size),
                                              np.eye(M.size, dtype=bool))
    return list(seen.values())


def canonical_table(M: OrderedMonoid):
    """Lexicographically least multiplication table over relabellings fixing the identity."""
    n = M.size
    others = [s for s in range(n) if s != M.neutral]
    best = None
    for perm in itertools.permutations(range(1, n)):
        phi = np.empty(n, dtype=np.int64)
        phi[M.neutral] = 0
        phi[others] = perm
        table = np.empty((n, n), dtype=np.int64)
        table[np.ix_(phi, phi)] = phi[M.mul]
        key = tuple(table.ravel().tolist())
        if best is None or key < best:
            best = key
    return n, best


def stable_closure(M: OrderedMonoid, seeds):
    """Smallest stable preorder containing ``seeds``; None if not antisymmetric."""
    rel = np.eye(M.size, dtype=bool)
    for s, t in seeds:
        rel[s, t] = True
    while True:
        new = rel.copy()
        for s, t in zip(*np.nonzero(rel)):
            new[M.mul[:, s], M.mul[:, t]] = True
            new[M.mul[s, :], M.mul[t, :]] = True
        new = transitive_closure(new)
        if np.array_equal(new, rel):
            break
        rel = new
    if (rel & rel.T & ~np.eye(M.size, dtype=bool)).any():
        return None
    return rel


def stable_orders(M: OrderedMonoid, rng, extra_seeds=4):
    orders = {np.eye(M.size, dtype=bool).tobytes(): np.eye(M.size, dtype=bool)}
    pairs = [(s, t) for s in range(M.size) for t in range(M.size) if s != t]
    candidates = [[p] for p in pairs]
    for _ in range(extra_seeds):
        if len(pairs) >= 2:
            candidates.append(rng.sample(pairs, 2))
    for seeds in candidates:
        rel = stable_closure(M, seeds)
        if rel is not None:
            orders.setdefault(rel.tobytes(), rel)
    return list(orders.values())


def monoid_corpus(max_size=6, seed=0):
    """Ordered monoids for the exhaustive property suites (deterministic for a seed)."""
    rng = random.Random(seed)
    out = []
    for M in transformation_submonoids(max_size=max_size):
        for leq in stable_orders(M, rng):
            out.append(M.with_order(leq))
    return out


# -- curated languages --------------------------------------------------------

@dataclass(frozen=True)
class CuratedLanguage:
    name: str
    universe: str
    finite: object      # Nfa or None
    infinite: object    # Buchi automaton or None
    alternative: tuple | None = None    # another (finite, infinite) pair for the same language

    def automata(self):
        return self.finite, self.infinite


def _ab(trans, initial, final, alphabet="ab", states=None):
    states = states or sorted({q for q, _, _ in trans} | {r for _, _, r in trans} | set(initial))
    return nfa(states, alphabet, trans, initial, final)


def _loops(q, alphabet="ab"):
    return [(q, a, q) for a in alphabet]


def curated_languages():
    contains_a = _ab([(0, "b", 0), (0, "a", 1)] + _loops(1), [0], [1])
    contains_a_alt = _ab(_loops(0) + [(0, "a", 1)] + _loops(1), [0], [1])
    contains_ab = _ab([(0, "b", 0), (0, "a", 1), (1, "a", 1), (1, "b", 2)] + _loops(2), [0], [2])
    contains_ab_alt = _ab(_loops(0) + [(0, "a", 1)] + _loops(1) + [(1, "b", 2)] + _loops(2), [0], [2])
    fin_a = _ab(_loops(0) + [(0, "b", 1), (1, "b", 1)], [0], [1])
    fin_a_alt = _ab(_loops(0) + [(0, "b", 1), (1, "b", 2), (2, "b", 1)], [0], [2])
    inf_a = _ab([(0, "a", 1), (0, "b", 0), (1, "a", 1), (1, "b", 0)], [0], [1])
    inf_a_alt = _ab(_loops(0) + [(0, "a", 1), (1, "a", 0), (1, "b", 0)], [0], [1])
    parity = _ab([(0, "a", 1), (1, "a", 0), (0, "b", 0), (1, "b", 1)], [0], [0])
    parity_alt = _ab([(i, "a", (i + 1) % 4) for i in range(4)] + [(i, "b", i) for i in range(4)],
                     [0], [0, 2])
    nothing = _ab([], [0], [], states=[0])
    nothing_alt = _ab(_loops(0) + [(0, "a", 1)], [0], [])
    everything = _ab(_loops(0), [0], [0])
    everything_alt = _ab(_loops(0) + _loops(1) + [(0, "a", 1)], [0], [0, 1])
    starts_a = _ab([(0, "a", 1)] + _loops(1), [0], [1])
    eventually_b = _ab(_loops(0, "abc") + [(0, "b", 1), (1, "b", 1)], [0], [1], alphabet="abc")
    return [
        CuratedLanguage("contains_a", "infty", contains_a, contains_a,
                        (contains_a_alt, contains_a_alt)),
        CuratedLanguage("contains_ab", "infty", contains_ab, contains_ab,
                        (contains_ab_alt, contains_ab_alt)),
        CuratedLanguage("finitely_many_a", "omega", None, fin_a, (None, fin_a_alt)),
        CuratedLanguage("infinitely_many_a", "omega", None, inf_a, (None, inf_a_alt)),
        CuratedLanguage("even_a", "star", parity, None, (parity_alt, None)),
        CuratedLanguage("empty", "infty", nothing, nothing, (nothing_alt, nothing_alt)),
        CuratedLanguage("everything", "infty", everything, everything,
                        (everything_alt, everything_alt)),
        CuratedLanguage("eventually_b", "omega", None, eventually_b),
        CuratedLanguage("starts_with_a", "infty", starts_a, starts_a),
        CuratedLanguage("all_finite", "star", everything, None),
    ]


def curated(name):
    for c in curated_languages():
        if c.name == name:
            return c
    raise KeyError(name)
