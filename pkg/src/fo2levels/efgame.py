"""Exact solver for the two-pebble Ehrenfeucht-Fraïssé game with word alternations.

In the game with budget ``(m, n)`` on words ``(u, v)``, Spoiler plays n
rounds, starting on u; he may change the word he plays on at most m-1 times,
and a change before his first move also counts.  Each round he places (or
lifts and re-places) the x or y pebble; Duplicator answers with the same
pebble on the other word, matching the letter and the order relation to the
other pebble when both are placed.  Duplicator wins iff ``u <= v`` for the
fragment of negation nesting m and quantifier depth n.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import InputError, ResourceCapError

MAX_WORD_LENGTH = 32


@dataclass(frozen=True)
class GameConfig:
    m: int
    n: int

    def __post_init__(self):
        if self.m < 1 or self.n < 0:
            raise InputError(f"game budget needs m >= 1 and n >= 0, got m={self.m}, n={self.n}")


@dataclass(frozen=True)
class SpoilerMove:
    word: str           # "u" or "v"
    pebble: str         # "x" or "y"
    position: int       # 0-based

    def __str__(self):
        return f"pebble {self.pebble} on position {self.position} of {self.word}"


def _sign(d):
    return (d > 0) - (d < 0)


def _solver(u, v):
    if len(u) > MAX_WORD_LENGTH or len(v) > MAX_WORD_LENGTH:
        raise ResourceCapError("EF word length", MAX_WORD_LENGTH, max(len(u), len(v)))
    words = (u, v)

    def answers(side, pebbles, pebble, i):
        """Duplicator's legal replies on the other word to Spoiler's move."""
        other = 1 - side
        w, w2 = words[side], words[other]
        q = 1 - pebble
        mine, theirs = pebbles[side][q], pebbles[other][q]
        out = []
        for j in range(len(w2)):
            if w2[j] != w[i]:
                continue
            if mine >= 0 and _sign(i - mine) != _sign(j - theirs):
                continue
            out.append(j)
        return out

    @lru_cache(maxsize=None)
    def wins(pebbles, rounds, alternations, side):
        if rounds == 0:
            return True
        return _spoiler_move(pebbles, rounds, alternations, side) is None

    def _spoiler_move(pebbles, rounds, alternations, side):
        for new_side in (side, 1 - side):
            cost = int(new_side != side)
            if cost > alternations:
                continue
            for pebble in (0, 1):
                for i in range(len(words[new_side])):
                    ok = False
                    for j in answers(new_side, pebbles, pebble, i):
                        nxt = [list(pebbles[0]), list(pebbles[1])]
                        nxt[new_side][pebble] = i
                        nxt[1 - new_side][pebble] = j
                        state = (tuple(nxt[0]), tuple(nxt[1]))
                        if wins(state, rounds - 1, alternations - cost, new_side):
                            ok = True
                            break
                    if not ok:
                        return new_side, pebble, i
        return None

    return wins, _spoiler_move


def ef_duplicator_wins(u, v, cfg: GameConfig) -> bool:
    wins, _ = _solver(u, v)
    return wins(((-1, -1), (-1, -1)), cfg.n, cfg.m - 1, 0)


def spoiler_first_move(u, v, cfg: GameConfig):
    """A winning first move for Spoiler, or None if Duplicator wins."""
    if cfg.n == 0:
        return None
    _, move = _solver(u, v)
    found = move(((-1, -1), (-1, -1)), cfg.n, cfg.m - 1, 0)
    if found is None:
        return None
    side, pebble, i = found
    return SpoilerMove("uv"[side], "xy"[pebble], i)


def sigma2_preorder(words, cfg: GameConfig, max_words=200) -> np.ndarray:
    """``out[i, j]`` iff Duplicator wins on ``(words[i], words[j])``."""
    words = list(words)
    if len(words) > max_words:
        raise ResourceCapError("preorder word budget", max_words, len(words))
    out = np.zeros((len(words), len(words)), dtype=bool)
    for i, u in enumerate(words):
        for j, v in enumerate(words):
            out[i, j] = True if u == v else ef_duplicator_wins(u, v, cfg)
    return out


def subword_closed(u, v, n) -> bool:
    """Every scattered subword of u of length at most n is a subword of v."""
    from itertools import combinations

    def is_sub(s, w):
        it = iter(w)
        return all(c in it for c in s)

    for k in range(1, min(n, len(u)) + 1):
        for idx in combinations(range(len(u)), k):
            if not is_sub("".join(u[i] for i in idx), v):
                return False
    return True
