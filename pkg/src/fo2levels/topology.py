"""Openness of recognized languages in the Cantor and alphabetic topologies.

For an alphabetic recognizer with ``[s][e]^w`` inside L, the basic
neighbourhood ``[s]A^inf`` (Cantor) or ``[s]C^inf`` with ``C = alph(e)``
(alphabetic) must lie inside L; by recognition this is a condition on linked
pairs ``(t, f)`` with ``t`` in ``s M`` (resp. ``s M_C`` and ``f`` in ``M_C``).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import PreconditionError
from .languages import RecognizedLanguage, letter_content
from .monoid import linked_pairs, submonoid_generated


class TopologyKind(enum.Enum):
    CANTOR_INFTY = "cantor-infty"
    ALPHABETIC_INFTY = "alphabetic-infty"
    CANTOR_OMEGA = "cantor-omega"
    ALPHABETIC_OMEGA = "alphabetic-omega"

    @classmethod
    def of(cls, topology, universe):
        return cls(f"{topology}-{universe}")

    @property
    def alphabetic(self):
        return self in (TopologyKind.ALPHABETIC_INFTY, TopologyKind.ALPHABETIC_OMEGA)

    @property
    def omega(self):
        return self in (TopologyKind.CANTOR_OMEGA, TopologyKind.ALPHABETIC_OMEGA)


@dataclass
class OpennessResult:
    open: bool
    witness: tuple | None = None    # (accepted pair, rejected pair in its neighbourhood)

    def __bool__(self):
        return self.open

    def to_dict(self):
        w = None if self.witness is None else [list(self.witness[0]), list(self.witness[1])]
        return {"open": self.open, "witness": w}


def is_open(L: RecognizedLanguage, kind: TopologyKind) -> OpennessResult:
    M = L.monoid
    content = letter_content(M)
    if content is None:
        raise PreconditionError("openness test needs an alphabetic recognizer")
    one = M.neutral
    pairs = linked_pairs(M)
    pairs.sort()
    acc = L.accept_matrix()
    alphabet = M.alphabet
    sub_cache = {}

    for s, e in sorted(L.accept):
        if kind.omega and e == one:
            continue
        if kind.alphabetic:
            mask = content[e]
            if mask not in sub_cache:
                gens = [M.letters[a] for i, a in enumerate(alphabet) if mask >> i & 1]
                sub_cache[mask] = np.array(sorted(submonoid_generated(M, gens)))
            sub = sub_cache[mask]
            reach = np.zeros(M.size, dtype=bool)
            reach[M.mul[s, sub]] = True
            allowed_f = np.zeros(M.size, dtype=bool)
            allowed_f[sub] = True
        else:
            reach = np.zeros(M.size, dtype=bool)
            reach[M.mul[s, :]] = True
            allowed_f = np.ones(M.size, dtype=bool)
        for t, f in pairs:
            if not (reach[t] and allowed_f[f]):
                continue
            if kind.omega and f == one:
                continue
            if not acc[t, f]:
                return OpennessResult(False, ((s, e), (t, f)))
    return OpennessResult(True)
