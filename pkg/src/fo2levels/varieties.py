"""Identity checking, the KD preorder and the quotient chain defining M_m."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvariantViolation, ResourceCapError
from .monoid import OrderedMonoid, quotient
from .terms import (A_IDENTITY, DA_IDENTITY, JPLUS_IDENTITY, Identity, build_um_vm,
                    eval_vec)

DEFAULT_MAX_INTERPRETATIONS = 10**7
CHUNK = 1 << 18


@dataclass
class IdentityResult:
    holds: bool
    witness: dict | None = None

    def __bool__(self):
        return self.holds


def satisfies_identity(M: OrderedMonoid, identity: Identity,
                       max_interpretations=DEFAULT_MAX_INTERPRETATIONS,
                       max_vars_large=6, large_size=8) -> IdentityResult:
    """Exhaustively check ``identity`` over every interpretation into ``M``.

    On failure the lexicographically least violating interpretation (variables
    in sorted order) is returned as the witness.
    """
    names = identity.variables
    n, k = M.size, len(names)
    total = n ** k
    if k > max_vars_large and n > large_size:
        raise ResourceCapError("identity variable budget", max_vars_large, k)
    if total > max_interpretations:
        raise ResourceCapError("identity interpretation budget", max_interpretations, total)
    for start in range(0, total, CHUNK):
        idx = np.arange(start, min(total, start + CHUNK), dtype=np.int64)
        env = {}
        for pos, name in enumerate(names):
            env[name] = (idx // n ** (k - 1 - pos)) % n
        memo = {}
        lhs = eval_vec(identity.lhs, env, M, memo)
        rhs = eval_vec(identity.rhs, env, M, memo)
        lhs, rhs = np.broadcast_to(lhs, idx.shape), np.broadcast_to(rhs, idx.shape)
        ok = M.leq[lhs, rhs] if identity.kind == "<=" else lhs == rhs
        bad = np.nonzero(~ok)[0]
        if len(bad):
            j = int(bad[0])
            return IdentityResult(False, {name: int(env[name][j]) for name in names})
    return IdentityResult(True)


def is_in_A(M):
    return satisfies_identity(M, A_IDENTITY).holds


def is_in_DA(M):
    return satisfies_identity(M, DA_IDENTITY).holds


def is_in_Jplus(M):
    return satisfies_identity(M, JPLUS_IDENTITY).holds


# -- the KD preorder --------------------------------------------------------

@dataclass(frozen=True, eq=False)
class KdRelation:
    matrix: np.ndarray
    classes: list

    def __call__(self, u, v):
        return bool(self.matrix[u, v])


def kd_preorder(M: OrderedMonoid) -> KdRelation:
    """``u`` below ``v`` iff for all s, t:

    (i)   s R svt  implies  s R sut
    (ii)  svt L t  implies  sut L t
    (iii) s R sv and vt L t  implies  sut <= svt
    """
    n = M.size
    g = M.green
    req, leq_l = g.req, g.leq
    T = M.triple.transpose(1, 0, 2)             # T[u, s, t] = s*u*t
    sidx = np.arange(n)[None, :, None]
    tidx = np.arange(n)[None, None, :]
    cond_r = req[sidx, T].reshape(n, n * n)     # s R sut
    cond_l = leq_l[T, tidx].reshape(n, n * n)   # sut L t

    def implied(cond):
        # [u, v] true iff cond[v] implies cond[u] pointwise
        viol = (~cond).astype(np.int64) @ cond.astype(np.int64).T
        return viol == 0

    rel = implied(cond_r) & implied(cond_l)
    s_r_sv = req[np.arange(n)[:, None], M.mul]           # [s, v]: s R sv
    vt_l_t = leq_l[M.mul, np.arange(n)[None, :]]         # [v, t]: vt L t
    for v in range(n):
        mask = s_r_sv[:, v][:, None] & vt_l_t[v][None, :]
        if mask.any():
            ok = M.leq[T[:, mask], T[v][mask][None, :]].all(axis=1)
            rel[:, v] &= ok
    classes = []
    seen = set()
    eq = rel & rel.T
    for u in range(n):
        if u not in seen:
            cls = [int(w) for w in np.nonzero(eq[u])[0]]
            seen.update(cls)
            classes.append(cls)
    return KdRelation(rel, classes)


def kd_quotient(M: OrderedMonoid):
    """``(M / KD, projection)``; the class order is the KD preorder itself."""
    kd = kd_preorder(M)
    reps = [c[0] for c in kd.classes]
    class_leq = kd.matrix[np.ix_(reps, reps)]
    Q, proj = quotient(M, kd.classes, class_leq)
    if not np.array_equal(proj[M.mul], Q.mul[proj[:, None], proj[None, :]]):
        raise InvariantViolation("KD classes are not a congruence")
    if not np.array_equal(kd.matrix, class_leq[proj[:, None], proj[None, :]]):
        raise InvariantViolation("KD preorder is not constant on classes")
    return Q, proj


# -- the hierarchy M_m ------------------------------------------------------

def is_in_Mm_via_quotient(M: OrderedMonoid, m: int) -> bool:
    if m < 1:
        raise ValueError("m must be at least 1")
    while m > 1:
        M, _ = kd_quotient(M)
        m -= 1
    return is_in_Jplus(M)


def is_in_Mm_via_identity(M: OrderedMonoid, m: int, **budget) -> bool:
    u, v = build_um_vm(m)
    return is_in_DA(M) and satisfies_identity(M, Identity(u, v, "<="), **budget).holds


@dataclass
class LevelResult:
    level: int | None
    diagnostic: str | None = None
    chain_sizes: list = field(default_factory=list)

    def to_dict(self):
        return {"level": self.level, "diagnostic": self.diagnostic,
                "chain_sizes": self.chain_sizes}


def _canonical_state(proj, Q):
    relabel = {}
    part = []
    for c in proj.tolist():
        part.append(relabel.setdefault(c, len(relabel)))
    order = np.array([relabel[c] for c in range(Q.size)])
    inv = np.argsort(order)
    leq = Q.leq[np.ix_(inv, inv)]
    return tuple(part), leq.tobytes()


def min_level(M: OrderedMonoid) -> LevelResult:
    """Smallest m with M in M_m, following the deterministic KD quotient chain."""
    if not is_in_DA(M):
        return LevelResult(None, "not in DA", [M.size])
    proj = np.arange(M.size)
    current = M
    seen = set()
    sizes = [M.size]
    level = 1
    while True:
        if is_in_Jplus(current):
            return LevelResult(level, None, sizes)
        state = _canonical_state(proj, current)
        if state in seen:
            return LevelResult(None, "chain cycle", sizes)
        seen.add(state)
        current, p = kd_quotient(current)
        proj = p[proj]
        sizes.append(current.size)
        level += 1
