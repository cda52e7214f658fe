"""Finite ordered monoids given by multiplication tables.

Elements are the dense indices ``0..n-1``.  Relations (the order, Green's
preorders) are stored as ``n x n`` boolean numpy arrays so that the exhaustive
checks used throughout the package can be vectorised.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import InputError, ResourceCapError

DEFAULT_SIZE_CAP = 5000


@dataclass(frozen=True, eq=False)
class OrderedMonoid:
    size: int
    neutral: int
    mul: np.ndarray
    leq: np.ndarray
    letters: dict = field(default_factory=dict)

    def __post_init__(self):
        mul = np.array(self.mul, dtype=np.int64).reshape(self.size, self.size)
        leq = np.array(self.leq, dtype=bool).reshape(self.size, self.size)
        mul.flags.writeable = False
        leq.flags.writeable = False
        object.__setattr__(self, "mul", mul)
        object.__setattr__(self, "leq", leq)
        object.__setattr__(self, "letters", dict(self.letters))

    def __repr__(self):
        return f"OrderedMonoid(size={self.size}, letters={sorted(self.letters)})"

    @property
    def elements(self):
        return range(self.size)

    @property
    def alphabet(self):
        return sorted(self.letters)

    def product(self, *xs):
        r = self.neutral
        for x in xs:
            r = int(self.mul[r, x])
        return r

    def image(self, word):
        """Image of a finite word under the letter homomorphism."""
        r = self.neutral
        for a in word:
            try:
                r = int(self.mul[r, self.letters[a]])
            except KeyError:
                raise InputError(f"letter {a!r} is not in the alphabet {self.alphabet}") from None
        return r

    @cached_property
    def idempotent_powers(self) -> np.ndarray:
        out = np.empty(self.size, dtype=np.int64)
        for s in range(self.size):
            out[s] = _idempotent_power(self.mul, s)
        out.flags.writeable = False
        return out

    @cached_property
    def triple(self) -> np.ndarray:
        """``triple[x, s, y] == x*s*y``."""
        return self.mul[self.mul, :]

    @cached_property
    def idempotents(self):
        return [e for e in range(self.size) if self.mul[e, e] == e]

    @cached_property
    def green(self) -> "GreenData":
        return green(self)

    def is_idempotent(self, e):
        return self.mul[e, e] == e

    def with_order(self, leq) -> "OrderedMonoid":
        return OrderedMonoid(self.size, self.neutral, self.mul, leq, self.letters)

    def to_dict(self):
        order = [[int(s), int(t)] for s, t in zip(*np.nonzero(self.leq)) if s != t]
        return {
            "size": self.size,
            "neutral": self.neutral,
            "mul": self.mul.tolist(),
            "order": order,
            "letters": {a: int(i) for a, i in sorted(self.letters.items())},
        }

    @classmethod
    def from_dict(cls, data) -> "OrderedMonoid":
        """Parse the JSON monoid format.

        ``order`` lists pairs ``[s, t]`` with ``s <= t``; reflexive pairs may be
        omitted and the transitive closure is taken.  The result is *not*
        validated; call :func:`validate` on it.
        """
        if not isinstance(data, dict):
            raise InputError("monoid: expected a JSON object")
        try:
            n = data["size"]
            neutral = data.get("neutral", 0)
            mul = data["mul"]
        except KeyError as exc:
            raise InputError(f"monoid: missing field {exc.args[0]!r}") from None
        if not isinstance(n, int) or n < 1:
            raise InputError("monoid.size: expected a positive integer")
        if not isinstance(neutral, int) or not 0 <= neutral < n:
            raise InputError(f"monoid.neutral: expected an index in 0..{n - 1}")
        if not isinstance(mul, list) or len(mul) != n:
            raise InputError(f"monoid.mul: expected {n} rows")
        for i, row in enumerate(mul):
            if not isinstance(row, list) or len(row) != n:
                raise InputError(f"monoid.mul[{i}]: expected a row of {n} entries")
            for j, v in enumerate(row):
                if not isinstance(v, int) or not 0 <= v < n:
                    raise InputError(f"monoid.mul[{i}][{j}]: {v!r} is not an element index")
        leq = np.eye(n, dtype=bool)
        for k, pair in enumerate(data.get("order", [])):
            if (not isinstance(pair, list) or len(pair) != 2
                    or not all(isinstance(v, int) and 0 <= v < n for v in pair)):
                raise InputError(f"monoid.order[{k}]: expected a pair of element indices")
            leq[pair[0], pair[1]] = True
        letters = data.get("letters", {}) or {}
        if not isinstance(letters, dict):
            raise InputError("monoid.letters: expected an object")
        for a, v in letters.items():
            if not isinstance(v, int) or not 0 <= v < n:
                raise InputError(f"monoid.letters[{a!r}]: {v!r} is not an element index")
        return cls(n, neutral, mul, transitive_closure(leq), letters)


def transitive_closure(rel) -> np.ndarray:
    rel = np.array(rel, dtype=bool)
    for k in range(rel.shape[0]):
        rel |= np.outer(rel[:, k], rel[k, :])
    return rel


def _idempotent_power(mul, s):
    p = s
    while mul[p, p] != p:
        p = mul[p, s]
    return int(p)


def idempotent_power(M: OrderedMonoid, s: int) -> int:
    """The unique idempotent among ``s, s^2, s^3, ...``."""
    return int(M.idempotent_powers[s])


# -- validation -------------------------------------------------------------

@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def add(self, kind, witness, message):
        self.violations.append({"kind": kind, "witness": list(witness), "message": message})

    def to_dict(self):
        return {"valid": self.ok, "violations": self.violations}


def validate(M: OrderedMonoid) -> ValidationReport:
    """Check associativity, identity, partial order axioms and stability.

    Reports at most one witness per kind of defect.
    """
    rep = ValidationReport()
    n, mul, leq, e = M.size, M.mul, M.leq, M.neutral

    left = mul[mul, :]          # (ab)c
    right = mul[:, mul]         # a(bc)
    bad = np.argwhere(left != right)
    if len(bad):
        a, b, c = (int(v) for v in bad[0])
        rep.add("associativity", (a, b, c), f"({a}*{b})*{c} != {a}*({b}*{c})")

    ar = np.arange(n)
    bad = np.nonzero((mul[e, :] != ar) | (mul[:, e] != ar))[0]
    if len(bad):
        x = int(bad[0])
        rep.add("identity", (e, x), f"{e} is not a two-sided identity for {x}")

    bad = np.nonzero(~np.diag(leq))[0]
    if len(bad):
        s = int(bad[0])
        rep.add("reflexivity", (s,), f"not {s} <= {s}")
    bad = np.argwhere(leq & leq.T & ~np.eye(n, dtype=bool))
    if len(bad):
        s, t = (int(v) for v in bad[0])
        rep.add("antisymmetry", (s, t), f"{s} <= {t} and {t} <= {s}")
    comp = (leq.astype(np.int64) @ leq.astype(np.int64)) > 0
    bad = np.argwhere(comp & ~leq)
    if len(bad):
        s, u = (int(v) for v in bad[0])
        t = int(np.nonzero(leq[s] & leq[:, u])[0][0])
        rep.add("transitivity", (s, t, u), f"{s} <= {t} <= {u} but not {s} <= {u}")

    # one-sided compatibility on both sides implies two-sided stability
    for s, t in zip(*np.nonzero(leq)):
        xs = np.nonzero(~leq[mul[:, s], mul[:, t]])[0]
        if len(xs):
            x = int(xs[0])
            rep.add("stability", (x, int(s), int(t)), f"{s} <= {t} but not {x}*{s} <= {x}*{t}")
            break
        ys = np.nonzero(~leq[mul[s, :], mul[t, :]])[0]
        if len(ys):
            y = int(ys[0])
            rep.add("stability", (int(s), int(t), y), f"{s} <= {t} but not {s}*{y} <= {t}*{y}")
            break

    for a, v in M.letters.items():
        if not 0 <= v < n:
            rep.add("letters", (v,), f"letter {a!r} maps outside the carrier")
    return rep


# -- Green's relations ------------------------------------------------------

@dataclass(frozen=True, eq=False)
class GreenData:
    rleq: np.ndarray
    lleq: np.ndarray
    jleq: np.ndarray

    @cached_property
    def req(self):
        return self.rleq & self.rleq.T

    @cached_property
    def leq(self):
        return self.lleq & self.lleq.T

    @cached_property
    def jeq(self):
        return self.jleq & self.jleq.T

    def classes(self, kind="J"):
        eq = {"R": self.req, "L": self.leq, "J": self.jeq}[kind]
        seen, out = set(), []
        for s in range(eq.shape[0]):
            if s not in seen:
                cls = [int(t) for t in np.nonzero(eq[s])[0]]
                seen.update(cls)
                out.append(cls)
        return out


def green(M: OrderedMonoid) -> GreenData:
    """Green's preorders by inclusion of principal ideals."""
    n = M.size
    rleq = np.zeros((n, n), dtype=bool)
    lleq = np.zeros((n, n), dtype=bool)
    jleq = np.zeros((n, n), dtype=bool)
    for t in range(n):
        rleq[M.mul[t, :], t] = True        # s in tM
        lleq[M.mul[:, t], t] = True        # s in Mt
        jleq[M.triple[:, t, :].ravel(), t] = True
    return GreenData(rleq, lleq, jleq)


# -- linked pairs, conjugacy and the ordered conjugacy preorder -------------

def linked_pairs(M: OrderedMonoid):
    return [(s, e) for e in M.idempotents for s in range(M.size) if M.mul[s, e] == s]


def is_linked(M, pair):
    s, e = pair
    return M.mul[s, e] == s and M.mul[e, e] == e


def is_conjugate(M: OrderedMonoid, p, q) -> bool:
    """Exhaustive search for ``x, y`` with ``s x = t``, ``x y = e``, ``y x = f``."""
    (s, e), (t, f) = p, q
    mul = M.mul
    ok = (mul[s, :] == t)[:, None] & (mul == e) & (mul.T == f)
    return bool(ok.any())


def lesssim(M: OrderedMonoid, p, q) -> bool:
    t, f = q
    for r in np.nonzero(M.leq[:, t])[0]:
        r = int(r)
        if M.mul[r, f] == r and is_conjugate(M, p, (r, f)):
            return True
    return False


def conjugacy_classes(M: OrderedMonoid) -> dict:
    """Map each linked pair to a canonical representative of its conjugacy class.

    Built by union-find over the generating moves ``(s, xy) -> (sx, yx)``.
    """
    pairs = linked_pairs(M)
    parent = {p: p for p in pairs}

    def find(p):
        while parent[p] != p:
            parent[p] = parent[parent[p]]
            p = parent[p]
        return p

    mul = M.mul
    idem = mul.diagonal() == np.arange(M.size)
    xs, ys = np.nonzero(idem[mul] & idem[mul.T])
    for x, y in zip(xs, ys):
        e, f = int(mul[x, y]), int(mul[y, x])
        for s in np.nonzero(mul[:, e] == np.arange(M.size))[0]:
            a, b = find((int(s), e)), find((int(mul[s, x]), f))
            if a != b:
                parent[max(a, b)] = min(a, b)
    return {p: find(p) for p in pairs}


def lesssim_matrix(M: OrderedMonoid):
    """All of ``lesssim`` at once, as ``(pairs, matrix)`` indexed like ``pairs``."""
    pairs = linked_pairs(M)
    index = {p: i for i, p in enumerate(pairs)}
    cls = conjugacy_classes(M)
    members = {}
    for p in pairs:
        members.setdefault(cls[p], []).append(p)
    out = np.zeros((len(pairs), len(pairs)), dtype=bool)
    for p in pairs:
        i = index[p]
        for r, f in members[cls[p]]:
            for t in np.nonzero(M.leq[r])[0]:
                q = (int(t), f)
                if q in index:
                    out[i, index[q]] = True
    return pairs, out


# -- constructions ----------------------------------------------------------

def trivial_monoid():
    return OrderedMonoid(1, 0, [[0]], [[True]])


def zero_one_monoid(zero_below_one=True):
    """``{1, 0}`` under multiplication; element 0 is the neutral 1, element 1 is 0."""
    leq = np.eye(2, dtype=bool)
    if zero_below_one:
        leq[1, 0] = True
    else:
        leq[0, 1] = True
    return OrderedMonoid(2, 0, [[0, 1], [1, 1]], leq)


def cyclic_group(k):
    mul = [[(i + j) % k for j in range(k)] for i in range(k)]
    return OrderedMonoid(k, 0, mul, np.eye(k, dtype=bool), {"g": 1 % k})


def direct_product(M1: OrderedMonoid, M2: OrderedMonoid) -> OrderedMonoid:
    """Componentwise product; element ``(a, b)`` is indexed ``a * |M2| + b``."""
    n1, n2 = M1.size, M2.size
    mul = (M1.mul[:, None, :, None] * n2 + M2.mul[None, :, None, :]).reshape(n1 * n2, n1 * n2)
    leq = (M1.leq[:, None, :, None] & M2.leq[None, :, None, :]).reshape(n1 * n2, n1 * n2)
    letters = {}
    if M1.letters and M2.letters:
        for a in set(M1.letters) & set(M2.letters):
            letters[a] = M1.letters[a] * n2 + M2.letters[a]
    return OrderedMonoid(n1 * n2, M1.neutral * n2 + M2.neutral, mul, leq, letters)


def powerset_alphabet_monoid(alphabet) -> OrderedMonoid:
    """``2^A`` under union, ordered by inclusion; subsets are bitmasks over sorted A."""
    alphabet = sorted(alphabet)
    if not alphabet:
        raise InputError("alphabet must be nonempty")
    n = 1 << len(alphabet)
    ar = np.arange(n)
    mul = ar[:, None] | ar[None, :]
    leq = (ar[:, None] & ~ar[None, :]) == 0
    return OrderedMonoid(n, 0, mul, leq, {a: 1 << i for i, a in enumerate(alphabet)})


def generate_monoid(generators, multiply, identity, cap=DEFAULT_SIZE_CAP):
    """Enumerate the monoid generated by ``generators`` (a dict letter -> value).

    Values must be hashable.  Returns ``(monoid, values)`` where ``values[i]``
    is the concrete value of element ``i``; element 0 is the identity and the
    order is equality.
    """
    bad = [a for a in generators if not (isinstance(a, str) and len(a) == 1)]
    if bad:
        raise InputError(f"generator names must be single characters, got {bad[0]!r}")
    values = [identity]
    index = {identity: 0}
    letters = sorted(generators)
    queue = deque([identity])
    while queue:
        v = queue.popleft()
        for a in letters:
            w = multiply(v, generators[a])
            if w not in index:
                if len(values) >= cap:
                    raise ResourceCapError("monoid size cap", cap, f">{cap}")
                index[w] = len(values)
                values.append(w)
                queue.append(w)
    n = len(values)
    mul = np.empty((n, n), dtype=np.int64)
    # right multiplication by a generator is known from the BFS; compose via words
    right = {a: np.array([index[multiply(v, generators[a])] for v in values]) for a in letters}
    words = representatives_from_right(n, right)
    for j, w in enumerate(words):
        col = np.arange(n)
        for a in w:
            col = right[a][col]
        mul[:, j] = col
    letter_map = {a: index[multiply(identity, generators[a])] for a in letters}
    return OrderedMonoid(n, 0, mul, np.eye(n, dtype=bool), letter_map), values


def representatives_from_right(n, right, start=0):
    """Shortest length-lexicographic word reaching each element from ``start``."""
    words = [None] * n
    words[start] = ""
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for a in sorted(right):
            w = int(right[a][v])
            if words[w] is None:
                words[w] = words[v] + a
                queue.append(w)
    return words


def representatives(M: OrderedMonoid):
    """Shortest representative word of each element (None if not reachable)."""
    right = {a: M.mul[:, i] for a, i in M.letters.items()}
    return representatives_from_right(M.size, right, M.neutral)


def accessible_elements(M: OrderedMonoid):
    return [s for s, w in enumerate(representatives(M)) if w is not None]


def submonoid_generated(M: OrderedMonoid, gens):
    seen = {M.neutral}
    queue = deque([M.neutral])
    while queue:
        s = queue.popleft()
        for g in gens:
            t = int(M.mul[s, g])
            if t not in seen:
                seen.add(t)
                queue.append(t)
    return seen


def restrict(M: OrderedMonoid, elements):
    """The submonoid on ``elements`` (must be closed), relabelled densely in sorted order."""
    elements = sorted(elements)
    index = {s: i for i, s in enumerate(elements)}
    sub = M.mul[np.ix_(elements, elements)]
    mul = np.vectorize(index.__getitem__, otypes=[np.int64])(sub)
    leq = M.leq[np.ix_(elements, elements)]
    letters = {a: index[v] for a, v in M.letters.items() if v in index}
    return OrderedMonoid(len(elements), index[M.neutral], mul, leq, letters), elements


def quotient(M: OrderedMonoid, classes, class_leq):
    """Build the quotient by a congruence given as a partition.

    ``classes`` is a list of element lists; ``class_leq[i][j]`` the induced order.
    Returns ``(monoid, projection)``.
    """
    proj = np.empty(M.size, dtype=np.int64)
    for i, cls in enumerate(classes):
        proj[cls] = i
    reps = [c[0] for c in classes]
    mul = proj[M.mul[np.ix_(reps, reps)]]
    letters = {a: int(proj[v]) for a, v in M.letters.items()}
    Q = OrderedMonoid(len(classes), int(proj[M.neutral]), mul, class_leq, letters)
    return Q, proj


def are_isomorphic(M: OrderedMonoid, N: OrderedMonoid, use_letters=True, max_brute=8) -> bool:
    """Ordered-monoid isomorphism.

    With ``use_letters`` and letter-generated monoids the candidate map is
    forced by the letters; otherwise permutations fixing the identity are
    tried (only for ``size <= max_brute``).
    """
    if M.size != N.size:
        return False
    n = M.size
    if use_letters and M.letters and set(M.letters) == set(N.letters):
        wm, wn = representatives(M), representatives(N)
        if None not in wm and None not in wn:
            phi = np.array([N.image(w) for w in wm])
            return _is_iso(M, N, phi)
    if n > max_brute:
        raise ResourceCapError("isomorphism brute-force size", max_brute, n)
    others = [s for s in range(n) if s != M.neutral]
    targets = [t for t in range(n) if t != N.neutral]
    for perm in itertools.permutations(targets):
        phi = np.empty(n, dtype=np.int64)
        phi[M.neutral] = N.neutral
        phi[others] = perm
        if _is_iso(M, N, phi):
            return True
    return False


def _is_iso(M, N, phi):
    if len(set(phi.tolist())) != M.size:
        return False
    if not np.array_equal(phi[M.mul], N.mul[np.ix_(phi, phi)]):
        return False
    return bool(np.array_equal(M.leq, N.leq[np.ix_(phi, phi)]))
