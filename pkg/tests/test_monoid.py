import itertools

import numpy as np
import pytest

from fo2levels.corpus import monoid_corpus, transformation_submonoids
from fo2levels.errors import InputError, ResourceCapError
from fo2levels.monoid import (OrderedMonoid, are_isomorphic, conjugacy_classes, cyclic_group,
                              direct_product, generate_monoid, idempotent_power, is_conjugate,
                              lesssim, lesssim_matrix, linked_pairs, powerset_alphabet_monoid,
                              quotient, submonoid_generated, trivial_monoid, validate,
                              zero_one_monoid)


def full_transformation_monoid(k):
    # a k-cycle, a transposition and one collapsing map generate T_k
    cycle = tuple((i + 1) % k for i in range(k))
    swap = (1, 0) + tuple(range(2, k))
    collapse = (0, 0) + tuple(range(2, k))
    M, values = generate_monoid({"c": cycle, "s": swap, "z": collapse},
                                lambda f, g: tuple(g[i] for i in f), tuple(range(k)))
    return M, values


def test_constructors_validate():
    for M in [trivial_monoid(), zero_one_monoid(), zero_one_monoid(False), cyclic_group(3),
              powerset_alphabet_monoid("abc"), direct_product(cyclic_group(2), zero_one_monoid())]:
        assert validate(M).ok, M


def test_full_transformation_monoid_sizes():
    # |T_k| = k^k
    assert full_transformation_monoid(2)[0].size == 4
    assert full_transformation_monoid(3)[0].size == 27


def test_validate_reports_associativity():
    # x*y = x+1 mod 3 for x != 0 is not associative
    mul = [[0, 1, 2], [1, 2, 0], [2, 0, 0]]
    rep = validate(OrderedMonoid(3, 0, mul, np.eye(3, dtype=bool)))
    kinds = {v["kind"] for v in rep.violations}
    assert "associativity" in kinds
    a, b, c = next(v["witness"] for v in rep.violations if v["kind"] == "associativity")
    m = np.array(mul)
    assert m[m[a, b], c] != m[a, m[b, c]]


def test_validate_reports_unstable_order():
    # 1 <= g in C2 is not stable: multiplying by g gives g <= 1
    M = cyclic_group(2)
    leq = np.eye(2, dtype=bool)
    leq[0, 1] = True
    rep = validate(M.with_order(leq))
    assert not rep.ok
    assert any("stab" in v["kind"] for v in rep.violations)


def test_validate_antisymmetry():
    M = zero_one_monoid()
    leq = np.ones((2, 2), dtype=bool)
    rep = validate(M.with_order(leq))
    assert any(v["kind"] == "antisymmetry" for v in rep.violations)


def test_idempotent_power():
    C = cyclic_group(3)
    for s in range(3):
        assert idempotent_power(C, s) == C.neutral
    M = zero_one_monoid()
    assert idempotent_power(M, 1) == 1


def test_idempotent_powers_on_corpus():
    for M in transformation_submonoids(max_size=5):
        for s in range(M.size):
            e = idempotent_power(M, s)
            assert M.mul[e, e] == e
            # e is a power of s
            p, powers = s, {s}
            for _ in range(M.size):
                p = int(M.mul[p, s])
                powers.add(p)
            assert e in powers


def brute_ideals(M):
    right = [set(int(M.mul[s, x]) for x in range(M.size)) for s in range(M.size)]
    left = [set(int(M.mul[x, s]) for x in range(M.size)) for s in range(M.size)]
    two = [set(int(M.mul[M.mul[x, s], y]) for x in range(M.size) for y in range(M.size))
           for s in range(M.size)]
    return right, left, two


def test_green_against_ideal_sets():
    for M in transformation_submonoids(max_size=6)[:40]:
        right, left, two = brute_ideals(M)
        g = M.green
        for s in range(M.size):
            for t in range(M.size):
                assert g.rleq[s, t] == (right[s] <= right[t])
                assert g.lleq[s, t] == (left[s] <= left[t])
                assert g.jleq[s, t] == (two[s] <= two[t])


def test_green_classes_of_t2():
    # T_2: identity and swap form the group of units; the two constants are
    # L-related (same image under right action composition) and form one J-class
    M, values = full_transformation_monoid(2)
    J = M.green.classes("J")
    assert sorted(len(c) for c in J) == [2, 2]


def test_linked_pairs_brute_force():
    M = zero_one_monoid()
    expected = {(s, e) for s in range(2) for e in range(2)
                if M.mul[e, e] == e and M.mul[s, e] == s}
    assert set(linked_pairs(M)) == expected == {(0, 0), (1, 0), (1, 1)}


def test_conjugacy_union_find_matches_direct_search():
    for M in transformation_submonoids(max_size=6)[:30]:
        cls = conjugacy_classes(M)
        pairs = linked_pairs(M)
        for p in pairs:
            for q in pairs:
                assert (cls[p] == cls[q]) == is_conjugate(M, p, q), (M, p, q)


def test_lesssim_matrix_matches_pairwise():
    for M in monoid_corpus(max_size=4)[:60]:
        pairs, mat = lesssim_matrix(M)
        for i, p in enumerate(pairs):
            for j, q in enumerate(pairs):
                assert mat[i, j] == lesssim(M, p, q)


def test_lesssim_on_zero_one():
    # the pair (0, 1) lies below (1, 1) through the order 0 <= 1, never the reverse
    M = zero_one_monoid()
    one, zero = 0, 1
    assert lesssim(M, (zero, one), (one, one))
    assert not lesssim(M, (one, one), (zero, one))


def test_powerset_monoid():
    M = powerset_alphabet_monoid("ab")
    assert M.size == 4
    assert M.image("ab") == M.image("ba") == M.image("aab") == 3
    assert M.leq[0, 3] and not M.leq[3, 0]


def test_direct_product_index():
    A, B = cyclic_group(2), cyclic_group(3)
    P = direct_product(A, B)
    assert P.size == 6
    for a1, b1, a2, b2 in itertools.product(range(2), range(3), range(2), range(3)):
        got = P.mul[a1 * 3 + b1, a2 * 3 + b2]
        assert got == A.mul[a1, a2] * 3 + B.mul[b1, b2]


def test_generate_monoid_cap():
    with pytest.raises(ResourceCapError) as err:
        generate_monoid(
            {"a": (1, 2, 0), "b": (1, 0, 2), "c": (0, 0, 2)},
            lambda f, g: tuple(g[i] for i in f), (0, 1, 2), cap=10)
    assert err.value.cap == 10


def test_generator_names_are_letters():
    with pytest.raises(InputError):
        generate_monoid({"ab": 1}, lambda x, y: x * y % 3, 1)


def test_submonoid_generated():
    M = cyclic_group(4)
    g = M.letters["g"]
    assert submonoid_generated(M, [int(M.mul[g, g])]) == {M.neutral, int(M.mul[g, g])}


def test_quotient_of_product_projects():
    P = direct_product(zero_one_monoid(), cyclic_group(2))
    classes = [[0, 1], [2, 3]]
    leq = np.array([[True, False], [True, True]])
    Q, proj = quotient(P, classes, leq)
    assert Q.size == 2 and validate(Q).ok
    assert proj.tolist() == [0, 0, 1, 1]


def test_isomorphism():
    M = zero_one_monoid()
    N = OrderedMonoid(2, 1, [[0, 0], [0, 1]], [[True, True], [False, True]])
    assert are_isomorphic(M, N, use_letters=False)
    assert not are_isomorphic(M, cyclic_group(2), use_letters=False)
    assert not are_isomorphic(M, zero_one_monoid(False), use_letters=False)


def test_dict_round_trip():
    M = direct_product(zero_one_monoid(), cyclic_group(2))
    N = OrderedMonoid.from_dict(M.to_dict())
    assert np.array_equal(M.mul, N.mul) and np.array_equal(M.leq, N.leq)
    assert M.letters == N.letters


@pytest.mark.parametrize("data, field", [
    ({"mul": [[0]]}, "size"),
    ({"size": 2, "mul": [[0, 1]]}, "mul"),
    ({"size": 2, "mul": [[0, 1], [1, 5]]}, "mul[1][1]"),
    ({"size": 1, "mul": [[0]], "order": [[0, 3]]}, "order[0]"),
    ({"size": 1, "mul": [[0]], "letters": {"a": 2}}, "letters"),
])
def test_from_dict_diagnostics(data, field):
    with pytest.raises(InputError, match=field.replace("[", r"\[").replace("]", r"\]")):
        OrderedMonoid.from_dict(data)


def test_image_unknown_letter():
    with pytest.raises(InputError):
        cyclic_group(2).image("x")
