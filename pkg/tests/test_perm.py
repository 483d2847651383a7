import itertools
import math
import random

import numpy as np
import pytest

from cycperm.perm import (
    BRUTE_DEGREE_BOUND,
    ClosureBoundExceeded,
    PermGroup,
    Permutation,
    block_system_valid,
    conjugation_scan,
    group_closure,
    hset_brute,
    is_primitive,
    is_transitive,
    minimal_blocks,
    normalizer_in_symmetric,
    orbits,
    perm_chunks,
    sylow_ascend,
)


def test_permutation_basics():
    s = Permutation((1, 2, 0))
    t = Permutation((0, 2, 1))
    assert (s * t).images == tuple(s.images[t.images[i]] for i in range(3))
    assert s.inverse() * s == Permutation.identity(3)
    assert s.order() == 3
    assert s.cycles() == ((0, 1, 2),)
    assert t.parity() == 1
    assert Permutation.identity(4).parity() == 0


def test_shift_and_affine():
    T = Permutation.shift(7)
    assert T.images == (1, 2, 3, 4, 5, 6, 0)
    assert T.order() == 7
    a = Permutation.affine(7, 2, 0)
    assert a.images == (0, 2, 4, 6, 1, 3, 5)
    assert a.conjugate(a) == a
    # tau_{a,b} T tau_{a,b}^{-1} = T^a
    for aa in (2, 3):
        tau = Permutation.affine(7, aa, 3)
        assert tau * T * tau.inverse() == T ** aa
    with pytest.raises(ValueError):
        Permutation.affine(6, 2, 0)


def test_power_shift():
    tl = Permutation.power_shift(15, 3)
    assert tl == Permutation.shift(15) ** 3
    assert tl.order() == 5
    # T^3 on 15 points splits into sigma_0 sigma_1 sigma_2, one 5-cycle per residue
    assert sorted(sorted(c) for c in tl.cycles()) == [
        [0, 3, 6, 9, 12], [1, 4, 7, 10, 13], [2, 5, 8, 11, 14]]
    with pytest.raises(ValueError):
        Permutation.power_shift(15, 0)


def test_generalized_multiplier():
    # degree 9 = 3^2, k=1: acts inside each block of 3 consecutive points
    g = Permutation.generalized_multiplier(9, 1, 2, 1)
    assert len(g.images) == 9
    for x in range(9):
        lo = x % 3
        assert g.images[x] == ((2 * lo + 1) % 3) + (x - lo)
    assert g * g.inverse() == Permutation.identity(9)
    # mu_{1,1}^{(p^r)} is the shift, mu_{a,0}^{(p^r)} the plain multiplier
    assert Permutation.generalized_multiplier(9, 2, 1, 1) == Permutation.shift(9)
    assert Permutation.generalized_multiplier(9, 2, 2, 0) == Permutation.multiplier(9, 2)
    # frozen example: mu_{2,0}^{(3)} at n=9
    assert Permutation.generalized_multiplier(9, 1, 2, 0).images == (0, 2, 1, 3, 5, 4, 6, 8, 7)
    with pytest.raises(ValueError):
        Permutation.generalized_multiplier(12, 1, 2, 0)
    with pytest.raises(ValueError):
        Permutation.generalized_multiplier(9, 1, 3, 0)


def test_conjugate_direction():
    # conjugate(by) = by^-1 * self * by, so fixed points move by by^-1
    s = Permutation((1, 0, 2, 3))
    by = Permutation((3, 0, 1, 2))
    c = s.conjugate(by)
    assert c == by.inverse() * s * by


def test_group_closure_and_bound():
    T = Permutation.shift(5)
    m = Permutation.multiplier(5, 2)
    g = group_closure([T, m])
    assert len(g) == 20
    with pytest.raises(ClosureBoundExceeded):
        group_closure([Permutation.shift(9), Permutation((1, 0) + tuple(range(2, 9)))],
                      bound=100)


def test_permgroup_api():
    G = PermGroup.from_generators(5, [Permutation.shift(5)])
    assert G.order() == 5
    assert Permutation.shift(5) ** 3 in G
    assert Permutation((1, 0, 2, 3, 4)) not in G
    assert PermGroup.trivial(4).order() == 1


def test_orbits_and_transitivity():
    T2 = Permutation.shift(10) ** 2
    assert orbits(10, [T2]) == [(0, 2, 4, 6, 8), (1, 3, 5, 7, 9)]
    assert not is_transitive(10, [T2])
    assert is_transitive(10, [Permutation.shift(10)])


def test_minimal_blocks_cyclic_9():
    G = PermGroup.from_generators(9, [Permutation.shift(9)])
    systems = minimal_blocks(G)
    assert len(systems) == 1
    sys0 = systems[0]
    assert sorted(sorted(b) for b in sys0) == [[0, 3, 6], [1, 4, 7], [2, 5, 8]]
    assert sys0.block_size == 3 and sys0.block_count == 3
    assert block_system_valid(G, sys0)
    assert not is_primitive(G)


def test_minimal_blocks_cyclic_6():
    G = PermGroup.from_generators(6, [Permutation.shift(6)])
    systems = minimal_blocks(G)
    covers = sorted(len(s[0]) for s in systems)
    assert covers == [2, 3]
    for s in systems:
        assert block_system_valid(G, s)


def test_primitive_prime_cycle():
    G = PermGroup.from_generators(7, [Permutation.shift(7)])
    assert is_primitive(G)
    with pytest.raises(ValueError):
        minimal_blocks(PermGroup.from_generators(4, [Permutation((1, 0, 2, 3))]))


def test_perm_chunks_lex_order():
    want = list(itertools.permutations(range(4)))
    got = []
    for chunk in perm_chunks(4, chunk=7):
        got.extend(tuple(int(v) for v in row) for row in chunk)
    assert got == want
    total = sum(len(c) for c in perm_chunks(6))
    assert total == math.factorial(6)


def test_normalizer_of_shift_brute():
    # N_{S_n}(<T>) = AGL(1,n) for prime n, order n*(n-1)
    for n, expect in [(5, 20), (7, 42)]:
        G = PermGroup.from_generators(n, [Permutation.shift(n)])
        N = normalizer_in_symmetric(G, n)
        assert len(N) == expect
    G6 = PermGroup.from_generators(6, [Permutation.shift(6)])
    assert len(normalizer_in_symmetric(G6, 6)) == 12


def test_normalizer_shift_9_is_ag():
    G = PermGroup.from_generators(9, [Permutation.shift(9)])
    N = normalizer_in_symmetric(G, 9)
    assert len(N) == 54
    # every element normalizes: sigma^-1 T sigma in <T>
    T = Permutation.shift(9)
    TS = {T ** i for i in range(9)}
    for sigma in N:
        assert sigma.inverse() * T * sigma in TS


def test_conjugation_scan_rejects_large_degree():
    with pytest.raises(ValueError):
        conjugation_scan(11, [(Permutation.shift(11), [Permutation.shift(11)])])
    G11 = PermGroup.from_generators(11, [Permutation.shift(11)])
    with pytest.raises(ValueError, match="exhaustive normalizer"):
        normalizer_in_symmetric(G11, 11)


def test_normalizer_within_ambient():
    # normalizer of the Sylow 3-subgroup of AG(9) inside AG(9) is all of AG(9)
    T = Permutation.shift(9)
    amb = group_closure([T, Permutation.affine(9, 2, 0)])
    P = sylow_ascend(frozenset(amb), 3, [T])
    N = normalizer_in_symmetric(P, 9, within=amb)
    assert len(N) == 54
    # within a subgroup that does not normalize: <T> inside S_9's affine part
    N2 = normalizer_in_symmetric(PermGroup.from_generators(9, [T]), 9, within=amb)
    assert len(N2) == 54


def test_hset_brute_matches_definition():
    # H(P) for P = <T> at n=5: sigma with sigma^-1 T sigma in P
    n = 5
    T = Permutation.shift(n)
    P = PermGroup.from_generators(n, [T])
    H = hset_brute(T, P)
    assert len(H) == 20
    Pset = P.elements()
    for sigma in H:
        assert sigma.inverse() * T * sigma in Pset
    # brute-force cross check
    direct = [Permutation(p) for p in itertools.permutations(range(n))
              if Permutation(p).inverse() * T * Permutation(p) in Pset]
    assert set(direct) == set(H)


def test_sylow_ascend_in_affine_9():
    # ambient AG(9) has order 54 = 2 * 27; Sylow 3-subgroup has order 27
    T = Permutation.shift(9)
    amb = group_closure([T, Permutation.affine(9, 2, 0)])
    assert len(amb) == 54
    P = sylow_ascend(frozenset(amb), 3, [T])
    assert len(group_closure(P)) == 27


def test_sylow_ascend_full_symmetric_4():
    every = [Permutation(p) for p in itertools.permutations(range(4))]
    amb = frozenset(every)
    P = group_closure(sylow_ascend(amb, 2, [Permutation((1, 0, 2, 3))]))
    assert len(P) == 8
    P3 = group_closure(sylow_ascend(amb, 3, [Permutation((1, 2, 0, 3))]))
    assert len(P3) == 3


def test_sylow_ascend_validates_seed():
    amb = frozenset(group_closure([Permutation.shift(5)]))
    with pytest.raises(ValueError):
        sylow_ascend(amb, 5, [Permutation((1, 0, 2, 3, 4))])
