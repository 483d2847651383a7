import random
from math import factorial

import pytest

from cycperm.algebra import make_field
from cycperm.autgroups import (
    AutoReport,
    BacktrackBudgetExceeded,
    GroupClass,
    analyze,
    backtrack_full_group,
    check_m_p_plus_1,
    classify,
    gk_family,
    known_cyclic_subgroup,
    multiplier_scan,
    pgammal_order,
    projective_parameters,
    sylow_exponent_bounds,
)
from cycperm.codes import cyclic_code, enumerate_cyclic_codes, is_elementary, permute_code
from cycperm.perm import PermGroup, Permutation, block_system_valid, group_closure, orbits

GF2 = make_field(2)
GF3 = make_field(3)
GF11 = make_field(11)

HAMMING7 = cyclic_code(7, GF2, {1, 2, 4})
GOLAY3 = cyclic_code(11, GF3, {1, 3, 4, 5, 9})


def test_multiplier_scan_hamming():
    mset, m = multiplier_scan(HAMMING7)
    assert mset == frozenset({1, 2, 4}) and m == 3


def test_multiplier_scan_table_codes():
    mset, m = multiplier_scan(cyclic_code(5, GF11, {1, 4}))
    assert m == 2 and mset == frozenset({1, 4})
    _, m = multiplier_scan(cyclic_code(5, GF11, {2, 3}))
    assert m == 2
    _, m = multiplier_scan(cyclic_code(5, GF11, {1, 2}))
    assert m == 1
    _, m = multiplier_scan(cyclic_code(7, make_field(13), {1, 6, 2, 5}))
    assert m == 2


def test_multiplier_scan_full_space():
    mset, m = multiplier_scan(cyclic_code(7, GF2, set()))
    assert m == 6 and mset == frozenset({1, 2, 3, 4, 5, 6})


def test_multiplier_duality():
    for c in enumerate_cyclic_codes(9, GF2) + enumerate_cyclic_codes(15, GF2):
        _, m = multiplier_scan(c)
        _, md = multiplier_scan(c.dual())
        assert m == md


def test_check_m_p_plus_1():
    for c in enumerate_cyclic_codes(49, GF2):
        assert check_m_p_plus_1(c)
    for c in enumerate_cyclic_codes(9, GF2):
        assert check_m_p_plus_1(c)
    assert check_m_p_plus_1(cyclic_code(5, GF11, {1, 2}))   # r = 1: identity
    with pytest.raises(ValueError):
        check_m_p_plus_1(cyclic_code(15, GF2, {1, 2, 4, 8}))


def test_gk_family_orders():
    code = cyclic_code(9, GF2, {1, 2, 4, 8, 7, 5})
    g2, h2 = gk_family(code, 2)
    assert g2.order() == 54        # t_2 * 9 = 6 * 9
    g1, h1 = gk_family(code, 1)
    assert g1.order() == 6         # t_1 * 3 = 2 * 3
    assert len(h2) == 6 and len(h1) == 2
    # every G_k element fixes the code (verified internally); spot-check one
    mu = Permutation.generalized_multiplier(9, 2, 2, 5)
    assert mu in g2.elements()
    assert permute_code(code.linear, mu) == code.linear


def test_gk_family_z_violated():
    # 3^5 - 1 = 242 = 2 * 11^2, so z = 2 for q = 3, p = 11
    code = cyclic_code(121, GF3, {1, 3, 9, 27, 81})
    with pytest.raises(ValueError, match="z=1"):
        gk_family(code, 1)


def test_sylow_exponent_bounds():
    assert sylow_exponent_bounds(9, 2, 3)
    assert sylow_exponent_bounds(9, 2, 4)
    assert not sylow_exponent_bounds(9, 2, 2)    # z = 1 forces 2r-1 = 3
    assert not sylow_exponent_bounds(9, 2, 5)    # above (p^r-1)/(p-1) = 4
    assert sylow_exponent_bounds(121, 3, 2)      # z = 2: plain r <= s applies
    assert not sylow_exponent_bounds(121, 3, 1)
    assert not sylow_exponent_bounds(9, 2, 1)


def test_backtrack_repetition_5():
    rep = cyclic_code(5, GF2, set(range(1, 5)))
    res = backtrack_full_group(rep.linear)
    assert res.order == 120
    assert len(group_closure(res.generators)) == 120


def test_backtrack_hamming_7():
    res = backtrack_full_group(HAMMING7.linear)
    assert res.order == 168
    for g in res.generators:
        assert permute_code(HAMMING7.linear, g) == HAMMING7.linear


def test_backtrack_length_9_codes():
    # every non-elementary binary cyclic code of length 9 has group order 1296
    for c in enumerate_cyclic_codes(9, GF2):
        if is_elementary(c.linear):
            continue
        res = backtrack_full_group(c.linear)
        assert res.order == 1296


def test_backtrack_relabel_invariance():
    rng = random.Random(3)
    imgs = list(range(7))
    rng.shuffle(imgs)
    sigma = Permutation(tuple(imgs))
    moved = permute_code(HAMMING7.linear, sigma)
    assert backtrack_full_group(moved).order == 168


def test_backtrack_budget():
    with pytest.raises(BacktrackBudgetExceeded) as ei:
        backtrack_full_group(HAMMING7.linear, node_budget=20)
    assert ei.value.order_lower_bound >= 1


def test_projective_parameters():
    assert projective_parameters(15, 2) == [(4, 2)]
    assert projective_parameters(7, 2) == [(3, 2)]
    assert projective_parameters(9, 2) == []
    assert projective_parameters(5, 11) == []
    assert projective_parameters(13, 3) == [(3, 3)]
    assert pgammal_order(4, 2) == 20160
    assert pgammal_order(3, 2) == 168


def test_classify_elementary():
    rep = cyclic_code(9, GF2, set(range(1, 9)))
    rpt = analyze(rep)
    assert rpt.classification.name == "ELEMENTARY_SN"
    assert rpt.full_group_order == factorial(9)


def test_classify_affine_prime_length():
    rpt = analyze(cyclic_code(5, GF11, {1, 4}))
    assert rpt.classification.name == "AFFINE_SUBGROUP(5, 2)"
    assert rpt.m == 2


def test_classify_golay_parameters_without_search():
    rpt = analyze(GOLAY3, run_backtrack=False)
    assert rpt.classification.label == "PSL_2_11"


def test_classify_golay_by_order():
    rpt = analyze(GOLAY3, run_backtrack=True)
    assert rpt.full_group_order == 660
    assert rpt.classification.label == "PSL_2_11"


def test_classify_length_9_imprimitive():
    code = cyclic_code(9, GF2, {1, 2, 4, 8, 7, 5})
    rpt = analyze(code)
    assert rpt.full_group_order == 1296
    assert rpt.classification.label == "IMPRIMITIVE"
    # the mod-3 residue classes are blocks of the full group
    G = PermGroup(9, rpt.discovered_generators)
    t3_orbits = orbits(9, [Permutation.shift(9) ** 3])
    assert block_system_valid(G, t3_orbits)


def test_classify_hamming_7():
    rpt = analyze(HAMMING7)
    assert rpt.full_group_order == 168
    assert rpt.classification.name == "PGAMMAL(3, 2)"


def test_known_subgroup_contains_shift_and_multipliers():
    gens, mset = known_cyclic_subgroup(HAMMING7)
    G = group_closure(gens)
    assert Permutation.shift(7) in G
    assert Permutation.multiplier(7, 2) in G
    assert len(G) == 21   # <T> semidirect the 3 multipliers


def test_analyze_report_json():
    rpt = analyze(cyclic_code(5, GF11, {1, 4}))
    js = rpt.to_json()
    assert js["parameters"] == [5, 3, 3]
    assert js["m"] == 2
    assert js["classification"]["label"] == "AFFINE_SUBGROUP(5, 2)"
    assert all(sorted(g) == list(range(5)) for g in js["discovered_generators"])


def test_analyze_rejects_non_cyclic():
    from cycperm.codes import LinearCode
    code = LinearCode.from_rows(GF2, 4, [[1, 1, 0, 0]])
    with pytest.raises(ValueError, match="cyclic"):
        analyze(code)


def test_report_invariants():
    rpt = analyze(HAMMING7)
    assert rpt.full_group_order % rpt.known_subgroup_order == 0
    assert (5 * 11 * 7 - 1) % rpt.m if False else rpt.m != 0
    assert 6 % rpt.m == 0      # m divides phi(7)
