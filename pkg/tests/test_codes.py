import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from cycperm.algebra import Polynomial, make_field, x_pow_minus_one, poly_mod
from cycperm.codes import (
    CyclicCode,
    LinearCode,
    code_from_spec,
    code_to_spec,
    count_cyclic_codes,
    cyclic_code,
    cyclic_defining_set,
    cyclotomic_cosets,
    enumerate_cyclic_codes,
    idempotent,
    is_elementary,
    is_mds,
    is_shift_invariant,
    min_distance,
    permute_code,
    rref,
    weight_profile,
)
from cycperm.perm import Permutation

GF2 = make_field(2)
GF3 = make_field(3)
GF11 = make_field(11)
GF13 = make_field(13)

HAMMING7 = cyclic_code(7, GF2, {1, 2, 4})
GOLAY3 = cyclic_code(11, GF3, {1, 3, 4, 5, 9})


def test_cyclotomic_cosets_examples():
    assert cyclotomic_cosets(7, 2) == [(0,), (1, 2, 4), (3, 5, 6)]
    assert cyclotomic_cosets(5, 11) == [(0,), (1,), (2,), (3,), (4,)]
    assert sorted(len(c) for c in cyclotomic_cosets(49, 2)) == [1, 3, 3, 21, 21]
    with pytest.raises(ValueError):
        cyclotomic_cosets(8, 2)


def test_rref_canonical_and_unique():
    F = GF13
    rows = [[1, 2, 3, 4], [2, 4, 6, 8], [0, 1, 1, 0]]
    R = rref(rows, F)
    assert len(R) == 2
    # re-reducing shuffled random combinations gives the same canonical form
    rng = random.Random(5)
    base = [list(r) for r in R]
    for _ in range(100):
        mixed = []
        for _ in range(4):
            w = [0] * 4
            for row in base:
                c = rng.randrange(13)
                w = [(a + c * b) % 13 for a, b in zip(w, row)]
            mixed.append(w)
        assert rref(mixed, F) in (R, rref(mixed, F))
        if len(rref(mixed, F)) == 2:
            assert rref(mixed, F) == R


def test_cyclic_code_construction():
    assert HAMMING7.k == 4
    assert HAMMING7.generator_poly.coeffs == (1, 1, 0, 1)
    assert is_shift_invariant(HAMMING7.linear)
    full = cyclic_code(7, GF2, set())
    assert full.k == 7
    rep = cyclic_code(7, GF2, set(range(1, 7)))
    assert rep.k == 1
    assert rep.linear.matrix == ((1,) * 7,)


def test_cyclic_code_rejects_non_closed_set():
    with pytest.raises(ValueError, match="Frobenius"):
        cyclic_code(7, GF2, {1, 2})


def test_enumerate_and_count():
    codes = enumerate_cyclic_codes(5, GF11)
    assert len(codes) == 32 == count_cyclic_codes(5, GF11)
    assert len(enumerate_cyclic_codes(5, GF13)) == 4
    assert len(enumerate_cyclic_codes(7, GF2)) == 8
    assert len({c.defining_set for c in codes}) == 32


def test_enumerated_codes_all_elementary_at_13_5():
    codes = enumerate_cyclic_codes(5, GF13)
    assert all(is_elementary(c.linear) for c in codes)


def test_shift_invariance_of_all_enumerated():
    T9 = Permutation.shift(9)
    for c in enumerate_cyclic_codes(9, GF2):
        assert permute_code(c.linear, T9) == c.linear


def test_permute_code_convention():
    # column i of the image is column sigma^-1(i) of the source
    code = LinearCode.from_rows(GF2, 4, [[1, 1, 0, 0]])
    sigma = Permutation((1, 2, 3, 0))   # i -> i+1
    assert permute_code(code, sigma).matrix == ((0, 1, 1, 0),)


def test_permute_code_action_axiom():
    rng = random.Random(11)
    code = GOLAY3.linear
    for _ in range(20):
        s = list(range(11))
        rng.shuffle(s)
        t = list(range(11))
        rng.shuffle(t)
        sigma, tau = Permutation(tuple(s)), Permutation(tuple(t))
        lhs = permute_code(permute_code(code, sigma), tau)
        rhs = permute_code(code, tau * sigma)
        assert lhs == rhs


def test_dual_formula_matches_kernel():
    for c in enumerate_cyclic_codes(9, GF2) + enumerate_cyclic_codes(7, GF2):
        d = c.dual()
        assert d.linear == c.linear.dual()
        assert c.k + d.k == c.n
        n = c.n
        assert d.defining_set == frozenset(set(range(n)) - {(-i) % n for i in c.defining_set})


def test_dual_involution():
    for c in enumerate_cyclic_codes(15, GF2):
        assert c.dual().dual() == c
    assert GOLAY3.linear.dual().dual() == GOLAY3.linear


def test_dual_hamming_is_simplex():
    d = HAMMING7.dual()
    assert d.k == 3
    assert min_distance(d.linear).value == 4


def test_idempotent_examples():
    e = idempotent(HAMMING7)
    assert e.coeffs == (0, 1, 1, 0, 1)           # x + x^2 + x^4
    assert idempotent(cyclic_code(7, GF2, set())).coeffs == (1,)
    rep = cyclic_code(5, GF11, set(range(1, 5)))
    e = idempotent(rep)
    assert e.coeffs == (9, 9, 9, 9, 9)
    assert idempotent(cyclic_code(7, GF2, set(range(7)))).is_zero()


def test_idempotent_law_all_small_codes():
    for q, F, n in [(2, GF2, 9), (2, GF2, 7), (3, GF3, 11), (2, GF2, 15)]:
        for c in enumerate_cyclic_codes(n, F):
            if c.k == 0:
                continue
            e = idempotent(c)
            xn1 = x_pow_minus_one(F, n)
            assert poly_mod(e * e, xn1).coeffs == e.coeffs
            # shifts of e span the code
            vec = list(e.coeffs) + [0] * (n - len(e.coeffs))
            rows = [vec[-s:] + vec[:-s] for s in range(n)]
            assert LinearCode.from_rows(F, n, rows) == c.linear


def test_is_elementary():
    assert is_elementary(cyclic_code(9, GF2, set()).linear)
    assert is_elementary(cyclic_code(9, GF2, {0}).linear)
    assert is_elementary(cyclic_code(9, GF2, set(range(1, 9))).linear)
    assert is_elementary(cyclic_code(9, GF2, set(range(9))).linear)
    assert not is_elementary(HAMMING7.linear)
    assert not is_elementary(cyclic_code(9, GF2, {3, 6}).linear)


def test_weight_profile_hamming():
    wp = weight_profile(HAMMING7.linear)
    assert wp.exact
    assert wp.counts == (1, 0, 0, 7, 7, 0, 0, 1)
    assert sum(wp.counts) == 2 ** 4
    assert wp.min_weight == 3


def test_weight_profile_budget():
    with pytest.raises(ValueError):
        weight_profile(cyclic_code(23, GF2, set()).linear, budget=1000)


# --- minimum distance: frozen oracle values ----------------------------------

def test_min_distance_trivial_codes():
    assert min_distance(cyclic_code(7, GF2, set()).linear).value == 1
    assert min_distance(cyclic_code(5, GF11, set(range(1, 5))).linear).value == 5
    z = min_distance(cyclic_code(7, GF2, set(range(7))).linear)
    assert z.exact and z.lower == 0


def test_min_distance_small_enumeration():
    assert min_distance(HAMMING7.linear).value == 3
    assert min_distance(GOLAY3.linear).value == 5


def test_min_distance_rank_scan_matches_enumeration():
    # same instances through both routes
    for c in enumerate_cyclic_codes(15, GF2):
        if c.k in (0, 15):
            continue
        exact = min_distance(c.linear, budget=1 << 16)
        if not exact.exact:
            exact = min_distance(c.linear)
        forced = min_distance(c.linear, budget=10 ** 7)
        assert forced.exact and forced.value == exact.value


def test_min_distance_binary_golay():
    # [23,12,7] via rank scan (2^12 = 4096 would also enumerate; force the scan)
    golay = cyclic_code(23, GF2, {1, 2, 3, 4, 6, 8, 9, 12, 13, 16, 18})
    assert golay.k == 12
    d = min_distance(golay.linear)
    assert d.exact and d.value == 7


def test_min_distance_interval_when_budget_tiny():
    code = cyclic_code(23, GF2, {1, 2, 3, 4, 6, 8, 9, 12, 13, 16, 18})
    r = min_distance(code.linear, budget=30)
    assert not r.exact
    assert r.lower <= 7 <= r.upper


def test_is_mds():
    c533 = cyclic_code(5, GF11, {1, 2})
    r = is_mds(c533.linear)
    assert r.d == 3 and r.is_mds
    assert not is_mds(HAMMING7.linear).is_mds
    golay = cyclic_code(23, GF2, {1, 2, 3, 4, 6, 8, 9, 12, 13, 16, 18})
    assert not is_mds(golay.linear).is_mds


def test_is_mds_requires_exact():
    code = cyclic_code(23, GF2, {1, 2, 3, 4, 6, 8, 9, 12, 13, 16, 18})
    r = min_distance(code.linear, budget=30)
    with pytest.raises(ValueError, match="not certified"):
        is_mds(code.linear, r)


def test_cyclic_defining_set_roundtrip():
    for c in enumerate_cyclic_codes(9, GF2):
        assert cyclic_defining_set(c.linear) == tuple(sorted(c.defining_set))
    # a permuted cyclic code by an affine map is still cyclic
    sigma = Permutation.affine(9, 2, 3)
    moved = permute_code(cyclic_code(9, GF2, {3, 6}).linear, sigma)
    ds = cyclic_defining_set(moved)
    assert ds is not None and len(ds) == 2


def test_cyclic_defining_set_none_for_noncyclic():
    code = LinearCode.from_rows(GF2, 4, [[1, 1, 0, 0]])
    assert cyclic_defining_set(code) is None


def test_code_spec_roundtrip(tmp_path):
    spec = code_to_spec(GOLAY3)
    assert spec["defining_set"] == [1, 3, 4, 5, 9]
    c2 = code_from_spec(json.loads(json.dumps(spec)))
    assert c2 == GOLAY3
    lin = LinearCode.from_rows(GF2, 4, [[1, 1, 0, 0], [0, 0, 1, 1]])
    l2 = code_from_spec(code_to_spec(lin))
    assert l2 == lin
    with pytest.raises(ValueError):
        code_from_spec({"q": {"characteristic": 2, "degree": 1}, "n": 4})


@given(st.integers(2, 30))
@settings(max_examples=25, deadline=None)
def test_repetition_distance_property(n):
    F = GF2 if n % 2 else GF3
    if n % F.characteristic == 0:
        return
    rep = cyclic_code(n, F, set(range(1, n)))
    assert min_distance(rep.linear).value == n
