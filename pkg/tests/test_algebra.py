import pytest
from math import gcd

from hypothesis import given, settings, strategies as st

from cycperm.algebra import (
    Field,
    Polynomial,
    is_prime,
    make_field,
    minimal_polynomial,
    multiplicative_order,
    poly_divmod,
    poly_gcd,
    prime_factors,
    root_system,
    x_pow_minus_one,
    z_parameter,
)


def test_is_prime_small():
    assert [m for m in range(2, 30) if is_prime(m)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert not is_prime(1) and not is_prime(0) and not is_prime(-7)


def test_prime_factors():
    assert prime_factors(360) == [2, 3, 5]
    assert prime_factors(1) == []
    assert prime_factors(49) == [7]


@pytest.mark.parametrize("a,n,expected", [
    (11, 5, 1),    # 11 = 1 mod 5
    (13, 5, 4),
    (2, 7, 3),
    (11, 7, 3),
    (2, 9, 6),
    (2, 49, 21),
    (2, 23, 11),
    (13, 29, 14),
    (11, 37, 6),
    (13, 17, 4),
])
def test_multiplicative_order_table(a, n, expected):
    assert multiplicative_order(a, n) == expected


def test_multiplicative_order_rejects_non_units():
    with pytest.raises(ValueError):
        multiplicative_order(6, 9)


@pytest.mark.parametrize("q,p,z", [
    (2, 7, 1),
    (2, 3, 1),
    (11, 5, 1),
    (2, 1093, 2),   # Wieferich prime: 1093^2 divides 2^364 - 1
])
def test_z_parameter(q, p, z):
    assert z_parameter(q, p) == z


def test_z_parameter_validates():
    with pytest.raises(ValueError):
        z_parameter(2, 9)
    with pytest.raises(ValueError):
        z_parameter(7, 7)


# --- fields -----------------------------------------------------------------

def test_prime_field_ops():
    F = make_field(13)
    assert F.order == 13 and F.is_prime_field
    assert F.add(7, 9) == 3
    assert F.mul(7, 9) == 63 % 13
    assert F.inv(5) == pow(5, 11, 13)
    assert F.pow(2, 12) == 1


def test_make_field_canonical_moduli():
    # lowest-encoding irreducibles, frozen by hand: x^3+x+1 over GF(2), x^2+1 over GF(3)
    assert make_field(2, 3).modulus == (1, 1, 0, 1)
    assert make_field(3, 2).modulus == (1, 0, 1)
    assert make_field(2, 6).modulus == (1, 1, 0, 0, 0, 0, 1)


def test_gf9_arithmetic():
    F = make_field(3, 2)       # x^2 = -1
    x = 3                      # digits (0,1)
    assert F.mul(x, x) == 2    # x^2 = 2 mod (x^2+1)
    assert F.element_order(x) == 4
    # 8 = 2 + 2x has order 8 iff it generates GF(9)*
    orders = sorted({F.element_order(a) for a in range(1, 9)})
    assert orders == [1, 2, 4, 8]


def test_field_rejects_bad_modulus():
    with pytest.raises(ValueError):
        Field(2, 3, (1, 0, 0, 1))   # x^3+1 is reducible
    with pytest.raises(ValueError):
        Field(4)                    # not a prime
    with pytest.raises(ValueError):
        make_field(6)


@pytest.mark.parametrize("p,s", [(2, 1), (2, 3), (3, 2), (5, 1), (13, 1)])
def test_field_axioms_exhaustive_small(p, s):
    F = make_field(p, s)
    els = list(F.elements())
    for a in els:
        assert F.add(a, 0) == a
        assert F.mul(a, 1) == a
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
    if F.order <= 9:
        for a in els:
            for b in els:
                assert F.mul(a, b) == F.mul(b, a)
                for c in els:
                    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


@given(st.integers(0, 63), st.integers(0, 63), st.integers(0, 63))
@settings(max_examples=150, deadline=None)
def test_gf64_associativity(a, b, c):
    F = make_field(2, 6)
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


def test_frobenius_is_additive_gf64():
    F = make_field(2, 6)
    for a in range(0, 64, 7):
        for b in range(0, 64, 5):
            assert F.pow(F.add(a, b), 2) == F.add(F.pow(a, 2), F.pow(b, 2))


# --- polynomials ------------------------------------------------------------

def test_poly_basic():
    F = make_field(13)
    f = Polynomial(F, (1, 0, 1))       # 1 + x^2
    g = Polynomial(F, (12, 1))         # x - 1
    assert (f * g).coeffs == (12, 1, 12, 1)
    assert f.evaluate(5) == 26 % 13
    assert Polynomial(F, (0, 0, 0)).is_zero()
    assert Polynomial(F, (0, 0, 0)).degree == -1


def test_poly_divmod_identity():
    F = make_field(13)
    a = Polynomial(F, (3, 1, 4, 1, 5))
    b = Polynomial(F, (2, 7, 1))
    q, r = poly_divmod(a, b)
    assert (q * b + r).coeffs == a.coeffs
    assert r.degree < b.degree


@given(st.lists(st.integers(0, 12), min_size=0, max_size=8),
       st.lists(st.integers(0, 12), min_size=1, max_size=5))
@settings(max_examples=120, deadline=None)
def test_poly_divmod_property(ac, bc):
    F = make_field(13)
    a, b = Polynomial(F, tuple(ac)), Polynomial(F, tuple(bc))
    if b.is_zero():
        return
    q, r = poly_divmod(a, b)
    assert (q * b + r).coeffs == a.coeffs
    assert r.is_zero() or r.degree < b.degree


def test_poly_gcd():
    F = make_field(2)
    f = Polynomial(F, (1, 1)) * Polynomial(F, (1, 1, 1))
    g = Polynomial(F, (1, 1)) * Polynomial(F, (1, 0, 1, 1))
    assert poly_gcd(f, g).coeffs == (1, 1)


# --- minimal polynomials and root systems -----------------------------------

def test_root_system_gf2_n7():
    rs = root_system(make_field(2), 7)
    assert rs.ext.order == 8
    assert rs.ext.element_order(rs.alpha) == 7
    assert rs.alpha == 2   # least generator: x itself


def test_minimal_polynomial_binary_n7():
    F = make_field(2)
    assert minimal_polynomial(F, 7, {1, 2, 4}).coeffs == (1, 1, 0, 1)
    assert minimal_polynomial(F, 7, {3, 5, 6}).coeffs == (1, 0, 1, 1)
    assert minimal_polynomial(F, 7, {0}).coeffs == (1, 1)


def test_minimal_polynomial_rejects_non_coset():
    with pytest.raises(ValueError):
        minimal_polynomial(make_field(2), 7, {1, 2})
    with pytest.raises(ValueError):
        minimal_polynomial(make_field(2), 8, {1})   # gcd(8,2) != 1


@pytest.mark.parametrize("q_spec,n", [
    ((2, 1), 7), ((2, 1), 9), ((2, 1), 15), ((2, 1), 23), ((2, 1), 49),
    ((3, 1), 11), ((11, 1), 5), ((11, 1), 19), ((13, 1), 17), ((3, 2), 8),
])
def test_minimal_polynomials_multiply_to_xn_minus_1(q_spec, n):
    F = make_field(*q_spec)
    q = F.order
    seen: set[int] = set()
    prod = Polynomial(F, (1,))
    for i in range(n):
        if i in seen:
            continue
        coset = {i}
        j = i * q % n
        while j != i:
            coset.add(j)
            j = j * q % n
        seen |= coset
        prod = prod * minimal_polynomial(F, n, coset)
    assert prod.coeffs == x_pow_minus_one(F, n).coeffs


def test_minimal_polynomial_matches_sympy_factorization():
    sympy = pytest.importorskip("sympy")
    # every minimal polynomial must appear among sympy's irreducible factors
    for q, n in [(2, 9), (2, 23), (3, 11), (11, 19)]:
        F = make_field(q)
        x = sympy.symbols("x")
        factors = sympy.factor_list(x**n - 1, modulus=q)[1]
        factor_tuples = set()
        for f, mult in factors:
            cs = [int(c) % q for c in reversed(sympy.Poly(f, x).all_coeffs())]
            factor_tuples.add(tuple(cs))
        seen: set[int] = set()
        for i in range(n):
            if i in seen:
                continue
            coset = {i}
            j = i * q % n
            while j != i:
                coset.add(j)
                j = j * q % n
            seen |= coset
            mp = minimal_polynomial(F, n, coset)
            assert mp.coeffs in factor_tuples


def test_root_system_deterministic_alpha():
    rs1 = root_system(make_field(2), 9)
    rs2 = root_system(make_field(2), 9)
    assert rs1.alpha == rs2.alpha
    assert rs1.ext.element_order(rs1.alpha) == 9
