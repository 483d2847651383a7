"""Finite fields GF(p^s), polynomials over them, and the number-theoretic helpers
used throughout: cyclotomic splitting data, multiplicative orders, the z parameter."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt
from typing import Callable, Iterable, Sequence


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m < 4:
        return True
    if m % 2 == 0:
        return False
    for d in range(3, isqrt(m) + 1, 2):
        if m % d == 0:
            return False
    return True


def prime_factors(m: int) -> list[int]:
    """Distinct prime divisors of m, ascending."""
    if m < 1:
        raise ValueError(f"positive integer required, got {m}")
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1 if d == 2 else 2
    if m > 1:
        out.append(m)
    return out


def multiplicative_order(a: int, n: int) -> int:
    """Order of a in (Z/n)*; a need not be reduced mod n."""
    if n < 1:
        raise ValueError(f"modulus must be positive, got {n}")
    if n == 1:
        return 1
    a %= n
    if gcd(a, n) != 1:
        raise ValueError(f"{a} is not a unit mod {n}")
    k, x = 1, a
    while x != 1:
        x = x * a % n
        k += 1
    return k


def z_parameter(q: int, p: int) -> int:
    """Largest z with p^z | q^t - 1, where t = ord_p(q).

    z = 1 is the generic case; it is what makes ord_{p^k}(q) = t * p^(k-1)
    and enables the generalized-multiplier families.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not a prime")
    if gcd(q, p) != 1:
        raise ValueError(f"q={q} and p={p} are not coprime")
    t = multiplicative_order(q, p)
    z = 1
    while pow(q, t, p ** (z + 1)) == 1:
        z += 1
    return z


# ---------------------------------------------------------------------------
# polynomial helpers over the prime field Z_p, coefficients as plain int lists
# (little-endian).  Used by Field internals and the irreducible-modulus search.


def _gfp_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _gfp_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _gfp_trim(out)


def _gfp_mod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    r = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(r) - 1 >= dm and r:
        if r[-1] == 0:
            r.pop()
            continue
        f = r[-1] * inv_lead % p
        shift = len(r) - 1 - dm
        for i, c in enumerate(m):
            r[shift + i] = (r[shift + i] - f * c) % p
        r.pop()
    return _gfp_trim(r)


def _gfp_powmod(a: Sequence[int], e: int, m: Sequence[int], p: int) -> list[int]:
    r, b = [1], _gfp_mod(a, m, p)
    while e:
        if e & 1:
            r = _gfp_mod(_gfp_mul(r, b, p), m, p)
        b = _gfp_mod(_gfp_mul(b, b, p), m, p)
        e >>= 1
    return r


def _gfp_gcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = list(a), list(b)
    while b:
        a, b = b, _gfp_mod(a, b, p)
    return a


def _gfp_sub_lists(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    return _gfp_trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
                      for i in range(n)])


def _is_irreducible(coeffs: Sequence[int], p: int) -> bool:
    """Rabin test for a monic polynomial over Z_p: f of degree s is irreducible
    iff x^(p^s) = x mod f and gcd(f, x^(p^(s/r)) - x) = 1 for every prime r | s."""
    s = len(coeffs) - 1
    if s < 1:
        return False
    if s == 1:
        return True
    x = [0, 1]
    if _gfp_powmod(x, p ** s, coeffs, p) != x:
        return False
    for r in prime_factors(s):
        h = _gfp_powmod(x, p ** (s // r), coeffs, p)
        g = _gfp_gcd(coeffs, _gfp_sub_lists(h, x, p), p)
        if len(g) - 1 != 0:
            return False
    return True


class Field:
    """GF(p^s) as Z_p[x]/(f), elements encoded as integers in [0, p^s).

    The integer encoding is positional base p: element e stands for the
    residue sum(digit_i(e) * x^i).  For s = 1 the element is its own value
    and the modulus is x itself, so prime fields need no table machinery.
    """

    __slots__ = ("characteristic", "degree", "order", "modulus", "_mod_coeffs")

    def __init__(self, characteristic: int, degree: int = 1, modulus: tuple[int, ...] | None = None):
        p, s = characteristic, degree
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not a prime")
        if s < 1:
            raise ValueError(f"degree must be >= 1, got {s}")
        if s == 1:
            modulus = (0, 1) if modulus is None else tuple(modulus)
            if modulus != (0, 1):
                raise ValueError("prime field modulus must be x")
        else:
            if modulus is None:
                raise ValueError("extension fields need an explicit modulus; use make_field")
            modulus = tuple(c % p for c in modulus)
            if len(modulus) != s + 1 or modulus[-1] != 1:
                raise ValueError(f"modulus must be monic of degree {s}")
            if not _is_irreducible(modulus, p):
                raise ValueError(f"modulus {modulus} is reducible over GF({p})")
        self.characteristic = p
        self.degree = s
        self.order = p ** s
        self.modulus = modulus
        self._mod_coeffs = list(modulus)

    # identity is structural: same (p, s, modulus) means same field
    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Field)
                and self.characteristic == other.characteristic
                and self.degree == other.degree
                and self.modulus == other.modulus)

    def __hash__(self) -> int:
        return hash((self.characteristic, self.degree, self.modulus))

    def __repr__(self) -> str:
        if self.degree == 1:
            return f"GF({self.characteristic})"
        return f"GF({self.characteristic}^{self.degree})"

    @property
    def is_prime_field(self) -> bool:
        return self.degree == 1

    def elements(self) -> range:
        return range(self.order)

    def validate(self, a: int) -> int:
        if not isinstance(a, int) or not 0 <= a < self.order:
            raise ValueError(f"{a!r} is not an element of {self!r}")
        return a

    def _digits(self, a: int) -> list[int]:
        p, out = self.characteristic, []
        for _ in range(self.degree):
            a, d = divmod(a, p)
            out.append(d)
        return out

    def _encode(self, digits: Sequence[int]) -> int:
        p, v = self.characteristic, 0
        for d in reversed(list(digits)):
            v = v * p + d % p
        return v

    def add(self, a: int, b: int) -> int:
        p = self.characteristic
        if self.degree == 1:
            return (a + b) % p
        da, db = self._digits(a), self._digits(b)
        return self._encode([(x + y) % p for x, y in zip(da, db)])

    def neg(self, a: int) -> int:
        p = self.characteristic
        if self.degree == 1:
            return (-a) % p
        return self._encode([(-d) % p for d in self._digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        p = self.characteristic
        if self.degree == 1:
            return a * b % p
        prod = _gfp_mul(_gfp_trim(self._digits(a)), _gfp_trim(self._digits(b)), p)
        return self._encode(_gfp_mod(prod, self._mod_coeffs, p) + [0] * self.degree)

    def inv(self, a: int) -> int:
        if a % self.order == 0:
            raise ZeroDivisionError("inverse of zero")
        p = self.characteristic
        if self.degree == 1:
            return pow(a, p - 2, p)
        # extended Euclid on coefficient lists
        r0, r1 = self._mod_coeffs[:], _gfp_trim(self._digits(a))
        t0, t1 = [], [1]
        while r1:
            # divide r0 by r1
            q, r = self._gfp_divmod(r0, r1, p)
            r0, r1 = r1, r
            t0, t1 = t1, self._gfp_sub(t0, _gfp_mul(q, t1, p), p)
        lead_inv = pow(r0[-1], p - 2, p)
        t0 = [c * lead_inv % p for c in t0]
        return self._encode(t0 + [0] * self.degree)

    @staticmethod
    def _gfp_divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
        q = [0] * max(len(a) - len(b) + 1, 0)
        r = a[:]
        inv_lead = pow(b[-1], p - 2, p)
        while len(r) >= len(b) and r:
            if r[-1] == 0:
                r.pop()
                continue
            f = r[-1] * inv_lead % p
            shift = len(r) - len(b)
            q[shift] = f
            for i, c in enumerate(b):
                r[shift + i] = (r[shift + i] - f * c) % p
            r.pop()
        return _gfp_trim(q), _gfp_trim(r)

    @staticmethod
    def _gfp_sub(a: list[int], b: list[int], p: int) -> list[int]:
        n = max(len(a), len(b))
        return _gfp_trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
                          for i in range(n)])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        self.validate(a)
        if e < 0:
            a, e = self.inv(a), -e
        r, b = 1, a
        while e:
            if e & 1:
                r = self.mul(r, b)
            b = self.mul(b, b)
            e >>= 1
        return r

    def element_order(self, a: int) -> int:
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        k, x = 1, a
        while x != 1:
            x = self.mul(x, a)
            k += 1
        return k


@lru_cache(maxsize=None)
def _lowest_irreducible(p: int, s: int) -> tuple[int, ...]:
    """Monic irreducible of degree s over GF(p) whose non-leading coefficient
    vector, read as a base-p integer, is smallest.  Deterministic so that two
    runs always agree on field encodings."""
    for low in range(p ** s):
        coeffs = []
        v = low
        for _ in range(s):
            v, d = divmod(v, p)
            coeffs.append(d)
        coeffs.append(1)
        if _is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise RuntimeError(f"no irreducible of degree {s} over GF({p})")  # unreachable


@lru_cache(maxsize=None)
def make_field(p: int, s: int = 1) -> Field:
    """GF(p^s) with the canonical lowest-encoding modulus."""
    if s == 1:
        return Field(p)
    return Field(p, s, _lowest_irreducible(p, s))


@dataclass(frozen=True)
class Polynomial:
    """Dense polynomial over a Field; coeffs little-endian with no trailing zeros."""
    field: Field
    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        for v in c:
            self.field.validate(v)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1   # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "Polynomial") -> "Polynomial":
        F = self._same_field(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(F, tuple(
            F.add(self.coeffs[i] if i < len(self.coeffs) else 0,
                  other.coeffs[i] if i < len(other.coeffs) else 0)
            for i in range(n)))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.field, tuple(self.field.neg(c) for c in self.coeffs))

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        F = self._same_field(other)
        if self.is_zero() or other.is_zero():
            return Polynomial(F, ())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = F.add(out[i + j], F.mul(a, b))
        return Polynomial(F, tuple(out))

    def _same_field(self, other: "Polynomial") -> Field:
        if self.field != other.field:
            raise ValueError("polynomials over different fields")
        return self.field

    def scale(self, c: int) -> "Polynomial":
        F = self.field
        return Polynomial(F, tuple(F.mul(c, a) for a in self.coeffs))

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.coeffs[-1]))

    def evaluate(self, x: int) -> int:
        F, acc = self.field, 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def __repr__(self) -> str:
        if self.is_zero():
            return "Poly(0)"
        terms = [f"{c}*x^{i}" for i, c in enumerate(self.coeffs) if c]
        return "Poly(" + " + ".join(terms) + f" over {self.field!r})"


def poly_divmod(a: Polynomial, b: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Quotient and remainder; b must be nonzero."""
    F = a._same_field(b)
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    q = [0] * max(a.degree - b.degree + 1, 0)
    r = list(a.coeffs)
    inv_lead = F.inv(b.coeffs[-1])
    while len(r) >= len(b.coeffs) and r:
        if r[-1] == 0:
            r.pop()
            continue
        f = F.mul(r[-1], inv_lead)
        shift = len(r) - len(b.coeffs)
        q[shift] = f
        for i, c in enumerate(b.coeffs):
            r[shift + i] = F.sub(r[shift + i], F.mul(f, c))
        r.pop()
    return Polynomial(F, tuple(q)), Polynomial(F, tuple(r))


def poly_mod(a: Polynomial, b: Polynomial) -> Polynomial:
    return poly_divmod(a, b)[1]


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    while not b.is_zero():
        a, b = b, poly_mod(a, b)
    return a.monic() if not a.is_zero() else a


def x_pow_minus_one(field: Field, n: int) -> Polynomial:
    c = [0] * (n + 1)
    c[0], c[n] = field.neg(1 % field.order), 1
    return Polynomial(field, tuple(c))


@dataclass(frozen=True)
class RootSystem:
    """Splitting data for x^n - 1 over a base field: the extension E containing
    a canonical primitive n-th root alpha, plus the subfield embedding maps."""
    base: Field
    ext: Field
    n: int
    alpha: int
    embed: Callable[[int], int]
    lift: Callable[[int], int | None]


_EMBED_SCAN_LIMIT = 1 << 22


@lru_cache(maxsize=None)
def root_system(field: Field, n: int) -> RootSystem:
    """Extension of `field` containing the n-th roots of unity, with a canonical
    primitive root.

    alpha is pinned deterministically: among all generators of the unique
    order-n subgroup of E*, take the one with the smallest integer encoding.
    Requires gcd(n, q) = 1.
    """
    q = field.order
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if gcd(n, field.characteristic) != 1:
        raise ValueError(f"n={n} not coprime to the characteristic {field.characteristic}")
    t = multiplicative_order(q, n) if n > 1 else 1
    p, s = field.characteristic, field.degree
    if t == 1:
        ext = field
        embed = lambda e: e
        lift = lambda e: e
    else:
        ext = make_field(p, s * t)
        if s == 1:
            # prime subfield encodings coincide
            embed = lambda e: e
            lift = lambda e: e if e < q else None
        else:
            if ext.order > _EMBED_SCAN_LIMIT:
                raise ValueError(f"embedding scan into GF({p}^{s * t}) too large")
            beta = None
            mod_poly = Polynomial(ext, tuple(c % p for c in field.modulus))
            for e in ext.elements():
                if mod_poly.evaluate(e) == 0:
                    beta = e
                    break
            if beta is None:
                raise RuntimeError("modulus has no root in the extension")  # unreachable
            pow_beta = [ext.pow(beta, i) for i in range(s)]

            def embed(e: int, _pb=pow_beta, _f=field, _E=ext) -> int:
                acc = 0
                for d, b in zip(_f._digits(e), _pb):
                    acc = _E.add(acc, _E.mul(d % p, b))
                return acc

            table = {embed(e): e for e in field.elements()}
            lift = lambda e, _t=table: _t.get(e)
    Q = ext.order
    if (Q - 1) % n != 0:
        raise RuntimeError("extension misses the n-th roots")  # unreachable
    if n == 1:
        alpha = 1 % Q
    else:
        alpha = None
        for e in range(2, Q):
            y = ext.pow(e, (Q - 1) // n)
            if y == 1:
                continue
            if all(ext.pow(y, n // r) != 1 for r in prime_factors(n)):
                # y generates the order-n subgroup; take its least generator
                alpha = min(ext.pow(y, k) for k in range(1, n) if gcd(k, n) == 1)
                break
        if alpha is None:
            raise RuntimeError("no element of exact order n")  # unreachable
    return RootSystem(field, ext, n, alpha, embed, lift)


def minimal_polynomial(field: Field, n: int, coset: Iterable[int]) -> Polynomial:
    """Minimal polynomial over `field` of {alpha^i : i in coset}, alpha the
    canonical primitive n-th root.  The coset must be q-cyclotomic, i.e.
    closed under multiplication by q = |field| mod n."""
    q = field.order
    cs = sorted({i % n for i in coset})
    if not cs:
        raise ValueError("empty coset")
    if set((i * q) % n for i in cs) != set(cs):
        raise ValueError(f"{cs} is not a q-cyclotomic coset mod {n} (q={q})")
    rs = root_system(field, n)
    E = rs.ext
    # product of (x - alpha^i) over the coset, computed in E
    prod = Polynomial(E, (1,))
    for i in cs:
        root = E.pow(rs.alpha, i)
        prod = prod * Polynomial(E, (E.neg(root), 1))
    down = []
    for c in prod.coeffs:
        v = rs.lift(c)
        if v is None:
            raise RuntimeError("coefficient escaped the base field")  # closure says impossible
        down.append(v)
    return Polynomial(field, tuple(down))
