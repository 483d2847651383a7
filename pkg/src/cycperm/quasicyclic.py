"""Quasi-cyclic codes and the restricted equivalence set H'(P).

A code of length n = l*m invariant under T^l is quasi-cyclic of index l.
T^l factors into the l disjoint cycles sigma_i = (i, i+l, ..., i+(m-1)l),
and any equivalence witness between two such codes can be pushed into
H'(P) = {sigma : sigma^-1 T^l sigma in P} for a Sylow p-subgroup P of the
automorphism group containing T^l (lengths n = p^r*l, gcd(p,l) = gcd(p,q) = 1).

H'(P) is not known to be a group, so nothing here assumes closure: reports
always take the generated group of the elements actually found and state how
the search set was obtained.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import factorial, gcd

from .codes import LinearCode, permute_code, weight_profile
from .equivalence import EquivalenceVerdict, ag_set, brute_equivalence
from .perm import (
    BRUTE_DEGREE_BOUND,
    CLOSURE_BOUND,
    BlockSystem,
    ClosureBoundExceeded,
    PermGroup,
    Permutation,
    _prime_power,
    _reduce_generators,
    group_closure,
    hset_brute,
    is_primitive,
    minimal_blocks,
    normalizer_in_symmetric,
    sylow_ascend,
)


def _index_shift(n: int, l: int) -> Permutation:
    return Permutation.identity(n) if l % n == 0 else Permutation.power_shift(n, l % n)


@dataclass(frozen=True)
class QuasiCyclicCode:
    """Linear code declared invariant under T^l; the declared index need not
    be minimal, see minimal_index()."""
    linear: LinearCode
    index: int

    def __post_init__(self):
        n, l = self.linear.n, self.index
        if not 1 <= l <= n or n % l:
            raise ValueError(f"index {l} does not divide the length {n}")
        if permute_code(self.linear, _index_shift(n, l)) != self.linear:
            raise ValueError(f"code is not invariant under the shift by {l}")

    @property
    def n(self) -> int:
        return self.linear.n

    @property
    def k(self) -> int:
        return self.linear.k

    @property
    def field(self):
        return self.linear.field

    @property
    def co_index(self) -> int:
        return self.n // self.index

    def minimal_index(self) -> int:
        """Smallest divisor l' of n with the code invariant under T^(l');
        1 means the code is cyclic."""
        n = self.n
        for l in range(1, n + 1):
            if n % l == 0 and permute_code(self.linear, _index_shift(n, l)) == self.linear:
                return l
        raise AssertionError("unreachable: the identity always fixes the code")

    def __repr__(self) -> str:
        return f"QuasiCyclicCode(q={self.field.order}, n={self.n}, k={self.k}, l={self.index})"


def quasi_cyclic_code(linear: LinearCode, index: int) -> QuasiCyclicCode:
    """Public constructor mirroring the declared-index contract."""
    return QuasiCyclicCode(linear, index)


def sigma_cycles(n: int, l: int) -> list[Permutation]:
    """The l disjoint cycles sigma_i = (i, i+l, ..., i+(m-1)l) whose product
    is T^l; each permutes one residue class mod l and has order m = n/l."""
    if l < 1 or n % l:
        raise ValueError(f"index {l} does not divide the length {n}")
    m = n // l
    out = []
    for i in range(l):
        images = list(range(n))
        for k in range(m):
            images[(i + k * l) % n] = (i + (k + 1) * l) % n if k + 1 < m else i
        out.append(Permutation(tuple(images)))
    return out


def normalizer_witnesses(n: int, l: int) -> tuple[PermGroup, PermGroup]:
    """The two explicit subgroups of the normalizer of <T^l>: the wreath-like
    group Q = <sigma_0, ..., sigma_(l-1), T> and the affine group AG(n).

    Every element is verified to conjugate T^l into <T^l>; affine maps are
    checked against the exact identity tau_{a,b} T^l tau_{a,b}^-1 = T^(l*a).
    A failure would disprove the containment and raises with the witness.
    """
    if gcd(n // l, l) != 1:
        raise ValueError(f"need gcd(m, l) = 1, got m={n // l}, l={l}")
    tl = _index_shift(n, l)
    powers = frozenset(tl ** e for e in range(n // l))
    q_gens = sigma_cycles(n, l) + [Permutation.shift(n)]
    q_group = PermGroup.from_generators(n, q_gens)
    for g in q_group.elements():
        if g.inverse() * tl * g not in powers:
            raise RuntimeError(f"element of Q fails to normalize <T^l>: {g}")
    affine = []
    for a in range(1, n):
        if gcd(a, n) != 1:
            continue
        for b in range(n):
            tau = Permutation.affine(n, a, b)
            if tau * tl * tau.inverse() != _index_shift(n, l * a % n):
                raise RuntimeError(f"affine map fails the shift-conjugation law: a={a}, b={b}")
            affine.append(tau)
    ag_group = PermGroup(n, tuple(_reduce_generators(frozenset(affine))))
    return q_group, ag_group


def hprime_membership(sigma: Permutation, P: PermGroup, l: int) -> bool:
    """sigma^-1 T^l sigma in P, the one-element test behind H'(P)."""
    n = P.degree
    tl = _index_shift(n, l)
    members = P.elements()
    if tl not in members:
        raise ValueError("P must contain the index shift")
    return sigma.inverse() * tl * sigma in members


def _qc_prime_power(code: QuasiCyclicCode) -> tuple[int, int]:
    """(p, r) with co-index p^r, under the usual coprimality hypotheses."""
    p, r = _prime_power(code.co_index)
    if gcd(p, code.index) != 1:
        raise ValueError(f"hypothesis violated: gcd(p, l) = {gcd(p, code.index)} != 1")
    if code.field.order % p == 0:
        raise ValueError("hypothesis violated: p divides the field order")
    return p, r


def qc_sylow(code: QuasiCyclicCode) -> PermGroup:
    """A p-subgroup of the automorphism group containing T^l, ascended to a
    Sylow subgroup of the part discoverable from the structured families
    (cycle products and affine maps that fix the code)."""
    p, _ = _qc_prime_power(code)
    n, l = code.n, code.index
    lin = code.linear
    tl = _index_shift(n, l)
    gens = [tl]
    q_gens = sigma_cycles(n, l) + [Permutation.shift(n)]
    for g in PermGroup.from_generators(n, q_gens).elements():
        if not g.is_identity() and permute_code(lin, g) == lin:
            gens.append(g)
    for tau in ag_set(n):
        if not tau.is_identity() and permute_code(lin, tau) == lin:
            gens.append(tau)
    try:
        ambient = group_closure(gens)
    except ClosureBoundExceeded:
        ambient = group_closure([tl])
    elems = sylow_ascend(ambient, p, [tl])
    return PermGroup(n, tuple(_reduce_generators(elems)))


def _structured_hprime(code: QuasiCyclicCode, P: PermGroup) -> frozenset[Permutation]:
    """H'(P) members harvested from the families with known containments:
    AG(n), the cycle group Q, and the normalizer of P when computable."""
    n, l = code.n, code.index
    tl = _index_shift(n, l)
    members = P.elements()
    pool: set[Permutation] = set()
    pool.update(ag_set(n))
    pool.update(PermGroup.from_generators(n, sigma_cycles(n, l) + [Permutation.shift(n)]).elements())
    if n <= BRUTE_DEGREE_BOUND:
        pool.update(normalizer_in_symmetric(P, n))
    return frozenset(s for s in pool if s.inverse() * tl * s in members)


def _check_compatible(c1: QuasiCyclicCode, c2: QuasiCyclicCode) -> None:
    if c1.n != c2.n:
        raise ValueError(f"length mismatch: {c1.n} != {c2.n}")
    if c1.index != c2.index:
        raise ValueError(f"index mismatch: {c1.index} != {c2.index}")
    if c1.field != c2.field:
        raise ValueError("codes live over different fields")


def qc_equivalence_search(c1: QuasiCyclicCode, c2: QuasiCyclicCode,
                          strategy: str = "STRUCTURED") -> EquivalenceVerdict:
    """Search for a permutation mapping one quasi-cyclic code onto the other.

    STRUCTURED scans the families known to sit inside H'(P) and can never
    certify inequivalence (membership there is only a necessary condition and
    the search set is partial).  BRUTE scans all of S_n for n <= 10 and is
    complete.  Invariant separations (dimension, weight profile) short-circuit
    either way.
    """
    _check_compatible(c1, c2)
    p, r = _qc_prime_power(c1)
    strategy = strategy.upper()
    if strategy not in ("STRUCTURED", "BRUTE"):
        raise ValueError(f"unknown strategy {strategy!r}")
    if c1.k != c2.k:
        return EquivalenceVerdict("inequivalent", None, strategy, True,
                                  f"dimensions differ: {c1.k} != {c2.k}")
    try:
        if weight_profile(c1.linear).counts != weight_profile(c2.linear).counts:
            return EquivalenceVerdict("inequivalent", None, strategy, True,
                                      "weight profiles differ")
    except ValueError:
        pass

    if strategy == "BRUTE":
        sigma = brute_equivalence(c1.linear, c2.linear)
        if sigma is not None:
            return EquivalenceVerdict("equivalent", sigma, strategy, True,
                                      "witness found by exhaustive scan")
        return EquivalenceVerdict("inequivalent", None, strategy, True,
                                  "exhaustive scan found no witness")

    P = qc_sylow(c1)
    members = _structured_hprime(c1, P)
    for sigma in sorted(members, key=lambda g: g.images):
        if permute_code(c1.linear, sigma) == c2.linear:
            return EquivalenceVerdict(
                "equivalent", sigma, strategy, False,
                f"witness among {len(members)} structured members of H'(P), "
                f"|P| = {P.order()}")
    return EquivalenceVerdict(
        "inconclusive", None, strategy, False,
        f"no witness among {len(members)} structured members of H'(P); the "
        "families searched do not exhaust the set")


@dataclass(frozen=True)
class HPrimeReport:
    """What the discovered part of H'(P) generates.

    Every element counted in `discovered` satisfies the membership test for
    the recorded P.  The closure is of the discovered elements only; primitive
    closures carry the cycle-length argument data (a primitive group with a
    cycle of length m, m < (n-m)!, is alternating or symmetric, and an odd
    full shift rules the alternating group out for even n).
    """
    n: int
    index: int
    p_order: int
    discovered: int
    exhaustive: bool               # discovered set is all of H'(P)
    closure_order: int | None     # None when the closure exceeded the bound
    block_systems: tuple[BlockSystem, ...]
    primitive: bool | None
    cycle_length: int
    williamson_bound: int
    shift_is_odd: bool
    conclusion: str

    def to_json(self) -> dict:
        return {
            "n": self.n, "index": self.index, "p_order": self.p_order,
            "discovered": self.discovered, "exhaustive": self.exhaustive,
            "closure_order": self.closure_order,
            "block_systems": [[list(b) for b in bs.blocks] for bs in self.block_systems],
            "primitive": self.primitive,
            "cycle_length": self.cycle_length,
            "williamson_bound": self.williamson_bound,
            "shift_is_odd": self.shift_is_odd,
            "conclusion": self.conclusion,
        }


def imprimitivity_report(code: QuasiCyclicCode) -> HPrimeReport:
    """Generate H'(P) elements, close them, and classify the result.

    For n <= 10 the whole of H'(P) is enumerated; above that only the
    structured families are harvested, which the report flags.  The closure
    step never assumes H'(P) is a group.
    """
    p, r = _qc_prime_power(code)
    n, l = code.n, code.index
    P = qc_sylow(code)
    exhaustive = n <= BRUTE_DEGREE_BOUND
    if exhaustive:
        elements = hset_brute(_index_shift(n, l), P)
    else:
        elements = _structured_hprime(code, P)
    try:
        closure = group_closure(_reduce_generators(elements), CLOSURE_BOUND)
    except ClosureBoundExceeded:
        closure = None
    m = p ** r
    bound = factorial(n - m)
    shift_odd = Permutation.shift(n).parity() == 1
    if closure is None:
        return HPrimeReport(n, l, P.order(), len(elements), exhaustive, None,
                            (), None, m, bound, shift_odd, "UNRESOLVED")
    carrier = PermGroup(n, tuple(_reduce_generators(closure)))
    systems = tuple(minimal_blocks(carrier))
    primitive = is_primitive(carrier)
    if not primitive:
        conclusion = "IMPRIMITIVE"
    elif m < bound:
        # a primitive closure contains the cycles sigma_i of length m
        conclusion = "SYMMETRIC" if n % 2 == 0 and shift_odd else "ALTERNATING_OR_SYMMETRIC"
    else:
        conclusion = "UNRESOLVED"
    return HPrimeReport(n, l, P.order(), len(elements), exhaustive,
                        len(closure), systems, primitive, m, bound,
                        shift_odd, conclusion)
