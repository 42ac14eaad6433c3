import logging
from dataclasses import dataclass

import numpy as np

from algebra.config import DEFAULT_LIMITS, Limits
from algebra.semigroup_core import ElementSet, Partition, InternalCheckFailure, validate
from algebra.semigroup_ideals import separator
from algebra.semigroup_congruence import principal_congruence, quotient
from algebra.semigroup_laws import condition_star_check
from algebra.semigroup_search import iso_check
from algebra.ufd_domains import (
    DomainId, DomainKind, Element, canonical_associate, gcd, is_unit, units, format_element,
)
from algebra.quad_ideals import (
    ideal_from_generators, ideal_mul, conjugate, principal_generator,
)
from algebra.ufd_residues import (
    ResidueSemigroup, ZeroModulus, OracleLimitExceeded, enumerate_residues, residue_semigroup,
    residue_semigroup_of_ideal, factor_divisor_count_oracle,
)
from algebra.verdict import Verdict, passed, failed

logger = logging.getLogger(__name__)


class TauError(Exception):
    """Custom exception for gcd congruence errors."""
    pass

class UnitModulus(TauError):
    pass


def _check_modulus(m: Element, allow_unit: bool = True) -> None:
    if not m:
        raise ZeroModulus("the modulus must be nonzero")
    if not allow_unit and is_unit(m):
        raise UnitModulus(f"{format_element(m)} is a unit; every residue lies in one class")


def tau_related(m: Element, a: Element, b: Element) -> bool:
    """
    (a, b) in tau_m iff gcd(a, m) and gcd(b, m) are associated. For m = 0
    this is the associate relation itself.

    Raises:
    DomainMismatch: If the elements live in different domains.
    """
    return gcd(a, m) == gcd(b, m)


@dataclass(frozen=True)
class TauClasses:
    """
    tau_m on the residue transversal of m. Class c holds the residues whose
    gcd with m is `divisors[c]`, so the divisors of m are read off the classes.
    """
    modulus: Element
    residues: tuple
    partition: Partition
    divisors: tuple

    def to_json(self) -> dict:
        return {
            "modulus": format_element(self.modulus),
            "divisors": [format_element(x) for x in self.divisors],
            "classes": self.partition.to_json(),
        }

def _residue_gcds(m: Element, residues) -> list:
    if m.domain.kind is DomainKind.INTEGERS:
        values = np.gcd(np.array([r.value for r in residues], dtype=np.int64), abs(m.value))
        return [m.domain.element(int(g)) for g in values]
    return [gcd(r, m) for r in residues]

def _tau_partition(m: Element, residues) -> tuple:
    gcds = _residue_gcds(m, residues)
    P = Partition.from_keys(gcds)
    return P, tuple(gcds[r] for r in P.representatives)

def tau_classes(m: Element, limits: Limits = DEFAULT_LIMITS) -> TauClasses:
    """
    Partitions the residues of m by their canonical gcd with m. The result
    is well defined on residues since gcd(a + km, m) ~ gcd(a, m).

    Raises:
    ZeroModulus: If m is zero.
    UnitModulus: If m is a unit.

    Example:
    --------
    >>> T = tau_classes(DomainId.integers().element(6))
    >>> [x.value for x in T.divisors], T.partition.to_json()
    ([6, 1, 2, 3], [[0], [1, 5], [2, 4], [3]])
    """
    _check_modulus(m, allow_unit=False)
    residues = tuple(enumerate_residues(m, limits))
    P, divisors = _tau_partition(m, residues)
    logger.debug("tau classes of %s: %d", format_element(m), P.num_classes)
    return TauClasses(m, residues, P, divisors)

def _zero_class_congruence(ring: ResidueSemigroup) -> Partition:
    return principal_congruence(ring.semigroup, ElementSet.from_indices(ring.order, [0]))

def pj_congruence(m: Element, limits: Limits = DEFAULT_LIMITS) -> Partition:
    """
    P_{J(m)} as a partition of the residue transversal: P_{{0}} on the
    table of D/(m). Computed from contexts only, with no gcd involved.

    Raises:
    ZeroModulus: If m is zero.
    """
    _check_modulus(m)
    return _zero_class_congruence(residue_semigroup(m, limits))


def theorem3_check(m: Element, limits: Limits = DEFAULT_LIMITS) -> Verdict:
    """
    tau_m = P_{J(m)} as partitions of the residues, and the quotient of
    D/(m) by it satisfies Condition (*). A unit m gives two universal
    relations and a one-element quotient.
    """
    name = "theorem3"
    _check_modulus(m)
    ring = residue_semigroup(m, limits)
    P = _zero_class_congruence(ring)
    tau, divisors = _tau_partition(m, ring.residues)
    if tau != P:
        return failed(name, "tau_equals_P", {"modulus": format_element(m), "tau": tau.to_json(),
                                             "P": P.to_json()})
    star = condition_star_check(quotient(ring.semigroup, P).semigroup)
    if not star:
        return failed(name, "quotient_condition_star", star.to_dict(), modulus=format_element(m))
    return passed(name, modulus=format_element(m), classes=P.num_classes,
                  divisors=[format_element(x) for x in divisors])

def separator_class_check(m: Element, limits: Limits = DEFAULT_LIMITS) -> Verdict:
    """
    Sep J(m) is the set of k with gcd(k, m) a unit: the identity class of
    P_{J(m)}, the unit-gcd residues and the separator of {0} computed in
    D/(m) must coincide.

    Raises:
    ZeroModulus: If m is zero.
    UnitModulus: If m is a unit.
    """
    name = "separator_class"
    _check_modulus(m, allow_unit=False)
    ring = residue_semigroup(m, limits)
    P = _zero_class_congruence(ring)
    identity_class = P.class_containing(ring.index(ring.domain.one()))
    coprime = ElementSet([is_unit(g) for g in _residue_gcds(m, ring.residues)])
    sep = separator(ring.semigroup, ElementSet.from_indices(ring.order, [0]))
    if not identity_class == coprime == sep:
        return failed(name, "separator_is_coprime_class",
                      {"identity_class": identity_class.members(), "coprime": coprime.members(),
                       "separator": sep.members()}, modulus=format_element(m))
    return passed(name, modulus=format_element(m), separator=list(ring.semigroup.describe(sep)))


def divisor_count(a: Element, limits: Limits = DEFAULT_LIMITS, cross_check: bool = True) -> int:
    """
    d(a), the number of non-associated divisors of a, as the number of
    tau_a classes. Units give 1.

    With `cross_check` the count is compared with the trial-division
    oracle whenever a is within the oracle caps.

    Raises:
    ZeroModulus: If a is zero.
    InternalCheckFailure: If the oracle disagrees.
    """
    _check_modulus(a)
    if is_unit(a):
        return 1
    count = tau_classes(a, limits).partition.num_classes
    if cross_check:
        try:
            oracle = factor_divisor_count_oracle(a, limits)
        except OracleLimitExceeded:
            logger.debug("d(%s) not cross-checked: outside the oracle caps", format_element(a))
        else:
            if oracle != count:
                raise InternalCheckFailure(f"d({format_element(a)}): {count} classes, oracle {oracle}")
    return count


def dprime_coherence_check(m: Element, limits: Limits = DEFAULT_LIMITS) -> Verdict:
    """
    Checks that tau_m and P_{J(m)} descend to D' = D/~ (canonical associates):
    (1) every residue shares its tau and P classes with the residue of its
    canonical associate; (2) canonicalising the separator class gives exactly
    the canonical residues coprime to m; (3) tau' computed on canonical
    representatives alone has as many classes as P_{J(m)}.
    """
    name = "dprime_coherence"
    _check_modulus(m)
    ring = residue_semigroup(m, limits)
    P = _zero_class_congruence(ring)
    tau, _ = _tau_partition(m, ring.residues)
    canon = [canonical_associate(x) for x in ring.residues]
    for i, c in enumerate(canon):
        j = ring.index(c)
        if not (P.same_class(i, j) and tau.same_class(i, j)):
            return failed(name, "descends_along_associates",
                          {"residue": format_element(ring.residues[i]), "canonical": format_element(c)})
    one = ring.index(ring.domain.one())
    sep_image = {canon[i] for i in P.class_containing(one)}
    coprime = {c for c in canon if is_unit(gcd(c, m))}
    if sep_image != coprime:
        return failed(name, "separator_image",
                      {"image": sorted(map(format_element, sep_image)),
                       "coprime": sorted(map(format_element, coprime))})
    dprime = {gcd(c, m) for c in canon}
    if len(dprime) != P.num_classes:
        return failed(name, "dprime_class_count", {"tau_prime": len(dprime), "P": P.num_classes})
    return passed(name, modulus=format_element(m), classes=P.num_classes)

def cr1_property_check(m: Element, triples) -> Verdict:
    """gcd(a, m) ~ gcd(b, m) implies gcd(sa, m) ~ gcd(sb, m), over the given (a, b, s)."""
    name = "cr1_property"
    related = 0
    for a, b, s in triples:
        if tau_related(m, a, b):
            related += 1
            if not tau_related(m, s * a, s * b):
                return failed(name, "multiplication_preserves_tau",
                              {"a": format_element(a), "b": format_element(b), "s": format_element(s)})
    return passed(name, modulus=format_element(m), related_pairs=related)

def _window(domain: DomainId) -> list:
    if domain.kind is DomainKind.INTEGERS:
        return [domain.element(k) for k in range(-4, 5)]
    if domain.kind is DomainKind.POLY:
        return [domain.element((c0, c1)) for c0 in range(domain.p) for c1 in range(domain.p)]
    return [domain.element((a, b)) for a in range(-2, 3) for b in range(-2, 3)]

def tau0_sharpness_check(domain: DomainId) -> Verdict:
    """
    tau_0 is the associate relation, yet P_{J(0)} = P_{{0}} joins all nonzero
    elements of an integral domain. A pair of nonzero non-associates with
    equal {0}-contexts on a window of elements shows the gap, so Theorem 3
    needs m != 0.
    """
    name = "tau0_sharpness"
    if domain.kind is DomainKind.INTEGERS:
        a, b = domain.element(2), domain.element(3)
    elif domain.kind is DomainKind.POLY:
        a, b = domain.element((0, 1)), domain.element((1, 1))
    else:
        a, b = domain.element((1, 1)), domain.element((2, 1))
    zero = domain.zero()
    if tau_related(zero, a, b):
        return failed(name, "non_associated", {"a": format_element(a), "b": format_element(b)})
    window = _window(domain)

    def zero_context(x: Element) -> frozenset:
        return frozenset((i, j) for i, u in enumerate(window) for j, v in enumerate(window) if not u * x * v)

    if zero_context(a) != zero_context(b):
        return failed(name, "same_zero_context", {"a": format_element(a), "b": format_element(b)})
    return passed(name, domain=str(domain), a=format_element(a), b=format_element(b))


def section4_check(d: int, gens, limits: Limits = DEFAULT_LIMITS) -> Verdict:
    """
    For A = (gens) in O_d: (1) A = mO_d for m = principal_generator(A);
    (2) P_A, computed on O_d/A, equals tau_m and theorem3_check(m) passes;
    (3) A*conj(A) = nO_d with n a positive rational integer equal to the
    norm of A, and theorem3_check(n) passes.
    """
    name = "section4"
    A = ideal_from_generators(d, gens)
    m = principal_generator(A)
    if ideal_from_generators(d, [m]) != A:
        return failed(name, "generator_round_trip", {"hnf": A.to_dict()["hnf"], "generator": format_element(m)})
    ring = residue_semigroup_of_ideal(A, limits)
    P_A = _zero_class_congruence(ring)
    tau, _ = _tau_partition(m, ring.residues)
    if P_A != tau:
        return failed(name, "P_A_equals_tau_m", {"P_A": P_A.to_json(), "tau": tau.to_json()})
    check_m = theorem3_check(m, limits)
    if not check_m:
        return failed(name, "theorem3_for_m", check_m.to_dict())
    n = principal_generator(ideal_mul(A, conjugate(A)))
    a, b = n.value
    if b != 0 or a <= 0 or a != A.norm:
        return failed(name, "norm_generator", {"n": format_element(n), "norm": A.norm})
    check_n = theorem3_check(n, limits)
    if not check_n:
        return failed(name, "theorem3_for_n", check_n.to_dict())
    return passed(name, d=d, hnf=A.to_dict()["hnf"], generator=format_element(m), n=a)


def divisor_semigroup(m: Element, limits: Limits = DEFAULT_LIMITS):
    """
    The canonical divisors of m under x o y = gcd(xy, m), a semilattice-like
    monoid with zero m (Table 2 for m = 6). A unit m gives one element.
    """
    _check_modulus(m)
    divisors = [m.domain.one()] if is_unit(m) else list(tau_classes(m, limits).divisors)
    position = {x: i for i, x in enumerate(divisors)}
    table = [[position[gcd(x * y, m)] for y in divisors] for x in divisors]
    return validate(table, [format_element(x, with_domain=False) for x in divisors])

def divisor_semigroup_check(m: Element, limits: Limits = DEFAULT_LIMITS) -> Verdict:
    """(D/(m))/P_{J(m)} is isomorphic to the divisor semigroup of m."""
    name = "divisor_semigroup"
    ring = residue_semigroup(m, limits)
    Q = quotient(ring.semigroup, _zero_class_congruence(ring)).semigroup
    divisors = divisor_semigroup(m, limits)
    iso = iso_check(Q, divisors, limits)
    if iso is None:
        return failed(name, "isomorphic", {"modulus": format_element(m)})
    return passed(name, modulus=format_element(m), order=Q.order, isomorphism=list(iso))


def random_element(domain: DomainId, rng, size: int = 4) -> Element:
    """Integers in [-size^2, size^2], polynomials of degree < size, coordinates in [-size, size]."""
    if domain.kind is DomainKind.INTEGERS:
        return domain.element(int(rng.integers(-size * size, size * size + 1)))
    if domain.kind is DomainKind.POLY:
        return domain.element(tuple(int(c) for c in rng.integers(0, domain.p, size=size)))
    a, b = rng.integers(-size, size + 1, size=2)
    return domain.element((int(a), int(b)))

def sample_moduli(domain: DomainId, count: int, seed: int, max_abs: int = 500, max_deg: int = 4,
                  max_norm: int = 300) -> list:
    """
    Seeded nonzero non-unit moduli: 2 <= |m| <= max_abs for integers, monic of
    degree 1..max_deg for polynomials, 2 <= N(m) <= max_norm on O_d.
    """
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        if domain.kind is DomainKind.INTEGERS:
            m = domain.element(int(rng.integers(2, max_abs + 1)) * int(rng.choice([1, -1])))
        elif domain.kind is DomainKind.POLY:
            deg = int(rng.integers(1, max_deg + 1))
            m = domain.element(tuple(int(c) for c in rng.integers(0, domain.p, size=deg)) + (1,))
        else:
            bound = int(np.sqrt(max_norm)) + 1
            a, b = rng.integers(-bound, bound + 1, size=2)
            m = domain.element((int(a), int(b)))
            if not 2 <= m.norm() <= max_norm:
                continue
        out.append(m)
    return out

def sample_triples(domain: DomainId, count: int, seed: int, size: int = 4) -> list:
    """Seeded (a, b, s); every other b is a unit multiple of a so that tau_m holds often."""
    rng = np.random.default_rng(seed)
    unit_list = units(domain)
    triples = []
    for k in range(count):
        a = random_element(domain, rng, size)
        if k % 2:
            b = a * unit_list[int(rng.integers(len(unit_list)))]
        else:
            b = random_element(domain, rng, size)
        triples.append((a, b, random_element(domain, rng, size)))
    return triples

def sample_ideal_generators(d: int, count: int, seed: int, max_norm: int = 16) -> list:
    """
    Seeded generator pairs (c*x, c*y) on O_d whose ideal has norm at most
    `max_norm`, small enough that the residue tables of A*conj(A) stay compact.
    """
    domain = DomainId.quadratic(d)
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        c, x, y = (random_element(domain, rng, 3) for _ in range(3))
        gens = [c * x, c * y]
        if not any(gens):
            continue
        if ideal_from_generators(d, gens).norm <= max_norm:
            out.append(gens)
    return out
