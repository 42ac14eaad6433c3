import logging

import numpy as np

from algebra.config import DEFAULT_LIMITS, Limits
from algebra.semigroup_core import (
    CommSemigroup, ElementSet, Partition, NoIdentity, NotAnIdeal,
    NotMaximal, EmptySeparator, QuotientNotStar, NonzeroNotClosed, TooSmall,
    InternalCheckFailure, validate,
)
from algebra.semigroup_ideals import (
    is_ideal, is_subsemigroup, idealizer, separator, annihilator_matrix, torsion_set,
    enumerate_ideals, maximal_ideals, is_prime_ideal, is_prime_ideal_by_ideals,
    _require_zero,
)
from algebra.semigroup_congruence import (
    principal_congruence, quotient, candidate_congruences, all_subsets,
)
from algebra.semigroup_search import iso_check, generate_comm_semigroups
from algebra.verdict import Verdict, passed, failed

logger = logging.getLogger(__name__)


def _first_duplicate(rows) -> tuple | None:
    seen = {}
    for i, row in enumerate(rows):
        key = row.tobytes()
        if key in seen:
            return seen[key], i
        seen[key] = i
    return None


def condition_star_check(S: CommSemigroup) -> Verdict:
    """
    Checks Condition (*): S is a commutative monoid with a zero, every
    non-identity element is a torsion element, and s -> A(s) is injective.

    Returns:
    Verdict: PASS, or the failing clause ("monoid_with_zero", "torsion",
        "annihilator_injective") with a witness element or pair.
    """
    name = "condition_star"
    e, z = S.identity_idx, S.zero_idx
    if e is None or z is None:
        return failed(name, "monoid_with_zero", {"identity": e, "zero": z})
    ann = annihilator_matrix(S)
    sizes = ann.sum(axis=0)
    for s in range(S.order):
        if s != e and sizes[s] <= 1:
            return failed(name, "torsion", {"element": s})
    dup = _first_duplicate(ann.T)
    if dup is not None:
        return failed(name, "annihilator_injective", {"s": dup[0], "t": dup[1]})
    return passed(name, identity=e, zero=z)

def natural_order_check(S: CommSemigroup) -> Verdict:
    """
    Checks that the divisibility quasi-order (a <= b iff bS in aS) of a monoid
    is antisymmetric. The verdict also lists the units of S.

    Raises:
    NoIdentity: If S is not a monoid.
    """
    name = "natural_order"
    e = S.identity_idx
    if e is None:
        raise NoIdentity("the natural order is defined on monoids")
    n = S.order
    principal = np.zeros((n, n), dtype=bool)
    principal[np.arange(n)[:, None], S.table] = True
    units = [int(a) for a in np.flatnonzero((S.table == e).any(axis=1))]
    dup = _first_duplicate(principal)
    if dup is not None:
        return failed(name, "antisymmetry", {"a": dup[0], "b": dup[1]}, units=units)
    return passed(name, units=units)


def theorem1_forward_check(C: CommSemigroup, I: ElementSet) -> Verdict:
    """
    For an ideal I with nonempty separator: I and Sep I are P_I-classes, they
    are the zero and the identity of C/P_I, and C/P_I satisfies Condition (*).

    Raises:
    NotAnIdeal: If I is not an ideal.
    EmptySeparator: If Sep I is empty, so the theorem does not apply.
    """
    name = "theorem1_forward"
    if not is_ideal(C, I):
        raise NotAnIdeal(f"{I.members()} is not an ideal")
    sep = separator(C, I)
    if sep.is_empty():
        raise EmptySeparator(f"Sep {I.members()} is empty")
    P = principal_congruence(C, I)
    i0, e0 = I.members()[0], sep.members()[0]
    if P.class_containing(i0) != I:
        return failed(name, "ideal_is_class", {"ideal": I.members(), "class": P.class_containing(i0).members()})
    if P.class_containing(e0) != sep:
        return failed(name, "separator_is_class", {"separator": sep.members(), "class": P.class_containing(e0).members()})
    Q = quotient(C, P).semigroup
    if Q.zero_idx != P.class_of[i0]:
        return failed(name, "ideal_is_zero", {"ideal": I.members()})
    if Q.identity_idx != P.class_of[e0]:
        return failed(name, "separator_is_identity", {"separator": sep.members()})
    star = condition_star_check(Q)
    if not star:
        return failed(name, "quotient_condition_star", star.to_dict())
    return passed(name, ideal=I.members(), classes=P.num_classes)

def theorem1_converse_check(C: CommSemigroup, alpha: Partition) -> Verdict:
    """
    For a congruence alpha whose quotient satisfies Condition (*): the zero
    class I is an ideal, Sep I is the identity class, and alpha = P_I.

    Raises:
    NotACongruence: If alpha is not a congruence.
    QuotientNotStar: If C/alpha does not satisfy Condition (*).
    """
    name = "theorem1_converse"
    Q = quotient(C, alpha).semigroup
    if not condition_star_check(Q):
        raise QuotientNotStar(f"C/{alpha} does not satisfy Condition (*)")
    I = alpha.class_set(Q.zero_idx)
    H = alpha.class_set(Q.identity_idx)
    if not is_ideal(C, I):
        return failed(name, "zero_class_is_ideal", {"class": I.members()})
    sep = separator(C, I)
    if sep != H:
        return failed(name, "separator_is_identity_class",
                      {"separator": sep.members(), "identity_class": H.members()})
    P = principal_congruence(C, I)
    if P != alpha:
        return failed(name, "alpha_equals_P_I", {"alpha": alpha.to_json(), "P_I": P.to_json()})
    return passed(name, ideal=I.members())

def theorem2_check(S: CommSemigroup, M: ElementSet, ideals=None) -> Verdict:
    """
    On a maximal ideal M evaluates (i) M is prime, (ii) Sep M is nonempty,
    (iii) S/P_M is a two-element monoid with a zero; PASS iff they agree.

    Raises:
    NotMaximal: If M is not a maximal ideal of S.
    """
    name = "theorem2"
    if M not in maximal_ideals(S, ideals):
        raise NotMaximal(f"{M.members()} is not a maximal ideal")
    Q = quotient(S, principal_congruence(S, M)).semigroup
    values = {
        "prime": is_prime_ideal(S, M),
        "separator_nonempty": not separator(S, M).is_empty(),
        "two_element_quotient": Q.order == 2 and Q.identity_idx is not None and Q.zero_idx is not None,
    }
    if len(set(values.values())) != 1:
        return failed(name, "assertions_disagree", {"ideal": M.members(), **values})
    return passed(name, ideal=M.members(), **values)


def nonzero_part(C: CommSemigroup) -> CommSemigroup:
    """
    C* = C minus {0}, when the nonzero elements form a subsemigroup.

    Raises:
    NoZeroElement: If C has no zero.
    TooSmall: If C is the one-element semigroup.
    NonzeroNotClosed: If two nonzero elements multiply to zero.
    """
    zero = _require_zero(C)
    if C.order < 2:
        raise TooSmall("C has no nonzero elements")
    keep = [i for i in range(C.order) if i != zero]
    sub = C.table[np.ix_(keep, keep)]
    bad = np.argwhere(sub == zero)
    if bad.size:
        a, b = keep[bad[0][0]], keep[bad[0][1]]
        raise NonzeroNotClosed(f"{C.label(a)}*{C.label(b)} is the zero")
    position = np.full(C.order, -1, dtype=np.int64)
    position[keep] = np.arange(len(keep))
    # a subsemigroup of a commutative semigroup needs no law check
    return validate(position[sub], [C.label(i) for i in keep], check_laws=False)

def strip_zero_check(C: CommSemigroup, I: ElementSet) -> Verdict:
    """
    Checks that removing the zero changes nothing: the restriction of P_I to
    C* equals P_{I*} with I* = I minus {0}, and C/P_I is isomorphic to C*/P_{I*}.

    Raises:
    NonzeroNotClosed: If the nonzero elements are not closed under multiplication.
    NotAnIdeal: If I is not an ideal.
    TooSmall: If I = {0}.
    """
    name = "strip_zero"
    zero = _require_zero(C)
    if not is_ideal(C, I):
        raise NotAnIdeal(f"{I.members()} is not an ideal")
    if I.members() == (zero,):
        raise TooSmall("the ideal must contain a nonzero element")
    C_star = nonzero_part(C)
    keep = [i for i in range(C.order) if i != zero]
    I_star = ElementSet(I.mask[keep])
    P = principal_congruence(C, I)
    P_star = principal_congruence(C_star, I_star)
    restricted = Partition.from_keys(P.class_of[i] for i in keep)
    if restricted != P_star:
        return failed(name, "restriction_equals_P_Istar",
                      {"restricted": restricted.to_json(), "P_Istar": P_star.to_json()})
    iso = iso_check(quotient(C, P).semigroup, quotient(C_star, P_star).semigroup)
    if iso is None:
        return failed(name, "quotients_isomorphic", {"ideal": I.members()})
    return passed(name, ideal=I.members(), classes=P.num_classes, isomorphism=list(iso))


def separator_laws_check(S: CommSemigroup) -> Verdict:
    """
    Sweeps every subset A and checks the general separator facts:
    Sep A = Sep(S-A); Sep A lies in A or in S-A; idealizers and separators are
    empty or subsemigroups; A u Sep A is a subsemigroup when A is one;
    Sep I lies in S-I for a proper ideal I.
    """
    name = "separator_laws"
    for A in all_subsets(S):
        sep = separator(S, A)
        law = None
        if sep != separator(S, A.complement()):
            law = "complement_symmetry"
        elif not (sep.issubset(A) or sep.issubset(A.complement())):
            law = "one_side"
        elif any(not X.is_empty() and not is_subsemigroup(S, X) for X in (idealizer(S, A), sep)):
            law = "subsemigroup"
        elif is_subsemigroup(S, A) and not is_subsemigroup(S, A | sep):
            law = "union_with_separator"
        elif not A.is_empty() and not A.is_full() and is_ideal(S, A) and not sep.issubset(A.complement()):
            law = "proper_ideal"
        if law is not None:
            return failed(name, law, {"subset": A.members(), "separator": sep.members()})
    return passed(name)


def check_laws(S: CommSemigroup, with_meets: bool = False) -> list:
    """
    Runs every structural check that applies to S and returns the verdicts:
    separator laws, the torsion ideal, the natural order of Condition (*)
    monoids, Theorem 1 both ways, Theorem 2 with both prime characterisations
    on maximal ideals, and the zero-stripping remark.
    """
    verdicts = [separator_laws_check(S)]
    ideals = enumerate_ideals(S)
    zero = S.zero_idx
    if zero is not None and S.order >= 2:
        try:
            verdicts.append(passed("lemma1", torsion=torsion_set(S).members()))
        except InternalCheckFailure as exc:
            verdicts.append(failed("lemma1", "torsion_is_ideal", {"error": str(exc)}))
    if condition_star_check(S):
        order = natural_order_check(S)
        if not order:
            verdicts.append(failed("lemma2", "antisymmetry", order.witness))
        elif order.details["units"] != [S.identity_idx]:
            verdicts.append(failed("lemma2", "identity_only_unit", {"units": order.details["units"]}))
        else:
            verdicts.append(passed("lemma2"))
    for I in ideals:
        if not separator(S, I).is_empty():
            verdicts.append(theorem1_forward_check(S, I))
    for alpha in candidate_congruences(S, with_meets):
        if condition_star_check(quotient(S, alpha).semigroup):
            verdicts.append(theorem1_converse_check(S, alpha))
    for M in maximal_ideals(S, ideals):
        verdicts.append(theorem2_check(S, M, ideals))
        if is_prime_ideal(S, M) != is_prime_ideal_by_ideals(S, M, ideals):
            verdicts.append(failed("prime_characterisations", "disagree", {"ideal": M.members()}))
    if zero is not None and S.order >= 2:
        try:
            nonzero_part(S)
        except NonzeroNotClosed:
            pass
        else:
            for I in ideals:
                if I.members() != (zero,):
                    verdicts.append(strip_zero_check(S, I))
    return verdicts

def census(order: int, mode: str = "exhaustive", seed: int | None = None, count: int | None = None,
           limits: Limits = DEFAULT_LIMITS, with_meets: bool = False) -> dict:
    """
    Runs `check_laws` over a generated stream of semigroups and summarises.

    Returns:
    dict: order, mode, number of semigroups and checks, and every failure with its table.
    """
    semigroups = checks = 0
    failures = []
    for S in generate_comm_semigroups(order, mode, seed=seed, count=count, limits=limits):
        semigroups += 1
        for verdict in check_laws(S, with_meets):
            checks += 1
            if not verdict:
                failures.append({"table": S.table.tolist(), **verdict.to_dict()})
    logger.info("census order %d (%s): %d semigroups, %d checks, %d failures",
                order, mode, semigroups, checks, len(failures))
    return {"order": order, "mode": mode, "seed": seed, "semigroups": semigroups,
            "checks": checks, "failures": failures}
