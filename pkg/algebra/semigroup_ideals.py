import logging

import numpy as np

from algebra.semigroup_core import (
    CommSemigroup, ElementSet, CarrierMismatch, EmptySet, NoZeroElement, TooSmall,
    NotAnIdeal, NotProper, InternalCheckFailure,
)

logger = logging.getLogger(__name__)


def validate_subset(S: CommSemigroup, A: ElementSet) -> None:
    if not isinstance(A, ElementSet) or A.order != S.order:
        raise CarrierMismatch(f"subset does not live on a carrier of order {S.order}")

def _require_zero(S: CommSemigroup) -> int:
    if S.zero_idx is None:
        raise NoZeroElement("the semigroup has no zero element")
    return S.zero_idx


def idealizer(S: CommSemigroup, A: ElementSet) -> ElementSet:
    """
    Returns Id A = {x in S : xA is contained in A}. The idealizer of the empty set is S.

    Parameters:
    S (CommSemigroup): The semigroup.
    A (ElementSet): Any subset of S, possibly empty.

    Returns:
    ElementSet: The idealizer of A.

    Example:
    --------
    >>> idealizer(S, S.subset([0, 1])).members()   # Table 1, A = {1, 2}
    (0,)
    """
    validate_subset(S, A)
    if A.is_empty():
        return S.full_set()
    products = S.table[:, list(A.members())]
    return ElementSet(A.mask[products].all(axis=1))

def separator(S: CommSemigroup, A: ElementSet) -> ElementSet:
    """
    Returns Sep A = Id A intersected with Id(S minus A); it may be empty.
    """
    return idealizer(S, A) & idealizer(S, A.complement())

def is_ideal(S: CommSemigroup, A: ElementSet) -> bool:
    """
    Tests whether A is an ideal, that is sA lies in A for all s in S.

    Raises:
    EmptySet: If A is empty; ideals are taken nonempty.
    """
    validate_subset(S, A)
    if A.is_empty():
        raise EmptySet("ideals are nonempty")
    return bool(A.mask[S.table[:, list(A.members())]].all())

def is_subsemigroup(S: CommSemigroup, A: ElementSet) -> bool:
    validate_subset(S, A)
    if A.is_empty():
        return False
    idx = list(A.members())
    return bool(A.mask[S.table[np.ix_(idx, idx)]].all())

def principal_ideal(S: CommSemigroup, a: int) -> ElementSet:
    """{a} together with Sa."""
    mask = np.zeros(S.order, dtype=bool)
    mask[S.table[a]] = True
    mask[a] = True
    return ElementSet(mask)


def annihilator(S: CommSemigroup, s: int) -> ElementSet:
    """
    Returns A(s) = {x : xs = 0}. It always contains the zero and is an ideal.

    Raises:
    NoZeroElement: If S has no zero.

    Example:
    --------
    >>> S.describe(annihilator(S, 1))   # Table 1, s = "2"
    ['2', '0']
    """
    zero = _require_zero(S)
    return ElementSet(S.table[:, s] == zero)

def annihilator_matrix(S: CommSemigroup) -> np.ndarray:
    """Column s is the bitset of A(s)."""
    return S.table == _require_zero(S)

def torsion_set(S: CommSemigroup) -> ElementSet:
    """
    Returns S_T = {s : A(s) contains a nonzero element} and asserts that it is an ideal.

    Raises:
    NoZeroElement: If S has no zero.
    TooSmall: If S has fewer than two elements.
    InternalCheckFailure: If the result is not an ideal.
    """
    _require_zero(S)
    if S.order < 2:
        raise TooSmall("the torsion set is defined for semigroups with at least two elements")
    T = ElementSet(annihilator_matrix(S).sum(axis=0) > 1)
    if not is_ideal(S, T):
        raise InternalCheckFailure(f"torsion set {T.members()} is not an ideal")
    return T


def enumerate_ideals(S: CommSemigroup) -> list:
    """
    Returns all nonempty ideals of S, ordered by size and then by members.

    Every ideal of a commutative semigroup is the union of the principal
    ideals of its elements, so closing the principal ideals under union is
    sound and complete.
    """
    principal = {sum(1 << i for i in principal_ideal(S, a).members()) for a in range(S.order)}
    found = set(principal)
    frontier = list(principal)
    while frontier:
        fresh = []
        for bits in frontier:
            for p in principal:
                union = bits | p
                if union not in found:
                    found.add(union)
                    fresh.append(union)
        frontier = fresh
    members = [tuple(i for i in range(S.order) if bits >> i & 1) for bits in found]
    members.sort(key=lambda m: (len(m), m))
    logger.debug("order %d semigroup has %d ideals", S.order, len(members))
    return [S.subset(m) for m in members]

def maximal_ideals(S: CommSemigroup, ideals=None) -> list:
    """Inclusion-maximal proper ideals; empty when S has no proper ideal."""
    proper = [I for I in (ideals or enumerate_ideals(S)) if not I.is_full()]
    return [I for I in proper if not any(I != J and I.issubset(J) for J in proper)]

def validate_proper_ideal(S: CommSemigroup, I: ElementSet) -> None:
    if not is_ideal(S, I):
        raise NotAnIdeal(f"{I.members()} is not an ideal")
    if I.is_full():
        raise NotProper("the ideal is the whole semigroup")

def is_prime_ideal(S: CommSemigroup, I: ElementSet) -> bool:
    """
    Element-wise primality: ab in I implies a in I or b in I.

    Raises:
    NotAnIdeal: If I is not an ideal.
    NotProper: If I is all of S.
    """
    validate_proper_ideal(S, I)
    in_I = I.mask
    ok = ~in_I[S.table] | in_I[:, None] | in_I[None, :]
    return bool(ok.all())

def is_prime_ideal_by_ideals(S: CommSemigroup, I: ElementSet, ideals=None) -> bool:
    """Ideal-wise primality: AB in I implies A in I or B in I, over all ideals A, B."""
    validate_proper_ideal(S, I)
    ideals = ideals or enumerate_ideals(S)
    for A in ideals:
        for B in ideals:
            products = S.table[np.ix_(list(A.members()), list(B.members()))]
            if I.mask[products].all() and not (A.issubset(I) or B.issubset(I)):
                return False
    return True
