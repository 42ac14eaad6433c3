import logging
from typing import NamedTuple

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from algebra.semigroup_core import (
    CommSemigroup, ElementSet, PairContext, Partition, CarrierMismatch,
    NotACongruence, InternalCheckFailure, SizeLimitExceeded, validate,
)
from algebra.semigroup_ideals import validate_subset

logger = logging.getLogger(__name__)

# Subset sweeps visit 2^n sets.
MAX_SUBSET_SWEEP_ORDER = 12


class Quotient(NamedTuple):
    semigroup: CommSemigroup
    class_map: np.ndarray


def _validate_partition(S: CommSemigroup, P: Partition) -> None:
    if P.order != S.order:
        raise CarrierMismatch(f"partition of {P.order} elements on a semigroup of order {S.order}")


def context(S: CommSemigroup, H: ElementSet, a: int) -> PairContext:
    """
    Returns the context H...a = {(x, y) in S x S : xay in H}.

    Pairs range over S x S exactly; no identity is adjoined.

    Example:
    --------
    >>> len(context(S, S.subset([2]), 1))   # Table 1, H = {0}, a = "2"
    8
    """
    validate_subset(S, H)
    xay = S.table[S.table[:, a]]
    return PairContext(H.mask[xay])

def principal_congruence_manual(S: CommSemigroup, H: ElementSet) -> Partition:
    """
    Computes P_H by building every context H...a and grouping equal ones.
    Quadratic memory per element; kept as the literal reference version.
    """
    keys = [context(S, H, a).bits.tobytes() for a in range(S.order)]
    P = Partition.from_keys(keys)
    if not is_congruence(S, P):
        raise InternalCheckFailure(f"principal congruence {P} failed the compatibility check")
    return Partition(P.class_of, is_congruence=True)

def principal_congruence(S: CommSemigroup, H: ElementSet) -> Partition:
    """
    Computes the principal congruence P_H = {(a, b) : H...a = H...b}.

    In a commutative semigroup xay = a(xy), so H...a is fixed by the bit
    vector z -> [az in H] over the product set S*S = {xy}. Comparing those
    vectors gives exactly the partition of the literal definition with n x |S*S|
    work instead of n^3.

    Parameters:
    S (CommSemigroup): The semigroup.
    H (ElementSet): Any subset of S.

    Returns:
    Partition: P_H in canonical form, flagged as a congruence.

    Raises:
    InternalCheckFailure: If the result is not compatible with multiplication.
    """
    validate_subset(S, H)
    products = np.unique(S.table)
    keys = H.mask[S.table[:, products]]
    P = Partition.from_keys(row.tobytes() for row in keys)
    if not is_congruence(S, P):
        raise InternalCheckFailure(f"principal congruence {P} failed the compatibility check")
    logger.debug("P_H on order %d: %d classes", S.order, P.num_classes)
    return Partition(P.class_of, is_congruence=True)


def is_congruence(S: CommSemigroup, P: Partition) -> bool:
    """Tests that a ~ b implies sa ~ sb for every s (one side suffices, S is commutative)."""
    _validate_partition(S, P)
    c = P.as_array()
    reps = np.array(P.representatives)
    image = c[S.table]
    return bool((image == image[:, reps[c]]).all())

def quotient(S: CommSemigroup, P: Partition) -> Quotient:
    """
    Builds the factor semigroup S/P.

    Returns:
    Quotient: the table on P.num_classes classes (class(a)*class(b) = class(ab)),
        labelled by the class representatives, and the class map of S.

    Raises:
    NotACongruence: If P is not compatible with multiplication.
    """
    if not is_congruence(S, P):
        raise NotACongruence(f"{P} is not a congruence")
    c = P.as_array()
    reps = list(P.representatives)
    table = c[S.table[np.ix_(reps, reps)]]
    Q = validate(table, [S.label(r) for r in reps], check_laws=False)
    return Quotient(Q, c)


def _components(n: int, src, dst) -> Partition:
    graph = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(n, n))
    _, labels = connected_components(graph, directed=False)
    return Partition.from_keys(labels)

def congruence_meet(P: Partition, Q: Partition) -> Partition:
    if P.order != Q.order:
        raise CarrierMismatch("partitions of different carriers")
    return Partition.from_keys(zip(P.class_of, Q.class_of),
                               is_congruence=P.is_congruence and Q.is_congruence)

def congruence_join(P: Partition, Q: Partition) -> Partition:
    """Smallest equivalence containing both; a join of congruences is a congruence."""
    if P.order != Q.order:
        raise CarrierMismatch("partitions of different carriers")
    n = P.order
    idx = np.arange(n)
    src = np.concatenate([idx, idx])
    dst = np.concatenate([np.array(P.representatives)[P.as_array()],
                          np.array(Q.representatives)[Q.as_array()]])
    return Partition(_components(n, src, dst).class_of,
                     is_congruence=P.is_congruence and Q.is_congruence)

def congruence_generated(S: CommSemigroup, pairs) -> Partition:
    """Smallest congruence on S relating every given pair."""
    n = S.order
    pairs = list(pairs)
    src = np.array([a for a, _ in pairs] + list(range(n)), dtype=np.int64)
    dst = np.array([b for _, b in pairs] + list(range(n)), dtype=np.int64)
    P = _components(n, src, dst)
    while not is_congruence(S, P):
        c = P.as_array()
        reps = np.array(P.representatives)
        # sa ~ s rep(a) for every s and a
        more_src = S.table.reshape(-1)
        more_dst = S.table[:, reps[c]].reshape(-1)
        P = _components(n, np.concatenate([src, more_src]), np.concatenate([dst, more_dst]))
        src = np.concatenate([src, more_src])
        dst = np.concatenate([dst, more_dst])
    return Partition(P.class_of, is_congruence=True)


def all_subsets(S: CommSemigroup):
    n = S.order
    if n > MAX_SUBSET_SWEEP_ORDER:
        raise SizeLimitExceeded(f"subset sweeps are limited to order {MAX_SUBSET_SWEEP_ORDER}")
    for bits in range(1 << n):
        yield ElementSet(np.array([bits >> i & 1 for i in range(n)], dtype=bool))

def candidate_congruences(S: CommSemigroup, with_meets: bool = False) -> list:
    """
    Distinct congruences P_H over all subsets H, in order of first appearance;
    optionally closed once under pairwise meets.
    """
    seen = {}
    for H in all_subsets(S):
        seen.setdefault(principal_congruence(S, H), None)
    found = list(seen)
    if with_meets:
        for i, P in enumerate(found):
            for Q in found[i + 1:]:
                seen.setdefault(congruence_meet(P, Q), None)
        found = list(seen)
    return found
