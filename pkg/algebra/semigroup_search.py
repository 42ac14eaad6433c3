import logging

import numpy as np

from algebra.config import DEFAULT_LIMITS, Limits
from algebra.semigroup_core import CommSemigroup, SemigroupError, SizeLimitExceeded, validate

logger = logging.getLogger(__name__)


def _signature(S: CommSemigroup, i: int) -> tuple:
    # Invariants preserved by any isomorphism.
    row = S.table[i]
    return (
        bool(row[i] == i),
        i == S.identity_idx,
        i == S.zero_idx,
        tuple(sorted(np.bincount(row, minlength=S.order))),
        int((np.diagonal(S.table) == i).sum()),
    )

def iso_check(S1: CommSemigroup, S2: CommSemigroup, limits: Limits = DEFAULT_LIMITS) -> tuple | None:
    """
    Searches for an isomorphism S1 -> S2.

    Elements are matched only to elements with the same signature (idempotence,
    identity and zero flags, row value multiset, number of square roots), then
    assignments are extended by backtracking with a product consistency check.

    Parameters:
    S1, S2 (CommSemigroup): The semigroups to compare.
    limits (Limits): `iso_max_order` caps the order.

    Returns:
    tuple or None: f with f[i] the image of element i of S1, or None if the tables are not isomorphic.

    Raises:
    SizeLimitExceeded: If the order exceeds `limits.iso_max_order`.
    """
    n = S1.order
    if max(n, S2.order) > limits.iso_max_order:
        raise SizeLimitExceeded(f"iso_check is limited to order {limits.iso_max_order}")
    if S2.order != n:
        return None
    sig1 = [_signature(S1, i) for i in range(n)]
    sig2 = [_signature(S2, i) for i in range(n)]
    if sorted(sig1) != sorted(sig2):
        return None
    t1, t2 = S1.table, S2.table
    forward = [-1] * n
    backward = [-1] * n
    assigned = []

    def consistent(i: int) -> bool:
        for j in assigned:
            p, q = int(t1[i, j]), int(t2[forward[i], forward[j]])
            if forward[p] != -1 and forward[p] != q:
                return False
            if backward[q] != -1 and backward[q] != p:
                return False
        return True

    def extend(k: int) -> bool:
        if k == n:
            return True
        # trying t = k first returns the identity map when S1 and S2 share a table
        for t in [k] + [t for t in range(n) if t != k]:
            if backward[t] != -1 or sig2[t] != sig1[k]:
                continue
            forward[k], backward[t] = t, k
            assigned.append(k)
            if consistent(k) and extend(k + 1):
                return True
            assigned.pop()
            forward[k], backward[t] = -1, -1
        return False

    if not extend(0):
        return None
    f = np.array(forward)
    if not np.array_equal(f[t1], t2[np.ix_(f, f)]):
        raise SemigroupError("isomorphism search returned a map that does not preserve products")
    return tuple(int(v) for v in f)


class _NodeLimitReached(Exception):
    pass

class _TableSearch:
    """
    Depth-first fill of the upper triangle of a symmetric table, pruning any
    partial table with a defined associativity triple that fails. Undefined
    cells hold n; the padded row and column n are undefined too.
    """

    def __init__(self, n: int, rng=None, node_limit: int | None = None):
        self.n = n
        self.table = np.full((n + 1, n + 1), n, dtype=np.int64)
        self.cells = [(i, j) for i in range(n) for j in range(i, n)]
        self.rng = rng
        self.nodes_left = node_limit

    def _conflict(self) -> bool:
        n, T = self.n, self.table
        ab = T[:n, :n]
        left = T[ab][:, :, :n]                                    # (ab)c
        right = T[np.arange(n)[:, None, None], ab[None, :, :]]     # a(bc)
        return bool(((left != n) & (right != n) & (left != right)).any())

    def _values(self):
        return range(self.n) if self.rng is None else self.rng.permutation(self.n)

    def fill(self, k: int = 0):
        n = self.n
        if k == len(self.cells):
            yield self.table[:n, :n].copy()
            return
        i, j = self.cells[k]
        for v in self._values():
            if self.nodes_left is not None:
                self.nodes_left -= 1
                if self.nodes_left < 0:
                    raise _NodeLimitReached
            self.table[i, j] = self.table[j, i] = v
            if not self._conflict():
                yield from self.fill(k + 1)
        self.table[i, j] = self.table[j, i] = n


def generate_comm_semigroups(n: int, mode: str = "exhaustive", seed: int | None = None,
                             count: int | None = None, limits: Limits = DEFAULT_LIMITS):
    """
    Streams commutative semigroup tables of order n.

    Exhaustive mode yields every commutative associative table on {0..n-1}
    exactly once, in lexicographic order of the upper triangle. Random mode
    yields `count` tables from a randomised depth-first search driven by
    numpy's default_rng(seed); a search that runs past
    `limits.random_node_limit` nodes restarts with the same generator, so
    the stream depends on the seed only.

    Raises:
    SizeLimitExceeded: Exhaustive mode above `limits.exhaustive_max_order`.
    SemigroupError: On an unknown mode, a non-positive order, or random mode without a count.
    """
    if n < 1:
        raise SemigroupError("the order must be positive")
    if mode == "exhaustive":
        if n > limits.exhaustive_max_order:
            raise SizeLimitExceeded(f"exhaustive generation is limited to order {limits.exhaustive_max_order}")
        found = 0
        for table in _TableSearch(n).fill():
            found += 1
            yield validate(table)
        logger.debug("exhaustive order %d: %d tables", n, found)
    elif mode == "random":
        if count is None or count < 0:
            raise SemigroupError("random generation needs a non-negative count")
        rng = np.random.default_rng(seed)
        for _ in range(count):
            restarts = 0
            while True:
                search = _TableSearch(n, rng, limits.random_node_limit)
                try:
                    table = next(search.fill())
                    break
                except _NodeLimitReached:
                    restarts += 1
            if restarts:
                logger.debug("random order %d table found after %d restarts", n, restarts)
            yield validate(table)
    else:
        raise SemigroupError(f"unknown generation mode {mode!r}")
