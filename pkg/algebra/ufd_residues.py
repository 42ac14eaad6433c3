import logging
from itertools import product

import numpy as np
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_rem

from algebra.config import DEFAULT_LIMITS, Limits
from algebra.semigroup_core import CommSemigroup, SizeLimitExceeded, validate
from algebra.ufd_domains import (
    DomainId, DomainKind, Element, canonical_associate, divides, format_element, _gf, _from_gf,
)
from algebra.quad_ideals import QuadIdeal, ideal_from_generators

logger = logging.getLogger(__name__)


class ResidueError(Exception):
    """Custom exception for residue ring errors."""
    pass

class ZeroModulus(ResidueError):
    pass

class OracleLimitExceeded(ResidueError, SizeLimitExceeded):
    pass


def _check_modulus(m: Element) -> None:
    if not m:
        raise ZeroModulus("the modulus must be nonzero")

def _check_size(size: int, cap: int) -> None:
    if size > cap:
        raise OracleLimitExceeded(f"D/(m) has {size} residues, above the cap of {cap}")


class _IntReducer:
    def __init__(self, m: Element):
        self.domain = m.domain
        self.size = abs(m.value)

    def residues(self) -> list:
        return [self.domain.element(i) for i in range(self.size)]

    def index(self, x: Element) -> int:
        return x.value % self.size

    def table(self) -> np.ndarray:
        i = np.arange(self.size, dtype=np.int64)
        return np.outer(i, i) % self.size

class _PolyReducer:
    """Residues are the polynomials of degree < deg m; index i holds the base-p digits of i."""

    def __init__(self, m: Element):
        self.domain = m.domain
        self.p = m.domain.p
        self.monic = canonical_associate(m)
        self.deg = self.monic.degree()
        self.size = self.p ** self.deg

    def _digits(self) -> np.ndarray:
        i = np.arange(self.size, dtype=np.int64)
        return (i[:, None] // self.p ** np.arange(self.deg)) % self.p

    def residues(self) -> list:
        return [self.domain.element(tuple(row)) for row in self._digits()]

    def index(self, x: Element) -> int:
        rem = _from_gf(gf_rem(_gf(x.value), _gf(self.monic.value), self.p, ZZ))
        return sum(c * self.p ** k for k, c in enumerate(rem))

    def table(self) -> np.ndarray:
        n, deg, p = self.size, self.deg, self.p
        if deg == 0:
            return np.zeros((1, 1), dtype=np.int64)
        digits = self._digits()
        modulus = np.array(self.monic.value, dtype=np.int64)
        weights = p ** np.arange(deg)
        table = np.empty((n, n), dtype=np.int64)
        for i in range(n):
            prod = np.zeros((n, 2 * deg - 1), dtype=np.int64)
            for k in range(deg):
                prod[:, k:k + deg] += digits[i, k] * digits
            # reduce by the monic modulus from the top coefficient down
            for top in range(2 * deg - 2, deg - 1, -1):
                lead = prod[:, top] % p
                prod[:, top - deg:top + 1] -= lead[:, None] * modulus
            table[i] = (prod[:, :deg] % p) @ weights
        return table

class _QuadReducer:
    """Residues are a + b*w with 0 <= b < h22 and 0 <= a < h11, at index b*h11 + a."""

    def __init__(self, A: QuadIdeal):
        self.domain = A.domain
        (self.h11, self.h12), (_, self.h22) = A.hnf
        self.size = A.norm

    def residues(self) -> list:
        return [self.domain.element((a, b)) for b in range(self.h22) for a in range(self.h11)]

    def _reduce(self, a, b):
        k = b // self.h22
        return (a - k * self.h12) % self.h11, b - k * self.h22

    def index(self, x: Element) -> int:
        a, b = self._reduce(*x.value)
        return b * self.h11 + a

    def table(self) -> np.ndarray:
        s, r = self.domain.omega
        i = np.arange(self.size, dtype=np.int64)
        a, b = i % self.h11, i // self.h11
        x = np.outer(a, a) + r * np.outer(b, b)
        y = np.outer(a, b) + np.outer(b, a) + s * np.outer(b, b)
        ra, rb = self._reduce(x, y)
        return rb * self.h11 + ra


class ResidueSemigroup:
    """
    The multiplicative semigroup of D/(m) (or O_d/A) with its transversal.

    `index(x)` sends any element of D to the position of its residue, and is
    a multiplicative homomorphism onto the table. The zero residue is index 0.
    """

    def __init__(self, modulus, reducer, residues: tuple, semigroup: CommSemigroup):
        self.modulus = modulus
        self.residues = residues
        self.semigroup = semigroup
        self._reducer = reducer

    @property
    def order(self) -> int:
        return self.semigroup.order

    @property
    def domain(self) -> DomainId:
        return self._reducer.domain

    def index(self, x: Element) -> int:
        return self._reducer.index(x)

    def reduce(self, x: Element) -> Element:
        return self.residues[self.index(x)]

    def __repr__(self) -> str:
        return f"ResidueSemigroup(modulus={self.modulus}, order={self.order})"


def _reducer_for(m: Element):
    kind = m.domain.kind
    if kind is DomainKind.INTEGERS:
        return _IntReducer(m)
    if kind is DomainKind.POLY:
        return _PolyReducer(m)
    return _QuadReducer(ideal_from_generators(m.domain.d, [m]))

def enumerate_residues(m: Element, limits: Limits = DEFAULT_LIMITS) -> list:
    """
    Duplicate-free transversal of D/(m) in its documented order:
    0..|m|-1 for integers; polynomials of degree < deg m by base-p index;
    a + b*w by b*h11 + a from the HNF of (m) on O_d. A unit m gives [0].

    Raises:
    ZeroModulus: If m is zero.
    OracleLimitExceeded: If there are more than `limits.max_transversal` residues.
    """
    _check_modulus(m)
    reducer = _reducer_for(m)
    _check_size(reducer.size, limits.max_transversal)
    return reducer.residues()

def _build(modulus, reducer, limits: Limits) -> ResidueSemigroup:
    _check_size(reducer.size, limits.max_residues)
    residues = tuple(reducer.residues())
    labels = [format_element(x, with_domain=False) for x in residues]
    # ring multiplication is commutative and associative
    S = validate(reducer.table(), labels, check_laws=False)
    logger.debug("residue semigroup of %s: order %d", modulus, S.order)
    return ResidueSemigroup(modulus, reducer, residues, S)

def residue_semigroup(m: Element, limits: Limits = DEFAULT_LIMITS) -> ResidueSemigroup:
    """
    Multiplicative Cayley table of D/(m). P_{{0}} on this table realises
    P_{J(m)} on D exactly, since whether xay lies in mD depends only on the
    residues of x, a, y.

    Raises:
    ZeroModulus: If m is zero.
    OracleLimitExceeded: If D/(m) is larger than `limits.max_residues`.
    """
    _check_modulus(m)
    return _build(m, _reducer_for(m), limits)

def residue_semigroup_of_ideal(A: QuadIdeal, limits: Limits = DEFAULT_LIMITS) -> ResidueSemigroup:
    """O_d / A built from the HNF of A itself."""
    return _build(A, _QuadReducer(A), limits)


def _monic_polys(domain: DomainId, degree: int):
    for lower in product(range(domain.p), repeat=degree):
        yield domain.element(lower + (1,))

def _norm_ball(domain: DomainId, bound: int):
    # N(a + b*w) >= |d| b^2 / 4, and (a + s*b/2)^2 <= N
    b_max = int(np.sqrt(4 * bound / abs(domain.d))) + 1
    a_max = int(np.sqrt(bound)) + b_max + 1
    for b in range(-b_max, b_max + 1):
        for a in range(-a_max, a_max + 1):
            yield domain.element((a, b))

def factor_divisor_count_oracle(a: Element, limits: Limits = DEFAULT_LIMITS) -> int:
    """
    Number of pairwise non-associated divisors of a by brute trial division.

    Raises:
    ZeroModulus: If a is zero.
    OracleLimitExceeded: Above `limits.max_abs`, `limits.max_deg` or `limits.max_norm`.
    """
    _check_modulus(a)
    kind = a.domain.kind
    if kind is DomainKind.INTEGERS:
        n = abs(a.value)
        if n > limits.max_abs:
            raise OracleLimitExceeded(f"|a| = {n} is above the cap of {limits.max_abs}")
        candidates = np.arange(1, n + 1, dtype=np.int64)
        return int(np.count_nonzero(n % candidates == 0))
    if kind is DomainKind.POLY:
        if a.degree() > limits.max_deg:
            raise OracleLimitExceeded(f"deg a = {a.degree()} is above the cap of {limits.max_deg}")
        return sum(1 for k in range(a.degree() + 1)
                   for f in _monic_polys(a.domain, k) if divides(f, a))
    norm = a.norm()
    if norm > limits.max_norm:
        raise OracleLimitExceeded(f"N(a) = {norm} is above the cap of {limits.max_norm}")
    count = 0
    for x in _norm_ball(a.domain, norm):
        nx = x.norm()
        if nx and norm % nx == 0 and divides(x, a) and canonical_associate(x) == x:
            count += 1
    return count
