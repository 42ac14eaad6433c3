import logging
import re
from dataclasses import dataclass

from algebra.ufd_domains import (
    DomainId, Element, DomainMismatch, DegenerateLattice, ElementSyntaxError, canonical_associate, gauss_reduce,
    lattice_hnf, parse_element,
)

logger = logging.getLogger(__name__)


class IdealError(Exception):
    """Custom exception for quadratic ideal errors."""
    pass

class AllZero(IdealError):
    pass

class NotAnIdealLattice(IdealError):
    pass

class NotPrincipalWitness(IdealError):
    """The reduced shortest vector does not generate the ideal; signals a bug or a bad input."""
    pass


@dataclass(frozen=True)
class QuadIdeal:
    """
    Nonzero ideal of O_d as a lattice in (1, w) coordinates, stored as the
    column Hermite normal form ((h11, h12), (0, h22)): the columns h11 and
    h12 + h22*w are a Z-basis, h11, h22 > 0 and 0 <= h12 < h11.

    HNF is unique, so equal ideals have equal `hnf`.
    """
    d: int
    hnf: tuple

    def __post_init__(self):
        (h11, h12), (low, h22) = self.hnf
        if low != 0 or h11 <= 0 or h22 <= 0 or not 0 <= h12 < h11:
            raise NotAnIdealLattice(f"{self.hnf} is not in Hermite normal form")

    @property
    def domain(self) -> DomainId:
        return DomainId.quadratic(self.d)

    @property
    def norm(self) -> int:
        """Index of the lattice in O_d."""
        return self.hnf[0][0] * self.hnf[1][1]

    def basis(self) -> tuple:
        (h11, h12), (_, h22) = self.hnf
        return self.domain.element((h11, 0)), self.domain.element((h12, h22))

    def to_dict(self) -> dict:
        return {"d": self.d, "hnf": [list(row) for row in self.hnf], "norm": self.norm}


def _hnf(vectors) -> tuple:
    try:
        return lattice_hnf(vectors)
    except DegenerateLattice as exc:
        raise NotAnIdealLattice(str(exc)) from exc

def _coerce(domain: DomainId, g) -> Element:
    if isinstance(g, int) and not isinstance(g, bool):
        return domain.from_int(g)
    if not isinstance(g, Element) or g.domain != domain:
        raise DomainMismatch(f"{g} is not an element of {domain}")
    return g

def contains(A: QuadIdeal, x: Element) -> bool:
    """Lattice membership of x = a + b*w in A."""
    x = _coerce(A.domain, x)
    (h11, h12), (_, h22) = A.hnf
    a, b = x.value
    if b % h22:
        return False
    return (a - (b // h22) * h12) % h11 == 0

def ideal_from_basis(d: int, vectors) -> QuadIdeal:
    """
    Ideal whose lattice is spanned by the (x, y) vectors as given.

    Raises:
    NotAnIdealLattice: If the lattice is not full rank or not closed under w.
    """
    domain = DomainId.quadratic(d)
    A = QuadIdeal(d, _hnf(vectors))
    omega = domain.element((0, 1))
    for b in A.basis():
        if not contains(A, omega * b):
            raise NotAnIdealLattice(f"lattice {A.hnf} is not closed under multiplication by w")
    return A

def ideal_from_generators(d: int, gens) -> QuadIdeal:
    """
    Smallest ideal of O_d containing `gens`: the lattice spanned by g and w*g.

    Raises:
    AllZero: If every generator is zero (or none is given).
    DomainMismatch: If a generator is not an element of O_d.

    Example:
    --------
    >>> ideal_from_generators(-1, [2, DomainId.quadratic(-1).element((1, 1))]).hnf
    ((2, 1), (0, 1))
    """
    domain = DomainId.quadratic(d)
    gens = [_coerce(domain, g) for g in gens]
    if not any(gens):
        raise AllZero("an ideal needs a nonzero generator")
    omega = domain.element((0, 1))
    vectors = [v for g in gens for v in (g.value, (omega * g).value)]
    return ideal_from_basis(d, vectors)

def ideal_mul(A: QuadIdeal, B: QuadIdeal) -> QuadIdeal:
    if A.d != B.d:
        raise DomainMismatch(f"ideals of O_{A.d} and O_{B.d}")
    return ideal_from_generators(A.d, [a * b for a in A.basis() for b in B.basis()])

def conjugate(A: QuadIdeal) -> QuadIdeal:
    return ideal_from_generators(A.d, [b.conjugate() for b in A.basis()])

def ideal_norm(A: QuadIdeal) -> int:
    return A.norm

    while True:
        nu = u.norm()
        inner2 = (u + v).norm() - nu - v.norm()
        mu = (inner2 + nu) // (2 * nu)
        v = v - u * mu
        if v.norm() >= nu:
            return u, v
        u, v = v, u

def principal_generator(A: QuadIdeal) -> Element:
    """
    Returns the canonical generator m of A, so that A = mO_d.

    The shortest nonzero vector of a principal ideal gO_d is g times a unit,
    so reducing the HNF basis finds a generator. Every supported d has class
    number one, hence every ideal passes the re-check.

    Raises:
    NotPrincipalWitness: If the shortest vector does not generate A.
    """
    u, _ = gauss_reduce(*A.basis())
    m = canonical_associate(u)
    if ideal_from_generators(A.d, [m]) != A:
        raise NotPrincipalWitness(f"shortest vector {m} of {A.hnf} does not generate it")
    logger.debug("generator of %s in O_%d: %s", A.hnf, A.d, m)
    return m


_IDEAL_RE = re.compile(r"^\s*ideal\(\s*(-?\d+)\s*;(.*)\)\s*$")

def parse_ideal(text: str) -> QuadIdeal:
    """Reads `ideal(-7; 2, 1+1*w)`."""
    match = _IDEAL_RE.match(text)
    if not match:
        raise ElementSyntaxError(f"cannot read ideal {text!r}")
    d = int(match.group(1))
    domain = DomainId.quadratic(d)
    gens = [parse_element(g, domain) for g in match.group(2).split(",") if g.strip()]
    return ideal_from_generators(d, gens)
