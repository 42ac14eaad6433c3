import logging
import math
import re
from dataclasses import dataclass
from enum import Enum
from itertools import product

from sympy import isprime
from sympy.core.intfunc import igcdex
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_add, gf_sub, gf_neg, gf_mul, gf_rem, gf_div, gf_gcd, gf_monic

logger = logging.getLogger(__name__)

# Imaginary quadratic fields whose rings of integers have class number one.
HEEGNER = (-1, -2, -3, -7, -11, -19, -43, -67, -163)
MAX_PRIME = 97


class DomainError(Exception):
    """Custom exception for domain arithmetic errors."""
    pass

class DomainMismatch(DomainError):
    pass

class NotDivisible(DomainError):
    pass

class DivisionByZero(DomainError):
    pass

class ElementSyntaxError(DomainError):
    pass

class UnsupportedDomain(DomainError):
    pass

class DegenerateLattice(DomainError):
    pass


class DomainKind(Enum):
    INTEGERS = "int"
    POLY = "poly"
    QUADRATIC = "quadratic"


@dataclass(frozen=True)
class DomainId:
    """
    One of the supported unique factorization domains: the integers, F_p[x]
    for a prime p <= 97, or the ring of integers O_d for d in HEEGNER.

    In O_d elements are a + b*w with w = sqrt(d) for d = -1, -2 and
    w = (1 + sqrt(d))/2 for the other seven, so w^2 = s*w + r.
    """
    kind: DomainKind
    param: int | None = None

    def __post_init__(self):
        if self.kind is DomainKind.INTEGERS and self.param is not None:
            raise UnsupportedDomain("the integers take no parameter")
        if self.kind is DomainKind.POLY and not (isinstance(self.param, int) and self.param <= MAX_PRIME
                                                 and isprime(self.param)):
            raise UnsupportedDomain(f"F_p[x] needs a prime p <= {MAX_PRIME}, got {self.param}")
        if self.kind is DomainKind.QUADRATIC and self.param not in HEEGNER:
            raise UnsupportedDomain(f"d must be one of {HEEGNER}, got {self.param}")

    @classmethod
    def integers(cls) -> "DomainId":
        return cls(DomainKind.INTEGERS)

    @classmethod
    def poly(cls, p: int) -> "DomainId":
        return cls(DomainKind.POLY, p)

    @classmethod
    def quadratic(cls, d: int) -> "DomainId":
        return cls(DomainKind.QUADRATIC, d)

    @property
    def p(self) -> int:
        return self.param

    @property
    def d(self) -> int:
        return self.param

    @property
    def omega(self) -> tuple:
        """(s, r) with w^2 = s*w + r."""
        if self.d % 4 == 1:
            return 1, (self.d - 1) // 4
        return 0, self.d

    def element(self, value) -> "Element":
        return Element(self, value)

    def from_int(self, k: int) -> "Element":
        if self.kind is DomainKind.INTEGERS:
            return Element(self, k)
        if self.kind is DomainKind.POLY:
            return Element(self, (k,))
        return Element(self, (k, 0))

    def zero(self) -> "Element":
        return self.from_int(0)

    def one(self) -> "Element":
        return self.from_int(1)

    def __str__(self) -> str:
        if self.kind is DomainKind.INTEGERS:
            return "int"
        if self.kind is DomainKind.POLY:
            return f"F{self.p}"
        return f"Q({self.d})"


def _gf(value: tuple) -> list:
    # galoistools stores coefficients high degree first
    return [int(c) for c in reversed(value)]

def _from_gf(f) -> tuple:
    return tuple(int(c) for c in reversed(f))


@dataclass(frozen=True)
class Element:
    """
    Element of a DomainId. The value is an int (integers), a little-endian
    coefficient tuple with no trailing zeros (F_p[x], () is zero), or the
    coordinate pair (a, b) of a + b*w (O_d).
    """
    domain: DomainId
    value: object

    def __post_init__(self):
        kind = self.domain.kind
        if kind is DomainKind.INTEGERS:
            if isinstance(self.value, bool) or not isinstance(self.value, int):
                raise DomainError(f"integer value expected, got {self.value!r}")
        elif kind is DomainKind.POLY:
            coeffs = [int(c) % self.domain.p for c in self.value]
            while coeffs and coeffs[-1] == 0:
                coeffs.pop()
            object.__setattr__(self, "value", tuple(coeffs))
        else:
            a, b = self.value
            object.__setattr__(self, "value", (int(a), int(b)))

    def _other(self, other) -> "Element":
        if isinstance(other, int) and not isinstance(other, bool):
            return self.domain.from_int(other)
        if not isinstance(other, Element):
            return NotImplemented
        if other.domain != self.domain:
            raise DomainMismatch(f"{self.domain} and {other.domain}")
        return other

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        kind = self.domain.kind
        if kind is DomainKind.INTEGERS:
            return Element(self.domain, self.value + other.value)
        if kind is DomainKind.POLY:
            return Element(self.domain, _from_gf(gf_add(_gf(self.value), _gf(other.value), self.domain.p, ZZ)))
        return Element(self.domain, (self.value[0] + other.value[0], self.value[1] + other.value[1]))

    __radd__ = __add__

    def __neg__(self):
        kind = self.domain.kind
        if kind is DomainKind.INTEGERS:
            return Element(self.domain, -self.value)
        if kind is DomainKind.POLY:
            return Element(self.domain, _from_gf(gf_neg(_gf(self.value), self.domain.p, ZZ)))
        return Element(self.domain, (-self.value[0], -self.value[1]))

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        if self.domain.kind is DomainKind.POLY:
            return Element(self.domain, _from_gf(gf_sub(_gf(self.value), _gf(other.value), self.domain.p, ZZ)))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        kind = self.domain.kind
        if kind is DomainKind.INTEGERS:
            return Element(self.domain, self.value * other.value)
        if kind is DomainKind.POLY:
            return Element(self.domain, _from_gf(gf_mul(_gf(self.value), _gf(other.value), self.domain.p, ZZ)))
        s, r = self.domain.omega
        a, b = self.value
        c, e = other.value
        return Element(self.domain, (a * c + r * b * e, a * e + b * c + s * b * e))

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        if self.domain.kind is DomainKind.QUADRATIC:
            return self.value != (0, 0)
        return bool(self.value)

    def is_zero(self) -> bool:
        return not self

    def degree(self) -> int:
        """Degree of a polynomial; -1 for the zero polynomial."""
        return len(self.value) - 1

    def conjugate(self) -> "Element":
        if self.domain.kind is not DomainKind.QUADRATIC:
            return self
        s, _ = self.domain.omega
        a, b = self.value
        return Element(self.domain, (a + s * b, -b))

    def norm(self) -> int:
        """
        |x| for integers, p^deg x for nonzero polynomials (0 for zero), and
        the field norm a^2 + s*a*b - r*b^2 on O_d. Always multiplicative.
        """
        kind = self.domain.kind
        if kind is DomainKind.INTEGERS:
            return abs(self.value)
        if kind is DomainKind.POLY:
            return self.domain.p ** self.degree() if self.value else 0
        s, r = self.domain.omega
        a, b = self.value
        return a * a + s * a * b - r * b * b

    def __str__(self) -> str:
        return format_element(self)


def _check_same_domain(*elements) -> DomainId:
    domain = elements[0].domain
    for x in elements[1:]:
        if x.domain != domain:
            raise DomainMismatch(f"{domain} and {x.domain}")
    return domain


def units(domain: DomainId) -> list:
    """
    Integers: +-1. F_p[x]: the nonzero constants. O_d: the solutions of N(x) = 1,
    four for d = -1, six for d = -3 and two otherwise.
    """
    if domain.kind is DomainKind.INTEGERS:
        return [domain.from_int(1), domain.from_int(-1)]
    if domain.kind is DomainKind.POLY:
        return [domain.from_int(c) for c in range(1, domain.p)]
    # unit coordinates lie in {-1, 0, 1} for every supported d
    candidates = (Element(domain, (a, b)) for a, b in product((1, 0, -1), repeat=2))
    return [u for u in candidates if u.norm() == 1]

def is_unit(x: Element) -> bool:
    return x.norm() == 1

def canonical_associate(x: Element) -> Element:
    """
    Representative of the associate class of x: |x| for integers, the monic
    multiple for polynomials, and the lexicographically greatest (a, b)
    among the unit multiples on O_d. Zero maps to zero.

    Example:
    --------
    >>> canonical_associate(DomainId.quadratic(-1).element((1, -2))).value
    (2, 1)
    """
    kind = x.domain.kind
    if not x:
        return x
    if kind is DomainKind.INTEGERS:
        return Element(x.domain, abs(x.value))
    if kind is DomainKind.POLY:
        _, monic = gf_monic(_gf(x.value), x.domain.p, ZZ)
        return Element(x.domain, _from_gf(monic))
    return max((u * x for u in units(x.domain)), key=lambda y: y.value)

def associated(x: Element, y: Element) -> bool:
    _check_same_domain(x, y)
    return canonical_associate(x) == canonical_associate(y)


def lattice_hnf(vectors) -> tuple:
    """
    Column HNF ((h11, h12), (0, h22)) of the lattice spanned by integer vectors (x, y).

    Vectors are folded into one running vector w whose y is the gcd of the
    y's seen so far; each fold kills one vector down to (x, 0), and the gcd
    of those x's is h11.

    Raises:
    DegenerateLattice: If the vectors do not span a rank-2 lattice.
    """
    h11 = 0
    w = None
    for x, y in vectors:
        if y == 0:
            h11 = math.gcd(h11, x)
        elif w is None:
            w = (x, y)
        else:
            wx, wy = w
            s, t, g = igcdex(wy, y)
            s, t, g = int(s), int(t), int(g)
            w = (s * wx + t * x, g)
            h11 = math.gcd(h11, (y // g) * wx - (wy // g) * x)
    if w is None or h11 == 0:
        raise DegenerateLattice("the vectors do not span a full-rank lattice")
    wx, wy = w if w[1] > 0 else (-w[0], -w[1])
    return (h11, wx % h11), (0, wy)

def gauss_reduce(u: Element, v: Element) -> tuple:
    """Lagrange-Gauss reduction under the norm form; the first vector returned is a shortest one."""
    if u.norm() > v.norm():
        u, v = v, u
    while True:
        nu = u.norm()
        inner2 = (u + v).norm() - nu - v.norm()
        mu = (inner2 + nu) // (2 * nu)
        v = v - u * mu
        if v.norm() >= nu:
            return u, v
        u, v = v, u


def gcd(a: Element, b: Element) -> Element:
    """
    Canonical greatest common divisor; gcd(a, 0) is the canonical associate of a
    and gcd(0, 0) = 0.

    Integers and F_p[x] use the Euclidean algorithm. On O_d the gcd is the
    shortest vector of the lattice (a, b), which is principal because O_d
    has class number one; four of the nine rings are not norm-Euclidean.

    Raises:
    DomainMismatch: If a and b live in different domains.
    """
    domain = _check_same_domain(a, b)
    if domain.kind is DomainKind.INTEGERS:
        return Element(domain, math.gcd(a.value, b.value))
    if domain.kind is DomainKind.POLY:
        return Element(domain, _from_gf(gf_gcd(_gf(a.value), _gf(b.value), domain.p, ZZ)))
    if not a and not b:
        return domain.zero()
    omega = domain.element((0, 1))
    (h11, h12), (_, h22) = lattice_hnf([v for g in (a, b) for v in (g.value, (omega * g).value)])
    u, _ = gauss_reduce(domain.element((h11, 0)), domain.element((h12, h22)))
    return canonical_associate(u)

def divides(a: Element, b: Element) -> bool:
    """True iff b = a*q for some q."""
    domain = _check_same_domain(a, b)
    if not a:
        return not b
    if domain.kind is DomainKind.INTEGERS:
        return b.value % a.value == 0
    if domain.kind is DomainKind.POLY:
        return not gf_rem(_gf(b.value), _gf(a.value), domain.p, ZZ)
    n = a.norm()
    return all(c % n == 0 for c in (b * a.conjugate()).value)

def div_exact(b: Element, a: Element) -> Element:
    """
    Returns q with b = a*q.

    Raises:
    DivisionByZero: If a is zero.
    NotDivisible: If a does not divide b.
    """
    domain = _check_same_domain(a, b)
    if not a:
        raise DivisionByZero(f"cannot divide {b} by zero")
    if domain.kind is DomainKind.INTEGERS:
        q, rem = divmod(b.value, a.value)
        if rem:
            raise NotDivisible(f"{a} does not divide {b}")
        return Element(domain, q)
    if domain.kind is DomainKind.POLY:
        q, rem = gf_div(_gf(b.value), _gf(a.value), domain.p, ZZ)
        if rem:
            raise NotDivisible(f"{a} does not divide {b}")
        return Element(domain, _from_gf(q))
    n = a.norm()
    x, y = (b * a.conjugate()).value
    if x % n or y % n:
        raise NotDivisible(f"{a} does not divide {b}")
    return Element(domain, (x // n, y // n))


_DOMAIN_RE = re.compile(r"^(?:F(\d+)|Q\((-?\d+)\)|(-\d+))$")
_TERM_RE = re.compile(r"^(\d*)(\*?([a-z])(?:\^(\d+))?)?$")

def parse_domain(text: str) -> DomainId:
    """
    `int` (or `Z`), `F5` for F_5[x], and `Q(-7)` (or just `-7`) for O_{-7}.

    Raises:
    ElementSyntaxError: If the text names no domain.
    UnsupportedDomain: If p or d is outside the supported range.
    """
    text = text.strip()
    if text in ("int", "Z"):
        return DomainId.integers()
    match = _DOMAIN_RE.match(text)
    if not match:
        raise ElementSyntaxError(f"unknown domain {text!r}")
    p, d, bare = match.groups()
    if p is not None:
        return DomainId.poly(int(p))
    return DomainId.quadratic(int(d if d is not None else bare))

def _parse_terms(text: str, var: str | None) -> dict:
    body = text.replace(" ", "")
    if not body:
        raise ElementSyntaxError("empty element")
    if body[0] not in "+-":
        body = "+" + body
    coeffs = {}
    for sign, term in re.findall(r"([+-])([^+-]*)", body):
        match = _TERM_RE.match(term)
        if not term or not match or (match.group(1) == "" and match.group(2) is None):
            raise ElementSyntaxError(f"bad term {sign}{term!r} in {text!r}")
        digits, var_part, name, exp = match.groups()
        if var_part is not None and name != var:
            raise ElementSyntaxError(f"unexpected variable in {text!r}")
        if var_part is not None and var_part.startswith("*") and not digits:
            raise ElementSyntaxError(f"bad term {sign}{term!r} in {text!r}")
        power = 0 if var_part is None else int(exp) if exp else 1
        value = int(digits) if digits else 1
        coeffs[power] = coeffs.get(power, 0) + (value if sign == "+" else -value)
    return coeffs

def parse_element(text: str, domain: DomainId | None = None) -> Element:
    """
    Reads `12`, `3x^2+x+4 @ F5` or `1+1*w @ Q(-7)`. The `@ domain` suffix may
    be left out when `domain` is given; without either the text is an integer.

    Raises:
    ElementSyntaxError: On malformed text or a suffix that disagrees with `domain`.
    """
    body, _, suffix = text.partition("@")
    if suffix:
        named = parse_domain(suffix)
        if domain is not None and named != domain:
            raise ElementSyntaxError(f"{text!r} is not an element of {domain}")
        domain = named
    domain = domain or DomainId.integers()
    if domain.kind is DomainKind.INTEGERS:
        coeffs = _parse_terms(body, None)
        return Element(domain, coeffs.get(0, 0))
    if domain.kind is DomainKind.POLY:
        coeffs = _parse_terms(body, "x")
        top = max(coeffs)
        return Element(domain, tuple(coeffs.get(k, 0) for k in range(top + 1)))
    coeffs = _parse_terms(body, "w")
    if max(coeffs) > 1:
        raise ElementSyntaxError(f"powers of w are not reduced in {text!r}")
    return Element(domain, (coeffs.get(0, 0), coeffs.get(1, 0)))

def format_element(x: Element, with_domain: bool = True) -> str:
    """Inverse of `parse_element`; integers carry no suffix."""
    kind = x.domain.kind
    if kind is DomainKind.INTEGERS:
        return str(x.value)
    if kind is DomainKind.POLY:
        terms = []
        for k in range(len(x.value) - 1, -1, -1):
            c = x.value[k]
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                var = "x" if k == 1 else f"x^{k}"
                terms.append(var if c == 1 else f"{c}{var}")
        body = "+".join(terms) or "0"
    else:
        a, b = x.value
        body = f"{a}{'-' if b < 0 else '+'}{abs(b)}*w"
    return f"{body} @ {x.domain}" if with_domain else body
