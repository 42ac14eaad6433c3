import sys
import os
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from itertools import product

import pytest
import numpy as np
from algebra.ufd_domains import (
    DomainId, HEEGNER, DomainError, DomainMismatch, NotDivisible, DivisionByZero, ElementSyntaxError,
    UnsupportedDomain, DegenerateLattice, units, is_unit, canonical_associate, associated, gcd, divides, div_exact,
    parse_domain, parse_element, format_element,
    lattice_hnf, gauss_reduce,
)
from algebra.tau_congruence import random_element

Z = DomainId.integers()
F5 = DomainId.poly(5)
GAUSS = DomainId.quadratic(-1)


def all_domains():
    return [Z, DomainId.poly(2), DomainId.poly(3), F5] + [DomainId.quadratic(d) for d in HEEGNER]


# Tests for ring arithmetic
def test_integer_arithmetic():
    """
    Test integer products, sums and differences.
    """
    assert (Z.element(6) * Z.element(-2)).value == -12
    assert (Z.element(6) + 4).value == 10
    assert (Z.element(6) - Z.element(9)).value == -3

def test_polynomial_arithmetic():
    """
    Test F5[x] arithmetic with coefficients reduced mod 5.
    """
    f = F5.element((1, 1))      # x + 1
    g = F5.element((2, 1))      # x + 2
    assert (f * g).value == (2, 3, 1)
    assert (f - f).value == ()
    assert F5.element((7, 5)).value == (2,)
    assert (-f).value == (4, 4)

def test_gaussian_arithmetic():
    """
    Test (2 + i)(2 - i) = 5 in Z[i].
    """
    assert (GAUSS.element((2, 1)) * GAUSS.element((2, -1))).value == (5, 0)

def test_omega_squared():
    """
    Test w^2 = s*w + r: i^2 = -1 in Z[i] and w^2 = w - 2 in O_-7.
    """
    assert (GAUSS.element((0, 1)) * GAUSS.element((0, 1))).value == (-1, 0)
    Q7 = DomainId.quadratic(-7)
    assert (Q7.element((0, 1)) * Q7.element((0, 1))).value == (-2, 1)

def test_norm_is_multiplicative():
    """
    Test N(xy) = N(x)N(y) on seeded samples from every domain.
    """
    rng = np.random.default_rng(3)
    for domain in all_domains():
        for _ in range(20):
            x, y = random_element(domain, rng), random_element(domain, rng)
            assert (x * y).norm() == x.norm() * y.norm()

def test_conjugate_times_element_is_norm():
    """
    Test x * conj(x) = N(x) on O_d.
    """
    rng = np.random.default_rng(4)
    for d in HEEGNER:
        domain = DomainId.quadratic(d)
        for _ in range(10):
            x = random_element(domain, rng)
            assert (x * x.conjugate()).value == (x.norm(), 0)

def test_domain_mismatch():
    """
    Test that elements of different domains do not mix.
    """
    with pytest.raises(DomainMismatch):
        Z.element(1) + F5.element((1,))
    with pytest.raises(DomainMismatch):
        gcd(GAUSS.element((1, 1)), DomainId.quadratic(-2).element((1, 1)))

def test_unsupported_domains():
    """
    Test that composite p and d outside the class-number-one list are refused.
    """
    with pytest.raises(UnsupportedDomain):
        DomainId.poly(4)
    with pytest.raises(UnsupportedDomain):
        DomainId.poly(101)
    with pytest.raises(UnsupportedDomain):
        DomainId.quadratic(-5)


# Tests for units and associates
def test_unit_counts():
    """
    Test the number of units: 2 in Z, p - 1 in Fp[x], 4 in Z[i], 6 in O_-3 and 2 in the other rings.
    """
    assert len(units(Z)) == 2
    assert len(units(F5)) == 4
    for d in HEEGNER:
        expected = {-1: 4, -3: 6}.get(d, 2)
        assert len(units(DomainId.quadratic(d))) == expected
        assert all(is_unit(u) for u in units(DomainId.quadratic(d)))

def test_canonical_associate_examples():
    """
    Test canonical associates: -5 -> 5, 2x + 4 -> x + 2 over F5, 1 - 2i -> 2 + i.
    """
    assert canonical_associate(Z.element(-5)).value == 5
    assert canonical_associate(F5.element((4, 2))).value == (2, 1)
    assert canonical_associate(GAUSS.element((1, -2))).value == (2, 1)
    for domain in all_domains():
        assert canonical_associate(domain.one()) == domain.one()
        assert canonical_associate(domain.zero()) == domain.zero()

def test_canonical_associate_is_a_class_invariant():
    """
    Test that every unit multiple of x has the canonical associate of x, which is itself canonical.
    """
    rng = np.random.default_rng(5)
    for domain in all_domains():
        for _ in range(10):
            x = random_element(domain, rng)
            c = canonical_associate(x)
            assert canonical_associate(c) == c
            for u in units(domain):
                assert canonical_associate(u * x) == c
                assert associated(u * x, x)


# Tests for gcd and divisibility
def test_gcd_examples():
    """
    Test gcd examples in each kind of domain, including gcd with zero.
    """
    assert gcd(Z.element(12), Z.element(-18)).value == 6
    assert gcd(Z.element(-6), Z.element(0)).value == 6
    f = F5.element((4, 0, 1))       # x^2 - 1
    g = F5.element((2, 3, 1))       # x^2 + 3x + 2
    assert gcd(f, g).value == (1, 1)
    assert gcd(GAUSS.element((2, 0)), GAUSS.element((1, 1))).value == (1, 1)
    for domain in all_domains():
        assert gcd(domain.zero(), domain.zero()) == domain.zero()

def test_gcd_is_greatest():
    """
    Test on a seeded sample that gcd(a, b) divides a and b and is divided by a common divisor.
    """
    rng = np.random.default_rng(6)
    for domain in all_domains():
        for _ in range(10):
            c = random_element(domain, rng, 2)
            a = c * random_element(domain, rng)
            b = c * random_element(domain, rng)
            g = gcd(a, b)
            assert divides(g, a) and divides(g, b)
            assert divides(c, g)

def test_lattice_hnf_and_reduction():
    """
    Test the lattice helpers behind the O_d gcd on (2, 1 + i) and on (5, 2 + i).
    """
    assert lattice_hnf([(2, 0), (0, 2), (1, 1), (-1, 1)]) == ((2, 1), (0, 1))
    with pytest.raises(DegenerateLattice):
        lattice_hnf([(1, 0), (2, 0)])
    u, v = gauss_reduce(GAUSS.element((5, 0)), GAUSS.element((2, 1)))
    assert u.norm() == 5 and v.norm() >= 5
    assert canonical_associate(u) == canonical_associate(GAUSS.element((2, 1)))

def test_quadratic_gcd_without_ideals():
    """
    Test the gcd in the rings that are not norm-Euclidean, where a common factor is known.
    """
    for d in (-19, -43, -67, -163):
        domain = DomainId.quadratic(d)
        c = domain.element((1, 1))
        g = gcd(c * domain.element((3, 0)), c * domain.element((0, 2)))
        assert divides(c, g) and divides(g, c * domain.element((3, 0)))

def test_divides_and_div_exact():
    """
    Test divisibility and exact division.
    """
    assert divides(Z.element(3), Z.element(12))
    assert div_exact(Z.element(12), Z.element(3)).value == 4
    assert divides(GAUSS.element((1, 1)), GAUSS.element((2, 0)))
    assert div_exact(GAUSS.element((2, 0)), GAUSS.element((1, 1))).value == (1, -1)
    assert not divides(F5.element((1, 1)), F5.element((1, 0, 1)))
    assert divides(Z.element(0), Z.element(0))
    assert not divides(Z.element(0), Z.element(3))

def test_div_exact_errors():
    """
    Test division by zero and by a non-divisor.
    """
    with pytest.raises(DivisionByZero):
        div_exact(Z.element(3), Z.element(0))
    with pytest.raises(NotDivisible):
        div_exact(Z.element(7), Z.element(2))
    with pytest.raises(NotDivisible):
        div_exact(GAUSS.element((3, 0)), GAUSS.element((1, 1)))
    with pytest.raises(NotDivisible):
        div_exact(F5.element((1, 0, 1)), F5.element((1, 1)))


# Tests for the text format
def test_parse_domain():
    """
    Test the domain names.
    """
    assert parse_domain("int") == Z
    assert parse_domain("Z") == Z
    assert parse_domain("F5") == F5
    assert parse_domain("Q(-1)") == GAUSS
    assert parse_domain("-7") == DomainId.quadratic(-7)
    with pytest.raises(ElementSyntaxError):
        parse_domain("R")
    with pytest.raises(UnsupportedDomain):
        parse_domain("F4")
    with pytest.raises(UnsupportedDomain):
        parse_domain("Q(-5)")

def test_parse_element_examples():
    """
    Test element parsing with and without a domain suffix.
    """
    assert parse_element("-12") == Z.element(-12)
    assert parse_element("3x^2+x+4 @ F5").value == (4, 1, 3)
    assert parse_element("x-1", F5).value == (4, 1)
    assert parse_element("1+1*w @ Q(-7)").value == (1, 1)
    assert parse_element("w", GAUSS).value == (0, 1)
    assert parse_element("2-1*w", GAUSS).value == (2, -1)

def test_parse_element_errors():
    """
    Test malformed element texts.
    """
    with pytest.raises(ElementSyntaxError):
        parse_element("3y @ F5")
    with pytest.raises(ElementSyntaxError):
        parse_element("1++2")
    with pytest.raises(ElementSyntaxError):
        parse_element("")
    with pytest.raises(ElementSyntaxError):
        parse_element("1+w^2", GAUSS)
    with pytest.raises(ElementSyntaxError):
        parse_element("x+1 @ F3", F5)
    with pytest.raises(DomainError):
        parse_element("x")

def test_format_element():
    """
    Test the printed forms, which parse back to the same element.
    """
    for text in ("-12", "3x^2+x+4 @ F5", "1+1*w @ Q(-7)", "2-1*w @ Q(-1)", "0 @ F3", "0+0*w @ Q(-2)"):
        assert format_element(parse_element(text)) == text
    assert format_element(F5.element((4, 1)), with_domain=False) == "x+4"
