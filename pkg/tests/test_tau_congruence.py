import sys
import os
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

import pytest
from algebra.semigroup_core import Partition, load_table
from algebra.semigroup_search import iso_check
from algebra.ufd_domains import DomainId, HEEGNER, format_element, parse_element
from algebra.ufd_residues import ZeroModulus, factor_divisor_count_oracle
from algebra.tau_congruence import (
    UnitModulus, tau_related, tau_classes, pj_congruence, theorem3_check, separator_class_check,
    divisor_count, dprime_coherence_check, cr1_property_check, tau0_sharpness_check, section4_check,
    divisor_semigroup, divisor_semigroup_check, sample_moduli, sample_triples, sample_ideal_generators,
)

TABLES = os.path.abspath(os.path.join(os.path.dirname(__file__), '..', 'tables'))

Z = DomainId.integers()
F2 = DomainId.poly(2)
F5 = DomainId.poly(5)
GAUSS = DomainId.quadratic(-1)
EISENSTEIN = DomainId.quadratic(-3)


def moduli_pool():
    """m = 2..200, ten monic moduli for each of F2, F3, F5 and twenty of norm at most 300 in each O_d."""
    pool = [Z.element(m) for m in range(2, 201)]
    for p in (2, 3, 5):
        pool += sample_moduli(DomainId.poly(p), 10, seed=31, max_deg=4)
    for d in HEEGNER:
        pool += sample_moduli(DomainId.quadratic(d), 20, seed=32, max_norm=300)
    return pool


# Tests for tau_m
def test_tau_related_examples():
    """
    Test tau_6 and tau_0 on integers.
    """
    six, zero = Z.element(6), Z.element(0)
    assert tau_related(six, Z.element(2), Z.element(4))
    assert tau_related(six, Z.element(1), Z.element(-5))
    assert not tau_related(six, Z.element(2), Z.element(3))
    assert tau_related(zero, Z.element(2), Z.element(-2))
    assert not tau_related(zero, Z.element(2), Z.element(3))

def test_tau_classes_z6():
    """
    Test the tau_6 classes and the divisors read off them.
    """
    T = tau_classes(Z.element(6))
    assert T.partition.to_json() == [[0], [1, 5], [2, 4], [3]]
    assert [x.value for x in T.divisors] == [6, 1, 2, 3]
    assert T.to_json()["divisors"] == ["6", "1", "2", "3"]

def test_tau_classes_polynomial():
    """
    Test tau_m for m = x^2 over F2: the classes of x^2, 1 and x.
    """
    T = tau_classes(F2.element((0, 0, 1)))
    assert T.partition.to_json() == [[0], [1, 3], [2]]
    assert [format_element(x, with_domain=False) for x in T.divisors] == ["x^2", "1", "x"]

def test_tau_classes_errors():
    """
    Test that units and zero are refused as moduli.
    """
    with pytest.raises(UnitModulus):
        tau_classes(Z.element(-1))
    with pytest.raises(UnitModulus):
        tau_classes(GAUSS.element((0, 1)))
    with pytest.raises(ZeroModulus):
        tau_classes(Z.element(0))

def test_pj_congruence():
    """
    Test P_J(m) for m = 6, for a unit and for 1 + i.
    """
    assert pj_congruence(Z.element(6)).to_json() == [[0], [1, 5], [2, 4], [3]]
    assert pj_congruence(Z.element(1)) == Partition.universal(1)
    assert pj_congruence(GAUSS.element((1, 1))).num_classes == 2


# Tests for tau_m = P_J(m)
def test_theorem3_integers():
    """
    Test tau_m = P_J(m) for every m from 1 to 200 and for some negative moduli.
    """
    for m in range(1, 201):
        verdict = theorem3_check(Z.element(m))
        assert verdict, verdict.to_dict()
    for m in (-1, -6, -12, -97):
        assert theorem3_check(Z.element(m))

def test_theorem3_example_details():
    """
    Test the reported divisors of 6 and of 5 in Z[i].
    """
    assert theorem3_check(Z.element(6)).details["divisors"] == ["6", "1", "2", "3"]
    assert theorem3_check(GAUSS.element((5, 0))).details["classes"] == 4

def test_theorem3_polynomials():
    """
    Test tau_m = P_J(m) for seeded monic moduli over F2, F3 and F5.
    """
    for p in (2, 3, 5):
        for m in sample_moduli(DomainId.poly(p), 10, seed=31, max_deg=4):
            assert theorem3_check(m), format_element(m)

def test_theorem3_quadratic():
    """
    Test tau_m = P_J(m) for seeded moduli of norm at most 300 in all nine rings.
    """
    for d in HEEGNER:
        for m in sample_moduli(DomainId.quadratic(d), 20, seed=32, max_norm=300):
            assert theorem3_check(m), format_element(m)

def test_theorem3_zero_modulus():
    """
    Test that m = 0 is refused.
    """
    with pytest.raises(ZeroModulus):
        theorem3_check(F5.zero())

def test_tau0_sharpness():
    """
    Test that tau_0 differs from P_J(0) in every domain, so a nonzero modulus is needed.
    """
    for domain in [Z, F2, F5] + [DomainId.quadratic(d) for d in HEEGNER]:
        assert tau0_sharpness_check(domain)


# Tests for the separator class
def test_separator_class_examples():
    """
    Test Sep J(m) for m = 6, for x^2 over F2 and for 1 + i.
    """
    assert separator_class_check(Z.element(6)).details["separator"] == ["1", "5"]
    assert separator_class_check(F2.element((0, 0, 1))).details["separator"] == ["1", "x+1"]
    assert separator_class_check(GAUSS.element((1, 1))).details["separator"] == ["1+0*w"]

def test_separator_class_seeded():
    """
    Test Sep J(m) on seeded moduli of each kind.
    """
    for domain in (Z, F5, GAUSS, EISENSTEIN):
        for m in sample_moduli(domain, 5, seed=33, max_abs=300, max_deg=3, max_norm=200):
            assert separator_class_check(m)

def test_separator_class_over_moduli_pool():
    """
    Test Sep J(m) over every non-unit modulus of the tau_m = P_J(m) pool.
    """
    for m in moduli_pool():
        verdict = separator_class_check(m)
        assert verdict, format_element(m)

def test_separator_class_unit():
    """
    Test that a unit modulus has no separator class to check.
    """
    with pytest.raises(UnitModulus):
        separator_class_check(Z.element(1))


# Tests for the divisor count
def test_divisor_count_examples():
    """
    Test d(6) = 4, d(12) = 6, d(1) = 1, d(5) = 4 in Z[i] and d((x - 1)(x + 1)(x + 2)) = 8 over F5.
    """
    assert divisor_count(Z.element(6)) == 4
    assert divisor_count(Z.element(12)) == 6
    assert divisor_count(Z.element(1)) == 1
    assert divisor_count(GAUSS.element((5, 0))) == 4
    assert divisor_count(parse_element("x^3+2x^2-x-2 @ F5")) == 8
    with pytest.raises(ZeroModulus):
        divisor_count(Z.element(0))

def test_divisor_count_against_oracle_integers():
    """
    Compare d(m) with trial division for seeded integers up to 10^4.
    """
    for m in sample_moduli(Z, 100, seed=34, max_abs=10**4):
        assert divisor_count(m, cross_check=False) == factor_divisor_count_oracle(m)

def test_divisor_count_against_oracle_polynomials():
    """
    Compare d(m) with trial division for seeded polynomials of degree at most 4 over F5.
    """
    for m in sample_moduli(F5, 50, seed=35, max_deg=4):
        assert divisor_count(m, cross_check=False) == factor_divisor_count_oracle(m)

def test_divisor_count_against_oracle_quadratic():
    """
    Compare d(m) with trial division for fifty seeded Gaussian and Eisenstein integers of norm at most 500.
    """
    for domain in (GAUSS, EISENSTEIN):
        for m in sample_moduli(domain, 25, seed=36, max_norm=500):
            assert divisor_count(m, cross_check=False) == factor_divisor_count_oracle(m)

def test_derived_divisor_count_multiplicative_on_coprimes():
    """
    Derived check, not one of the stated results: test that d(ab) = d(a)d(b) for coprime a and b.
    """
    for a, b in ((4, 9), (8, 15), (7, 11), (16, 27)):
        assert divisor_count(Z.element(a * b)) == divisor_count(Z.element(a)) * divisor_count(Z.element(b))


# Tests for the associate quotient and the multiplicative property
def test_dprime_coherence():
    """
    Test that tau_m and P_J(m) descend to canonical associates.
    """
    for m in (Z.element(6), Z.element(-12), Z.element(1), GAUSS.element((5, 0)),
              parse_element("x^2+1 @ F3"), EISENSTEIN.element((4, 1))):
        assert dprime_coherence_check(m), format_element(m)

def test_dprime_coherence_over_moduli_pool():
    """
    Test the associate quotient over the tau_m = P_J(m) pool and the unit modulus.
    """
    for m in [Z.element(1)] + moduli_pool():
        verdict = dprime_coherence_check(m)
        assert verdict, format_element(m)

def test_cr1_property_example():
    """
    Test that gcd(4, 6) = gcd(10, 6) carries over to the multiples by 3.
    """
    verdict = cr1_property_check(Z.element(6), [(Z.element(4), Z.element(10), Z.element(3))])
    assert verdict
    assert verdict.details["related_pairs"] == 1

def test_cr1_property_seeded():
    """
    Test the multiplicative property of tau_m on seeded triples in several domains.
    """
    for domain in (Z, F5, GAUSS, DomainId.quadratic(-7)):
        for m in sample_moduli(domain, 3, seed=37, max_abs=60, max_deg=3, max_norm=60):
            verdict = cr1_property_check(m, sample_triples(domain, 30, seed=38))
            assert verdict
            assert verdict.details["related_pairs"] >= 15


# Tests for ideals of O_d
def test_section4_examples():
    """
    Test (2, 1 + i) = (1 + i) with A conj(A) = (2), (2 + i) with norm 5, and (2, w) in O_-163.
    """
    verdict = section4_check(-1, [GAUSS.element((2, 0)), GAUSS.element((1, 1))])
    assert verdict
    assert verdict.details["generator"] == "1+1*w @ Q(-1)"
    assert verdict.details["n"] == 2
    assert section4_check(-1, [GAUSS.element((2, 1))]).details["n"] == 5
    Q163 = DomainId.quadratic(-163)
    assert section4_check(-163, [Q163.element((2, 0)), Q163.element((0, 1))])

def test_section4_seeded():
    """
    Test seeded ideals of all nine rings.
    """
    for d in HEEGNER:
        for gens in sample_ideal_generators(d, 10, seed=39):
            verdict = section4_check(d, gens)
            assert verdict, verdict.to_dict()


# Tests for the divisor semigroup
def test_divisor_semigroup_six_is_table2():
    """
    Test that the divisors of 6 under gcd(xy, 6) form Table 2.
    """
    D = divisor_semigroup(Z.element(6))
    assert D.labels == ("6", "1", "2", "3")
    assert iso_check(D, load_table(os.path.join(TABLES, "table2.txt"))) is not None

def test_divisor_semigroup_check():
    """
    Test that the quotient by P_J(m) is the divisor semigroup for several moduli.
    """
    for m in (Z.element(1), Z.element(12), Z.element(30), parse_element("x^2+2x+1 @ F5"),
              GAUSS.element((5, 0)), DomainId.quadratic(-2).element((2, 0))):
        verdict = divisor_semigroup_check(m)
        assert verdict, format_element(m)
    assert divisor_semigroup_check(Z.element(30)).details["order"] == 8
