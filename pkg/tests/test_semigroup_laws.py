import sys
import os
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from itertools import product

import pytest
import numpy as np
from algebra.semigroup_core import (
    Partition, validate, load_table, SemigroupError, NoIdentity, NotAnIdeal, NotMaximal, EmptySeparator,
    QuotientNotStar, NonzeroNotClosed, TooSmall, SizeLimitExceeded,
)
from algebra.semigroup_congruence import principal_congruence, quotient
from algebra.semigroup_laws import (
    condition_star_check, natural_order_check, theorem1_forward_check, theorem1_converse_check,
    theorem2_check, nonzero_part, strip_zero_check, separator_laws_check, check_laws, census,
)
from algebra.semigroup_search import iso_check, generate_comm_semigroups

TABLES = os.path.abspath(os.path.join(os.path.dirname(__file__), '..', 'tables'))


def table1():
    return validate([[0, 1, 2], [1, 2, 2], [2, 2, 2]], ["1", "2", "0"])

def table2():
    return load_table(os.path.join(TABLES, "table2.txt"))

def zmod(n):
    i = np.arange(n)
    return validate(np.outer(i, i) % n)

def null_semigroup(n):
    # every product is the zero at index 0
    return validate(np.zeros((n, n), dtype=int))

def brute_force_count(n):
    cells = [(i, j) for i in range(n) for j in range(i, n)]
    count = 0
    for values in product(range(n), repeat=len(cells)):
        t = np.zeros((n, n), dtype=int)
        for (i, j), v in zip(cells, values):
            t[i, j] = t[j, i] = v
        if all(t[t[a, b], c] == t[a, t[b, c]] for a, b, c in product(range(n), repeat=3)):
            count += 1
    return count


# Tests for Condition (*)
def test_condition_star_table1():
    """
    Test that Table 1 satisfies Condition (*).
    """
    assert condition_star_check(table1())

def test_condition_star_trivial():
    """
    Test that the one-element semigroup satisfies Condition (*).
    """
    assert condition_star_check(validate([[0]]))

def test_condition_star_z4_torsion():
    """
    Test that Z/4 fails the torsion clause at the element 3.
    """
    verdict = condition_star_check(zmod(4))
    assert not verdict
    assert verdict.clause == "torsion"
    assert verdict.witness == {"element": 3}

def test_condition_star_group():
    """
    Test that a group without zero fails the monoid-with-zero clause.
    """
    verdict = condition_star_check(validate([[0, 1], [1, 0]]))
    assert verdict.clause == "monoid_with_zero"

def test_condition_star_injectivity():
    """
    Test a null semigroup with an identity adjoined, where a and b have the same annihilator.
    """
    S = validate([[0, 1, 2, 3], [1, 1, 1, 1], [2, 1, 1, 1], [3, 1, 1, 1]])
    verdict = condition_star_check(S)
    assert verdict.clause == "annihilator_injective"
    assert verdict.witness == {"s": 2, "t": 3}

def test_natural_order():
    """
    Test the divisibility order: antisymmetric on Table 1, not on a group.
    """
    verdict = natural_order_check(table1())
    assert verdict
    assert verdict.details["units"] == [0]
    assert not natural_order_check(validate([[0, 1], [1, 0]]))
    with pytest.raises(NoIdentity):
        natural_order_check(null_semigroup(2))


# Tests for the ideal / congruence correspondence
def test_theorem1_forward_table1():
    """
    Test the forward direction on Table 1 for I = {0} and I = S.
    """
    S = table1()
    verdict = theorem1_forward_check(S, S.subset([2]))
    assert verdict
    assert verdict.details["classes"] == 3
    whole = theorem1_forward_check(S, S.full_set())
    assert whole and whole.details["classes"] == 1

def test_theorem1_forward_z6():
    """
    Test the forward direction on Z/6 with I = {0}.
    """
    S = zmod(6)
    verdict = theorem1_forward_check(S, S.subset([0]))
    assert verdict
    assert verdict.details["classes"] == 4

def test_theorem1_forward_errors():
    """
    Test that the forward direction needs an ideal with a nonempty separator.
    """
    S = table1()
    with pytest.raises(NotAnIdeal):
        theorem1_forward_check(S, S.subset([1]))
    N = null_semigroup(2)
    with pytest.raises(EmptySeparator):
        theorem1_forward_check(N, N.subset([0]))

def test_theorem1_converse():
    """
    Test the converse on Z/6 with P_{0}, and on Table 1 with the discrete and universal congruences.
    """
    Z6 = zmod(6)
    verdict = theorem1_converse_check(Z6, principal_congruence(Z6, Z6.subset([0])))
    assert verdict
    assert verdict.details["ideal"] == (0,)
    S = table1()
    assert theorem1_converse_check(S, Partition.discrete(3)).details["ideal"] == (2,)
    assert theorem1_converse_check(S, Partition.universal(3)).details["ideal"] == (0, 1, 2)

def test_theorem1_converse_needs_star_quotient():
    """
    Test that the converse refuses a congruence whose quotient fails Condition (*).
    """
    with pytest.raises(QuotientNotStar):
        theorem1_converse_check(zmod(4), Partition.discrete(4))

def test_theorem2():
    """
    Test maximal ideals: all three assertions hold on Z/4 and Table 1, and all fail together on a null semigroup.
    """
    Z4 = zmod(4)
    verdict = theorem2_check(Z4, Z4.subset([0, 2]))
    assert verdict and verdict.details["prime"]
    S = table1()
    assert theorem2_check(S, S.subset([1, 2]))
    N = null_semigroup(2)
    verdict = theorem2_check(N, N.subset([0]))
    assert verdict
    assert not verdict.details["prime"]
    assert not verdict.details["separator_nonempty"]
    assert not verdict.details["two_element_quotient"]

def test_theorem2_not_maximal():
    """
    Test that a non-maximal ideal is rejected.
    """
    Z4 = zmod(4)
    with pytest.raises(NotMaximal):
        theorem2_check(Z4, Z4.subset([0]))


# Tests for removing the zero
def test_nonzero_part():
    """
    Test C* of the semilattice {1, a, 0} and of the field Z/5.
    """
    C = validate([[0, 1, 2], [1, 1, 2], [2, 2, 2]], ["1", "a", "0"])
    assert nonzero_part(C).labels == ("1", "a")
    assert nonzero_part(zmod(5)).order == 4

def test_nonzero_part_not_closed():
    """
    Test that Z/6 has zero divisors, so its nonzero elements are not a subsemigroup.
    """
    with pytest.raises(NonzeroNotClosed):
        nonzero_part(zmod(6))
    with pytest.raises(TooSmall):
        nonzero_part(validate([[0]]))

def test_strip_zero():
    """
    Test that removing the zero keeps P_I and its quotient on the semilattice {1, a, 0} and on Z/5.
    """
    C = validate([[0, 1, 2], [1, 1, 2], [2, 2, 2]], ["1", "a", "0"])
    assert strip_zero_check(C, C.subset([1, 2]))
    Z5 = zmod(5)
    assert strip_zero_check(Z5, Z5.full_set())
    with pytest.raises(TooSmall):
        strip_zero_check(C, C.subset([2]))
    with pytest.raises(NonzeroNotClosed):
        Z6 = zmod(6)
        strip_zero_check(Z6, Z6.subset([0, 3]))


# Tests for the full law suite
def test_separator_laws():
    """
    Test the general separator facts on several small semigroups.
    """
    for S in (table1(), table2(), zmod(6), null_semigroup(3)):
        assert separator_laws_check(S)

def test_check_laws_examples():
    """
    Test that every applicable check passes on the example tables and on Z/6 and Z/8.
    """
    for S in (table1(), table2(), zmod(6), zmod(8), validate([[0]])):
        verdicts = check_laws(S)
        assert verdicts
        assert all(verdicts), [v.to_dict() for v in verdicts if not v]

def test_census_exhaustive():
    """
    Test that the exhaustive census over orders 1 to 3 finds no failures.
    """
    for order in (1, 2, 3):
        summary = census(order)
        assert summary["failures"] == []
        assert summary["semigroups"] == brute_force_count(order)

def test_census_exhaustive_order4():
    """
    Test the exhaustive census of all 1140 commutative tables of order 4.
    """
    summary = census(4)
    assert summary["semigroups"] == 1140
    assert summary["checks"] > summary["semigroups"]
    assert summary["failures"] == []

def test_census_random():
    """
    Test a small seeded random census at order 5.
    """
    summary = census(5, "random", seed=1, count=4)
    assert summary["semigroups"] == 4
    assert summary["failures"] == []

def test_census_random_orders_5_and_6():
    """
    Test seeded random censuses of 100 tables at order 5 and 150 at order 6.
    """
    for order, seed, count in ((5, 10, 100), (6, 11, 150)):
        summary = census(order, "random", seed=seed, count=count)
        assert summary["semigroups"] == count
        assert summary["failures"] == []


# Tests for isomorphism and generation
def test_iso_check_z6_quotient_is_table2():
    """
    Test that Z/6 modulo P_{0} is isomorphic to Table 2.
    """
    S = zmod(6)
    Q = quotient(S, principal_congruence(S, S.subset([0]))).semigroup
    f = iso_check(Q, table2())
    assert f is not None
    T = table2()
    for i in range(4):
        for j in range(4):
            assert f[Q.mul(i, j)] == T.mul(f[i], f[j])

def test_iso_check_identity():
    """
    Test that a table compared with itself gives the identity map.
    """
    assert iso_check(table2(), table2()) == (0, 1, 2, 3)

def test_iso_check_not_isomorphic():
    """
    Test tables that are not isomorphic: a semilattice against a group, and different orders.
    """
    assert iso_check(validate([[0, 1], [1, 1]]), validate([[0, 1], [1, 0]])) is None
    assert iso_check(table1(), table2()) is None

def test_iso_check_limit():
    """
    Test that the isomorphism search refuses tables above order 12.
    """
    with pytest.raises(SizeLimitExceeded):
        iso_check(zmod(13), zmod(13))

def test_generate_exhaustive_counts():
    """
    Compare the exhaustive generator with a brute-force count over all symmetric tables.
    """
    assert len(list(generate_comm_semigroups(1))) == 1
    for n in (2, 3):
        tables = [S.table.tolist() for S in generate_comm_semigroups(n)]
        assert len(tables) == brute_force_count(n)
        assert len({str(t) for t in tables}) == len(tables)

def test_generate_random_is_reproducible():
    """
    Test that random generation depends on the seed only.
    """
    first = [S.table.tolist() for S in generate_comm_semigroups(5, "random", seed=7, count=3)]
    second = [S.table.tolist() for S in generate_comm_semigroups(5, "random", seed=7, count=3)]
    assert first == second
    assert len(first) == 3

def test_generate_errors():
    """
    Test generator argument errors.
    """
    with pytest.raises(SizeLimitExceeded):
        next(generate_comm_semigroups(5))
    with pytest.raises(SemigroupError):
        next(generate_comm_semigroups(3, "random", seed=1))
    with pytest.raises(SemigroupError):
        next(generate_comm_semigroups(3, "sideways"))
    with pytest.raises(SemigroupError):
        next(generate_comm_semigroups(0))
