from fractions import Fraction
from itertools import combinations

import pytest

from collatz_perms.core import collatz_perm, rank_permutation
from collatz_perms.errors import DegenerateWitness, FamilyTooSmall, NotAWitness, SameSlope
from collatz_perms.geometry import (
    asymptotic_permutation,
    crude_abscissa_bound,
    intersection,
    max_intersection_abscissa,
    permutation_at,
)
from collatz_perms.type_algebra import AffineForm, enumerate_types, suffix_lines
from collatz_perms.witness import first_valid_witness, start_value, witness_schedule


def value(line, t):
    return Fraction(line.numerator_at(0), 1) / 3**line.q + Fraction(2**line.p, 3**line.q) * t


def order_at(family, t):
    return rank_permutation([value(l, t) for l in family.lines])


def test_intersection_dd():
    assert intersection(AffineForm(1, 1, 2), AffineForm(2, 1, 4)) == 1
    with pytest.raises(SameSlope):
        intersection(AffineForm(1, 1, 2), AffineForm(1, 1, 5))


def test_intersection_is_a_crossing():
    fam = suffix_lines("uddudududduddd")
    for l1, l2 in combinations(fam.lines, 2):
        t = intersection(l1, l2)
        assert value(l1, t) == value(l2, t)


def test_max_abscissa_examples():
    assert max_intersection_abscissa(suffix_lines("dududd")) == Fraction(25, 4)
    x = max_intersection_abscissa(suffix_lines("uddudududduddd"))
    assert x == Fraction(1145, 26) and 44.0 < x < 44.1
    for m in range(1, 8):
        assert max_intersection_abscissa(suffix_lines("d" * m)) == 1
    x = max_intersection_abscissa(suffix_lines("uddud"))
    assert 0 < x < 27
    with pytest.raises(FamilyTooSmall):
        max_intersection_abscissa(suffix_lines(""))


def test_crude_bound_examples():
    assert crude_abscissa_bound("uddudududduddd") == 729
    assert crude_abscissa_bound("dududd") == 27
    assert crude_abscissa_bound("d") == 3


def test_crude_bound_holds_to_sixteen():
    for m in range(1, 17):
        for sigma in enumerate_types(m):
            assert max_intersection_abscissa(suffix_lines(sigma)) <= crude_abscissa_bound(sigma)


def test_asymptotic_examples():
    assert asymptotic_permutation(suffix_lines("dududd")) == (4, 1, 6, 3, 7, 5, 2)
    assert asymptotic_permutation(suffix_lines("uddudududduddd")) == (
        4, 12, 7, 2, 10, 5, 13, 8, 15, 11, 6, 14, 9, 3, 1)
    for m in range(0, 8):
        assert asymptotic_permutation(suffix_lines("d" * m)) == tuple(range(m + 1, 0, -1))


@pytest.mark.parametrize("m", range(1, 11))
def test_asymptotic_is_order_past_last_crossing(m):
    for sigma in enumerate_types(m):
        fam = suffix_lines(sigma)
        t = max_intersection_abscissa(fam) + 1
        assert order_at(fam, t) == asymptotic_permutation(fam)


def test_permutation_at_examples():
    assert permutation_at(suffix_lines("dududd"), 8) == (4, 1, 6, 3, 7, 5, 2)
    assert permutation_at(suffix_lines("uddudududduddd"), 4) == (
        3, 12, 7, 2, 10, 5, 13, 8, 15, 11, 6, 14, 9, 4, 1)
    assert permutation_at(suffix_lines("uddud"), 16) == (2, 6, 4, 1, 5, 3)
    with pytest.raises(NotAWitness):
        permutation_at(suffix_lines("uddud"), 17)
    with pytest.raises(DegenerateWitness):
        permutation_at(suffix_lines("d"), 2)


@pytest.mark.parametrize("m", range(0, 11))
def test_geometric_equals_simulated(m):
    for sigma in enumerate_types(m):
        a = first_valid_witness(sigma)
        fam = suffix_lines(sigma)
        assert permutation_at(fam, a) == collatz_perm(start_value(sigma, a))


@pytest.mark.parametrize("m", range(1, 11))
def test_witness_past_crossings_gives_asymptotic(m):
    for sigma in enumerate_types(m):
        fam = suffix_lines(sigma)
        x_max = max_intersection_abscissa(fam)
        sched = witness_schedule(sigma)
        a = next(sched.nth(j) for j in range(4) if sched.nth(j) >= 4 and 2 ** sched.nth(j) > x_max)
        assert permutation_at(fam, a) == asymptotic_permutation(fam)
