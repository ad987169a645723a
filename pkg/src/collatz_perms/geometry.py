"""Exact geometry of a type's line family.

Each suffix line ``(2**p * t - b) / 3**q`` is a line in ``t``.  Order along a
vertical ``t = A`` gives the permutation; beyond the rightmost crossing the
order is fixed by slope alone.  All decisions use integers or Fractions.
"""
from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key
from itertools import combinations

from .core import Permutation, rank_permutation
from .errors import DegenerateWitness, FamilyTooSmall, NotAWitness, SameSlope
from .type_algebra import AffineForm, LineFamily
from .witness import validate_witness, witness_schedule


def intersection(l1: AffineForm, l2: AffineForm) -> Fraction:
    """Abscissa where two lines cross."""
    p1, q1, b1 = l1
    p2, q2, b2 = l2
    den = (3**q2 << p1) - (3**q1 << p2)
    if den == 0:
        raise SameSlope(f"lines {l1} and {l2} are parallel")
    return Fraction(3**q2 * b1 - 3**q1 * b2, den)


def max_intersection_abscissa(family: LineFamily) -> Fraction:
    if len(family.lines) < 2:
        raise FamilyTooSmall("need at least two lines")
    return max(intersection(a, b) for a, b in combinations(family.lines, 2))


def crude_abscissa_bound(sigma: str) -> int:
    """``3**(k+1)``: no two lines of the family cross to the right of it."""
    return 3 ** (sigma.count("u") + 1)


def _slope_cmp(l1: AffineForm, l2: AffineForm) -> int:
    lhs = 3**l2.q << l1.p
    rhs = 3**l1.q << l2.p
    if lhs == rhs:
        raise SameSlope(f"lines {l1} and {l2} are parallel")
    return -1 if lhs < rhs else 1


def asymptotic_permutation(family: LineFamily) -> Permutation:
    n = len(family.lines)
    order = sorted(range(n), key=cmp_to_key(lambda i, j: _slope_cmp(family.lines[i], family.lines[j])))
    ranks = [0] * n
    for r, i in enumerate(order, 1):
        ranks[i] = r
    return tuple(ranks)


def permutation_at(family: LineFamily, a: int) -> Permutation:
    sigma = family.sigma
    if not witness_schedule(sigma).contains(a):
        raise NotAWitness(f"2^{a} is not a witness for {sigma or '-'}")
    report = validate_witness(sigma, a)
    if not report:
        raise DegenerateWitness(f"2^{a} for {sigma or '-'}: {report.reason}")
    return rank_permutation(report.values)
