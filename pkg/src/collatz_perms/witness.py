"""Witness exponents: discrete logs base 2 modulo powers of three.

2 is a primitive root modulo every ``3**K``, so ``2**a = c (mod 3**K)`` has a
unique solution ``a`` modulo ``2 * 3**(K-1)``.  We find it by lifting one
ternary digit per level.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

from .core import is_power_of_two, trace, trace_type
from .errors import GuardExceeded, NoValidWitnessWithinCap, NotAUnit, NotAWitness
from .type_algebra import congruence, sigma_to_affine, suffix_lines

DEFAULT_ATTEMPTS = 4


@lru_cache(maxsize=None)
def _lift_table(K: int) -> tuple[int, tuple[tuple[int, int, int], ...]]:
    """Per-level constants for modulus ``3**K``.

    Level ``j`` (lifting from ``3**j`` to ``3**(j+1)``) stores
    ``h = 2**(2*3**(j-1)) mod 3**K``, ``h**2 mod 3**K`` and the digit ``e``
    with ``h = 1 + e*3**j (mod 3**(j+1))``.
    """
    mod = 3**K
    levels = []
    for j in range(1, K):
        h = pow(2, 2 * 3 ** (j - 1), mod)
        e = (h - 1) // 3**j % 3
        levels.append((h, h * h % mod, e))
    return mod, tuple(levels)


def discrete_log_pow2(c: int, exponent: int) -> int:
    """Least ``a >= 1`` with ``2**a = c (mod 3**exponent)``."""
    if exponent < 1:
        raise ValueError("exponent must be at least 1")
    if c % 3 == 0:
        raise NotAUnit(f"{c} is divisible by 3")
    mod, levels = _lift_table(exponent)
    c %= mod
    # mod 3 fixes the parity of a
    a, y = (0, 1) if c % 3 == 1 else (1, 2)
    step = 2
    p3 = 3
    for h, h2, e in levels:
        # y = 2**a agrees with c mod p3; pick the digit that fixes it mod 3*p3
        diff = (c - y) // p3 % 3
        t = diff * (y % 3) * e % 3  # units mod 3 are their own inverses
        if t == 1:
            y = y * h % mod
        elif t == 2:
            y = y * h2 % mod
        a += t * step
        step *= 3
        p3 *= 3
    return a if a else step


class WitnessSchedule(NamedTuple):
    """Every witness exponent is ``a0 + j * period`` for ``j >= 0``."""

    a0: int
    period: int
    k: int

    def nth(self, j: int) -> int:
        return self.a0 + j * self.period

    def contains(self, a: int) -> bool:
        return a >= self.a0 and (a - self.a0) % self.period == 0


def witness_schedule(sigma: str) -> WitnessSchedule:
    c, modulus = congruence(sigma)
    k = sigma.count("u")
    return WitnessSchedule(discrete_log_pow2(c, k + 1), 2 * 3**k, k)


def start_value(sigma: str, a: int) -> int:
    form = sigma_to_affine(sigma)
    if not form.is_integral_at(1 << a):
        raise NotAWitness(f"2^{a} does not satisfy the integrality condition of {sigma or '-'}")
    return form.evaluate(1 << a)


@dataclass(frozen=True)
class WitnessReport:
    sigma: str
    a: int
    valid: bool
    reason: str | None = None
    values: tuple[int, ...] = ()

    def __bool__(self) -> bool:
        return self.valid


def line_values(sigma: str, a: int) -> tuple:
    """Exact values of the suffix lines at ``A = 2**a``, in trace order."""
    A = 1 << a
    return tuple(line.evaluate(A) for line in suffix_lines(sigma).lines)


def validate_witness(sigma: str, a: int) -> WitnessReport:
    """Check that ``2**a`` rebuilds a genuine trace of type ``sigma``."""
    values = line_values(sigma, a)

    def fail(reason: str) -> WitnessReport:
        return WitnessReport(sigma, a, False, reason, values)

    if not all(isinstance(v, int) for v in values):
        return fail("not integral: 2^a violates the congruence")
    for i, v in enumerate(values, 1):
        if v < 1:
            return fail(f"value {v} at position {i} is not positive")
    for i, v in enumerate(values, 1):
        if is_power_of_two(v):
            which = "start value" if i == 1 else f"value at position {i}"
            return fail(f"{which} {v} is a power of two")
    if len(set(values)) != len(values):
        return fail("values are not distinct")
    try:
        forward = trace(values[0], guard=len(values))
    except GuardExceeded:
        return fail("forward iteration runs past the last value")
    if forward != values:
        return fail("forward iteration does not reproduce the values")
    if 3 * values[-1] + 1 != 1 << a:
        return fail("last value does not step to 2^a")
    if trace_type(forward) != sigma:
        return fail("forward type differs")
    return WitnessReport(sigma, a, True, None, values)


def first_valid_witness(sigma: str, attempts: int = DEFAULT_ATTEMPTS) -> int:
    sched = witness_schedule(sigma)
    for j in range(attempts):
        a = sched.nth(j)
        if validate_witness(sigma, a):
            return a
    raise NoValidWitnessWithinCap(f"no valid witness for {sigma or '-'} in {attempts} attempts")
