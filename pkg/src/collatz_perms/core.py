"""The Collatz map, traces, and the rank map C.

Traces are tuples of ints and permutations are tuples of 1-based ranks.
Types are plain strings over ``{'u', 'd'}``.
"""
from __future__ import annotations

import os

from .errors import DuplicateElements, GuardExceeded, NotCollatzPattern, PowerOfTwoStart

DEFAULT_GUARD = 10**6

Trace = tuple[int, ...]
Permutation = tuple[int, ...]


def default_guard() -> int:
    """Iteration guard, overridable through ``COLLATZ_GUARD``."""
    raw = os.environ.get("COLLATZ_GUARD")
    return int(raw) if raw else DEFAULT_GUARD


def is_power_of_two(x: int) -> bool:
    """True for 2, 4, 8, ...; 1 = 2**0 deliberately does not count."""
    return x > 1 and x & (x - 1) == 0


def collatz_step(x: int) -> int:
    if x < 1:
        raise ValueError(f"collatz_step needs a positive integer, got {x}")
    return x >> 1 if x & 1 == 0 else 3 * x + 1


def trace(x: int, guard: int | None = None) -> Trace:
    """Iterates of ``x`` up to, not including, the first power of two."""
    if x < 1:
        raise ValueError(f"trace needs a positive integer, got {x}")
    if is_power_of_two(x):
        raise PowerOfTwoStart(f"{x} is a power of two; its trace is empty")
    if guard is None:
        guard = default_guard()
    out = [x]
    for _ in range(guard):
        x = x >> 1 if x & 1 == 0 else 3 * x + 1
        if is_power_of_two(x):
            return tuple(out)
        out.append(x)
    raise GuardExceeded(f"no power of two within {guard} iterations of {out[0]}")


def rank_permutation(values) -> Permutation:
    values = tuple(values)
    order = sorted(range(len(values)), key=values.__getitem__)
    ranks = [0] * len(values)
    for r, i in enumerate(order, 1):
        ranks[i] = r
    for i, j in zip(order, order[1:]):
        if values[i] == values[j]:
            raise DuplicateElements(f"value {values[i]} occurs more than once")
    return tuple(ranks)


def collatz_perm(x: int, guard: int | None = None) -> Permutation:
    return rank_permutation(trace(x, guard))


def trace_type(t: Trace) -> str:
    # the final hidden u into the power of two is not part of the type
    return "".join("u" if v & 1 else "d" for v in t[:-1])


def type_from_permutation(p) -> str:
    letters = ["u" if a < b else "d" for a, b in zip(p, p[1:])]
    word = "".join(letters)
    if "uu" in word:
        raise NotCollatzPattern(f"{' '.join(map(str, p))} has two consecutive rises")
    return word


def format_perm(p) -> str:
    return " ".join(map(str, p))
