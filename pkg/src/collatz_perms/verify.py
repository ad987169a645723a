"""Paper-value regression checks behind ``collatz-perms verify``."""
from __future__ import annotations

from typing import Callable

from .census import analytic_permutations, brute_force_census, census, check_prepend_closure, classify
from .core import collatz_perm, trace
from .type_algebra import congruence, enumerate_types, fibonacci
from .witness import start_value, witness_schedule

# length -> (total, excess), lengths 15..32
TABLE2 = {
    15: (611, 1), 16: (989, 2), 17: (1600, 3), 18: (2587, 3), 19: (4185, 4),
    20: (6771, 6), 21: (10953, 7), 22: (17720, 9), 23: (28669, 12), 24: (46383, 15),
    25: (75044, 19), 26: (121417, 24), 27: (196448, 30), 28: (317850, 39),
    29: (514278, 49), 30: (832101, 61), 31: (1346346, 77), 32: (2178405, 96),
}
FIB_TOTALS = [1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233, 377]

SHORTEST_ET = "uddudududduddd"
ET_FIRST = (3, 12, 7, 2, 10, 5, 13, 8, 15, 11, 6, 14, 9, 4, 1)
ET_ASYMPTOTIC = (4, 12, 7, 2, 10, 5, 13, 8, 15, 11, 6, 14, 9, 3, 1)

Check = tuple[str, Callable[[], bool]]


def _worked_example() -> bool:
    c = congruence("uddud")
    cl = classify("uddud")
    return (
        (c.c, c.modulus) == (7, 27)
        and witness_schedule("uddud").a0 == 16
        and start_value("uddud", 16) == 19417
        and trace(19417) == (19417, 58252, 29126, 14563, 43690, 21845)
        and cl.perm_first == cl.perm_asymptotic == (2, 6, 4, 1, 5, 3)
    )


def _shortest_et() -> bool:
    cl = classify(SHORTEST_ET)
    sched = witness_schedule(SHORTEST_ET)
    return (
        cl.perm_count == 2
        and cl.perm_first == ET_FIRST
        and cl.perm_asymptotic == ET_ASYMPTOTIC
        and (cl.c, cl.modulus) == (16, 729)
        and (sched.nth(0), sched.nth(1)) == (4, 490)
        and 44 < cl.x_max < 44.1
    )


def quick_checks() -> list[Check]:
    return [
        ("C(12) = 5 3 1 4 2", lambda: collatz_perm(12) == (5, 3, 1, 4, 2)),
        ("C(908) = C(12)", lambda: collatz_perm(908) == collatz_perm(12)),
        ("C(5) = C(21) = C(85) = 1", lambda: collatz_perm(5) == collatz_perm(21) == collatz_perm(85) == (1,)),
        ("C(19417) = 2 6 4 1 5 3", lambda: collatz_perm(19417) == (2, 6, 4, 1, 5, 3)),
        ("type-info uddud: 7 mod 27, 2^16, x = 19417", _worked_example),
        ("shortest ET uddudududduddd", _shortest_et),
        ("trace of 9 has type uddudududduddd", lambda: "".join(
            "u" if v % 2 else "d" for v in trace(9)[:-1]) == SHORTEST_ET),
        ("census n = 1..7 is Fibonacci", lambda: [r.total for r in census(1, 7)] == FIB_TOTALS[:7]),
    ]


def _census_rows() -> bool:
    rows = census(1, 24)
    return [r.total for r in rows[:14]] == FIB_TOTALS and all(
        (r.total, r.excess) == TABLE2[r.n] and r.excess == r.et_count for r in rows[14:]
    )


def _oracle() -> bool:
    buckets = brute_force_census(8, 10**5)
    for n in range(1, 9):
        analytic = analytic_permutations(n)
        if len(analytic) != fibonacci(n) or not buckets[n] <= analytic:
            return False
    for m in range(0, 8):
        for sigma in enumerate_types(m):
            cl = classify(sigma)
            if collatz_perm(start_value(sigma, cl.a_first)) != cl.perm_first:
                return False
    return True


def _closure() -> bool:
    return all(not check_prepend_closure(r.ets) for r in census(15, 20))


def full_checks() -> list[Check]:
    return quick_checks() + [
        ("Table 2 rows through length 24", _census_rows),
        ("brute force vs analytic permutations, n <= 8", _oracle),
        ("d-prepend closure for ET lengths 14..19", _closure),
    ]


def run(level: str = "quick", echo: Callable[[str], None] = print) -> list[str]:
    """Run checks, echo one line each, return the names that failed."""
    checks = full_checks() if level == "full" else quick_checks()
    failed = []
    for name, fn in checks:
        try:
            ok = bool(fn())
        except Exception as exc:  # a crash is a failed check
            ok = False
            name = f"{name} ({type(exc).__name__}: {exc})"
        echo(f"{'PASS' if ok else 'FAIL'}  {name}")
        if not ok:
            failed.append(name)
    return failed
