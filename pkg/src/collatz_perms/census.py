"""Classification of types and the per-length census of Collatz permutations.

A type gives two permutations exactly when its first valid witness lies left
of the rightmost crossing of its line family (an excess-creating type, ET).
The census walks the tree of types by prepending letters, carrying the affine
form and the congruence along each branch, and only evaluates lines exactly
when the first witness is small enough to sit among the crossings.
"""
from __future__ import annotations

import json
import logging
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Callable, Iterable

from .core import Permutation, is_power_of_two, rank_permutation
from .errors import CheckpointError, NoValidWitnessWithinCap
from .geometry import asymptotic_permutation, crude_abscissa_bound, max_intersection_abscissa
from .type_algebra import enumerate_types, fibonacci, state_of, suffix_lines, validate_type
from .witness import DEFAULT_ATTEMPTS, discrete_log_pow2, validate_witness, witness_schedule

log = logging.getLogger(__name__)

CHECKPOINT_VERSION = "v1"
DEFAULT_SPLIT_DEPTH = 12


@dataclass(frozen=True)
class Classification:
    sigma: str
    c: int
    modulus: int
    a_first: int
    perm_first: Permutation
    perm_asymptotic: Permutation

    @property
    def perm_count(self) -> int:
        return 1 if self.perm_first == self.perm_asymptotic else 2

    @property
    def is_et(self) -> bool:
        return self.perm_count == 2

    @cached_property
    def x_max(self) -> Fraction | None:
        family = suffix_lines(self.sigma)
        return max_intersection_abscissa(family) if len(family) > 1 else None

    @property
    def period(self) -> int:
        return 2 * 3 ** self.sigma.count("u")

    def to_json(self) -> dict:
        return {
            "sigma": self.sigma,
            "c": self.c,
            "modulus": self.modulus,
            "a_first": self.a_first,
            "perm_first": list(self.perm_first),
            "perm_asymptotic": list(self.perm_asymptotic),
        }

    @classmethod
    def from_json(cls, obj: dict) -> Classification:
        return cls(
            obj["sigma"],
            obj["c"],
            obj["modulus"],
            obj["a_first"],
            tuple(obj["perm_first"]),
            tuple(obj["perm_asymptotic"]),
        )


def classify(sigma: str, attempts: int = DEFAULT_ATTEMPTS) -> Classification:
    sigma = validate_type(sigma)
    st = state_of(sigma)
    sched = witness_schedule(sigma)
    family = suffix_lines(sigma)
    bound = crude_abscissa_bound(sigma)
    asym = asymptotic_permutation(family)
    for j in range(attempts):
        a = sched.nth(j)
        if a >= max(4, bound.bit_length()):
            # A >= 16 never meets a power of two or a repeat inside the rebuilt
            # trace (those lead only to 4, 2, 1, never to the odd (A-1)/3), and
            # past every crossing the order is the slope order
            return Classification(sigma, st.cong.c, st.cong.modulus, a, asym, asym)
        report = validate_witness(sigma, a)
        if report:
            first = rank_permutation(report.values)
            return Classification(sigma, st.cong.c, st.cong.modulus, a, first, asym)
        log.debug("witness 2^%d for %s rejected: %s", a, sigma or "-", report.reason)
    raise NoValidWitnessWithinCap(f"no valid witness for {sigma or '-'} in {attempts} attempts")


@dataclass
class CensusRow:
    n: int
    total: int
    ets: list[Classification] = field(default_factory=list)

    @property
    def excess(self) -> int:
        return self.total - fibonacci(self.n)

    @property
    def et_count(self) -> int:
        return len(self.ets)

    def to_json(self) -> dict:
        return {
            "length": self.n,
            "total": self.total,
            "excess": self.excess,
            "ets": [e.to_json() for e in self.ets],
        }

    @classmethod
    def from_json(cls, obj: dict) -> CensusRow:
        return cls(obj["length"], obj["total"], [Classification.from_json(e) for e in obj["ets"]])


@lru_cache(maxsize=None)
def _fast_threshold(K: int) -> int:
    """Least ``a`` with ``a >= 4`` and ``2**a > 3**K``."""
    return max(4, (3**K).bit_length())


def _walk(sigma: str, p: int, K: int, b: int, c: int, remaining: int, acc: list) -> None:
    """Depth-first over all completions of ``sigma`` by ``remaining`` prepends.

    ``(p, K, b)`` is the affine form of sigma and ``c`` its residue modulo
    ``3**K``.  ``acc`` is ``[perm_total, ets]``.
    """
    M = 3**K
    if remaining == 0:
        a = discrete_log_pow2(c, K)
        if a >= _fast_threshold(K):
            acc[0] += 1
            return
        cl = classify(sigma)
        acc[0] += cl.perm_count
        if cl.is_et:
            acc[1].append(cl)
        return
    # prepend d: form doubles, residue unchanged
    _walk("d" + sigma, p + 1, K, 2 * b, c, remaining - 1, acc)
    if sigma and sigma[0] == "d":
        nb = b + M
        # lift c to modulus 3M: c + t*M with (c + t*M) * 2**p = nb (mod 3M)
        r = ((c << p) - nb) // M % 3
        t = -r * (1 if p % 2 == 0 else 2) % 3
        _walk("u" + sigma, p, K + 1, nb, c + t * M, remaining - 1, acc)


def _roots(m: int, depth: int) -> list[str]:
    """Subtree roots for type length ``m``, ordered colexicographically."""
    s = min(m, depth)
    return sorted(enumerate_types(s), key=lambda w: w[::-1])


def _run_task(task: tuple[str, int]) -> tuple[int, list[Classification]]:
    root, remaining = task
    st = state_of(root)
    acc: list = [0, []]
    _walk(root, st.form.p, st.form.q, st.form.b, st.cong.c, remaining, acc)
    return acc[0], acc[1]


def _run_task_scratch(task: tuple[str, int]) -> tuple[int, list[Classification]]:
    """Same contract as ``_run_task`` but classifies each completion from scratch."""
    root, remaining = task
    total, ets = 0, []
    for head in enumerate_types(remaining + 1) if remaining else [""]:
        # head supplies the prepended letters; its trailing d is dropped
        sigma = head[:-1] + root if remaining else root
        if "uu" in sigma:
            continue
        cl = classify(sigma)
        total += cl.perm_count
        if cl.is_et:
            ets.append(cl)
    return total, ets


def _lex(cl: Classification) -> str:
    return cl.sigma


class Checkpoint:
    """Single-writer JSON checkpoint: completed rows plus an intra-length cursor."""

    def __init__(self, path: str | os.PathLike, n_min: int, n_max: int, depth: int):
        self.path = os.fspath(path)
        self.params = {"n_min": n_min, "n_max": n_max, "split_depth": depth}
        self.completed: list[CensusRow] = []
        self.current: int | None = None
        self.cursor: str | None = None
        self.partial_total = 0
        self.partial_ets: list[Classification] = []

    def load(self) -> None:
        try:
            with open(self.path) as fh:
                data = json.load(fh)
        except FileNotFoundError:
            return
        except (OSError, ValueError) as exc:
            raise CheckpointError(f"cannot read checkpoint {self.path}: {exc}") from exc
        try:
            if data.get("version") != CHECKPOINT_VERSION:
                raise CheckpointError(f"unsupported checkpoint version {data.get('version')!r}")
            if data["params"] != self.params:
                raise CheckpointError(f"checkpoint parameters {data['params']} differ from {self.params}")
            self.completed = [CensusRow.from_json(r) for r in data["completed_lengths"]]
            self.current = data["current_length"]
            self.cursor = data["cursor_sigma"]
            self.partial_total = data["partial"]["total"]
            self.partial_ets = [Classification.from_json(e) for e in data["partial"]["ets"]]
        except (KeyError, TypeError, AttributeError) as exc:
            raise CheckpointError(f"malformed checkpoint {self.path}: {exc}") from exc

    def save(self) -> None:
        data = {
            "version": CHECKPOINT_VERSION,
            "params": self.params,
            "completed_lengths": [r.to_json() for r in self.completed],
            "current_length": self.current,
            "cursor_sigma": self.cursor,
            "partial": {"total": self.partial_total, "ets": [e.to_json() for e in self.partial_ets]},
        }
        tmp = self.path + ".tmp"
        with open(tmp, "w") as fh:
            json.dump(data, fh)
        os.replace(tmp, self.path)


def census(
    n_min: int,
    n_max: int,
    threads: int = 1,
    checkpoint: str | os.PathLike | None = None,
    split_depth: int = DEFAULT_SPLIT_DEPTH,
    progress: Callable[[CensusRow], None] | None = None,
    incremental: bool = True,
) -> list[CensusRow]:
    """Count Collatz permutations of every length in ``[n_min, n_max]``.

    ``incremental=False`` classifies every type from scratch; it exists to
    cross-check the prepend walk.
    """
    if not 1 <= n_min <= n_max:
        raise ValueError(f"need 1 <= n_min <= n_max, got {n_min}, {n_max}")
    ckpt = None
    if checkpoint is not None:
        ckpt = Checkpoint(checkpoint, n_min, n_max, split_depth)
        ckpt.load()
    rows: list[CensusRow] = list(ckpt.completed) if ckpt else []
    done = {r.n for r in rows}
    pool = ProcessPoolExecutor(threads) if threads > 1 else None
    try:
        for n in range(n_min, n_max + 1):
            if n in done:
                continue
            m = n - 1
            roots = _roots(m, split_depth)
            total, ets = 0, []
            if ckpt and ckpt.current == n and ckpt.cursor is not None:
                total, ets = ckpt.partial_total, list(ckpt.partial_ets)
                skip = ckpt.cursor[::-1]
                roots = [r for r in roots if r[::-1] > skip]
            tasks = [(r, m - len(r)) for r in roots]
            run = _run_task if incremental else _run_task_scratch
            results = pool.map(run, tasks) if pool else map(run, tasks)
            for (root, _), (t, e) in zip(tasks, results):
                total += t
                ets.extend(e)
                if ckpt:
                    ckpt.current, ckpt.cursor = n, root
                    ckpt.partial_total, ckpt.partial_ets = total, ets
                    ckpt.save()
            row = CensusRow(n, total, sorted(ets, key=_lex))
            rows.append(row)
            if ckpt:
                ckpt.completed.append(row)
                ckpt.current, ckpt.cursor, ckpt.partial_total, ckpt.partial_ets = None, None, 0, []
                ckpt.save()
            if progress:
                progress(row)
    finally:
        if pool:
            pool.shutdown()
    return sorted(rows, key=lambda r: r.n)


def et_list(m: int, threads: int = 1) -> list[Classification]:
    """All excess-creating types of length ``m``, in lexicographic order."""
    return census(m + 1, m + 1, threads=threads)[0].ets


def check_prepend_closure(ets: Iterable[Classification | str]) -> list[str]:
    """Types whose d-prefixed extension fails to be an ET (empty means pass)."""
    bad = []
    for e in ets:
        sigma = e if isinstance(e, str) else e.sigma
        if not classify("d" + sigma).is_et:
            bad.append(sigma)
    return bad


def c_residue_report(ets: Iterable[Classification]) -> dict[str, Counter]:
    ets = list(ets)
    return {
        "c": Counter(e.c for e in ets),
        "c_mod_729": Counter(e.c % 729 for e in ets),
    }


def brute_force_census(n_max: int, x_limit: int) -> dict[int, set[Permutation]]:
    """Distinct permutations C(x) of length <= n_max over 1 <= x <= x_limit.

    Iteration stops as soon as a trace outgrows ``n_max``, so no start value
    can run into the divergence guard.
    """
    if x_limit < 2:
        raise ValueError("x_limit must be at least 2")
    buckets: dict[int, set[Permutation]] = {n: set() for n in range(1, n_max + 1)}
    for x in range(1, x_limit + 1):
        if is_power_of_two(x):
            continue
        vals = [x]
        y = x
        while True:
            y = y >> 1 if y & 1 == 0 else 3 * y + 1
            if y > 1 and y & (y - 1) == 0:
                break
            vals.append(y)
            if len(vals) > n_max:
                vals = None
                break
        if vals is not None:
            buckets[len(vals)].add(rank_permutation(vals))
    return buckets


def analytic_permutations(n: int) -> set[Permutation]:
    """Every Collatz permutation of length ``n``, derived from the types."""
    out: set[Permutation] = set()
    for sigma in enumerate_types(n - 1):
        cl = classify(sigma)
        out.add(cl.perm_first)
        out.add(cl.perm_asymptotic)
    return out


def to_csv(rows: Iterable[CensusRow]) -> str:
    lines = ["length,total,excess"]
    lines += [f"{r.n},{r.total},{r.excess}" for r in rows]
    return "\n".join(lines) + "\n"


def to_json(rows: Iterable[CensusRow]) -> str:
    return json.dumps([r.to_json() for r in rows], indent=2) + "\n"
