"""Type grammar, enumeration, and exact composition of the inverse maps.

The inverse steps are ``U(x) = (x - 1)/3`` and ``D(x) = 2x``.  A type ``sigma``
with a ``U`` appended (written Sigma) rebuilds a trace backwards from its
terminating power of two ``A``; every suffix composition of Sigma is an affine
map ``t -> (2**p * t - b) / 3**q`` stored unreduced as ``AffineForm(p, q, b)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple

from .errors import ConsecutiveUps, DoesNotEndInD, InvalidExtension, InvalidType


class AffineForm(NamedTuple):
    p: int
    q: int
    b: int

    def apply_d(self) -> AffineForm:
        return AffineForm(self.p + 1, self.q, 2 * self.b)

    def apply_u(self) -> AffineForm:
        return AffineForm(self.p, self.q + 1, self.b + 3**self.q)

    def apply(self, letter: str) -> AffineForm:
        return self.apply_d() if letter == "d" else self.apply_u()

    def numerator_at(self, t: int) -> int:
        return (t << self.p) - self.b

    def is_integral_at(self, t: int) -> bool:
        return self.numerator_at(t) % 3**self.q == 0

    def evaluate(self, t: int):
        """Exact value at integer ``t``: an int when integral, else a Fraction."""
        num, den = self.numerator_at(t), 3**self.q
        if num % den == 0:
            return num // den
        from fractions import Fraction

        return Fraction(num, den)

    def __str__(self) -> str:
        return f"({2**self.p}A - {self.b})/{3**self.q}"


UNIT = AffineForm(0, 1, 1)  # U alone: (A - 1)/3


class Congruence(NamedTuple):
    """``A = c (mod modulus)`` with ``modulus = 3**(k+1)``."""

    c: int
    modulus: int

    @property
    def exponent(self) -> int:
        return _log3(self.modulus)

    def __str__(self) -> str:
        return f"{self.c} mod {self.modulus}"


def _log3(n: int) -> int:
    e = 0
    while n > 1:
        n, r = divmod(n, 3)
        if r:
            raise ValueError("not a power of three")
        e += 1
    return e


def validate_type(word: str) -> str:
    bad = set(word) - {"u", "d"}
    if bad:
        raise InvalidType(f"type {word!r} contains letters other than u and d: {sorted(bad)}")
    if "uu" in word:
        raise ConsecutiveUps(f"type {word!r} contains two consecutive u's")
    if word and word[-1] != "d":
        raise DoesNotEndInD(f"type {word!r} must end in d")
    return word


def enumerate_types(m: int) -> Iterator[str]:
    """All valid types of length ``m`` in lexicographic order, d before u."""
    if m < 0:
        raise ValueError("length must be nonnegative")
    if m == 0:
        yield ""
        return

    def extend(prefix: str, last: str) -> Iterator[str]:
        left = m - len(prefix)
        if left == 1:
            yield prefix + "d"
            return
        yield from extend(prefix + "d", "d")
        if last != "u":
            yield from extend(prefix + "u", "u")

    yield from extend("", "")


def fibonacci(n: int) -> int:
    if n < 1:
        raise ValueError("fibonacci is indexed from 1")
    a, b = 1, 1
    for _ in range(n - 2):
        a, b = b, a + b
    return b if n > 1 else a


def sigma_to_affine(sigma: str) -> AffineForm:
    form = UNIT
    for letter in reversed(sigma):
        form = form.apply(letter)
    return form


@dataclass(frozen=True)
class LineFamily:
    """Suffix compositions of Sigma; ``lines[i - 1]`` is trace position ``i``."""

    sigma: str
    lines: tuple[AffineForm, ...]

    def __len__(self) -> int:
        return len(self.lines)

    def position(self, i: int) -> AffineForm:
        return self.lines[i - 1]


def suffix_lines(sigma: str) -> LineFamily:
    out = [UNIT]
    for letter in reversed(sigma):
        out.append(out[-1].apply(letter))
    out.reverse()
    return LineFamily(sigma, tuple(out))


def congruence_of(form: AffineForm) -> Congruence:
    modulus = 3**form.q
    c = form.b * pow(2, -form.p, modulus) % modulus
    return Congruence(c, modulus)


def congruence(sigma: str) -> Congruence:
    return congruence_of(sigma_to_affine(sigma))


class TypeState(NamedTuple):
    """A type together with its full affine form and integrality congruence."""

    sigma: str
    form: AffineForm
    cong: Congruence


def initial_state() -> TypeState:
    return TypeState("", UNIT, Congruence(1, 3))


def state_of(sigma: str) -> TypeState:
    form = sigma_to_affine(sigma)
    return TypeState(sigma, form, congruence_of(form))


def prepend(state: TypeState, letter: str) -> TypeState:
    """Prepend one letter, updating form and congruence incrementally."""
    sigma, form, (c, modulus) = state
    if letter == "d":
        # b and 2**p both double, so b / 2**p is unchanged
        return TypeState("d" + sigma, form.apply_d(), Congruence(c, modulus))
    if letter != "u":
        raise InvalidExtension(f"cannot prepend {letter!r}")
    if not sigma or sigma[0] == "u":
        raise InvalidExtension(f"prepending u to {sigma or 'the empty type'!r} gives an invalid type")
    new = form.apply_u()
    big = 3 * modulus
    # lift c to the next power of three: exactly one of c, c + M, c + 2M works
    target = new.b % big
    lifted = next(
        cand for cand in (c, c + modulus, c + 2 * modulus) if (cand << new.p) % big == target
    )
    return TypeState("u" + sigma, new, Congruence(lifted, big))
