"""Divisibility laws of the Pell u- and v-sequences, and primitive divisors.

The lemma checkers return a list of :class:`LemmaViolation`; an empty list
means the law held for every index examined.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .arith import DomainError, factor_partial, factorize, is_perfect_square
from .pell import check_d, solutions

__all__ = [
    "LemmaId",
    "LemmaViolation",
    "PrimitiveDivisorSet",
    "check_carmichael",
    "check_lemma1",
    "check_lemma3",
    "indices_without_primitive_divisor",
    "nonsquares",
    "primitive_divisors",
    "primitive_part",
]

# Effort limits for factoring u_k in the mod-8 check; whatever rho cannot
# split within the budget is certified through a square root of 2 instead.
LEMMA1_TRIAL_LIMIT = 10**4
LEMMA1_RHO_BUDGET = 20_000


class LemmaId(str, enum.Enum):
    L1P1 = "L1P1"
    L1P2 = "L1P2"
    L1P3 = "L1P3"
    L3 = "L3"
    CARMICHAEL = "CARMICHAEL"


@dataclass(frozen=True)
class LemmaViolation:
    lemma_id: LemmaId
    d: int
    k: int
    detail: str

    def to_json(self) -> dict:
        return {"lemma": self.lemma_id.value, "d": str(self.d), "k": str(self.k), "detail": self.detail}


@dataclass(frozen=True)
class PrimitiveDivisorSet:
    d: int
    n: int
    primes: tuple[int, ...]

    def to_json(self) -> dict:
        return {"d": str(self.d), "n": str(self.n), "primes": [str(p) for p in self.primes]}


def nonsquares(d_max: int, d_min: int = 2) -> list[int]:
    return [d for d in range(max(d_min, 2), d_max + 1) if is_perfect_square(d) is None]


def _mod8_violations(d: int, k: int, u_k: int, u_half: int) -> list[LemmaViolation]:
    """Check that every prime factor of u_k (k even) is +-1 mod 8."""
    out = []
    primes, stuck = factor_partial(u_k, LEMMA1_TRIAL_LIMIT, LEMMA1_RHO_BUDGET)
    for p in sorted(primes):
        if p % 8 not in (1, 7):
            out.append(LemmaViolation(LemmaId.L1P1, d, k, f"prime {p} | u_{k} has p = {p % 8} mod 8"))
    for c in stuck:
        # s^2 = 2 mod c puts 2 among the squares mod every prime of c,
        # which for odd primes means p = +-1 mod 8.
        s = pow(u_half, -1, c) if math.gcd(u_half, c) == 1 else None
        if c % 2 == 0 or s is None or s * s % c != 2:
            out.append(LemmaViolation(
                LemmaId.L1P1, d, k, f"unfactored cofactor {c} of u_{k} has no certified square root of 2"))
    return out


def check_lemma1(d: int, k_max: int) -> list[LemmaViolation]:
    """Check the three divisibility properties of u_1..u_k_max.

    * k even: every prime factor of u_k is 1 or 7 mod 8;
    * k odd: u_1 divides u_k with an odd quotient;
    * q in (2, 3, 5): q | u_k forces q | u_1.
    """
    check_d(d)
    us = [None] + [p.u for p in solutions(d, max(k_max, 1))]
    u1 = us[1]
    out = []
    for k in range(1, k_max + 1):
        u = us[k]
        if k % 2 == 0:
            out += _mod8_violations(d, k, u, us[k // 2])
        else:
            if u % u1:
                out.append(LemmaViolation(LemmaId.L1P2, d, k, f"u_1 = {u1} does not divide u_{k}"))
            elif (u // u1) % 2 == 0:
                out.append(LemmaViolation(LemmaId.L1P2, d, k, f"u_{k}/u_1 = {u // u1} is even"))
        for q in (2, 3, 5):
            if u % q == 0 and u1 % q:
                out.append(LemmaViolation(LemmaId.L1P3, d, k, f"prime {q} divides u_{k} but not u_1 = {u1}"))
    return out


def check_lemma3(d: int, k_max: int) -> list[LemmaViolation]:
    """When both parities occur in u_1..u_k_max, even terms sit at odd indices
    and odd terms at even indices."""
    check_d(d)
    parity = [p.u % 2 for p in solutions(d, k_max)]
    if len(set(parity)) < 2:
        return []
    out = []
    for k, bit in enumerate(parity, start=1):
        if bit == 0 and k % 2 == 0:
            out.append(LemmaViolation(LemmaId.L3, d, k, f"u_{k} is even at even index {k}"))
        elif bit == 1 and k % 2 == 1:
            out.append(LemmaViolation(LemmaId.L3, d, k, f"u_{k} is odd at odd index {k}"))
    return out


def _vs(d: int, n: int) -> list[int]:
    return [p.v for p in solutions(d, n)]


def _strip(r: int, vs: list[int]) -> int:
    for v in vs:
        g = math.gcd(r, v)
        while g > 1:
            r //= g
            g = math.gcd(r, g)
    return r


def primitive_part(d: int, n: int) -> int:
    """v_n with every prime that divides some v_m (m < n) removed.

    Its prime factors are exactly the primitive divisors of v_n, so it is 1
    precisely when v_n has none. Only gcds are needed, no factoring.
    """
    check_d(d)
    if n < 1:
        raise DomainError(f"index must be >= 1, got {n}")
    vs = _vs(d, n)
    return _strip(vs[-1], vs[:-1])


def primitive_divisors(d: int, n: int) -> PrimitiveDivisorSet:
    """All primes dividing v_n and no earlier v_m.

    Factors the primitive part of v_n, then re-checks each prime against
    v_1..v_n by direct division.
    """
    check_d(d)
    if n < 1:
        raise DomainError(f"index must be >= 1, got {n}")
    vs = _vs(d, n)
    r = _strip(vs[-1], vs[:-1])
    primes = tuple(factorize(r).primes) if r > 1 else ()
    for p in primes:
        assert vs[-1] % p == 0 and all(v % p for v in vs[:-1]), (d, n, p)
    return PrimitiveDivisorSet(d, n, primes)


def indices_without_primitive_divisor(d: int, n_max: int) -> list[int]:
    """Indices n <= n_max at which v_n has no primitive divisor."""
    check_d(d)
    vs = _vs(d, n_max)
    return [n for n in range(1, n_max + 1) if _strip(vs[n - 1], vs[: n - 1]) == 1]


def check_carmichael(d: int, n_max: int, bound: int = 6) -> list[LemmaViolation]:
    """Every v_n with bound < n <= n_max must have a primitive divisor.

    Gaps at n <= bound are allowed; see indices_without_primitive_divisor.
    """
    check_d(d)
    if n_max <= bound:
        raise DomainError(f"n_max must exceed the bound {bound}, got {n_max}")
    return [
        LemmaViolation(LemmaId.CARMICHAEL, d, n, f"v_{n} has no primitive prime divisor")
        for n in indices_without_primitive_divisor(d, n_max)
        if n > bound
    ]
