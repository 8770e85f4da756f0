"""Exact integer primitives: roots, primality, factorization, square-free parts.

Everything works on Python ints, so there is no width limit anywhere.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache

__all__ = [
    "DomainError",
    "Factorization",
    "FactorizationIncomplete",
    "SquarefreeDecomposition",
    "factor_partial",
    "factorize",
    "iroot",
    "is_perfect_power",
    "is_perfect_square",
    "is_prime",
    "isqrt",
    "jacobi",
    "small_primes",
    "squarefree_decompose",
]

TRIAL_LIMIT = 10**5
# Number of random strong probable-prime rounds used above 2**64, on top of
# the fixed witness set and one strong Lucas round.
MR_ROUNDS = 40

# Bases 2..37 are a proven deterministic witness set for n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class FactorizationIncomplete(RuntimeError):
    pass


@dataclass(frozen=True)
class Factorization:
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1:
                raise ValueError(f"malformed factorization {self.factors!r}")
            last = p

    @property
    def value(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= p**e
        return out

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)

    def __str__(self):
        return " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)


@dataclass(frozen=True)
class SquarefreeDecomposition:
    d: int
    w: int

    @property
    def value(self) -> int:
        return self.d * self.w * self.w


@lru_cache(maxsize=None)
def small_primes(limit: int = TRIAL_LIMIT) -> tuple[int, ...]:
    """All primes <= limit, by a plain sieve of Eratosthenes."""
    if limit < 2:
        return ()
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def isqrt(n: int) -> int:
    if n < 0:
        raise DomainError("isqrt of a negative number")
    r = math.isqrt(n)
    assert r * r <= n < (r + 1) * (r + 1)
    return r


# Quadratic residues mod 64, 63 and 65; together these reject ~95% of
# non-squares before any root extraction.
_QR64 = frozenset(i * i % 64 for i in range(64))
_QR63 = frozenset(i * i % 63 for i in range(63))
_QR65 = frozenset(i * i % 65 for i in range(65))


def is_perfect_square(n: int) -> int | None:
    """Return r with r*r == n, or None if n is not a square."""
    if n < 0:
        return None
    if n & 63 not in _QR64 or n % 63 not in _QR63 or n % 65 not in _QR65:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def iroot(n: int, k: int) -> int:
    """Floor of the k-th root of n >= 0."""
    if k < 1:
        raise DomainError("root degree must be positive")
    if n < 0:
        raise DomainError("iroot of a negative number")
    if k == 1 or n < 2:
        return n
    if k == 2:
        return math.isqrt(n)
    # Newton from above: start at a power of two >= the true root.
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x**k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def is_perfect_power(n: int, k: int) -> int | None:
    """Return r with r**k == n, or None."""
    if n < 0:
        return None
    r = iroot(n, k)
    return r if r**k == n else None


def jacobi(a: int, n: int) -> int:
    if n <= 0 or n % 2 == 0:
        raise DomainError("Jacobi symbol needs an odd positive modulus")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _strong_probable_prime(n: int, base: int) -> bool:
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    x = pow(base, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _strong_lucas_probable_prime(n: int) -> bool:
    # Selfridge parameters: first D in 5, -7, 9, -11, ... with (D/n) = -1.
    if is_perfect_square(n) is not None:
        return False
    D = 5
    while True:
        j = jacobi(D, n)
        if j == -1:
            break
        if j == 0 and abs(D) != n:
            return False
        D = -D - 2 if D > 0 else -D + 2
    P, Q = 1, (1 - D) // 4

    d = n + 1
    s = (d & -d).bit_length() - 1
    d >>= s

    # Binary ladder computing U_d, V_d, Q^d mod n.
    U, V, Qk = 0, 2, 1
    inv2 = (n + 1) // 2
    for bit in bin(d)[2:]:
        U, V = U * V % n, (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if bit == "1":
            U, V = (P * U + V) * inv2 % n, (D * U + P * V) * inv2 % n
            Qk = Qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        V = (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if V == 0:
            return True
    return False


def is_prime(n: int) -> bool:
    """Primality test, exact below 2**64.

    Above 2**64 this is the fixed witness set, MR_ROUNDS strong probable-prime
    rounds with bases drawn from a generator seeded by n (so the verdict is
    reproducible), and one strong Lucas round.
    """
    if n < 2:
        return False
    for p in small_primes(1000):
        if n % p == 0:
            return n == p
    if n < 1000 * 1000:
        return True
    if not all(_strong_probable_prime(n, b) for b in _MR_BASES):
        return False
    if n < 1 << 64:
        return True
    rng = random.Random(n)
    for _ in range(MR_ROUNDS):
        if not _strong_probable_prime(n, rng.randrange(2, n - 1)):
            return False
    return _strong_lucas_probable_prime(n)


def _brent(n: int, c: int, budget: int | None) -> int | None:
    """One Pollard-rho run with Brent's cycle detection and batched gcds.

    Returns a non-trivial factor, n itself on a failed cycle, or None once
    budget iterations are spent.
    """
    y, r, q, g = 2, 1, 1, 1
    m = 128
    spent = 0
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += m
        spent += r
        r *= 2
        if budget is not None and spent > budget and g == 1:
            return None
    if g == n:
        while True:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
            if g > 1:
                break
    return g


def _split(n: int, budget: int | None) -> int | None:
    """A non-trivial factor of composite n, or None if the budget ran out."""
    for c in range(1, 64):
        g = _brent(n, c, budget)
        if g is None:
            return None
        if 1 < g < n:
            return g
    raise FactorizationIncomplete(f"rho failed on {n}")  # pragma: no cover


def factor_partial(
    n: int, trial_limit: int = TRIAL_LIMIT, rho_budget: int | None = None
) -> tuple[dict[int, int], list[int]]:
    """Factor n as far as the effort limits allow.

    Returns (primes, cofactors): primes maps each proven prime factor to its
    exponent; cofactors lists the composite parts that rho could not split
    within rho_budget iterations. With rho_budget=None cofactors is empty.
    """
    if n < 1:
        raise DomainError("can only factor positive integers")
    found: dict[int, int] = {}
    for p in small_primes(trial_limit):
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            found[p] = e
    stuck: list[int] = []
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        # cofactors carry no prime <= trial_limit, so below its square they are prime
        if m < trial_limit * trial_limit or is_prime(m):
            found[m] = found.get(m, 0) + 1
            continue
        root = is_perfect_square(m)
        if root is not None:
            stack += [root, root]
            continue
        g = _split(m, rho_budget)
        if g is None:
            stuck.append(m)
            continue
        stack += [g, m // g]
    return found, sorted(stuck)


def factorize(n: int) -> Factorization:
    """Complete prime factorization of n >= 2."""
    if n < 2:
        raise DomainError(f"factorize needs n >= 2, got {n}")
    found, _ = factor_partial(n)
    fac = Factorization(tuple(sorted(found.items())))
    assert fac.value == n
    return fac


def squarefree_decompose(n: int) -> SquarefreeDecomposition:
    """Write n = d * w**2 with d square-free."""
    if n < 1:
        raise DomainError(f"square-free decomposition needs n >= 1, got {n}")
    d = w = 1
    if n > 1:
        for p, e in factorize(n).factors:
            w *= p ** (e // 2)
            if e % 2:
                d *= p
    return SquarefreeDecomposition(d, w)
