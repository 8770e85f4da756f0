"""Evaluation, search and bounded verification for (a^n - 1)(b^n - 1) = x^2.

A solution forces a^n - 1 = D*y^2 and b^n - 1 = D*z^2 with
D = gcd(a^n - 1, b^n - 1) and x = D*y*z, because the two quotients by D are
coprime and multiply to a square. :func:`decompose` exposes that split, and
its failure is a checkable certificate that no solution exists.
"""

from __future__ import annotations

import enum
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable

from .arith import DomainError, is_perfect_power, is_perfect_square, is_prime

__all__ = [
    "Decomposition",
    "Obstruction",
    "ScopeTag",
    "SolutionCertificate",
    "VerificationReport",
    "DEFAULT_BOUNDS",
    "allowed",
    "decompose",
    "evaluate",
    "power_exponent",
    "scope_matches",
    "scope_pairs",
    "scope_theorem1",
    "scope_theorem2",
    "search",
    "verify_scope",
]

COHN_EXCEPTION = (frozenset({13, 239}), 4)
POWER_PAIR_EXCEPTIONS = frozenset({(2, 3, 2), (3, 1, 5), (7, 1, 4)})


class ScopeTag(str, enum.Enum):
    THM1_CASE1 = "thm1-case1"  # a = 2 mod 3, b = 0 mod 3
    THM1_CASE2 = "thm1-case2"  # a = 3 mod 4, b = 0 mod 2
    THM1_CASE3 = "thm1-case3"  # a = 4 mod 5, b = 0 mod 5
    THM2 = "thm2"  # a even, b prime, b = 3 mod 8
    COHN_4N = "cohn-4n"  # any pair, only n divisible by 4
    POWER_PAIR = "power-pair"  # b = a^k, k >= 2

    @property
    def is_theorem1(self) -> bool:
        return self in (ScopeTag.THM1_CASE1, ScopeTag.THM1_CASE2, ScopeTag.THM1_CASE3)


# (a_max, b_max, n_max) used when a sweep is requested without bounds.
DEFAULT_BOUNDS = {
    ScopeTag.THM1_CASE1: (40, 40, 12),
    ScopeTag.THM1_CASE2: (40, 40, 12),
    ScopeTag.THM1_CASE3: (40, 40, 12),
    ScopeTag.THM2: (40, 40, 12),
    ScopeTag.COHN_4N: (250, 250, 12),
    ScopeTag.POWER_PAIR: (1000, 10**6, 12),
}


@dataclass(frozen=True, order=True)
class SolutionCertificate:
    a: int
    b: int
    n: int
    x: int
    D: int
    y: int
    z: int

    def __post_init__(self):
        A, B = self.a**self.n - 1, self.b**self.n - 1
        ok = (
            min(self.a, self.b) >= 2
            and self.n >= 1
            and A * B == self.x * self.x
            and self.D == math.gcd(A, B)
            and A == self.D * self.y * self.y
            and B == self.D * self.z * self.z
            and self.x == self.D * self.y * self.z
        )
        if not ok:
            raise ValueError(f"invalid solution certificate {self!r}")

    def to_json(self) -> dict:
        return {k: str(getattr(self, k)) for k in ("a", "b", "n", "x", "D", "y", "z")}

    @classmethod
    def from_json(cls, obj: dict) -> "SolutionCertificate":
        return cls(**{k: int(obj[k]) for k in ("a", "b", "n", "x", "D", "y", "z")})


@dataclass(frozen=True)
class Decomposition:
    D: int
    y: int
    z: int


@dataclass(frozen=True)
class Obstruction:
    """(a^n - 1)/D or (b^n - 1)/D is not a square, so no x exists."""

    a: int
    b: int
    n: int
    D: int
    a_quotient_square: bool
    b_quotient_square: bool

    def __str__(self):
        bad = [s for s, ok in (("a", self.a_quotient_square), ("b", self.b_quotient_square)) if not ok]
        return f"({' and '.join(f'{s}^n-1' for s in bad)})/D is not a square, D={self.D}"

    def to_json(self) -> dict:
        return {
            "a": str(self.a), "b": str(self.b), "n": str(self.n), "D": str(self.D),
            "a_quotient_square": self.a_quotient_square,
            "b_quotient_square": self.b_quotient_square,
        }


def _check_args(a: int, b: int, n: int) -> None:
    if min(a, b) < 2:
        raise DomainError(f"need a, b >= 2, got a={a}, b={b}")
    if a == b:
        raise DomainError(f"need a != b, got a=b={a}")
    if n < 1:
        raise DomainError(f"need n >= 1, got n={n}")


def decompose(a: int, b: int, n: int) -> Decomposition | Obstruction:
    _check_args(a, b, n)
    A, B = a**n - 1, b**n - 1
    D = math.gcd(A, B)
    y = is_perfect_square(A // D)
    z = is_perfect_square(B // D)
    if y is None or z is None:
        return Obstruction(a, b, n, D, y is not None, z is not None)
    return Decomposition(D, y, z)


def evaluate(a: int, b: int, n: int) -> SolutionCertificate | None:
    """The certificate for (a, b, n) if the product is a square, else None."""
    _check_args(a, b, n)
    A, B = a**n - 1, b**n - 1
    x = is_perfect_square(A * B)
    if x is None:
        return None
    split = decompose(a, b, n)
    if isinstance(split, Obstruction):
        raise AssertionError(f"square product without a D-split at {(a, b, n)}")
    return SolutionCertificate(a, b, n, x, split.D, split.y, split.z)


def power_exponent(a: int, b: int) -> int | None:
    """k >= 2 with b == a**k, or None."""
    if a < 2 or b <= a:
        return None
    for k in range(2, b.bit_length() + 1):
        r = is_perfect_power(b, k)
        if r is not None and r == a:
            return k
        if a**k > b:
            break
    return None


def scope_matches(tag: ScopeTag, a: int, b: int) -> bool:
    """Whether the ordered pair (a, b) satisfies the hypothesis of tag."""
    if tag is ScopeTag.THM1_CASE1:
        return a % 3 == 2 and b % 3 == 0
    if tag is ScopeTag.THM1_CASE2:
        return a % 4 == 3 and b % 2 == 0
    if tag is ScopeTag.THM1_CASE3:
        return a % 5 == 4 and b % 5 == 0
    if tag is ScopeTag.THM2:
        return a % 2 == 0 and b % 8 == 3 and is_prime(b)
    if tag is ScopeTag.COHN_4N:
        return True
    if tag is ScopeTag.POWER_PAIR:
        return power_exponent(a, b) is not None
    raise ValueError(tag)


def scope_theorem1(a: int, b: int) -> ScopeTag | None:
    """The first Theorem-1 case (in case order) that (a, b) satisfies."""
    for tag in (ScopeTag.THM1_CASE1, ScopeTag.THM1_CASE2, ScopeTag.THM1_CASE3):
        if scope_matches(tag, a, b):
            return tag
    return None


def scope_theorem2(a: int, b: int) -> bool:
    return scope_matches(ScopeTag.THM2, a, b)


def allowed(tag: ScopeTag, cert: SolutionCertificate) -> bool:
    """Whether a solution found under tag is consistent with its result."""
    if tag.is_theorem1:
        return cert.n == 2
    if tag is ScopeTag.THM2:
        return False
    if tag is ScopeTag.COHN_4N:
        return cert.n % 4 != 0 or ({cert.a, cert.b}, cert.n) == COHN_EXCEPTION
    if tag is ScopeTag.POWER_PAIR:
        k = power_exponent(cert.a, cert.b)
        # the result only speaks about k*n > 2
        return k is None or k * cert.n <= 2 or (cert.a, cert.n, k) in POWER_PAIR_EXCEPTIONS
    raise ValueError(tag)


def scope_pairs(tag: ScopeTag, a_max: int, b_max: int) -> list[tuple[int, int]]:
    """Ordered pairs with 2 <= a <= a_max, 2 <= b <= b_max in the scope of tag.

    Theorem-1 and Theorem-2 hypotheses are asymmetric, so both orientations
    are tried; at most one can hold. Symmetric scopes use a < b.
    """
    if tag is ScopeTag.POWER_PAIR:
        out = []
        for a in range(2, a_max + 1):
            b = a * a
            while b <= b_max:
                out.append((a, b))
                b *= a
        return sorted(out)
    if tag is ScopeTag.COHN_4N:
        return [(a, b) for a in range(2, a_max + 1) for b in range(a + 1, b_max + 1)]
    return [
        (a, b)
        for a in range(2, a_max + 1)
        for b in range(2, b_max + 1)
        if a != b and scope_matches(tag, a, b)
    ]


def scope_exponents(tag: ScopeTag, n_max: int) -> list[int]:
    if tag is ScopeTag.COHN_4N:
        return list(range(4, n_max + 1, 4))
    return list(range(1, n_max + 1))


def _scan(pairs: list[tuple[int, int]], ns: list[int]) -> list[SolutionCertificate]:
    out = []
    for a, b in pairs:
        for n in ns:
            cert = evaluate(a, b, n)
            if cert is not None:
                out.append(cert)
    return out


def _sharded_scan(pairs: list[tuple[int, int]], ns: list[int], shards: int) -> list[SolutionCertificate]:
    """Scan pairs x ns, optionally over a process pool; the result is sorted,
    so it does not depend on how the pairs were split."""
    if shards < 1:
        raise DomainError(f"shards must be >= 1, got {shards}")
    if shards == 1 or len(pairs) < 2:
        found = _scan(pairs, ns)
    else:
        chunks = [pairs[i::shards] for i in range(shards)]
        with ProcessPoolExecutor(max_workers=shards) as pool:
            found = [c for part in pool.map(_scan, chunks, [ns] * shards) for c in part]
    return sorted(found)


def search(
    a_max: int,
    b_max: int,
    n_max: int,
    *,
    a_min: int = 2,
    b_min: int = 2,
    shards: int = 1,
) -> list[SolutionCertificate]:
    """All solutions with a_min <= a < b, a <= a_max, b_min <= b <= b_max and
    1 <= n <= n_max, ordered by (a, b, n)."""
    if min(a_max, b_max) < 2 or n_max < 1:
        raise DomainError("search bounds must be a_max, b_max >= 2 and n_max >= 1")
    pairs = [
        (a, b)
        for a in range(max(a_min, 2), a_max + 1)
        for b in range(max(b_min, a + 1), b_max + 1)
    ]
    return _sharded_scan(pairs, list(range(1, n_max + 1)), shards)


@dataclass
class VerificationReport:
    scope: ScopeTag
    bounds: tuple[int, int, int]
    expected_exceptions: list[SolutionCertificate] = field(default_factory=list)
    violations: list[SolutionCertificate] = field(default_factory=list)
    pairs_checked: int = 0
    instances_checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "scope": self.scope.value,
            "bounds": {k: str(v) for k, v in zip(("a_max", "b_max", "n_max"), self.bounds)},
            "expected_exceptions": [c.to_json() for c in self.expected_exceptions],
            "violations": [c.to_json() for c in self.violations],
            "pairs_checked": self.pairs_checked,
            "instances_checked": self.instances_checked,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, obj: dict) -> "VerificationReport":
        b = obj["bounds"]
        return cls(
            scope=ScopeTag(obj["scope"]),
            bounds=(int(b["a_max"]), int(b["b_max"]), int(b["n_max"])),
            expected_exceptions=[SolutionCertificate.from_json(c) for c in obj["expected_exceptions"]],
            violations=[SolutionCertificate.from_json(c) for c in obj["violations"]],
            pairs_checked=int(obj["pairs_checked"]),
            instances_checked=int(obj["instances_checked"]),
        )


def verify_scope(
    scope: ScopeTag,
    a_max: int | None = None,
    b_max: int | None = None,
    n_max: int | None = None,
    *,
    shards: int = 1,
) -> VerificationReport:
    """Scan every in-scope pair and classify each solution found.

    Solutions the relevant result permits (n = 2 under Theorem 1, the
    {13, 239} case under Cohn, the listed power-pair cases) are recorded as
    expected exceptions; anything else is a violation.
    """
    scope = ScopeTag(scope)
    da, db, dn = DEFAULT_BOUNDS[scope]
    bounds = (da if a_max is None else a_max, db if b_max is None else b_max, dn if n_max is None else n_max)
    if min(bounds[:2]) < 2 or bounds[2] < 1:
        raise DomainError("verification bounds must be a_max, b_max >= 2 and n_max >= 1")
    pairs = scope_pairs(scope, bounds[0], bounds[1])
    ns = scope_exponents(scope, bounds[2])
    report = VerificationReport(scope, bounds, pairs_checked=len(pairs), instances_checked=len(pairs) * len(ns))
    for cert in _sharded_scan(pairs, ns, shards):
        (report.expected_exceptions if allowed(scope, cert) else report.violations).append(cert)
    return report


def merge_reports(reports: Iterable[VerificationReport]) -> VerificationReport:
    """Combine reports of one scope computed over disjoint pair sets."""
    reports = list(reports)
    if not reports or len({(r.scope, r.bounds) for r in reports}) != 1:
        raise ValueError("can only merge reports sharing scope and bounds")
    first = reports[0]
    return VerificationReport(
        first.scope,
        first.bounds,
        sorted(c for r in reports for c in r.expected_exceptions),
        sorted(c for r in reports for c in r.violations),
        sum(r.pairs_checked for r in reports),
        sum(r.instances_checked for r in reports),
    )
