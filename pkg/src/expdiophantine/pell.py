"""Solutions of the Pell equation u^2 - d*v^2 = 1."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .arith import DomainError, is_perfect_square, isqrt

__all__ = [
    "PellFundamental",
    "PellPoint",
    "check_d",
    "fundamental_solution",
    "index_of_u",
    "iter_solutions",
    "solution_at",
    "solutions",
]


@dataclass(frozen=True)
class PellFundamental:
    d: int
    u1: int
    v1: int

    def __post_init__(self):
        if self.u1 * self.u1 - self.d * self.v1 * self.v1 != 1 or self.v1 < 1:
            raise ValueError(f"({self.u1}, {self.v1}) does not solve u^2 - {self.d} v^2 = 1")


@dataclass(frozen=True)
class PellPoint:
    d: int
    k: int
    u: int
    v: int

    def __post_init__(self):
        if self.u * self.u - self.d * self.v * self.v != 1 or self.k < 1:
            raise ValueError(f"({self.u}, {self.v}) does not solve u^2 - {self.d} v^2 = 1")


def check_d(d: int) -> None:
    if d < 2 or is_perfect_square(d) is not None:
        raise DomainError(f"Pell equation degenerate for d={d}: need a non-square d >= 2")


def fundamental_solution(d: int) -> PellFundamental:
    """Smallest positive solution, from the continued fraction of sqrt(d).

    Runs the integer-only PQa recurrence and returns the first convergent
    h/k with h^2 - d*k^2 = +1.
    """
    check_d(d)
    a0 = isqrt(d)
    m, q, a = 0, 1, a0
    h_prev, h = 1, a0
    k_prev, k = 0, 1
    while h * h - d * k * k != 1:
        m = a * q - m
        q = (d - m * m) // q
        a = (a0 + m) // q
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
    return PellFundamental(d, h, k)


def iter_solutions(d: int) -> Iterator[PellPoint]:
    """Yield (u_k, v_k) for k = 1, 2, ... without end."""
    f = fundamental_solution(d)
    u, v = f.u1, f.v1
    k = 1
    while True:
        yield PellPoint(d, k, u, v)
        u, v = f.u1 * u + d * f.v1 * v, f.u1 * v + f.v1 * u
        k += 1


def solutions(d: int, k_max: int) -> list[PellPoint]:
    """The first k_max solutions, indices 1..k_max."""
    out = []
    for point in iter_solutions(d):
        if point.k > k_max:
            break
        out.append(point)
    return out


def solution_at(d: int, k: int) -> PellPoint:
    if k < 1:
        raise DomainError(f"Pell index must be >= 1, got {k}")
    return solutions(d, k)[-1]


def index_of_u(d: int, U: int) -> int | None:
    """The index k with u_k == U, or None. u_k is strictly increasing."""
    check_d(d)
    if U < 1:
        raise DomainError(f"U must be >= 1, got {U}")
    for point in iter_solutions(d):
        if point.u == U:
            return point.k
        if point.u > U:
            return None
    raise AssertionError("unreachable")
