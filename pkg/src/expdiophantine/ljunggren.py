"""Bounded search for x^p = 2*y^2 - 1."""

from __future__ import annotations

from dataclasses import dataclass

from .arith import DomainError, iroot, is_prime

__all__ = ["LjunggrenSolution", "default_y_max", "search_ljunggren"]


@dataclass(frozen=True)
class LjunggrenSolution:
    p: int
    x: int
    y: int

    def __post_init__(self):
        if self.x < 1 or self.y < 1 or self.x**self.p != 2 * self.y * self.y - 1:
            raise ValueError(f"{self.x}^{self.p} != 2*{self.y}^2 - 1")

    def to_json(self) -> dict:
        return {"p": str(self.p), "x": str(self.x), "y": str(self.y)}


def default_y_max(p: int) -> int:
    return 10**6 if p == 3 else 10**5


def search_ljunggren(p: int, y_max: int, y_min: int = 1) -> list[LjunggrenSolution]:
    """All (x, y) with x^p = 2y^2 - 1 and y_min <= y <= y_max, ascending in y.

    2y^2 - 1 grows with y, so the floor p-th root x is tracked incrementally
    rather than re-extracted for every y.
    """
    if p < 3 or not is_prime(p):
        raise DomainError(f"exponent must be an odd prime, got {p}")
    if y_max < 1:
        raise DomainError(f"y_max must be >= 1, got {y_max}")
    y = max(y_min, 1)
    x = iroot(2 * y * y - 1, p)
    nxt = (x + 1) ** p
    out = []
    while y <= y_max:
        t = 2 * y * y - 1
        while nxt <= t:
            x += 1
            nxt = (x + 1) ** p
        if x**p == t:
            out.append(LjunggrenSolution(p, x, y))
        y += 1
    return out
