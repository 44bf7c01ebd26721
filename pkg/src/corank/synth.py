"""Realizability of (dimension, co-rank, b1) and explicit witness manifolds."""

from __future__ import annotations

from dataclasses import dataclass

from .expr import (
    Harvey,
    ManifoldExpr,
    NonorientableSurface,
    OrientableSurface,
    Point,
    Product,
    Sphere,
    conn_sum,
)


@dataclass(frozen=True)
class SynthesisTarget:
    n: int
    b_prime: int
    b: int
    require_orientable: bool = False

    def __post_init__(self) -> None:
        if min(self.n, self.b_prime, self.b) < 0:
            raise ValueError(f"target entries must be non-negative: {self}")


@dataclass(frozen=True)
class Feasibility:
    """Verdict with a human-readable reason; truthy when feasible."""

    ok: bool
    reason: str

    def __bool__(self) -> bool:
        return self.ok


class Infeasible(ValueError):
    def __init__(self, reason: str) -> None:
        super().__init__(reason)
        self.reason = reason


def feasible(t: SynthesisTarget) -> Feasibility:
    n, bp, b = t.n, t.b_prime, t.b
    if n >= 3:
        if bp == b == 0 or 1 <= bp <= b:
            return Feasibility(True, f"n={n}: b'=b=0 or 1<=b'<=b holds")
        if bp == 0:
            return Feasibility(False, f"b1'=0 iff b1=0, but b'=0 and b={b}")
        return Feasibility(False, f"b' <= b violated: b'={bp} > b={b}")
    if n == 2:
        want = (b + 1) // 2
        if bp != want:
            return Feasibility(False, f"n=2 requires b'=floor((b+1)/2)={want}, got b'={bp}")
        if t.require_orientable and b % 2:
            return Feasibility(False, "n=2 orientable requires b even")
        return Feasibility(True, f"n=2: b'=floor((b+1)/2)={want}")
    if n == 1:
        if bp == b == 1:
            return Feasibility(True, "n=1: the circle")
        return Feasibility(False, f"n=1 requires b'=b=1, got b'={bp}, b={b}")
    if bp == b == 0:
        return Feasibility(True, "n=0: the point")
    return Feasibility(False, f"n=0 requires b'=b=0, got b'={bp}, b={b}")


def choose_partition(b_prime: int, b: int) -> list[int]:
    """Split ``b`` into ``b_prime`` positive parts: one large part, the rest ones."""
    if not 1 <= b_prime <= b:
        raise ValueError(f"need 1 <= b' <= b, got b'={b_prime}, b={b}")
    return [b - b_prime + 1] + [1] * (b_prime - 1)


def h_block(n: int, k: int) -> ManifoldExpr:
    """Orientable ``n``-manifold with co-rank 1 and ``b1 = k``."""
    if n < 3 or k < 1:
        raise ValueError(f"need n >= 3 and k >= 1, got n={n}, k={k}")
    if k == 1:
        return Product((Sphere(1), Sphere(n - 1)))
    if n == 3:
        return Harvey(k)
    if n == 4:
        return Product((Harvey(k - 1), Sphere(1)))
    return Product((Harvey(k), Sphere(n - 3)))


def construct(t: SynthesisTarget) -> ManifoldExpr:
    """Witness manifold for a feasible target, orientable whenever that is possible.

    Raises:
        Infeasible: with the violated condition as its reason.
    """
    verdict = feasible(t)
    if not verdict:
        raise Infeasible(verdict.reason)
    if t.n == 0:
        return Point()
    if t.n == 1:
        return Sphere(1)
    if t.n == 2:
        return OrientableSurface(t.b // 2) if t.b % 2 == 0 else NonorientableSurface(t.b + 1)
    if t.b == 0:
        return Sphere(t.n)
    return conn_sum(*(h_block(t.n, k) for k in choose_partition(t.b_prime, t.b)))
