"""Morse form foliation plans with prescribed minimal components and compact leaves.

A plan is a symbolic blueprint: a list of connected summands, each tagged
with the kind of foliation it carries and its contribution ``(m_i, c_i)``.
Connected sums of foliated summands add both counts, so the totals of a
plan are the sums over its summands.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .expr import ConnSum, ManifoldExpr, Product, Sphere, conn_sum, render
from .synth import Feasibility, Infeasible, h_block

C_PLUS_M = "m + c <= b'"
C_PLUS_2M = "2m + c <= b"
BETTI_RANGE = "b' = b = 0 or 1 <= b' <= b"
SURFACE_GENUS = "b = 2b'"


class FoliationKind(enum.Enum):
    # dense leaves filling the summand
    MINIMAL_COMPONENT = "MinimalComponent"
    # all leaves compact, form pulled back from the circle; one independent leaf
    COMPACT_FIBRATION = "CompactFibration"
    # centers and conic points only, every compact leaf null-homologous
    TRIVIAL_CENTERED = "TrivialCentered"
    IRRATIONAL_WINDING = "IrrationalWinding"

    @property
    def contribution(self) -> tuple[int, int]:
        return _CONTRIBUTION[self]


_CONTRIBUTION = {
    FoliationKind.MINIMAL_COMPONENT: (1, 0),
    FoliationKind.COMPACT_FIBRATION: (0, 1),
    FoliationKind.TRIVIAL_CENTERED: (0, 0),
    FoliationKind.IRRATIONAL_WINDING: (1, 0),
}


@dataclass(frozen=True)
class FoliationTarget:
    n: int
    m: int
    c: int
    b_prime: int
    b: int

    def __post_init__(self) -> None:
        if min(self.m, self.c, self.b_prime, self.b) < 0:
            raise ValueError(f"target entries must be non-negative: {self}")
        if self.n < 2:
            raise ValueError(f"foliation targets need n >= 2, got n={self.n}")


@dataclass(frozen=True)
class Summand:
    expr: ManifoldExpr
    kind: FoliationKind

    @property
    def m_i(self) -> int:
        return self.kind.contribution[0]

    @property
    def c_i(self) -> int:
        return self.kind.contribution[1]


@dataclass(frozen=True)
class FoliationPlan:
    summands: tuple[Summand, ...]

    @property
    def m(self) -> int:
        return sum(s.m_i for s in self.summands)

    @property
    def c(self) -> int:
        return sum(s.c_i for s in self.summands)

    @property
    def ambient(self) -> ManifoldExpr:
        pieces = []
        for s in self.summands:
            pieces.extend(s.expr.children if isinstance(s.expr, ConnSum) else (s.expr,))
        return conn_sum(*pieces)

    def to_json(self) -> dict:
        return {
            "ambient": render(self.ambient),
            "summands": [
                {"expr": render(s.expr), "kind": s.kind.value, "m_i": s.m_i, "c_i": s.c_i}
                for s in self.summands
            ],
            "m": self.m,
            "c": self.c,
        }


def violated_inequalities(t: FoliationTarget) -> list[str]:
    """Names of every realizability condition the target breaks."""
    out = []
    if t.n == 2:
        if t.b != 2 * t.b_prime:
            out.append(SURFACE_GENUS)
    elif not (t.b_prime == t.b == 0 or 1 <= t.b_prime <= t.b):
        out.append(BETTI_RANGE)
    if t.m + t.c > t.b_prime:
        out.append(C_PLUS_M)
    if 2 * t.m + t.c > t.b:
        out.append(C_PLUS_2M)
    return out


def feasible_foliation(t: FoliationTarget) -> Feasibility:
    bad = violated_inequalities(t)
    if bad:
        return Feasibility(False, "violated: " + "; ".join(bad))
    return Feasibility(True, "all inequalities hold")


def _torus() -> ManifoldExpr:
    return Product((Sphere(1), Sphere(1)))


def plan(t: FoliationTarget) -> FoliationPlan:
    """Summand-by-summand foliation plan for a feasible target.

    Raises:
        Infeasible: naming the violated inequalities.
    """
    verdict = feasible_foliation(t)
    if not verdict:
        raise Infeasible(verdict.reason)
    n, m, c, bp, b = t.n, t.m, t.c, t.b_prime, t.b
    K = FoliationKind

    if n == 2:
        if bp == 0:
            return FoliationPlan((Summand(Sphere(2), K.TRIVIAL_CENTERED),))
        kinds = [K.IRRATIONAL_WINDING] * m + [K.COMPACT_FIBRATION] * c + [K.TRIVIAL_CENTERED] * (bp - m - c)
        return FoliationPlan(tuple(Summand(_torus(), k) for k in kinds))

    if b == 0:
        return FoliationPlan((Summand(Sphere(n), K.TRIVIAL_CENTERED),))

    one = h_block(n, 1)
    spare = b - bp  # how much b1 beyond one per summand has to be placed
    if spare >= m and m > 0:
        parts = [2] * (m - 1) + [spare - m + 2]
        summands = [Summand(h_block(n, k), K.MINIMAL_COMPONENT) for k in parts]
        summands += [Summand(one, K.COMPACT_FIBRATION)] * c
        summands += [Summand(one, K.TRIVIAL_CENTERED)] * (bp - m - c)
    elif spare >= m:
        # m = 0: a single block absorbs the spare b1; it carries a compact
        # leaf only when every summand has to
        summands = []
        if spare:
            big = h_block(n, spare + 1)
            summands.append(Summand(big, K.COMPACT_FIBRATION if c == bp else K.TRIVIAL_CENTERED))
            c -= summands[0].c_i
        rest = bp - len(summands)
        summands += [Summand(one, K.COMPACT_FIBRATION)] * c
        summands += [Summand(one, K.TRIVIAL_CENTERED)] * (rest - c)
    else:
        doubled = m - spare
        summands = [Summand(h_block(n, 2), K.MINIMAL_COMPONENT)] * spare
        summands += [Summand(conn_sum(one, one), K.MINIMAL_COMPONENT)] * doubled
        summands += [Summand(one, K.COMPACT_FIBRATION)] * c
        summands += [Summand(one, K.TRIVIAL_CENTERED)] * (bp - spare - 2 * doubled - c)
    return FoliationPlan(tuple(summands))


class Verdict(enum.Enum):
    FIRST_STRONGER = "FirstStronger"
    INDEPENDENT = "Independent"
    SECOND_STRONGER = "SecondStronger"
    EQUIVALENT = "Equivalent"

    @property
    def binding(self) -> str:
        return {
            Verdict.FIRST_STRONGER: C_PLUS_M,
            Verdict.SECOND_STRONGER: C_PLUS_2M,
            Verdict.INDEPENDENT: f"{C_PLUS_M} and {C_PLUS_2M} (independent)",
            Verdict.EQUIVALENT: f"{C_PLUS_M} and {C_PLUS_2M} (equivalent)",
        }[self]


def _sign_verdict(diff: int) -> Verdict:
    if diff > 0:
        return Verdict.FIRST_STRONGER
    if diff < 0:
        return Verdict.SECOND_STRONGER
    return Verdict.EQUIVALENT


def compare_bounds(b_prime: int, b: int, m: Optional[int] = None, c: Optional[int] = None) -> Verdict:
    """Which of ``m + c <= b'`` and ``2m + c <= b`` constrains more.

    In the middle range ``b/2 < b' < b`` the answer depends on the other
    count: a given ``m`` is compared with ``b - b'``, otherwise a given ``c``
    with ``2b' - b``. When both are given ``m`` decides.
    """
    if not 0 <= b_prime <= b or b == 0:
        raise ValueError(f"need 0 <= b' <= b and not b' = b = 0, got b'={b_prime}, b={b}")
    if 2 * b_prime <= b:
        return Verdict.FIRST_STRONGER
    if b_prime == b:
        return Verdict.SECOND_STRONGER
    if m is not None:
        return _sign_verdict((b - b_prime) - m)
    if c is not None:
        return _sign_verdict(c - (2 * b_prime - b))
    return Verdict.INDEPENDENT
