"""Property sweeps behind the ``sweep`` subcommand.

Each check takes the invariant function as a parameter so the harness can be
pointed at a deliberately broken calculus to prove it detects failures.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable

from . import expr as ex
from .foliation import FoliationTarget, Verdict, compare_bounds, feasible_foliation, plan
from .invariants import InvariantRecord, invariants
from .presentation import betti_from_presentation, presentation_of
from .sampling import random_expr
from .synth import SynthesisTarget, construct, feasible

InvariantFn = Callable[[ex.ManifoldExpr], InvariantRecord]


@dataclass(frozen=True)
class SweepBounds:
    max_n: int = 8
    max_b: int = 12
    samples: int = 200
    seed: int = 0


@dataclass
class CheckResult:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, msg: str) -> None:
        self.failures.append(msg)


def buggy_invariants(e: ex.ManifoldExpr) -> InvariantRecord:
    """Invariants with co-rank made additive under products (harness self-test)."""
    rec = invariants(e)
    if isinstance(e, ex.Product):
        kids = [buggy_invariants(c) for c in e.children]
        return InvariantRecord(rec.dim, rec.orientable, rec.b1, sum(k.b1_prime for k in kids))
    return rec


def check_roundtrip(bounds: SweepBounds, inv: InvariantFn) -> CheckResult:
    res = CheckResult("render/parse round-trip")
    rng = random.Random(bounds.seed)
    for _ in range(bounds.samples):
        e = random_expr(rng, max_depth=4)
        res.checked += 1
        back = ex.parse(ex.render(e))
        if ex.normalize(back) != ex.normalize(e):
            res.fail(ex.render(e))
    return res


def check_product_rule(bounds: SweepBounds, inv: InvariantFn) -> CheckResult:
    res = CheckResult("product rule (max co-rank, additive b1)")
    rng = random.Random(bounds.seed + 1)
    for _ in range(bounds.samples):
        a, b = random_expr(rng, 3, max_dim=4), random_expr(rng, 3, max_dim=4)
        ra, rb, rab = inv(a), inv(b), inv(ex.Product((a, b)))
        res.checked += 1
        if rab.b1_prime != max(ra.b1_prime, rb.b1_prime) or rab.b1 != ra.b1 + rb.b1:
            res.fail(f"{ex.render(a)} x {ex.render(b)}")
    return res


def check_oracle(bounds: SweepBounds, inv: InvariantFn) -> CheckResult:
    res = CheckResult("b1 calculus vs Smith normal form oracle")
    rng = random.Random(bounds.seed + 2)
    for _ in range(bounds.samples):
        e = random_expr(rng, 4, harvey=False, max_dim=5)
        res.checked += 1
        if inv(e).b1 != betti_from_presentation(presentation_of(e)):
            res.fail(ex.render(e))
    return res


def check_synthesis(bounds: SweepBounds, inv: InvariantFn) -> CheckResult:
    res = CheckResult("synthesis round-trip")
    for n in range(bounds.max_n + 1):
        for b in range(bounds.max_b + 1):
            for bp in range(b + 1):
                t = SynthesisTarget(n, bp, b)
                if not feasible(t):
                    continue
                res.checked += 1
                got = inv(construct(t))
                want = (n, n != 2 or b % 2 == 0, b, bp)
                if got.as_tuple() != want:
                    res.fail(f"{t}: got {got.as_tuple()}")
    return res


def check_foliation(bounds: SweepBounds, inv: InvariantFn) -> CheckResult:
    res = CheckResult("foliation plan round-trip")
    for n in range(2, min(bounds.max_n, 6) + 1):
        for b in range(min(bounds.max_b, 10) + 1):
            for bp in range(b + 1):
                for m in range(6):
                    for c in range(6):
                        t = FoliationTarget(n, m, c, bp, b)
                        if not feasible_foliation(t):
                            continue
                        res.checked += 1
                        p = plan(t)
                        got = inv(p.ambient)
                        if (p.m, p.c) != (m, c) or (got.dim, got.b1, got.b1_prime) != (n, b, bp):
                            res.fail(str(t))
    return res


def check_trichotomy(bounds: SweepBounds, inv: InvariantFn) -> CheckResult:
    res = CheckResult("bound comparison trichotomy")
    for b in range(1, bounds.max_b + 1):
        for bp in range(b + 1):
            v = compare_bounds(bp, b)
            res.checked += 1
            want = (Verdict.FIRST_STRONGER if 2 * bp <= b
                    else Verdict.SECOND_STRONGER if bp == b else Verdict.INDEPENDENT)
            if v is not want:
                res.fail(f"b'={bp}, b={b}: {v.value}")
    return res


def check_sphere_factor(bounds: SweepBounds, inv: InvariantFn) -> CheckResult:
    res = CheckResult("product with a sphere keeps co-rank")
    rng = random.Random(bounds.seed + 3)
    while res.checked < bounds.samples:
        e = random_expr(rng, 3, max_dim=4)
        r = inv(e)
        if r.b1_prime == 0:
            continue
        for k in (1, 2, 3):
            res.checked += 1
            rk = inv(ex.Product((e, ex.Sphere(k))))
            if rk.b1_prime != r.b1_prime or rk.b1 != r.b1 + (k == 1):
                res.fail(f"{ex.render(e)} x S{k}")
    return res


ALL_CHECKS = (
    check_roundtrip,
    check_product_rule,
    check_oracle,
    check_synthesis,
    check_foliation,
    check_trichotomy,
    check_sphere_factor,
)


def run_sweep(bounds: SweepBounds, inject_bug: bool = False) -> list[CheckResult]:
    inv = buggy_invariants if inject_bug else invariants
    results = []
    for check in ALL_CHECKS:
        start = time.perf_counter()
        res = check(bounds, inv)
        res.elapsed = time.perf_counter() - start
        results.append(res)
    return results
