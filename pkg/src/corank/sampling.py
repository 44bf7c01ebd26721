"""Random and exhaustive generation of valid expressions for property sweeps."""

from __future__ import annotations

import itertools
import random
from typing import Iterator, Optional

from .expr import (
    ConnSum,
    Harvey,
    ManifoldExpr,
    NonorientableSurface,
    OrientableSurface,
    Point,
    Product,
    Sphere,
)


def _random_base(rng: random.Random, dim: int, max_param: int, harvey: bool) -> ManifoldExpr:
    if dim == 0:
        return Point()
    if dim == 2:
        return rng.choice([
            lambda: OrientableSurface(rng.randint(0, max_param)),
            lambda: NonorientableSurface(rng.randint(1, max_param)),
            lambda: Sphere(2),
        ])()
    if dim == 3 and harvey and rng.random() < 0.5:
        return Harvey(rng.randint(1, max_param))
    return Sphere(dim)


def _composition(rng: random.Random, total: int, parts: int) -> list[int]:
    cuts = sorted(rng.randint(0, total) for _ in range(parts - 1))
    return [b - a for a, b in zip([0] + cuts, cuts + [total])]


def random_expr(
    rng: random.Random,
    max_depth: int = 3,
    max_param: int = 5,
    harvey: bool = True,
    dim: Optional[int] = None,
    max_dim: int = 6,
) -> ManifoldExpr:
    """A random valid expression of nesting depth at most ``max_depth``.

    Connected-sum summands always share one dimension >= 2; product factors
    may be points.
    """
    if dim is None:
        dim = rng.randint(0, max_dim)

    def gen(d: int, depth: int) -> ManifoldExpr:
        if depth == 0 or d == 0 or rng.random() < 0.3:
            return _random_base(rng, d, max_param, harvey)
        if d >= 2 and rng.random() < 0.5:
            return ConnSum(tuple(gen(d, depth - 1) for _ in range(rng.randint(2, 3))))
        dims = _composition(rng, d, rng.randint(2, 3))
        return Product(tuple(gen(k, depth - 1) for k in dims))

    return gen(dim, max_depth)


def enumerate_bases(max_param: int = 4, harvey: bool = True) -> list[ManifoldExpr]:
    bases: list[ManifoldExpr] = [Point()]
    bases += [Sphere(k) for k in range(1, max_param + 1)]
    bases += [OrientableSurface(g) for g in range(max_param + 1)]
    bases += [NonorientableSurface(h) for h in range(1, max_param + 1)]
    if harvey:
        bases += [Harvey(b) for b in range(1, max_param + 1)]
    return bases


def enumerate_terms(max_factors: int = 3, max_param: int = 4, harvey: bool = True) -> Iterator[ManifoldExpr]:
    """Every base and every product of 2..max_factors bases (as multisets)."""
    bases = enumerate_bases(max_param, harvey)
    yield from bases
    for r in range(2, max_factors + 1):
        for combo in itertools.combinations_with_replacement(bases, r):
            yield Product(combo)
