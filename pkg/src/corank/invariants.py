"""First Betti number and co-rank calculus for manifold expressions.

Connected sums add both numbers (dimension >= 3; surfaces go through the
classification of surfaces instead). Direct products add ``b1`` and take the
maximum of the co-ranks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .expr import (
    ConnSum,
    Harvey,
    ManifoldExpr,
    NonorientableSurface,
    OrientableSurface,
    Point,
    Product,
    Sphere,
    ensure_valid,
    normalize,
    render,
)

INT64_MAX = 2**63 - 1


@dataclass(frozen=True)
class InvariantRecord:
    dim: int
    orientable: bool
    b1: int
    b1_prime: int

    def as_tuple(self) -> tuple[int, bool, int, int]:
        return (self.dim, self.orientable, self.b1, self.b1_prime)

    def to_json(self, e: ManifoldExpr) -> dict:
        return {
            "dim": self.dim,
            "orientable": self.orientable,
            "b1": self.b1,
            "b1_prime": self.b1_prime,
            "expr": render(normalize(e)),
        }


@dataclass(frozen=True)
class Orientable:
    g: int


@dataclass(frozen=True)
class Nonorientable:
    h: int


SurfaceForm = Union[Orientable, Nonorientable]


def _checked(n: int) -> int:
    if n > INT64_MAX:
        raise OverflowError(f"invariant {n} exceeds 64-bit range")
    return n


def base_invariants(m: ManifoldExpr) -> InvariantRecord:
    if isinstance(m, Point):
        return InvariantRecord(0, True, 0, 0)
    if isinstance(m, Sphere):
        return InvariantRecord(1, True, 1, 1) if m.k == 1 else InvariantRecord(m.k, True, 0, 0)
    if isinstance(m, OrientableSurface):
        return InvariantRecord(2, True, 2 * m.g, m.g)
    if isinstance(m, NonorientableSurface):
        return InvariantRecord(2, False, m.h - 1, m.h // 2)
    if isinstance(m, Harvey):
        return InvariantRecord(3, True, m.b, 1)
    raise TypeError(f"not a base manifold: {m!r}")


def surface_canonical(e: ManifoldExpr) -> SurfaceForm:
    """Reduce a 2-dimensional expression to ``M_g`` or ``N_h`` by genus/crosscap arithmetic.

    Raises:
        ValueError: if ``e`` contains a piece that is not a closed surface.
    """
    e = normalize(e)
    if isinstance(e, OrientableSurface):
        return Orientable(e.g)
    if isinstance(e, Sphere) and e.k == 2:
        return Orientable(0)
    if isinstance(e, NonorientableSurface):
        return Nonorientable(e.h)
    if isinstance(e, Product) and e.children == (Sphere(1), Sphere(1)):
        return Orientable(1)
    if isinstance(e, ConnSum):
        genus, crosscaps = 0, 0
        for c in e.children:
            form = surface_canonical(c)
            if isinstance(form, Orientable):
                genus += form.g
            else:
                crosscaps += form.h
        # a crosscap turns every handle into two crosscaps
        return Nonorientable(2 * genus + crosscaps) if crosscaps else Orientable(genus)
    raise ValueError(f"not a closed surface: {render(e)}")


def _surface_invariants(form: SurfaceForm) -> InvariantRecord:
    if isinstance(form, Orientable):
        return base_invariants(OrientableSurface(form.g))
    return base_invariants(NonorientableSurface(form.h))


def _invariants(e: ManifoldExpr) -> InvariantRecord:
    if isinstance(e, Product):
        kids = [_invariants(c) for c in e.children]
        return InvariantRecord(
            dim=sum(k.dim for k in kids),
            orientable=all(k.orientable for k in kids),
            b1=_checked(sum(k.b1 for k in kids)),
            b1_prime=max(k.b1_prime for k in kids),
        )
    if isinstance(e, ConnSum):
        if e.dim == 2:
            return _surface_invariants(surface_canonical(e))
        kids = [_invariants(c) for c in e.children]
        return InvariantRecord(
            dim=kids[0].dim,
            orientable=all(k.orientable for k in kids),
            b1=_checked(sum(k.b1 for k in kids)),
            b1_prime=_checked(sum(k.b1_prime for k in kids)),
        )
    return base_invariants(e)


def invariants(e: ManifoldExpr) -> InvariantRecord:
    """Dimension, orientability, ``b1`` and co-rank ``b1'`` of a valid expression.

    Raises:
        InvalidExpression: if ``validate(e)`` reports anything.
    """
    ensure_valid(e)
    return _invariants(e)
