"""Fundamental-group presentations and an independent ``b1`` oracle.

The oracle abelianizes a presentation into an exponent-sum matrix and reads
off the free rank from its Smith normal form. It never consults the
invariant calculus, so the two routes can be compared.
"""

from __future__ import annotations

from dataclasses import dataclass, field

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
    render,
    walk,
)

INT64_MAX = 2**63 - 1

Word = tuple[int, ...]


class HarveyPresent(ValueError):
    """Harvey blocks carry invariants only; no presentation is available."""


@dataclass(frozen=True)
class GroupPresentation:
    """Generators ``1..n_generators``; a relator is a word of signed indices (negative = inverse)."""

    n_generators: int
    relators: tuple[Word, ...] = ()
    names: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "relators", tuple(tuple(w) for w in self.relators))
        if not self.names:
            object.__setattr__(self, "names", tuple(f"x{i}" for i in range(1, self.n_generators + 1)))
        if len(self.names) != self.n_generators:
            raise ValueError("one name per generator")
        for w in self.relators:
            for s in w:
                if s == 0 or abs(s) > self.n_generators:
                    raise ValueError(f"generator index {s} out of range 1..{self.n_generators}")

    def format_word(self, w: Word) -> str:
        if not w:
            return "1"
        return " ".join(self.names[abs(s) - 1] + ("^-1" if s < 0 else "") for s in w)

    def __str__(self) -> str:
        rels = ", ".join(self.format_word(w) for w in self.relators)
        return f"< {', '.join(self.names)} | {rels} >"


def commutator(x: int, y: int) -> Word:
    return (x, y, -x, -y)


def _shift(p: GroupPresentation, offset: int) -> tuple[Word, ...]:
    return tuple(tuple(s + offset if s > 0 else s - offset for s in w) for w in p.relators)


def free_product(*parts: GroupPresentation) -> GroupPresentation:
    """Disjoint union of generators and relators; names get a ``g<i>.`` prefix."""
    n, relators, names = 0, [], []
    for i, p in enumerate(parts, 1):
        relators.extend(_shift(p, n))
        names.extend(f"g{i}.{name}" for name in p.names)
        n += p.n_generators
    return GroupPresentation(n, tuple(relators), tuple(names))


def direct_product(*parts: GroupPresentation) -> GroupPresentation:
    """Free product plus commutators between generators of distinct factors."""
    fp = free_product(*parts)
    blocks, n = [], 0
    for p in parts:
        blocks.append(range(n + 1, n + p.n_generators + 1))
        n += p.n_generators
    extra = [commutator(x, y)
             for i, bx in enumerate(blocks) for by in blocks[i + 1:]
             for x in bx for y in by]
    return GroupPresentation(fp.n_generators, fp.relators + tuple(extra), fp.names)


def _surface_sum(*parts: GroupPresentation) -> GroupPresentation:
    # Connected sum of surfaces: one-relator presentations, relators concatenated.
    if any(len(p.relators) > 1 for p in parts):
        raise ValueError("surface summand without a one-relator presentation")
    fp = free_product(*parts)
    word = tuple(s for w in fp.relators for s in w)
    return GroupPresentation(fp.n_generators, (word,) if word else (), fp.names)


def _base_presentation(e: ManifoldExpr) -> GroupPresentation:
    if isinstance(e, Point) or (isinstance(e, Sphere) and e.k >= 2):
        return GroupPresentation(0)
    if isinstance(e, Sphere):
        return GroupPresentation(1, (), ("t",))
    if isinstance(e, OrientableSurface):
        names = tuple(f"{ab}{i}" for i in range(1, e.g + 1) for ab in "ab")
        word = tuple(s for i in range(e.g) for s in commutator(2 * i + 1, 2 * i + 2))
        return GroupPresentation(2 * e.g, (word,) if word else (), names)
    if isinstance(e, NonorientableSurface):
        word = tuple(s for i in range(1, e.h + 1) for s in (i, i))
        return GroupPresentation(e.h, (word,), tuple(f"a{i}" for i in range(1, e.h + 1)))
    raise TypeError(f"no presentation for {e!r}")


def _presentation(e: ManifoldExpr) -> GroupPresentation:
    if isinstance(e, Product):
        return direct_product(*(_presentation(c) for c in e.children))
    if isinstance(e, ConnSum):
        parts = [_presentation(c) for c in e.children]
        return _surface_sum(*parts) if e.dim == 2 else free_product(*parts)
    return _base_presentation(e)


def presentation_of(e: ManifoldExpr) -> GroupPresentation:
    """Presentation of the fundamental group of a valid, Harvey-free expression.

    Raises:
        HarveyPresent: if ``e`` contains a Harvey block.
        InvalidExpression: if ``e`` fails validation.
    """
    ensure_valid(e)
    for node in walk(e):
        if isinstance(node, Harvey):
            raise HarveyPresent(f"{render(node)} has no known presentation")
    return _presentation(e)


# -- abelianization ---------------------------------------------------------


def abelianization_matrix(p: GroupPresentation) -> list[list[int]]:
    """Exponent-sum matrix, one row per relator and one column per generator."""
    rows = []
    for w in p.relators:
        row = [0] * p.n_generators
        for s in w:
            row[abs(s) - 1] += 1 if s > 0 else -1
        rows.append(row)
    return rows


@dataclass(frozen=True)
class SmithForm:
    diagonal: tuple[int, ...]
    shape: tuple[int, int]

    @property
    def rank(self) -> int:
        return len(self.diagonal)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.diagonal if d > 1)


def _check64(x: int) -> int:
    if abs(x) > INT64_MAX:
        raise OverflowError(f"entry {x} exceeds 64-bit range during elimination")
    return x


def smith_normal_form(m: list[list[int]], n_cols: int | None = None) -> SmithForm:
    """Invariant factors of an integer matrix.

    Repeated Euclidean elimination, always pivoting on the smallest nonzero
    entry of the remaining block. ``n_cols`` gives the width of a matrix with
    no rows.

    Raises:
        OverflowError: if an intermediate entry leaves the signed 64-bit range.
    """
    a = [[_check64(x) for x in row] for row in m]
    rows = len(a)
    cols = len(a[0]) if a else (n_cols or 0)
    diag: list[int] = []
    for t in range(min(rows, cols)):
        while True:
            entries = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
            if not entries:
                return SmithForm(tuple(diag), (rows, cols))
            _, pi, pj = min(entries)
            a[t], a[pi] = a[pi], a[t]
            for row in a:
                row[t], row[pj] = row[pj], row[t]
            p = a[t][t]
            for i in range(t + 1, rows):
                q = a[i][t] // p
                if q:
                    a[i] = [_check64(x - q * y) for x, y in zip(a[i], a[t])]
            for j in range(t + 1, cols):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] = _check64(row[j] - q * row[t])
            if any(a[i][t] for i in range(t + 1, rows)) or any(a[t][j] for j in range(t + 1, cols)):
                continue  # a smaller remainder is left; pivot on it
            bad = next((i for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % p), None)
            if bad is None:
                break
            # pull a non-multiple of the pivot into row t to shrink the pivot
            a[t] = [_check64(x + y) for x, y in zip(a[t], a[bad])]
        diag.append(abs(a[t][t]))
    return SmithForm(tuple(diag), (rows, cols))


def rational_rank(m: list[list[int]]) -> int:
    """Rank over the rationals by fraction-free (Bareiss) elimination."""
    a = [list(row) for row in m]
    rows = len(a)
    cols = len(a[0]) if a else 0
    rank, prev = 0, 1
    for j in range(cols):
        pivot = next((i for i in range(rank, rows) if a[i][j]), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        for i in range(rank + 1, rows):
            a[i] = [(a[rank][j] * a[i][k] - a[i][j] * a[rank][k]) // prev for k in range(cols)]
        prev = a[rank][j]
        rank += 1
    return rank


def betti_from_presentation(p: GroupPresentation) -> int:
    """Torsion-free rank of the abelianization: generators minus relation rank."""
    snf = smith_normal_form(abelianization_matrix(p), p.n_generators)
    return p.n_generators - snf.rank
