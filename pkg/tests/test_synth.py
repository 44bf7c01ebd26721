import itertools

import pytest

from corank.expr import ConnSum, Harvey, NonorientableSurface, OrientableSurface, Product, Sphere, walk
from corank.invariants import invariants
from corank.sampling import enumerate_terms
from corank.synth import Infeasible, SynthesisTarget, choose_partition, construct, feasible, h_block

S1 = Sphere(1)


@pytest.mark.parametrize("t, ok, fragment", [
    (SynthesisTarget(3, 0, 2), False, "b1'=0 iff b1=0"),
    (SynthesisTarget(2, 2, 3, require_orientable=True), False, "n=2 orientable requires b even"),
    (SynthesisTarget(2, 2, 3), True, ""),
    (SynthesisTarget(5, 3, 3), True, ""),
    (SynthesisTarget(4, 5, 3), False, "b' <= b"),
    (SynthesisTarget(2, 1, 3), False, "floor((b+1)/2)=2"),
    (SynthesisTarget(1, 1, 1), True, ""),
    (SynthesisTarget(1, 0, 0), False, "n=1"),
    (SynthesisTarget(0, 0, 0), True, ""),
    (SynthesisTarget(0, 1, 1), False, "n=0"),
])
def test_feasible(t, ok, fragment):
    verdict = feasible(t)
    assert bool(verdict) is ok
    assert fragment in verdict.reason


def test_nonorientable_witness_for_odd_b():
    assert construct(SynthesisTarget(2, 2, 3)) == NonorientableSurface(4)


@pytest.mark.parametrize("bp, b, parts", [
    (3, 7, [5, 1, 1]),
    (4, 4, [1, 1, 1, 1]),
    (1, 6, [6]),
])
def test_choose_partition(bp, b, parts):
    assert choose_partition(bp, b) == parts


@pytest.mark.parametrize("bp, b", [(0, 3), (4, 3)])
def test_choose_partition_precondition(bp, b):
    with pytest.raises(ValueError):
        choose_partition(bp, b)


@pytest.mark.parametrize("n, k, block", [
    (4, 4, Product((Harvey(3), S1))),
    (6, 2, Product((Harvey(2), Sphere(3)))),
    (3, 1, Product((S1, Sphere(2)))),
    (3, 5, Harvey(5)),
    (5, 1, Product((S1, Sphere(4)))),
])
def test_h_block(n, k, block):
    assert h_block(n, k) == block
    rec = invariants(block)
    assert (rec.dim, rec.orientable, rec.b1_prime, rec.b1) == (n, True, 1, k)


@pytest.mark.parametrize("n, k", [(2, 1), (3, 0)])
def test_h_block_precondition(n, k):
    with pytest.raises(ValueError):
        h_block(n, k)


def test_construct_examples():
    e = construct(SynthesisTarget(4, 2, 5))
    assert e == ConnSum((Product((Harvey(3), S1)), Product((S1, Sphere(3)))))
    assert invariants(e).as_tuple() == (4, True, 5, 2)
    assert construct(SynthesisTarget(3, 3, 3)) == ConnSum((Product((S1, Sphere(2))),) * 3)
    assert construct(SynthesisTarget(2, 1, 2)) == OrientableSurface(1)
    assert construct(SynthesisTarget(6, 0, 0)) == Sphere(6)


def test_construct_infeasible():
    with pytest.raises(Infeasible, match="orientable requires b even"):
        construct(SynthesisTarget(2, 2, 3, require_orientable=True))


GRID = [(n, bp, b) for n in range(9) for b in range(13) for bp in range(b + 1)]


@pytest.mark.parametrize("orientable", [False, True])
def test_roundtrip_grid(orientable):
    checked = 0
    for n, bp, b in GRID:
        t = SynthesisTarget(n, bp, b, orientable)
        if not feasible(t):
            continue
        rec = invariants(construct(t))
        assert rec.as_tuple() == (n, n != 2 or b % 2 == 0, b, bp), t
        checked += 1
    assert checked > 400


def test_no_harvey_when_corank_equals_b1():
    for n in range(3, 9):
        for b in range(1, 13):
            e = construct(SynthesisTarget(n, b, b))
            assert not any(isinstance(x, Harvey) for x in walk(e))


def _achievable_records():
    """Invariant records of every sum of up to 3 terms, each a product of up to 3 bases (params <= 4).

    A sum's invariants depend only on its summands' records, so one
    representative term per (dim, record) is enough.
    """
    reps = {}
    for term in enumerate_terms(max_factors=3, max_param=4):
        reps.setdefault(invariants(term), term)
    records = set(reps)
    by_dim = {}
    for rec, term in reps.items():
        by_dim.setdefault(rec.dim, []).append(term)
    for dim, terms in by_dim.items():
        if dim < 2:
            continue
        for r in (2, 3):
            for combo in itertools.combinations_with_replacement(terms, r):
                records.add(invariants(ConnSum(combo)))
    return records


def test_infeasible_targets_are_not_realized():
    records = _achievable_records()
    assert len(records) > 100
    for n, bp, b in GRID:
        for orientable in (False, True):
            if feasible(SynthesisTarget(n, bp, b, orientable)):
                continue
            hits = [r for r in records
                    if (r.dim, r.b1_prime, r.b1) == (n, bp, b) and (r.orientable or not orientable)]
            assert not hits, (n, bp, b, orientable)
