import random

import pytest
from hypothesis import strategies as st

from corank.expr import (
    ConnSum,
    Harvey,
    NonorientableSurface,
    OrientableSurface,
    Point,
    Product,
    Sphere,
)
from corank.sampling import random_expr

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def acceptance_report():
    return ACCEPTANCE_LINES


bases = st.one_of(
    st.just(Point()),
    st.integers(1, 6).map(Sphere),
    st.integers(0, 6).map(OrientableSurface),
    st.integers(1, 6).map(NonorientableSurface),
    st.integers(1, 6).map(Harvey),
)

# arbitrary ASTs, valid or not
any_exprs = st.recursive(
    bases,
    lambda kids: st.one_of(
        st.lists(kids, min_size=2, max_size=3).map(lambda cs: ConnSum(tuple(cs))),
        st.lists(kids, min_size=2, max_size=3).map(lambda cs: Product(tuple(cs))),
    ),
    max_leaves=8,
)


def valid_exprs(harvey=True, max_depth=4, max_param=6):
    return st.integers(0, 2**32).map(
        lambda seed: random_expr(random.Random(seed), max_depth, max_param, harvey=harvey))


def scramble(e, rng):
    """An equivalent expression: children shuffled, sums/products regrouped, points inserted."""
    if isinstance(e, (ConnSum, Product)):
        kids = [scramble(c, rng) for c in e.children]
        rng.shuffle(kids)
        cls = type(e)
        if len(kids) >= 3 and rng.random() < 0.5:
            kids = [cls(tuple(kids[:2]))] + kids[2:]
        if cls is Product and rng.random() < 0.3:
            kids.insert(rng.randrange(len(kids) + 1), Point())
        return cls(tuple(kids))
    if isinstance(e, Sphere) and e.k == 2 and rng.random() < 0.5:
        return OrientableSurface(0)
    return e
