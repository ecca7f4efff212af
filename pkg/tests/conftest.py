from fractions import Fraction

import pytest

from arrdepth.geometry import arrangement, triangle


@pytest.fixture
def tri():
    """Lines x=0, y=0, x+y=1: corners (0,0), (1,0), (0,1)."""
    return triangle()


@pytest.fixture
def fig1_union():
    """Two triangles around the origin whose union still only 1-encloses it.

    Verified exactly: HED = 1 for each triangle and for the union, while the
    union has regression depth 2 at the origin, so super-additivity fails.
    """
    return arrangement(
        2,
        [
            ((1, 0), 1),
            ((0, 1), 1),
            ((-1, -1), 1),
            ((1, 1), 3),
            ((-3, 1), 2),
            ((1, -2), 2),
        ],
    )


@pytest.fixture
def fig1_parts(fig1_union):
    a1 = arrangement(2, [((1, 0), 1), ((0, 1), 1), ((-1, -1), 1)])
    a2 = arrangement(2, [((1, 1), 3), ((-3, 1), 2), ((1, -2), 2)])
    return a1, a2


def F(a, b=1):
    return Fraction(a, b)
