import pytest

from linkagelab.poly import Ring, Vec
from linkagelab.quotient import IdealHandle, PresentedModule, QuotientRing


def ring(p, names, order=None):
    return Ring(p, tuple(names), order)


def qring(p, names, jtexts=(), order=None):
    S = ring(p, names, order)
    return QuotientRing(S, [S.parse_poly(t) for t in jtexts])


def vec(S, *texts):
    return Vec.from_polys(S, [S.parse_poly(t) if t != "0" else S.zero() for t in texts])


def module(R, rank, rows):
    return PresentedModule(R, rank, [vec(R.base, *row) for row in rows])


def ideal(R, *texts):
    return IdealHandle(R, [R.base.parse_poly(t) for t in texts])


@pytest.fixture
def f2xy():
    return ring(2, "xy")


@pytest.fixture
def hypersurface():
    """F2[x,y]/(xy): the basic one-dimensional Gorenstein ring with zerodivisors."""
    return qring(2, "xy", ["x*y"])


@pytest.fixture
def semigroup_ring():
    """Coordinate ring of (t^3, t^4, t^5) over F5: CM, not Gorenstein."""
    return qring(5, "xyz", ["x*z - y^2", "x^2*y - z^2", "x^3 - y*z"])
