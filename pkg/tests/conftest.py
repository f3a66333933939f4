import pytest

from fancert.fields import validate_field, embeddings
from fancert.units import SubgroupW, check_dominance, make_unit

# the quartic field of the smallest degree-4 Salem number
SALEM_P = [1, -1, -1, -1, 1]

# quintic with exactly 3 real roots (Eisenstein at 2); used for odd-s tests
QUINTIC_P = [2, -4, 0, 0, 0, 1]

# quintic units found by bounded-height search, verified by make_unit
QUINTIC_UNITS = [
    [-1, 1, 0, 0, 0],      # generator - 1
    [-1, -1, -1, 1, 1],
    [-1, 1, -2, 1, 2],
]


def bisect_root(coeffs, lo, hi, iters=200):
    """Independent real-root refinement by pure bisection."""
    def p(x):
        acc = 0.0
        for c in reversed(coeffs):
            acc = acc * x + c
        return acc
    flo = p(lo)
    assert flo * p(hi) < 0
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if flo * p(mid) <= 0:
            hi = mid
        else:
            lo = mid
            flo = p(lo)
    return 0.5 * (lo + hi)


@pytest.fixture(scope="session")
def salem_field():
    return validate_field(SALEM_P)


@pytest.fixture(scope="session")
def salem_table(salem_field):
    return embeddings(salem_field)


@pytest.fixture(scope="session")
def alpha(salem_field, salem_table):
    return make_unit(salem_field, salem_table, [0, 1, 0, 0])


@pytest.fixture(scope="session")
def one_minus_alpha(salem_field, salem_table):
    return make_unit(salem_field, salem_table, [1, -1, 0, 0])


@pytest.fixture(scope="session")
def om_squared(salem_field, salem_table):
    return make_unit(salem_field, salem_table, [1, -2, 1, 0])


@pytest.fixture(scope="session")
def w_alpha(alpha, salem_table):
    w = SubgroupW([alpha], 1)
    check_dominance(w, salem_table)
    return w


@pytest.fixture(scope="session")
def w_bar(om_squared, salem_table):
    w = SubgroupW([om_squared], 1)
    check_dominance(w, salem_table)
    return w


@pytest.fixture(scope="session")
def quintic_field():
    return validate_field(QUINTIC_P)


@pytest.fixture(scope="session")
def quintic_table(quintic_field):
    return embeddings(quintic_field)


@pytest.fixture(scope="session")
def quintic_units(quintic_field, quintic_table):
    return [make_unit(quintic_field, quintic_table, c) for c in QUINTIC_UNITS]
