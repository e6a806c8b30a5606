"""Shared generators for randomized test suites.

All randomness is seeded, so every test run sees the same instances.
"""

import numpy as np
import pytest

from newton_atlas import FactoredRational, newton_degree

MIN_SEPARATION = 0.2


def random_points(rng, count, separation=MIN_SEPARATION, box=2.0):
    """Pairwise-separated complex points drawn uniformly from a square."""
    pts = []
    while len(pts) < count:
        z = complex(rng.uniform(-box, box), rng.uniform(-box, box))
        if all(abs(z - w) > separation for w in pts):
            pts.append(z)
    return pts


def random_factored(rng, max_points=3, max_mult=3, min_degree=2):
    """A random factored rational with m, n <= max_points and multiplicities
    <= max_mult whose Newton map has degree >= min_degree."""
    while True:
        m = int(rng.integers(0, max_points + 1))
        n = int(rng.integers(0, max_points + 1))
        if m + n == 0:
            continue
        pts = random_points(rng, m + n)
        roots = tuple((pts[i], int(rng.integers(1, max_mult + 1))) for i in range(m))
        poles = tuple((pts[m + i], int(rng.integers(1, max_mult + 1))) for i in range(n))
        R = FactoredRational(roots, poles)
        if newton_degree(R) >= min_degree:
            return R


def make_suite(seed, count, **kwargs):
    rng = np.random.default_rng(seed)
    return [random_factored(rng, **kwargs) for _ in range(count)]


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


# ---- cubic polynomial-conjugacy families -----------------------------------
#
# Each satisfiable classification row gets one hand-built instance whose
# algebraic condition holds exactly, plus a variant with the free parameter
# moved by 1e-2 (which must fail the condition).

TABLE_SATISFIED = {
    "IB": FactoredRational(((0j, 1), (1 + 0j, 2)), ((3 + 0j, 1), (0.6 + 0j, 1))),
    "IC": FactoredRational(((0j, 1), (1 + 0j, 1), (2 + 0j, 1)), ((4.0 / 3.0 + 0j, 2),)),
    "IIBi": FactoredRational(((0j, 4),), ((1 + 0j, 2), (-1 + 0j, 2))),
    "IIBii": FactoredRational(((0j, 1),), ((1 + 0j, 1), (-2 + 0j, 2))),
    "IICi": FactoredRational(((0j, 1), (1 + 0j, 1)), ((0.5 + 0j, 2),)),
    "IICii": FactoredRational(((0j, 1), (1 + 0j, 2)), ((1.5 + 0j, 3),)),
    "IID": FactoredRational(((0j, 1), (1 + 0j, 2), (-0.5 + 0j, 1)), ()),
}

TABLE_PERTURBED = {
    "IB": FactoredRational(((0j, 1), (1 + 0j, 2)), ((3.01 + 0j, 1), (0.6 + 0j, 1))),
    "IC": FactoredRational(((0j, 1), (1 + 0j, 1), (2 + 0j, 1)), ((4.0 / 3.0 + 0.01 + 0j, 2),)),
    "IIBi": FactoredRational(((0j, 4),), ((1 + 0j, 2), (-0.99 + 0j, 2))),
    "IIBii": FactoredRational(((0j, 1),), ((1 + 0j, 1), (-1.99 + 0j, 2))),
    "IICi": FactoredRational(((0j, 1), (1 + 0j, 1)), ((0.51 + 0j, 2),)),
    "IICii": FactoredRational(((0j, 1), (1 + 0j, 2)), ((1.51 + 0j, 3),)),
    "IID": FactoredRational(((0j, 1), (1 + 0j, 2), (-0.49 + 0j, 1)), ()),
}


def never_row_instance(row, rng):
    """Random instance of one of the two never-conjugate rows."""
    if row == "IA":
        pts = random_points(rng, 4)
        es = [int(rng.integers(1, 4)) for _ in range(3)]
        return FactoredRational(
            ((pts[0], sum(es) + 1),), tuple((pts[1 + i], es[i]) for i in range(3))
        )
    if row == "IIA":
        pts = random_points(rng, 3)
        return FactoredRational(
            (), tuple((pts[i], int(rng.integers(1, 4))) for i in range(3))
        )
    raise ValueError(row)


def _anchor_pair(rng):
    p0 = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
    while True:
        p1 = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        if abs(p1 - p0) > 0.3:
            return p0, p1


def random_iibi(rng):
    """Random member of the one-root/two-pole family with superattracting
    infinity satisfying its conjugacy condition (gamma = -e1/e2)."""
    e1 = int(rng.integers(1, 6))
    e2 = int(rng.integers(1, 6))
    alpha, p1 = _anchor_pair(rng)
    p2 = alpha + (-e1 / e2) * (p1 - alpha)
    return FactoredRational(((alpha, e1 + e2),), ((p1, e1), (p2, e2)))


def random_ib(rng):
    """Random two-root/two-pole instance on the conjugacy locus."""
    e1 = int(rng.integers(1, 4))
    e2 = int(rng.integers(1, 4))
    r0, r1 = _anchor_pair(rng)
    while True:
        g1 = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        if (
            abs(g1) > 0.1
            and abs(g1 - 1.0) > 0.1
            and abs((e1 + e2) * g1 - e1) > 0.1
        ):
            break
    g2 = e2 * g1 / ((e1 + e2) * g1 - e1)
    span = r1 - r0
    return FactoredRational(
        ((r0, 1), (r1, e1 + e2)), ((r0 + g1 * span, e1), (r0 + g2 * span, e2))
    )


def random_iici(rng):
    """Random two-root/one-pole instance with superattracting infinity."""
    d1 = int(rng.integers(1, 5))
    d2 = int(rng.integers(1, 5))
    a1, a2 = _anchor_pair(rng)
    b = a1 + (d2 / (d1 + d2)) * (a2 - a1)
    return FactoredRational(((a1, d1), (a2, d2)), ((b, d1 + d2),))


def random_iid(rng):
    """Random polynomial (three-root) instance on the conjugacy locus."""
    d2 = int(rng.integers(1, 5))
    d3 = int(rng.integers(1, 5))
    r, a2 = _anchor_pair(rng)
    a3 = r + (-d3 / d2) * (a2 - r)
    return FactoredRational(((r, 1), (a2, d2), (a3, d3)), ())
