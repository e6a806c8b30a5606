"""Complex polynomial arithmetic and root finding.

Polynomials are 1-D numpy arrays of complex128 coefficients in ascending
degree order.  The zero polynomial is the empty array.  All functions are
pure; nothing here mutates its arguments.
"""

from __future__ import annotations

import numpy as np

from .errors import NonConvergence

TRIM_REL = 1e-12

_DK_SEED = 20240817
_DK_MAX_ITER = 500


class _Infinity:
    """Singleton marker for the point at infinity on the Riemann sphere."""

    __slots__ = ()

    def __repr__(self):
        return "INF"


INF = _Infinity()


def is_inf(p) -> bool:
    return p is INF


def as_poly(coeffs) -> np.ndarray:
    return np.asarray(coeffs, dtype=complex)


def trim(p: np.ndarray) -> np.ndarray:
    """Drop trailing (highest-degree) coefficients below TRIM_REL * max|c|."""
    p = as_poly(p)
    if p.size == 0:
        return p
    scale = np.abs(p).max()
    if scale == 0.0:
        return p[:0]
    k = p.size
    while k > 0 and abs(p[k - 1]) < TRIM_REL * scale:
        k -= 1
    return p[:k]


def degree(p: np.ndarray) -> int:
    """Degree of p; -1 for the zero polynomial."""
    return len(p) - 1


def padd(a, b) -> np.ndarray:
    a, b = as_poly(a), as_poly(b)
    n = max(a.size, b.size)
    out = np.zeros(n, dtype=complex)
    out[: a.size] += a
    out[: b.size] += b
    return trim(out)


def psub(a, b) -> np.ndarray:
    return padd(a, -as_poly(b))


def pmul(a, b) -> np.ndarray:
    a, b = as_poly(a), as_poly(b)
    if a.size == 0 or b.size == 0:
        return a[:0]
    return np.convolve(a, b)


def poly_arith(a, b, op: str) -> np.ndarray:
    if op == "add":
        return padd(a, b)
    if op == "sub":
        return psub(a, b)
    if op == "mul":
        return pmul(a, b)
    raise ValueError(f"unknown op {op!r}")


def peval(p, z):
    """Horner evaluation; z may be a scalar or an array."""
    p = as_poly(p)
    if p.size == 0:
        return np.zeros_like(z) if isinstance(z, np.ndarray) else 0j
    acc = np.full(z.shape, p[-1], dtype=complex) if isinstance(z, np.ndarray) else p[-1]
    for c in p[-2::-1]:
        acc = acc * z + c
    return acc


def pder(p) -> np.ndarray:
    p = as_poly(p)
    if p.size <= 1:
        return p[:0]
    return p[1:] * np.arange(1, p.size)


def poly_from_factors(factors) -> np.ndarray:
    """Monic expansion of prod (z - root)**mult for (root, mult) pairs."""
    p = np.ones(1, dtype=complex)
    for root, mult in factors:
        if mult < 1:
            raise ValueError("multiplicities must be >= 1")
        lin = np.array([-root, 1.0], dtype=complex)
        for _ in range(int(mult)):
            p = np.convolve(p, lin)
    return p


def poly_roots(p, tol: float = 1e-8) -> np.ndarray:
    """All roots of p with multiplicity, via Durand-Kerner simultaneous iteration.

    Roots start on a randomly phase-perturbed circle (fixed seed, so the
    output is deterministic).  Near-coincident roots are merged to their
    cluster mean and polished with Newton steps on the appropriate
    derivative, so a multiplicity-k root is returned k times at full
    accuracy rather than as a cluster of radius eps**(1/k).
    """
    p = trim(as_poly(p))
    n = degree(p)
    if n < 1:
        raise ValueError("poly_roots requires degree >= 1")
    lead = p[-1]
    monic = p / lead
    scale = np.abs(p).max()

    rng = np.random.default_rng(_DK_SEED)
    radius = 1.0 + np.abs(monic[:-1]).max()
    angles = 2.0 * np.pi * (np.arange(n) / n + 0.01 * rng.random(n))
    z = radius * np.exp(1j * angles)

    for _ in range(_DK_MAX_ITER):
        pv = peval(monic, z)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        denom = diff.prod(axis=1)
        step = pv / denom
        z = z - step
        if np.abs(step).max() < 1e-14 * (1.0 + np.abs(z).max()):
            break

    z = _polish_clusters(monic, z)

    resid = np.abs(peval(p, z))
    if resid.max() > tol * scale:
        raise NonConvergence(
            f"root residual {resid.max():.3e} exceeds {tol:.1e} * {scale:.3e}"
        )
    # deterministic order
    order = np.lexsort((z.imag.round(9), z.real.round(9)))
    return z[order]


def _polish_clusters(monic: np.ndarray, z: np.ndarray) -> np.ndarray:
    radius = 1e-4 * (1.0 + np.abs(z).max())
    out = z.copy()
    used = np.zeros(z.size, dtype=bool)
    for i in range(z.size):
        if used[i]:
            continue
        members = ~used & (np.abs(z - z[i]) <= radius)
        idx = np.flatnonzero(members)
        used[idx] = True
        if idx.size == 1:
            continue
        # multiplicity-k root: simple root of the (k-1)th derivative
        center = z[idx].mean()
        dk = monic
        for _ in range(idx.size - 1):
            dk = pder(dk)
        dk1 = pder(dk)
        w = center
        for _ in range(20):
            f = peval(dk, w)
            fp = peval(dk1, w)
            if fp == 0:
                break
            step = f / fp
            w = w - step
            if abs(step) < 1e-15 * (1.0 + abs(w)):
                break
        if abs(w - center) <= radius:
            center = w
        out[idx] = center
    return out


def cluster_points(points, radius: float) -> list[tuple[complex, int]]:
    """Greedy merge of near-coincident points into (mean, count) pairs."""
    pts = list(points)
    clusters: list[tuple[complex, int]] = []
    while pts:
        seed = pts.pop(0)
        group = [seed]
        rest = []
        for q in pts:
            if abs(q - seed) <= radius:
                group.append(q)
            else:
                rest.append(q)
        pts = rest
        clusters.append((complex(np.mean(group)), len(group)))
    return clusters
