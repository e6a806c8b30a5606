"""Newton maps of factored rational functions.

Construction of N_R = z - R/R' in coefficient form, enumeration of its
fixed points with multipliers and residue indices, and the numeric check
that the indices of all fixed points sum to 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import rational_core as rc
from .errors import (
    DegenerateMap,
    DegreeMismatch,
    LoopTooLarge,
    NotFixed,
    ParabolicPoint,
    UnsupportedDegree,
)
from .rational_core import INF, is_inf

MULTIPLICITY_CAP = 64


@dataclass(frozen=True)
class FactoredRational:
    """A rational function given by its distinct roots and poles.

    roots: list of (location, multiplicity) with pairwise-distinct locations.
    poles: likewise; no root may coincide with a pole (numerator and
    denominator coprime).
    """

    roots: tuple = ()
    poles: tuple = ()

    def __post_init__(self):
        roots = tuple((complex(a), int(d)) for a, d in self.roots)
        poles = tuple((complex(b), int(e)) for b, e in self.poles)
        object.__setattr__(self, "roots", roots)
        object.__setattr__(self, "poles", poles)
        if self.m + self.n < 1:
            raise ValueError("need at least one root or pole")
        if any(k < 1 for _, k in roots + poles):
            raise ValueError("multiplicities must be positive")
        pts = [a for a, _ in roots] + [b for b, _ in poles]
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                if abs(pts[i] - pts[j]) <= 1e-9:
                    raise ValueError("roots/poles must be pairwise distinct")

    @property
    def m(self) -> int:
        return len(self.roots)

    @property
    def n(self) -> int:
        return len(self.poles)

    @property
    def d(self) -> int:
        return sum(k for _, k in self.roots)

    @property
    def e(self) -> int:
        return sum(k for _, k in self.poles)

    def numerator(self) -> np.ndarray:
        return rc.poly_from_factors(self.roots)

    def denominator(self) -> np.ndarray:
        return rc.poly_from_factors(self.poles)


@dataclass(frozen=True, eq=False)
class RationalMap:
    """A rational map in reduced coefficient form num/den (ascending)."""

    num: np.ndarray
    den: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "num", rc.trim(rc.as_poly(self.num)))
        object.__setattr__(self, "den", rc.trim(rc.as_poly(self.den)))
        if self.num.size == 0 and self.den.size == 0:
            raise ValueError("num and den cannot both be zero")

    @property
    def degree(self) -> int:
        return max(rc.degree(self.num), rc.degree(self.den))

    def __call__(self, z):
        return rc.peval(self.num, z) / rc.peval(self.den, z)

    def derivative_value(self, z):
        """Value of the derivative (num' den - num den') / den**2 at z."""
        nv = rc.peval(self.num, z)
        dv = rc.peval(self.den, z)
        npv = rc.peval(rc.pder(self.num), z)
        dpv = rc.peval(rc.pder(self.den), z)
        return (npv * dv - nv * dpv) / (dv * dv)

    def monic(self) -> "RationalMap":
        """Scale so the denominator (or numerator if den is zero) is monic."""
        lead = self.den[-1] if self.den.size else self.num[-1]
        return RationalMap(self.num / lead, self.den / lead)

    def fixes_infinity(self) -> bool:
        return rc.degree(self.num) > rc.degree(self.den)

    def value_at_infinity(self):
        k, l = rc.degree(self.num), rc.degree(self.den)
        if k > l:
            return INF
        if k < l:
            return 0j
        return self.num[-1] / self.den[-1]


def reduce_map(num, den, cluster_radius: float = 1e-8) -> RationalMap:
    """Cancel numerically-common roots of num and den, then rebuild."""
    num, den = rc.trim(rc.as_poly(num)), rc.trim(rc.as_poly(den))
    if rc.degree(num) < 1 or rc.degree(den) < 1:
        return RationalMap(num, den)
    rn = list(rc.poly_roots(num))
    rd = list(rc.poly_roots(den))
    scale = 1.0 + max(np.abs(rn).max(), np.abs(rd).max())
    kept_n, common = [], []
    for r in rn:
        hit = next((i for i, s in enumerate(rd) if abs(r - s) <= cluster_radius * scale), None)
        if hit is None:
            kept_n.append(r)
        else:
            common.append(0.5 * (r + rd.pop(hit)))
    if not common:
        return RationalMap(num, den)
    new_num = num[-1] * rc.poly_from_factors([(r, 1) for r in kept_n])
    new_den = den[-1] * rc.poly_from_factors([(r, 1) for r in rd])
    return RationalMap(new_num, new_den)


class FixedPointClass(Enum):
    SUPERATTRACTING = "Superattracting"
    ATTRACTING = "Attracting"
    REPELLING = "Repelling"
    RATIONALLY_INDIFFERENT = "RationallyIndifferent"
    IRRATIONALLY_INDIFFERENT = "IrrationallyIndifferent"


@dataclass(frozen=True)
class FixedPointRecord:
    location: object  # complex or INF
    multiplier: complex
    pq: tuple | None  # (p, q) with |p - q| = 1, when reconstructable
    index: complex  # residue fixed point index 1/(1 - multiplier)
    klass: FixedPointClass


def classify_multiplier(lam: complex) -> FixedPointClass:
    mod = abs(lam)
    if mod < 1e-10:
        return FixedPointClass.SUPERATTRACTING
    if abs(mod - 1.0) <= 1e-9:
        # rational vs irrational split: small-order root of unity probe only
        for order in range(1, MULTIPLICITY_CAP + 1):
            w = lam**order
            if abs(w - 1.0) <= 1e-7:
                return FixedPointClass.RATIONALLY_INDIFFERENT
        return FixedPointClass.IRRATIONALLY_INDIFFERENT
    if mod < 1.0:
        return FixedPointClass.ATTRACTING
    return FixedPointClass.REPELLING


def reconstruct_pq(lam: complex) -> tuple[int, int] | None:
    """Invert lambda = p/q with |p - q| = 1; None if lambda is not of that form."""
    if abs(lam.imag) > 1e-8:
        return None
    x = lam.real
    if abs(x) < 1e-8:
        return (0, 1)
    if abs(x) < 1.0:
        q = round(1.0 / (1.0 - x))
        p = q - 1
    elif x > 1.0:
        q = round(1.0 / (x - 1.0))
        p = q + 1
    else:
        return None
    if q < 1 or q > MULTIPLICITY_CAP or p < 0:
        return None
    if abs(lam - p / q) > 1e-6:
        return None
    return (p, q)


def _pq_index(p: int, q: int) -> complex:
    # 1/(1 - p/q) = q/(q - p) = +q (attracting) or -q (repelling)
    return complex(q if p < q else -q)


def newton_degree(R: FactoredRational) -> int:
    """Degree of N_R: m + n - 1 when d = e + 1, else m + n."""
    return R.m + R.n - 1 if R.d == R.e + 1 else R.m + R.n


def build_newton_map(R: FactoredRational) -> RationalMap:
    """Expand N_R = z - (A*B)/(Atil - Btil) into reduced coefficient form.

    A, B are the monic products over distinct roots/poles; Atil, Btil the
    weighted derivative sums.  The reduced degree must match the closed-form
    prediction; a mismatch signals coefficient-cancellation pathology.
    """
    pred = newton_degree(R)
    if pred <= 0:
        raise DegenerateMap(f"predicted Newton map degree {pred} <= 0")

    A = rc.poly_from_factors([(a, 1) for a, _ in R.roots])
    B = rc.poly_from_factors([(b, 1) for b, _ in R.poles])

    a_til = np.zeros(1, dtype=complex)
    for i, (_, d_i) in enumerate(R.roots):
        others = [(a, 1) for k, (a, _) in enumerate(R.roots) if k != i]
        a_til = rc.padd(a_til, d_i * rc.poly_from_factors(others))
    a_til = rc.pmul(B, a_til) if R.m else np.zeros(0, dtype=complex)

    b_til = np.zeros(1, dtype=complex)
    for j, (_, e_j) in enumerate(R.poles):
        others = [(b, 1) for l, (b, _) in enumerate(R.poles) if l != j]
        b_til = rc.padd(b_til, e_j * rc.poly_from_factors(others))
    b_til = rc.pmul(A, b_til) if R.n else np.zeros(0, dtype=complex)

    den = rc.psub(a_til, b_til)
    num = rc.psub(rc.pmul(np.array([0.0, 1.0], dtype=complex), den), rc.pmul(A, B))

    N = RationalMap(num, den)
    if N.degree != pred:
        N = reduce_map(num, den)
    if N.degree != pred:
        raise DegreeMismatch(
            f"reduced degree {N.degree} != predicted degree {pred}"
        )
    return N.monic()


def fixed_points(R: FactoredRational) -> list[FixedPointRecord]:
    """All fixed points of N_R with closed-form multipliers.

    Every distinct root alpha_i (multiplier (d_i-1)/d_i), every distinct
    pole beta_j (multiplier (e_j+1)/e_j), plus infinity with multiplier
    (d-e)/(d-e-1) when d != e+1.
    """
    recs = []
    for a, d_i in R.roots:
        p, q = d_i - 1, d_i
        recs.append(_record(a, p, q))
    for b, e_j in R.poles:
        p, q = e_j + 1, e_j
        recs.append(_record(b, p, q))
    if R.d != R.e + 1:
        if R.d > R.e:
            p, q = R.d - R.e, R.d - R.e - 1
        else:
            p, q = R.e - R.d, R.e - R.d + 1
        recs.append(_record(INF, p, q))
    return recs


def _record(loc, p: int, q: int) -> FixedPointRecord:
    lam = complex(p / q) if q else 0j
    return FixedPointRecord(
        location=loc,
        multiplier=lam,
        pq=(p, q),
        index=_pq_index(p, q),
        klass=classify_multiplier(lam),
    )


def multiplier_at(N: RationalMap, z0) -> complex:
    """Derivative of N at a fixed point z0; explicit degree bookkeeping at infinity."""
    if is_inf(z0):
        k, l = rc.degree(N.num), rc.degree(N.den)
        if k <= l:
            raise NotFixed("infinity is not a fixed point: deg num <= deg den")
        if k == l + 1:
            return N.den[-1] / N.num[-1]
        return 0j
    z0 = complex(z0)
    if abs(N(z0) - z0) > 1e-6:
        raise NotFixed(f"{z0} is not a fixed point")
    return complex(N.derivative_value(z0))


def residue_index(rec: FixedPointRecord) -> complex:
    """Residue index 1/(1 - lambda) of a simple fixed point."""
    if abs(rec.multiplier - 1.0) < 1e-9:
        raise ParabolicPoint("multiplier is 1; index undefined by this formula")
    if rec.pq is not None:
        return _pq_index(*rec.pq)
    return 1.0 / (1.0 - rec.multiplier)


def residue_index_contour(
    N: RationalMap, z0: complex, radius: float, samples: int = 256
) -> complex:
    """Independent oracle: trapezoidal quadrature of (1/2 pi i) oint dz/(z - N(z))."""
    if samples < 64:
        raise ValueError("samples must be >= 64")
    z0 = complex(z0)
    for w in _finite_fixed_points(N):
        if abs(w - z0) > 1e-9 and abs(w - z0) < 2.0 * radius:
            raise LoopTooLarge(f"fixed point {w} within 2*radius of {z0}")
    theta = 2.0 * np.pi * np.arange(samples) / samples
    z = z0 + radius * np.exp(1j * theta)
    integrand = (z - z0) / (z - N(z))
    return complex(integrand.mean())


def verify_rfpt(recs) -> tuple[complex, bool]:
    """Sum of residue indices over all fixed points; passes iff it equals 1."""
    total = sum((rec.index for rec in recs), 0j)
    return total, abs(total - 1.0) <= 1e-7


def critical_points(N: RationalMap) -> tuple[list[complex], bool]:
    """Finite critical points (with multiplicity) and an infinity-critical flag."""
    if N.degree < 2:
        raise UnsupportedDegree("critical points require degree >= 2")
    wron = rc.psub(
        rc.pmul(rc.pder(N.num), N.den), rc.pmul(N.num, rc.pder(N.den))
    )
    finite = list(rc.poly_roots(wron)) if rc.degree(wron) >= 1 else []
    inf_critical = rc.degree(N.num) >= rc.degree(N.den) + 2
    return finite, inf_critical


def _finite_fixed_points(N: RationalMap) -> np.ndarray:
    p = rc.psub(N.num, rc.pmul(np.array([0.0, 1.0], dtype=complex), N.den))
    if rc.degree(p) < 1:
        return np.zeros(0, dtype=complex)
    return rc.poly_roots(p)


def map_fixed_points(N: RationalMap) -> list[FixedPointRecord]:
    """Fixed-point records of a raw coefficient map (no closed forms assumed)."""
    recs = []
    for z in _finite_fixed_points(N):
        lam = complex(N.derivative_value(z))
        pq = reconstruct_pq(lam)
        idx = _pq_index(*pq) if pq else (
            1.0 / (1.0 - lam) if abs(lam - 1.0) > 1e-9 else complex("nan")
        )
        recs.append(
            FixedPointRecord(complex(z), lam, pq, idx, classify_multiplier(lam))
        )
    if N.fixes_infinity():
        lam = multiplier_at(N, INF)
        pq = reconstruct_pq(lam)
        idx = _pq_index(*pq) if pq else (
            1.0 / (1.0 - lam) if abs(lam - 1.0) > 1e-9 else complex("nan")
        )
        recs.append(FixedPointRecord(INF, lam, pq, idx, classify_multiplier(lam)))
    return recs
