"""Moebius conjugacy machinery for Newton maps.

Quadratic Newton maps fall into exactly two conjugacy families (N1 with two
attracting finite fixed points, N2 with only the repelling pair finite); the
classifier returns the family, its integer parameters, and a verified
Moebius witness.  Cubic Newton maps are tested row by row for conjugacy to a
polynomial, and when conjugate, reduced to the normal form z^3 + a z + b.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import rational_core as rc
from .errors import (
    DegenerateTriple,
    NewtonAtlasError,
    NonSimpleFixedPoint,
    NotCubic,
    NotQuadratic,
    NotSuperattracting,
    TooFewPoints,
    UnsupportedDegree,
)
from .newton_map import (
    FactoredRational,
    RationalMap,
    build_newton_map,
    critical_points,
    map_fixed_points,
    multiplier_at,
    newton_degree,
    reduce_map,
)
from .rational_core import INF, is_inf


@dataclass(frozen=True)
class MobiusMap:
    """The fractional-linear map z -> (a z + b) / (c z + d)."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        a, b, c, d = (complex(v) for v in (self.a, self.b, self.c, self.d))
        scale = max(abs(a), abs(b), abs(c), abs(d))
        if abs(a * d - b * c) <= 1e-12 * scale * scale:
            raise DegenerateTriple("Moebius determinant too close to zero")
        for name, v in (("a", a), ("b", b), ("c", c), ("d", d)):
            object.__setattr__(self, name, v / scale)

    def __call__(self, z):
        return mobius_apply(self, z)

    def is_affine(self) -> bool:
        scale = max(abs(self.a), abs(self.b), abs(self.c), abs(self.d))
        return abs(self.c) <= 1e-12 * scale

    def inverse(self) -> "MobiusMap":
        return MobiusMap(self.d, -self.b, -self.c, self.a)

    def compose(self, other: "MobiusMap") -> "MobiusMap":
        """self after other: z -> self(other(z))."""
        return MobiusMap(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    @staticmethod
    def identity() -> "MobiusMap":
        return MobiusMap(1.0, 0.0, 0.0, 1.0)


def mobius_apply(M: MobiusMap, z):
    """Extended-plane evaluation: infinity -> a/c, pole -d/c -> infinity."""
    if is_inf(z):
        if abs(M.c) == 0.0:
            return INF
        return M.a / M.c
    z = complex(z)
    den = M.c * z + M.d
    if den == 0.0:
        return INF
    return (M.a * z + M.b) / den


def _to_zero_one_inf(z1, z2, z3) -> MobiusMap:
    # matrix of the map sending (z1, z2, z3) -> (0, 1, inf)
    if is_inf(z1):
        return MobiusMap(0.0, z2 - z3, 1.0, -z3)
    if is_inf(z2):
        return MobiusMap(1.0, -z1, 1.0, -z3)
    if is_inf(z3):
        return MobiusMap(1.0, -z1, 0.0, z2 - z1)
    return MobiusMap(z2 - z3, -z1 * (z2 - z3), z2 - z1, -z3 * (z2 - z1))


def _pairwise_distinct(pts) -> bool:
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            a, b = pts[i], pts[j]
            if is_inf(a) and is_inf(b):
                return False
            if not is_inf(a) and not is_inf(b) and abs(a - b) <= 1e-12:
                return False
    return True


def mobius_from_three_points(src, dst) -> MobiusMap:
    """The unique Moebius map with M(src[i]) = dst[i], via cross-ratio charts."""
    if not _pairwise_distinct(src) or not _pairwise_distinct(dst):
        raise DegenerateTriple("three-point construction needs distinct points")
    S = _to_zero_one_inf(*src)
    D = _to_zero_one_inf(*dst)
    return D.inverse().compose(S)


def _homogeneous_compose(coeffs: np.ndarray, K: int, lin_num, lin_den) -> np.ndarray:
    """sum_i c_i * lin_num^i * lin_den^(K-i) for a degree-<=K coefficient list."""
    c = np.zeros(K + 1, dtype=complex)
    c[: coeffs.size] = coeffs
    out = np.zeros(1, dtype=complex)
    for i in range(K + 1):
        if c[i] == 0:
            continue
        term = np.ones(1, dtype=complex)
        for _ in range(i):
            term = np.convolve(term, lin_num)
        for _ in range(K - i):
            term = np.convolve(term, lin_den)
        out = rc.padd(out, c[i] * term)
    return out


def conjugate_map(N: RationalMap, M: MobiusMap) -> RationalMap:
    """Coefficient form of M o N o M^{-1}, reduced to the same degree."""
    K = N.degree
    # M^{-1}(z) = (d z - b) / (-c z + a)
    lin_num = np.array([-M.b, M.d], dtype=complex)
    lin_den = np.array([M.a, -M.c], dtype=complex)
    u = _homogeneous_compose(N.num, K, lin_num, lin_den)
    v = _homogeneous_compose(N.den, K, lin_num, lin_den)
    num = rc.padd(M.a * u, M.b * v)
    den = rc.padd(M.c * u, M.d * v)
    out = RationalMap(num, den)
    if out.degree != K:
        out = reduce_map(num, den)
    return out


def _check_simple(recs, deg: int):
    if len(recs) != deg + 1:
        raise NonSimpleFixedPoint(
            f"found {len(recs)} fixed points, expected {deg + 1}"
        )
    finite = [r.location for r in recs if not is_inf(r.location)]
    for i in range(len(finite)):
        for j in range(i + 1, len(finite)):
            if abs(finite[i] - finite[j]) < 1e-7:
                raise NonSimpleFixedPoint("two fixed points coincide")
    for r in recs:
        if abs(r.multiplier - 1.0) < 1e-9:
            raise NonSimpleFixedPoint("multiplier too close to 1")


def multiplier_spectrum(N: RationalMap) -> list[complex]:
    """Multipliers at all degree+1 fixed points (a multiset)."""
    recs = map_fixed_points(N)
    _check_simple(recs, N.degree)
    return [r.multiplier for r in recs]


def _probe_points(maps, count: int = 20) -> list[complex]:
    pts: list[complex] = []
    k = 0
    while len(pts) < count and k < 400:
        w = 1.7 * np.exp(2j * np.pi * (k / 23.0)) + 0.13 + 0.21j
        k += 1
        ok = True
        for Np in maps:
            dscale = 1.0 + np.abs(Np.den).max() if Np.den.size else 1.0
            if abs(rc.peval(Np.den, w)) < 1e-4 * dscale:
                ok = False
                break
        if ok:
            pts.append(w)
    return pts


def _maps_agree(f1: RationalMap, f2: RationalMap, tol: float = 1e-7) -> bool:
    for w in _probe_points([f1, f2]):
        v1, v2 = f1(w), f2(w)
        if abs(v1 - v2) > tol * (1.0 + abs(v1)):
            return False
    return True


def quadratic_conjugacy_witness(f1: RationalMap, f2: RationalMap) -> MobiusMap | None:
    """A Moebius M with f1 = M o f2 o M^{-1}, or None if none verifies.

    Requires matching multiplier multisets (the quadratic rigidity
    criterion); tries every multiplier-consistent pairing of the three
    fixed points and keeps the first that verifies pointwise.
    """
    if f1.degree != 2 or f2.degree != 2:
        raise UnsupportedDegree("witness search is for quadratic maps")
    recs1 = map_fixed_points(f1)
    recs2 = map_fixed_points(f2)
    _check_simple(recs1, 2)
    _check_simple(recs2, 2)
    for perm in itertools.permutations(range(3)):
        if any(
            abs(recs1[i].multiplier - recs2[perm[i]].multiplier) > 1e-6
            for i in range(3)
        ):
            continue
        src = tuple(recs2[perm[i]].location for i in range(3))
        dst = tuple(recs1[i].location for i in range(3))
        try:
            M = mobius_from_three_points(src, dst)
        except DegenerateTriple:
            continue
        if _maps_agree(f1, conjugate_map(f2, M)):
            return M
    return None


def canonical_n1(d1: int, d2: int) -> RationalMap:
    """Newton map of z^d1 (z-1)^d2: two attracting finite fixed points."""
    return RationalMap([0.0, 1.0 - d1, d1 + d2 - 1.0], [-float(d1), float(d1 + d2)])


def canonical_n2(e1: int, e2: int) -> RationalMap:
    """Newton map of 1/(z^e1 (z-1)^e2): attracting only at infinity."""
    return RationalMap([0.0, -1.0 - e1, e1 + e2 + 1.0], [-float(e1), float(e1 + e2)])


@dataclass(frozen=True)
class QuadClass:
    kind: str  # "N1" or "N2"
    params: tuple[int, int]  # (d1, d2) or (e1, e2), canonicalized ascending
    witness: MobiusMap


def classify_quadratic(R: FactoredRational) -> QuadClass:
    """Sort a quadratic Newton map into the N1 or N2 family with a witness."""
    if newton_degree(R) != 2:
        raise NotQuadratic(f"Newton map degree is {newton_degree(R)}, not 2")
    m, n, d, e = R.m, R.n, R.d, R.e
    if (m, n) == (2, 0):
        kind, params = "N1", (R.roots[0][1], R.roots[1][1])
    elif (m, n) == (0, 2):
        kind, params = "N2", (R.poles[0][1], R.poles[1][1])
    elif (m, n) == (1, 1):
        if d <= e:
            kind, params = "N1", (d, e - d + 1)
        else:
            kind, params = "N2", (e, d - e - 1)
    elif (m, n) == (1, 2):
        kind, params = "N2", (R.poles[0][1], R.poles[1][1])
    elif (m, n) == (2, 1):
        kind, params = "N1", (R.roots[0][1], R.roots[1][1])
    else:
        raise NotQuadratic(f"(m, n) = {(m, n)} cannot give a quadratic Newton map")
    params = tuple(sorted(params))
    canon = canonical_n1(*params) if kind == "N1" else canonical_n2(*params)
    witness = quadratic_conjugacy_witness(canon, build_newton_map(R))
    if witness is None:
        raise NewtonAtlasError("no witness found for a classified quadratic map")
    return QuadClass(kind, params, witness)


def recognize_newton_map(N: RationalMap) -> FactoredRational | None:
    """Reconstruct R with build_newton_map(R) = N, or None if N is no Newton map.

    Every finite fixed point must have multiplier p/q with |p - q| = 1; it
    becomes a root (p < q) or pole (p > q) of multiplicity q.  The rebuilt
    map is verified coefficient-wise against N.
    """
    if N.degree < 2:
        raise UnsupportedDegree("recognition requires degree >= 2")
    recs = map_fixed_points(N)
    _check_simple(recs, N.degree)
    roots, poles = [], []
    for rec in recs:
        if is_inf(rec.location):
            continue
        if rec.pq is None:
            return None
        p, q = rec.pq
        if p < q:
            roots.append((rec.location, q))
        else:
            poles.append((rec.location, q))
    if not roots and not poles:
        return None
    try:
        R = FactoredRational(tuple(roots), tuple(poles))
        rebuilt = build_newton_map(R)
    except (ValueError, NewtonAtlasError):
        return None
    if rebuilt.degree != N.degree:
        return None
    return R if _coeffs_match(rebuilt, N.monic()) else None


def _coeffs_match(f: RationalMap, g: RationalMap, tol: float = 1e-7) -> bool:
    def pad(p, k):
        out = np.zeros(k, dtype=complex)
        out[: p.size] = p
        return out

    k = max(f.num.size, g.num.size, f.den.size, g.den.size)
    scale = max(np.abs(pad(f.num, k)).max(), np.abs(pad(f.den, k)).max(), 1.0)
    return bool(
        np.all(np.abs(pad(f.num, k) - pad(g.num, k)) <= tol * scale)
        and np.all(np.abs(pad(f.den, k) - pad(g.den, k)) <= tol * scale)
    )


def affine_normalize_to(R: FactoredRational, p0: complex, p1: complex):
    """Send p0 -> 0 and p1 -> 1 by precomposition with T(z) = (p1-p0) z + p0."""
    span = p1 - p0
    if abs(span) <= 1e-12:
        raise DegenerateTriple("normalization points coincide")
    T = MobiusMap(span, p0, 0.0, 1.0)
    roots = tuple(((a - p0) / span, k) for a, k in R.roots)
    poles = tuple(((b - p0) / span, k) for b, k in R.poles)
    return FactoredRational(roots, poles), T


def normalize_affine(R: FactoredRational):
    """Default normalization: a simple root (else the first distinguished
    point) goes to 0, the next distinguished point to 1."""
    if R.m + R.n < 2:
        raise TooFewPoints("need two distinguished finite points")
    root_locs = [a for a, _ in R.roots]
    pole_locs = [b for b, _ in R.poles]
    simple = [a for a, k in R.roots if k == 1]
    p0 = simple[0] if simple else (root_locs[0] if root_locs else pole_locs[0])
    rest = [z for z in root_locs + pole_locs if z != p0]
    remaining_roots = [z for z in root_locs if z != p0]
    p1 = remaining_roots[0] if remaining_roots else rest[0]
    return affine_normalize_to(R, p0, p1)


def exceptional_point_check(N: RationalMap, z0) -> bool:
    """True iff the full preimage of the superattracting fixed point z0 is {z0}."""
    if N.degree != 3:
        raise NotCubic(f"map degree is {N.degree}, not 3")
    lam = multiplier_at(N, z0)
    if abs(lam) > 1e-8:
        raise NotSuperattracting(f"multiplier {lam} is not 0")
    if is_inf(z0):
        # any finite pole is a preimage of infinity other than itself
        return rc.degree(N.den) == 0
    z0 = complex(z0)
    pre = rc.psub(N.num, z0 * N.den)
    if rc.degree(pre) < 3:
        return False  # a preimage escaped to infinity
    roots = rc.poly_roots(pre)
    return bool(np.all(np.abs(roots - z0) <= 1e-7 * (1.0 + abs(z0))))


def as_polynomial(N: RationalMap, tol: float = 1e-8) -> np.ndarray | None:
    """Coefficients of N as a polynomial, or None if the denominator is not
    (numerically) constant."""
    M = N.monic()
    den = M.den
    if rc.degree(den) > 0:
        M = reduce_map(M.num, M.den).monic()
        den = M.den
    if rc.degree(den) > 0:
        scale = np.abs(den).max()
        if np.abs(den[1:]).max() > tol * scale:
            return None
        M = RationalMap(M.num / den[0], den[:1] / den[0])
    return M.num


def _sqrt_principal(w: complex) -> complex:
    s = np.sqrt(complex(w))
    if s.real < 0 or (s.real == 0 and s.imag < 0):
        s = -s
    return s


def cubic_normal_form(N: RationalMap, exceptional) -> tuple[complex, complex]:
    """Reduce a cubic map whose exceptional point is `exceptional` to
    z^3 + a z + b; returns (a, b)."""
    recs = map_fixed_points(N)
    # phi must send the exceptional point to infinity, so the two points it
    # keeps fixed have to be finite
    others = [
        r.location
        for r in recs
        if not _same_point(r.location, exceptional) and not is_inf(r.location)
    ]
    phi = mobius_from_three_points(
        (others[0], others[1], exceptional), (others[0], others[1], INF)
    )
    P = conjugate_map(N, phi)
    coeffs = as_polynomial(P)
    if coeffs is None or rc.degree(coeffs) != 3:
        raise NewtonAtlasError("conjugated map is not a cubic polynomial")
    a3, a2 = coeffs[3], coeffs[2]
    s = _sqrt_principal(a3)
    psi = MobiusMap(1.0 / s, -a2 / (3.0 * a3), 0.0, 1.0)
    Pn = conjugate_map(P, psi.inverse())
    poly = as_polynomial(Pn)
    if poly is None or rc.degree(poly) != 3:
        raise NewtonAtlasError("normal-form reduction failed")
    poly = poly / poly[3]
    return complex(poly[1]), complex(poly[0])


def _same_point(p, q) -> bool:
    if is_inf(p) or is_inf(q):
        return is_inf(p) and is_inf(q)
    return abs(p - q) <= 1e-7


def normal_form_indices(a: complex, b: complex) -> tuple[int, ...]:
    """Residue indices of the finite fixed points of z^3 + a z + b, sorted
    descending; they sum to 0 by the fixed-point index theorem."""
    fp = rc.poly_roots(np.array([b, a - 1.0, 0.0, 1.0], dtype=complex))
    idx = []
    for z in fp:
        lam = 3.0 * z * z + a
        idx.append(int(round((1.0 / (1.0 - lam)).real)))
    return tuple(sorted(idx, reverse=True))


CASE_NEVER = ("IA", "IIA")

_SENTINEL = 1.0 + 0j  # condition value for rows whose premise cannot be met


@dataclass(frozen=True)
class CubicPolyReport:
    case_id: str
    condition_value: complex
    conjugate_to_poly: bool
    exceptional_point: object | None  # complex or INF
    normal_form: tuple[complex, complex] | None  # (a, b)
    indices: tuple[int, ...] | None


def _candidate_rows(R: FactoredRational) -> list[tuple[str, complex, object]]:
    """(case_id, condition value, exceptional point in original coordinates)
    for every applicable superattracting-fixed-point candidate."""
    m, n, d, e = R.m, R.n, R.d, R.e
    rows: list[tuple[str, complex, object]] = []

    if d == e + 1:  # m + n = 4, infinity not fixed
        if (m, n) == (1, 3):
            return [("IA", _SENTINEL, None)]
        if (m, n) == (2, 2):
            for r, k in R.roots:
                if k != 1:
                    continue
                other = next(a for a, _ in R.roots if a != r)
                Rn, _ = affine_normalize_to(R, r, other)
                (g1, e1), (g2, e2) = Rn.poles
                val = (e1 + e2) * g1 * g2 - e1 * g2 - e2 * g1
                rows.append(("IB", val, r))
            return rows or [("IB", _SENTINEL, None)]
        if (m, n) == (3, 1):
            for r, k in R.roots:
                if k != 1:
                    continue
                rest = [(a, q) for a, q in R.roots if a != r]
                Rn, _ = affine_normalize_to(R, r, rest[0][0])
                d2 = rest[0][1]
                alpha = (rest[1][0] - r) / (rest[0][0] - r)
                d3 = rest[1][1]
                gamma = Rn.poles[0][0]
                val = d2 * alpha * gamma + d3 * gamma - (d2 + d3) * alpha
                rows.append(("IC", val, r))
            return rows or [("IC", _SENTINEL, None)]
        raise NotCubic(f"(m, n) = {(m, n)} is impossible for a cubic Newton map")

    # d != e + 1, m + n = 3, infinity fixed
    if (m, n) == (0, 3):
        return [("IIA", _SENTINEL, None)]
    if (m, n) == (1, 2):
        (alpha, dm), = R.roots
        Rn, _ = affine_normalize_to(R, alpha, R.poles[0][0])
        (one_pole, e1), (gpole, e2) = Rn.poles
        gamma = gpole if abs(one_pole - 1.0) < 1e-9 else one_pole
        if dm == e:  # infinity superattracting
            return [("IIBi", gamma + e1 / e2, INF)]
        if dm == 1:  # the root itself is superattracting
            return [("IIBii", gamma + e2 / e1, alpha)]
        return [("IIBi", _SENTINEL, None)]
    if (m, n) == (2, 1):
        (a1, d1), (a2, d2) = R.roots
        (b, ep), = R.poles
        if ep == d1 + d2:  # infinity superattracting
            gamma = (b - a1) / (a2 - a1)
            rows.append(("IICi", gamma - d2 / (d1 + d2), INF))
        for r, k in R.roots:
            if k != 1:
                continue
            other, dk = next((a, q) for a, q in R.roots if a != r)
            gamma = (b - r) / (other - r)
            rows.append(("IICii", gamma - ep / dk, r))
        return rows or [("IICi", _SENTINEL, None)]
    if (m, n) == (3, 0):
        for r, k in R.roots:
            if k != 1:
                continue
            rest = [(a, q) for a, q in R.roots if a != r]
            d2 = rest[0][1]
            alpha = (rest[1][0] - r) / (rest[0][0] - r)
            d3 = rest[1][1]
            rows.append(("IID", alpha + d3 / d2, r))
        return rows or [("IID", _SENTINEL, None)]
    raise NotCubic(f"(m, n) = {(m, n)} is impossible for a cubic Newton map")


def cubic_polynomial_condition(R: FactoredRational) -> CubicPolyReport:
    """Decide whether the cubic Newton map of R is conjugate to a polynomial.

    Dispatches on the (m, n, d = e + 1?) subcase, evaluates the subcase's
    algebraic condition in normalized coordinates for every superattracting
    candidate, and confirms a satisfied condition with the exceptional-point
    preimage test before producing the normal form z^3 + a z + b.
    """
    if newton_degree(R) != 3:
        raise NotCubic(f"Newton map degree is {newton_degree(R)}, not 3")
    rows = _candidate_rows(R)
    chosen = next((row for row in rows if abs(row[1]) <= 1e-8), rows[0])
    case_id, value, witness_pt = chosen
    conjugate = abs(value) <= 1e-8 and case_id not in CASE_NEVER

    if not conjugate:
        return CubicPolyReport(case_id, value, False, None, None, None)

    N = build_newton_map(R)
    if not exceptional_point_check(N, witness_pt):
        return CubicPolyReport(case_id, value, False, None, None, None)
    a, b = cubic_normal_form(N, witness_pt)
    indices = normal_form_indices(a, b)
    return CubicPolyReport(case_id, value, True, witness_pt, (a, b), indices)


def unicritical_check(N: RationalMap) -> bool:
    """True iff N has at least two distinct finite critical points.

    Every Newton map conjugate to a polynomial must pass; this exists as a
    falsification probe for the no-unicritical-conjugate theorem.
    """
    finite, _ = critical_points(N)
    distinct = rc.cluster_points(finite, 1e-6 * (1.0 + max((abs(c) for c in finite), default=0.0)))
    return len(distinct) >= 2
