"""Orbit iteration, critical-orbit basin discovery, and basin rasterization.

Capture semantics: an orbit is captured by a finite attractor once it comes
within eps and stays inside that radius for three confirmation steps; it is
captured by infinity as soon as |z| exceeds 1/eps (when infinity is in the
attractor list).  The rasterizer applies the same per-pixel rule, so any
parallel schedule produces the bit-identical image.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import rational_core as rc
from .conjugacy import classify_quadratic, cubic_polynomial_condition
from .errors import UnsupportedDegree
from .newton_map import (
    FactoredRational,
    FixedPointClass,
    RationalMap,
    build_newton_map,
    critical_points,
    fixed_points,
    newton_degree,
)
from .rational_core import INF, is_inf

CONFIRM_STEPS = 3


@dataclass(frozen=True)
class OrbitResult:
    attractor_index: int | None
    iterations: int
    final_point: object  # complex or INF


@dataclass(frozen=True)
class Viewport:
    center: complex
    width: float
    height: float
    px_w: int
    px_h: int

    def __post_init__(self):
        if self.px_w < 1 or self.px_h < 1 or self.width <= 0 or self.height <= 0:
            raise ValueError("viewport must have positive size")

    def grid(self) -> np.ndarray:
        """Complex coordinates of pixel centers, row-major, top row first."""
        j = np.arange(self.px_w)
        i = np.arange(self.px_h)
        x = self.center.real + (j + 0.5 - self.px_w / 2.0) * (self.width / self.px_w)
        y = self.center.imag - (i + 0.5 - self.px_h / 2.0) * (self.height / self.px_h)
        return x[None, :] + 1j * y[:, None]


@dataclass(frozen=True, eq=False)
class BasinImage:
    viewport: Viewport
    indices: np.ndarray  # int grid; attractor index, or -1 for unresolved
    iterations: np.ndarray  # int grid


class JuliaVariant(Enum):
    JORDAN_CURVE = "JordanCurve"
    TOTALLY_DISCONNECTED = "TotallyDisconnected"
    SELF_INTERSECTING = "SelfIntersectingClosedCurve"
    UNDETERMINED = "Undetermined"


@dataclass(frozen=True)
class JuliaClass:
    variant: JuliaVariant
    provenance: str


def _split_attractors(attractors):
    finite = []
    fin_idx = []
    inf_idx = None
    for k, a in enumerate(attractors):
        if is_inf(a):
            inf_idx = k
        else:
            finite.append(complex(a))
            fin_idx.append(k)
    return np.array(finite, dtype=complex), fin_idx, inf_idx


def _orbit_kernel(N: RationalMap, z0: np.ndarray, attractors, max_iter: int, eps: float):
    """Vectorized capture test; returns (index, iterations, final z) arrays."""
    fin, fin_idx, inf_idx = _split_attractors(attractors)
    z = z0.astype(complex).copy()
    n = z.size
    res_idx = np.full(n, -1, dtype=np.int64)
    res_it = np.full(n, max_iter, dtype=np.int64)
    pend = np.full(n, -1, dtype=np.int64)
    pcount = np.zeros(n, dtype=np.int64)
    pit = np.zeros(n, dtype=np.int64)
    active = np.ones(n, dtype=bool)
    escape = 1.0 / eps

    def check_state(step: int):
        nonlocal active
        nonfin = ~np.isfinite(z)
        big = np.zeros(n, dtype=bool)
        np.greater(np.abs(z), escape, out=big, where=~nonfin)
        if inf_idx is not None:
            esc = active & (big | nonfin)
            res_idx[esc] = inf_idx
            res_it[esc] = step
            active &= ~esc
        else:
            dead = active & nonfin
            res_it[dead] = step
            active &= ~dead
        if fin.size:
            dist = np.abs(z[:, None] - fin[None, :])
            k = np.argmin(dist, axis=1)
            dmin = dist[np.arange(n), k]
            near = active & np.isfinite(dmin) & (dmin <= eps)
            switch = near & (pend != k)
            pend[switch] = k[switch]
            pcount[switch] = 0
            pit[switch] = step
            pcount[near & ~switch] += 1
            lost = active & ~near
            pend[lost] = -1
            done = near & (pcount >= CONFIRM_STEPS)
            if done.any():
                res_idx[done] = np.array(fin_idx, dtype=np.int64)[pend[done]]
                res_it[done] = pit[done]
                active &= ~done

    check_state(0)
    for step in range(1, max_iter + 1):
        if not active.any():
            break
        with np.errstate(all="ignore"):
            w = rc.peval(N.num, z) / rc.peval(N.den, z)
        z = np.where(active, w, z)
        check_state(step)
    return res_idx, res_it, z


def iterate_orbit(N: RationalMap, z0, attractors, max_iter: int = 200, eps: float = 1e-8) -> OrbitResult:
    """Iterate N from z0 and report which attractor (if any) captures the orbit."""
    if max_iter < 1 or eps <= 0:
        raise ValueError("max_iter >= 1 and eps > 0 required")
    if is_inf(z0):
        val = N.value_at_infinity()
        inf_pos = next((k for k, a in enumerate(attractors) if is_inf(a)), None)
        if is_inf(val):
            return OrbitResult(inf_pos, 0, INF)
        z0 = val
    idx, its, z = _orbit_kernel(N, np.array([complex(z0)]), attractors, max_iter, eps)
    final = INF if not np.isfinite(z[0]) else complex(z[0])
    return OrbitResult(int(idx[0]) if idx[0] >= 0 else None, int(its[0]), final)


def classify_critical_orbits(R: FactoredRational, max_iter: int = 200, eps: float = 1e-8):
    """Map every critical point of N_R to the attracting fixed point that
    captures its orbit (None if no capture within max_iter)."""
    if newton_degree(R) < 2:
        raise UnsupportedDegree("need Newton map degree >= 2")
    N = build_newton_map(R)
    recs = [
        r
        for r in fixed_points(R)
        if r.klass in (FixedPointClass.SUPERATTRACTING, FixedPointClass.ATTRACTING)
    ]
    attractors = [r.location for r in recs]
    finite_crits, inf_crit = critical_points(N)
    crit_list = [complex(c) for c, _ in rc.cluster_points(finite_crits, 1e-8)]
    if inf_crit:
        crit_list.append(INF)
    out = {}
    for c in crit_list:
        res = iterate_orbit(N, c, attractors, max_iter=max_iter, eps=eps)
        out[c] = attractors[res.attractor_index] if res.attractor_index is not None else None
    return out


def julia_topology_predict(R: FactoredRational) -> JuliaClass:
    """Julia-set topology implied by the classification theorems."""
    deg = newton_degree(R)
    if deg == 2:
        qc = classify_quadratic(R)
        if qc.kind == "N1":
            return JuliaClass(
                JuliaVariant.JORDAN_CURVE,
                "quadratic dichotomy: N1 family, two completely invariant "
                "attracting basins bounded by a Jordan curve",
            )
        return JuliaClass(
            JuliaVariant.TOTALLY_DISCONNECTED,
            "quadratic dichotomy: N2 family, single completely invariant "
            "basin of infinity with totally disconnected Julia set",
        )
    if deg == 3:
        rep = cubic_polynomial_condition(R)
        if rep.conjugate_to_poly and rep.indices is not None:
            positive = sum(1 for k in rep.indices if k > 0)
            if positive >= 2:
                return JuliaClass(
                    JuliaVariant.SELF_INTERSECTING,
                    "cubic polynomial conjugate with two finite attracting "
                    "fixed points: self intersecting closed curve",
                )
            return JuliaClass(
                JuliaVariant.JORDAN_CURVE,
                "cubic polynomial conjugate with one finite attracting "
                "fixed point: Jordan curve",
            )
        return JuliaClass(
            JuliaVariant.UNDETERMINED,
            "cubic Newton map not conjugate to a polynomial; no implemented "
            "theorem decides the topology",
        )
    raise UnsupportedDegree(f"no topology theorem for degree {deg}")


def render_basins(
    N: RationalMap,
    attractors,
    vp: Viewport,
    max_iter: int = 1000,
    eps: float = 1e-8,
    threads: int = 1,
) -> BasinImage:
    """Per-pixel basin classification over the viewport.

    The image is a pure function of iterate_orbit at each pixel center;
    thread count only changes scheduling, never bytes.
    """
    if not attractors:
        raise ValueError("attractor list must be nonempty")
    grid = vp.grid()
    flat = grid.ravel()
    threads = max(1, int(threads))
    if threads == 1:
        idx, its, _ = _orbit_kernel(N, flat, attractors, max_iter, eps)
    else:
        chunks = np.array_split(np.arange(flat.size), threads)
        idx = np.empty(flat.size, dtype=np.int64)
        its = np.empty(flat.size, dtype=np.int64)

        def work(sel):
            i, t, _ = _orbit_kernel(N, flat[sel], attractors, max_iter, eps)
            idx[sel] = i
            its[sel] = t

        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(work, chunks))
    return BasinImage(vp, idx.reshape(grid.shape), its.reshape(grid.shape))
