import numpy as np
import pytest

from newton_atlas import (
    INF,
    FactoredRational,
    JuliaVariant,
    RationalMap,
    UnsupportedDegree,
    Viewport,
    build_newton_map,
    classify_critical_orbits,
    is_inf,
    iterate_orbit,
    julia_topology_predict,
    render_basins,
)

CUBIC_A = FactoredRational(((0j, 4),), ((0.5 + 0j, 2), (-0.5 + 0j, 2)))


def test_viewport_grid_geometry():
    vp = Viewport(1 + 2j, 4.0, 2.0, 4, 2)
    g = vp.grid()
    assert g.shape == (2, 4)
    assert g[0, 0] == pytest.approx(-0.5 + 2.5j)  # top-left pixel center
    assert g[1, 3] == pytest.approx(2.5 + 1.5j)  # bottom-right
    with pytest.raises(ValueError):
        Viewport(0j, 0.0, 1.0, 4, 4)
    with pytest.raises(ValueError):
        Viewport(0j, 1.0, 1.0, 0, 4)


def test_iterate_orbit_contracting_map():
    N = RationalMap([0.0, 0.5], [1.0])
    res = iterate_orbit(N, 1.0 + 0j, [0j])
    assert res.attractor_index == 0
    assert abs(res.final_point) < 1e-8


def test_iterate_orbit_escape_to_infinity():
    N = RationalMap([0.0, 0.0, 1.0], [1.0])  # z^2
    res = iterate_orbit(N, 2.0 + 0j, [0j, INF], eps=1e-6)
    assert res.attractor_index == 1
    # starting inside the unit disk converges to 0 instead
    res0 = iterate_orbit(N, 0.5 + 0j, [0j, INF], eps=1e-6)
    assert res0.attractor_index == 0


def test_iterate_orbit_from_infinity():
    N = RationalMap([0.0, 0.0, 1.0], [1.0])
    res = iterate_orbit(N, INF, [0j, INF])
    assert res.attractor_index == 1 and res.iterations == 0
    # 1/z^... a map sending infinity to a finite value keeps iterating
    M = RationalMap([1.0, 1.0], [0.0, 2.0])  # (1 + z) / (2 z) -> 1/2 at infinity
    res2 = iterate_orbit(M, INF, [1.0 + 0j])
    assert res2.attractor_index == 0


def test_iterate_orbit_validation():
    N = RationalMap([0.0, 0.5], [1.0])
    with pytest.raises(ValueError):
        iterate_orbit(N, 1.0 + 0j, [0j], max_iter=0)
    with pytest.raises(ValueError):
        iterate_orbit(N, 1.0 + 0j, [0j], eps=0.0)


def test_capture_iteration_is_first_entry():
    # z/2 from 8: enters the 1e-1 ball at step 7 (8 / 2^7 < 0.1)
    N = RationalMap([0.0, 0.5], [1.0])
    res = iterate_orbit(N, 8.0 + 0j, [0j], eps=1e-1)
    assert res.iterations == 7


def test_classify_critical_orbits_golden_cubic():
    out = classify_critical_orbits(CUBIC_A)
    # critical points +-i/2 fall to the root at 0; infinity is its own basin
    by_kind = {"finite": set(), "inf": set()}
    for crit, att in out.items():
        key = "inf" if is_inf(crit) else "finite"
        by_kind[key].add(repr(att) if (att is None or is_inf(att)) else round(abs(att), 6))
    assert by_kind["finite"] == {0.0}
    assert by_kind["inf"] == {"INF"}


def test_julia_topology_predictions():
    assert julia_topology_predict(CUBIC_A).variant is JuliaVariant.JORDAN_CURVE
    cubic_b = FactoredRational(((0.5j, 2), (-0.5j, 2)), ((0j, 4),))
    assert julia_topology_predict(cubic_b).variant is JuliaVariant.SELF_INTERSECTING
    n1 = FactoredRational(((0j, 2), (1 + 0j, 3)), ())
    assert julia_topology_predict(n1).variant is JuliaVariant.JORDAN_CURVE
    n2 = FactoredRational((), ((0j, 1), (1 + 0j, 2)))
    assert julia_topology_predict(n2).variant is JuliaVariant.TOTALLY_DISCONNECTED
    # a cubic failing the polynomial-conjugacy condition stays undetermined
    bad = FactoredRational(((0j, 1), (1 + 0j, 2), (-0.7 + 0j, 1)), ())
    assert julia_topology_predict(bad).variant is JuliaVariant.UNDETERMINED
    quartic = FactoredRational(
        ((0j, 1), (1 + 0j, 1), (2 + 0j, 1), (3 + 0j, 1)), ()
    )
    with pytest.raises(UnsupportedDegree):
        julia_topology_predict(quartic)


def test_render_basins_matches_pointwise_orbits():
    N = build_newton_map(CUBIC_A)
    attractors = [0j, INF]
    vp = Viewport(0j, 4.0, 4.0, 16, 16)
    img = render_basins(N, attractors, vp, max_iter=300)
    grid = vp.grid()
    for i in range(vp.px_h):
        for j in range(vp.px_w):
            res = iterate_orbit(N, grid[i, j], attractors, max_iter=300)
            want = res.attractor_index if res.attractor_index is not None else -1
            assert img.indices[i, j] == want
            if want >= 0:
                assert img.iterations[i, j] == res.iterations


def test_render_basins_thread_count_is_invisible():
    N = build_newton_map(CUBIC_A)
    vp = Viewport(0j, 4.0, 4.0, 32, 32)
    img1 = render_basins(N, [0j, INF], vp, max_iter=300, threads=1)
    img4 = render_basins(N, [0j, INF], vp, max_iter=300, threads=4)
    assert np.array_equal(img1.indices, img4.indices)
    assert np.array_equal(img1.iterations, img4.iterations)


def test_render_basins_requires_attractors():
    with pytest.raises(ValueError):
        render_basins(RationalMap([0.0, 0.5], [1.0]), [], Viewport(0j, 1, 1, 2, 2))
