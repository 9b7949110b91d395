import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from lorcomp.cone import (
    ConePoint,
    FiniteMetricSpace,
    base_curvature_minus1_check,
    build_cone_space,
    circular_polar_map,
    cone_metric,
    cone_tau,
    euclidean_disc_sample,
    h1_sample,
    h2_disc_sample,
    load_base,
    make_base,
    midpoint_defects,
    polar_map,
    save_base,
    single_point,
    star_tree,
    transfer_quantities,
    transfer_slope_fit,
)
from lorcomp.curvcheck import scan_four_point
from lorcomp.errors import CausalityError, DomainError, RangeError, StructuralError
from lorcomp.lorspace import AmbientSpec, Region, ambient_tau, sprinkle
from lorcomp.model2d import CausalClass, CurvatureParam

RADII = (0.5, 1.0, 2.0, 4.0)
FLAT = CurvatureParam(0.0)


def _passing_sides(space) -> set[str]:
    return {side for side in ("upper", "lower") if scan_four_point(space, FLAT, side).passed}


@settings(max_examples=300, deadline=None)
@given(
    r1=st.floats(0.1, 2.0),
    r2=st.floats(0.1, 4.0),
    y1=st.floats(-1.0, 1.0),
    y2=st.floats(-1.0, 1.0),
)
def test_cone_over_a_line_is_flat(r1, r2, y1, y2) -> None:
    radicand = (r2 - r1) ** 2 - 4.0 * r1 * r2 * math.sinh(abs(y1 - y2) / 2.0) ** 2
    assume(abs(radicand) > 1e-6)

    cone = cone_tau(ConePoint(r1, 0), ConePoint(r2, 1), abs(y1 - y2))
    flat = ambient_tau(AmbientSpec("minkowski-2"), polar_map(r1, y1), polar_map(r2, y2))

    future = flat.causal_class is CausalClass.TIMELIKE_FUTURE
    assert cone.timelike == future
    if future:
        assert cone.tau == pytest.approx(flat.tau, rel=1e-9, abs=1e-12)


@settings(max_examples=200, deadline=None)
@given(
    r1=st.floats(0.0, 3.0),
    r2=st.floats(0.0, 3.0),
    y1=st.floats(-1.5, 1.5),
    y2=st.floats(-1.5, 1.5),
)
def test_cone_metric_is_euclidean_under_circular_polar(r1, r2, y1, y2) -> None:
    p, q = circular_polar_map(r1, y1), circular_polar_map(r2, y2)

    value = cone_metric(ConePoint(r1, 0), ConePoint(r2, 1), abs(y1 - y2))

    assert value == pytest.approx(math.dist(p, q), abs=1e-12)


def test_apex_is_one_point() -> None:
    assert ConePoint(0.0, 3) == ConePoint(0.0, 5)
    assert hash(ConePoint(0.0, 3)) == hash(ConePoint(0.0, 5))
    assert ConePoint(1.0, 3) != ConePoint(1.0, 5)
    with pytest.raises(DomainError, match="nonnegative"):
        ConePoint(-1.0)


def test_cone_tau_from_apex_and_backwards() -> None:
    assert cone_tau(ConePoint(0.0), ConePoint(2.5, 4), 7.0).tau == 2.5
    backwards = cone_tau(ConePoint(2.0, 0), ConePoint(1.0, 1), 0.0)
    assert not backwards.causal
    assert backwards.tau == 0.0
    with pytest.raises(DomainError, match="base distance"):
        cone_tau(ConePoint(1.0), ConePoint(2.0), -0.1)


def test_build_cone_space_layout() -> None:
    base = h1_sample(3, seed=0)

    space = build_cone_space(base, (1.0, 2.0), include_apex=True)

    assert space.n == 1 + 3 * 2
    assert space.tau[0, 1:] == pytest.approx([1.0, 2.0] * 3)
    assert space.tau[1, 2] == pytest.approx(1.0)
    with pytest.raises(RangeError, match="cone radii"):
        build_cone_space(base, (0.0, 1.0))


@pytest.mark.parametrize("base", [h2_disc_sample(8, seed=0, midpoints=4), h1_sample(8, seed=0)])
@pytest.mark.parametrize("side", ["upper", "lower"])
def test_hyperbolic_cones_are_flat(base, side) -> None:
    space = build_cone_space(base, RADII, include_apex=True)

    report = scan_four_point(space, FLAT, side)

    assert report.tested > 0
    assert report.passed, report.witnesses


def test_euclidean_cone_fails_like_anti_de_sitter() -> None:
    base = euclidean_disc_sample(12, seed=0, midpoints=8)
    cone = build_cone_space(base, RADII, include_apex=True)
    anti = sprinkle(AmbientSpec("antidesitter-2"), Region(0.0, 1.0, -0.5, 0.5), 25, seed=11)

    sides = _passing_sides(cone)

    assert sides == {"upper"}
    assert sides == _passing_sides(anti)


def test_lower_bound_of_the_cone_carries_over_to_the_base() -> None:
    base = euclidean_disc_sample(12, seed=0, midpoints=8)
    cone = build_cone_space(base, RADII, include_apex=True)

    cone_report = scan_four_point(cone, FLAT, "lower")
    base_report = base_curvature_minus1_check(base, (1e-2, 1e-3, 1e-4))

    assert not cone_report.passed
    assert cone_report.worst_margin < -1e-6
    assert not base_report.passed


@settings(max_examples=500, deadline=None)
@given(
    r2=st.floats(0.1, 2.0),
    gap=st.floats(0.1, 3.0),
    d23=st.floats(0.0, 1.5),
)
def test_midpoint_above_the_base_midpoint_is_exact(r2, gap, d23) -> None:
    r3 = r2 + gap
    assume(gap**2 - 4.0 * r2 * r3 * math.sinh(d23 / 2.0) ** 2 > 1e-3)

    q = transfer_quantities(r2, r3, d23)

    assert q.mu == pytest.approx(r2 / (r2 + r3))
    assert r2 <= q.r_m
    first, second = midpoint_defects(r2, r3, d23)
    assert first <= 1e-9
    assert second <= 1e-9


def test_transfer_quantities_reject_spacelike_pairs() -> None:
    with pytest.raises(CausalityError, match="not timelike related"):
        transfer_quantities(1.0, 1.1, 1.0)
    with pytest.raises(RangeError, match="radii must be positive"):
        transfer_quantities(0.0, 1.0, 0.1)


@pytest.mark.parametrize("d23", [0.2, 0.5, 0.9])
def test_first_order_law_of_midpoint_defects(d23) -> None:
    fit = transfer_slope_fit(1.0, 3.0, d23, (1e-2, 1e-3, 1e-4))

    assert fit.eps == (1e-4, 1e-3, 1e-2)
    assert fit.relative_error < 0.05
    assert all(a <= b for a, b in zip(fit.defects, fit.defects[1:]))


def test_first_order_law_needs_separated_base_points() -> None:
    with pytest.raises(RangeError, match="degenerate"):
        transfer_slope_fit(1.0, 3.0, 0.0)


@pytest.mark.parametrize(
    "base",
    [
        h2_disc_sample(40, seed=0, midpoints=20),
        h1_sample(20, seed=1, midpoints=10),
        single_point(),
        star_tree(3, 4),
    ],
    ids=["h2-disc", "h1", "point", "tree"],
)
def test_bases_of_flat_cones_pass_the_base_check(base) -> None:
    report = base_curvature_minus1_check(base, (1e-2, 1e-3, 1e-4))

    assert report.passed, report.table
    assert report.check == "base-minus1"
    assert report.K == -1.0


def test_h2_base_excess_vanishes_at_exact_midpoints() -> None:
    report = base_curvature_minus1_check(h2_disc_sample(40, seed=0, midpoints=20), (1e-2, 1e-3, 1e-4))

    assert report.table[-1].samples > 0
    assert report.table[-1].deviation <= 1e-6


def test_euclidean_base_fails_with_persistent_excess() -> None:
    report = base_curvature_minus1_check(
        euclidean_disc_sample(40, seed=0, midpoints=20), (1e-2, 1e-3, 1e-4)
    )

    assert not report.passed
    assert min(level.deviation for level in report.table) > 1e-3
    assert report.witnesses
    assert len(report.witnesses[0].indices) == 4


def test_base_check_is_thread_independent() -> None:
    base = h2_disc_sample(20, seed=2, midpoints=10)

    one = base_curvature_minus1_check(base, threads=1)
    many = base_curvature_minus1_check(base, threads=3)

    assert one.model_dump(exclude={"runtime"}) == many.model_dump(exclude={"runtime"})


def test_base_round_trip(tmp_path) -> None:
    base = h2_disc_sample(6, seed=3)
    path = tmp_path / "base.json"

    save_base(base, path)
    loaded = load_base(path)

    assert np.array_equal(loaded.dY, base.dY)


def test_invalid_bases_are_rejected() -> None:
    with pytest.raises(StructuralError, match="triangle inequality fails"):
        FiniteMetricSpace(dY=np.array([[0.0, 1.0, 3.0], [1.0, 0.0, 1.0], [3.0, 1.0, 0.0]]))
    with pytest.raises(StructuralError, match="not symmetric"):
        FiniteMetricSpace(dY=np.array([[0.0, 1.0], [2.0, 0.0]]))


def test_make_base_dispatch() -> None:
    assert make_base("point", 10, seed=0).n == 1
    assert make_base("tree", 12, seed=0).n == 13
    assert make_base("h2-disc", 10, seed=0, midpoints=5).n == 15
    assert make_base("euclidean-disc", 10, seed=0).kind == "euclidean-disc"
