import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lorcomp.errors import (
    DegenerateAngleError,
    InvalidMetricTriangleError,
    InvalidPointError,
    InvalidTriangleError,
    RangeError,
    SizeBoundError,
)
from lorcomp.model2d import (
    CausalClass,
    CurvatureParam,
    HPoint,
    ModelPoint,
    TriangleSides,
    comparison_angle,
    comparison_angle_array,
    embedding_angle,
    future_tau,
    geodesic_interpolate,
    h2_angle,
    h2_distance,
    h2_interpolate,
    h2_midpoint,
    hinge_tau,
    model_origin,
    realize_h2_triangle,
    realize_triangle,
    reflect_across_geodesic,
    side_of_geodesic,
    signed_comparison_angle,
    tau_model,
)

CURVATURES = [-1.0, -0.25, 0.0, 0.25, 1.0]

sides_strategy = st.builds(
    lambda a, b, extra: TriangleSides(a, b, a + b + extra),
    st.floats(0.05, 1.0),
    st.floats(0.05, 1.0),
    st.floats(0.02, 1.0),
)


def _vertex_taus(param, tri):
    return (
        future_tau(param, tri.px, tri.py),
        future_tau(param, tri.py, tri.pz),
        future_tau(param, tri.px, tri.pz),
    )


@pytest.mark.parametrize("K", CURVATURES)
@settings(max_examples=200, deadline=None)
@given(sides=sides_strategy)
def test_realize_then_measure_recovers_sides(K, sides) -> None:
    param = CurvatureParam(K)

    tri = realize_triangle(param, sides)

    a, b, c = _vertex_taus(param, tri)
    assert a == pytest.approx(sides.a, rel=1e-9)
    assert b == pytest.approx(sides.b, rel=1e-9)
    assert c == pytest.approx(sides.c, rel=1e-9)


@pytest.mark.parametrize("K", CURVATURES)
@settings(max_examples=200, deadline=None)
@given(sides=sides_strategy)
def test_comparison_angle_matches_embedding(K, sides) -> None:
    param = CurvatureParam(K)
    tri = realize_triangle(param, sides)

    assert comparison_angle(param, sides, "x") == pytest.approx(
        embedding_angle(param, tri.px, tri.py, tri.pz), abs=1e-8
    )
    assert comparison_angle(param, sides, "y") == pytest.approx(
        embedding_angle(param, tri.py, tri.px, tri.pz), abs=1e-8
    )
    assert comparison_angle(param, sides, "z") == pytest.approx(
        embedding_angle(param, tri.pz, tri.px, tri.py), abs=1e-8
    )


@pytest.mark.parametrize("K", CURVATURES)
@pytest.mark.parametrize("vertex", ["x", "y", "z"])
def test_collinear_triples_have_zero_angle(K, vertex) -> None:
    param = CurvatureParam(K)

    assert comparison_angle(param, TriangleSides(0.3, 0.7, 1.0), vertex) == 0.0


@pytest.mark.parametrize("K", CURVATURES)
@pytest.mark.parametrize("lam", [0.1, 0.5, 2.0, 10.0])
@settings(max_examples=50, deadline=None)
@given(sides=sides_strategy)
def test_scaling_sides_rescales_curvature(K, lam, sides) -> None:
    param = CurvatureParam(K)
    for vertex in ("x", "y", "z"):
        assert comparison_angle(param, sides, vertex) == pytest.approx(
            comparison_angle(param.scaled(lam), sides.scaled(lam), vertex), abs=1e-9
        )


def test_flat_angle_closed_form() -> None:
    # x = origin, y = (1/2, 0), z = 2 (cosh 1, sinh 1): rapidity 1 between the legs at x.
    flat = CurvatureParam(0.0)
    x, y, z = ModelPoint.flat(0, 0), ModelPoint.flat(0.5, 0), ModelPoint.flat(2 * math.cosh(1), 2 * math.sinh(1))
    sides = TriangleSides(future_tau(flat, x, y), future_tau(flat, y, z), future_tau(flat, x, z))

    assert comparison_angle(flat, sides, "x") == pytest.approx(1.0, abs=1e-12)


def test_signed_angle_is_positive_only_at_the_middle_vertex() -> None:
    param = CurvatureParam(0.0)
    sides = TriangleSides(1.0, 1.0, 2.5)

    assert signed_comparison_angle(param, sides, "y") > 0.0
    assert signed_comparison_angle(param, sides, "x") < 0.0
    assert signed_comparison_angle(param, sides, "z") == -comparison_angle(param, sides, "z")


@pytest.mark.parametrize("K", CURVATURES)
@settings(max_examples=100, deadline=None)
@given(sides=sides_strategy)
def test_hinges_recover_the_third_side(K, sides) -> None:
    param = CurvatureParam(K)
    at_x = comparison_angle(param, sides, "x")
    at_y = comparison_angle(param, sides, "y")

    assert hinge_tau(param, sides.a, sides.c, at_x, kind="outward") == pytest.approx(sides.b, abs=1e-8)
    assert hinge_tau(param, sides.a, sides.b, at_y, kind="through") == pytest.approx(sides.c, abs=1e-8)


def test_outward_hinge_beyond_the_light_cone_is_zero() -> None:
    assert hinge_tau(CurvatureParam(0.0), 1.0, 1.0, 0.5, kind="outward") == 0.0
    with pytest.raises(RangeError, match="nonnegative"):
        hinge_tau(CurvatureParam(0.0), -1.0, 1.0, 0.5, kind="outward")


@pytest.mark.parametrize("K", CURVATURES)
def test_array_angles_match_scalar(K) -> None:
    param = CurvatureParam(K)
    rng = np.random.default_rng(3)
    a = rng.uniform(0.05, 1.0, 50)
    b = rng.uniform(0.05, 1.0, 50)
    c = a + b + rng.uniform(0.0, 1.0, 50)

    for vertex in ("x", "y", "z"):
        batch = comparison_angle_array(param, a, b, c, vertex)
        single = [comparison_angle(param, TriangleSides(*abc), vertex) for abc in zip(a, b, c)]
        np.testing.assert_allclose(batch, single, rtol=1e-12, atol=1e-14)


def test_reverse_triangle_violation_is_rejected() -> None:
    with pytest.raises(InvalidTriangleError, match="reverse triangle inequality"):
        comparison_angle(CurvatureParam(0.0), TriangleSides(1.0, 1.0, 1.5), "x")


def test_zero_sides_need_matching_lengths() -> None:
    param = CurvatureParam(0.0)

    tri = realize_triangle(param, TriangleSides(0.0, 1.0, 1.0))
    assert tri.px == tri.py
    with pytest.raises(InvalidTriangleError, match="requires b == c"):
        realize_triangle(param, TriangleSides(0.0, 1.0, 1.5))
    with pytest.raises(InvalidTriangleError, match="requires a == c"):
        realize_triangle(param, TriangleSides(1.0, 0.0, 1.5))


def test_angle_at_a_zero_side_is_degenerate() -> None:
    with pytest.raises(DegenerateAngleError, match="positive adjacent sides"):
        comparison_angle(CurvatureParam(0.0), TriangleSides(0.0, 1.0, 1.0), "x")


def test_anti_de_sitter_size_bound() -> None:
    param = CurvatureParam(-1.0)

    assert param.diameter == pytest.approx(math.pi)
    with pytest.raises(SizeBoundError, match="timelike diameter"):
        realize_triangle(param, TriangleSides(1.5, 1.7, 3.2))


def test_curvature_must_be_finite() -> None:
    with pytest.raises(RangeError, match="finite"):
        CurvatureParam(math.inf)


def test_flat_causal_classes() -> None:
    flat = CurvatureParam(0.0)
    origin = ModelPoint.flat(0.0, 0.0)

    future = tau_model(flat, origin, ModelPoint.flat(1.0, 0.5))
    assert future.causal_class is CausalClass.TIMELIKE_FUTURE
    assert future.tau == pytest.approx(math.sqrt(0.75))
    assert tau_model(flat, ModelPoint.flat(1.0, 0.5), origin).causal_class is CausalClass.TIMELIKE_PAST
    assert tau_model(flat, origin, ModelPoint.flat(1.0, 1.0)).causal_class is CausalClass.NULL
    assert tau_model(flat, origin, ModelPoint.flat(0.5, 1.0)).causal_class is CausalClass.SPACELIKE
    assert future_tau(flat, ModelPoint.flat(1.0, 0.5), origin) == 0.0


def test_points_off_the_quadric_are_rejected() -> None:
    param = CurvatureParam(1.0)

    with pytest.raises(InvalidPointError):
        tau_model(param, model_origin(param), ModelPoint((0.0, 2.0, 0.0)))


@pytest.mark.parametrize("K", CURVATURES)
def test_geodesic_interpolation_splits_tau(K) -> None:
    param = CurvatureParam(K)
    tri = realize_triangle(param, TriangleSides(0.4, 0.5, 1.2))
    total = future_tau(param, tri.px, tri.pz)

    m = geodesic_interpolate(param, tri.px, tri.pz, 0.3 * total)

    assert future_tau(param, tri.px, m) == pytest.approx(0.3 * total, rel=1e-9)
    assert future_tau(param, m, tri.pz) == pytest.approx(0.7 * total, rel=1e-9)
    with pytest.raises(RangeError, match="outside"):
        geodesic_interpolate(param, tri.px, tri.pz, 2.0 * total)


@pytest.mark.parametrize("K", CURVATURES)
def test_reflection_is_an_isometry_that_swaps_sides(K) -> None:
    param = CurvatureParam(K)
    tri = realize_triangle(param, TriangleSides(0.4, 0.5, 1.2))

    mirrored = reflect_across_geodesic(param, tri.px, tri.py, tri.pz)

    assert future_tau(param, tri.px, mirrored) == pytest.approx(1.2, rel=1e-9)
    assert future_tau(param, tri.py, mirrored) == pytest.approx(0.5, rel=1e-9)
    before = side_of_geodesic(param, tri.px, tri.py, tri.pz)
    after = side_of_geodesic(param, tri.px, tri.py, mirrored)
    assert before * after < 0.0


@settings(max_examples=100, deadline=None)
@given(
    d12=st.floats(0.1, 2.0),
    d13=st.floats(0.1, 2.0),
    t=st.floats(0.05, 0.95),
)
def test_h2_triangles_realize_their_sides(d12, d13, t) -> None:
    low, high = abs(d12 - d13), d12 + d13
    d23 = low + t * (high - low)

    u1, u2, u3 = realize_h2_triangle(d12, d13, d23)

    assert h2_distance(u1, u2) == pytest.approx(d12, abs=1e-9)
    assert h2_distance(u1, u3) == pytest.approx(d13, abs=1e-9)
    assert h2_distance(u2, u3) == pytest.approx(d23, abs=1e-8)


def test_h2_triangle_inequality_is_checked() -> None:
    with pytest.raises(InvalidMetricTriangleError, match="triangle inequality"):
        realize_h2_triangle(1.0, 1.0, 3.0)


def test_h2_midpoint_and_interpolation() -> None:
    u, v = HPoint.from_polar(0.7, 0.2), HPoint.from_polar(1.1, 2.0)
    d = h2_distance(u, v)

    m = h2_midpoint(u, v)
    q = h2_interpolate(u, v, 0.25)

    assert h2_distance(u, m) == pytest.approx(d / 2, abs=1e-12)
    assert h2_distance(m, v) == pytest.approx(d / 2, abs=1e-12)
    assert h2_distance(u, q) == pytest.approx(d / 4, abs=1e-12)
    with pytest.raises(RangeError, match="fraction"):
        h2_interpolate(u, v, 1.5)


def test_h2_angles_sum_below_pi() -> None:
    a, b, c = realize_h2_triangle(1.0, 1.2, 0.9)

    total = h2_angle(a, b, c) + h2_angle(b, a, c) + h2_angle(c, a, b)

    assert 0.0 < total < math.pi
