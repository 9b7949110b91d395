import numpy as np
import pytest

from lorcomp.curvcheck import (
    DEFAULT_EPS_SLACK,
    LevelTally,
    QuadrupleTaus,
    Verdict,
    eps_mu_condition_scan,
    eps_schedule,
    find_eps_mu_midpoints,
    fit_log_slope,
    four_point_lower_margin,
    four_point_margin,
    four_point_upper_margins,
    k_monotonicity,
    scan_four_point,
    triangle_condition_check,
)
from lorcomp.errors import CausalityError, InvalidTriangleError, RangeError
from lorcomp.lorspace import AmbientSpec, Region, chain_space, from_intrinsic, space_from_points, sprinkle
from lorcomp.model2d import CurvatureParam

SIDES = ("upper", "lower")
# The only side each curved ambient passes at K=0: de Sitter has curvature 1, anti-de Sitter -1.
PASSING_AT_ZERO = {"desitter-2": {"lower"}, "antidesitter-2": {"upper"}}
FINE_EPS = (1e-2, 1e-3, 1e-4)
BOX = Region(0.0, 1.0, -0.5, 0.5, -0.5, 0.5)


def _sprinkled(kind: str, *, midpoints: int = 0):
    return sprinkle(AmbientSpec(kind), BOX, 25, seed=11, midpoints=midpoints)


def _own_curvature(kind: str) -> CurvatureParam:
    return AmbientSpec(kind).param


def _passing_sides(check) -> set[str]:
    return {side for side in SIDES if check(side).passed}


def _triangle(kind: str):
    return from_intrinsic(AmbientSpec(kind), [[0.0, 0.0], [0.5, 0.2], [1.0, 0.0]])


def test_collinear_quadruple_is_tight() -> None:
    q = QuadrupleTaus.chain([0.0, 1.0, 2.0, 3.0])

    upper = four_point_upper_margins(CurvatureParam(0.0), q)
    lower = four_point_lower_margin(CurvatureParam(0.0), q)

    assert upper.passed and lower.passed
    assert upper.margins == pytest.approx((0.0,), abs=1e-12)
    assert lower.margins == pytest.approx((0.0, 0.0), abs=1e-12)


def test_lower_condition_needs_a_chain() -> None:
    q = QuadrupleTaus(t12=1.0, t13=2.0, t14=2.0, t23=1.0, t24=1.0, t34=0.0)

    with pytest.raises(CausalityError, match="x1 << x2 << x3 << x4"):
        four_point_lower_margin(CurvatureParam(0.0), q)
    upper = four_point_margin(CurvatureParam(0.0), q, "upper")
    assert upper.passed
    assert upper.margins == pytest.approx((0.0,), abs=1e-12)


def _flat_quadruple(x4: list[float]) -> QuadrupleTaus:
    points = np.array([[0.0, 0.0], [1.0, 0.0], [2.0, 0.5], x4])
    return QuadrupleTaus.from_space(space_from_points(AmbientSpec("minkowski-2"), points), 0, 1, 2, 3)


def test_upper_picture_glues_on_opposite_sides() -> None:
    across = four_point_upper_margins(CurvatureParam(0.0), _flat_quadruple([3.5, -0.5]))
    along = four_point_upper_margins(CurvatureParam(0.0), _flat_quadruple([3.5, 0.8]))

    assert across.margins == pytest.approx((0.0,), abs=1e-9)
    assert along.worst > 1e-3


def test_inconsistent_quadruple_is_rejected() -> None:
    q = QuadrupleTaus(t12=1.0, t13=1.5, t14=3.0, t23=1.0, t24=2.0, t34=1.0)

    with pytest.raises(InvalidTriangleError, match="reverse triangle inequality"):
        four_point_lower_margin(CurvatureParam(0.0), q)


def test_verdict_tolerance() -> None:
    verdict = Verdict.from_margins([0.1, -1e-10], tol=1e-9)

    assert verdict.passed
    assert verdict.worst == -1e-10
    assert not Verdict.from_margins([-1e-6], tol=1e-9).passed
    assert Verdict.skipped("size-bound").worst is None


@pytest.mark.parametrize("kind", ["minkowski-2", "minkowski-3"])
@pytest.mark.parametrize("side", SIDES)
def test_flat_sprinkles_pass_at_zero(kind, side) -> None:
    report = scan_four_point(_sprinkled(kind), CurvatureParam(0.0), side)

    assert report.tested > 0
    assert report.passed, report.witnesses


@pytest.mark.parametrize("kind", ["desitter-2", "antidesitter-2"])
@pytest.mark.parametrize("side", SIDES)
def test_curved_sprinkles_pass_at_their_own_curvature(kind, side) -> None:
    report = scan_four_point(_sprinkled(kind), _own_curvature(kind), side, tol=1e-6)

    assert report.tested > 0
    assert report.passed, report.witnesses


@pytest.mark.parametrize("kind", ["desitter-2", "antidesitter-2"])
def test_curved_sprinkles_pass_one_side_at_zero(kind) -> None:
    space = _sprinkled(kind)
    reports = {side: scan_four_point(space, CurvatureParam(0.0), side) for side in SIDES}

    assert {side for side, report in reports.items() if report.passed} == PASSING_AT_ZERO[kind]
    (failing,) = (report for report in reports.values() if not report.passed)
    assert failing.worst_margin < -1e-6
    assert failing.witnesses


def test_witnesses_are_capped_and_sorted() -> None:
    ds = _sprinkled("desitter-2")
    failing = next(
        side for side in SIDES if not scan_four_point(ds, CurvatureParam(0.0), side).passed
    )

    report = scan_four_point(ds, CurvatureParam(0.0), failing, max_witnesses=3)

    assert 1 <= len(report.witnesses) <= 3
    assert report.violations >= len(report.witnesses)
    assert report.witnesses[0].margin == report.worst_margin
    margins = [w.margin for w in report.witnesses]
    assert margins == sorted(margins)
    assert all(len(w.indices) == 4 for w in report.witnesses)


def test_scan_does_not_depend_on_thread_count() -> None:
    space = _sprinkled("antidesitter-2")
    param = CurvatureParam(0.0)

    one = scan_four_point(space, param, "upper", threads=1)
    many = scan_four_point(space, param, "upper", threads=4)

    assert one.model_dump(exclude={"runtime"}) == many.model_dump(exclude={"runtime"})


def test_long_chains_in_anti_de_sitter_are_skipped() -> None:
    report = scan_four_point(chain_space(6), CurvatureParam(-1.0), "upper")

    assert report.skipped["size-bound"] > 0
    assert report.passed
    assert report.enumerated == report.tested + sum(report.skipped.values())


def test_report_serializes_with_schema_version() -> None:
    report = scan_four_point(chain_space(5), CurvatureParam(0.0), "lower")

    dumped = report.model_dump(by_alias=True)

    assert dumped["schemaVersion"] == 1
    assert dumped["check"] == "four-point"
    assert dumped["side"] == "lower"
    assert list(dumped)[:3] == ["schemaVersion", "check", "K"]


def test_k_monotonicity_along_a_grid() -> None:
    points = from_intrinsic(
        AmbientSpec("desitter-2"), [[0.0, 0.0], [0.3, 0.1], [0.6, -0.05], [1.0, 0.05]]
    )
    space = space_from_points(AmbientSpec("desitter-2"), points)
    q = QuadrupleTaus.from_space(space, 0, 1, 2, 3)
    grid = [2.0, -1.0, 0.0, 1.0, -0.5, 0.5, 1.5]

    for side in SIDES:
        result = k_monotonicity(q, side, grid, tol=1e-8)
        assert [k for k, _ in result.entries] == sorted(grid)
        assert result.monotone
        assert dict(result.entries)[1.0].passed
    assert k_monotonicity(q, "lower", grid, tol=1e-8).threshold == 1.0


def test_find_eps_mu_midpoints_on_a_chain() -> None:
    space = chain_space(5)

    assert find_eps_mu_midpoints(space, 0, 4, 0.5, 0.1) == [2]
    assert find_eps_mu_midpoints(space, 0, 4, 0.25, 0.1) == [1]
    with pytest.raises(RangeError, match=r"mu must lie in \(0, 1\)"):
        find_eps_mu_midpoints(space, 0, 4, 1.0, 0.1)
    with pytest.raises(CausalityError, match="not timelike related"):
        find_eps_mu_midpoints(space, 4, 0, 0.5, 0.1)


@pytest.mark.parametrize("side", SIDES)
def test_eps_mu_on_a_chain_passes(side) -> None:
    report = eps_mu_condition_scan(chain_space(6), CurvatureParam(0.0), side, FINE_EPS)

    assert report.passed
    assert [level.eps for level in report.table] == list(FINE_EPS)
    assert report.table[-1].samples > 0
    assert report.details["eps_slack"] == 0.2


@pytest.mark.parametrize("kind", ["desitter-2", "antidesitter-2"])
def test_eps_mu_agrees_with_four_point(kind) -> None:
    space = _sprinkled(kind, midpoints=30)
    flat = CurvatureParam(0.0)

    four_point = _passing_sides(lambda side: scan_four_point(space, flat, side))
    eps_mu = _passing_sides(lambda side: eps_mu_condition_scan(space, flat, side, FINE_EPS))

    assert eps_mu == four_point == PASSING_AT_ZERO[kind]


@pytest.mark.parametrize("kind", ["desitter-2", "antidesitter-2"])
@pytest.mark.parametrize("side", SIDES)
def test_eps_mu_passes_at_own_curvature(kind, side) -> None:
    space = _sprinkled(kind, midpoints=30)

    report = eps_mu_condition_scan(space, _own_curvature(kind), side, FINE_EPS)

    assert report.passed, report.table


def _one_sample_report(deviation: float):
    levels = (1e-2, 1e-4)
    tally = LevelTally.empty(len(levels))
    tally.record(levels, 5e-5, deviation, (0, 1, 2, 3), 1e-7)
    return tally.report(
        check="eps-mu",
        K=0.0,
        side="upper",
        eps_levels=levels,
        tol=1e-7,
        eps_slack=DEFAULT_EPS_SLACK,
        max_witnesses=5,
    )


def test_eps_mu_allowance_scales_with_sqrt_eps() -> None:
    near = _one_sample_report(1.5e-3)
    far = _one_sample_report(3e-3)

    assert near.passed
    assert near.details["coefficient"] == pytest.approx(0.15)
    assert not far.passed
    assert far.violations == 1
    assert far.witnesses[0].margin == pytest.approx(-3e-3)


def test_eps_mu_rejects_bad_schedules() -> None:
    with pytest.raises(RangeError, match="eps schedule"):
        eps_mu_condition_scan(chain_space(3), CurvatureParam(0.0), "upper", [])
    with pytest.raises(RangeError, match="mu must lie"):
        eps_mu_condition_scan(chain_space(3), CurvatureParam(0.0), "upper", FINE_EPS, [0.0])


def test_eps_schedule_and_slope() -> None:
    assert eps_schedule([1e-3, 1e-1, 1e-2]) == (1e-1, 1e-2, 1e-3)
    with pytest.raises(RangeError):
        eps_schedule([1e-2, -1.0])
    assert fit_log_slope([1e-1, 1e-2, 1e-3], [1e-2, 1e-4, 1e-6]) == pytest.approx(2.0)
    assert fit_log_slope([1e-1, 1e-2], [0.0, 1e-3]) is None


@pytest.mark.parametrize("side", SIDES)
def test_triangle_check_in_minkowski3(minkowski3, side) -> None:
    vertices = [np.array([0.0, 0.0, 0.0]), np.array([1.0, 0.3, 0.2]), np.array([2.0, 0.0, 0.5])]

    report = triangle_condition_check(minkowski3, vertices, CurvatureParam(0.0), side, tol=1e-7)

    assert report.passed
    assert report.tested == 3 * 16 * 2
    assert set(report.details) == {"a", "b", "c"}


@pytest.mark.parametrize("kind", ["desitter-2", "antidesitter-2"])
def test_triangle_check_agrees_with_four_point(kind) -> None:
    spec = AmbientSpec(kind)
    vertices = _triangle(kind)
    flat = CurvatureParam(0.0)

    triangle = _passing_sides(
        lambda side: triangle_condition_check(spec, vertices, flat, side, tol=1e-7)
    )
    four_point = _passing_sides(lambda side: scan_four_point(_sprinkled(kind), flat, side))

    assert triangle == four_point == PASSING_AT_ZERO[kind]
    for side in SIDES:
        at_own = triangle_condition_check(spec, vertices, spec.param, side, tol=1e-7)
        assert at_own.passed


def test_triangle_check_needs_timelike_vertices(minkowski2) -> None:
    vertices = [np.array([0.0, 0.0]), np.array([0.5, 1.0]), np.array([2.0, 0.0])]

    with pytest.raises(CausalityError, match="timelike ordered"):
        triangle_condition_check(minkowski2, vertices, CurvatureParam(0.0), "upper")
    with pytest.raises(RangeError, match="samples_per_side"):
        triangle_condition_check(minkowski2, vertices, CurvatureParam(0.0), "upper", 0)


def test_de_sitter_triangle_is_longer_than_its_flat_comparison(desitter) -> None:
    vertices = _triangle("desitter-2")

    upper = triangle_condition_check(desitter, vertices, CurvatureParam(0.0), "upper", tol=1e-7)
    lower = triangle_condition_check(desitter, vertices, CurvatureParam(0.0), "lower", tol=1e-7)

    assert not upper.passed
    assert upper.worst_margin < -1e-6
    assert lower.passed
    assert lower.best_margin > 1e-6
