import pytest

import lorcomp
from lorcomp.errors import LorcompExecutionError, NumericalError, SpaceParseError


def test_hints_render_after_message() -> None:
    err = lorcomp.RangeError("mu must lie in (0, 1)", hints=["Pick mu=0.5.", "Or mu=0.25."])

    text = str(err)

    assert text.startswith("mu must lie in (0, 1)")
    assert "Hints:\n  - Pick mu=0.5.\n  - Or mu=0.25." in text


def test_error_without_hints_is_plain() -> None:
    assert str(lorcomp.CausalityError("not timelike")) == "not timelike"


@pytest.mark.parametrize(
    "cls",
    [
        lorcomp.InvalidPointError,
        lorcomp.CausalityError,
        lorcomp.RangeError,
        lorcomp.InvalidTriangleError,
        lorcomp.InvalidMetricTriangleError,
        lorcomp.SizeBoundError,
        lorcomp.DegenerateAngleError,
        lorcomp.DegenerateGeodesicError,
        lorcomp.StructuralError,
        lorcomp.SpaceParseError,
        lorcomp.GenerationError,
        lorcomp.NumericalError,
        lorcomp.DomainError,
        lorcomp.LorcompExecutionError,
    ],
)
def test_every_error_kind_is_a_lorcomp_error(cls) -> None:
    assert issubclass(cls, lorcomp.LorcompError)


def test_space_parse_error_names_field_and_line() -> None:
    err = SpaceParseError("bad value", field="tau", line=4, hints=["Check row 2."])

    text = str(err)

    assert "Field: tau" in text
    assert "Line: 4" in text
    assert text.index("Line: 4") < text.index("Hints:")


def test_numerical_error_lists_diagnostics() -> None:
    err = NumericalError("no bracket", diagnostics={"t": 0.125, "omega": 0.7})

    text = str(err)

    assert "Diagnostics:" in text
    assert "t: 0.125" in text
    assert err.diagnostics == {"t": 0.125, "omega": 0.7}


def test_execution_error_keeps_original() -> None:
    cause = KeyError("row")
    err = LorcompExecutionError("worker failed", original_error=cause)

    assert err.original_error is cause
    assert "Original error: KeyError" in str(err)
