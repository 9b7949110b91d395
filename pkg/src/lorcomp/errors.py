from collections.abc import Mapping, Sequence


class LorcompError(Exception):
    """Base exception for lorcomp errors."""

    def __init__(self, message: str, *, hints: Sequence[str] | None = None):
        super().__init__(message)
        self.hints = list(hints or [])

    def _format_hints(self) -> str:
        if not self.hints:
            return ""
        lines = ["", "Hints:"]
        lines.extend([f"  - {hint}" for hint in self.hints])
        return "\n".join(lines)

    def __str__(self) -> str:
        return super().__str__() + self._format_hints()


class InvalidPointError(LorcompError):
    """Raised when a point is off its quadric or hyperboloid beyond tolerance."""


class CausalityError(LorcompError):
    """Raised when an operation needs a timelike (future) pair and gets something else."""


class RangeError(LorcompError):
    """Raised when a parameter lies outside its admissible interval."""


class InvalidTriangleError(LorcompError):
    """Raised when side lengths violate the reverse triangle inequality."""


class InvalidMetricTriangleError(LorcompError):
    """Raised when metric side lengths violate the triangle inequality."""


class SizeBoundError(LorcompError):
    """Raised when a time separation reaches the timelike diameter of the model plane."""


class DegenerateAngleError(LorcompError):
    """Raised when an angle is requested at a vertex with a zero adjacent side."""


class DegenerateGeodesicError(LorcompError):
    """Raised when two points do not determine a nondegenerate geodesic."""


class StructuralError(LorcompError):
    """Raised when matrices of a space have inconsistent shapes."""


class GenerationError(LorcompError):
    """Raised when an instance generator cannot produce points."""


class DomainError(LorcompError):
    """Raised when an argument is outside the domain of a map."""


class SpaceParseError(LorcompError):
    """Raised when a space file cannot be parsed."""

    def __init__(
        self,
        message: str,
        *,
        field: str | None = None,
        line: int | None = None,
        hints: Sequence[str] | None = None,
    ):
        super().__init__(message, hints=hints)
        self.field = field
        self.line = line

    def __str__(self) -> str:
        msg = Exception.__str__(self)
        if self.field is not None:
            msg += f"\n\nField: {self.field}"
        if self.line is not None:
            msg += f"\nLine: {self.line}"
        msg += self._format_hints()
        return msg


class NumericalError(LorcompError):
    """Raised when an iterative method fails to converge or to bracket."""

    def __init__(
        self,
        message: str,
        *,
        diagnostics: Mapping[str, float | int | str] | None = None,
        hints: Sequence[str] | None = None,
    ):
        super().__init__(message, hints=hints)
        self.diagnostics = dict(diagnostics or {})

    def __str__(self) -> str:
        msg = Exception.__str__(self)
        if self.diagnostics:
            msg += "\n\nDiagnostics:"
            for key, value in self.diagnostics.items():
                msg += f"\n  {key}: {value}"
        msg += self._format_hints()
        return msg


class LorcompExecutionError(LorcompError):
    """Raised when a scan worker fails with a foreign exception."""

    def __init__(
        self,
        message: str,
        *,
        original_error: BaseException | None = None,
        hints: Sequence[str] | None = None,
    ):
        super().__init__(message, hints=hints)
        self.original_error = original_error

    def __str__(self) -> str:
        msg = Exception.__str__(self)
        if self.original_error is not None:
            msg += f"\n\nOriginal error: {type(self.original_error).__name__}: {self.original_error}"
        msg += self._format_hints()
        return msg
