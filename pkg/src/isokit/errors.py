"""Exception hierarchy shared by the library and the CLI."""


class IsokitError(Exception):
    """Base error carrying a machine-readable code and a context dict."""

    code = "isokit_error"

    def __init__(self, message, **context):
        super().__init__(message)
        self.message = message
        self.context = context

    def to_dict(self):
        return {"error": {"code": self.code, "message": self.message,
                          "context": _jsonable(self.context)}}


class InvalidInputError(IsokitError, ValueError):
    code = "invalid_input"


class SpecError(InvalidInputError):
    code = "spec_validation"


class UnsupportedSpaceError(IsokitError, ValueError):
    code = "unsupported_space"


class SingularParameterError(IsokitError, ValueError):
    code = "singular_parameter"


class SpeedError(IsokitError, ValueError):
    """Raised when the speed of a curve vanishes (isotropic or lightlike velocity)."""

    code = "non_admissible_speed"


class NonAdmissibleError(IsokitError, ValueError):
    code = "non_admissible"

    def __init__(self, message, report=None, **context):
        if report is not None:
            context.setdefault("report", report.to_dict())
        super().__init__(message, **context)
        self.report = report


class DegenerateSphereError(IsokitError, ValueError):
    code = "degenerate_osculating_sphere"


class InsufficientDataError(IsokitError, ValueError):
    code = "insufficient_data"


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if hasattr(obj, "tolist"):
        return obj.tolist()
    if isinstance(obj, (str, int, float, bool)) or obj is None:
        return obj
    return str(obj)
