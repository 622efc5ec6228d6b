"""Exception hierarchy shared by the engines and the service layer.

Every exception carries a stable machine code so the HTTP/CLI layer can map
engine failures to API error payloads one-to-one.
"""


class EpidssError(Exception):
    """Base class; subclasses set `code` and an HTTP status hint."""

    code = "internal_error"
    http_status = 500

    def __init__(self, message, detail=None):
        super().__init__(message)
        self.message = message
        self.detail = detail

    def to_payload(self):
        payload = {"code": self.code, "message": self.message}
        if self.detail is not None:
            payload["detail"] = self.detail
        return payload


class SchemaError(EpidssError):
    """CSV schema mapping names a column the file does not have."""

    code = "schema_error"
    http_status = 400


class RowParseError(EpidssError):
    """A CSV row failed to parse; detail carries the 1-based line number."""

    code = "row_parse_error"
    http_status = 400


class EmptyInputError(EpidssError):
    code = "empty_input"
    http_status = 400


class SeriesValidationError(EpidssError):
    """Series violates an invariant under a reject policy."""

    code = "series_validation_error"
    http_status = 400


class InsufficientDataError(EpidssError):
    code = "insufficient_data"
    http_status = 400


class FitError(EpidssError):
    """Weighted least squares system was degenerate beyond repair."""

    code = "fit_error"
    http_status = 422


class RangeError(EpidssError):
    code = "range_error"
    http_status = 400


class DegenerateProblemError(EpidssError):
    """Allocation problem carries no usable demand signal."""

    code = "degenerate_problem"
    http_status = 422


class InsufficientHorizonError(EpidssError):
    code = "insufficient_horizon"
    http_status = 400


class UnknownRegionError(EpidssError):
    code = "unknown_region"
    http_status = 404


class InvalidRequestError(EpidssError):
    """Request body failed validation; detail carries the field path."""

    code = "invalid_request"
    http_status = 400


class SourceError(EpidssError):
    """Data source unreachable; retryable."""

    code = "source_unreachable"
    http_status = 502

    def __init__(self, message, detail=None, retryable=True):
        super().__init__(message, detail)
        self.retryable = retryable

    def to_payload(self):
        payload = super().to_payload()
        payload["retryable"] = self.retryable
        return payload


class ConfigError(EpidssError):
    code = "config_error"
    http_status = 500


class StorageError(EpidssError):
    code = "storage_error"
    http_status = 500
