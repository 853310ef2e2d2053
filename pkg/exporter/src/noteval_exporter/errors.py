"""Exporter error taxonomy.

ExporterError is the base; the command line maps ConfigError to exit code 1
and every other ExporterError to exit code 2.
"""


class ExporterError(Exception):
    """Base class for all exporter errors."""


class ConfigError(ExporterError):
    """Bad flags, bad job parameters, or an impossible window setup."""


class DatasetError(ExporterError):
    """Dataset file missing, malformed, or inconsistent with the job."""

    def __init__(self, message: str, line_no: int | None = None,
                 path: str | None = None):
        prefix = ""
        if path is not None:
            prefix = f"{path}:{line_no}: " if line_no is not None else f"{path}: "
        super().__init__(prefix + message)
        self.line_no = line_no
        self.path = path


class ModelLoadError(ExporterError):
    """Model or tokenizer could not be loaded from the given identifier."""


class SequenceTooLong(ExporterError):
    """Document exceeds the model limit; raised only with windowing disabled."""
