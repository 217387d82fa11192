# src/errors.py

"""
Exception hierarchy shared by the library and the CLI.

Every error knows the process exit code the CLI reports for it.
"""


class ToolkitError(Exception):
    exit_code = 1


class ValidationError(ToolkitError):
    """Malformed or mathematically invalid input."""

    exit_code = 1


class TruncationError(ToolkitError):
    """A result would leave the truncated part of a module or of V."""

    exit_code = 2


class IdentityCheckFailure(ToolkitError):
    exit_code = 3

    def __init__(self, report: dict):
        self.report = report
        name = report.get("identity_name", "identity")
        failures = report.get("failures")
        count = len(failures) if isinstance(failures, list) else "some"
        super().__init__(f"{name} failed on {count} coefficient(s)")
