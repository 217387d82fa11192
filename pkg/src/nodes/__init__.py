# src/nodes/__init__.py

from ..errors import ToolkitError


def job_failure(exc: ToolkitError) -> dict:
    """Partial state update that stops the job with the error's exit code."""
    return {
        "error": str(exc),
        "exit_code": exc.exit_code,
        "is_complete": True,
    }
