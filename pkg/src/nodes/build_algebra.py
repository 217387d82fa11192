# src/nodes/build_algebra.py

from ..state import JobState
from ..errors import ToolkitError
from ..liealg import build_lie_algebra, parse_algebra_label
from . import job_failure


def build_algebra_node(state: JobState) -> dict:
    """Build g in its Chevalley basis from the validated label."""
    try:
        type_label, rank = parse_algebra_label(state["algebra_label"])
        return {
            "algebra": build_lie_algebra(type_label, rank),
            "stage": "algebra_built",
        }
    except ToolkitError as exc:
        return job_failure(exc)
