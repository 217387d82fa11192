# src/nodes/execute.py

from ..state import JobState
from ..commands import COMMANDS
from ..errors import ToolkitError
from ..utils.log import log
from . import job_failure


def execute_node(state: JobState) -> dict:
    """
    Run the command body and record the artifact.
    Reports carrying an "equal" verdict also set identity_ok.
    """
    try:
        command = state["command"]
        log("EXECUTE", f"running {command}" + (f" --identity {state['identity']}" if state.get("identity") else ""))
        result = COMMANDS[command](state)

        identity_ok = None
        if isinstance(result, dict) and "equal" in result:
            identity_ok = bool(result["equal"])

        return {
            "result": result,
            "identity_ok": identity_ok,
            "stage": "executed",
        }
    except ToolkitError as exc:
        return job_failure(exc)
