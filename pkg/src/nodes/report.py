# src/nodes/report.py

from pathlib import Path

from ..state import JobState
from ..errors import IdentityCheckFailure
from ..utils.log import log
from ..utils.serialize import dumps


def report_node(state: JobState) -> dict:
    """
    Serialize the artifact to --out or keep it for stdout.
    A verify job whose identity failed still writes its report, then exits 3.
    """
    result = state["result"]
    text = result if isinstance(result, str) else dumps(result)

    out = state.get("out")
    if out:
        Path(out).write_text(text, encoding="utf-8")
        log("REPORT", f"wrote {out}")

    update = {
        "output": text,
        "stage": "reported",
        "is_complete": True,
    }

    if state.get("command") == "verify" and state.get("identity_ok") is False:
        failure = IdentityCheckFailure(result)
        update["error"] = str(failure)
        update["exit_code"] = failure.exit_code

    return update
