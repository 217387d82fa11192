# src/state.py

from fractions import Fraction
from typing import TypedDict, List, Optional, Literal, Union, Any

from .utils import config


Stage = Literal[
    "init",
    "validated",
    "algebra_built",
    "automorphism_built",
    "executed",
    "reported",
]

OutputFormat = Literal["json", "csv"]


# =========================
# Job State
# =========================
class JobState(TypedDict):
    # === Job ===
    command: str
    args: dict
    stage: Stage

    # === Parsed flags ===
    algebra_label: Optional[str]
    mu: Optional[str]
    e_text: Optional[str]
    level: Optional[Fraction]
    lam: List[int]
    depth: int
    depth_given: bool
    k: int
    k_given: bool
    simple: bool
    fmt: OutputFormat
    out: Optional[str]
    identity: Optional[str]
    u: Optional[str]
    v: Optional[str]

    # === Structures ===
    algebra: Any
    automorphism: Any

    # === Outcome ===
    result: Optional[Union[dict, str]]
    output: Optional[str]
    identity_ok: Optional[bool]
    error: Optional[str]
    exit_code: int

    # === Flags ===
    is_complete: bool


# =========================
# Initial State Factory
# =========================
def create_initial_state(command: str, args: Optional[dict] = None) -> JobState:
    """
    Create the JobState for one CLI invocation.
    Flags stay as raw text until the validate node parses them.
    """
    args = dict(args or {})

    return JobState(
        # Job
        command=command,
        args=args,
        stage="init",

        # Parsed flags
        algebra_label=None,
        mu=None,
        e_text=None,
        level=None,
        lam=[],
        depth=config.DEFAULT_DEPTH,
        depth_given=False,
        k=1,
        k_given=False,
        simple=False,
        fmt="json",
        out=None,
        identity=None,
        u=None,
        v=None,

        # Structures
        algebra=None,
        automorphism=None,

        # Outcome
        result=None,
        output=None,
        identity_ok=None,
        error=None,
        exit_code=0,

        # Flags
        is_complete=False,
    )
