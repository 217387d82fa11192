# src/nodes/validate.py

from fractions import Fraction

from ..state import JobState
from ..commands import COMMANDS, IDENTITIES
from ..errors import ToolkitError, ValidationError
from ..liealg import parse_algebra_label
from ..utils import config
from ..utils.log import log
from . import job_failure

CSV_COMMANDS = ("graded-dims", "twisted-graded-dims")


def _parse_level(text) -> Fraction:
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise ValidationError(f"cannot parse level '{text}' (expected an integer or p/q)")


def _parse_lambda(text) -> list:
    if text is None or str(text).strip() == "":
        return []
    try:
        return [int(x) for x in str(text).replace(" ", "").split(",") if x != ""]
    except ValueError:
        raise ValidationError(f"cannot parse lambda '{text}' (expected Dynkin labels like 1,0)")


def _parse_count(text, name: str, minimum: int) -> int:
    try:
        value = int(text)
    except (TypeError, ValueError):
        raise ValidationError(f"--{name} must be an integer, got '{text}'")
    if value < minimum:
        raise ValidationError(f"--{name} must be at least {minimum}")
    return value


def validate_node(state: JobState) -> dict:
    """
    Parse raw CLI flags into typed job fields.
    Nothing is computed before this succeeds.
    """
    try:
        command = state["command"]
        args = state.get("args", {})

        if command not in COMMANDS:
            raise ValidationError(f"unknown command '{command}'; choose from {', '.join(COMMANDS)}")

        if not args.get("algebra"):
            raise ValidationError("--algebra is required")
        type_label, rank = parse_algebra_label(args["algebra"])

        level = _parse_level(args["level"] if args.get("level") is not None else config.DEFAULT_LEVEL)

        depth_given = args.get("depth") is not None
        depth = _parse_count(args["depth"], "depth", 0) if depth_given else state["depth"]

        k_given = args.get("k") is not None
        if k_given:
            k = _parse_count(args["k"], "k", 1)
        elif level.denominator == 1 and level >= 0:
            k = int(level) + 1
        else:
            k = 1

        fmt = (args.get("format") or "json").lower()
        if fmt not in ("json", "csv"):
            raise ValidationError(f"--format must be json or csv, got '{fmt}'")
        if fmt == "csv" and command not in CSV_COMMANDS:
            raise ValidationError(f"csv output is only available for {', '.join(CSV_COMMANDS)}")

        identity = args.get("identity")
        if command == "verify":
            if not identity:
                raise ValidationError("verify needs --identity")
            if identity not in IDENTITIES:
                raise ValidationError(f"unknown identity '{identity}'; choose from {', '.join(sorted(IDENTITIES))}")

        log("VALIDATE", f"{command} on {type_label}{rank}, level {level}, depth {depth}")

        return {
            "algebra_label": f"{type_label}{rank}",
            "mu": args.get("mu"),
            "e_text": args.get("e"),
            "level": level,
            "lam": _parse_lambda(args.get("lam")),
            "depth": depth,
            "depth_given": depth_given,
            "k": k,
            "k_given": k_given,
            "simple": bool(args.get("simple")),
            "fmt": fmt,
            "out": args.get("out"),
            "identity": identity,
            "u": args.get("u"),
            "v": args.get("v"),
            "stage": "validated",
        }

    except ToolkitError as exc:
        return job_failure(exc)
