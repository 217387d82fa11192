# main.py

import argparse
import sys

from src.state import create_initial_state
from src.graph import app
from src.commands import COMMANDS, IDENTITIES
from src.utils import config


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twz",
        description="Twisted Zhu algebras of affine vertex algebras: exact computations and identity checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--algebra", required=True, help="type and rank, e.g. A1, A2, D4")
        p.add_argument("--mu", help="diagram automorphism: identity, flip, triality or a permutation like 1,0")
        p.add_argument("--e", help="nilpotent e in g^[0] as a basis combination, e.g. f_theta")
        p.add_argument("--level", help="level ℓ as an integer or p/q")
        p.add_argument("--lambda", dest="lam", help="Dynkin labels of λ on g^[0], e.g. 1,0")
        p.add_argument("--depth", help="truncation depth (working depth for Zhu commands)")
        p.add_argument("--k", help="power, degree or bound depending on the command")
        p.add_argument("--simple", action="store_true", help="pass to the simple quotient")
        p.add_argument("--format", choices=["json", "csv"], default="json")
        p.add_argument("--out", help="write the artifact here instead of stdout")
        p.add_argument("--u", help="first vector of zhu-product, e.g. 'e_theta(-1)'")
        p.add_argument("--v", help="second vector of zhu-product")
        if name == "verify":
            p.add_argument("--identity", required=True, choices=sorted(IDENTITIES))

    return parser


def run_job(argv) -> dict:
    """Push one CLI invocation through the job graph and return the final state."""
    args = vars(build_parser().parse_args(argv))
    command = args.pop("command")
    state = create_initial_state(command, args)
    return app.invoke(state, config={"recursion_limit": config.RECURSION_LIMIT})


def main(argv=None) -> int:
    state = run_job(sys.argv[1:] if argv is None else argv)

    output = state.get("output")
    if output and not state.get("out"):
        sys.stdout.write(output)

    if state.get("error"):
        print(f"error: {state['error']}", file=sys.stderr)

    return state.get("exit_code", 0)


if __name__ == "__main__":
    sys.exit(main())
