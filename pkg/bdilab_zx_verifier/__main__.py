import argparse
import logging
import sys
from typing import List, Optional

from bdilab_zx_verifier.cli import COMMANDS, run
from bdilab_zx_verifier.constants import DEFAULT_HTTP_PORT, DEFAULT_MODEL_NAME, DEFAULT_SCALE, EXIT_USAGE
from bdilab_zx_verifier.env_utils import get_log_level
from bdilab_zx_verifier.projector import Method
from bdilab_zx_verifier.protocols import Protocol
from bdilab_zx_verifier.semantics import Backend


def _add_functor(parser: argparse.ArgumentParser):
    parser.add_argument(
        "--functor",
        default="std",
        help="Interpretation: std, or scaled:K with K = 1 mod 8 (e.g. scaled:9).",
    )


def _add_json(parser: argparse.ArgumentParser):
    parser.add_argument("--json", action="store_true", help="Print the result as JSON.")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bdilab_zx_verifier", description="Verification toolkit for ZX and ZW diagrams"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("parse", help="Print the canonical form of a document.")
    p.add_argument("file")
    p.add_argument("--lang", choices=["zx", "zw", "rules"], default="zx")

    p = commands.add_parser("interp", help="Print the matrix of every diagram in a file.")
    p.add_argument("file")
    p.add_argument("--backend", choices=[str(b) for b in Backend], default=str(Backend.exact))
    _add_functor(p)

    p = commands.add_parser("eq", help="Compare the matrices of two ground diagrams.")
    p.add_argument("file")
    p.add_argument("--backend", choices=[str(b) for b in Backend], default=str(Backend.exact))
    p.add_argument("--tol", type=float, default=None, help="Max-abs tolerance; exact when omitted.")
    _add_functor(p)
    _add_json(p)

    p = commands.add_parser("param-eq", help="Decide an equation between two parametrised diagrams.")
    p.add_argument("file")
    p.add_argument(
        "--method",
        choices=[str(Method.grid), str(Method.projector), str(Method.both)],
        default=str(Method.grid),
    )
    _add_functor(p)
    _add_json(p)

    p = commands.add_parser("rules-check", help="Check the soundness of a rule file.")
    p.add_argument("rules", help="Path of a rule file or name of a shipped one (clifford_t, zxc).")
    p.add_argument("--budget", type=int, default=None, help="Samples per constrained rule.")
    p.add_argument("--seed", type=int, default=None, help="Sampling seed.")
    p.add_argument("--closures", action="store_true", help="Also check flipped and colour-swapped rules.")
    p.add_argument(
        "--violations",
        type=int,
        default=0,
        help="Evaluate constrained rules on this many side-condition violating tuples.",
    )
    _add_functor(p)
    _add_json(p)

    p = commands.add_parser("translate", help="Translate diagrams between ZX and ZW.")
    p.add_argument("file")
    p.add_argument("--to", choices=["zw", "zx"], default="zw")

    p = commands.add_parser("roundtrip", help="Check that ZX -> ZW -> ZX keeps every interpretation.")
    p.add_argument("file")

    p = commands.add_parser("incompleteness", help="Show the equation separating std and scaled.")
    p.add_argument("--scale", type=int, default=DEFAULT_SCALE)
    _add_json(p)

    p = commands.add_parser("serve", help="Serve decide_forall over HTTP.")
    p.add_argument(
        "--http_port",
        default=DEFAULT_HTTP_PORT,
        type=int,
        help="The HTTP Port listened to by the verification server.",
    )
    p.add_argument(
        "--protocol",
        type=Protocol,
        choices=list(Protocol),
        default=str(Protocol.dsl_http),
        help="The protocol served by the verification server",
    )
    p.add_argument("--reply_url", type=str, default="", help="URL to send reply cloudevent")
    p.add_argument("--event_source", type=str, default="1", help="URI of the event source")
    p.add_argument(
        "--event_type",
        type=str,
        default="1",
        help="e.g. io.bdilab.zxv.verdict",
    )
    p.add_argument(
        "--model_name",
        default=DEFAULT_MODEL_NAME,
        help="The name that the model is served under.",
    )
    _add_functor(p)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(level=get_log_level())
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else 0
    return run(COMMANDS[args.command], args)


if __name__ == "__main__":
    sys.exit(main())
