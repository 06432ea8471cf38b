"""Command-line front end.

Exit codes: 0 success (conjugate / exponent found), 1 negative answer,
2 usage error, 3 undecided at precision, 4 time budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import signal
import sys
from contextlib import contextmanager

from . import io
from .bench import run_bench, write_csv
from .conjugacy import conjugacy, matrix_order
from .errors import DomainError, UndecidedAtPrecision, UsageError
from .group import conjugate, format_element, inverse, multiply
from .linalg import determinant
from .oracle import brute_conjugacy, brute_orbit, fibonacci
from .orbit import DEFAULT_PRECISION, OrbitTrace, orbit

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_UNDECIDED, EXIT_TIMEOUT = 0, 1, 2, 3, 4


class TimeBudgetExceeded(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@contextmanager
def time_budget(seconds):
    if not seconds:
        yield
        return

    def expire(signum, frame):
        raise TimeBudgetExceeded(f"time budget of {seconds}s exceeded")

    previous = signal.signal(signal.SIGALRM, expire)
    signal.setitimer(signal.ITIMER_REAL, seconds)
    try:
        yield
    finally:
        signal.setitimer(signal.ITIMER_REAL, 0)
        signal.signal(signal.SIGALRM, previous)


def _emit(args, text, payload):
    if args.json:
        print(json.dumps(payload))
    else:
        print(text)


def _group(args):
    if not args.group:
        raise UsageError("this command needs --group PATH")
    return io.load_group(args.group)


def _element_result(args, g):
    _emit(args, format_element(g), io.element_to_json(g))
    return EXIT_OK


def cmd_normalize(args, state):
    G = _group(args)
    return _element_result(args, io.parse_element(G, args.word))


def cmd_mul(args, state):
    G = _group(args)
    g = io.parse_element(G, args.left)
    for literal in args.right:
        g = multiply(G, g, io.parse_element(G, literal))
    return _element_result(args, g)


def cmd_inv(args, state):
    G = _group(args)
    return _element_result(args, inverse(G, io.parse_element(G, args.element)))


def cmd_conj(args, state):
    G = _group(args)
    u = io.parse_element(G, args.u)
    v = io.parse_element(G, args.v)
    trace = state["trace"] = []
    witness = conjugacy(G, u, v, method=args.method, precision=args.precision, trace=trace)
    extra = {"trace": trace} if args.trace else {}
    if witness is None:
        _emit(args, "not conjugate", {"conjugate": False, **extra})
        return EXIT_NEGATIVE
    if conjugate(G, witness, u) != v:
        raise ArithmeticError("witness failed re-verification")
    _emit(
        args,
        f"conjugate\nwitness: {format_element(witness)}",
        {"conjugate": True, "witness": io.element_to_json(witness), **extra},
    )
    return EXIT_OK


def _matrix_and_vectors(args):
    A = io.load_matrix(args.matrix)
    n = len(A)
    if n == 0 or len(A[0]) != n:
        raise UsageError("orbit matrix must be square and nonempty")
    det = determinant(A)
    if abs(det) != 1:
        raise UsageError(f"orbit matrix is not unimodular (determinant {det})")
    return A, io.parse_vector(args.x, n), io.parse_vector(args.y, n)


def cmd_orbit(args, state):
    A, x, y = _matrix_and_vectors(args)
    trace = state["trace"] = OrbitTrace()
    try:
        e = orbit(A, x, y, precision=args.precision, trace=trace)
    except UndecidedAtPrecision as exc:
        _emit(
            args,
            f"undecided at precision {exc.precision}",
            {"undecided": True, "precision": exc.precision},
        )
        return EXIT_UNDECIDED
    extra = {"trace": trace.to_json()} if args.trace else {}
    if e is None:
        _emit(args, "no exponent", {"exponent": None, **extra})
        return EXIT_NEGATIVE
    _emit(args, f"exponent {e}", {"exponent": io.encode_int(e), **extra})
    return EXIT_OK


def cmd_order(args, state):
    G = _group(args)
    d = matrix_order(G.phi)
    if d is None:
        _emit(args, "infinite", {"finite": False})
    else:
        _emit(args, f"finite {d}", {"finite": True, "order": d})
    return EXIT_OK


def cmd_oracle_conj(args, state):
    G = _group(args)
    u = io.parse_element(G, args.u)
    v = io.parse_element(G, args.v)
    a = brute_conjugacy(G, u, v, args.coord_bound, args.exp_bound)
    if a is None:
        _emit(args, "none within bounds", {"found": False})
        return EXIT_NEGATIVE
    _emit(args, f"witness: {format_element(a)}", {"found": True, "witness": io.element_to_json(a)})
    return EXIT_OK


def cmd_oracle_orbit(args, state):
    A, x, y = _matrix_and_vectors(args)
    e = brute_orbit(A, x, y, args.exp_bound)
    if e is None:
        _emit(args, "none within bounds", {"found": False})
        return EXIT_NEGATIVE
    _emit(args, f"exponent {e}", {"found": True, "exponent": e})
    return EXIT_OK


def cmd_oracle_fib(args, state):
    value = fibonacci(args.index)
    _emit(args, str(value), {"index": args.index, "value": io.encode_int(value)})
    return EXIT_OK


def _int_list(text):
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def cmd_bench(args, state):
    seed = args.seed if args.seed is not None else 0
    records = run_bench(args.n, args.s, args.trials, seed, args.coord_bound, args.ops)
    write_csv(records, sys.stdout)
    return EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-g", "--group", metavar="PATH", help="group file (JSON)")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--trace", action="store_true", help="include the decision trace")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--time-budget", type=float, default=None, metavar="SECONDS")
    common.add_argument("--precision", type=int, default=DEFAULT_PRECISION, metavar="BITS")

    parser = _Parser(prog="abconj", description="Conjugacy in free abelian-by-cyclic groups.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("normalize", parents=[common], help="normal form of a word")
    p.add_argument("word")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("mul", parents=[common], help="product of elements")
    p.add_argument("left")
    p.add_argument("right", nargs="+")
    p.set_defaults(func=cmd_mul)

    p = sub.add_parser("inv", parents=[common], help="inverse of an element")
    p.add_argument("element")
    p.set_defaults(func=cmd_inv)

    p = sub.add_parser("conj", parents=[common], help="decide conjugacy, print a conjugator")
    p.add_argument("u")
    p.add_argument("v")
    p.add_argument("--method", choices=("auto", "smith", "inverse"), default="auto")
    p.set_defaults(func=cmd_conj)

    p = sub.add_parser("orbit", parents=[common], help="find e with A^e x = y")
    p.add_argument("matrix", help="matrix file (JSON)")
    p.add_argument("x")
    p.add_argument("y")
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("order", parents=[common], help="order of phi")
    p.set_defaults(func=cmd_order)

    oracle = sub.add_parser("oracle", help="brute-force reference searches")
    verbs = oracle.add_subparsers(dest="verb", required=True, parser_class=_Parser)
    p = verbs.add_parser("conj", parents=[common])
    p.add_argument("u")
    p.add_argument("v")
    p.add_argument("--coord-bound", type=int, default=3)
    p.add_argument("--exp-bound", type=int, default=4)
    p.set_defaults(func=cmd_oracle_conj)
    p = verbs.add_parser("orbit", parents=[common])
    p.add_argument("matrix")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--exp-bound", type=int, default=60)
    p.set_defaults(func=cmd_oracle_orbit)
    p = verbs.add_parser("fib", parents=[common])
    p.add_argument("index", type=int)
    p.set_defaults(func=cmd_oracle_fib)

    p = sub.add_parser("bench", parents=[common], help="timing CSV on planted instances")
    p.add_argument("--n", type=_int_list, default=[2, 4, 8], help="dimensions, e.g. 2,4,8")
    p.add_argument("--s", type=_int_list, default=[10, 100, 1000], help="t-exponents")
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--coord-bound", type=int, default=2**16)
    p.add_argument("--ops", type=int, default=20, help="elementary operations per phi")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
    state = {"trace": None}
    try:
        args = build_parser().parse_args(argv)
        with time_budget(args.time_budget):
            return args.func(args, state)
    except TimeBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        partial = state["trace"]
        if isinstance(partial, OrbitTrace):
            partial = partial.to_json()
        print(json.dumps({"partial_trace": partial}), file=sys.stderr)
        return EXIT_TIMEOUT
    except (UsageError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
