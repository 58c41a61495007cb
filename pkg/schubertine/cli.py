import argparse

from schubertine.verify import SUITES

GROUPS = ("a", "c", "d")
FORMATS = ("json", "text", "latex")


def _rectangle(text: str):
    rows, _, cols = text.lower().partition("x")
    try:
        return int(rows), int(cols)
    except ValueError:
        raise argparse.ArgumentTypeError(f"Expected a rectangle like 5x8, got {text!r}")


def _add_group(parser, choices=GROUPS):
    parser.add_argument("--group", type=str.lower, choices=choices, required=True)


def _add_lambda(parser):
    parser.add_argument(
        "--lambda",
        dest="lam",
        type=str,
        default="",
        help="Comma separated parts; typed partitions take a ':T' suffix, e.g. 3,2,2:2",
    )


def app_parser(argv=None):
    parser = argparse.ArgumentParser(
        prog="schubertine",
        description="Exact Giambelli and Pieri formulas, tableau sums and Stanley functions in types A, C and D.",
    )
    parser.add_argument("--log-level", type=str, default="WARNING", help="WARNING, INFO, DEBUG")
    parser.add_argument("--log-dir", type=str, default="", help="Also write logs to a timestamped file here")
    parser.add_argument("--format", type=str, choices=FORMATS, default="json")

    sub = parser.add_subparsers(dest="command", required=True)

    giambelli = sub.add_parser("giambelli", help="Schur, theta or eta polynomial in the special generators")
    giambelli.add_argument("--family", choices=("schur", "theta", "eta"), required=True)
    giambelli.add_argument("--k", type=int, default=0)
    _add_lambda(giambelli)

    pieri = sub.add_parser("pieri", help="Product of a special generator with a basis element")
    _add_group(pieri)
    pieri.add_argument("--k", type=int, default=0)
    _add_lambda(pieri)
    pieri.add_argument("--p", type=int, required=True)
    pieri.add_argument("--prime", action="store_true", help="Multiply by b'_k instead of b_k (type D)")
    pieri.add_argument("--rect", type=_rectangle, default=None, help="Truncate to an RxC rectangle, e.g. 5x8")
    pieri.add_argument("--witness", action="store_true", help="List the box sets behind every term")

    series = sub.add_parser("series", help="Truncated power series of a symmetric or Stanley function")
    series.add_argument("--what", choices=("schur", "theta", "eta", "G", "J", "I"), required=True)
    series.add_argument("--z", type=int, default=0, help="Number of z variables (x variables for schur and G)")
    series.add_argument("--deg", type=int, default=None, help="Truncation degree")
    series.add_argument("--k", type=int, default=0)
    series.add_argument("--w", type=str, default=None, help="Signed permutation in one-line notation, e.g. 3,-1,2,5,4")
    _add_lambda(series)

    stanley = sub.add_parser("stanley", help="Stanley coefficients through the transition tree")
    _add_group(stanley)
    stanley.add_argument("--w", type=str, required=True)
    stanley.add_argument("--k", type=int, default=0)
    stanley.add_argument("--tree", action="store_true", help="Emit the whole transition tree")

    schubert = sub.add_parser("schubert", help="Schubert polynomial of a (signed) permutation")
    _add_group(schubert)
    schubert.add_argument("--w", type=str, required=True)
    schubert.add_argument("--n", type=int, required=True)

    flag = sub.add_parser("flag-coeffs", help="Giambelli coefficients on a partial flag manifold")
    _add_group(flag)
    flag.add_argument("--w", type=str, required=True)
    flag.add_argument("--a", type=str, required=True, help="Increasing sequence a1,a2,...")
    flag.add_argument("--borel", action="store_true", help="Type A only: specialize single rows to x_j^r")

    index = sub.add_parser("index", help="Index function of a (typed) k-strict partition")
    _add_group(index, choices=("c", "d"))
    index.add_argument("--n", type=int, required=True)
    index.add_argument("--k", type=int, default=0)
    _add_lambda(index)

    verify = sub.add_parser("verify", help="Run a named verification suite")
    verify.add_argument("--suite", choices=SUITES + ("all",), required=True)
    verify.add_argument("--max-weight", type=int, default=None)

    arg = parser.parse_args(argv)
    return arg
