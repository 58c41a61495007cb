import json
import sys

from schubertine import (
    app_parser,
    configure_logger,
    log_error,
    log_info,
)
from schubertine.combinat import Group, SignedPermutation, TypedPartition, format_label, index_function, parse_label
from schubertine.errors import InternalError, PreconditionError
from schubertine.freering import eta_polynomial, schur_polynomial, theta_polynomial
from schubertine.pieri import pieri_product, pieri_terms
from schubertine.series import schur_series, substitute_eta, substitute_theta
from schubertine.stanley import (
    borel_specialization,
    flag_coefficients,
    nilcoxeter_mixed_stanley,
    schubert_poly,
    stanley_coefficients,
    transition_tree,
)
from schubertine.verify import Verifier

STANLEY_GROUP = {"G": Group.A, "J": Group.C, "I": Group.D}


# ─────────────────────────────────────────────
# Rendering
# ─────────────────────────────────────────────
def _coefficient_rows(coeffs: dict, sequences: bool = False) -> list[dict]:
    if sequences:
        rows = [{"labels": [format_label(lab) for lab in key], "c": str(c)} for key, c in coeffs.items()]
    else:
        rows = [{"label": format_label(key), "c": str(c)} for key, c in coeffs.items()]
    return sorted(rows, key=lambda row: json.dumps(row, sort_keys=True))


def render(result, fmt: str) -> str:
    if isinstance(result, dict):
        if fmt == "json":
            return json.dumps(result, sort_keys=True)
        return json.dumps(result, sort_keys=True, indent=2)
    if fmt == "json":
        return result.to_json()
    if fmt == "latex" and hasattr(result, "to_latex"):
        return result.to_latex()
    return str(result)


# ─────────────────────────────────────────────
# Subcommands
# ─────────────────────────────────────────────
def _group(args) -> Group:
    return Group(args.group.upper())


def _permutation(args, group: Group) -> SignedPermutation:
    return SignedPermutation.from_string(args.w, group)


def _giambelli(args):
    if args.family == "schur":
        return schur_polynomial(parse_label(args.lam, 0, False))
    if args.family == "theta":
        return theta_polynomial(parse_label(args.lam, args.k, False), args.k)
    return eta_polynomial(TypedPartition.parse(args.lam, args.k))


def _pieri(args):
    group = _group(args)
    lam = parse_label(args.lam, args.k, group == Group.D)
    if args.witness:
        terms = pieri_terms(lam, args.p, args.k, group, prime=args.prime, witness=True)
        return {"terms": [t.to_dict() for t in terms]}
    return pieri_product(lam, args.p, args.k, group, prime=args.prime, rectangle=args.rect)


def _series(args):
    if args.what in STANLEY_GROUP:
        if args.w is None:
            raise PreconditionError("--w", f"Series {args.what} needs a permutation")
        w = _permutation(args, STANLEY_GROUP[args.what])
        return nilcoxeter_mixed_stanley(w, args.k, args.z, args.deg)
    if args.what == "schur":
        lam = parse_label(args.lam, 0, False)
        return schur_series(lam, 0, args.z, args.deg)
    if args.what == "theta":
        return substitute_theta(parse_label(args.lam, args.k, False), args.k, args.z, args.deg)
    return substitute_eta(TypedPartition.parse(args.lam, args.k), args.z, args.deg)


def _stanley(args):
    w = _permutation(args, _group(args))
    if args.tree:
        return transition_tree(w, args.k).to_dict()
    return {"group": w.group.value, "k": args.k, "coeffs": _coefficient_rows(stanley_coefficients(w, args.k))}


def _schubert(args):
    return schubert_poly(_permutation(args, _group(args)), args.n)


def _flag_coeffs(args):
    w = _permutation(args, _group(args))
    try:
        a = [int(v) for v in args.a.split(",") if v.strip()]
    except ValueError:
        raise PreconditionError("a-sequence", f"Cannot parse {args.a!r}")
    coeffs = flag_coefficients(w, a)
    if args.borel:
        if w.group != Group.A:
            raise PreconditionError("group A", "The Borel specialization is a type A construction")
        return borel_specialization(coeffs)
    return {"group": w.group.value, "a": a, "coeffs": _coefficient_rows(coeffs, sequences=True)}


def _index(args):
    group = _group(args)
    lam = parse_label(args.lam, args.k, group == Group.D)
    return {"label": format_label(lam), "index": list(index_function(lam, args.n, args.k, group))}


COMMANDS = {
    "giambelli": _giambelli,
    "pieri": _pieri,
    "series": _series,
    "stanley": _stanley,
    "schubert": _schubert,
    "flag-coeffs": _flag_coeffs,
    "index": _index,
}


def _case_rows(results) -> list[dict]:
    return [
        {"suite": row.suite, "case": row.case, "passed": bool(row.passed), "detail": row.detail}
        for row in results.itertuples(index=False)
    ]


def _verify(args) -> int:
    results = Verifier(max_weight=args.max_weight).run(args.suite)
    passed = Verifier.passed(results)
    if args.format == "json":
        print(
            json.dumps(
                {"suite": args.suite, "passed": passed, "cases": _case_rows(results)},
                sort_keys=True,
            )
        )
    else:
        print(results.to_string(index=False))
    return 0 if passed else 1


def run(argv=None) -> int:
    args = app_parser(argv)
    configure_logger(log_level=args.log_level.upper(), log_dir=args.log_dir)
    log_info("_______________ Schubertine _______________")
    log_info(f"Command :: {args.command}")

    try:
        if args.command == "verify":
            return _verify(args)
        result = COMMANDS[args.command](args)
        print(render(result, args.format))
        return 0
    except PreconditionError as e:
        print(json.dumps({"error": e.as_dict()}, sort_keys=True))
        return 1
    except InternalError as e:
        log_error(f"Internal error in {args.command}: {e}")
        return 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
