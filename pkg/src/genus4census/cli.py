"""Command-line entry point (installed as ``genus4census``).

Subcommands::

    census      --kind ns|cone|hyp|all --out records.jsonl [--workers N]
    classify    --curve <id>
    zeta        --counts N1,N2,N3,N4 [--q 2]
    hasse-witt  --curve <id>
    dieudonne   --mu 4,1
    stack-count --weil c0,...,c8 --records records.jsonl
    verify      --records records.jsonl
    discrepancy --records records.jsonl [--weil c0,...,c8]

All numeric output is exact (integers and fractions as strings).  Exit codes:
0 success, 1 failed assertion or internal inconsistency, 2 usage error.
"""

import argparse
import json
import sys

from . import cartier, census
from .curves import parse_curve_id
from .dieudonne import EoLabel, young_to_final
from .zeta import classify_stratum, newton_polygon, weil_from_counts


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}")


def _poly_str(coeffs) -> str:
    """Human-readable polynomial from ascending coefficients."""
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        if i == 0:
            mono = str(abs(c))
        else:
            head = "" if abs(c) == 1 else f"{abs(c)}*"
            mono = f"{head}t" if i == 1 else f"{head}t^{i}"
        terms.append(("- " if c < 0 else "+ ") + mono)
    if not terms:
        return "0"
    first = terms[0][2:] if terms[0].startswith("+ ") else "-" + terms[0][2:]
    return " ".join([first] + terms[1:])


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True, separators=(", ", ": ")))


def _cmd_census(args) -> int:
    kinds = census.KINDS if args.kind == "all" else (args.kind,)
    records = census.run_census(kinds=kinds, workers=args.workers)
    census.write_records(args.out, records)
    for kind in kinds:
        total = sum(1 for r in records if r.kind == kind)
        smooth = sum(1 for r in records if r.kind == kind and r.smooth)
        print(f"{kind}: {total} models, {smooth} smooth")
    print(f"wrote {len(records)} records to {args.out}")
    return 0


def _cmd_classify(args) -> int:
    rec = census.classify_model(parse_curve_id(args.curve))
    print(census.record_to_json(rec))
    return 0


def _cmd_zeta(args) -> int:
    w = weil_from_counts(args.counts, args.q)
    poly = newton_polygon(w)
    _emit({
        "weil": [str(c) for c in w.coeffs],
        "weil_str": _poly_str(w.coeffs),
        "slopes": [str(s) for s in poly.slopes],
        "p_rank": poly.p_rank,
        "stratum": classify_stratum(poly).name,
    })
    return 0


def _cmd_hasse_witt(args) -> int:
    curve = parse_curve_id(args.curve)
    op = cartier.cartier_operator(curve)
    s2 = cartier.two_rank(op)
    _emit({
        "cartier": [list(row) for row in op.rows],
        "hasse_witt": [list(row) for row in cartier.hasse_witt_rows(op)],
        "rank": op.rank,
        "a_number": cartier.a_number(op),
        "two_rank": s2,
        "type43": cartier.is_type43_candidate(op) if s2 == 0 else None,
    })
    return 0


def _cmd_dieudonne(args) -> int:
    label = EoLabel(args.mu)
    _emit({
        "mu": list(label.mu),
        "final_type": list(young_to_final(label.mu)),
        "p_rank": label.p_rank,
        "a_number": label.a_number,
        "codim": label.codim,
    })
    return 0


def _cmd_stack_count(args) -> int:
    records = census.read_records(args.records)
    report = census.group_isogeny_classes(records, [args.weil])[0]
    _emit({
        "weil": [str(c) for c in report.weil],
        "members": len(report.member_ids),
        "iso_reps": list(report.iso_rep_ids),
        "jacobian_auts": list(report.jacobian_auts),
        "stack_count": str(report.stack_count),
        "abelian_side": None if report.abelian_side is None else str(report.abelian_side),
    })
    return 0


def _cmd_verify(args) -> int:
    report = census.verify_propositions(census.read_records(args.records))
    for line in report.lines:
        print(line)
    return 0 if report.ok else 1


def _cmd_discrepancy(args) -> int:
    records = census.read_records(args.records)
    report = census.group_isogeny_classes(records, [args.weil])[0]
    print(census.discrepancy_report(report))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="genus4census",
                                     description="genus-4 curve invariants over F_2")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("census", help="run the exhaustive model census")
    p.add_argument("--kind", choices=("ns", "cone", "hyp", "all"), default="all")
    p.add_argument("--out", required=True, help="output JSONL path")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=_cmd_census)

    p = sub.add_parser("classify", help="classify a single model by curve id")
    p.add_argument("--curve", required=True, help="curve id, e.g. 'ns;c=0x1d0c'")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("zeta", help="Weil polynomial and Newton data from counts")
    p.add_argument("--counts", type=_ints, required=True, help="N_1,N_2,N_3,N_4")
    p.add_argument("--q", type=int, default=2)
    p.set_defaults(func=_cmd_zeta)

    p = sub.add_parser("hasse-witt", help="Cartier/Hasse-Witt matrix of a model")
    p.add_argument("--curve", required=True)
    p.set_defaults(func=_cmd_hasse_witt)

    p = sub.add_parser("dieudonne", help="data of one Ekedahl-Oort Young type")
    p.add_argument("--mu", type=_ints, required=True, help="e.g. 4,1")
    p.set_defaults(func=_cmd_dieudonne)

    p = sub.add_parser("stack-count", help="stack count of one isogeny class")
    p.add_argument("--weil", type=_ints, required=True,
                   help="ascending Weil coefficients c0,...,c8")
    p.add_argument("--records", required=True, help="census JSONL path")
    p.set_defaults(func=_cmd_stack_count)

    p = sub.add_parser("verify", help="check the census-wide assertions")
    p.add_argument("--records", required=True)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("discrepancy", help="curve-side vs published abelian-side stack count")
    p.add_argument("--records", required=True)
    p.add_argument("--weil", type=_ints, default=census.CLASS_H_WEIL)
    p.set_defaults(func=_cmd_discrepancy)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, TypeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RuntimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
