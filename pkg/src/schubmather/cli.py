"""Command-line interface.

Exit codes: 0 ok, 2 inadmissible input, 3 invariant mismatch, 64 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

from . import __version__
from .cache import TableCache, cache_key
from .combinatorics import (
    IndexSeq,
    capacity,
    from_complement,
    index_seq,
    normalize_family,
    order_key,
)
from .errors import (
    ContainmentError,
    GenericityError,
    IntegrityError,
    InvalidInput,
    NotAdmissible,
    SchubertError,
)
from .euler import fiber_euler
from .fixedpoints import cell_fixed_point, fiber_fixed_count, tower_fixed_points
from .labels import label_for
from .localization import compute_table
from .resolution import admissibility_failures, admissible_sequences, build_tower, parse_policy, policy_name

EXIT_OK = 0
EXIT_INADMISSIBLE = 2
EXIT_MISMATCH = 3
EXIT_USAGE = 64

DEFAULT_D_FAMILY = "OG''"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _csv_ints(text: str) -> tuple[int, ...]:
    text = text.strip()
    if text in ("", "()", "empty"):
        return ()
    try:
        return tuple(int(x) for x in text.replace(";", ",").split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _weights_arg(text: str):
    return None if text == "auto" else _csv_ints(text)


def _space_args(p: argparse.ArgumentParser, alpha: bool = True, beta: bool = False) -> None:
    p.add_argument("--lie-type", required=True, choices=["D", "C", "B"])
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--family", default=None,
                   help="type D component: OG' or OG'' (also prime/dprime); "
                        "inferred from alpha, defaults to OG'' for all-tables")
    if alpha:
        p.add_argument("--alpha", required=True, type=_csv_ints)
        p.add_argument("--indexing", choices=["standard", "complement"], default="standard",
                       help="complement: --alpha/--beta list the indices NOT in the sequence")
    if beta:
        p.add_argument("--beta", type=_csv_ints, default=None)


def _compute_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--weights", type=_weights_arg, default=None, help="auto or comma-separated w_1..w_n")
    p.add_argument("--policy", default="smallest-eligible",
                   help="smallest-eligible (default), literal, or order:i,j,...")
    p.add_argument("--jobs", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="schubmather", description="Chern-Mather and Kazhdan-Lusztig classes of Schubert varieties")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("compute", help="print gamma(alpha, beta), or the whole row without --beta")
    _space_args(p, beta=True)
    _compute_args(p)
    p.add_argument("--format", choices=["plain", "json"], default="plain")

    p = sub.add_parser("table", help="row of gamma over all beta <= alpha")
    _space_args(p)
    _compute_args(p)
    p.add_argument("--format", choices=["plain", "json", "csv"], default="plain")
    p.add_argument("--labels", action="store_true", help="print reference-table aliases for beta")
    p.add_argument("--cache-dir", default=None)
    p.add_argument("--no-cache", action="store_true")

    p = sub.add_parser("all-tables", help="rows for every admissible alpha")
    _space_args(p, alpha=False)
    _compute_args(p)
    p.add_argument("--format", choices=["plain", "json", "csv"], default="plain")
    p.add_argument("--labels", action="store_true")
    p.add_argument("--cache-dir", default=None)
    p.add_argument("--no-cache", action="store_true")

    p = sub.add_parser("fiber-euler", help="fibre Euler characteristic: recursion vs fixed-point count")
    _space_args(p, beta=True)
    p.add_argument("--policy", default="smallest-eligible")
    p.add_argument("--format", choices=["plain", "json"], default="plain")

    p = sub.add_parser("fixed-points", help="dump the torus-fixed points of the tower as JSON")
    _space_args(p)
    p.add_argument("--policy", default="smallest-eligible")

    p = sub.add_parser("explain", help="dump the resolution tower as JSON")
    _space_args(p)
    p.add_argument("--policy", default="smallest-eligible")

    p = sub.add_parser("check", help="run the invariant suite")
    p.add_argument("--n-max", type=int, default=5)
    p.add_argument("--types", default="D,C,B")
    p.add_argument("--weights", type=_csv_ints, default=None,
                   help="also verify that these weights are generic")
    return parser


# --------------------------------------------------------------------------
# helpers


def _seq(args, parts) -> IndexSeq:
    fam = normalize_family(args.family)
    if getattr(args, "indexing", "standard") == "complement":
        return from_complement(args.lie_type, args.n, parts, fam)
    return index_seq(args.lie_type, args.n, parts, fam)


def _alpha(args) -> IndexSeq:
    alpha = _seq(args, args.alpha)
    failures = admissibility_failures(alpha)
    if failures:
        raise NotAdmissible(alpha, failures)
    return alpha


def _beta(args, alpha: IndexSeq) -> IndexSeq:
    beta = _seq(args, args.beta)
    if beta.family != alpha.family:
        raise ContainmentError(f"beta=({beta}) lies on {beta.family}, alpha=({alpha}) on {alpha.family}")
    return beta


def table_document(result) -> dict:
    a = result.alpha
    return {
        "lie_type": a.lie_type,
        "n": a.n,
        "family": a.family or "none",
        "alpha": list(a.parts),
        "entries": [{"beta": list(b.parts), "gamma": g} for b, g in result.entries.items()],
        "meta": {"policy": result.policy, "weights": list(result.weights), "version": __version__},
    }


def _table_doc(alpha: IndexSeq, args) -> dict:
    policy = parse_policy(args.policy)
    cache = None
    if not getattr(args, "no_cache", True) and args.weights is None:
        cache = TableCache.from_env(getattr(args, "cache_dir", None))
    key = cache_key(alpha.lie_type, alpha.n, alpha.family, alpha.parts, policy_name(policy))
    if cache is not None:
        hit = cache.get(key)
        if hit is not None:
            return hit
    doc = table_document(compute_table(alpha, args.weights, policy, args.jobs))
    if cache is not None:
        cache.put(key, doc)
    return doc


def _beta_name(doc: dict, parts, labels: bool) -> str:
    if labels:
        fam = None if doc["family"] == "none" else doc["family"]
        return label_for(doc["lie_type"], doc["n"], fam, parts)
    return ",".join(map(str, parts)) or "()"


def _write_csv(docs: Sequence[dict], with_alpha: bool, out) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["alpha", "beta", "gamma"] if with_alpha else ["beta", "gamma"])
    for doc in docs:
        for e in doc["entries"]:
            row = [";".join(map(str, e["beta"])), e["gamma"]]
            writer.writerow([";".join(map(str, doc["alpha"]))] + row if with_alpha else row)
    out.write(buf.getvalue())


def _emit_row(doc: dict, fmt: str, labels: bool, out) -> None:
    if fmt == "json":
        out.write(json.dumps(doc, indent=2) + "\n")
    elif fmt == "csv":
        _write_csv([doc], False, out)
    else:
        width = max(len(_beta_name(doc, e["beta"], labels)) for e in doc["entries"])
        for e in doc["entries"]:
            out.write(f"{_beta_name(doc, e['beta'], labels):<{width}}  {e['gamma']}\n")


def _emit_matrix(docs: Sequence[dict], labels: bool, out) -> None:
    """Rows alpha, columns every beta that occurs, '.' where beta is not below alpha."""
    d0 = docs[0]
    fam = None if d0["family"] == "none" else d0["family"]
    cols = {tuple(e["beta"]) for doc in docs for e in doc["entries"]}
    cols = sorted(cols, key=lambda p: order_key(IndexSeq(d0["lie_type"], d0["n"], p, fam)))
    head = [_beta_name(d0, c, labels) for c in cols]
    rows = []
    for doc in docs:
        vals = {tuple(e["beta"]): e["gamma"] for e in doc["entries"]}
        rows.append([_beta_name(doc, doc["alpha"], labels)] + [str(vals.get(c, ".")) for c in cols])
    table = [[""] + head] + rows
    widths = [max(len(r[k]) for r in table) for k in range(len(table[0]))]
    for r in table:
        out.write("  ".join(cell.rjust(wd) for cell, wd in zip(r, widths)).rstrip() + "\n")


# --------------------------------------------------------------------------
# commands


def cmd_compute(args, out) -> int:
    alpha = _alpha(args)
    if args.beta is None:
        doc = _table_doc(alpha, args)
        _emit_row(doc, args.format, False, out)
        return EXIT_OK
    beta = _beta(args, alpha)
    res = compute_table(alpha, args.weights, parse_policy(args.policy), args.jobs, betas=[beta])
    if args.format == "json":
        doc = table_document(res)
        out.write(json.dumps(doc, indent=2) + "\n")
    else:
        out.write(f"{res.entries[beta]}\n")
    return EXIT_OK


def cmd_table(args, out) -> int:
    alpha = _alpha(args)
    _emit_row(_table_doc(alpha, args), args.format, args.labels, out)
    return EXIT_OK


def cmd_all_tables(args, out) -> int:
    fam = normalize_family(args.family)
    if args.lie_type == "D" and fam is None:
        fam = DEFAULT_D_FAMILY
    docs = [_table_doc(a, args) for a in admissible_sequences(args.lie_type, args.n, fam)]
    if args.format == "json":
        out.write(json.dumps({"documents": docs}, indent=2) + "\n")
    elif args.format == "csv":
        _write_csv(docs, True, out)
    elif docs:
        _emit_matrix(docs, args.labels, out)
    else:
        out.write("no admissible sequences\n")
    return EXIT_OK


def cmd_fiber_euler(args, out) -> int:
    alpha = _alpha(args)
    if args.beta is None:
        raise UsageError("fiber-euler needs --beta")
    beta = _beta(args, alpha)
    policy = parse_policy(args.policy)
    cap = capacity(alpha, beta)
    d = fiber_euler(alpha, beta, policy)
    count = fiber_fixed_count(build_tower(alpha, policy), cell_fixed_point(beta))
    verdict = "match" if d == count else "mismatch"
    if args.format == "json":
        out.write(json.dumps({"alpha": list(alpha.parts), "beta": list(beta.parts), "capacity": list(cap),
                              "d_value": d, "fixed_point_count": count, "verdict": verdict}) + "\n")
    else:
        out.write(f"capacity          {','.join(map(str, cap))}\n")
        out.write(f"d (recursion)     {d}\n")
        out.write(f"fixed points      {count}\n")
        out.write(f"{verdict}\n")
    return EXIT_OK if d == count else EXIT_MISMATCH


def cmd_fixed_points(args, out) -> int:
    alpha = _alpha(args)
    tower = build_tower(alpha, parse_policy(args.policy))
    pts = tower_fixed_points(tower)
    out.write(json.dumps({"alpha": list(alpha.parts), "count": len(pts),
                          "points": [p.to_dict() for p in pts]}) + "\n")
    return EXIT_OK


def cmd_explain(args, out) -> int:
    alpha = _alpha(args)
    out.write(json.dumps(build_tower(alpha, parse_policy(args.policy)).to_dict(), indent=2) + "\n")
    return EXIT_OK


def cmd_check(args, out) -> int:
    from .checks import run_checks

    types = [t.strip() for t in args.types.split(",") if t.strip()]
    if any(t not in ("D", "C", "B") for t in types):
        raise UsageError(f"--types must be drawn from D,C,B, got {args.types}")
    results = run_checks(args.n_max, types, args.weights)
    for r in results:
        out.write(f"{'PASS' if r.ok else 'FAIL'}  {r.name}: {r.detail}\n")
    return EXIT_OK if all(r.ok for r in results) else EXIT_MISMATCH


COMMANDS = {
    "compute": cmd_compute,
    "table": cmd_table,
    "all-tables": cmd_all_tables,
    "fiber-euler": cmd_fiber_euler,
    "fixed-points": cmd_fixed_points,
    "explain": cmd_explain,
    "check": cmd_check,
}


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except NotAdmissible as exc:
        print(f"not admissible: alpha=({exc.alpha})", file=sys.stderr)
        for f in exc.failures:
            print(f"  failed: {f}", file=sys.stderr)
        return EXIT_INADMISSIBLE
    except ContainmentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INADMISSIBLE
    except (InvalidInput, UsageError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (IntegrityError, GenericityError) as exc:
        print(f"integrity failure: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except SchubertError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
