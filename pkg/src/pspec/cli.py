"""Command-line entry point: ``pspec <verb> [options]``.

Exit codes: 0 success, 1 usage error, 2 budget exceeded, 3 property-check failure.
Reports go to standard output, diagnostics to standard error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from .approx import DEFAULT_FUNCTION_BUDGET, prim_at, walsh_nonlinearity
from .builtins import builtin_algebra, groupoid2
from .checks import SUITES, all_ok, lattice_search
from .clone import (DEFAULT_CLONE_BUDGET, generate_clone, is_primal, post_classes,
                    post_properties)
from .core import (AlgebraError, BudgetExceeded, FiniteAlgebra, FunctionTable,
                   PreconditionError, parse_algebra, parse_equation)
from .spectrum import equation_probability, fraction_str, pspec_at
from .symmetry import automorphism_group, orbit_bound_at, orbit_partition

EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_CHECK = 0, 1, 2, 3


class UsageError(Exception):
    pass


# order-2 groupoid index -> row of the classical table, up to (anti-)isomorphism
ORDER2_ROWS = {
    0: "constant", 15: "constant", 3: "projection", 5: "projection",
    6: "xor", 9: "xor", 1: "semilattice", 7: "semilattice",
    12: "negation", 10: "negation", 13: "implication", 11: "implication",
    4: "implication", 2: "implication", 8: "sheffer", 14: "sheffer",
}
UNKNOWN_ROWS = {"implication"}


def load_algebra(source: str | None) -> FiniteAlgebra:
    if not source:
        raise UsageError("--algebra is required")
    if source.startswith("builtin:"):
        return builtin_algebra(source)
    path = Path(source)
    if not path.exists():
        raise UsageError(f"no such algebra file: {source}")
    return parse_algebra(path.read_text())


def parse_table(text: str) -> FunctionTable:
    """A Boolean truth table such as ``0001`` or ``0,0,0,1``."""
    digits = [c for c in text if c in "01"]
    if not digits or any(c not in "01, " for c in text):
        raise UsageError("--table takes a 0/1 truth table")
    k = len(digits).bit_length() - 1
    if 2**k != len(digits):
        raise UsageError("truth table length must be a power of two")
    return FunctionTable(2, k, [int(c) for c in digits])


def _frac_list(values) -> list[str]:
    return [fraction_str(v) for v in values]


# --------------------------------------------------------------------------
# verbs; each returns (report dict, text lines, exit code)

def cmd_prob(args):
    alg = load_algebra(args.algebra)
    if not args.equation:
        raise UsageError("prob needs --equation")
    eq = parse_equation(args.equation, alg.signature, args.vars)
    p = equation_probability(alg, eq)
    report = {"algebra": alg.name, "equation": str(eq), "vars": eq.vars, "probability": fraction_str(p)}
    return report, [fraction_str(p)], EXIT_OK


def cmd_spectrum(args):
    alg = load_algebra(args.algebra)
    r = pspec_at(alg, args.arity, budget=args.budget or DEFAULT_CLONE_BUDGET)
    report = r.to_json()
    lines = [" ".join(_frac_list(r.values))]
    if not r.complete:
        print(f"budget exceeded: partial spectrum of {alg.name} at k={args.arity}", file=sys.stderr)
    return report, lines, EXIT_OK if r.complete else EXIT_BUDGET


def cmd_clone(args):
    alg = load_algebra(args.algebra)
    c = generate_clone(alg, args.arity, args.budget or DEFAULT_CLONE_BUDGET)
    report = {"algebra": alg.name, "arity": args.arity, "size": len(c), "complete": c.complete,
              "rounds": c.generation_rounds, "space": alg.size ** (alg.size**args.arity)}
    lines = [f"|Clo_{args.arity}| = {len(c)}" + ("" if c.complete else " (incomplete)"),
             f"rounds = {c.generation_rounds}"]
    if not c.complete:
        print(f"budget exceeded: Clo_{args.arity}({alg.name}) stopped at {len(c)} tables", file=sys.stderr)
    return report, lines, EXIT_OK if c.complete else EXIT_BUDGET


def cmd_aut(args):
    alg = load_algebra(args.algebra)
    g = automorphism_group(alg)
    orbits = orbit_partition(g, args.arity)
    report = {"algebra": alg.name, "order": g.order, "elements": [list(p) for p in g.elements],
              "fixedPoints": list(g.fixed_points), "arity": args.arity,
              "orbitSizes": list(orbits.sizes)}
    lines = [f"|Aut| = {g.order}", f"Fix = {list(g.fixed_points)}",
             f"orbit sizes at k={args.arity}: {list(orbits.sizes)}"]
    return report, lines, EXIT_OK


def cmd_orbit_bound(args):
    alg = load_algebra(args.algebra)
    values = orbit_bound_at(alg, args.arity)
    report = {"algebra": alg.name, "arity": args.arity, "values": _frac_list(values)}
    return report, [" ".join(_frac_list(values))], EXIT_OK


def cmd_prim(args):
    alg = load_algebra(args.algebra)
    r = prim_at(alg, args.arity, budget=args.budget or DEFAULT_FUNCTION_BUDGET,
                method=args.method)
    lines = [fraction_str(r.prim_k), f"method = {r.method}", f"covering radius = {r.covering_radius}"]
    return r.to_json(), lines, EXIT_OK


def cmd_nonlinearity(args):
    if not args.table:
        raise UsageError("nonlinearity needs --table")
    f = parse_table(args.table)
    nl = walsh_nonlinearity(f)
    return {"arity": f.arity, "nonlinearity": nl}, [str(nl)], EXIT_OK


def cmd_post_class(args):
    alg = load_algebra(args.algebra)
    if alg.size != 2:
        raise UsageError("post-class needs a two-element algebra")
    per_op = {op: [c for c, v in post_properties(alg.tables[op]).items() if v]
              for op, _ in alg.signature}
    classes = post_classes(alg)
    report = {"algebra": alg.name, "classes": classes, "operations": per_op,
              "primal": not classes}
    lines = [f"{op}: {' '.join(cs) or '-'}" for op, cs in per_op.items()]
    lines.append(f"algebra: {' '.join(classes) or 'primal'}")
    return report, lines, EXIT_OK


def scan_order2(max_k: int = 4):
    rows = []
    for i in range(16):
        alg = groupoid2(i)
        spec = pspec_at(alg, max_k)
        prim = [prim_at(alg, k).prim_k for k in (1, 2)]
        row = ORDER2_ROWS[i]
        rows.append({
            "index": i,
            "table": "".join(str(v) for v in alg.tables["mul"].tolist()),
            "row": row,
            "spectrum": " ".join(_frac_list(spec.values)),
            "status": ("unknown" if row in UNKNOWN_ROWS else "known") + ("" if spec.complete else " partial"),
            "verdict": is_primal(alg).status.value,
            "post": " ".join(post_classes(alg)),
            "prim1": fraction_str(prim[0]),
            "prim2": fraction_str(prim[1]),
        })
    return rows


def cmd_scan_order2(args):
    rows = scan_order2(args.arity if args.arity_given else 4)
    lines = [f"{r['index']:2d} {r['table']} {r['row']:<12} {r['verdict']:<9} "
             f"[{r['post']}] Prim1={r['prim1']} Prim2={r['prim2']} {r['status']}: {r['spectrum']}"
             for r in rows]
    return {"rows": rows}, lines, EXIT_OK


def cmd_check(args):
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite}; choose from {', '.join(SUITES)}")
    fn = SUITES[args.suite]
    kwargs = {}
    if args.suite in ("orbit-inclusion", "quadrilateral", "hom-lemma", "product-law"):
        kwargs["seed"] = args.seed
    if args.algebra and args.suite in ("orbit-inclusion", "quadrilateral", "hom-lemma"):
        kwargs["algebras"] = [load_algebra(args.algebra)]
    if args.arity_given and args.suite in ("orbit-inclusion", "quadrilateral"):
        kwargs["max_k"] = args.arity
    rows = fn(**kwargs)
    report = {"suite": args.suite, "ok": all_ok(rows),
              "rows": [{"case": r.case, "check": r.suite, "ok": r.ok, "detail": r.detail} for r in rows]}
    lines = [r.line() for r in rows]
    lines.append(f"{args.suite}: {sum(r.ok for r in rows)}/{len(rows)} ok")
    return report, lines, EXIT_OK if report["ok"] else EXIT_CHECK


def cmd_lattice_search(args):
    target = Fraction(args.target)
    hits = lattice_search(args.size, args.equation or "(= (meet x0 x1) (zero))")
    fl2 = builtin_algebra("fl2")
    fl2_p = equation_probability(fl2, parse_equation("(= (meet x0 x1) (zero))", fl2.signature))
    rows = [{"lattice": h.lattice.name, "probability": fraction_str(h.probability),
             "covers": [list(c) for c in h.covers], "target": h.probability == target} for h in hits]
    lines = [f"{r['lattice']} {r['probability']}{' *' if r['target'] else ''} covers={r['covers']}"
             for r in rows]
    lines.append(f"{sum(r['target'] for r in rows)} of {len(rows)} lattices realize {fraction_str(target)}")
    lines.append(f"fl2 (bounded free distributive) {fraction_str(fl2_p)}")
    report = {"size": args.size, "target": fraction_str(target), "lattices": rows,
              "fl2": fraction_str(fl2_p)}
    return report, lines, EXIT_OK


VERBS = {
    "prob": cmd_prob, "spectrum": cmd_spectrum, "clone": cmd_clone, "aut": cmd_aut,
    "orbit-bound": cmd_orbit_bound, "prim": cmd_prim, "nonlinearity": cmd_nonlinearity,
    "post-class": cmd_post_class, "scan-order2": cmd_scan_order2, "check": cmd_check,
    "lattice-search": cmd_lattice_search,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="pspec", description="Equation probabilities, spectra and primality of finite algebras.")
    p.add_argument("verb", choices=sorted(VERBS))
    p.add_argument("suite", nargs="?", help="suite name for the check verb")
    p.add_argument("--algebra", help="an .alg file or builtin:<key>[:<param>...]")
    p.add_argument("--equation", help='e.g. "(= (meet x0 x1) (zero))"')
    p.add_argument("--vars", type=int, help="number of variables (default: 1 + largest index)")
    p.add_argument("--arity", type=int, default=None)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--method", default="auto", choices=["auto", "Exhaustive", "WalshHadamard"])
    p.add_argument("--table", help="Boolean truth table for nonlinearity")
    p.add_argument("--format", default="text", choices=["text", "json", "csv"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1, help="accepted; work runs in one process")
    p.add_argument("--size", type=int, default=6, help="lattice order for lattice-search")
    p.add_argument("--target", default="13/36", help="probability to flag in lattice-search")
    return p


def _csv(report: dict) -> str:
    rows = None
    for key in ("rows", "lattices"):
        if key in report and isinstance(report[key], list):
            rows = report[key]
    if rows is None:
        rows = [{k: (" ".join(map(str, v)) if isinstance(v, list) else v) for k, v in report.items()}]
    buf = io.StringIO()
    fields = list(rows[0].keys()) if rows else []
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow({k: (" ".join(map(str, v)) if isinstance(v, list) else v) for k, v in r.items()})
    return buf.getvalue()


def run_command(argv) -> int:
    try:
        args = build_parser().parse_args(argv)
        args.arity_given = args.arity is not None
        if args.arity is None:
            args.arity = 2 if args.verb in ("spectrum", "clone", "orbit-bound", "prim") else 1
        if args.arity < 1 and args.verb != "check":
            raise UsageError("--arity must be >= 1")
        if args.verb == "check" and not args.suite:
            raise UsageError(f"check needs a suite: {', '.join(SUITES)}")
        report, lines, code = VERBS[args.verb](args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (AlgebraError, PreconditionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as e:
        print(str(e), file=sys.stderr)
        return EXIT_BUDGET
    if args.format == "json":
        sys.stdout.write(json.dumps(report, sort_keys=True) + "\n")
    elif args.format == "csv":
        sys.stdout.write(_csv(report))
    else:
        sys.stdout.write("\n".join(lines) + "\n")
    return code


def main(argv=None) -> int:
    return run_command(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
