"""Command-line interface.

Every command reads an instance file (``universe:``/``given:``/``query:``
lines) or the equivalent ``--universe/--given/--query`` flags.  Exit status
is 0 when a decision was reached, 2 on input errors and 3 when a size cap
was exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import experiment, falsify, inference, lattice, setfunc
from .core import CapExceeded, CIError, CIStatement, Instance, parse_instance, parse_statement, parse_universe

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CAP = 3


def _instance(args: argparse.Namespace) -> Instance:
    if args.instance:
        text = Path(args.instance).read_text(encoding="utf-8")
        inst = parse_instance(text)
        extra_given = [parse_statement(g, inst.universe) for g in args.given or ()]
        inst.given.extend(extra_given)
        if args.query:
            inst.query = parse_statement(args.query, inst.universe)
        return inst
    if not args.universe:
        raise CIError("either an instance file or --universe is required")
    u = parse_universe(args.universe)
    given = [parse_statement(g, u) for g in args.given or ()]
    query = parse_statement(args.query, u) if args.query else None
    return Instance(u, given, query)


def _query(inst: Instance) -> CIStatement:
    if inst.query is None:
        raise CIError("this command needs a query statement")
    return inst.query


def _labels(sets) -> str:
    return ", ".join(s.compact() for s in sets)


def _cover_lines(inst: Instance, c: CIStatement) -> list[str]:
    lines = []
    for U in lattice.sorted_elements(c):
        by = next(s for s in inst.given if lattice.member(U, s))
        lines.append(f"  {U.compact()} in L({by})")
    return lines


def cmd_check(args, out) -> int:
    inst = _instance(args)
    c = _query(inst)
    verdict = falsify.decide(inst.given, c, h1_variant=args.h1_variant)
    print(verdict.line(), file=out)
    if args.explain:
        if verdict.kind is falsify.VerdictKind.NOT_IMPLIED:
            F = setfunc.kronecker_induced(verdict.certificate)
            print(f"counter-model F_{verdict.certificate} (density 1 at {verdict.certificate.compact()}):", file=out)
            out.write(setfunc.format_setfunction(F))
        elif not c.trivial:
            print("lattice cover:", file=out)
            for line in _cover_lines(inst, c):
                print(line, file=out)
    return EXIT_OK


def cmd_falsify(args, out) -> int:
    inst = _instance(args)
    c = _query(inst)
    if c.trivial:
        print("trivial\tnot-falsifiable", file=out)
        return EXIT_OK
    stages = [
        ("H1", falsify.heuristic1(inst.given, c, args.h1_variant)),
        ("H2", falsify.heuristic2(inst.given, c)),
        ("full-criterion", falsify.lattice_exclusion(inst.given, c)),
    ]
    for name, res in stages:
        status = f"falsified\tcertificate={res.certificate}" if res else "unknown"
        print(f"{name}\t{status}", file=out)
    return EXIT_OK


def cmd_closure(args, out) -> int:
    inst = _instance(args)
    result = inference.closure(inst.given, inference.PRESETS[args.rules], universe=inst.universe)
    for s in result.sorted():
        print(s, file=out)
    if args.trace:
        print("# trace", file=out)
        for line in result.trace_lines():
            print(line, file=out)
    if inst.query is not None:
        status = "derived" if inst.query in result else "not-derived"
        print(f"query: {inst.query} {status}", file=out)
    return EXIT_OK


def cmd_wdec(args, out) -> int:
    inst = _instance(args)
    for s in sorted(lattice.wdec(_query(inst)), key=lambda s: s.sort_key):
        print(s, file=out)
    return EXIT_OK


def cmd_lattice(args, out) -> int:
    inst = _instance(args)
    c = _query(inst)
    elements = lattice.sorted_elements(c)
    wits = sorted(lattice.witnesses(c), key=lambda v: v.sort_key)
    print(f"statement: {c}", file=out)
    print(f"elements: {_labels(elements)}", file=out)
    print(f"witnesses: {_labels(wits)}", file=out)
    print(f"count: {lattice.count(c)}", file=out)
    if inst.given:
        union: set = set()
        for s in inst.given:
            union |= lattice.enumerate(s)
        print(f"antecedent union: {_labels(sorted(union, key=lambda v: v.sort_key))}", file=out)
        inc = lattice.includes(inst.given, c)
        print(f"included: {'yes' if inc.holds else 'no, missing ' + inc.certificate.compact()}", file=out)
    return EXIT_OK


def cmd_certificate(args, out) -> int:
    inst = _instance(args)
    F = setfunc.certificate_function(inst.given, _query(inst))
    if F is None:
        print("none", file=out)
    else:
        out.write(setfunc.format_setfunction(F))
    return EXIT_OK


def cmd_minimize(args, out) -> int:
    inst = _instance(args)
    for s in sorted(inference.minimize_stable(inst.given), key=lambda s: s.sort_key):
        print(s, file=out)
    return EXIT_OK


def cmd_stable(args, out) -> int:
    inst = _instance(args)
    sg = inference.closure(inst.given, inference.SEMI_GRAPHOID, universe=inst.universe)
    targets = [inst.query] if inst.query is not None else inst.given
    for s in targets:
        status = "stable" if inference.is_stable(s, inst.given, sg_closure=sg) else "unstable"
        print(f"{s}\t{status}", file=out)
    return EXIT_OK


def cmd_experiment(args, out) -> int:
    config = experiment.ExperimentConfig(
        n_attributes=args.attrs,
        antecedent_counts=range(args.k_min, args.k_max + 1),
        sets_per_count=args.sets,
        rng_seed=args.seed,
        heuristic1_variant=args.h1_variant,
    )
    log_file = open(args.log, "w", encoding="utf-8") if args.log else None
    try:
        rows = experiment.run(config, workers=args.workers, log=log_file.write if log_file else None)
    finally:
        if log_file:
            log_file.close()
    text = experiment.emit_csv(rows)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        out.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cilattice", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("instance", nargs="?", help="instance file")
        p.add_argument("--universe", help="variable names, e.g. 'a b c d'")
        p.add_argument("--given", action="append", help="antecedent statement (repeatable)")
        p.add_argument("--query", help="consequent statement")
        p.set_defaults(func=func)
        return p

    p = add("check", cmd_check, "decide an implication instance")
    p.add_argument("--explain", action="store_true", help="print the counter-model or lattice cover")
    p.add_argument("--h1-variant", choices=falsify.H1_VARIANTS, default=falsify.CONTAINMENT)
    p = add("falsify", cmd_falsify, "run heuristics and the lattice-exclusion criterion")
    p.add_argument("--h1-variant", choices=falsify.H1_VARIANTS, default=falsify.CONTAINMENT)
    p = add("closure", cmd_closure, "rule closure of the given statements")
    p.add_argument("--rules", choices=sorted(inference.PRESETS), default="system-a")
    p.add_argument("--trace", action="store_true", help="print one derivation line per derived statement")
    add("wdec", cmd_wdec, "witness decomposition of the query")
    add("lattice", cmd_lattice, "semi-lattice of the query")
    add("certificate", cmd_certificate, "additive counter-model for the instance")
    add("minimize", cmd_minimize, "drop redundant given statements")
    add("stable", cmd_stable, "stability of the query (or of each given statement)")

    p = sub.add_parser("experiment", help="random falsification experiment, CSV output")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--attrs", type=int, default=5)
    p.add_argument("--sets", type=int, default=1000)
    p.add_argument("--k-min", type=int, default=3)
    p.add_argument("--k-max", type=int, default=10)
    p.add_argument("--h1-variant", choices=falsify.H1_VARIANTS, default=falsify.CONTAINMENT)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--log", help="write every instance and its verdict to this file")
    p.add_argument("--output", "-o", help="CSV destination (default stdout)")
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (CIError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
