"""Command-line front end.

Subcommands: check, normal-form, enumerate, sample, experiment, export-dot.
Exit codes: 0 when the checked market is unique (or the command succeeded),
1 when it is not unique, 2 on any input error.  The STABLE_CORE_THREADS
environment variable caps worker processes for the experiment subcommand.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from typing import Sequence

from .digraph import build_digraph, export_dot
from .enumeration import generate_equivalent_instances
from .errors import StableCoreError
from .experiments import (
    FRACTION_CSV_HEADER,
    STATS_CSV_HEADER,
    FractionEstimate,
    normal_form_size_census,
    normal_form_size_stats,
    uniqueness_census,
    uniqueness_fraction,
    wilson_interval,
)
from .model import (
    Matching,
    parse_instance,
    parse_matching,
    serialize_instance,
    serialize_matching,
)
from .reduction import NormalForm, UniquenessReport, normal_form, normal_form_by_pivots, uniqueness_report


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _matching_pairs_1based(matching: Matching) -> list[list[int]]:
    return [[w + 1, f + 1] for w, f in matching.pairs()]


def _report_json(report: UniquenessReport) -> dict:
    payload: dict = {
        "n": report.n,
        "unique": report.unique,
        "criteria": {
            "unique_by_da": report.unique_by_da,
            "acyclic_normal_form": report.acyclic_normal_form,
            "singleton_normal_form": report.singleton_normal_form,
        },
        "consistent": report.consistent,
        "normal_form": {
            "survivors": sorted(v.label for v in report.normal_form.survivors()),
            "rounds": report.normal_form.rounds,
        },
    }
    if report.matching is not None:
        payload["witness"] = {"matching": _matching_pairs_1based(report.matching)}
    else:
        witness: dict = {}
        if report.directed_cycle is not None:
            witness["directed_cycle"] = [v.label for v in report.directed_cycle]
        if report.preference_cycle is not None:
            witness["preference_cycle"] = {
                "workers": [w + 1 for w in report.preference_cycle.workers],
                "firms": [f + 1 for f in report.preference_cycle.firms],
            }
        if report.stable_pair is not None:
            witness["stable_matchings"] = [
                _matching_pairs_1based(m) for m in report.stable_pair
            ]
        payload["witness"] = witness
    return payload


def _print_report(report: UniquenessReport) -> None:
    verdict = "unique" if report.unique else "not unique"
    print(f"stable matching: {verdict}")
    print(f"  deferred acceptance agrees from both sides: {report.unique_by_da}")
    print(f"  normal form is acyclic: {report.acyclic_normal_form}")
    print(f"  normal form is a single matching: {report.singleton_normal_form}")
    if not report.consistent:
        print("  WARNING: criteria disagree; this indicates a bug")
    if report.matching is not None:
        print("matching:")
        for line in serialize_matching(report.matching).splitlines():
            print(f"  {line}")
    else:
        if report.directed_cycle is not None:
            print("cycle in normal form: " + " -> ".join(v.label for v in report.directed_cycle))
        if report.stable_pair is not None:
            first, second = report.stable_pair
            print("two stable matchings:")
            print("  " + ", ".join(f"w{w + 1} f{f + 1}" for w, f in first.pairs()))
            print("  " + ", ".join(f"w{w + 1} f{f + 1}" for w, f in second.pairs()))


def _normal_form_fragment(nf: NormalForm) -> str:
    """Survivor lists in the instance format (rows may be shorter than n)."""
    lines = [str(nf.digraph.n)]
    for w, row in enumerate(nf.survivor_rows()):
        lines.append(f"w{w + 1}: " + " ".join(f"f{f + 1}" for f in row))
    for f, col in enumerate(nf.survivor_cols()):
        lines.append(f"f{f + 1}: " + " ".join(f"w{w + 1}" for w in col))
    return "\n".join(lines) + "\n"


def _write_output(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)


def _trace_jsonl(nf: NormalForm) -> str:
    records = []
    for step, record in enumerate(nf.trace, start=1):
        records.append(
            json.dumps(
                {
                    "round": step,
                    "pivot": record.pivot.label if record.pivot is not None else None,
                    "deleted": sorted(v.label for v in record.deleted),
                }
            )
        )
    return "\n".join(records) + ("\n" if records else "")


def _cmd_check(args: argparse.Namespace) -> int:
    report = uniqueness_report(parse_instance(_read(args.instance)))
    if args.json:
        print(json.dumps(_report_json(report), indent=2))
    else:
        _print_report(report)
    return 0 if report.unique else 1


def _cmd_normal_form(args: argparse.Namespace) -> int:
    inst = parse_instance(_read(args.instance))
    nf = normal_form(inst)
    sys.stdout.write(_normal_form_fragment(nf))
    if args.trace is not None:
        # The step-by-step pivot schedule; its fixpoint equals the round-based one.
        _write_output(args.trace, _trace_jsonl(normal_form_by_pivots(inst)))
    if args.dot is not None:
        _write_output(args.dot, export_dot(nf.digraph, suppress_transitive=args.suppress_transitive))
    return 0


def _cmd_enumerate(args: argparse.Namespace) -> int:
    matching = parse_matching(_read(args.matching), n=args.n)
    instances = sorted(
        generate_equivalent_instances(matching),
        key=lambda inst: (inst.worker_prefs, inst.firm_prefs),
    )
    chunks = [serialize_instance(inst) for inst in instances]
    sys.stdout.write("---\n".join(chunks))
    print(f"# {len(chunks)} instances", file=sys.stderr)
    return 0


def _cmd_sample(args: argparse.Namespace) -> int:
    writer = csv.writer(sys.stdout)
    writer.writerow(STATS_CSV_HEADER)
    if args.exhaustive:
        stats = normal_form_size_census(args.n)
    elif args.trials == 0:
        return 0
    else:
        stats = normal_form_size_stats(args.n, args.trials, args.seed)
    for row in stats.csv_rows():
        writer.writerow(row)
    return 0


def _cmd_experiment(args: argparse.Namespace) -> int:
    writer = csv.writer(sys.stdout)
    writer.writerow(FRACTION_CSV_HEADER)
    if args.exhaustive:
        unique, total = uniqueness_census(args.n)
        low, high = wilson_interval(unique, total)
        estimate = FractionEstimate(args.n, 0, total, unique, unique / total, low, high, args.seed)
    else:
        workers = args.workers
        cap = os.environ.get("STABLE_CORE_THREADS")
        if cap is not None:
            workers = min(workers, max(1, int(cap)))
        estimate = uniqueness_fraction(args.n, args.extra_firms, args.trials, args.seed, workers=workers)
    writer.writerow(estimate.csv_row())
    return 0


def _cmd_export_dot(args: argparse.Namespace) -> int:
    inst = parse_instance(_read(args.instance))
    dg = normal_form(inst).digraph if args.normal_form else build_digraph(inst)
    sys.stdout.write(export_dot(dg, suppress_transitive=args.suppress_transitive))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stable-core",
        description="Decide whether a two-sided matching market has a unique stable matching.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="report the uniqueness verdict for an instance file")
    p.add_argument("instance", help="instance file")
    p.add_argument("--json", action="store_true", help="emit the report as JSON")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("normal-form", help="print the surviving preference lists")
    p.add_argument("instance")
    p.add_argument("--trace", metavar="PATH", help="write the deletion trace as JSON lines ('-' for stdout)")
    p.add_argument("--dot", metavar="PATH", help="write the surviving digraph as DOT ('-' for stdout)")
    p.add_argument("--suppress-transitive", action="store_true", help="keep only preference-adjacent arcs in DOT output")
    p.set_defaults(func=_cmd_normal_form)

    p = sub.add_parser("enumerate", help="generate every instance for which a matching is uniquely stable")
    p.add_argument("--matching", required=True, help="matching file ('w<i> f<j>' lines)")
    p.add_argument("--n", type=int, default=None, help="expected market size (validated)")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("sample", help="tally normal-form sizes over sampled markets (CSV)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--exhaustive", action="store_true", help="use every instance instead of sampling (n <= 3)")
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("experiment", help="estimate the unique-stable-matching fraction (CSV)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--extra-firms", type=int, choices=(0, 1), default=0, dest="extra_firms")
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1, help="worker processes (capped by STABLE_CORE_THREADS)")
    p.add_argument("--exhaustive", action="store_true", help="exact census instead of sampling (n <= 3, balanced)")
    p.set_defaults(func=_cmd_experiment)

    p = sub.add_parser("export-dot", help="print the pair digraph as Graphviz DOT")
    p.add_argument("instance")
    p.add_argument("--normal-form", action="store_true", help="export the reduced digraph instead of the full one")
    p.add_argument("--suppress-transitive", action="store_true")
    p.set_defaults(func=_cmd_export_dot)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (StableCoreError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
