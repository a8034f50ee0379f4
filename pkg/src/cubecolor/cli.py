"""Command-line entry point: ``cubecolor <subcommand> ...``.

Every run appends one JSON report line to ``<out>/reports.jsonl`` (or writes
it to stderr without ``--out``). Exit status: 0 success, 1 failed
verification, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path
from typing import Callable

from . import __version__
from ._parallel import JOBS_ENV, default_jobs

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    """Bad arguments or unreadable input (exit status 2)."""


class _Run:
    """Collects what a subcommand did for the run report."""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.summary: dict = {}
        self.outputs: list[str] = []
        self.inputs: dict[str, str] = {}

    def input(self, path: str | Path) -> Path:
        p = Path(path)
        if not p.exists():
            raise UsageError(f"no such file or directory: {p}")
        if p.is_file():
            self.inputs[str(p)] = hashlib.sha256(p.read_bytes()).hexdigest()
        return p

    def write(self, path: Path, text: str) -> None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
        self.outputs.append(str(path))


def _out_dir(args) -> Path | None:
    return Path(args.out) if getattr(args, "out", None) else None


def _emit_report(run: _Run, status: int, wall: float) -> None:
    params = {k: v for k, v in vars(run.args).items() if k != "func"}
    report = {
        "subcommand": run.args.command,
        "parameters": params,
        "wall_time": round(wall, 6),
        "exit_status": status,
        "result": run.summary,
        "outputs": run.outputs,
        "input_digests": run.inputs,
        "version": __version__,
    }
    line = json.dumps(report, sort_keys=True, default=str)
    out = _out_dir(run.args)
    if out is not None:
        out.mkdir(parents=True, exist_ok=True)
        with open(out / "reports.jsonl", "a") as fh:
            fh.write(line + "\n")
    else:
        print(line, file=sys.stderr)


# -- helpers -------------------------------------------------------------------

def _parse_orders(text: str | None) -> tuple[int, ...] | None:
    if text is None:
        return None
    try:
        orders = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"bad --orders value {text!r}") from None
    if not orders or any(o < 2 for o in orders):
        raise UsageError("--orders needs integers >= 2")
    return orders


def _load_partition(run: _Run, args):
    from .certificate import certificate_partition
    from .search import read_partition

    if getattr(args, "builtin_certificate", False):
        return certificate_partition()
    if not args.partition:
        raise UsageError("give --partition <file> or --builtin-certificate")
    path = run.input(args.partition)
    try:
        return read_partition(path)
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _load_classes(run: _Run, dirs: list[str] | None) -> dict[int, tuple]:
    from .classify import read_classification

    classes: dict[int, tuple] = {}
    for d in dirs or ():
        res = read_classification(run.input(d))
        run.inputs[str(Path(d) / "manifest.json")] = hashlib.sha256(
            (Path(d) / "manifest.json").read_bytes()).hexdigest()
        classes[res.M] = tuple(res.representatives)
    return classes


# -- subcommands ---------------------------------------------------------------

def cmd_bounds(run: _Run, args) -> int:
    from .hamming import chromatic_bounds, doubling_bound

    rep = chromatic_bounds(args.n, args.k, args.A)
    print(f"n = {args.n}, k = {args.k}, A = {args.A}")
    print(f"lower bound: {rep.lower}")
    print(f"upper bound: {'unknown' if rep.upper is None else rep.upper}")
    run.summary = {"lower": rep.lower, "upper": rep.upper}
    if args.doubling is not None:
        if args.colors is None:
            raise UsageError("--doubling needs --colors (a known coloring of Q_n^2)")
        length, colors = doubling_bound(args.colors, args.n, args.doubling)
        print(f"chi(Q{length}^2) <= {colors}")
        run.summary["doubling"] = {"n": length, "colors": colors}
    return EXIT_OK


def cmd_canon(run: _Run, args) -> int:
    from .canon import canonical_form
    from .hamming import format_codelist, read_codelist
    from .isometry import format_isometry

    path = run.input(args.input)
    try:
        code = read_codelist(path)
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from None
    if not code.is_even():
        raise UsageError("canonical forms are defined for even codes only")
    form = canonical_form(code)
    cert = format_isometry(form.certificate)
    text = format_codelist(form.code, f"canonical form; certificate {cert}")
    out = _out_dir(args)
    if out is not None:
        run.write(out / "canonical.txt", text)
        run.write(out / "certificate.txt", cert + "\n")
    else:
        sys.stdout.write(text)
    print(f"certificate: {cert}")
    run.summary = {"size": len(code), "certificate": cert}
    return EXIT_OK


def cmd_maxcode(run: _Run, args) -> int:
    from .clique import build_compat_graph, cliques_of_size, max_clique
    from .hamming import enumerate_even, format_codelist

    words = enumerate_even(args.n) if args.even else list(range(1 << args.n))
    g = build_compat_graph(words, args.d, args.n)
    out = _out_dir(args)
    kind = "even" if args.even else "all"
    if args.enumerate is None:
        size, witness = max_clique(g)
        print(f"maximum {kind} code, n = {args.n}, d = {args.d}: {size}")
        text = format_codelist(witness, f"{kind} ({args.n},{size},{args.d}) code")
        if out is not None:
            run.write(out / "witness.txt", text)
        else:
            sys.stdout.write(text)
        run.summary = {"max": size}
        return EXIT_OK
    anchor = 0 if args.anchor_zero else None
    count = 0
    for code in cliques_of_size(g, args.enumerate, anchor):
        text = format_codelist(code, f"{kind} ({args.n},{args.enumerate},{args.d}) code {count}")
        if out is not None:
            run.write(out / f"code_{count:06d}.txt", text)
        else:
            sys.stdout.write(text + "\n")
        count += 1
        if args.limit is not None and count >= args.limit:
            break
    print(f"{kind} ({args.n},{args.enumerate},{args.d}) codes listed: {count}")
    run.summary = {"listed": count}
    return EXIT_OK


def cmd_classify(run: _Run, args) -> int:
    from .classify import timed_classify, write_classification

    try:
        res, wall = timed_classify(args.n, args.M, args.d, method=args.method, store=args.store,
                                   jobs=args.jobs, depth=args.depth)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(f"even ({args.n},{args.M},{args.d}) codes: {len(res.representatives)} classes")
    if res.aut_orders:
        print("automorphism group orders: " + " ".join(map(str, res.aut_orders)))
    out = _out_dir(args)
    if out is not None:
        path = write_classification(res, out, wall)
        run.outputs.append(str(path))
    run.summary = {"classes": len(res.representatives), "aut_orders": list(res.aut_orders)}
    return EXIT_OK


def _select_cases(text: str):
    from .search import hamming_case, sandbox_case, search_cases

    cases = search_cases()
    named = {c.label: c for c in cases}
    named["hamming"] = hamming_case()
    named["sandbox"] = sandbox_case()
    if text == "all":
        return cases
    if text.isdigit():
        i = int(text)
        if not 0 <= i < len(cases):
            raise UsageError(f"case index must be 0..{len(cases) - 1}")
        return [cases[i]]
    if text in named:
        return [named[text]]
    raise UsageError(f"unknown case {text!r}; use an index, 'all', or one of {sorted(named)}")


def cmd_search(run: _Run, args) -> int:
    from .search import run_case

    classes = _load_classes(run, args.classes)
    total = 0
    per_case = {}
    for case in _select_cases(args.case):
        try:
            records = run_case(case, classes, args.seed_class, _parse_orders(args.orders),
                               args.checkpoint, args.jobs, args.engine)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        found = sum(r.found for r in records)
        per_case[case.label] = {"tasks": len(records), "solutions": found}
        print(f"case {case.label} {case}: {len(records)} (seed, subgroup) tasks, {found} solutions")
        total += found
    run.summary = {"cases": per_case, "solutions": total}
    return EXIT_OK


def _bound_statement(P) -> tuple[list[str], dict]:
    from .clique import max_code
    from .hamming import chromatic_bounds

    m = P.n - 1
    A = max_code(P.n, 4)[0]
    rep = chromatic_bounds(m, 2, A)
    k = len(P.codes)
    lines = [f"chi(Q{m}^2) <= {k} (puncturing the last coordinate)",
             f"chi(Q{m}^2) >= {rep.lower} (counting bound with A({m},3) = {A})"]
    summary = {"upper": k, "lower": rep.lower}
    if k == rep.lower:
        lines.append(f"chi(Q{m}^2) = {k}")
        summary["exact"] = k
    return lines, summary


def cmd_verify(run: _Run, args) -> int:
    from .hamming import doubling_bound
    from .search import check_partition, partition_automorphisms

    P = _load_partition(run, args)
    rep = check_partition(P)
    for line in rep.lines():
        print(line)
    run.summary = {"admissible": rep.ok, "distribution": str(rep.distribution)}
    if not rep.ok:
        print("VERIFICATION FAILED")
        return EXIT_FAIL
    aut = partition_automorphisms(P)
    print(f"automorphism group order: {aut.order}")
    run.summary["aut_order"] = aut.order
    if P.aut_order is not None and P.aut_order != aut.order:
        print(f"stated aut_order {P.aut_order} does not match")
        return EXIT_FAIL
    missing = [g for g in P.generators if g not in aut.elementset]
    if missing:
        print(f"{len(missing)} stated generators are not automorphisms")
        return EXIT_FAIL
    lines, bound = _bound_statement(P)
    for line in lines:
        print(line)
    run.summary["bounds"] = bound
    if "exact" in bound:
        length, colors = doubling_bound(bound["exact"], P.n - 1, args.i)
        stmt = f"chi(Q{length}^2) <= {colors}"
        print(stmt)
        run.summary["doubling"] = stmt
    print("VERIFIED")
    return EXIT_OK


def cmd_doublecount(run: _Run, args) -> int:
    from .doublecount import double_count
    from .search import load_records, read_partition, reject_isomorphs

    case = _select_cases(args.case)
    if len(case) != 1:
        raise UsageError("doublecount takes a single case")
    case = case[0]
    run.input(args.checkpoint)
    records = load_records(args.checkpoint, case)
    if not records:
        raise UsageError(f"no search records for case {case.label} under {args.checkpoint}")
    reps = None
    if args.reps:
        files = []
        for r in args.reps:
            p = run.input(r)
            files.extend(sorted(p.glob("*.txt")) if p.is_dir() else [p])
        reps = reject_isomorphs(read_partition(f) for f in files)
    ledger = double_count(case, records, reps)
    for line in ledger.lines():
        print(line)
    run.summary = {"by_partition": ledger.by_partition, "by_seed": ledger.by_seed, "ok": ledger.ok}
    return EXIT_OK if ledger.ok else EXIT_FAIL


def cmd_extend(run: _Run, args) -> int:
    from .extend import extend_partition
    from .search import write_partition

    P = _load_partition(run, args)

    def progress(o):
        print(f"sizes {','.join(map(str, o.sizes))}: {o.status}"
              + (f" ({len(o.extensions)})" if o.extensions else ""))

    try:
        res = extend_partition(P, "all" if args.all else "first", args.jobs,
                               progress=progress if args.progress else None)
    except ValueError as exc:
        print(str(exc))
        return EXIT_FAIL
    for line in res.lines():
        print(line)
    out = _out_dir(args)
    if out is not None:
        for i, E in enumerate(res.extensions):
            path = out / f"extension_{i:06d}.txt"
            write_partition(path, E)
            run.outputs.append(str(path))
    run.summary = {"extendable": res.extendable, "extensions": len(res.extensions),
                   "tuples": len(res.outcomes), "pruned": res.count("pruned")}
    return EXIT_OK


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cubecolor", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, func: Callable, help: str, jobs: bool = False) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help)
        sp.set_defaults(func=func)
        sp.add_argument("--out", help="output directory (also receives reports.jsonl)")
        if jobs:
            sp.add_argument("--jobs", type=int, default=default_jobs(),
                            help=f"worker processes (default ${JOBS_ENV} or 1)")
        return sp

    sp = add("bounds", cmd_bounds, "chromatic-number bounds for Q_n^k")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, default=2)
    sp.add_argument("--A", type=int, required=True, help="A(n, k+1)")
    sp.add_argument("--colors", type=int, help="a known number of colors for Q_n^2")
    sp.add_argument("--doubling", type=int, metavar="I", help="apply the doubling construction I times")

    sp = add("canon", cmd_canon, "canonical form of a code")
    sp.add_argument("--input", required=True, help="codelist file")

    sp = add("maxcode", cmd_maxcode, "maximum codes by clique search")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--d", type=int, default=4)
    sp.add_argument("--even", action="store_true", help="restrict to even-weight words")
    sp.add_argument("--enumerate", type=int, metavar="M", help="list all codes of size M")
    sp.add_argument("--anchor-zero", action="store_true", help="only codes containing the zero word")
    sp.add_argument("--limit", type=int, help="stop after this many listed codes")

    sp = add("classify", cmd_classify, "classify even (n, M, d) codes", jobs=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--M", type=int, required=True)
    sp.add_argument("--d", type=int, default=4)
    sp.add_argument("--method", default="anchored", choices=("anchored", "augmentation"))
    sp.add_argument("--depth", type=int, default=5, help="anchoring depth (anchored method)")
    sp.add_argument("--store", help="sqlite file for resumable progress")

    sp = add("search", cmd_search, "symmetry-prescribed partition search", jobs=True)
    sp.add_argument("--case", default="all", help="case index, label, 'hamming', 'sandbox' or 'all'")
    sp.add_argument("--seed-class", type=int, help="only this seed class index")
    sp.add_argument("--orders", help="comma-separated subgroup orders, e.g. 2,3,4,5,7")
    sp.add_argument("--checkpoint", help="directory for resumable per-task results")
    sp.add_argument("--classes", action="append", metavar="DIR",
                    help="classification output directory (repeatable)")
    sp.add_argument("--engine", default="group", choices=("group", "clique"))

    sp = add("verify", cmd_verify, "check a partition and state the resulting bounds")
    sp.add_argument("--partition", help="partition file")
    sp.add_argument("--builtin-certificate", action="store_true",
                    help="use the embedded 13-code partition of E^9")
    sp.add_argument("--i", type=int, default=1, help="doubling steps for the derived bound")

    sp = add("doublecount", cmd_doublecount, "double-counting check of a finished search")
    sp.add_argument("--case", required=True)
    sp.add_argument("--checkpoint", required=True)
    sp.add_argument("--reps", action="append", metavar="PATH",
                    help="partition file or directory of class representatives (repeatable)")

    sp = add("extend", cmd_extend, "extend a partition of E^n to E^(n+1)", jobs=True)
    sp.add_argument("--partition", help="partition file")
    sp.add_argument("--builtin-certificate", action="store_true")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--first", action="store_true", help="stop at the first extension (default)")
    g.add_argument("--all", action="store_true", help="list every extension")
    sp.add_argument("--progress", action="store_true", help="print one line per size tuple")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "jobs", 1) < 1:
        print("--jobs must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    run = _Run(args)
    t0 = time.perf_counter()
    try:
        status = args.func(run, args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        status = EXIT_USAGE
    _emit_report(run, status, time.perf_counter() - t0)
    return status


if __name__ == "__main__":
    sys.exit(main())
