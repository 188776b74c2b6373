"""Command-line front end.

Exit codes:

    0  success (every verdict True, every proof line checks)
    1  a verdict is False, or fuzzing found a failure
    2  parse error, ill-formed input or bad usage
    3  normalization budget exhausted
    4  proof check failed
    5  some verdict Undecidable (and none False)

The default step budget comes from the ``STARHR_BUDGET`` environment
variable, falling back to one million.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .extract import RealizerBundle, extract_all
from .hr import Freshener, hr_translate
from .kernel import Context, KernelError, Signature, Term
from .logic import free_vars, well_formed
from .proof import ProofCheckError, ProofScript, check_proof, parse_proof, show_just
from .rewrite import BudgetExhausted, LO, RI, default_budget, normalize, trace
from .syntax import (
    ParseError, parse_context_decl, parse_document, parse_formula,
    parse_signature, parse_term, show_formula, show_signature,
    show_term, show_type,
)
from .verify import EvalVerdict, check_realizer

EXIT_OK, EXIT_FALSE, EXIT_PARSE, EXIT_BUDGET, EXIT_PROOF, EXIT_UNDECIDABLE = range(6)
REPORT_FORMAT = "starhr-report/1"


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _signature(args) -> Signature | None:
    if getattr(args, "sig", None):
        return parse_signature(_read(args.sig))
    return None


# ---------------------------------------------------------------------------
# Subcommands


def cmd_check(args) -> int:
    p = parse_proof(_read(args.proof), _signature(args))
    results = check_proof(p)
    for r in results:
        if r.ok:
            print(f"line {r.number}: ok")
        else:
            for d in r.diagnostics:
                print(f"line {r.number}: {d}")
    return EXIT_OK if all(r.ok for r in results) else EXIT_PROOF


def cmd_normalize(args) -> int:
    doc = parse_document(_read(args.file), "term", _signature(args))
    strategy = RI if args.strategy == "ri" else LO
    if args.trace:
        tr = trace(doc.body, args.budget, strategy)
        for line in tr.lines():
            print(line)
        print(show_term(tr.result))
    else:
        print(show_term(normalize(doc.body, args.budget, strategy)))
    return EXIT_OK


def cmd_translate(args) -> int:
    doc = parse_document(_read(args.file), "formula", _signature(args))
    problems = well_formed(doc.body, doc.context, doc.signature)
    if problems:
        for msg in problems:
            print(f"error: {msg}", file=sys.stderr)
        return EXIT_PARSE
    fr = Freshener.for_formula(doc.body, doc.context, seed=args.seed)
    print(hr_translate(doc.body, fr))
    return EXIT_OK


def _line_report(b: RealizerBundle, p: ProofScript, budget: int) -> dict:
    ln = p.line(b.number)
    out = {
        "number": b.number,
        "formula": show_formula(b.formula),
        "justification": show_just(ln.just),
        "provenance": b.provenance,
        "evars": [{"name": v.name, "type": show_type(v.type)} for v in b.hr.evars],
        "matrix": show_formula(b.hr.matrix),
        "realizers": [{"evar": v.name, "type": show_type(v.type), "term": show_term(t)}
                      for v, t in zip(b.hr.evars, b.terms)],
    }
    if not len(b.context):
        out["witnesses"] = {name: [show_term(e) for e in ws]
                            for name, ws in b.witnesses((), budget).items()}
    return out


def build_report(p: ProofScript, budget: int | None = None) -> dict:
    budget = budget or default_budget()
    bundles = extract_all(p, budget)
    return {
        "format": REPORT_FORMAT,
        "signature": show_signature(p.signature),
        "context": [{"name": v.name, "type": show_type(v.type)} for v in p.context],
        "lines": [_line_report(bundles[ln.number], p, budget) for ln in p.lines],
        "goal": p.final.number,
    }


def _report_text(rep: dict) -> str:
    out = [rep["signature"]]
    if rep["context"]:
        out.append("context " + ", ".join(f"{c['name']}:{c['type']}" for c in rep["context"]) + ";")
    for ln in rep["lines"]:
        mark = "  (goal)" if ln["number"] == rep["goal"] else ""
        out.append(f"{ln['number']}) {ln['formula']}{mark}")
        out.append(f"   by {ln['provenance']}")
        decls = ", ".join(f"{e['name']}:{e['type']}" for e in ln["evars"])
        out.append(f"   evars: ({decls})")
        out.append(f"   matrix: {ln['matrix']}")
        for r in ln["realizers"]:
            out.append(f"   {r['evar']} := {r['term']}")
        for name, elems in ln.get("witnesses", {}).items():
            out.append(f"   {name} enumerates to {{{', '.join(elems)}}}")
    return "\n".join(out) + "\n"


def cmd_extract(args) -> int:
    p = parse_proof(_read(args.proof), _signature(args))
    rep = build_report(p, args.budget)
    text = json.dumps(rep, indent=2) + "\n" if args.format == "json" else _report_text(rep)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _load_relations(path: str | None) -> dict[str, set]:
    if not path:
        return {}
    raw = json.loads(_read(path))
    return {name: {tuple(row) for row in rows} for name, rows in raw.items()}


def _bindings(specs: Sequence[str], ctx: Context, sig: Signature) -> dict[str, Term]:
    out = {}
    for spec in specs:
        name, sep, text = spec.partition("=")
        name = name.strip()
        if not sep:
            raise UsageError(f"binding {spec!r} is not of the form name=term")
        v = ctx.lookup(name)
        if v is None:
            raise UsageError(f"no context variable named {name}")
        t = parse_term(text, sig)
        if t.type != v.type:
            raise UsageError(f"binding for {name} has type {show_type(t.type)}, "
                             f"expected {show_type(v.type)}")
        out[name] = t
    return out


def verify_report(rep: dict, bindings: Sequence[str] = (), relations: dict | None = None,
                  all_lines: bool = False, lines: Sequence[int] = (),
                  budget: int | None = None) -> list[tuple[int, EvalVerdict]]:
    if rep.get("format") != REPORT_FORMAT:
        raise UsageError("not an extraction report")
    sig = parse_signature(rep["signature"])
    decl = ", ".join(f"{c['name']}:{c['type']}" for c in rep["context"])
    ctx = parse_context_decl(f"context {decl};", sig)
    bound = _bindings(bindings, ctx, sig)
    if lines:
        chosen = [ln for ln in rep["lines"] if ln["number"] in set(lines)]
    elif all_lines:
        chosen = rep["lines"]
    else:
        chosen = [ln for ln in rep["lines"] if ln["number"] == rep["goal"]]
    out = []
    for ln in chosen:
        a = parse_formula(ln["formula"], sig, ctx)
        free = {v.name for v in free_vars(a)}
        missing = sorted(free - set(bound))
        if missing:
            raise UsageError(f"line {ln['number']}: no binding for {', '.join(missing)}")
        values = [bound.get(v.name) or sig.inhabit(v.type) for v in ctx]
        realizers = [parse_term(r["term"], sig) for r in ln["realizers"]]
        out.append((ln["number"], check_realizer(a, ctx, values, realizers, relations, budget)))
    return out


def cmd_verify(args) -> int:
    rep = json.loads(_read(args.report))
    verdicts = verify_report(rep, args.bind, _load_relations(args.relations),
                             args.all, args.line, args.budget)
    for number, v in verdicts:
        print(f"line {number}: {v}")
    values = [v for _, v in verdicts]
    if any(v.is_false for v in values):
        return EXIT_FALSE
    if any(v.undecidable for v in values):
        return EXIT_UNDECIDABLE
    return EXIT_OK


def cmd_fuzz(args) -> int:
    from .fuzz import run_fuzz
    results = run_fuzz(args.seed, args.cases)
    for r in results:
        print(r.line())
        for f in r.failures[:5]:
            print(f"  {f}")
    return EXIT_OK if all(r.ok for r in results) else EXIT_FALSE


# ---------------------------------------------------------------------------
# Entry point


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="starhr", description=__doc__.split("\n")[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--sig", help="file with signature statements")
    common.add_argument("--budget", type=int, default=None,
                        help="reduction step budget (default: $STARHR_BUDGET or 10^6)")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("check", parents=[common], help="check a proof script")
    p.add_argument("proof")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("normalize", parents=[common], help="normalize a term")
    p.add_argument("file")
    p.add_argument("--trace", action="store_true", help="print one line per step")
    p.add_argument("--strategy", choices=["lo", "ri"], default="lo")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("translate", parents=[common], help="herbrandized translation of a formula")
    p.add_argument("file")
    p.add_argument("--seed", type=int, default=1, help="first suffix for renamed evars")
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("extract", parents=[common], help="extract realizers from a proof")
    p.add_argument("proof")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("verify", parents=[common], help="evaluate an extraction report")
    p.add_argument("report")
    p.add_argument("--bind", action="append", default=[], metavar="NAME=TERM",
                   help="closed value for a context variable")
    p.add_argument("--relations", help="JSON file mapping relation names to lists of rows")
    p.add_argument("--all", action="store_true", help="verify every line, not just the goal")
    p.add_argument("--line", type=int, action="append", default=[], help="verify this line")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("fuzz", parents=[common], help="run seeded property checks")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=100)
    p.set_defaults(func=cmd_fuzz)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.budget is None:
        args.budget = default_budget()
    src = getattr(args, "file", None) or getattr(args, "proof", None) or getattr(args, "report", "")
    try:
        return args.func(args)
    except ParseError as e:
        print(f"{src}:{e.line}:{e.col}: {e.message}", file=sys.stderr)
        return EXIT_PARSE
    except ProofCheckError as e:
        for r in e.failures:
            for d in r.diagnostics:
                print(f"line {r.number}: {d}", file=sys.stderr)
        return EXIT_PROOF
    except BudgetExhausted as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, json.JSONDecodeError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except KernelError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())

