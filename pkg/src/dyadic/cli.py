"""Command line front end: ``dyadic classify|decompose|chase|answer|complete``.

Exit codes: 0 success, 1 usage or parse error, 3 not in the dyadic class,
4 reasoner cannot give exact answers.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from . import __version__, analysis
from .answering import (
    BoundedChaseReasoner,
    TerminatingChaseReasoner,
    certain_answers_dyadic,
    complete_database,
    cert_eval_dyadic,
)
from .chase import DEFAULT_MAX_ATOMS, DEFAULT_MAX_LEVEL, ChaseBudget, run_chase
from .decomposition import decompose
from .errors import DyadicError, NotInDyadicClass, ReasonerInexact
from .model import Constant, Program
from .parser import format_atom, parse_program, parse_query, serialize_ontology, serialize_program
from .recognizers import classify_all

EXIT_OK, EXIT_USAGE, EXIT_NOT_DYADIC, EXIT_INEXACT = 0, 1, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text):
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser():
    parser = _Parser(prog="dyadic", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    budget = _Parser(add_help=False)
    budget.add_argument("--max-atoms", type=_positive, default=DEFAULT_MAX_ATOMS)
    budget.add_argument("--max-level", type=_positive, default=DEFAULT_MAX_LEVEL)

    p = sub.add_parser("classify", help="class membership report")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.add_argument("--explain", action="store_true", help="also print the rule analyses")

    p = sub.add_parser("decompose", help="write the hg and main rule files")
    p.add_argument("file")
    p.add_argument("--class", dest="cls", required=True)
    p.add_argument("--out-dir", default=None)

    p = sub.add_parser("chase", parents=[budget], help="chase the program's facts")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.add_argument("--force", action="store_true", help="allow --unlimited without a termination certificate")
    p.add_argument("--unlimited", action="store_true", help="ignore the atom and level bounds")

    p = sub.add_parser("answer", parents=[budget], help="certain answers through the dyadic pipeline")
    p.add_argument("file")
    p.add_argument("--query", required=True, help="query index in the file or an inline query")
    p.add_argument("--class", dest="cls", required=True)
    p.add_argument("--oracle", choices=("chase", "bounded"), default="chase")
    p.add_argument("--check", default=None, help="comma separated constants to test")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("complete", parents=[budget], help="print the completed database")
    p.add_argument("file")
    p.add_argument("--class", dest="cls", required=True)
    p.add_argument("--oracle", choices=("chase", "bounded"), default="chase")
    p.add_argument("--out", default=None)
    return parser


def _load(path):
    data = Path(path).read_bytes()
    program = parse_program(data.decode("utf-8"))
    return program, "sha256:" + hashlib.sha256(data).hexdigest()


def _dump(payload, digest, out):
    payload = {"tool_version": __version__, "input_hash": digest, **payload}
    out.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _reasoner(args):
    if args.oracle == "bounded":
        return BoundedChaseReasoner(ChaseBudget(args.max_atoms, args.max_level))
    return TerminatingChaseReasoner()


def cmd_classify(args, out):
    program, digest = _load(args.file)
    report = classify_all(program.ontology)
    if args.json:
        classes = {name: {"member": v.member, "witness": v.witness} for name, v in report.items()}
        _dump({"classes": classes}, digest, out)
    else:
        width = max(map(len, report))
        for name, v in report.items():
            line = f"{name:<{width}}  {'yes' if v.member else 'no'}"
            out.write(line + (f"  ({v.witness})" if v.witness else "") + "\n")
    if args.explain:
        _explain(program.ontology, out)
    return EXIT_OK


def _explain(ontology, out):
    aff = analysis.affected_positions(ontology)
    out.write("\naffected positions:\n")
    for p in sorted(aff.affected(), key=lambda p: (p.predicate, p.index)):
        out.write(f"  {p}: {{{','.join(sorted(aff.names(p)))}}}\n")
    classes = analysis.classify_variables(ontology)
    for rule in ontology.rules:
        out.write(f"\n{rule}\n")
        for x in rule.uvars:
            c = classes[(rule.id, x)]
            invaders = f" {{{','.join(sorted(v.name for v in c.exvars))}}}" if c.exvars else ""
            out.write(f"  {x}: {c.kind.value}{invaders}\n")
        split = analysis.split_atoms(rule, ontology)
        out.write(f"  p-atoms: {', '.join(map(str, split.p_atoms)) or '-'}\n")
        out.write(f"  s-atoms: {', '.join(map(str, split.s_atoms)) or '-'}\n")
        out.write(f"  bridge: {', '.join(map(str, analysis.bridge_vars(rule, ontology))) or '-'}\n")


def cmd_decompose(args, out):
    program, digest = _load(args.file)
    pair = decompose(program.ontology, args.cls)
    src = Path(args.file)
    out_dir = Path(args.out_dir) if args.out_dir else src.parent
    out_dir.mkdir(parents=True, exist_ok=True)
    hg_path = out_dir / f"{src.stem}.hg.dtgd"
    main_path = out_dir / f"{src.stem}.main.dtgd"
    hg_path.write_text(serialize_ontology(pair.sigma_hg))
    main_path.write_text(serialize_ontology(pair.sigma_c))
    manifest = {
        "class": pair.cls,
        "hg": hg_path.name,
        "main": main_path.name,
        "aux_registry": {rid: {"predicate": p, "arity": n} for rid, (p, n) in pair.aux_registry.items()},
        "tool_version": __version__,
        "input_hash": digest,
    }
    manifest_path = out_dir / f"{src.stem}.aux.json"
    manifest_path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    out.write(f"{hg_path}\n{main_path}\n{manifest_path}\n")
    return EXIT_OK


def cmd_chase(args, out):
    program, digest = _load(args.file)
    budget = ChaseBudget(None, None) if args.unlimited else ChaseBudget(args.max_atoms, args.max_level)
    result = run_chase(program.database, program.ontology, budget, force=args.force)
    atoms = result.ordered()
    if args.json:
        _dump({
            "atoms": [format_atom(a) for a in atoms],
            "levels": {format_atom(a): result.level[a] for a in atoms},
            "status": result.status.value,
        }, digest, out)
    else:
        for a in atoms:
            out.write(f"{format_atom(a)}.  % level {result.level[a]}\n")
        out.write(f"% status: {result.status.value}\n")
    return EXIT_OK


def _query(program, text):
    if text.strip().lstrip("-").isdigit():
        index = int(text)
        if not 0 <= index < len(program.queries):
            raise DyadicError(f"query index {index} out of range ({len(program.queries)} queries)")
        return program.queries[index]
    return parse_query(text)


def cmd_answer(args, out):
    program, digest = _load(args.file)
    query = _query(program, args.query)
    reasoner = _reasoner(args)
    if args.check is not None or query.is_boolean:
        values = tuple(Constant(c.strip()) for c in args.check.split(",")) if args.check else ()
        verdict = cert_eval_dyadic(query, program.database, program.ontology, values, args.cls, reasoner)
        if args.json:
            _dump({"query": str(query), "tuple": [c.name for c in values], "answer": verdict}, digest, out)
        else:
            out.write("true\n" if verdict else "false\n")
        return EXIT_OK
    answers = certain_answers_dyadic(query, program.database, program.ontology, args.cls, reasoner)
    if not answers.exact:
        raise ReasonerInexact("the oracle could not guarantee exact answers")
    rows = [[c.name for c in t] for t in answers]
    if args.json:
        _dump({"query": str(query), "answers": rows, "exact": answers.exact}, digest, out)
    else:
        for row in rows:
            out.write(",".join(row) + "\n")
    return EXIT_OK


def cmd_complete(args, out):
    program, _ = _load(args.file)
    pair = decompose(program.ontology, args.cls)
    completed = complete_database(program.database, pair, _reasoner(args))
    facts = sorted(completed.d_plus, key=lambda a: a.sort_key())
    text = serialize_program(Program(tuple(facts)))
    if args.out:
        Path(args.out).write_text(text)
    else:
        out.write(text)
    return EXIT_OK


COMMANDS = {
    "classify": cmd_classify,
    "decompose": cmd_decompose,
    "chase": cmd_chase,
    "answer": cmd_answer,
    "complete": cmd_complete,
}


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return COMMANDS[args.command](args, out)
    except NotInDyadicClass as exc:
        err.write(f"{exc.name}: {exc}\n")
        return EXIT_NOT_DYADIC
    except ReasonerInexact as exc:
        err.write(f"{exc.name}: {exc}\n")
        return EXIT_INEXACT
    except DyadicError as exc:
        err.write(f"{exc.name}: {exc}\n")
        return EXIT_USAGE
    except (OSError, ValueError) as exc:
        err.write(f"{type(exc).__name__}: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
