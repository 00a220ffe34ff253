"""``qbx`` command line: synth, sim, enumerate, convert, oracle.

Exit codes: 0 success, 1 syntax or parse error, 2 semantic or validation
error, 3 verification failure.  Errors go to standard error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .analysis import DEFAULT_SEED, enumerate_all, sample_distribution
from .boolfn import (expression_to_function, format_table, function_from_table_text,
                     max_variable, parse_expression)
from .circuit import (bits_to_str, computed_function, format_circuit, parse_circuit,
                      run, state_from_bits)
from .errors import ParseError, SemanticError, VerificationError
from .reversible import convert, parse_netlist, verify_conversion
from .synth import anf, stage1, stage2, stage3_minimize, synthesize_fast

EXIT_OK, EXIT_PARSE, EXIT_SEMANTIC, EXIT_VERIFY = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def _read(path):
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise SemanticError(f"cannot read {path}: {exc.strerror}") from None


def _emit(text, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _add_function_source(p):
    src = p.add_mutually_exclusive_group()
    src.add_argument("expr", nargs="?", help="Boolean expression, e.g. '~x1 + x2 x3'")
    src.add_argument("--table", metavar="BITS", help="truth table as a 0/1 string")
    src.add_argument("--table-file", metavar="PATH", help="truth-table file")
    src.add_argument("--expr-file", metavar="PATH", help="file holding one expression")
    p.add_argument("--arity", type=int, metavar="K",
                   help="number of inputs for an expression (default: highest xi used)")


def _load_function(args):
    given = [v for v in (args.expr, args.table, args.table_file, args.expr_file) if v is not None]
    if len(given) != 1:
        raise SemanticError("give exactly one of EXPR, --table, --table-file, --expr-file")
    if args.table is not None:
        return function_from_table_text(args.table)
    if args.table_file is not None:
        return function_from_table_text(_read(args.table_file))
    text = args.expr if args.expr is not None else _read(args.expr_file)
    expr = parse_expression(text)
    arity = args.arity if args.arity is not None else max_variable(expr)
    return expression_to_function(expr, arity)


def cmd_synth(args):
    f = _load_function(args)
    if args.fast and args.emit_stage != 3:
        raise SemanticError("--fast only produces the final stage")
    c1 = stage1(f)
    if args.fast:
        c2 = None
        final = synthesize_fast(f)
    else:
        c2 = stage2(c1)
        final = stage3_minimize(c2)
    s2_count = len(c2) if c2 is not None else sum(1 << len(g.negative) for g in c1)
    summary = [f"function {format_table(f)}", f"stage1 {len(c1)}",
               f"stage2 {s2_count}", f"final {len(final)}"]
    chosen = {1: c1, 2: c2, 3: final}[args.emit_stage]
    comments = summary + [f"emitted stage {args.emit_stage}"]
    if args.ascii:
        from .circuit import ascii_diagram
        comments += ascii_diagram(chosen).splitlines()
    text = format_circuit(chosen, comments)
    _emit(text, args.out)
    if args.out:
        sys.stdout.write("".join(f"# {line}\n" for line in summary))
    return EXIT_OK


def cmd_sim(args):
    c = parse_circuit(_read(args.circuit))
    if args.input is not None:
        sys.stdout.write(bits_to_str(run(c, state_from_bits(args.input))) + "\n")
    else:
        k, target = args.table
        sys.stdout.write(format_table(computed_function(c, k, target)) + "\n")
    return EXIT_OK


def cmd_enumerate(args):
    if args.sample is not None:
        report = sample_distribution(args.n, args.sample, args.seed)
    else:
        report = enumerate_all(args.n, verify=args.verify, workers=args.workers)
    _emit(report.to_json() if args.format == "json" else report.to_text(), args.out)
    return EXIT_OK


def cmd_convert(args):
    nl = parse_netlist(_read(args.netlist))
    c, qmap = convert(nl, explicit_fanout=args.explicit_fanout)
    comments = [f"netlist {args.netlist}",
                f"explicit fan-out {'on' if args.explicit_fanout else 'off'}"]
    comments += qmap.format().splitlines()
    verdict = None
    if args.verify:
        verdict = verify_conversion(nl, c, qmap)
        comments.append(f"verify {verdict}")
    _emit(format_circuit(c, comments), args.out)
    if args.map_out:
        Path(args.map_out).write_text(qmap.format())
    if verdict is not None:
        print(str(verdict), file=sys.stderr)
        if not verdict:
            return EXIT_VERIFY
    return EXIT_OK


def cmd_oracle(args):
    f = _load_function(args)
    poly = anf(f)
    _emit(f"{poly}\n", args.out)
    return EXIT_OK


def build_parser():
    parser = _Parser(prog="qbx", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("synth", help="synthesize a circuit from a function")
    _add_function_source(p)
    p.add_argument("--emit-stage", type=int, choices=(1, 2, 3), default=3)
    p.add_argument("--fast", action="store_true",
                   help="build the final circuit straight from the Reed-Muller expansion")
    p.add_argument("--ascii", action="store_true", help="append a text sketch as comments")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("sim", help="simulate a circuit file")
    p.add_argument("circuit")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--input", metavar="BITS", help="basis state, qubit 1 first")
    mode.add_argument("--table", nargs=2, type=int, metavar=("K", "TARGET"),
                      help="print the truth table computed on TARGET from K inputs")
    p.set_defaults(func=cmd_sim)

    p = sub.add_parser("enumerate", help="gate-count distribution over all functions")
    p.add_argument("n", type=int, help="qubit count (inputs + 1)")
    p.add_argument("--sample", type=int, metavar="SIZE", help="sample instead of enumerating")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--verify", action="store_true",
                   help="simulate every enumerated circuit against its table")
    p.add_argument("--workers", type=int, help="threads (default: QBX_THREADS or 1)")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("convert", help="classical netlist to reversible circuit")
    p.add_argument("netlist")
    p.add_argument("--explicit-fanout", action="store_true")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--out", metavar="PATH")
    p.add_argument("--map-out", metavar="PATH")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("oracle", help="print the positive-polarity XOR expansion")
    _add_function_source(p)
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"qbx: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except VerificationError as exc:
        print(f"qbx: verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except SemanticError as exc:
        print(f"qbx: error: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC


if __name__ == "__main__":
    sys.exit(main())
