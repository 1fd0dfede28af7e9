"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or precondition
error, 3 I/O or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from dataclasses import replace
from pathlib import Path

from . import statevec as sv
from .circuit import NetlistError, emit_netlist, parse_netlist
from .graph import GraphFormatError, export_dot, load_graph
from .group import basis_digits
from .synth import (PreconditionError, synth_cluster_phase_form, synth_cluster_shift_form,
                    synth_direct_encoder, synth_encoder_network)
from .verify import CHECKS, graph_summary, run_checks

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

FORMS = {
    "cluster-phase": synth_cluster_phase_form,
    "cluster-shift": synth_cluster_shift_form,
    "encoder": synth_encoder_network,
    "direct": synth_direct_encoder,
}


class UsageError(Exception):
    pass


def _fmt(x: float) -> str:
    # 17 significant digits; +0.0 folds negative zero
    return f"{x + 0.0:.17g}"


def _digits_str(digits, d: int) -> str:
    return "".join(str(g) for g in digits) if d <= 10 else ",".join(str(g) for g in digits)


def _parse_init(text: str, d: int, size: int) -> list[int]:
    parts = text.split(",") if "," in text else list(text)
    try:
        digits = [int(p) for p in parts] if text else []
    except ValueError:
        raise UsageError(f"init {text!r} is not a digit string") from None
    if len(digits) != size:
        raise UsageError(f"init has {len(digits)} digits, register has {size}")
    for g in digits:
        if not 0 <= g < d:
            raise UsageError(f"init digit {g} out of range for d={d}")
    return digits


def _load(path):
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        graph = load_graph(path)
    for w in caught:
        print(f"warning: {path}: {w.message}", file=sys.stderr)
    return graph


def cmd_synth(args) -> int:
    graph = _load(args.graph)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        circuit = FORMS[args.form](graph)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    if args.form == "encoder" and circuit.wires == tuple(range(circuit.size)):
        circuit = replace(circuit, wires=None)
    sys.stdout.write(emit_netlist(circuit))
    return EXIT_OK


def cmd_simulate(args) -> int:
    circuit = parse_netlist(Path(args.netlist).read_text(encoding="utf-8"))
    init = _parse_init(args.init if args.init is not None else "0" * circuit.size,
                       circuit.d, circuit.size)
    state = sv.basis_state(circuit.size, circuit.d, init)
    final = sv.run(circuit, state)
    rows = basis_digits(circuit.size, circuit.d)
    out = []
    for digits, amp in zip(rows, final.amplitudes):
        if not args.dump and abs(amp) <= 1e-12:
            continue
        out.append(f"{_digits_str(digits, circuit.d)} {_fmt(amp.real)} {_fmt(amp.imag)}")
    sys.stdout.write("".join(line + "\n" for line in out))
    return EXIT_OK


def _graph_files(paths) -> list[Path]:
    files = []
    for p in map(Path, paths):
        if p.is_dir():
            files.extend(sorted(p.glob("*.json")))
        else:
            files.append(p)
    return files


def cmd_verify(args) -> int:
    if args.check:
        names = args.check
        unknown = [n for n in names if n not in CHECKS]
        if unknown:
            raise UsageError(f"unknown check(s): {', '.join(unknown)}; "
                             f"choose from {', '.join(CHECKS)}")
        if "sample" in names and args.seed is None:
            raise UsageError("the sample check needs an explicit --seed")
    else:
        names = list(CHECKS)
    files = _graph_files(args.graphs)
    if not files:
        raise UsageError("no graph files given")
    reports = []
    for path in files:
        graph = _load(path)
        checks = run_checks(graph, names, args.seed)
        reports.append((path, checks))

    ok = all(c.passed for _, checks in reports for c in checks)
    if args.json:
        doc = {
            "seed": args.seed,
            "tolerance": 1e-10,
            "passed": ok,
            "graphs": [{"path": str(p), "passed": all(c.passed for c in cs),
                        "checks": [c.as_dict() for c in cs]} for p, cs in reports],
        }
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        lines = []
        for path, checks in reports:
            if len(reports) > 1:
                lines.append(f"== {path}")
            lines.extend(c.line() for c in checks)
        lines.append(f"result: {'PASS' if ok else 'FAIL'}")
        sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_stats(args) -> int:
    s = graph_summary(_load(args.graph))
    rows = [("d", s["d"]), ("v", s["v"]), ("l", s["l"]),
            ("|X|", s["inputs"]), ("|Y|", s["outputs"])]
    rows += [(f"gates[{k}]", "-" if n is None else n) for k, n in s["predicted"].items()]
    width = max(len(k) for k, _ in rows)
    sys.stdout.write("".join(f"{k:<{width}}  {v}\n" for k, v in rows))
    return EXIT_OK


def cmd_dot(args) -> int:
    sys.stdout.write(export_dot(_load(args.graph)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qdnet", description="Qudit graph-state network synthesis and verification")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="compile a graph file into a netlist")
    p.add_argument("--form", choices=sorted(FORMS), default="cluster-shift")
    p.add_argument("graph")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("simulate", help="run a netlist on a basis state")
    p.add_argument("netlist")
    p.add_argument("--init", help="initial digit string (default: all zeros)")
    p.add_argument("--dump", action="store_true", help="print every amplitude, zeros included")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", help="check synthesized networks against closed forms")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--all", action="store_true", help="run every check (default)")
    group.add_argument("--check", action="append", metavar="NAME",
                       help=f"run one check; repeatable ({', '.join(CHECKS)})")
    p.add_argument("--json", action="store_true")
    p.add_argument("--seed", type=int, help="seed for random inputs and sampling")
    p.add_argument("graphs", nargs="+", help="graph files or directories of *.json")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("stats", help="graph size and predicted gate counts")
    p.add_argument("graph")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("dot", help="export the graph as Graphviz text")
    p.add_argument("graph")
    p.set_defaults(func=cmd_dot)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, PreconditionError, sv.RegisterSizeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GraphFormatError, NetlistError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
